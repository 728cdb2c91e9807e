"""Root data with their Weyl groups, plus triality and the folding D4 -> G2.

Conventions
-----------
* Roots are integer vectors in simple-root coordinates.
* ``cartan_matrix[i][j] = <alpha_i^vee, alpha_j>``, so the pairing of a root
  ``b`` with the simple coroot ``alpha_i^vee`` is ``sum_j A[i][j] * b[j]``.
* D4 is numbered with ``alpha_0`` the branch vertex and ``alpha_1, alpha_2,
  alpha_3`` the three leaves.
* Lattice maps act on column vectors: ``(M v)_k = sum_j M[k][j] v[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg

IntMatrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]

D4_CARTAN: IntMatrix = (
    (2, -1, -1, -1),
    (-1, 2, 0, 0),
    (-1, 0, 2, 0),
    (-1, 0, 0, 2),
)
A2_CARTAN: IntMatrix = ((2, -1), (-1, 2))
# alpha (index 0) short, beta (index 1) long
G2_CARTAN: IntMatrix = ((2, -3), (-1, 2))

WEYL_SIZE_CAP = 10_000


class MalformedDatumError(ValueError):
    """Raised when a root datum fails its structural checks."""


def _apply(matrix: IntMatrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in matrix)


def _compose(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class LatticeAutomorphism:
    matrix: IntMatrix
    order: int

    @classmethod
    def from_matrix(cls, matrix: IntMatrix, max_order: int = 1000) -> "LatticeAutomorphism":
        ident = _identity(len(matrix))
        power = matrix
        for k in range(1, max_order + 1):
            if power == ident:
                return cls(matrix, k)
            power = _compose(power, matrix)
        raise MalformedDatumError("lattice map has no finite order below the cap")

    def __call__(self, v: Vector) -> Vector:
        return _apply(self.matrix, tuple(v))

    def __matmul__(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        return LatticeAutomorphism.from_matrix(_compose(self.matrix, other.matrix))

    def power(self, k: int) -> IntMatrix:
        result = _identity(len(self.matrix))
        for _ in range(k % self.order):
            result = _compose(result, self.matrix)
        return result

    def determinant(self) -> int:
        return int(linalg.determinant([list(r) for r in self.matrix]))


@dataclass(frozen=True)
class RootDatum:
    name: str
    rank: int
    cartan_matrix: IntMatrix
    simple_roots: tuple[Vector, ...]
    all_roots: tuple[Vector, ...]
    fundamental_coweights: tuple[tuple[Fraction, ...], ...]
    # coweights are written in the basis of simple coroots

    @property
    def positive_roots(self) -> tuple[Vector, ...]:
        return tuple(r for r in self.all_roots if all(c >= 0 for c in r))

    def coroot_pairing(self, root: Vector, i: int) -> int:
        """<root, alpha_i^vee>."""
        return sum(self.cartan_matrix[i][j] * root[j] for j in range(self.rank))

    def coweight_pairing(self, root: Vector, j: int):
        """<root, omega_j^vee> for the fundamental coweight omega_j^vee."""
        c = self.fundamental_coweights[j]
        return sum(c[k] * self.coroot_pairing(root, k) for k in range(self.rank))

    def simple_reflection(self, i: int) -> IntMatrix:
        n = self.rank
        return tuple(
            tuple(int(k == j) - (self.cartan_matrix[i][j] if k == i else 0) for j in range(n)) for k in range(n)
        )

    def height(self, root: Vector) -> int:
        return sum(root)


def _close_roots(cartan: IntMatrix) -> tuple[Vector, ...]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * r[j] for j in range(n))
                s = tuple(r[k] - (pairing if k == i else 0) for k in range(n))
                if s not in seen:
                    if len(seen) > WEYL_SIZE_CAP:
                        raise MalformedDatumError("root closure exceeds the size cap")
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    # positive roots by height, then their negatives
    pos = sorted((r for r in seen if all(c >= 0 for c in r)), key=lambda r: (sum(r), tuple(-c for c in r)))
    return tuple(pos) + tuple(tuple(-c for c in r) for r in pos)


def _build(name: str, cartan: IntMatrix) -> RootDatum:
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise MalformedDatumError(f"{name}: diagonal Cartan entry {i} is not 2")
        for j in range(n):
            if i != j and cartan[i][j] > 0:
                raise MalformedDatumError(f"{name}: positive off-diagonal Cartan entry")
    inv = linalg.inverse([[Fraction(x) for x in row] for row in cartan])
    return RootDatum(
        name=name,
        rank=n,
        cartan_matrix=cartan,
        simple_roots=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
        all_roots=_close_roots(cartan),
        fundamental_coweights=tuple(tuple(Fraction(x) for x in row) for row in inv),
    )


def build_d4() -> RootDatum:
    """D4 with alpha_0 at the branch vertex."""
    return _build("D4", D4_CARTAN)


def build_a2() -> RootDatum:
    return _build("A2", A2_CARTAN)


def build_g2() -> RootDatum:
    """G2 with simple roots (alpha short, beta long)."""
    return _build("G2", G2_CARTAN)


def weyl_group(datum: RootDatum, cap: int = WEYL_SIZE_CAP) -> frozenset[LatticeAutomorphism]:
    """All Weyl group elements as integer matrices on the root lattice."""
    gens = [datum.simple_reflection(i) for i in range(datum.rank)]
    ident = _identity(datum.rank)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = _compose(s, w)
                if ws not in seen:
                    seen.add(ws)
                    if len(seen) > cap:
                        raise MalformedDatumError(f"Weyl group closure exceeds {cap} elements")
                    nxt.append(ws)
        frontier = nxt
    return frozenset(LatticeAutomorphism.from_matrix(m, max_order=64) for m in seen)


# alpha_0 fixed, alpha_1 -> alpha_2 -> alpha_3 -> alpha_1
TRIALITY_PERMUTATION = (0, 2, 3, 1)


def triality_lattice() -> LatticeAutomorphism:
    n = 4
    matrix = tuple(tuple(int(TRIALITY_PERMUTATION[j] == k) for j in range(n)) for k in range(n))
    return LatticeAutomorphism.from_matrix(matrix)


@dataclass(frozen=True)
class FoldedRootSystem:
    roots: tuple[tuple[int, int], ...]
    multiplicity: dict
    fibers: dict
    simple: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    # restricted roots are written as (coefficient of alpha, coefficient of beta)

    def long_roots(self) -> list[tuple[int, int]]:
        return [r for r in self.roots if self.multiplicity[r] == 1]

    def short_roots(self) -> list[tuple[int, int]]:
        return [r for r in self.roots if self.multiplicity[r] == 3]

    def cartan_matrix(self) -> IntMatrix:
        """Cartan matrix of the simple pair, from the inner product on theta-fixed vectors."""
        d4 = build_d4()
        theta = triality_lattice()
        reps = [self.fibers[s][0] for s in self.simple]
        proj = [_theta_average(r, theta) for r in reps]

        def form(x, y):
            return sum(x[i] * d4.cartan_matrix[i][j] * y[j] for i in range(4) for j in range(4))

        return tuple(
            tuple(int(2 * form(proj[i], proj[j]) / form(proj[i], proj[i])) for j in range(2)) for i in range(2)
        )


def _theta_average(v: Vector, theta: LatticeAutomorphism) -> tuple[Fraction, ...]:
    images = [v, theta(v), theta(theta(v))]
    return tuple(Fraction(sum(w[k] for w in images), 3) for k in range(len(v)))


def restrict_to_fixed(root: Vector) -> tuple[int, int]:
    """Restriction of a D4 root to the theta-fixed torus, in (alpha, beta) coordinates."""
    c0, c1, c2, c3 = root
    return (c1 + c2 + c3, c0)


def fold_g2() -> FoldedRootSystem:
    d4 = build_d4()
    fibers: dict[tuple[int, int], list[Vector]] = {}
    for r in d4.all_roots:
        fibers.setdefault(restrict_to_fixed(r), []).append(r)
    roots = tuple(sorted(fibers, key=lambda r: (min(r) < 0, abs(r[0] + r[1]), r)))
    return FoldedRootSystem(
        roots=roots,
        multiplicity={r: len(f) for r, f in fibers.items()},
        fibers={r: tuple(f) for r, f in fibers.items()},
    )


@dataclass(frozen=True)
class LeviDescriptor:
    simple_subset: frozenset[int]
    description: str
    elliptic_endoscopic: str = ""
    identified_with: str = ""
    roots: tuple[Vector, ...] = field(default=(), compare=False)


_LEVI_TABLE = {
    frozenset(): ("T·θ maximal torus", "T/^{1-θ}T", "T_H"),
    frozenset({0}): ("L_0 ≅ (GL2 × Gm³)/Gm", "GL2", "GL_{2,s}"),
    frozenset({1, 2, 3}): ("L ≅ (GL2³ × Gm)/j(Gm³)", "GL2", "GL_{2,l}"),
    frozenset({0, 1, 2, 3}): ("PGSO8 (the whole group)", "", ""),
}


def theta_stable_levis() -> list[LeviDescriptor]:
    """Theta-stable subsets of the simple roots, with their Levi subgroups."""
    d4 = build_d4()
    out = []
    for k in range(5):
        for subset in combinations(range(4), k):
            s = frozenset(subset)
            if frozenset(TRIALITY_PERMUTATION[i] for i in s) != s:
                continue
            desc, endo, ident = _LEVI_TABLE[s]
            levi_roots = tuple(r for r in d4.all_roots if all(r[i] == 0 for i in range(4) if i not in s))
            out.append(LeviDescriptor(s, desc, endo, ident, levi_roots))
    return out
