"""Chevalley basis of spin_8 with its pinned triality automorphism.

Fixed subalgebras of twisted torus elements are computed and classified here too.

Basis ordering: indices 0..23 are the root vectors ``x_gamma`` in the order
of ``build_d4().all_roots`` (positive roots by height, then negatives);
indices 24..27 are ``h_0..h_3``.  Spin_8 is simply laced, so its roots are
identified with the D4 roots of :mod:`triality.rootsys` and coroots with
roots.

Structure constants come from a bimultiplicative sign cocycle on the root
lattice and are validated by an exhaustive Jacobi check when the algebra is
built.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import linalg
from .cyclotomic import CycNum, root_of_unity
from .rootsys import TRIALITY_PERMUTATION, RootDatum, build_d4, fold_g2, restrict_to_fixed

DIM = 28
RANK = 4


class StructureConstantError(RuntimeError):
    """The structure constants or an automorphism failed an exact consistency check."""


class TableMismatchError(RuntimeError):
    """A recomputed root-equation row disagrees with the reference table."""


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _neg(u):
    return tuple(-a for a in u)


class ChevalleyAlgebra:
    """spin_8 in a Chevalley basis with exact integer structure constants."""

    def __init__(self, datum: RootDatum | None = None, check: bool = True):
        self.datum = datum or build_d4()
        self.roots: tuple[tuple[int, ...], ...] = self.datum.all_roots
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.dim = len(self.roots) + self.datum.rank
        self.h_index = [len(self.roots) + i for i in range(self.datum.rank)]
        self.bracket_table = self._structure_constants()
        if check:
            bad = self.jacobi_violations()
            if bad:
                raise StructureConstantError(f"Jacobi identity fails on basis triple {bad[0]}")

    # -- construction --------------------------------------------------------

    def _epsilon(self, a, b) -> int:
        # (-1)^(sum a_i b_i + sum_{i<j adjacent} a_i b_j)
        A = self.datum.cartan_matrix
        n = self.datum.rank
        e = sum(a[i] * b[i] for i in range(n))
        e += sum(a[i] * b[j] for i in range(n) for j in range(i + 1, n) if A[i][j] == -1)
        return -1 if e % 2 else 1

    def _sign(self, r) -> int:
        return 1 if all(c >= 0 for c in r) else -1

    def _structure_constants(self):
        table = [[() for _ in range(self.dim)] for _ in range(self.dim)]
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                s = _add(a, b)
                if not any(s):
                    # [x_a, x_-a] = h_a with h_a = sum a_k h_k
                    table[i][j] = tuple((self.h_index[k], c) for k, c in enumerate(a) if c)
                elif s in self.index:
                    c = self._sign(a) * self._sign(b) * self._sign(s) * self._epsilon(a, b)
                    table[i][j] = ((self.index[s], c),)
            for k in range(self.datum.rank):
                c = self.datum.coroot_pairing(a, k)
                if c:
                    table[self.h_index[k]][i] = ((i, c),)
                    table[i][self.h_index[k]] = ((i, -c),)
        return table

    # -- brackets ------------------------------------------------------------

    def basis_bracket(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        """Sparse [b_i, b_j] as ((index, coefficient), ...)."""
        return self.bracket_table[i][j]

    def structure_constant(self, a, b) -> int:
        """N_{a,b} with [x_a, x_b] = N_{a,b} x_{a+b} for roots a, b with a+b a root."""
        entry = self.bracket_table[self.index[tuple(a)]][self.index[tuple(b)]]
        if len(entry) != 1 or entry[0][0] >= len(self.roots):
            raise KeyError(f"{a} + {b} is not a root")
        return entry[0][1]

    def bracket(self, x: Sequence, y: Sequence) -> list:
        out = [0] * self.dim
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.bracket_table[i]
            for j, b in ynz:
                entry = row[j]
                if entry:
                    ab = a * b
                    for k, c in entry:
                        out[k] = out[k] + c * ab
        return out

    def _sparse_bracket(self, x: dict, y: dict) -> dict:
        out: dict[int, int] = {}
        for i, a in x.items():
            row = self.bracket_table[i]
            for j, b in y.items():
                for k, c in row[j]:
                    out[k] = out.get(k, 0) + c * a * b
        return {k: v for k, v in out.items() if v}

    def jacobi_violations(self, limit: int = 1) -> list[tuple[int, int, int]]:
        """Basis triples violating the Jacobi identity (exhaustive over all dim^3)."""
        bad = []
        units = [{i: 1} for i in range(self.dim)]
        pair = [[self._sparse_bracket(units[i], units[j]) for j in range(self.dim)] for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    total: dict[int, int] = {}
                    for a, bc in ((i, pair[j][k]), (j, pair[k][i]), (k, pair[i][j])):
                        for key, val in self._sparse_bracket(units[a], bc).items():
                            total[key] = total.get(key, 0) + val
                    if any(total.values()):
                        bad.append((i, j, k))
                        if len(bad) >= limit:
                            return bad
        return bad

    def is_antisymmetric(self) -> bool:
        for i in range(self.dim):
            for j in range(self.dim):
                a = dict(self.bracket_table[i][j])
                b = {k: -c for k, c in self.bracket_table[j][i]}
                if a != b:
                    return False
        return True

    def unit(self, i: int) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def x(self, root) -> list:
        return self.unit(self.index[tuple(root)])

    def h(self, i: int) -> list:
        return self.unit(self.h_index[i])

    def label(self, i: int) -> str:
        if i >= len(self.roots):
            return f"h{i - len(self.roots)}"
        return "x" + format_root(self.roots[i], "α", "")

    def killing_form(self) -> list[list[int]]:
        return killing_form(self, [self.unit(i) for i in range(self.dim)])


def format_root(root, letter: str = "α", suffix: str = "∨") -> str:
    """Render a simple-root coefficient vector, e.g. 2α0∨+α1∨+α2∨+α3∨."""
    parts = []
    for i, c in enumerate(root):
        if not c:
            continue
        coeff = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(f"{sign}{coeff}{letter}{i}{suffix}")
    return "".join(parts) or "0"


@lru_cache(maxsize=1)
def build_spin8() -> ChevalleyAlgebra:
    """The Chevalley model of spin_8; Jacobi identity verified on construction."""
    return ChevalleyAlgebra()


# -- monomial linear maps ---------------------------------------------------


@dataclass(frozen=True)
class MonomialMap:
    """Linear map b_j -> scalars[j] * b_{targets[j]}."""

    targets: tuple[int, ...]
    scalars: tuple

    def __call__(self, v: Sequence) -> list:
        out = [0] * len(self.targets)
        for j, c in enumerate(v):
            if c:
                k = self.targets[j]
                out[k] = out[k] + self.scalars[j] * c
        return out

    def __matmul__(self, other: "MonomialMap") -> "MonomialMap":
        targets = tuple(self.targets[k] for k in other.targets)
        scalars = tuple(self.scalars[k] * c for k, c in zip(other.targets, other.scalars))
        return MonomialMap(targets, scalars)

    def inverse(self) -> "MonomialMap":
        n = len(self.targets)
        targets = [0] * n
        scalars = [0] * n
        for j, (k, c) in enumerate(zip(self.targets, self.scalars)):
            targets[k] = j
            scalars[k] = 1 / c if isinstance(c, CycNum) else Fraction(1) / c
        return MonomialMap(tuple(targets), tuple(_simplify(s) for s in scalars))

    @property
    def matrix(self) -> list[list]:
        n = len(self.targets)
        m = [[0] * n for _ in range(n)]
        for j, (k, c) in enumerate(zip(self.targets, self.scalars)):
            m[k][j] = c
        return m

    def is_identity(self) -> bool:
        return all(k == j and c == 1 for j, (k, c) in enumerate(zip(self.targets, self.scalars)))

    def order(self, cap: int = 1000) -> int:
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = self @ power
        raise StructureConstantError("map has no finite order below the cap")

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.targets)
        out = []
        for start in range(len(self.targets)):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = self.targets[j]
            out.append(cyc)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return self.targets == other.targets and all(a == b for a, b in zip(self.scalars, other.scalars))

    def __hash__(self) -> int:
        return hash(self.targets)


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def preserves_brackets(alg: ChevalleyAlgebra, phi: MonomialMap) -> list[tuple[int, int]]:
    """Basis pairs (i, j) where phi[b_i, b_j] != [phi b_i, phi b_j]."""
    bad = []
    for i in range(alg.dim):
        pi = phi(alg.unit(i))
        for j in range(alg.dim):
            lhs = phi(_dense(alg, alg.basis_bracket(i, j)))
            rhs = alg.bracket(pi, phi(alg.unit(j)))
            if any(a != b for a, b in zip(lhs, rhs)):
                bad.append((i, j))
    return bad


def _dense(alg: ChevalleyAlgebra, sparse) -> list:
    v = [0] * alg.dim
    for k, c in sparse:
        v[k] = c
    return v


@dataclass(frozen=True)
class AlgebraAutomorphism:
    map: MonomialMap
    order: int

    @property
    def matrix(self) -> list[list]:
        return self.map.matrix

    def __call__(self, v):
        return self.map(v)


def triality_automorphism(alg: ChevalleyAlgebra | None = None) -> AlgebraAutomorphism:
    """The pinned triality: x_{±alpha_i} -> x_{±alpha_theta(i)}, extended to all of spin_8."""
    alg = alg or build_spin8()
    perm = TRIALITY_PERMUTATION
    targets = [0] * alg.dim
    signs = [0] * alg.dim

    def theta_root(r):
        out = [0] * RANK
        for i, c in enumerate(r):
            out[perm[i]] += c
        return tuple(out)

    for i in range(RANK):
        targets[alg.h_index[i]] = alg.h_index[perm[i]]
        signs[alg.h_index[i]] = 1
    # recursion on height: x_g = [x_{±a_i}, x_d] / N(±a_i, d)
    for sgn in (1, -1):
        by_height = sorted((r for r in alg.roots if alg._sign(r) == sgn), key=lambda r: abs(sum(r)))
        for r in by_height:
            idx = alg.index[r]
            if abs(sum(r)) == 1:
                targets[idx] = alg.index[theta_root(r)]
                signs[idx] = 1
                continue
            for i in range(RANK):
                simple = tuple(sgn * int(k == i) for k in range(RANK))
                d = _add(r, _neg(simple))
                if d in alg.index:
                    break
            else:  # pragma: no cover - every non-simple root decomposes
                raise StructureConstantError(f"no decomposition for root {r}")
            n_sd = alg.structure_constant(simple, d)
            d_img = theta_root(d)
            n_img = alg.structure_constant(theta_root(simple), d_img)
            sign_d = signs[alg.index[d]]
            targets[idx] = alg.index[theta_root(r)]
            signs[idx] = sign_d * n_img * n_sd  # n_sd = ±1 so division is multiplication
    phi = MonomialMap(tuple(targets), tuple(signs))
    bad = preserves_brackets(alg, phi)
    if bad:
        raise StructureConstantError(f"triality is not sign-consistent on basis pair {bad[0]}")
    return AlgebraAutomorphism(phi, phi.order())


# -- twisted torus elements -------------------------------------------------


def torus_exponents(root) -> tuple[int, int]:
    """Exponents (a, b) with Ad(s(u, t)) x_root = u^a t^b x_root."""
    d4 = build_d4()
    a = d4.coroot_pairing(root, 0)
    b = sum(d4.coroot_pairing(root, i) for i in (1, 2, 3))
    return a, b


def _as_cyc(x) -> CycNum:
    return x if isinstance(x, CycNum) else CycNum(Fraction(x))


def torus_action(alg: ChevalleyAlgebra, exps: Sequence[CycNum]) -> MonomialMap:
    """Ad of the torus element prod_i alpha_i(exps[i]) (cocharacters = simple coroots)."""
    exps = [_as_cyc(e) for e in exps]
    scalars = []
    for r in alg.roots:
        val = CycNum(1)
        for i in range(RANK):
            p = alg.datum.coroot_pairing(r, i)
            if p:
                val = val * exps[i] ** p
        scalars.append(val)
    scalars += [CycNum(1)] * RANK
    return MonomialMap(tuple(range(alg.dim)), tuple(scalars))


@dataclass(frozen=True)
class TwistedTorusElement:
    u: CycNum
    t: CycNum
    action: AlgebraAutomorphism = field(repr=False)


def twisted_element(u, t, alg: ChevalleyAlgebra | None = None) -> TwistedTorusElement:
    """Ad(s(u,t)) o theta with s(u,t) = alpha_0(u) alpha_1(t) alpha_2(t) alpha_3(t)."""
    alg = alg or build_spin8()
    u, t = _as_cyc(u), _as_cyc(t)
    if not u or not t:
        raise ZeroDivisionError("s(u, t) needs u and t nonzero")
    theta = triality_automorphism(alg)
    powers_u = _power_table(u)
    powers_t = _power_table(t)
    scal = []
    for r in alg.roots:
        a, b = torus_exponents(r)
        scal.append(powers_u[a] * powers_t[b])
    scal += [CycNum(1)] * RANK
    ad_s = MonomialMap(tuple(range(alg.dim)), tuple(scal))
    composite = ad_s @ theta.map
    return TwistedTorusElement(u, t, AlgebraAutomorphism(composite, 0))


def _power_table(x: CycNum, lo: int = -6, hi: int = 6) -> dict[int, CycNum]:
    table = {0: CycNum(1), 1: x}
    inv = x.inverse()
    table[-1] = inv
    for k in range(2, hi + 1):
        table[k] = table[k - 1] * x
    for k in range(2, -lo + 1):
        table[-k] = table[-k + 1] * inv
    return table


# -- subalgebras ------------------------------------------------------------


class CartanType(str, enum.Enum):
    G2 = "G2"
    A2 = "A2"
    A1xA1 = "A1xA1"
    D4 = "D4"
    NON_SEMISIMPLE = "non-semisimple"
    OUT_OF_MENU = "zero-rank-defect"

    @property
    def algebra_name(self) -> str:
        return {"G2": "g2", "A2": "sl3", "A1xA1": "so4", "D4": "so8"}.get(self.value, "")


_MENU = {14: CartanType.G2, 8: CartanType.A2, 6: CartanType.A1xA1, 28: CartanType.D4}


class Subalgebra:
    """A subalgebra of spin_8 given by spanning vectors."""

    def __init__(self, alg: ChevalleyAlgebra, basis: Sequence[Sequence]):
        self.alg = alg
        self.basis_matrix = [list(v) for v in basis]
        self.span = linalg.Span(self.basis_matrix)
        self.dim = self.span.dim

    def is_bracket_closed(self) -> bool:
        b = self.basis_matrix
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                if self.span.coordinates(self.alg.bracket(b[i], b[j])) is None:
                    return False
        return True

    @cached_property
    def killing_matrix(self) -> list[list]:
        return killing_form(self.alg, self.basis_matrix, self.span)

    @cached_property
    def killing_rank(self) -> int:
        return linalg.rank(self.killing_matrix) if self.dim else 0

    @cached_property
    def cartan_type(self) -> CartanType:
        return classify_subalgebra(self)


def killing_form(alg: ChevalleyAlgebra, basis: Sequence[Sequence], span: linalg.Span | None = None) -> list[list]:
    """Intrinsic Killing form tr(ad_a ad_b) of the subalgebra spanned by ``basis``."""
    span = span or linalg.Span(basis)
    d = len(basis)
    # const[a][i][k]: [b_a, b_i] = sum_k const[a][i][k] b_k
    const = [[None] * d for _ in range(d)]
    for a in range(d):
        for i in range(a, d):
            coords = span.coordinates(alg.bracket(basis[a], basis[i]))
            if coords is None:
                raise ValueError("basis does not span a subalgebra")
            const[a][i] = coords
            const[i][a] = [-c for c in coords]
    sparse = [[[(k, c) for k, c in enumerate(const[a][i]) if c] for i in range(d)] for a in range(d)]
    form = [[0] * d for _ in range(d)]
    for a in range(d):
        for b in range(a, d):
            total = 0
            for i in range(d):
                for k, c in sparse[a][i]:
                    cb = const[b][k][i]
                    if cb:
                        total = total + c * cb
            form[a][b] = total
            form[b][a] = total
    return form


def classify_subalgebra(sub: Subalgebra) -> CartanType:
    """Cartan's criterion, then the closed menu of dimensions 14/8/6 (and 28)."""
    if sub.dim == 0 or sub.killing_rank < sub.dim:
        return CartanType.NON_SEMISIMPLE
    return _MENU.get(sub.dim, CartanType.OUT_OF_MENU)


def fixed_vectors(phi: MonomialMap) -> list[list]:
    """Basis of the 1-eigenspace of a monomial map, one vector per fixed cycle."""
    n = len(phi.targets)
    basis = []
    for cyc in phi.cycles():
        coeffs = [CycNum(1)]
        for j in cyc[:-1]:
            coeffs.append(coeffs[-1] * phi.scalars[j])
        if coeffs[-1] * phi.scalars[cyc[-1]] != 1:
            continue
        v = [0] * n
        for j, c in zip(cyc, coeffs):
            # v = sum a_j b_j with a_{next} = a_j * scalar_j
            v[j] = c
        basis.append(v)
    return basis


def fixed_subalgebra(elt: TwistedTorusElement, method: str = "cycles", check: bool = True) -> Subalgebra:
    """The 1-eigenspace of Ad(s(u,t)) o theta, with bracket closure verified."""
    alg = build_spin8()
    phi = elt.action.map
    if method == "cycles":
        basis = fixed_vectors(phi)
    elif method == "nullspace":
        m = phi.matrix
        shifted = [[m[i][j] - (1 if i == j else 0) for j in range(alg.dim)] for i in range(alg.dim)]
        basis = linalg.nullspace(shifted)
    else:
        raise ValueError(f"unknown method {method!r}")
    sub = Subalgebra(alg, basis)
    if check and not sub.is_bracket_closed():
        raise StructureConstantError("fixed space is not closed under the bracket")
    return sub


def eigenspace_dims_by_g2_root(elt: TwistedTorusElement) -> dict[tuple[int, int], int]:
    """Dimension of the fixed space inside each G2 root space u_gamma."""
    alg = build_spin8()
    folded = fold_g2()
    phi = elt.action.map
    out = {}
    for g in folded.roots:
        fiber = {alg.index[r] for r in folded.fibers[g]}
        count = 0
        for v in fixed_vectors(phi):
            support = {j for j, c in enumerate(v) if c}
            if support <= fiber:
                count += 1
        out[g] = count
    return out


# -- the root-equation table ------------------------------------------------

G2_ROOT_NAMES = {
    (0, 1): "β",
    (3, 1): "3α+β",
    (3, 2): "3α+2β",
    (1, 0): "α",
    (1, 1): "α+β",
    (2, 1): "2α+β",
}

# (G2 root, theta-orbit representative, condition for a nonzero 1-eigenspace)
REFERENCE_TABLE = (
    ("β", "α0∨", "t^3 = u^2"),
    ("3α+β", "α0∨+α1∨+α2∨+α3∨", "t^3 = u"),
    ("3α+2β", "2α0∨+α1∨+α2∨+α3∨", "u = 1"),
    ("α", "α1∨", "t^6 = u^3"),
    ("α+β", "α0∨+α1∨", "t^3 = u^3"),
    ("2α+β", "α0∨+α1∨+α2∨", "t^3 = 1"),
)


def _power(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def format_condition(sign: int, a: int, b: int) -> str:
    """Render sign * u^a t^b = 1 as 't^B = u^A' with B > 0 (or 'u^A = 1')."""
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
        # sign is ±1 so it is its own inverse
    rhs_sign = "-" if sign == -1 else ""
    if b == 0:
        lhs = _power("u", a)
        return f"{lhs} = {rhs_sign}1"
    lhs = _power("t", b)
    rhs = "1" if a == 0 else _power("u", -a) if -a > 0 else None
    if rhs is None:
        # u appears with a positive power on the t side: t^b u^a = ±1
        return f"{lhs}*{_power('u', a)} = {rhs_sign}1"
    return f"{lhs} = {rhs_sign}{rhs}"


def _symbolic_twist(alg: ChevalleyAlgebra):
    """Entries of Ad(s(u,t)) o theta as (target, sign, exp_u, exp_t)."""
    theta = triality_automorphism(alg).map
    out = []
    for j in range(alg.dim):
        k = theta.targets[j]
        sign = theta.scalars[j]
        if k < len(alg.roots):
            a, b = torus_exponents(alg.roots[k])
        else:
            a, b = 0, 0
        out.append((k, sign, a, b))
    return out


@dataclass(frozen=True)
class RootEquationRow:
    g2_root: str
    orbit: str
    condition: str
    long: bool

    def as_tuple(self) -> tuple[str, str, str]:
        return (self.g2_root, self.orbit, self.condition)


def root_equation_table(check: bool = True) -> list[RootEquationRow]:
    """Recompute, for each positive G2 root, when Ad(s(u,t)) o theta has a fixed vector in u_gamma."""
    alg = build_spin8()
    folded = fold_g2()
    sym = _symbolic_twist(alg)
    order = [(0, 1), (3, 1), (3, 2), (1, 0), (1, 1), (2, 1)]
    rows = []
    for g in order:
        fiber = [alg.index[r] for r in folded.fibers[g]]
        start = fiber[0]
        sign, a, b = 1, 0, 0
        j = start
        orbit = []
        while True:
            orbit.append(j)
            k, s, ea, eb = sym[j]
            sign, a, b = sign * s, a + ea, b + eb
            j = k
            if j == start:
                break
        if sorted(orbit) != sorted(fiber):
            raise TableMismatchError(f"fiber over {g} is not a single theta-orbit")
        rep = max(alg.roots[i] for i in orbit)
        row = RootEquationRow(
            g2_root=G2_ROOT_NAMES[g],
            orbit=format_root(rep),
            condition=format_condition(sign, a, b),
            long=folded.multiplicity[g] == 1,
        )
        rows.append(row)
    if check:
        for row, ref in zip(rows, REFERENCE_TABLE):
            if row.as_tuple() != ref:
                raise TableMismatchError(f"row {row.as_tuple()} differs from reference {ref}")
    return rows


def render_table(rows: Sequence[RootEquationRow]) -> str:
    lines = []
    header = ("G2 root", "theta-orbit of", "1-eigenspace nonzero iff")
    widths = [max(len(header[c]), *(len(r.as_tuple()[c]) for r in rows)) for c in range(3)]
    for kind, long in (("long", True), ("short", False)):
        lines.append(f"{kind} roots")
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for r in rows:
            if r.long == long:
                lines.append("  ".join(v.ljust(w) for v, w in zip(r.as_tuple(), widths)).rstrip())
    return "\n".join(lines)


# -- conjugations used to reduce the search ---------------------------------


def conjugate(phi: MonomialMap, g: MonomialMap) -> MonomialMap:
    return g @ phi @ g.inverse()


def torus_shift_conjugator(alg: ChevalleyAlgebra, z: CycNum) -> MonomialMap:
    """Ad of alpha_1(1) alpha_2(z) alpha_3(z^2)."""
    return torus_action(alg, [CycNum(1), CycNum(1), z, z * z])


def weyl_lift(alg: ChevalleyAlgebra, i: int) -> list[list]:
    """Matrix of Ad(exp(x_a) exp(-x_-a) exp(x_a)) for the simple root a = alpha_i.

    It permutes root spaces up to sign and acts on the Cartan part by the reflection s_a.
    """
    a = tuple(int(k == i) for k in range(RANK))
    ad_x = _ad_matrix(alg, alg.x(a))
    ad_y = _ad_matrix(alg, [-c for c in alg.x(_neg(a))])
    e1 = _exp_nilpotent(ad_x)
    e2 = _exp_nilpotent(ad_y)
    return [[_simplify(c) for c in row] for row in linalg.matmul(linalg.matmul(e1, e2), e1)]


def conjugate_matrix(phi: MonomialMap, g: list[list]) -> list[list]:
    return linalg.matmul(linalg.matmul(g, phi.matrix), linalg.inverse(g))


def matrices_equal(a: list[list], b: list[list]) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _ad_matrix(alg: ChevalleyAlgebra, x) -> list[list]:
    cols = [alg.bracket(x, alg.unit(j)) for j in range(alg.dim)]
    return [[cols[j][i] for j in range(alg.dim)] for i in range(alg.dim)]


def _exp_nilpotent(m: list[list]) -> list[list]:
    n = len(m)
    result = linalg.identity(n)
    term = linalg.identity(n)
    for k in range(1, n + 1):
        term = [[Fraction(x, k) for x in row] for row in linalg.matmul(term, m)]
        if not any(any(row) for row in term):
            break
        result = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(result, term)]
    return result


# -- classification over a grid of roots of unity ---------------------------


@dataclass(frozen=True, order=True)
class GridRoot:
    """exp(2 pi i * exponent) for a rational exponent in [0, 1)."""

    exponent: Fraction

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def value(self) -> CycNum:
        return root_of_unity(self.exponent.denominator, self.exponent.numerator)

    def __str__(self) -> str:
        return str(self.value())


def roots_of_unity_up_to(max_order: int) -> list[GridRoot]:
    out = []
    for m in range(1, max_order + 1):
        for k in range(m):
            if math.gcd(k, m) == 1:
                out.append(GridRoot(Fraction(k, m)))
    return out


def _symbolic_cycles(alg: ChevalleyAlgebra) -> list[tuple[int, int, int]]:
    """Cycle products (sign, A, B), meaning sign * u^A t^B, of Ad(s(u,t)) o theta."""
    sym = _symbolic_twist(alg)
    seen = set()
    out = []
    for start in range(alg.dim):
        if start in seen:
            continue
        sign, a, b = 1, 0, 0
        j = start
        while j not in seen:
            seen.add(j)
            k, s, ea, eb = sym[j]
            sign, a, b = sign * s, a + ea, b + eb
            j = k
        out.append((sign, a, b))
    return out


def fixed_dimension_exponents(alg: ChevalleyAlgebra, ru: Fraction, rt: Fraction) -> int:
    """dim of the fixed space for u = exp(2 pi i ru), t = exp(2 pi i rt), by exact exponent arithmetic."""
    total = 0
    for sign, a, b in _symbolic_cycles_cached(alg):
        e = a * ru + b * rt + (Fraction(1, 2) if sign < 0 else 0)
        if e.denominator == 1:
            total += 1
    return total


_CYCLE_CACHE: dict[int, list] = {}


def _symbolic_cycles_cached(alg: ChevalleyAlgebra):
    key = id(alg)
    if key not in _CYCLE_CACHE:
        _CYCLE_CACHE[key] = _symbolic_cycles(alg)
    return _CYCLE_CACHE[key]


# Conjugations of s(u,t)·theta, on exponents (ru, rt) modulo 1.
#   shift:   t -> t*zeta_3 (torus conjugation by alpha_1(1) alpha_2(z) alpha_3(z^2))
#   w0:      (u, t) -> (t^3/u, t), the lift of the reflection in alpha_0
#   w123:    (u, t) -> (u, u/t), the lift of s_1 s_2 s_3
# w0 and w123 generate the theta-fixed Weyl group W(G2).
def _shift(p):
    return p[0], (p[1] + Fraction(1, 3)) % 1


def _w0(p):
    return (3 * p[1] - p[0]) % 1, p[1]


def _w123(p):
    return p[0], (p[0] - p[1]) % 1


REDUCTIONS = {"shift": _shift, "w0": _w0, "w123": _w123}


def conjugacy_orbit(ru: Fraction, rt: Fraction, moves=tuple(REDUCTIONS.values())) -> frozenset:
    start = (Fraction(ru) % 1, Fraction(rt) % 1)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for p in frontier:
            for move in moves:
                q = move(p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(seen)


def _rep_key(p):
    u, t = p
    return (u.order, t.order, u.exponent, t.exponent)


def _orbit_key(p):
    return (p[0].denominator, p[1].denominator, p[0], p[1])


@dataclass
class EndoscopyClass:
    u: GridRoot
    t: GridRoot
    dim: int
    type: CartanType
    reduced_from: list[tuple[GridRoot, GridRoot]]

    def to_dict(self) -> dict:
        d = {
            "u": str(self.u),
            "t": str(self.t),
            "dim": self.dim,
            "type": self.type.value,
            "reduced_from": [[str(a), str(b)] for a, b in self.reduced_from],
        }
        if self.type is CartanType.A2:
            d["annotation"] = "group-level fixed points are PGL3 (isogeny class not decided by the Lie algebra)"
        return d


@dataclass
class EndoscopyReport:
    max_order: int
    grid_size: int
    class_count: int
    classes: list[EndoscopyClass]

    def types(self) -> list[tuple[int, CartanType]]:
        return [(c.dim, c.type) for c in self.classes]

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "grid_size": self.grid_size,
            "class_count": self.class_count,
            "classes": [c.to_dict() for c in self.classes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def enumerate_elliptic(max_order: int = 12) -> EndoscopyReport:
    """Semisimple fixed algebras of s(u,t)·theta over roots of unity of order <= max_order.

    Grid points are grouped by their orbit under the conjugations in ``REDUCTIONS``.
    Dimensions are computed for every grid point from exponents; each class
    representative is then rebuilt in the cyclotomic model and classified.
    """
    if max_order < 6:
        raise ValueError("max_order must be at least 6 to reach s(1,-1) and s(zeta_3,1)")
    alg = build_spin8()
    grid = roots_of_unity_up_to(max_order)
    classes: dict[tuple, list[tuple[GridRoot, GridRoot]]] = {}
    dims: dict[tuple[GridRoot, GridRoot], int] = {}
    orbit_of: dict[tuple, frozenset] = {}
    for u in grid:
        for t in grid:
            p = (u.exponent, t.exponent)
            if p not in orbit_of:
                orbit = conjugacy_orbit(*p)
                for q in orbit:
                    orbit_of[q] = orbit
            key = min(orbit_of[p], key=_orbit_key)
            dims[(u, t)] = fixed_dimension_exponents(alg, *p)
            classes.setdefault(key, []).append((u, t))
    found = []
    for key in sorted(classes, key=_orbit_key):
        members = sorted(classes[key], key=_rep_key)
        member_dims = {dims[m] for m in members}
        if len(member_dims) != 1:
            raise StructureConstantError(f"conjugate grid points disagree on dimension: {members}")
        dim = member_dims.pop()
        # the 2-dim torus of theta-fixed h's alone is abelian
        if dim <= 2:
            continue
        rep = members[0]
        sub = fixed_subalgebra(twisted_element(rep[0].value(), rep[1].value(), alg))
        if sub.dim != dim:
            raise StructureConstantError(f"cyclotomic and exponent dimensions disagree at {rep}")
        kind = sub.cartan_type
        if kind is CartanType.NON_SEMISIMPLE:
            continue
        found.append(EndoscopyClass(rep[0], rep[1], dim, kind, members))
    found.sort(key=lambda c: (-c.dim, _rep_key((c.u, c.t))))
    return EndoscopyReport(max_order, len(grid) ** 2, len(classes), found)
