"""Heisenberg-Weil groups over F_3 with their Weil representation.

Character tables are computed by Dixon's modular method.

Elements are 7-tuples ``(w1, w2, z, a, b, c, d)`` with entries in {0, 1, 2}: a
Heisenberg element ``(w, z)`` followed by a matrix ``[[a, b], [c, d]]`` of SL_2(F_3).
Multiplication is ``(h, g)(h', g') = (h * g(h'), g g')`` with
``(w, z)(w', z') = (w + w', z + z' + 2<w, w'>)`` and ``<w, w'> = w1 w2' - w2 w1'``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .cyclotomic import CycNum, root_of_unity, sqrt_rational

P = 3
Elem = tuple[int, int, int, int, int, int, int]
Mat2 = tuple[int, int, int, int]

IDENTITY2: Mat2 = (1, 0, 0, 1)
W0: Mat2 = (0, 1, 2, 0)  # [[0, 1], [-1, 0]]
J8: Mat2 = (1, 1, 1, 2)  # [[1, 1], [1, -1]], with W0 generates Q_8
MINUS_ONE: Mat2 = (2, 0, 0, 2)

LEVELS = ("h", "mu2", "c4", "q8", "j")
LEVEL_NAMES = {"h": "H(W)", "mu2": "H(W).mu2", "c4": "H(W).C4", "q8": "H(W).Q8", "j": "J(W)"}
EXPECTED_ORDERS = {"h": 27, "mu2": 54, "c4": 108, "q8": 216, "j": 648}


class GroupAxiomError(RuntimeError):
    """A constructed multiplication table is not a group."""


class WeilRepresentationError(RuntimeError):
    """No consistent extension of the Heisenberg representation was found."""


class DecompositionShapeError(AssertionError):
    """An adjoint decomposition came out different from the expected shape."""


def _mat_mul(g: Mat2, h: Mat2) -> Mat2:
    a, b, c, d = g
    e, f, x, y = h
    return ((a * e + b * x) % P, (a * f + b * y) % P, (c * e + d * x) % P, (c * f + d * y) % P)


def _mat_vec(g: Mat2, w1: int, w2: int) -> tuple[int, int]:
    a, b, c, d = g
    return (a * w1 + b * w2) % P, (c * w1 + d * w2) % P


def symplectic(w1, w2, v1, v2) -> int:
    return (w1 * v2 - w2 * v1) % P


def multiply(x: Elem, y: Elem) -> Elem:
    w1, w2, z, *g = x
    v1, v2, s, *h = y
    g = tuple(g)
    u1, u2 = _mat_vec(g, v1, v2)
    return (
        (w1 + u1) % P,
        (w2 + u2) % P,
        (z + s + 2 * symplectic(w1, w2, u1, u2)) % P,
        *_mat_mul(g, tuple(h)),
    )


@lru_cache(maxsize=1)
def sl2() -> tuple[Mat2, ...]:
    return tuple(
        g for g in itertools.product(range(P), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % P == 1
    )


def _mat_order(g: Mat2) -> int:
    k, h = 1, g
    while h != IDENTITY2:
        h = _mat_mul(h, g)
        k += 1
    return k


def _generated(gens: Sequence[Mat2]) -> tuple[Mat2, ...]:
    seen = {IDENTITY2}
    frontier = [IDENTITY2]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mat_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def symplectic_part(level: str) -> tuple[Mat2, ...]:
    """The subgroup S of SL_2(F_3) with level group H(W) x| S."""
    if level == "h":
        return (IDENTITY2,)
    if level == "mu2":
        return _generated([MINUS_ONE])
    if level == "c4":
        return _generated([W0])
    if level == "q8":
        return tuple(sorted(g for g in sl2() if _mat_order(g) in (1, 2, 4)))
    if level == "j":
        return tuple(sorted(sl2()))
    raise ValueError(f"unknown level {level!r}")


class FiniteGroup:
    """An explicit finite group with a full multiplication table."""

    def __init__(self, name: str, elements: Sequence[Elem], check: bool = True):
        self.name = name
        self._char_table = None
        self.elements: list[Elem] = sorted(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        table = np.empty((n, n), dtype=np.int32)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                k = self.index.get(multiply(x, y))
                if k is None:
                    raise GroupAxiomError(f"{name}: not closed, {x} * {y} leaves the set")
                table[i, j] = k
        self.table = table
        self.identity = self.index[(0, 0, 0, *IDENTITY2)]
        inv = np.argmax(table == self.identity, axis=1)
        self.inverse = [int(i) for i in inv]
        if check:
            self.check_axioms()

    @property
    def order(self) -> int:
        return len(self.elements)

    def check_axioms(self, exhaustive_limit: int = 216, samples: int = 20000, seed: int = 0) -> None:
        t = self.table
        n = self.order
        ident = self.identity
        if not (np.all(t[ident] == np.arange(n)) and np.all(t[:, ident] == np.arange(n))):
            raise GroupAxiomError(f"{self.name}: identity fails")
        if not np.all(t[np.arange(n), self.inverse] == ident):
            raise GroupAxiomError(f"{self.name}: inverses fail")
        # Latin square rows and columns
        if any(len(set(row.tolist())) != n for row in t) or any(len(set(col.tolist())) != n for col in t.T):
            raise GroupAxiomError(f"{self.name}: table is not a Latin square")
        if n <= exhaustive_limit:
            left = t[t, :]  # left[a, b, c] = (ab)c
            right = t[:, t]  # right[a, b, c] = a(bc)
            if not np.array_equal(left, right):
                raise GroupAxiomError(f"{self.name}: associativity fails")
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, samples))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupAxiomError(f"{self.name}: associativity fails on a sample")

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def power(self, i: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = int(self.table[r, i])
        return r

    def element_order(self, i: int) -> int:
        k, r = 1, i
        while r != self.identity:
            r = int(self.table[r, i])
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(i) for i in range(self.order)))

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes: the identity first, then by smallest element index."""
        t = self.table
        seen = [-1] * self.order
        out = []
        for x in [self.identity, *range(self.order)]:
            if seen[x] >= 0:
                continue
            members = sorted({int(t[t[g, x], self.inverse[g]]) for g in range(self.order)})
            for m in members:
                seen[m] = len(out)
            out.append(members)
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * self.order
        for k, members in enumerate(self.classes):
            for m in members:
                out[m] = k
        return out

    def class_rep(self, k: int) -> int:
        return self.classes[k][0]

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def contains(self, other: "FiniteGroup") -> bool:
        return all(e in self.index for e in other.elements)

    def is_normal(self, other: "FiniteGroup") -> bool:
        idx = [self.index[e] for e in other.elements]
        for g in range(self.order):
            gi = self.inverse[g]
            for h in idx:
                if self.elements[int(self.table[self.table[g, h], gi])] not in other.index:
                    return False
        return True


def level_elements(level: str) -> list[Elem]:
    return [
        (w1, w2, z, *g)
        for g in symplectic_part(level)
        for w1, w2, z in itertools.product(range(P), repeat=3)
    ]


@lru_cache(maxsize=None)
def level_group(level: str) -> FiniteGroup:
    g = FiniteGroup(LEVEL_NAMES[level], level_elements(level))
    if g.order != EXPECTED_ORDERS[level]:
        raise GroupAxiomError(f"{g.name} has order {g.order}, expected {EXPECTED_ORDERS[level]}")
    return g


def build_chain() -> list[FiniteGroup]:
    """H(W) < H.mu2 < H.C4 < H.Q8 < J(W), with orders and inclusions verified."""
    chain = [level_group(lv) for lv in LEVELS]
    for small, big in zip(chain, chain[1:]):
        if not big.contains(small):
            raise GroupAxiomError(f"{small.name} is not contained in {big.name}")
    return chain


def sl2_facts() -> dict:
    """Order of SL_2(F_3), and that Q_8 is a normal subgroup and its unique 2-Sylow."""
    group = sl2()
    q8 = set(symplectic_part("q8"))
    normal = all(_mat_mul(_mat_mul(g, h), _inverse2(g)) in q8 for g in group for h in q8)
    two_parts = [g for g in group if _mat_order(g) in (1, 2, 4, 8)]
    return {
        "order": len(group),
        "q8_order": len(q8),
        "q8_normal": normal,
        # every 2-element lies in Q_8, hence Q_8 is the unique 2-Sylow
        "q8_unique_sylow": set(two_parts) == q8,
    }


def _inverse2(g: Mat2) -> Mat2:
    a, b, c, d = g
    return (d % P, (-b) % P, (-c) % P, a % P)


# --- lines and orbits ---------------------------------------------------------


def lines() -> list[tuple[tuple[int, int], ...]]:
    """The four lines of F_3^2, each as its sorted set of nonzero vectors."""
    out = set()
    for v in itertools.product(range(P), repeat=2):
        if v != (0, 0):
            out.add(tuple(sorted({v, ((2 * v[0]) % P, (2 * v[1]) % P)})))
    return sorted(out)


def _orbits(points, act, group) -> list[list]:
    remaining = set(points)
    out = []
    for p in points:
        if p not in remaining:
            continue
        orbit = sorted({act(g, p) for g in group})
        remaining -= set(orbit)
        out.append(orbit)
    return out


def line_orbits(level: str) -> list[list[tuple[tuple[int, int], ...]]]:
    def act(g, line):
        return tuple(sorted(_mat_vec(g, *v) for v in line))

    return _orbits(lines(), act, symplectic_part(level))


def nonzero_vector_orbits(level: str) -> list[list[tuple[int, int]]]:
    pts = [v for v in itertools.product(range(P), repeat=2) if v != (0, 0)]
    return _orbits(pts, lambda g, v: _mat_vec(g, *v), symplectic_part(level))


# --- class functions and Dixon's algorithm -------------------------------------


@dataclass(frozen=True)
class ClassFunction:
    group: FiniteGroup = field(repr=False, compare=False)
    values: tuple[CycNum, ...]

    @property
    def degree(self) -> int:
        return int(self.values[0].to_fraction())

    def __call__(self, element_index: int) -> CycNum:
        return self.values[self.group.class_of[element_index]]

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conjugate() for v in self.values))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))


def inner_product(a: ClassFunction, b: ClassFunction) -> CycNum:
    g = a.group
    total = CycNum(0)
    for k, members in enumerate(g.classes):
        total = total + a.values[k] * b.values[k].conjugate() * len(members)
    return total / g.order


def trivial_character(g: FiniteGroup) -> ClassFunction:
    return ClassFunction(g, tuple(CycNum(1) for _ in g.classes))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def dixon_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while not (_is_prime(p) and p > 2 * math.isqrt(order) + 2):
        p += exponent
    return p


def _nullspace_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    m = [[x % p for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(m, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def _primitive_root_of_order(e: int, p: int) -> int:
    for g in range(2, p):
        if pow(g, e, p) == 1 and all(pow(g, e // q, p) != 1 for q in range(2, e + 1) if e % q == 0 and _is_prime(q)):
            return g
    raise ArithmeticError(f"no element of order {e} mod {p}")


def class_constants(g: FiniteGroup) -> list[list[list[int]]]:
    """a[i][j][k] = #{(x, y) in C_i x C_j : x y = z_k} for a fixed z_k in C_k."""
    r = len(g.classes)
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    cls = g.class_of
    t = g.table
    for k in range(r):
        z = g.class_rep(k)
        for x in range(g.order):
            y = int(t[g.inverse[x], z])
            a[cls[x]][cls[y]][k] += 1
    return a


def char_table(g: FiniteGroup | str) -> list[ClassFunction]:
    """All irreducible characters (Burnside-Dixon), exact in Q(zeta_exponent)."""
    if isinstance(g, str):
        g = level_group(g)
    if g._char_table is None:
        g._char_table = tuple(_dixon(g))
    return list(g._char_table)


def _dixon(g: FiniteGroup) -> list[ClassFunction]:
    r = len(g.classes)
    e = g.exponent
    p = dixon_prime(g.order, e)
    a = class_constants(g)
    sizes = [len(c) for c in g.classes]
    inv_class = [g.class_of[g.inverse[g.class_rep(k)]] for k in range(r)]
    # common eigenvectors of M_j, (M_j)[i][k] = a[j][i][k], acting on column vectors
    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mj = [[a[j][i][k] % p for k in range(r)] for i in range(r)]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            pieces = []
            total = 0
            for lam in range(p):
                # vectors v = sum c_s basis[s] with (M_j - lam) v = 0
                cols = [[sum(mj[i][k] * b[k] for k in range(r)) - lam * b[i] for i in range(r)] for b in basis]
                sys_rows = [[cols[s][i] % p for s in range(len(basis))] for i in range(r)]
                null = _nullspace_mod(sys_rows, p)
                if null:
                    vecs = [[sum(c[s] * basis[s][i] for s in range(len(basis))) % p for i in range(r)] for c in null]
                    pieces.append(vecs)
                    total += len(vecs)
                    if total == len(basis):
                        break
            if total != len(basis):
                raise ArithmeticError("class matrix is not diagonalizable mod p")
            new_spaces.extend(pieces)
        spaces = new_spaces
    if any(len(s) != 1 for s in spaces):
        raise ArithmeticError("class matrices failed to separate the characters")
    zeta_p = _primitive_root_of_order(e, p)
    powers = [[g.class_of[g.power(g.class_rep(k), l)] for l in range(e)] for k in range(r)]
    zeta = [root_of_unity(e, m) for m in range(e)]
    chars = []
    for (vec,) in spaces:
        inv0 = pow(vec[0], p - 2, p)
        w = [(x * inv0) % p for x in vec]  # central character, w[identity class] = 1
        s = sum(w[k] * w[inv_class[k]] * pow(sizes[k], p - 2, p) for k in range(r)) % p
        d2 = (g.order * pow(s, p - 2, p)) % p
        d = next(d for d in range(1, math.isqrt(g.order) + 1) if (d * d - d2) % p == 0)
        chi_mod = [(d * w[k] * pow(sizes[k], p - 2, p)) % p for k in range(r)]
        values = []
        inv_e = pow(e, p - 2, p)
        for k in range(r):
            total = CycNum(0)
            for m in range(e):
                mult = sum(chi_mod[powers[k][l]] * pow(zeta_p, (-m * l) % e, p) for l in range(e)) * inv_e % p
                if mult > d:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                if mult:
                    total = total + zeta[m] * mult
            values.append(total)
        chars.append(ClassFunction(g, tuple(values)))
    chars.sort(key=lambda c: (c.degree, [v.sort_key(e) for v in c.values]))
    return chars


def check_orthogonality(table: Sequence[ClassFunction]) -> bool:
    """Row orthogonality <chi_i, chi_j> = delta_ij and column orthogonality, exactly."""
    if not table:
        return False
    g = table[0].group
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            if inner_product(a, b) != (1 if i == j else 0):
                return False
    r = len(g.classes)
    for k in range(r):
        for l in range(r):
            s = sum((c.values[k] * c.values[l].conjugate() for c in table), CycNum(0))
            expected = CycNum(g.order // len(g.classes[k])) if k == l else CycNum(0)
            if s != expected:
                return False
    return True


def decompose(cf: ClassFunction, table: Sequence[ClassFunction]) -> list[tuple[ClassFunction, int]]:
    out = []
    for chi in table:
        m = inner_product(cf, chi)
        if not m.is_rational() or m.to_fraction().denominator != 1 or m.to_fraction() < 0:
            raise DecompositionShapeError(f"multiplicity {m} is not a natural number")
        if m:
            out.append((chi, int(m.to_fraction())))
    return out


# --- the Heisenberg-Weil representation -----------------------------------------


Matrix = list[list]


def _mm(a: Matrix, b: Matrix) -> Matrix:
    return linalg.matmul(a, b)


def _eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _scal(c, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def _conj_transpose(a: Matrix) -> Matrix:
    return [[_as_cyc(a[j][i]).conjugate() for j in range(len(a))] for i in range(len(a[0]))]


def _as_cyc(x) -> CycNum:
    return x if isinstance(x, CycNum) else CycNum(x)


IDENTITY3 = [[CycNum(int(i == j)) for j in range(3)] for i in range(3)]


@dataclass
class Representation:
    """omega on H(W) x| Q_8: rho(h, g) = omega(h) A_g."""

    dim: int
    chi_exponent: int
    line: tuple[int, int]
    heis: dict = field(repr=False)  # (w1, w2, z) -> matrix
    lift: dict = field(repr=False)  # matrix g in Q_8 -> A_g
    images: dict = field(repr=False)  # named generators -> matrices

    def matrix(self, elem: Elem) -> Matrix:
        w1, w2, z, *g = elem
        return _mm(self.heis[(w1, w2, z)], self.lift[tuple(g)])

    def trace(self, elem: Elem) -> CycNum:
        m = self.matrix(elem)
        return sum((m[i][i] for i in range(self.dim)), CycNum(0))

    def character(self, g: FiniteGroup) -> ClassFunction:
        return ClassFunction(g, tuple(self.trace(g.elements[g.class_rep(k)]) for k in range(len(g.classes))))


def _heisenberg_mul(x, y):
    w1, w2, z = x
    v1, v2, s = y
    return ((w1 + v1) % P, (w2 + v2) % P, (z + s + 2 * symplectic(w1, w2, v1, v2)) % P)


def _heisenberg_inverse(x):
    w1, w2, z = x
    return ((-w1) % P, (-w2) % P, (-z) % P)


def induced_heisenberg(chi_exponent: int = 1, line: tuple[int, int] = (1, 0)) -> dict:
    """Ind from H(L) = L x Z of chi_L(l, z) = zeta_3^(chi_exponent * z), on all 27 elements."""
    if chi_exponent % P == 0:
        raise ValueError("the central character must be nontrivial")
    l1, l2 = line
    # a complement to L: any vector with <line, m> != 0
    m = next(v for v in ((0, 1), (1, 0), (1, 1)) if symplectic(l1, l2, *v))
    cosets = [((k * m[0]) % P, (k * m[1]) % P, 0) for k in range(P)]
    in_hl = {((a * l1) % P, (a * l2) % P, z) for a in range(P) for z in range(P)}
    zeta3 = [root_of_unity(3, (chi_exponent * z) % 3) for z in range(P)]
    heis = {}
    for h in itertools.product(range(P), repeat=3):
        mat = [[CycNum(0)] * P for _ in range(P)]
        for col, r in enumerate(cosets):
            hr = _heisenberg_mul(h, r)
            for row, r2 in enumerate(cosets):
                k = _heisenberg_mul(_heisenberg_inverse(r2), hr)
                if k in in_hl:
                    mat[row][col] = zeta3[k[2]]
                    break
        heis[h] = mat
    return heis


def _intertwiner(heis: dict, g: Mat2) -> Matrix:
    """A with A omega(h) = omega(g h) A for the generators of H(W); unique up to scalars."""
    gens = [(1, 0, 0), (0, 1, 0)]
    rows = []
    n = 3
    for h in gens:
        gh = (*_mat_vec(g, h[0], h[1]), h[2])
        left, right = heis[h], heis[gh]
        # unknown A[i][j] at position 3i + j;  (A left - right A)[i][k] = 0
        for i in range(n):
            for k in range(n):
                row = [CycNum(0)] * (n * n)
                for j in range(n):
                    row[i * n + j] = row[i * n + j] + left[j][k]
                    row[j * n + k] = row[j * n + k] - right[i][j]
                rows.append(row)
    null = linalg.nullspace(rows)
    if len(null) != 1:
        raise WeilRepresentationError(f"intertwiner space for {g} has dimension {len(null)}")
    v = null[0]
    a = [[_as_cyc(v[i * n + j]) for j in range(n)] for i in range(n)]
    # unitary normalization: A A^* = c Id with c positive rational
    c = _mm(a, _conj_transpose(a))[0][0]
    if not c.is_rational():
        raise WeilRepresentationError("intertwiner is not a scalar multiple of a unitary matrix")
    return _scal(sqrt_rational(c.to_fraction()).inverse(), a)


def _mat_power(a: Matrix, k: int) -> Matrix:
    out = IDENTITY3
    for _ in range(k):
        out = _mm(out, a)
    return out


def _inverse3(a: Matrix) -> Matrix:
    # unitary after normalization
    return _conj_transpose(a)


@lru_cache(maxsize=None)
def weil_rep(chi_exponent: int = 1, line: tuple[int, int] = (1, 0)) -> Representation:
    """The Heisenberg representation with central character zeta_3^(chi_exponent z), extended to Q_8."""
    heis = induced_heisenberg(chi_exponent, line)
    base_i = _intertwiner(heis, W0)
    base_j = _intertwiner(heis, J8)
    mu12 = [root_of_unity(12, k) for k in range(12)]
    for ki, kj in itertools.product(range(12), repeat=2):
        ai = _scal(mu12[ki], base_i)
        aj = _scal(mu12[kj], base_j)
        ai2 = _mm(ai, ai)
        if not _eq(_mm(ai2, ai2), IDENTITY3):
            continue
        if not _eq(ai2, _mm(aj, aj)):
            continue
        if not _eq(_mm(_mm(aj, ai), _inverse3(aj)), _inverse3(ai)):
            continue
        lift = _close_lift({W0: ai, J8: aj})
        if lift is not None:
            rep = Representation(3, chi_exponent, line, heis, lift, {"i": ai, "j": aj})
            _verify_weil(rep)
            return rep
    raise WeilRepresentationError("no mu_12 normalization trivializes the cocycle on Q_8")


def _close_lift(gens: dict) -> dict | None:
    """Close {g: A_g} under products; None if some g receives two different matrices."""
    lift = {IDENTITY2: IDENTITY3}
    frontier = [IDENTITY2]
    while frontier:
        nxt = []
        for x in frontier:
            for g, a in gens.items():
                y = _mat_mul(x, g)
                m = _mm(lift[x], a)
                if y in lift:
                    if not _eq(lift[y], m):
                        return None
                else:
                    lift[y] = m
                    nxt.append(y)
        frontier = nxt
    return lift


def _verify_weil(rep: Representation) -> None:
    heis, lift = rep.heis, rep.lift
    if len(lift) != 8:
        raise WeilRepresentationError("lift does not close on Q_8")
    for x, y in itertools.product(heis, repeat=2):
        if not _eq(_mm(heis[x], heis[y]), heis[_heisenberg_mul(x, y)]):
            raise WeilRepresentationError("omega is not multiplicative on H(W)")
    for g, a in lift.items():
        for h in ((1, 0, 0), (0, 1, 0)):
            gh = (*_mat_vec(g, h[0], h[1]), h[2])
            if not _eq(_mm(_mm(a, heis[h]), _inverse3(a)), heis[gh]):
                raise WeilRepresentationError(f"A_{g} does not intertwine omega and omega o g")
        for g2, b in lift.items():
            if not _eq(_mm(a, b), lift[_mat_mul(g, g2)]):
                raise WeilRepresentationError("lift is not multiplicative on Q_8")


def weil_character(level: str, chi_exponent: int = 1, line: tuple[int, int] = (1, 0)) -> ClassFunction:
    if level == "j":
        raise ValueError("the Weil representation is built on H(W) x| Q_8 only")
    return weil_rep(chi_exponent, line).character(level_group(level))


@dataclass(frozen=True)
class DecompositionShape:
    level: str
    dims: tuple[int, ...]

    def __str__(self) -> str:
        return "+".join(str(d) for d in self.dims)

    def exponent_form(self) -> str:
        counts = Counter(self.dims)
        return " ".join(f"{d}^{m}" if m > 1 else f"{d}" for d, m in sorted(counts.items()))


EXPECTED_SHAPES = {"h": (1,) * 8, "mu2": (2,) * 4, "c4": (4, 4), "q8": (8,)}


def ad_character(level: str, chi_exponent: int = 1) -> ClassFunction:
    g = level_group(level)
    chi = weil_character(level, chi_exponent)
    return chi * chi.conj() - trivial_character(g)


def ad_constituents(level: str, chi_exponent: int = 1) -> list[tuple[ClassFunction, int]]:
    return decompose(ad_character(level, chi_exponent), char_table(level))


def ad_decomposition(level: str, chi_exponent: int = 1, check: bool = True) -> DecompositionShape:
    """Shape of omega (x) omega^dual minus the trivial character at a chain level."""
    parts = ad_constituents(level, chi_exponent)
    dims = tuple(sorted((chi.degree for chi, m in parts for _ in range(m)), reverse=True))
    shape = DecompositionShape(level, dims)
    if check and level in EXPECTED_SHAPES and dims != EXPECTED_SHAPES[level]:
        raise DecompositionShapeError(f"{LEVEL_NAMES[level]}: got shape {shape}")
    return shape


def restrict_class_function(cf: ClassFunction, sub: FiniteGroup) -> ClassFunction:
    big = cf.group
    return ClassFunction(
        sub, tuple(cf(big.index[sub.elements[sub.class_rep(k)]]) for k in range(len(sub.classes)))
    )
