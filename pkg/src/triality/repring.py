"""Formal characters of D4 and A2 with restriction along the adjoint embedding PGL3 -> PGSO8.

Weight multiplicities of irreducibles come from Freudenthal's formula.

Weights are integer vectors of Dynkin labels (coordinates in the fundamental weights).
For D4 index 0 is the branch node; the three leaves carry the 8-dimensional
representations ``RHO = (omega_1, omega_2, omega_3)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import linalg
from .rootsys import A2_CARTAN, D4_CARTAN, build_a2, build_d4

Weight = tuple[int, ...]

CARTAN = {"D4": D4_CARTAN, "A2": A2_CARTAN}

# which leaf is rho_1, rho_2, rho_3 is a convention; the identities checked are theta-symmetric
RHO = {1: (0, 1, 0, 0), 2: (0, 0, 1, 0), 3: (0, 0, 0, 1)}
D4_ADJOINT = (1, 0, 0, 0)
A2_ADJOINT = (1, 1)
A2_SYM3 = (3, 0)
A2_SYM3_DUAL = (0, 3)


class NotACharacterError(ValueError):
    """Decomposition met a weight that cannot head an irreducible constituent."""


@dataclass(frozen=True)
class _Lattice:
    cartan: tuple
    form: tuple  # Gram matrix of the fundamental weights (A^{-1} in the simply laced case)
    simple: tuple  # simple roots in Dynkin labels
    positive: tuple  # positive roots in Dynkin labels
    rank: int


@lru_cache(maxsize=None)
def _lattice(ambient: str) -> _Lattice:
    if ambient not in CARTAN:
        raise ValueError(f"unknown ambient {ambient!r}")
    a = CARTAN[ambient]
    n = len(a)
    inv = linalg.inverse([[Fraction(x) for x in row] for row in a])
    datum = build_d4() if ambient == "D4" else build_a2()

    def to_labels(root):
        return tuple(sum(a[j][i] * root[i] for i in range(n)) for j in range(n))

    return _Lattice(
        cartan=a,
        form=tuple(tuple(row) for row in inv),
        simple=tuple(to_labels(tuple(int(i == j) for j in range(n))) for i in range(n)),
        positive=tuple(to_labels(r) for r in datum.positive_roots),
        rank=n,
    )


def _ip(lat: _Lattice, x, y) -> Fraction:
    n = lat.rank
    return sum((lat.form[i][j] * x[i] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]), Fraction(0))


def _root_coords(lat: _Lattice, weight) -> tuple[Fraction, ...]:
    # weight = sum c_i alpha_i  <=>  c = A^{-1} weight (A symmetric here)
    n = lat.rank
    return tuple(sum(lat.form[i][j] * weight[j] for j in range(n)) for i in range(n))


def dominant_conjugate(ambient: str, weight) -> Weight:
    lat = _lattice(ambient)
    w = list(weight)
    while True:
        for i in range(lat.rank):
            if w[i] < 0:
                c = w[i]
                w = [x - c * s for x, s in zip(w, lat.simple[i])]
                break
        else:
            return tuple(w)


def height(ambient: str, weight) -> Fraction:
    """<weight, rho^vee>, the sum of root coordinates."""
    return sum(_root_coords(_lattice(ambient), weight))


def _is_weight_of(lat: _Lattice, ambient: str, mu, lam) -> bool:
    diff = _root_coords(lat, tuple(a - b for a, b in zip(lam, dominant_conjugate(ambient, mu))))
    return all(c.denominator == 1 and c >= 0 for c in diff)


class Character:
    """A virtual character: finitely supported integer multiplicities on weights."""

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: str, terms: Mapping[Weight, int] | Iterable = ()):
        _lattice(ambient)
        self.ambient = ambient
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Counter = Counter()
        for w, m in items:
            acc[tuple(w)] += m
        self.terms = {w: m for w, m in acc.items() if m}

    @property
    def dim(self) -> int:
        return sum(self.terms.values())

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        return Character(self.ambient, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def scale(self, k: int) -> "Character":
        return Character(self.ambient, {w: k * m for w, m in self.terms.items()})

    def __mul__(self, other: "Character") -> "Character":
        return tensor(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Character({self.ambient}, dim={self.dim}, weights={len(self.terms)})"

    def _check(self, other: "Character") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def dual(self) -> "Character":
        return Character(self.ambient, {tuple(-x for x in w): m for w, m in self.terms.items()})

    def is_self_dual(self) -> bool:
        return self.dual() == self

    def adams(self, k: int) -> "Character":
        return Character(self.ambient, {tuple(k * x for x in w): m for w, m in self.terms.items()})

    def is_weyl_invariant(self) -> bool:
        lat = _lattice(self.ambient)
        for i in range(lat.rank):
            s = lat.simple[i]
            for w, m in self.terms.items():
                r = tuple(x - w[i] * y for x, y in zip(w, s))
                if self.terms.get(r, 0) != m:
                    return False
        return True

    def on_root_lattice(self) -> bool:
        """True when every weight lies in the root lattice (a character of the adjoint group)."""
        lat = _lattice(self.ambient)
        return all(all(c.denominator == 1 for c in _root_coords(lat, w)) for w in self.terms)


def trivial(ambient: str) -> Character:
    return Character(ambient, {(0,) * _lattice(ambient).rank: 1})


@lru_cache(maxsize=None)
def _irr_terms(ambient: str, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    lat = _lattice(ambient)
    rho = (1,) * lat.rank
    lam_rho = tuple(a + b for a, b in zip(lam, rho))
    norm_top = _ip(lat, lam_rho, lam_rho)
    # weights layered by depth below lam
    layers = [[lam]]
    seen = {lam}
    while layers[-1]:
        nxt = []
        for mu in layers[-1]:
            for s in lat.simple:
                nu = tuple(a - b for a, b in zip(mu, s))
                if nu not in seen and _is_weight_of(lat, ambient, nu, lam):
                    seen.add(nu)
                    nxt.append(nu)
        layers.append(nxt)
    mult = {lam: 1}
    for layer in layers[1:]:
        for mu in sorted(layer):
            total = Fraction(0)
            for a in lat.positive:
                k = 1
                while True:
                    nu = tuple(x + k * y for x, y in zip(mu, a))
                    m = mult.get(nu)
                    if m is None:
                        break
                    total += _ip(lat, nu, a) * m
                    k += 1
            mu_rho = tuple(x + y for x, y in zip(mu, rho))
            denom = norm_top - _ip(lat, mu_rho, mu_rho)
            val = 2 * total / denom
            if val.denominator != 1:
                raise ArithmeticError(f"non-integral Freudenthal multiplicity at {mu}")
            mult[mu] = int(val)
    return tuple(sorted((w, m) for w, m in mult.items() if m))


def irr_char(ambient: str, highest_weight) -> Character:
    """Character of the irreducible module with the given dominant highest weight."""
    lam = tuple(int(x) for x in highest_weight)
    if len(lam) != _lattice(ambient).rank:
        raise ValueError("highest weight has the wrong length")
    if any(x < 0 for x in lam):
        raise ValueError(f"highest weight {lam} is not dominant")
    return Character(ambient, dict(_irr_terms(ambient, lam)))


def tensor(a: Character, b: Character) -> Character:
    a._check(b)
    acc: Counter = Counter()
    for w1, m1 in a.terms.items():
        for w2, m2 in b.terms.items():
            acc[tuple(x + y for x, y in zip(w1, w2))] += m1 * m2
    return Character(a.ambient, acc)


def exterior_power(c: Character, k: int) -> Character:
    """k-th exterior power from Newton's identity  k e_k = sum_i (-1)^(i-1) e_{k-i} psi^i."""
    if k < 0:
        raise ValueError("k must be non-negative")
    e = [trivial(c.ambient)]
    for j in range(1, k + 1):
        acc = Character(c.ambient)
        for i in range(1, j + 1):
            term = tensor(e[j - i], c.adams(i))
            acc = acc + (term if i % 2 else term.scale(-1))
        terms = {}
        for w, m in acc.terms.items():
            if m % j:
                raise ArithmeticError("Newton recursion produced a non-integral multiplicity")
            terms[w] = m // j
        e.append(Character(c.ambient, terms))
    return e[k]


def decompose(c: Character) -> Counter:
    """Multiplicities of irreducible constituents, keyed by highest weight."""
    out: Counter = Counter()
    rest = c
    while rest.terms:
        top = max(rest.terms, key=lambda w: (height(c.ambient, w), w))
        m = rest.terms[top]
        if m < 0 or any(x < 0 for x in top):
            raise NotACharacterError(f"leading weight {top} has multiplicity {m}")
        out[top] += m
        rest = rest - irr_char(c.ambient, top).scale(m)
    return out


def dimension(ambient: str, highest_weight) -> int:
    return irr_char(ambient, highest_weight).dim


@dataclass(frozen=True)
class BranchingMap:
    """Integer matrix taking D4 Dynkin labels to A2 Dynkin labels (pullback along the torus map)."""

    matrix: tuple[tuple[int, ...], ...]

    def __call__(self, weight) -> Weight:
        return tuple(sum(r[j] * weight[j] for j in range(len(weight))) for r in self.matrix)


def branching_map() -> BranchingMap:
    """mu -> mu o xi for xi(diag(a,b,c)) = alpha_0^v(ab/c^2) alpha_1^v(a/c) alpha_2^v(a/c) alpha_3^v(a/c).

    A D4 weight with labels m pulls back to a^(m0+S) b^(m0) c^(-2 m0 - S), S = m1+m2+m3,
    whose A2 labels are (S, 3 m0 + S).
    """
    return BranchingMap(((0, 1, 1, 1), (3, 1, 1, 1)))


def restrict(c: Character, bmap: BranchingMap | None = None) -> Character:
    if c.ambient != "D4":
        raise ValueError("restriction starts from a D4 character")
    bmap = bmap or branching_map()
    acc: Counter = Counter()
    for w, m in c.terms.items():
        acc[bmap(w)] += m
    return Character("A2", acc)


def format_decomposition(dec: Mapping[Weight, int], ambient: str) -> str:
    parts = []
    for w in sorted(dec, key=lambda w: (-dimension(ambient, w), w)):
        m = dec[w]
        name = f"V{list(w)}"
        parts.append(name if m == 1 else f"{m}*{name}")
    return " + ".join(parts) if parts else "0"


def branching_report() -> list[dict]:
    """Each identity as {input, decomposition, dims, expected, ok}."""
    rows = []

    def add(label, character, expected):
        dec = decompose(character)
        dims = [dimension(character.ambient, w) for w in sorted(dec) for _ in range(dec[w])]
        rows.append(
            {
                "input": label,
                "ambient": character.ambient,
                "decomposition": {",".join(map(str, w)): m for w, m in sorted(dec.items())},
                "dims": sorted(dims, reverse=True),
                "dim": character.dim,
                "ok": dict(dec) == dict(expected),
            }
        )

    rho = {i: irr_char("D4", w) for i, w in RHO.items()}
    wedge3 = exterior_power(rho[3], 3)
    add("rho1 (x) rho2", tensor(rho[1], rho[2]), Counter({RHO[3]: 1, (0, 1, 1, 0): 1}))
    add("wedge^3 rho3", wedge3, Counter({(0, 1, 1, 0): 1}))
    ad = irr_char("A2", A2_ADJOINT)
    add("Ad (x) Ad", tensor(ad, ad), decompose(ad + exterior_power(ad, 3)))
    for i in (1, 2, 3):
        add(f"restrict rho{i}", restrict(rho[i]), Counter({A2_ADJOINT: 1}))
    add("restrict so8", restrict(irr_char("D4", D4_ADJOINT)), Counter({A2_ADJOINT: 1, A2_SYM3: 1, A2_SYM3_DUAL: 1}))
    return rows
