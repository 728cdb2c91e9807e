"""Semisimple classes of GL3 and PGL3 under the adjoint transfer to GL8.

The torus map eta and exponent bounds for adjoint Satake parameters also live here.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import CycNum, root_of_unity
from .rootsys import TRIALITY_PERMUTATION


def _cyc(x) -> CycNum:
    return x if isinstance(x, CycNum) else CycNum(Fraction(x))


def _multiset_key(values: Iterable[CycNum]) -> tuple:
    vals = list(values)
    n = 1
    for v in vals:
        n = n * v.n // _gcd(n, v.n)
    return tuple(sorted(v.sort_key(n) for v in vals))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class FiberViolation(AssertionError):
    """Two classes with equal adjoint transfer that are neither equal nor inverse."""


@dataclass(frozen=True)
class SemisimpleClass:
    eigenvalues: tuple[CycNum, ...]
    projective: bool = False

    def __post_init__(self):
        vals = tuple(_cyc(v) for v in self.eigenvalues)
        if any(not v for v in vals):
            raise ValueError("eigenvalues must be nonzero")
        n = 1
        for v in vals:
            n = n * v.n // _gcd(n, v.n)
        object.__setattr__(self, "eigenvalues", tuple(sorted(vals, key=lambda v: v.sort_key(n))))

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    def inverse(self) -> "SemisimpleClass":
        return SemisimpleClass(tuple(v.inverse() for v in self.eigenvalues), self.projective)

    def scaled(self, c) -> "SemisimpleClass":
        return SemisimpleClass(tuple(_cyc(c) * v for v in self.eigenvalues), self.projective)

    def multiset(self) -> Counter:
        return Counter(self.eigenvalues)

    def __str__(self) -> str:
        body = ", ".join(str(v) for v in self.eigenvalues)
        return f"[{body}]" if self.projective else f"({body})"


def pgl3_class(*eigenvalues) -> SemisimpleClass:
    return SemisimpleClass(tuple(eigenvalues), projective=True)


def adjoint_transfer(c: SemisimpleClass) -> SemisimpleClass:
    """Eigenvalues of Ad(s) on gl_n / centre: ratios l_i / l_j for i != j together with 1 (n - 1 times)."""
    vals = c.eigenvalues
    ratios = [a / b for i, a in enumerate(vals) for j, b in enumerate(vals) if i != j]
    return SemisimpleClass(tuple(ratios) + (CycNum(1),) * (len(vals) - 1))


def pgl3_class_equal(c1: SemisimpleClass, c2: SemisimpleClass) -> bool:
    """Is c2 = lambda * c1 as multisets for some scalar lambda?  Candidates lambda = c2_i / c1_0."""
    if c1.size != c2.size:
        return False
    target = c2.multiset()
    base = c1.eigenvalues[0]
    for cand in {v / base for v in c2.eigenvalues}:
        if Counter(cand * v for v in c1.eigenvalues) == target:
            return True
    return False


def canonical_form(c: SemisimpleClass) -> tuple:
    """Scale-invariant key: the least sorted multiset among c / c_j over all j."""
    return min(_multiset_key(v / w for v in c.eigenvalues) for w in c.eigenvalues)


def fiber_verdict(s: SemisimpleClass, s2: SemisimpleClass) -> str:
    """'distinct transfer', 'equal', 'inverse' or 'violation' for a pair of PGL3 classes."""
    if adjoint_transfer(s).multiset() != adjoint_transfer(s2).multiset():
        return "distinct transfer"
    if pgl3_class_equal(s, s2):
        return "equal"
    if pgl3_class_equal(s.inverse(), s2):
        return "inverse"
    return "violation"


@dataclass
class FiberReport:
    classes: int
    collisions: int
    equal: int
    inverse: int
    violations: list[tuple[SemisimpleClass, SemisimpleClass]] = field(default_factory=list)
    collision_pairs: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "classes": self.classes,
            "collisions": self.collisions,
            "equal": self.equal,
            "inverse": self.inverse,
            "violations": [[str(a), str(b)] for a, b in self.violations],
        }


def fiber_check(domain: Sequence[SemisimpleClass], raise_on_violation: bool = True) -> FiberReport:
    """For all pairs of distinct PGL3 classes with the same adjoint transfer, test [s'] = [s] or [s]^-1."""
    reps: dict[tuple, SemisimpleClass] = {}
    for c in domain:
        if c.size != 3:
            raise ValueError("fiber_check expects size-3 classes")
        reps.setdefault(canonical_form(c), c)
    groups: dict[tuple, list[SemisimpleClass]] = {}
    for c in reps.values():
        groups.setdefault(_multiset_key(adjoint_transfer(c).eigenvalues), []).append(c)
    report = FiberReport(classes=len(reps), collisions=0, equal=0, inverse=0)
    for members in groups.values():
        for s, s2 in itertools.combinations(members, 2):
            report.collisions += 1
            verdict = fiber_verdict(s, s2)
            if verdict == "equal":
                # distinct canonical forms cannot be equal; kept as a consistency count
                report.equal += 1
            elif verdict == "inverse":
                report.inverse += 1
            else:
                report.violations.append((s, s2))
            report.collision_pairs.append((str(s), str(s2), verdict))
    if raise_on_violation and report.violations:
        a, b = report.violations[0]
        raise FiberViolation(f"{a} and {b} share an adjoint transfer but are neither equal nor inverse")
    return report


def mu_grid(order: int = 8) -> list[SemisimpleClass]:
    """All triples of order-dividing-``order`` roots of unity, as PGL3 classes."""
    roots = [root_of_unity(order, k) for k in range(order)]
    return [pgl3_class(a, b, c) for a, b, c in itertools.product(roots, repeat=3)]


RATIONAL_POOL = tuple(Fraction(s * p, q) for s in (1, -1) for p in range(1, 5) for q in range(1, 5))


def random_rational_classes(count: int, seed: int = 0, pool: Sequence[Fraction] = RATIONAL_POOL) -> list[SemisimpleClass]:
    """Classes with eigenvalues drawn from a small pool, so that transfer collisions actually occur."""
    rng = random.Random(seed)
    return [pgl3_class(*(rng.choice(pool) for _ in range(3))) for _ in range(count)]


# --- the torus map eta -------------------------------------------------------


def eta_map(u, t1, t2, t3) -> tuple[CycNum, CycNum, CycNum]:
    """eta(w0(u) w1(t1) w2(t2) w3(t3)) = diag(u t1 t2 t3, u, u^-2 (t1 t2 t3)^-1) in fundamental coweights."""
    u, t1, t2, t3 = (_cyc(x) for x in (u, t1, t2, t3))
    if not (u and t1 and t2 and t3):
        raise ValueError("torus coordinates must be nonzero")
    p = t1 * t2 * t3
    return (u * p, u, (u * u * p).inverse())


# exponent vectors of eta on the coweights w0, w1, w2, w3
ETA_COCHARACTERS = ((1, 1, -2), (1, 0, -1), (1, 0, -1), (1, 0, -1))
# dually, e_1, e_2, e_3 pull back to these roots in simple-root coordinates
XI_STAR = ((1, 1, 1, 1), (1, 0, 0, 0), (-2, -1, -1, -1))


def theta_on_coweights(u, t1, t2, t3) -> tuple:
    """theta permutes w1 -> w2 -> w3 -> w1 and fixes w0."""
    coords = [u, t1, t2, t3]
    out = [None] * 4
    for i, c in enumerate(coords):
        out[TRIALITY_PERMUTATION[i]] = c
    return tuple(out)


def one_minus_theta(u, t1, t2, t3) -> tuple:
    """t theta(t)^-1."""
    img = theta_on_coweights(u, t1, t2, t3)
    return tuple(_cyc(a) / _cyc(b) for a, b in zip((u, t1, t2, t3), img))


# --- exponent bounds ---------------------------------------------------------


def lrs_exponent(m: int) -> Fraction:
    """Exponent 1/2 - 1/(m^2 + 1) toward Ramanujan for cuspidal representations of GL_m."""
    return Fraction(1, 2) - Fraction(1, m * m + 1)


def ramanujan_bounds(n: int = 3, delta: Fraction | None = None) -> tuple[Fraction, Fraction]:
    """Bounds on the exponents a_1..a_n of a GL_n Satake parameter from a bound delta on Ad.

    With a_1 + ... + a_n = 0 and every |a_i - a_j| <= delta, the extremal configuration puts
    k exponents at (n-k) delta / n and n-k at -k delta / n.  This gives
    max |a_i| <= (n-1) delta / n and sum |a_i| <= 2 floor(n/2) ceil(n/2) delta / n.
    ``delta`` defaults to the LRS exponent for GL_{n^2 - 1}, where Ad lives.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if delta is None:
        delta = lrs_exponent(n * n - 1)
    delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    single = Fraction(n - 1, n) * delta
    total = Fraction(2 * (n // 2) * ((n + 1) // 2), n) * delta
    return single, total


@dataclass(frozen=True)
class ExponentTriple:
    a: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        vals = tuple(Fraction(x) for x in self.a)
        if sum(vals) != 0:
            raise ValueError("exponents must sum to zero")
        object.__setattr__(self, "a", vals)

    def spread(self) -> Fraction:
        return max(abs(x - y) for x in self.a for y in self.a)

    def max_abs(self) -> Fraction:
        return max(abs(x) for x in self.a)

    def sum_abs(self) -> Fraction:
        return sum(abs(x) for x in self.a)
