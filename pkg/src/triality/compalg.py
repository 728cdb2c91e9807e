"""Symmetric composition algebras: split and para-octonions in the Zorn model, and the
trace-zero 3x3 matrices with the omega-twisted product.

All scalars are :class:`CycNum`; random samples live in Q(zeta_36) with small
rational coordinates.  The identities checked are polynomial of degree at most 4
in the coordinates, so a single nonzero evaluation of the difference is enough to
refute one, and random exact evaluations over characteristic 0 carry weight in
the Schwartz-Zippel sense.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import linalg
from .cyclotomic import DEFAULT_CONDUCTOR, CycNum, root_of_unity

OMEGA = root_of_unity(3, 1)
ZERO = CycNum(0)
ONE = CycNum(1)
# root of 3 mu^2 - 3 mu + 1, so that mu and 1 - mu are the two twisted weights;
# the pair (omega, 1 - omega) admits no multiplicative multiple of S
MU = (1 - OMEGA) / 3


def _dot(v, w):
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2]


def _cross(v, w):
    return (
        v[1] * w[2] - v[2] * w[1],
        v[2] * w[0] - v[0] * w[2],
        v[0] * w[1] - v[1] * w[0],
    )


def _vadd(*vs):
    return tuple(sum((v[i] for v in vs), ZERO) for i in range(3))


def _vscale(c, v):
    return tuple(c * x for x in v)


@dataclass(frozen=True)
class Octonion:
    """Zorn vector matrix [[a, v], [w, d]] with a, d scalars and v, w in k^3."""

    a: CycNum
    v: tuple
    w: tuple
    d: CycNum

    @classmethod
    def scalar(cls, c) -> "Octonion":
        c = CycNum(c) if not isinstance(c, CycNum) else c
        return cls(c, (ZERO,) * 3, (ZERO,) * 3, c)

    def __add__(self, o: "Octonion") -> "Octonion":
        return Octonion(self.a + o.a, _vadd(self.v, o.v), _vadd(self.w, o.w), self.d + o.d)

    def __sub__(self, o: "Octonion") -> "Octonion":
        return self + o.scale(-1)

    def scale(self, c) -> "Octonion":
        return Octonion(c * self.a, _vscale(c, self.v), _vscale(c, self.w), c * self.d)

    def conj(self) -> "Octonion":
        return Octonion(self.d, _vscale(-1, self.v), _vscale(-1, self.w), self.a)

    def norm(self) -> CycNum:
        return self.a * self.d - _dot(self.v, self.w)

    def trace(self) -> CycNum:
        return self.a + self.d

    def coords(self) -> tuple:
        return (self.a, *self.v, *self.w, self.d)

    def __eq__(self, o) -> bool:
        return isinstance(o, Octonion) and all(x == y for x, y in zip(self.coords(), o.coords()))

    def __hash__(self) -> int:
        return hash(self.coords())


def octonion_mul(x: Octonion, y: Octonion) -> Octonion:
    """Zorn's vector-matrix product."""
    return Octonion(
        x.a * y.a + _dot(x.v, y.w),
        _vadd(_vscale(x.a, y.v), _vscale(y.d, x.v), _vscale(-1, _cross(x.w, y.w))),
        _vadd(_vscale(y.a, x.w), _vscale(x.d, y.w), _cross(x.v, y.v)),
        _dot(x.w, y.v) + x.d * y.d,
    )


def para_mul(x: Octonion, y: Octonion) -> Octonion:
    return octonion_mul(x.conj(), y.conj())


OCTONION_ONE = Octonion.scalar(1)


@dataclass(frozen=True)
class TraceZeroMatrix:
    entries: tuple[tuple[CycNum, ...], ...]

    def __post_init__(self):
        if sum((self.entries[i][i] for i in range(3)), ZERO) != 0:
            raise ValueError("matrix is not trace zero")

    @property
    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __add__(self, o: "TraceZeroMatrix") -> "TraceZeroMatrix":
        return TraceZeroMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, o.entries)))

    def scale(self, c) -> "TraceZeroMatrix":
        return TraceZeroMatrix(tuple(tuple(c * a for a in r) for r in self.entries))

    def __eq__(self, o) -> bool:
        return isinstance(o, TraceZeroMatrix) and all(
            a == b for r, s in zip(self.entries, o.entries) for a, b in zip(r, s)
        )

    def __hash__(self) -> int:
        return hash(self.entries)


def _as_tzm(m) -> TraceZeroMatrix:
    return TraceZeroMatrix(tuple(tuple(x if isinstance(x, CycNum) else CycNum(x) for x in r) for r in m))


def star_mul(x: TraceZeroMatrix, y: TraceZeroMatrix, mu: CycNum = MU) -> TraceZeroMatrix:
    """x * y = mu xy + (1 - mu) yx - (1/3) tr(yx) Id."""
    xy = linalg.matmul(x.rows, y.rows)
    yx = linalg.matmul(y.rows, x.rows)
    tr = linalg.trace(yx) * Fraction(1, 3)
    one_minus = 1 - mu
    out = [[mu * xy[i][j] + one_minus * yx[i][j] - (tr if i == j else 0) for j in range(3)] for i in range(3)]
    return _as_tzm(out)


def literal_star_mul(x: TraceZeroMatrix, y: TraceZeroMatrix) -> TraceZeroMatrix:
    """The weights (omega, 1 - omega) with omega a primitive cube root of unity."""
    return star_mul(x, y, OMEGA)


def char_poly(x) -> tuple:
    """Coefficients (c0, c1, c2) of det(t - x) = t^3 + c2 t^2 + c1 t + c0."""
    m = x.rows if isinstance(x, TraceZeroMatrix) else x
    tr = linalg.trace(m)
    tr2 = linalg.trace(linalg.matmul(m, m))
    e2 = (tr * tr - tr2) * Fraction(1, 2)
    det = linalg.determinant(m)
    return (-det, e2, -tr)


def s_form(x: TraceZeroMatrix) -> CycNum:
    """S(x) in P_x(t) = t^3 + S(x) t - det(x): the sum of principal 2x2 minors."""
    m = x.entries
    total = ZERO
    for i in range(3):
        for j in range(i + 1, 3):
            total = total + m[i][i] * m[j][j] - m[i][j] * m[j][i]
    return total


def _as_cyc(c) -> CycNum:
    return c if isinstance(c, CycNum) else CycNum(c)


# S(x * y) = -(1/3) S(x) S(y) for the mu-product, so -(1/3) S composes and +(1/3) S does not
Q_SCALE = Fraction(-1, 3)


def q_form(x: TraceZeroMatrix, scale: Fraction = Q_SCALE) -> CycNum:
    return s_form(x) * scale


def polarize(form: Callable, x, y) -> CycNum:
    return form(x + y) - form(x) - form(y)


# --- random exact samples ---------------------------------------------------


def random_scalar(rng: random.Random, n: int = DEFAULT_CONDUCTOR, terms: int = 2, bound: int = 3) -> CycNum:
    total = CycNum(0)
    for _ in range(terms):
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if c:
            total = total + root_of_unity(n, rng.randrange(n)) * c
    return total


def random_octonion(rng: random.Random) -> Octonion:
    s = [random_scalar(rng) for _ in range(8)]
    return Octonion(s[0], tuple(s[1:4]), tuple(s[4:7]), s[7])


def random_tzm(rng: random.Random) -> TraceZeroMatrix:
    m = [[random_scalar(rng) for _ in range(3)] for _ in range(3)]
    m[2][2] = -(m[0][0] + m[1][1])
    return _as_tzm(m)


def random_invertible(rng: random.Random) -> list[list]:
    while True:
        g = [[CycNum(Fraction(rng.randint(-3, 3))) + random_scalar(rng, terms=1) for _ in range(3)] for _ in range(3)]
        if linalg.determinant(g):
            return g


def conjugate_tzm(g, x: TraceZeroMatrix) -> TraceZeroMatrix:
    return _as_tzm(linalg.matmul(linalg.matmul(g, x.rows), linalg.inverse(g)))


# --- law checks -------------------------------------------------------------


@dataclass
class LawReport:
    law: str
    samples: int
    failures: int
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "samples": self.samples,
            "failures": self.failures,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
        }


def _run(law: str, samples: int, seed: int, draw, check) -> LawReport:
    rng = random.Random(seed)
    failures = 0
    witness = None
    for _ in range(samples):
        args = draw(rng)
        if not check(*args):
            failures += 1
            if witness is None:
                witness = args
    return LawReport(law, samples, failures, witness)


def _oct_pair(rng):
    return random_octonion(rng), random_octonion(rng)


def _oct_triple(rng):
    return random_octonion(rng), random_octonion(rng), random_octonion(rng)


def _tzm_pair(rng):
    return random_tzm(rng), random_tzm(rng)


def _tzm_triple(rng):
    return random_tzm(rng), random_tzm(rng), random_tzm(rng)


def norm_multiplicative(samples: int = 1000, seed: int = 0) -> LawReport:
    return _run("N(x.y) = N(x)N(y)", samples, seed, _oct_pair,
                lambda x, y: octonion_mul(x, y).norm() == x.norm() * y.norm())


def para_multiplicative(samples: int = 1000, seed: int = 0) -> LawReport:
    return _run("N(x*y) = N(x)N(y) (para)", samples, seed, _oct_pair,
                lambda x, y: para_mul(x, y).norm() == x.norm() * y.norm())


def q_multiplicative(samples: int = 1000, seed: int = 0, scale: Fraction = Q_SCALE) -> LawReport:
    return _run(f"Q(x*y) = Q(x)Q(y), Q = {scale}*S", samples, seed, _tzm_pair,
                lambda x, y: q_form(star_mul(x, y), scale) == q_form(x, scale) * q_form(y, scale))


def _symmetric(mul, form):
    def check(x, y, z):
        return polarize(form, mul(x, y), z) == polarize(form, x, mul(y, z))

    return check


def symmetric_law_check(algebra: str, samples: int = 500, seed: int = 0) -> LawReport:
    """B(x*y, z) = B(x, y*z) for the polarized composition form.

    ``algebra`` is ``"para"``, ``"matrix"`` or ``"octonion"`` (the ordinary product,
    which is not symmetric and serves as a control).
    """
    if algebra == "para":
        return _run("B(x*y,z) = B(x,y*z) (para-octonions)", samples, seed, _oct_triple,
                    _symmetric(para_mul, Octonion.norm))
    if algebra == "matrix":
        return _run("B(x*y,z) = B(x,y*z) (trace-zero matrices)", samples, seed, _tzm_triple,
                    _symmetric(star_mul, q_form))
    if algebra == "octonion":
        return _run("B(xy,z) = B(x,yz) (ordinary octonions)", samples, seed, _oct_triple,
                    _symmetric(octonion_mul, Octonion.norm))
    raise ValueError(f"unknown algebra {algebra!r}")


def conjugation_equivariance(samples: int = 50, seed: int = 0) -> LawReport:
    def draw(rng):
        return random_invertible(rng), random_tzm(rng), random_tzm(rng)

    def check(g, x, y):
        lhs = conjugate_tzm(g, star_mul(x, y))
        rhs = star_mul(conjugate_tzm(g, x), conjugate_tzm(g, y))
        return lhs == rhs and q_form(conjugate_tzm(g, x)) == q_form(x)

    return _run("g(x*y)g^-1 = (gxg^-1)*(gyg^-1)", samples, seed, draw, check)


def compalg_reports(samples: int = 1000, seed: int = 0) -> list[LawReport]:
    return [
        norm_multiplicative(samples, seed),
        para_multiplicative(samples, seed + 1),
        q_multiplicative(samples, seed + 2),
        symmetric_law_check("para", samples, seed + 3),
        symmetric_law_check("matrix", samples, seed + 4),
    ]
