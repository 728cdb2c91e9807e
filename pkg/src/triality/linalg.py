"""Small exact linear algebra over Q or cyclotomic fields.

Matrices are lists of rows with exact entries (:class:`~triality.cyclotomic.CycNum`
included).  Ints are promoted to ``Fraction`` before any division, so nothing
ever becomes a float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), 0) for col in bt])
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * v[k] for k, x in enumerate(row) if x), 0) for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = [[_field(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c] if not isinstance(m[r][c], Fraction) else Fraction(1) / m[r][c]
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Sequence[Sequence]) -> Matrix:
    """Basis of {v : a v = 0}, one vector per free column."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def determinant(a: Sequence[Sequence]):
    m = [[_field(x) for x in row] for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det = det * m[c][c]
        inv = Fraction(1) / m[c][c] if isinstance(m[c][c], Fraction) else 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return det


def trace(a: Sequence[Sequence]):
    return sum((a[i][i] for i in range(len(a))), 0)


class Span:
    """Row space of a set of vectors, with exact membership and coordinates."""

    def __init__(self, vectors: Sequence[Sequence]):
        self.vectors = [list(v) for v in vectors]
        self.dim_ambient = len(self.vectors[0]) if self.vectors else 0
        # augmented rref remembers how each echelon row combines the inputs
        k = len(self.vectors)
        aug = [list(v) + [1 if i == j else 0 for j in range(k)] for i, v in enumerate(self.vectors)]
        red, pivots = rref(aug) if aug else ([], [])
        n = self.dim_ambient
        self._rows = [(p, row[:n], row[n:]) for row, p in zip(red, pivots) if p < n]
        self.dim = len(self._rows)

    def coordinates(self, v: Sequence) -> list | None:
        """Coefficients c with sum c_i vectors[i] == v, or None when v is outside the span."""
        residual = [_field(x) for x in v]
        coeffs = [Fraction(0)] * len(self.vectors)
        for p, row, combo in self._rows:
            c = residual[p]
            if c:
                residual = [x - c * y if y else x for x, y in zip(residual, row)]
                coeffs = [x + c * y if y else x for x, y in zip(coeffs, combo)]
        if any(residual):
            return None
        return coeffs

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None
