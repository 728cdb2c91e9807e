import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triality.cyclotomic import CycNum, root_of_unity
from triality.satake import (
    ETA_COCHARACTERS,
    XI_STAR,
    ExponentTriple,
    FiberViolation,
    adjoint_transfer,
    canonical_form,
    eta_map,
    fiber_check,
    fiber_verdict,
    lrs_exponent,
    mu_grid,
    one_minus_theta,
    pgl3_class,
    pgl3_class_equal,
    ramanujan_bounds,
    random_rational_classes,
)

Z3 = root_of_unity(3, 1)
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(bool)
roots = st.integers(0, 11).map(lambda k: root_of_unity(12, k))
entries = st.one_of(nonzero.map(CycNum), roots)
classes = st.tuples(entries, entries, entries).map(lambda e: pgl3_class(*e))


def test_transfer_examples():
    assert adjoint_transfer(pgl3_class(1, 1, 1)).multiset() == Counter({CycNum(1): 8})
    out = adjoint_transfer(pgl3_class(1, Z3, Z3 * Z3)).multiset()
    assert out == Counter({CycNum(1): 2, Z3: 3, Z3 * Z3: 3})


@given(classes, nonzero)
def test_transfer_shape_and_scaling(c, lam):
    out = adjoint_transfer(c)
    ms = out.multiset()
    assert out.size == 8
    assert ms[CycNum(1)] >= 2
    assert Counter(v.inverse() for v in out.eigenvalues) == ms
    assert adjoint_transfer(c.scaled(lam)).multiset() == ms
    assert adjoint_transfer(c.inverse()).multiset() == ms


def test_pgl3_equality_examples():
    assert pgl3_class_equal(pgl3_class(1, 2, 3), pgl3_class(2, 4, 6))
    assert not pgl3_class_equal(pgl3_class(1, 2, 3), pgl3_class(1, 2, 4))
    c = pgl3_class(1, Z3, Z3 * Z3)
    assert pgl3_class_equal(c, c.inverse())


def _brute_equal(c1, c2):
    # candidate scalars from every pairing of entries
    for a, b in itertools.product(c1.eigenvalues, c2.eigenvalues):
        lam = b / a
        if Counter(lam * v for v in c1.eigenvalues) == c2.multiset():
            return True
    return False


@given(classes, classes)
def test_canonical_form_agrees_with_equality(c1, c2):
    assert (canonical_form(c1) == canonical_form(c2)) == pgl3_class_equal(c1, c2) == _brute_equal(c1, c2)


@given(classes, nonzero)
def test_canonical_form_is_scale_invariant(c, lam):
    assert canonical_form(c.scaled(lam)) == canonical_form(c)


@given(classes, classes)
def test_verdict_symmetric_and_reflexive(s, t):
    assert fiber_verdict(s, s) == "equal"
    v1, v2 = fiber_verdict(s, t), fiber_verdict(t, s)
    assert v1 == v2
    assert v1 != "violation"
    assert fiber_verdict(s, s.inverse()) in ("equal", "inverse")


def test_mu8_grid():
    domain = mu_grid(8)
    assert len(domain) == 512
    report = fiber_check(domain)
    assert report.ok
    assert report.collisions > 0 and report.inverse == report.collisions


def test_random_rational_deterministic():
    a = [str(c) for c in random_rational_classes(30, 4)]
    b = [str(c) for c in random_rational_classes(30, 4)]
    assert a == b
    assert fiber_check(random_rational_classes(200, 4)).ok


def test_fiber_check_raises_on_a_forged_verdict(monkeypatch):
    import triality.satake as sat

    monkeypatch.setattr(sat, "fiber_verdict", lambda s, t: "violation")
    with pytest.raises(FiberViolation):
        sat.fiber_check([pgl3_class(1, 2, 3), pgl3_class(1, Fraction(1, 2), Fraction(1, 3))])


def test_eta_examples():
    u, t = CycNum(5), CycNum(Fraction(2, 7))
    assert eta_map(u, 1, 1, 1) == (u, u, (u * u).inverse())
    assert eta_map(1, t, t.inverse(), 1) == (CycNum(1),) * 3


@given(entries, entries, entries, entries)
def test_eta_determinant_and_kernel(u, t1, t2, t3):
    d = eta_map(u, t1, t2, t3)
    assert d[0] * d[1] * d[2] == 1
    # the image of 1 - theta lies in the kernel
    assert eta_map(*one_minus_theta(u, t1, t2, t3)) == (CycNum(1),) * 3


def _exponent_of_two(x):
    f = x.to_fraction()
    e = 0
    while f.numerator % 2 == 0:
        f, e = f / 2, e + 1
    while f.denominator % 2 == 0:
        f, e = f * 2, e - 1
    assert f == 1
    return e


def test_eta_cocharacters_and_xi_are_transposes():
    for j in range(4):
        coords = [1, 1, 1, 1]
        coords[j] = 2
        assert tuple(_exponent_of_two(x) for x in eta_map(*coords)) == ETA_COCHARACTERS[j]
    # <xi^* e_k, w_j^v> is the alpha_j coefficient of xi^* e_k
    for j, k in itertools.product(range(4), range(3)):
        assert XI_STAR[k][j] == ETA_COCHARACTERS[j][k]


def test_ramanujan_bounds():
    assert lrs_exponent(8) == Fraction(63, 130)
    assert ramanujan_bounds(3) == (Fraction(21, 65), Fraction(42, 65))
    assert ramanujan_bounds(3, Fraction(5, 14)) == (Fraction(5, 21), Fraction(10, 21))
    assert ramanujan_bounds(3, 0) == (0, 0)
    with pytest.raises(ValueError):
        ramanujan_bounds(1)


def _grid(den):
    return sorted({Fraction(p, q) for q in range(1, den + 1) for p in range(-q, q + 1)})


def test_single_exponent_bound_on_rational_grid():
    delta = Fraction(1, 2)
    single, total = ramanujan_bounds(3, delta)
    vals = [v for v in _grid(30) if abs(v) <= delta]
    worst_single = worst_sum = Fraction(0)
    for a1 in vals:
        for a2 in vals:
            try:
                e = ExponentTriple((a1, a2, -a1 - a2))
            except ValueError:
                continue
            if e.spread() <= delta:
                assert e.max_abs() <= single
                assert e.sum_abs() <= total
                worst_single = max(worst_single, e.max_abs())
                worst_sum = max(worst_sum, e.sum_abs())
    assert worst_single == single and worst_sum == total


def test_exponent_triple_needs_zero_sum():
    with pytest.raises(ValueError):
        ExponentTriple((1, 0, 0))
