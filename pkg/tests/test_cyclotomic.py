from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from triality.cyclotomic import CycNum, root_of_unity, sqrt_rational

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
conductors = st.sampled_from([1, 3, 4, 6, 12, 36])


@st.composite
def cyc(draw):
    n = draw(conductors)
    terms = draw(st.lists(st.tuples(st.integers(0, n - 1), small), max_size=3))
    x = CycNum(0)
    for k, c in terms:
        x = x + c * root_of_unity(n, k)
    return x


@given(cyc(), cyc(), cyc())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(cyc())
def test_inverse(a):
    if a:
        assert a * a.inverse() == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(cyc(), cyc())
def test_hash_respects_equality_across_conductors(a, b):
    s = a + b
    assert hash(s) == hash(s.promote(72))
    assert s == s.promote(72)


@pytest.mark.parametrize("n", [3, 4, 8, 12, 36])
def test_roots_of_unity(n):
    z = root_of_unity(n, 1)
    assert z ** n == 1
    assert all(z ** k != 1 for k in range(1, n))
    assert sum((z ** k for k in range(n)), CycNum(0)) == 0


def test_mixed_conductors_promote():
    w = root_of_unity(3, 1)
    i = root_of_unity(4, 1)
    assert (w * i).n == 12
    assert (w * i) ** 12 == 1
    assert root_of_unity(12, 4) == w


def test_conjugate_and_sqrt():
    w = root_of_unity(3, 1)
    assert w.conjugate() == w * w
    assert (w + w.conjugate()) == -1
    r = sqrt_rational(Fraction(3))
    assert r * r == 3
    assert sqrt_rational(Fraction(-4)) ** 2 == -4


@pytest.mark.parametrize("text", ["z3", "z3^2", "-1", "2/3", "z12^5", "-z4", "2*z3", "z3^-1"])
def test_parse_print_roundtrip(text):
    x = CycNum.parse(text)
    assert CycNum.parse(str(x)) == x


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        CycNum.parse("zz")
