from collections import Counter

import pytest

import triality.heisweil as hw
from triality.cyclotomic import CycNum, root_of_unity
from triality.heisweil import (
    EXPECTED_ORDERS,
    EXPECTED_SHAPES,
    DecompositionShapeError,
    FiniteGroup,
    GroupAxiomError,
    ad_constituents,
    ad_decomposition,
    build_chain,
    char_table,
    check_orthogonality,
    decompose,
    dixon_prime,
    inner_product,
    level_group,
    line_orbits,
    lines,
    nonzero_vector_orbits,
    restrict_class_function,
    sl2,
    sl2_facts,
    weil_character,
    weil_rep,
)

CHAIN = ("h", "mu2", "c4", "q8")


def test_chain_orders_and_inclusions():
    chain = build_chain()
    assert [g.order for g in chain] == [27, 54, 108, 216, 648]
    for small, big in zip(chain, chain[1:]):
        assert big.contains(small)
    assert level_group("j").is_normal(level_group("h"))


def test_sl2_facts():
    facts = sl2_facts()
    assert facts == {"order": 24, "q8_order": 8, "q8_normal": True, "q8_unique_sylow": True}


def test_non_closed_set_is_rejected():
    elems = [e for e in hw.level_elements("h") if e[2] == 0]
    with pytest.raises(GroupAxiomError):
        FiniteGroup("broken", elems)


def test_sl2_character_table():
    g = FiniteGroup("SL2(F3)", [(0, 0, 0, *m) for m in sl2()])
    table = char_table(g)
    assert sorted(c.degree for c in table) == [1, 1, 1, 2, 2, 2, 3]
    assert check_orthogonality(table)


def test_heisenberg_character_table():
    table = char_table("h")
    assert Counter(c.degree for c in table) == Counter({1: 9, 3: 2})


@pytest.mark.parametrize("level", ["h", "mu2", "c4", "q8", "j"])
def test_character_tables(level):
    g = level_group(level)
    table = char_table(level)
    assert len(table) == len(g.classes)
    assert sum(c.degree ** 2 for c in table) == EXPECTED_ORDERS[level]
    assert check_orthogonality(table)
    # column orthogonality at the identity column against every other class
    for k in range(1, len(g.classes)):
        assert sum((c.values[0] * c.values[k].conjugate() for c in table), CycNum(0)) == 0


def test_dixon_prime():
    for order, exponent in [(27, 3), (648, 36), (216, 12)]:
        p = dixon_prime(order, exponent)
        assert p % exponent == 1
        assert p * p > 4 * order


def test_weil_rep_on_heisenberg():
    rep = weil_rep()
    g = level_group("h")
    chi = rep.character(g)
    assert inner_product(chi, chi) == 1
    z = root_of_unity(3, 1)
    for e in g.elements:
        w1, w2, c = e[:3]
        val = rep.trace(e)
        if (w1, w2) == (0, 0):
            assert val == 3 * z ** c
            assert rep.matrix(e) == [[z ** c if i == j else CycNum(0) for j in range(3)] for i in range(3)]
        else:
            assert val == 0
        assert val == chi(g.index[e])


def test_weil_character_is_a_class_function_on_q8_level():
    rep = weil_rep()
    g = level_group("q8")
    chi = rep.character(g)
    for members in g.classes[:6]:
        values = {rep.trace(g.elements[i]) for i in members}
        assert len(values) == 1
    assert inner_product(chi, chi) == 1


@pytest.mark.parametrize("line", [(0, 1), (1, 1), (1, 2)])
def test_weil_character_independent_of_line(line):
    assert weil_character("h", line=line).values == weil_character("h").values


def test_weil_rep_needs_nontrivial_central_character():
    with pytest.raises(ValueError):
        weil_rep(chi_exponent=3)


def test_line_orbits():
    assert len(lines()) == 4
    assert [len(o) for o in line_orbits("mu2")] == [1, 1, 1, 1]
    assert [len(o) for o in line_orbits("c4")] == [2, 2]
    assert [len(o) for o in line_orbits("q8")] == [4]


@pytest.mark.parametrize("level", CHAIN)
def test_shapes(level):
    assert ad_decomposition(level).dims == EXPECTED_SHAPES[level]


@pytest.mark.parametrize("level", CHAIN)
def test_shape_for_conjugate_central_character(level):
    assert ad_decomposition(level, chi_exponent=2).dims == EXPECTED_SHAPES[level]


@pytest.mark.parametrize("level", CHAIN)
def test_shape_matches_orbits_on_characters_of_w(level):
    # nontrivial characters of W correspond to nonzero vectors through the symplectic form
    orbit_sizes = sorted((len(o) for o in nonzero_vector_orbits(level)), reverse=True)
    assert list(ad_decomposition(level).dims) == orbit_sizes


@pytest.mark.parametrize("small,big", list(zip(CHAIN, CHAIN[1:])))
def test_shapes_refine_down_the_chain(small, big):
    sub = level_group(small)
    table = char_table(small)
    total = Counter()
    for chi, m in ad_constituents(big):
        pieces = decompose(restrict_class_function(chi, sub), table)
        assert sum(c.degree * k for c, k in pieces) == chi.degree
        for c, k in pieces:
            total[c.values] += k * m
    expected = Counter({c.values: m for c, m in ad_constituents(small)})
    assert total == expected


def test_unexpected_shape_is_reported(monkeypatch):
    monkeypatch.setitem(hw.EXPECTED_SHAPES, "c4", (8,))
    with pytest.raises(DecompositionShapeError, match="4\\+4"):
        ad_decomposition("c4")
