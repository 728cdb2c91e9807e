import itertools

import pytest

from triality.rootsys import (
    G2_CARTAN,
    TRIALITY_PERMUTATION,
    MalformedDatumError,
    build_a2,
    build_d4,
    build_g2,
    fold_g2,
    theta_stable_levis,
    triality_lattice,
    weyl_group,
)


def test_d4_datum():
    d4 = build_d4()
    assert list(d4.cartan_matrix[0]) == [2, -1, -1, -1]
    assert all(d4.cartan_matrix[i][i] == 2 for i in range(4))
    assert all(d4.cartan_matrix[i][j] <= 0 for i in range(4) for j in range(4) if i != j)
    assert len(d4.all_roots) == 24
    assert len(d4.positive_roots) == 12


@pytest.mark.parametrize("build,count", [(build_d4, 24), (build_a2, 6), (build_g2, 12)])
def test_root_counts(build, count):
    assert len(build().all_roots) == count


@pytest.mark.parametrize("build", [build_d4, build_a2, build_g2])
def test_fundamental_coweights_dual_to_simple_roots(build):
    d = build()
    for i, j in itertools.product(range(d.rank), repeat=2):
        assert d.coweight_pairing(d.simple_roots[i], j) == int(i == j)


@pytest.mark.parametrize("build,order", [(build_d4, 192), (build_a2, 6), (build_g2, 12)])
def test_weyl_group_orders(build, order):
    d = build()
    w = weyl_group(d)
    assert len(w) == order
    roots = set(d.all_roots)
    for g in w:
        assert {g(r) for r in roots} == roots
        assert g.determinant() in (1, -1)


def test_weyl_closure_cap():
    with pytest.raises(MalformedDatumError):
        weyl_group(build_d4(), cap=100)


def test_triality_lattice():
    th = triality_lattice()
    assert th.order == 3
    assert th((0, 1, 0, 0)) == (0, 0, 1, 0)
    assert th((0, 0, 0, 1)) == (0, 1, 0, 0)
    assert th((1, 0, 0, 0)) == (1, 0, 0, 0)
    d4 = build_d4()
    assert {th(r) for r in d4.all_roots} == set(d4.all_roots)


def test_triality_normalizes_weyl_group():
    d4 = build_d4()
    th = triality_lattice()
    w = weyl_group(d4)
    conj = {(th @ g @ th @ th).matrix for g in w}
    assert conj == {g.matrix for g in w}


def test_fold_g2():
    f = fold_g2()
    assert len(f.roots) == 12
    assert len(f.long_roots()) == 6 and len(f.short_roots()) == 6
    assert set(f.fibers[(1, 0)]) == {(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}
    assert f.fibers[(0, 1)] == ((1, 0, 0, 0),)
    assert sum(f.multiplicity.values()) == 24
    assert f.cartan_matrix() == G2_CARTAN


def test_theta_stable_levis():
    levis = theta_stable_levis()
    assert [sorted(lv.simple_subset) for lv in levis] == [[], [0], [1, 2, 3], [0, 1, 2, 3]]
    descriptions = [lv.description for lv in levis]
    assert descriptions[0] == "T·θ maximal torus"
    assert descriptions[1] == "L_0 ≅ (GL2 × Gm³)/Gm"
    assert descriptions[2] == "L ≅ (GL2³ × Gm)/j(Gm³)"
    for lv in levis:
        assert {TRIALITY_PERMUTATION[i] for i in lv.simple_subset} == set(lv.simple_subset)
