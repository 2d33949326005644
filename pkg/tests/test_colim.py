import pytest

from sitecolim import standard
from sitecolim.colim import (build_pseudocolimit, colim_finite_limit,
                             colim_limit_assignment, enumerate_factor_cells,
                             factor_cell, factor_cone, verify_bicolimit,
                             verify_cone_exactness)
from sitecolim.cones import enumerate_modifications, enumerate_pseudocones
from sitecolim.core import (Budget, equivalence_witness, validate_category,
                            validate_functor)
from sitecolim.errors import BudgetExceeded, NotFiltered
from sitecolim.limits import (discrete_pair, empty_diagram, is_limiting_cone,
                              parallel_pair, validate_assignment)
from sitecolim.twocat import constant_diagram


def test_consttwo_colim_shape(consttwo_colim):
    L = consttwo_colim.category
    assert validate_category(L) == []
    assert len(L.objects) == 6
    assert len(L.morphisms()) == 27
    # every hom-set collapses to at most one class here
    assert len(L.hom("0.0", "2.1")) == 1


def test_consttwo_colim_cone_is_pseudocone(consttwo_colim):
    from sitecolim.cones import check_pseudocone
    ok, why = check_pseudocone(consttwo_colim.cone)
    assert ok, why
    for A, leg in consttwo_colim.cone.legs.items():
        assert validate_functor(leg) == []


def test_consttwo_colim_equivalent_to_two(consttwo_colim, two_cat):
    res = equivalence_witness(consttwo_colim.category, two_cat)
    assert res.witness is not None


def test_not_filtered_raises():
    dia = constant_diagram(standard.discrete_pair_twocat(), standard.one())
    with pytest.raises(NotFiltered):
        build_pseudocolimit(dia)


def test_budget_exhausted(diamondchain):
    with pytest.raises(BudgetExceeded):
        build_pseudocolimit(diamondchain, Budget(50))


def test_seed_does_not_change_result(consttwo):
    base = build_pseudocolimit(consttwo)
    for seed in (0, 1, 17):
        other = build_pseudocolimit(consttwo, apex_seed=seed)
        assert other.category.objects == base.category.objects
        assert other.category.comp == base.category.comp


def test_walking_iso_colim(two_cat):
    # the invertible 2-cell merges the two parallel transitions
    R = build_pseudocolimit(standard.walking_iso_diagram())
    assert validate_category(R.category) == []
    res = equivalence_witness(R.category, two_cat)
    assert res.witness is not None


def test_verify_bicolimit_consttwo_two(consttwo_colim, two_cat):
    rep = verify_bicolimit(consttwo_colim, two_cat)
    assert rep.functor_objects == rep.cone_objects == 3
    assert rep.functor_morphisms == rep.cone_morphisms == 6
    assert rep.isomorphism


def test_factor_cone_strict_triangle(consttwo_colim, two_cat):
    from sitecolim.cones import postcompose_cone
    for h in enumerate_pseudocones(consttwo_colim.diagram, two_cat):
        ell = factor_cone(consttwo_colim, h)
        assert validate_functor(ell) == []
        back = postcompose_cone(consttwo_colim.cone, ell)
        assert back.key() == h.key()


def test_factor_cell_unique(consttwo_colim, two_cat):
    cones = enumerate_pseudocones(consttwo_colim.diagram, two_cat)
    for g in cones:
        for h in cones:
            ell_g = factor_cone(consttwo_colim, g)
            ell_h = factor_cone(consttwo_colim, h)
            for phi in enumerate_modifications(g, h):
                xi = factor_cell(consttwo_colim, ell_h, phi)
                sols = enumerate_factor_cells(consttwo_colim, ell_g,
                                              ell_h, phi)
                assert len(sols) == 1
                assert sols[0].components == xi.components


def test_inclchain_colim_equivalent_to_two(two_cat):
    R = build_pseudocolimit(standard.inclusion_chain_diagram())
    res = equivalence_witness(R.category, two_cat)
    assert res.witness is not None


def test_swapchain_colim_equivalent_to_diamond(diamond):
    R = build_pseudocolimit(standard.swap_chain_diagram())
    assert len(R.category.objects) == 12
    res = equivalence_witness(R.category, diamond)
    assert res.witness is not None


# -- finite limits in the colimit -------------------------------------------


@pytest.fixture(scope="module")
def diamond_fiber_limits(diamond_limits):
    return {A: diamond_limits for A in "012"}


def test_colim_terminal(diamondchain_colim, diamond_fiber_limits):
    cone = colim_finite_limit(diamondchain_colim, empty_diagram(),
                              diamond_fiber_limits)
    assert cone.apex == "0.top"
    assert is_limiting_cone(diamondchain_colim.category, empty_diagram(), cone)


def test_colim_cross_fiber_product(diamondchain_colim, diamond_fiber_limits):
    L = diamondchain_colim.category
    dia = discrete_pair("0.a", "2.b")
    cone = colim_finite_limit(diamondchain_colim, dia, diamond_fiber_limits,
                              verify=True)
    _, x = diamondchain_colim.obj_info[cone.apex]
    assert x == "bot"


def test_colim_equalizer(diamondchain_colim, diamond_fiber_limits):
    L = diamondchain_colim.category
    pairs = [(f, g) for f in L.morphisms()
             for g in L.hom(L.mor_src[f], L.mor_tgt[f]) if f != g]
    # identity transitions on a poset: all parallel pairs are equal classes
    assert pairs == []


def test_colim_limit_assignment_valid(diamondchain_colim,
                                      diamond_fiber_limits):
    A = colim_limit_assignment(diamondchain_colim, diamond_fiber_limits)
    assert A.is_complete()
    assert validate_assignment(A) == []


def test_cone_legs_exact(diamondchain_colim, diamond_fiber_limits):
    out = verify_cone_exactness(diamondchain_colim, diamond_fiber_limits)
    assert all(ok for ok, _ in out.values())


def test_cone_exactness_negative(diamondchain_colim, diamond,
                                 diamond_limits):
    from sitecolim.limits import LimitAssignment
    corrupted = LimitAssignment(diamond, diamond_limits.terminal,
                                dict(diamond_limits.tmap),
                                dict(diamond_limits.products),
                                dict(diamond_limits.equalizers))
    corrupted.products[("a", "b")] = ("top", "id_top", "id_top")
    out = verify_cone_exactness(diamondchain_colim,
                                {A: corrupted for A in "012"})
    assert not all(ok for ok, _ in out.values())
