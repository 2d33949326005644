from sitecolim import standard
from sitecolim.twocat import (check_2filtered, check_two_functor,
                              classical_filtered, constant_diagram,
                              opposite_two_cat, two_cat_from_cat,
                              validate_two_cat)


def test_chain3_valid():
    assert validate_two_cat(standard.chain3_twocat()) == []


def test_walking_iso_valid():
    assert validate_two_cat(standard.walking_iso_twocat()) == []


def test_corrupted_vcomp_detected():
    A = standard.walking_iso_twocat()
    A.vcomp[("ginv", "g")] = "2id_v"  # should be 2id_u
    out = validate_two_cat(A)
    assert out


def test_opposite_involutive():
    A = standard.chain3_twocat()
    B = opposite_two_cat(opposite_two_cat(A))
    assert B.cells1.comp == A.cells1.comp
    assert B.hcomp == A.hcomp


def test_opposite_valid():
    assert validate_two_cat(opposite_two_cat(standard.walking_iso_twocat())) == []


def test_two_cat_from_cat_valid(diamond):
    assert validate_two_cat(two_cat_from_cat(diamond)) == []


def test_standard_diagrams_are_strict_2functors(consttwo):
    for dia in (consttwo, standard.inclusion_chain_diagram(),
                standard.swap_chain_diagram(),
                standard.diamond_chain_diagram(),
                standard.walking_iso_diagram()):
        ok, why = check_two_functor(dia)
        assert ok, (dia.name, why)


def test_broken_diagram_detected(consttwo, two_cat):
    dia = constant_diagram(standard.chain3_twocat(), two_cat, "broken")
    from sitecolim.core import Functor
    dia.on1["0_1"] = Functor("flip", two_cat, two_cat,
                             {"0": "1", "1": "1"},
                             {"id_0": "id_1", "id_1": "id_1", "a": "id_1"})
    ok, why = check_two_functor(dia)
    assert not ok


def test_chain3_is_2filtered():
    ok, _ = check_2filtered(standard.chain3_twocat())
    assert ok


def test_walking_iso_is_2filtered():
    ok, _ = check_2filtered(standard.walking_iso_twocat())
    assert ok


def test_discrete_pair_fails_f1():
    ok, datum = check_2filtered(standard.discrete_pair_twocat())
    assert not ok
    assert datum[0] == "F1"


def test_parallel_pair_fails_f2():
    A = two_cat_from_cat(standard.parallel_pair_cat())
    ok, datum = check_2filtered(A)
    assert not ok
    assert datum[0] == "F2"


def test_classical_filtered_agrees():
    assert classical_filtered(standard.chain_cat(3))
    assert not classical_filtered(standard.parallel_pair_cat())
    # for 1-categories with identity 2-cells, both notions agree
    for C in (standard.one(), standard.chain_cat(2), standard.chaotic_pair()):
        ok, _ = check_2filtered(two_cat_from_cat(C))
        assert ok == classical_filtered(C)
