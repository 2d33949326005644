import pytest

from sitecolim.core import Functor, validate_category
from sitecolim.errors import FixtureError
from sitecolim.fixtures import (CategoryBlock, DiagramBlock, parse,
                                print_category, print_environment,
                                print_functor, render)
from sitecolim.sites import Presheaf
from sitecolim.twocat import TwoCat, check_two_functor

ALL_FIXTURES = ["one.cat", "two.cat", "chaotic.cat", "diamond.cat",
                "chain3.2cat", "consttwo.diag", "inclchain.diag",
                "swapchain.diag", "notfiltered.diag", "covereddiamond.diag",
                "sheaves.pre", "nonsheaf.pre"]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_corpus_parses(fixture_dir, name):
    env = parse((fixture_dir / name).read_text())
    assert env
    for v in env.values():
        if isinstance(v, CategoryBlock):
            assert validate_category(v.cat) == []
        elif isinstance(v, DiagramBlock):
            ok, why = check_two_functor(v.diagram)
            assert ok, why


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_round_trip_is_canonical(fixture_dir, name):
    text = (fixture_dir / name).read_text()
    printed = print_environment(parse(text))
    assert print_environment(parse(printed)) == printed


def test_generated_corpus_is_canonical(fixture_dir):
    """Printable blocks of the shipped files are already in canonical form."""
    for name in ("one.cat", "two.cat", "chaotic.cat", "diamond.cat",
                 "chain3.2cat"):
        text = (fixture_dir / name).read_text()
        assert print_environment(parse(text)) == text


def test_missing_header():
    with pytest.raises(FixtureError, match="header"):
        parse("[category c]\nobject x\n")


def test_error_carries_line_number():
    text = "%fixture 1\n[category c]\nobject x\nmor broken line\n"
    with pytest.raises(FixtureError, match="line 4"):
        parse(text)


def test_unknown_reference():
    text = ("%fixture 1\n[functor F]\nsource nowhere\n")
    with pytest.raises(FixtureError, match="unknown name"):
        parse(text)


def test_content_before_block():
    with pytest.raises(FixtureError, match="before first block"):
        parse("%fixture 1\nobject x\n")


def test_comments_and_blank_lines():
    text = ("%fixture 1\n\n# a comment\n[category c]\n"
            "object x  # trailing comment\nmor id_x : x -> x\n"
            "id x = id_x\ncomp id_x . id_x = id_x\n")
    env = parse(text)
    assert validate_category(env["c"].cat) == []


def test_environment_chaining(fixture_dir):
    env = parse((fixture_dir / "two.cat").read_text())
    text = ("%fixture 1\n[functor e]\nsource two\ntarget two\n"
            "obj 0 -> 0\nobj 1 -> 1\nmor a -> a\n"
            "mor id_0 -> id_0\nmor id_1 -> id_1\n")
    env2 = parse(text, env)
    assert isinstance(env2["e"], Functor)
    assert "two" in env  # original env not mutated beyond copying
    assert "e" not in env


def test_diagram_identity_transitions_filled(fixture_dir):
    env = parse((fixture_dir / "consttwo.diag").read_text())
    dia = env["consttwo"].diagram
    assert dia.on1["id_0"].obj_map == {"0": "0", "1": "1"}
    ok, why = check_two_functor(dia)
    assert ok, why


def test_presheaf_block(fixture_dir):
    env = parse((fixture_dir / "sheaves.pre").read_text())
    P = env["pt"]
    assert isinstance(P, Presheaf)
    from sitecolim.sites import validate_presheaf
    assert validate_presheaf(P) == []


def test_op_orientation_flips_index(fixture_dir):
    base = (fixture_dir / "consttwo.diag").read_text()
    flipped = base.replace("orientation covariant", "orientation op")
    env = parse(flipped)
    dia = env["consttwo"].diagram
    assert not dia.covariant
    # the stored index is flipped: 0_1 now runs 1 -> 0
    assert dia.index.cells1.mor_src["0_1"] == "1"
