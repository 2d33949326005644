import pytest
from click.testing import CliRunner

from sitecolim.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, fixture_dir, *args, **kw):
    return runner.invoke(main, ["--fixture-dir", str(fixture_dir)]
                         + list(args), **kw)


def report(runner, fixture_dir, tmp_path, *args):
    out = tmp_path / "report.txt"
    res = runner.invoke(main, ["--fixture-dir", str(fixture_dir),
                               "--report", str(out)] + list(args))
    return res, out.read_text() if out.exists() else None


def test_validate_one_exits_zero(runner, fixture_dir):
    res = run(runner, fixture_dir, "validate", "one.cat")
    assert res.exit_code == 0
    assert "outcome pass" in res.output


def test_validate_all_corpus(runner, fixture_dir):
    for f in ("one.cat", "two.cat", "chaotic.cat", "diamond.cat",
              "chain3.2cat", "consttwo.diag", "inclchain.diag",
              "swapchain.diag", "covereddiamond.diag", "sheaves.pre"):
        res = run(runner, fixture_dir, "validate", f)
        assert res.exit_code == 0, (f, res.output)


def test_validate_broken_category_exits_one(runner, fixture_dir, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("%fixture 1\n[category bad]\nobject x\n"
                   "mor id_x : x -> x\nid x = id_x\n")  # missing composite
    res = run(runner, fixture_dir, "validate", str(bad))
    assert res.exit_code == 1
    assert "outcome fail" in res.output


def test_missing_file_exits_two(runner, fixture_dir):
    res = run(runner, fixture_dir, "validate", "nonexistent.cat")
    assert res.exit_code == 2
    assert "outcome error" in res.output


def test_parse_error_reports_line(runner, fixture_dir, tmp_path):
    bad = tmp_path / "bad.cat"
    bad.write_text("%fixture 1\n[category c]\nmor oops\n")
    res = run(runner, fixture_dir, "validate", str(bad))
    assert res.exit_code == 2
    assert "line 3" in res.output


def test_colim_consttwo(runner, fixture_dir):
    res = run(runner, fixture_dir, "colim", "consttwo.diag")
    assert res.exit_code == 0
    assert "objects 6" in res.output
    assert "morphisms 27" in res.output


def test_colim_not_filtered_exits_two(runner, fixture_dir):
    res = run(runner, fixture_dir, "colim", "notfiltered.diag")
    assert res.exit_code == 2
    assert "F1" in res.output


def test_budget_exceeded_exits_three(runner, fixture_dir):
    res = runner.invoke(main, ["--fixture-dir", str(fixture_dir),
                               "--budget", "50", "colim",
                               "covereddiamond.diag"])
    assert res.exit_code == 3
    assert "outcome budget" in res.output


def test_verify_bicolim_consttwo(runner, fixture_dir):
    res = run(runner, fixture_dir, "verify-bicolim", "consttwo.diag",
              "--vertex", "two.cat")
    assert res.exit_code == 0
    assert "functor_objects 3" in res.output
    assert "cone_objects 3" in res.output
    assert "objects_bijective true" in res.output


def test_site_colim(runner, fixture_dir):
    res = run(runner, fixture_dir, "site-colim", "covereddiamond.diag")
    assert res.exit_code == 0
    assert "objects 12" in res.output
    assert "covers 3" in res.output


def test_verify_site(runner, fixture_dir):
    res = run(runner, fixture_dir, "verify-site", "covereddiamond.diag",
              "--vertex", "one.cat")
    assert res.exit_code == 0
    assert "factored_functors_continuous true" in res.output


def test_restrict(runner, fixture_dir):
    res = run(runner, fixture_dir, "restrict", "covereddiamond.diag")
    assert res.exit_code == 0
    assert "rounds 1" in res.output
    assert "objects 0 a b bot top" in res.output


def test_sheaf_check_pass_and_fail(runner, fixture_dir):
    res = run(runner, fixture_dir, "sheaf-check", "sheaves.pre")
    assert res.exit_code == 0
    assert "sheaf pt true" in res.output
    res = run(runner, fixture_dir, "sheaf-check", "nonsheaf.pre")
    assert res.exit_code == 1
    assert "sheaf doubletop false" in res.output


def test_seeded_colim_stable(runner, fixture_dir):
    res = runner.invoke(main, ["--fixture-dir", str(fixture_dir),
                               "--seed", "42", "colim", "swapchain.diag"])
    assert res.exit_code == 0
    assert "seed_stable true" in res.output


def test_report_file_and_determinism(runner, fixture_dir, tmp_path):
    res1, text1 = report(runner, fixture_dir, tmp_path,
                         "colim", "consttwo.diag")
    res2, text2 = report(runner, fixture_dir, tmp_path,
                         "colim", "consttwo.diag")
    assert res1.exit_code == res2.exit_code == 0
    assert text1 == text2
    assert text1.startswith("%report 1\n")
    assert "sha256" in text1


def test_wall_time_not_in_report(runner, fixture_dir, tmp_path):
    _, text = report(runner, fixture_dir, tmp_path, "validate", "one.cat")
    assert "wall-time" not in text
