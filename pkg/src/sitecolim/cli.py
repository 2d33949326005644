"""Batch front-end: parse fixture files, run constructions and verifiers,
emit deterministic line-oriented reports.

Reports start with `%report 1` and contain `key value` lines in a fixed
order; wall-clock time goes to stderr so reports are byte-stable.  Exit
codes: 0 pass, 1 verified failure or counterexample, 2 input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import hashlib
import sys
import time
from pathlib import Path

import click

from .colim import build_pseudocolimit, verify_bicolimit
from .cones import Pseudocone, check_pseudocone
from .core import (Budget, Functor, NatTrans, validate_category,
                   validate_functor, validate_nat_trans)
from .errors import BudgetExceeded, FixtureError, NotFiltered, SitecolimError
from .fixtures import CategoryBlock, DiagramBlock, Environment, parse
from .limits import validate_assignment
from .restriction import AmbientDiagram, restrict_diagram, verify_restriction
from .sites import (Presheaf, SiteDiagram, build_colim_site, check_sheaf,
                    validate_presheaf, validate_site,
                    verify_site_pseudocolimit)
from .twocat import TwoCat, check_two_functor, validate_two_cat


class Run:
    """Collects report lines and input digests for one invocation."""

    def __init__(self, command, budget, report_path):
        self.lines = [("command", command), ("budget", str(budget.limit))]
        self.budget = budget
        self.report_path = report_path
        self.started = time.monotonic()

    def add(self, key, value):
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.lines.append((key, str(value)))

    def finish(self, outcome, code):
        self.add("outcome", outcome)
        text = "%report 1\n" + "".join("%s %s\n" % kv for kv in self.lines)
        if self.report_path:
            Path(self.report_path).write_text(text)
        else:
            sys.stdout.write(text)
        elapsed = time.monotonic() - self.started
        click.echo("wall-time %.3fs" % elapsed, err=True)
        sys.exit(code)


def _resolve(path, fixture_dir):
    p = Path(path)
    if not p.exists() and fixture_dir:
        q = Path(fixture_dir) / path
        if q.exists():
            return q
    return p


def _load(run: Run, paths, fixture_dir) -> Environment:
    env = Environment()
    for path in paths:
        p = _resolve(path, fixture_dir)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise FixtureError("cannot read %s: %s" % (path, exc))
        run.add("input %s sha256" % p.name, hashlib.sha256(data).hexdigest())
        env = parse(data.decode(), env)
    return env


def _pick(env: Environment, kinds, name, what):
    if name:
        v = env.get(name)
        if not isinstance(v, kinds):
            raise FixtureError("no %s named %s" % (what, name))
        return name, v
    found = [(n, v) for n, v in env.items() if isinstance(v, kinds)]
    if not found:
        raise FixtureError("no %s in the given fixtures" % what)
    return found[-1]


def _category_block_of(env: Environment, cat):
    for v in env.values():
        if isinstance(v, CategoryBlock) and v.cat is cat:
            return v
    raise FixtureError("no category block for %s" % cat.name)


def _site_diagram(env: Environment, block: DiagramBlock) -> SiteDiagram:
    fiber_blocks = getattr(block, "fiber_blocks", None)
    if not fiber_blocks:
        raise FixtureError("diagram has no fiber categories with sites")
    sites = {A: b.site() for A, b in fiber_blocks.items()}
    return SiteDiagram(block.diagram, sites)


def _ambient(block: DiagramBlock) -> AmbientDiagram:
    fiber_blocks = getattr(block, "fiber_blocks", {})
    limits = {}
    for A, b in fiber_blocks.items():
        if b.limits is None:
            raise FixtureError("fiber %s has no limit assignment" % A)
        limits[A] = b.limits
    if not block.generators:
        raise FixtureError("diagram has no generator sets")
    return AmbientDiagram(block.diagram, limits, block.generators)


def _guard(run: Run, fn):
    """Run fn(); map library faults to report outcomes and exit codes."""
    try:
        return fn()
    except FixtureError as exc:
        run.add("error", str(exc))
        run.finish("error", 2)
    except NotFiltered as exc:
        run.add("error", "index is not 2-filtered: %s" % exc)
        run.finish("error", 2)
    except BudgetExceeded as exc:
        run.add("error", str(exc))
        run.finish("budget", 3)
    except SitecolimError as exc:
        run.add("error", str(exc))
        run.finish("error", 2)


@click.group()
@click.option("--budget", default=10 ** 6, show_default=True,
              help="Cap on enumeration candidates per run.")
@click.option("--fixture-dir", default=None, type=click.Path(),
              help="Directory searched for fixture files.")
@click.option("--report", "report_path", default=None, type=click.Path(),
              help="Write the report here instead of stdout.")
@click.option("--seed", default=None, type=int,
              help="Shuffle seed for refinement-order stress checks.")
@click.pass_context
def main(ctx, budget, fixture_dir, report_path, seed):
    """Finite 2-categorical kernel: validate fixtures, build pseudocolimits
    of categories and sites, and verify their universal properties."""
    ctx.obj = {"budget": budget, "fixture_dir": fixture_dir,
               "report": report_path, "seed": seed}


def _start(ctx, command):
    return Run(command, Budget(ctx.obj["budget"]), ctx.obj["report"])


def _block_violations(env, name, v, budget):
    if isinstance(v, CategoryBlock):
        out = list(validate_category(v.cat))
        if v.limits is not None:
            out += validate_assignment(v.limits)
        if (v.covers or v.generators) and v.limits is not None:
            out += validate_site(v.site())
        return out
    if isinstance(v, TwoCat):
        return validate_two_cat(v)
    if isinstance(v, Functor):
        return validate_functor(v)
    if isinstance(v, NatTrans):
        return validate_nat_trans(v)
    if isinstance(v, DiagramBlock):
        ok, why = check_two_functor(v.diagram)
        return [] if ok else [why]
    if isinstance(v, Pseudocone):
        ok, why = check_pseudocone(v)
        return [] if ok else [why]
    if isinstance(v, Presheaf):
        return validate_presheaf(v)
    return []


@main.command()
@click.argument("files", nargs=-1, required=True)
@click.pass_context
def validate(ctx, files):
    """Validate every block in the given fixture files."""
    run = _start(ctx, "validate")

    def go():
        env = _load(run, files, ctx.obj["fixture_dir"])
        total = 0
        for name, v in env.items():
            vio = _block_violations(env, name, v, run.budget)
            run.add("checked %s" % name, type(v).__name__)
            for msg in vio:
                run.add("violation %s" % name, msg)
            total += len(vio)
        run.add("violations", total)
        return total

    total = _guard(run, go)
    run.finish("pass" if total == 0 else "fail", 0 if total == 0 else 1)


@main.command()
@click.argument("files", nargs=-1, required=True)
@click.option("--name", default=None, help="Diagram block to use.")
@click.pass_context
def colim(ctx, files, name):
    """Build the pseudocolimit category of a diagram."""
    run = _start(ctx, "colim")

    def go():
        env = _load(run, files, ctx.obj["fixture_dir"])
        _, block = _pick(env, (DiagramBlock,), name, "diagram")
        R = build_pseudocolimit(block.diagram, run.budget)
        run.add("diagram", block.diagram.name)
        run.add("objects", len(R.category.objects))
        run.add("morphisms", len(R.category.morphisms()))
        for o in R.category.objects:
            run.add("object", o)
        seed = ctx.obj["seed"]
        if seed is not None:
            R2 = build_pseudocolimit(block.diagram, Budget(run.budget.limit),
                                     apex_seed=seed)
            stable = (R2.category.objects == R.category.objects
                      and R2.category.comp == R.category.comp)
            run.add("seed", seed)
            run.add("seed_stable", stable)
            return stable
        return True

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


@main.command("site-colim")
@click.argument("files", nargs=-1, required=True)
@click.option("--name", default=None, help="Diagram block to use.")
@click.pass_context
def site_colim(ctx, files, name):
    """Build the colimit site of a diagram of sites."""
    run = _start(ctx, "site-colim")

    def go():
        env = _load(run, files, ctx.obj["fixture_dir"])
        _, block = _pick(env, (DiagramBlock,), name, "diagram")
        D = _site_diagram(env, block)
        bad = D.validate()
        if bad:
            raise FixtureError("; ".join(bad))
        S, R = build_colim_site(D, run.budget)
        run.add("diagram", block.diagram.name)
        run.add("objects", len(S.cat.objects))
        run.add("morphisms", len(S.cat.morphisms()))
        run.add("covers", sum(len(f) for f in S.basis.values()))
        run.add("generators", " ".join(sorted(S.generators)))
        vio = validate_site(S)
        for msg in vio:
            run.add("violation", msg)
        return not vio

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


@main.command()
@click.argument("files", nargs=-1, required=True)
@click.option("--name", default=None, help="Diagram block to use.")
@click.pass_context
def restrict(ctx, files, name):
    """Close generator sets under finite limits and transitions."""
    run = _start(ctx, "restrict")

    def go():
        env = _load(run, files, ctx.obj["fixture_dir"])
        _, block = _pick(env, (DiagramBlock,), name, "diagram")
        amb = _ambient(block)
        bad = amb.validate()
        if bad:
            raise FixtureError("; ".join(bad))
        r = restrict_diagram(amb)
        run.add("diagram", block.diagram.name)
        run.add("rounds", r.rounds)
        for A in sorted(r.objects):
            run.add("objects %s" % A, " ".join(sorted(r.objects[A])))
        vio = verify_restriction(r)
        for msg in vio:
            run.add("violation", msg)
        return not vio

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


@main.command("verify-bicolim")
@click.argument("files", nargs=-1, required=True)
@click.option("--vertex", required=True,
              help="Fixture file whose last category is the test vertex.")
@click.option("--name", default=None, help="Diagram block to use.")
@click.pass_context
def verify_bicolim_cmd(ctx, files, vertex, name):
    """Check the universal property of a pseudocolimit by enumeration."""
    run = _start(ctx, "verify-bicolim")

    def go():
        env = _load(run, list(files) + [vertex], ctx.obj["fixture_dir"])
        _, block = _pick(env, (DiagramBlock,), name, "diagram")
        vparsed = parse(_resolve(vertex, ctx.obj["fixture_dir"]).read_text())
        vname = [n for n, v in vparsed.items()
                 if isinstance(v, CategoryBlock)][-1]
        X = env[vname].cat
        R = build_pseudocolimit(block.diagram, run.budget)
        rep = verify_bicolimit(R, X, run.budget)
        run.add("diagram", block.diagram.name)
        run.add("vertex", rep.vertex)
        run.add("functor_objects", rep.functor_objects)
        run.add("cone_objects", rep.cone_objects)
        run.add("functor_morphisms", rep.functor_morphisms)
        run.add("cone_morphisms", rep.cone_morphisms)
        run.add("objects_bijective", rep.objects_bijective)
        run.add("morphisms_bijective", rep.morphisms_bijective)
        run.add("strict_triangle", rep.strict_triangle)
        if ctx.obj["seed"] is not None:
            R2 = build_pseudocolimit(block.diagram, Budget(run.budget.limit),
                                     apex_seed=ctx.obj["seed"])
            run.add("seed", ctx.obj["seed"])
            run.add("seed_stable", R2.category.comp == R.category.comp)
        return rep.isomorphism and rep.strict_triangle

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


@main.command("verify-site")
@click.argument("files", nargs=-1, required=True)
@click.option("--vertex", required=True,
              help="Fixture file whose last category block is the test site.")
@click.option("--name", default=None, help="Diagram block to use.")
@click.pass_context
def verify_site_cmd(ctx, files, vertex, name):
    """Check the universal property of a colimit site by enumeration."""
    run = _start(ctx, "verify-site")

    def go():
        env = _load(run, list(files) + [vertex], ctx.obj["fixture_dir"])
        _, block = _pick(env, (DiagramBlock,), name, "diagram")
        vparsed = parse(_resolve(vertex, ctx.obj["fixture_dir"]).read_text())
        vname = [n for n, v in vparsed.items()
                 if isinstance(v, CategoryBlock)][-1]
        X = env[vname].site()
        D = _site_diagram(env, block)
        bad = D.validate()
        if bad:
            raise FixtureError("; ".join(bad))
        S, R = build_colim_site(D, run.budget)
        rep = verify_site_pseudocolimit(D, S, R, X, run.budget)
        run.add("diagram", block.diagram.name)
        run.add("vertex", rep.vertex)
        run.add("functor_objects", rep.functor_objects)
        run.add("cone_objects", rep.cone_objects)
        run.add("functor_morphisms", rep.functor_morphisms)
        run.add("cone_morphisms", rep.cone_morphisms)
        run.add("objects_bijective", rep.objects_bijective)
        run.add("morphisms_bijective", rep.morphisms_bijective)
        run.add("factored_functors_continuous",
                rep.factored_functors_continuous)
        return rep.isomorphism and rep.factored_functors_continuous

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


@main.command("sheaf-check")
@click.argument("files", nargs=-1, required=True)
@click.pass_context
def sheaf_check(ctx, files):
    """Check every presheaf in the fixtures against its category's site."""
    run = _start(ctx, "sheaf-check")

    def go():
        env = _load(run, files, ctx.obj["fixture_dir"])
        sheaves = [(n, v) for n, v in env.items() if isinstance(v, Presheaf)]
        if not sheaves:
            raise FixtureError("no presheaf in the given fixtures")
        all_ok = True
        for pname, P in sheaves:
            bad = validate_presheaf(P)
            if bad:
                raise FixtureError("presheaf %s: %s" % (pname, bad[0]))
            S = _category_block_of(env, P.cat).site()
            ok, where = check_sheaf(P, S)
            run.add("sheaf %s" % pname, ok)
            if not ok:
                run.add("counterexample %s" % pname,
                        "%s %s" % (where[0], " ".join(where[1])))
                all_ok = False
        return all_ok

    ok = _guard(run, go)
    run.finish("pass" if ok else "fail", 0 if ok else 1)


if __name__ == "__main__":
    main()
