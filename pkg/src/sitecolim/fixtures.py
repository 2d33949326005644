"""Human-writable fixture files.

A fixture file starts with the header line `%fixture 1` and contains named
blocks introduced by `[kind name]`.  Tokens are whitespace-separated; `#`
starts a comment.  Blocks may reference names defined earlier in the same
file or in the preloaded environment (see load_environment).  Printing is
canonical: parse -> print is byte-stable on its own output.

Block kinds and their lines:

  [category NAME]     object, mor f : a -> b, id o = f, comp g . f = h,
                      terminal t, tmap o = f, product a b = p p1 p2,
                      equalizer f g = e m, cover o : m1 m2 ..., generator o
  [twocat NAME]       object, mor, id, comp (1-cells), twocell g : u => v,
                      twoid u = g, vcomp d . g = e, hcomp d * g = e
  [functor NAME]      source C, target D, obj a -> x, mor f -> g
  [nattrans NAME]     source F, target G, at a = m
  [diagram NAME]      index T, orientation covariant|op, fiber A = C,
                      transition u = F, cell g = N, generators A : a b
  [cone NAME]         diagram D, vertex X, leg A = F, coh u = N
  [presheaf NAME]     category C, set a : e1 e2, map f e = e'
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import FinCat, Functor, NatTrans
from .cones import Pseudocone
from .errors import FixtureError
from .limits import LimitAssignment
from .sites import Presheaf, Site
from .twocat import TwoCat, TwoDiagram, opposite_two_cat

HEADER = "%fixture 1"


@dataclass
class CategoryBlock:
    cat: FinCat
    limits: LimitAssignment | None = None
    covers: dict[str, tuple[tuple[str, ...], ...]] = field(default_factory=dict)
    generators: frozenset = frozenset()

    def site(self) -> Site:
        if self.limits is None:
            raise FixtureError("category %s has no limit assignment; "
                               "cannot form a site" % self.cat.name)
        gens = self.generators or frozenset(self.cat.objects)
        return Site(self.cat, self.limits, dict(self.covers), gens)


@dataclass
class DiagramBlock:
    diagram: TwoDiagram
    generators: dict[str, frozenset] = field(default_factory=dict)
    fiber_names: dict[str, str] = field(default_factory=dict)


class Environment(dict):
    """name -> parsed value (CategoryBlock, TwoCat, Functor, NatTrans,
    DiagramBlock, Pseudocone, Presheaf)."""

    def lookup(self, name, kinds, line):
        v = self.get(name)
        if v is None:
            raise FixtureError("unknown name %s" % name, line)
        if kinds and not isinstance(v, kinds):
            raise FixtureError("%s is a %s, not one of %s"
                               % (name, type(v).__name__,
                                  "/".join(k.__name__ for k in kinds)), line)
        return v


def _tokens(text):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def parse(text: str, env: Environment | None = None) -> Environment:
    """Parse a fixture file into (a copy of) the environment."""
    env = Environment(env or {})
    lines = list(_tokens(text))
    if not lines or lines[0][1] != HEADER.split():
        raise FixtureError("missing '%s' header" % HEADER,
                           lines[0][0] if lines else 1)
    blocks = []
    cur = None
    for ln, toks in lines[1:]:
        if toks[0].startswith("["):
            if len(toks) != 2 or not toks[1].endswith("]"):
                raise FixtureError("malformed block header", ln)
            cur = (toks[0][1:], toks[1][:-1], ln, [])
            blocks.append(cur)
        else:
            if cur is None:
                raise FixtureError("content before first block", ln)
            cur[3].append((ln, toks))
    for kind, name, ln, body in blocks:
        builder = _BUILDERS.get(kind)
        if builder is None:
            raise FixtureError("unknown block kind %s" % kind, ln)
        env[name] = builder(name, body, env)
    return env


def _expect(cond, msg, ln):
    if not cond:
        raise FixtureError(msg, ln)


def _parse_category(name, body, env) -> CategoryBlock:
    objects = []
    mor_src, mor_tgt, identities, comp = {}, {}, {}, {}
    terminal, tmap, products, equalizers = None, {}, {}, {}
    covers, generators = {}, set()
    has_limits = False
    for ln, t in body:
        if t[0] == "object":
            _expect(len(t) == 2, "object takes one name", ln)
            objects.append(t[1])
        elif t[0] == "mor":
            _expect(len(t) == 6 and t[2] == ":" and t[4] == "->",
                    "mor f : a -> b", ln)
            mor_src[t[1]], mor_tgt[t[1]] = t[3], t[5]
        elif t[0] == "id":
            _expect(len(t) == 4 and t[2] == "=", "id o = f", ln)
            identities[t[1]] = t[3]
        elif t[0] == "comp":
            _expect(len(t) == 6 and t[2] == "." and t[4] == "=",
                    "comp g . f = h", ln)
            comp[(t[1], t[3])] = t[5]
        elif t[0] == "terminal":
            _expect(len(t) == 2, "terminal t", ln)
            terminal = t[1]
            has_limits = True
        elif t[0] == "tmap":
            _expect(len(t) == 4 and t[2] == "=", "tmap o = f", ln)
            tmap[t[1]] = t[3]
        elif t[0] == "product":
            _expect(len(t) == 7 and t[3] == "=", "product a b = p p1 p2", ln)
            products[(t[1], t[2])] = (t[4], t[5], t[6])
            has_limits = True
        elif t[0] == "equalizer":
            _expect(len(t) == 6 and t[3] == "=", "equalizer f g = e m", ln)
            equalizers[(t[1], t[2])] = (t[4], t[5])
            has_limits = True
        elif t[0] == "cover":
            _expect(len(t) >= 4 and t[2] == ":", "cover o : m1 ...", ln)
            covers.setdefault(t[1], []).append(tuple(t[3:]))
        elif t[0] == "generator":
            _expect(len(t) == 2, "generator o", ln)
            generators.add(t[1])
        else:
            raise FixtureError("unknown category line %s" % t[0], ln)
    cat = FinCat(name, tuple(objects), mor_src, mor_tgt, identities, comp)
    limits = None
    if has_limits:
        limits = LimitAssignment(cat, terminal, tmap, products, equalizers)
    return CategoryBlock(cat, limits,
                         {c: tuple(fs) for c, fs in covers.items()},
                         frozenset(generators))


def _parse_twocat(name, body, env) -> TwoCat:
    objects = []
    mor_src, mor_tgt, identities, comp = {}, {}, {}, {}
    two_src, two_tgt, two_id, vcomp, hcomp = {}, {}, {}, {}, {}
    for ln, t in body:
        if t[0] == "object":
            objects.append(t[1])
        elif t[0] == "mor":
            _expect(len(t) == 6 and t[2] == ":" and t[4] == "->",
                    "mor u : A -> B", ln)
            mor_src[t[1]], mor_tgt[t[1]] = t[3], t[5]
        elif t[0] == "id":
            identities[t[1]] = t[3]
        elif t[0] == "comp":
            comp[(t[1], t[3])] = t[5]
        elif t[0] == "twocell":
            _expect(len(t) == 6 and t[2] == ":" and t[4] == "=>",
                    "twocell g : u => v", ln)
            two_src[t[1]], two_tgt[t[1]] = t[3], t[5]
        elif t[0] == "twoid":
            _expect(len(t) == 4 and t[2] == "=", "twoid u = g", ln)
            two_id[t[1]] = t[3]
        elif t[0] == "vcomp":
            _expect(len(t) == 6 and t[2] == "." and t[4] == "=",
                    "vcomp d . g = e", ln)
            vcomp[(t[1], t[3])] = t[5]
        elif t[0] == "hcomp":
            _expect(len(t) == 6 and t[2] == "*" and t[4] == "=",
                    "hcomp d * g = e", ln)
            hcomp[(t[1], t[3])] = t[5]
        else:
            raise FixtureError("unknown twocat line %s" % t[0], ln)
    cells1 = FinCat(name + ".1", tuple(objects), mor_src, mor_tgt,
                    identities, comp)
    return TwoCat(name, cells1, two_src, two_tgt, two_id, vcomp, hcomp)


def _cat_of(value, where, ln):
    if isinstance(value, CategoryBlock):
        return value.cat
    raise FixtureError("%s must name a category" % where, ln)


def _parse_functor(name, body, env) -> Functor:
    source = target = None
    obj_map, mor_map = {}, {}
    for ln, t in body:
        if t[0] == "source":
            source = _cat_of(env.lookup(t[1], (), ln), "source", ln)
        elif t[0] == "target":
            target = _cat_of(env.lookup(t[1], (), ln), "target", ln)
        elif t[0] == "obj":
            _expect(len(t) == 4 and t[2] == "->", "obj a -> x", ln)
            obj_map[t[1]] = t[3]
        elif t[0] == "mor":
            _expect(len(t) == 4 and t[2] == "->", "mor f -> g", ln)
            mor_map[t[1]] = t[3]
        else:
            raise FixtureError("unknown functor line %s" % t[0], ln)
    _expect(source is not None and target is not None,
            "functor needs source and target", body[0][0] if body else 1)
    return Functor(name, source, target, obj_map, mor_map)


def _parse_nattrans(name, body, env) -> NatTrans:
    source = target = None
    components = {}
    for ln, t in body:
        if t[0] == "source":
            source = env.lookup(t[1], (Functor,), ln)
        elif t[0] == "target":
            target = env.lookup(t[1], (Functor,), ln)
        elif t[0] == "at":
            _expect(len(t) == 4 and t[2] == "=", "at a = m", ln)
            components[t[1]] = t[3]
        else:
            raise FixtureError("unknown nattrans line %s" % t[0], ln)
    _expect(source is not None and target is not None,
            "nattrans needs source and target", body[0][0] if body else 1)
    return NatTrans(name, source, target, components)


def _parse_diagram(name, body, env) -> DiagramBlock:
    index = None
    orientation = "covariant"
    fibers, on1, on2 = {}, {}, {}
    fiber_names = {}
    generators = {}
    for ln, t in body:
        if t[0] == "index":
            index = env.lookup(t[1], (TwoCat,), ln)
        elif t[0] == "orientation":
            _expect(t[1] in ("covariant", "op"), "orientation covariant|op", ln)
            orientation = t[1]
        elif t[0] == "fiber":
            _expect(len(t) == 4 and t[2] == "=", "fiber A = C", ln)
            block = env.lookup(t[3], (CategoryBlock,), ln)
            fibers[t[1]] = block
            fiber_names[t[1]] = t[3]
        elif t[0] == "transition":
            _expect(len(t) == 4 and t[2] == "=", "transition u = F", ln)
            on1[t[1]] = env.lookup(t[3], (Functor,), ln)
        elif t[0] == "cell":
            _expect(len(t) == 4 and t[2] == "=", "cell g = N", ln)
            on2[t[1]] = env.lookup(t[3], (NatTrans,), ln)
        elif t[0] == "generators":
            _expect(len(t) >= 4 and t[2] == ":", "generators A : a b", ln)
            generators[t[1]] = frozenset(t[3:])
        else:
            raise FixtureError("unknown diagram line %s" % t[0], ln)
    _expect(index is not None, "diagram needs an index",
            body[0][0] if body else 1)
    covariant = orientation == "covariant"
    if not covariant:
        index = opposite_two_cat(index)
    from .core import identity_functor, identity_nat
    full_on1 = {}
    for u in index.one_cells():
        a = index.cells1.mor_src[u]
        if u in on1:
            full_on1[u] = on1[u]
        elif u == index.cells1.identities.get(a):
            full_on1[u] = identity_functor(fibers[a].cat)
        else:
            raise FixtureError("diagram %s: no transition for 1-cell %s"
                               % (name, u))
    full_on2 = {}
    for g in index.two_cells():
        if g in on2:
            full_on2[g] = on2[g]
        elif g in index.two_id.values():
            u = index.two_src[g]
            full_on2[g] = identity_nat(full_on1[u])
        else:
            raise FixtureError("diagram %s: no transformation for 2-cell %s"
                               % (name, g))
    dia = TwoDiagram(name, index, {A: b.cat for A, b in fibers.items()},
                     full_on1, full_on2, covariant)
    block = DiagramBlock(dia, generators, fiber_names)
    block.fiber_blocks = fibers
    return block


def _parse_cone(name, body, env) -> Pseudocone:
    diagram = vertex = None
    legs, coherence = {}, {}
    for ln, t in body:
        if t[0] == "diagram":
            diagram = env.lookup(t[1], (DiagramBlock,), ln).diagram
        elif t[0] == "vertex":
            vertex = _cat_of(env.lookup(t[1], (), ln), "vertex", ln)
        elif t[0] == "leg":
            _expect(len(t) == 4 and t[2] == "=", "leg A = F", ln)
            legs[t[1]] = env.lookup(t[3], (Functor,), ln)
        elif t[0] == "coh":
            _expect(len(t) == 4 and t[2] == "=", "coh u = N", ln)
            coherence[t[1]] = env.lookup(t[3], (NatTrans,), ln)
        else:
            raise FixtureError("unknown cone line %s" % t[0], ln)
    _expect(diagram is not None and vertex is not None,
            "cone needs diagram and vertex", body[0][0] if body else 1)
    from .core import identity_nat
    for u in diagram.index.one_cells():
        a = diagram.index.cells1.mor_src[u]
        if u not in coherence and u == diagram.index.cells1.identities.get(a):
            coherence[u] = identity_nat(legs[a])
    return Pseudocone(name, diagram, vertex, legs, coherence)


def _parse_presheaf(name, body, env) -> Presheaf:
    cat = None
    sets = {}
    maps = {}
    for ln, t in body:
        if t[0] == "category":
            cat = _cat_of(env.lookup(t[1], (), ln), "category", ln)
        elif t[0] == "set":
            _expect(len(t) >= 3 and t[2] == ":", "set a : e1 ...", ln)
            sets[t[1]] = tuple(t[3:])
        elif t[0] == "map":
            _expect(len(t) == 5 and t[3] == "=", "map f e = e'", ln)
            maps.setdefault(t[1], {})[t[2]] = t[4]
        else:
            raise FixtureError("unknown presheaf line %s" % t[0], ln)
    _expect(cat is not None, "presheaf needs a category",
            body[0][0] if body else 1)
    for o in cat.objects:
        sets.setdefault(o, ())
    for m in cat.morphisms():
        maps.setdefault(m, {})
    return Presheaf(name, cat, sets, maps)


_BUILDERS = {
    "category": _parse_category,
    "twocat": _parse_twocat,
    "functor": _parse_functor,
    "nattrans": _parse_nattrans,
    "diagram": _parse_diagram,
    "cone": _parse_cone,
    "presheaf": _parse_presheaf,
}


# ---------------------------------------------------------------------------
# canonical printing


def _print_cat_core(out, C: FinCat):
    for o in C.objects:
        out.append("object %s" % o)
    for m in sorted(C.mor_src):
        out.append("mor %s : %s -> %s" % (m, C.mor_src[m], C.mor_tgt[m]))
    for o in C.objects:
        out.append("id %s = %s" % (o, C.identities[o]))
    for (g, f) in sorted(C.comp):
        out.append("comp %s . %s = %s" % (g, f, C.comp[(g, f)]))


def print_category(block: CategoryBlock) -> list[str]:
    out = ["[category %s]" % block.cat.name]
    _print_cat_core(out, block.cat)
    if block.limits is not None:
        A = block.limits
        if A.terminal is not None:
            out.append("terminal %s" % A.terminal)
            for o in sorted(A.tmap):
                out.append("tmap %s = %s" % (o, A.tmap[o]))
        for (a, b) in sorted(A.products):
            p, p1, p2 = A.products[(a, b)]
            out.append("product %s %s = %s %s %s" % (a, b, p, p1, p2))
        for (f, g) in sorted(A.equalizers):
            e, m = A.equalizers[(f, g)]
            out.append("equalizer %s %s = %s %s" % (f, g, e, m))
    for c in sorted(block.covers):
        for fam in block.covers[c]:
            out.append("cover %s : %s" % (c, " ".join(fam)))
    for g in sorted(block.generators):
        out.append("generator %s" % g)
    return out


def print_twocat(A: TwoCat) -> list[str]:
    out = ["[twocat %s]" % A.name]
    _print_cat_core(out, A.cells1)
    for g in A.two_cells():
        out.append("twocell %s : %s => %s" % (g, A.two_src[g], A.two_tgt[g]))
    for u in sorted(A.two_id):
        out.append("twoid %s = %s" % (u, A.two_id[u]))
    for (h, g) in sorted(A.vcomp):
        out.append("vcomp %s . %s = %s" % (h, g, A.vcomp[(h, g)]))
    for (h, g) in sorted(A.hcomp):
        out.append("hcomp %s * %s = %s" % (h, g, A.hcomp[(h, g)]))
    return out


def print_functor(F: Functor, source_name=None, target_name=None) -> list[str]:
    out = ["[functor %s]" % F.name,
           "source %s" % (source_name or F.source.name),
           "target %s" % (target_name or F.target.name)]
    for o in sorted(F.obj_map):
        out.append("obj %s -> %s" % (o, F.obj_map[o]))
    for m in sorted(F.mor_map):
        out.append("mor %s -> %s" % (m, F.mor_map[m]))
    return out


def print_presheaf(P: Presheaf, cat_name=None) -> list[str]:
    out = ["[presheaf %s]" % P.name, "category %s" % (cat_name or P.cat.name)]
    for o in sorted(P.sets):
        if P.sets[o]:
            out.append("set %s : %s" % (o, " ".join(P.sets[o])))
    for m in sorted(P.maps):
        for e in sorted(P.maps[m]):
            out.append("map %s %s = %s" % (m, e, P.maps[m][e]))
    return out


def render(blocks: list[list[str]]) -> str:
    lines = [HEADER]
    for b in blocks:
        lines.append("")
        lines.extend(b)
    return "\n".join(lines) + "\n"


def print_environment(env: Environment) -> str:
    """Canonical text for the printable members of an environment."""
    blocks = []
    for name, v in env.items():
        if isinstance(v, CategoryBlock):
            blocks.append(print_category(v))
        elif isinstance(v, TwoCat):
            blocks.append(print_twocat(v))
        elif isinstance(v, Functor):
            blocks.append(print_functor(v))
        elif isinstance(v, Presheaf):
            blocks.append(print_presheaf(v))
    return render(blocks)
