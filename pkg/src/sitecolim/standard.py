"""Small standard categories, 2-categories and diagrams used throughout the
test corpus and the documentation."""

from __future__ import annotations

from .core import FinCat, Functor, identity_functor, identity_nat
from .limits import LimitAssignment
from .twocat import TwoCat, TwoDiagram, constant_diagram, two_cat_from_cat


def one() -> FinCat:
    """The terminal category."""
    return FinCat("one", ("o",), {"id_o": "o"}, {"id_o": "o"},
                  {"o": "id_o"}, {("id_o", "id_o"): "id_o"})


def two() -> FinCat:
    """The arrow category 0 -> 1."""
    mor_src = {"id_0": "0", "id_1": "1", "a": "0"}
    mor_tgt = {"id_0": "0", "id_1": "1", "a": "1"}
    comp = {("id_0", "id_0"): "id_0", ("id_1", "id_1"): "id_1",
            ("a", "id_0"): "a", ("id_1", "a"): "a"}
    return FinCat("two", ("0", "1"), mor_src, mor_tgt,
                  {"0": "id_0", "1": "id_1"}, comp)


def chaotic_pair() -> FinCat:
    """Two objects, every hom-set a singleton (equivalent to the point)."""
    objs = ("p", "q")
    mor_src, mor_tgt = {}, {}
    names = {}
    for a in objs:
        for b in objs:
            n = "id_%s" % a if a == b else "%s%s" % (a, b)
            names[(a, b)] = n
            mor_src[n] = a
            mor_tgt[n] = b
    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                comp[(names[(b, c)], names[(a, b)])] = names[(a, c)]
    return FinCat("chaotic_pair", objs, mor_src, mor_tgt,
                  {"p": "id_p", "q": "id_q"}, comp)


def poset_category(name, elements, le) -> FinCat:
    """The category of a finite poset: one morphism per comparable pair."""
    elements = tuple(elements)
    mor_src, mor_tgt = {}, {}
    names = {}
    for a in elements:
        for b in elements:
            if le(a, b):
                n = "id_%s" % a if a == b else "%s_%s" % (a, b)
                names[(a, b)] = n
                mor_src[n] = a
                mor_tgt[n] = b
    comp = {}
    for (a, b), f in names.items():
        for (b2, c), g in names.items():
            if b2 == b:
                comp[(g, f)] = names[(a, c)]
    return FinCat(name, elements, mor_src, mor_tgt,
                  {a: "id_%s" % a for a in elements}, comp)


def poset_limits(C: FinCat, le) -> LimitAssignment:
    """Chosen limits in a finite meet-semilattice with top: terminal = top,
    products = meets, equalizers of (f, f) = identity cones."""
    elems = list(C.objects)

    def mor(a, b):
        ms = C.hom(a, b)
        assert len(ms) == 1
        return ms[0]

    top = [t for t in elems if all(le(a, t) for a in elems)]
    assert len(top) == 1
    top = top[0]
    tmap = {a: mor(a, top) for a in elems}
    products = {}
    for a in elems:
        for b in elems:
            lower = [c for c in elems if le(c, a) and le(c, b)]
            meets = [m for m in lower if all(le(c, m) for c in lower)]
            assert len(meets) == 1, "not a meet-semilattice"
            m = meets[0]
            products[(a, b)] = (m, mor(m, a), mor(m, b))
    equalizers = {}
    for f in C.morphisms():
        src = C.mor_src[f]
        equalizers[(f, f)] = (src, C.identities[src])
    return LimitAssignment(C, top, tmap, products, equalizers)


def diamond() -> FinCat:
    """The lattice bot < a, b < top."""
    order = {("bot", "a"), ("bot", "b"), ("bot", "top"),
             ("a", "top"), ("b", "top")}

    def le(x, y):
        return x == y or (x, y) in order

    return poset_category("diamond", ("bot", "a", "b", "top"), le)


def diamond_le(x, y):
    order = {("bot", "a"), ("bot", "b"), ("bot", "top"),
             ("a", "top"), ("b", "top")}
    return x == y or (x, y) in order


def diamond_limits() -> LimitAssignment:
    return poset_limits(diamond(), diamond_le)


def diamond_swap() -> Functor:
    """The a <-> b symmetry of the diamond (an exact automorphism)."""
    D = diamond()
    sw = {"bot": "bot", "a": "b", "b": "a", "top": "top"}
    mor_map = {}
    for m in D.morphisms():
        s, t = sw[D.mor_src[m]], sw[D.mor_tgt[m]]
        mor_map[m] = D.hom(s, t)[0]
    return Functor("swap", D, D, sw, mor_map)


def chain_cat(n, name=None) -> FinCat:
    """The linear order 0 < 1 < ... < n-1."""
    elems = tuple(str(i) for i in range(n))
    return poset_category(name or "chain%d" % n, elems,
                          lambda a, b: int(a) <= int(b))


def chain3_twocat() -> TwoCat:
    return two_cat_from_cat(chain_cat(3), "chain3")


def chain2_twocat() -> TwoCat:
    return two_cat_from_cat(chain_cat(2, "chain2"), "chain2")


def point_twocat() -> TwoCat:
    return two_cat_from_cat(one(), "point")


def parallel_pair_cat() -> FinCat:
    """Two objects with two parallel non-identity arrows (not filtered)."""
    mor_src = {"id_s": "s", "id_t": "t", "f": "s", "g": "s"}
    mor_tgt = {"id_s": "s", "id_t": "t", "f": "t", "g": "t"}
    comp = {("id_s", "id_s"): "id_s", ("id_t", "id_t"): "id_t",
            ("f", "id_s"): "f", ("id_t", "f"): "f",
            ("g", "id_s"): "g", ("id_t", "g"): "g"}
    return FinCat("parallel_pair", ("s", "t"), mor_src, mor_tgt,
                  {"s": "id_s", "t": "id_t"}, comp)


def discrete_pair_twocat() -> TwoCat:
    C = FinCat("discrete_pair", ("x", "y"),
               {"id_x": "x", "id_y": "y"}, {"id_x": "x", "id_y": "y"},
               {"x": "id_x", "y": "id_y"},
               {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y"})
    return two_cat_from_cat(C)


def walking_iso_twocat() -> TwoCat:
    """Two parallel 1-cells u, v : A -> B and an invertible 2-cell between
    them (plus identities)."""
    mor_src = {"id_A": "A", "id_B": "B", "u": "A", "v": "A"}
    mor_tgt = {"id_A": "A", "id_B": "B", "u": "B", "v": "B"}
    comp = {("id_A", "id_A"): "id_A", ("id_B", "id_B"): "id_B",
            ("u", "id_A"): "u", ("id_B", "u"): "u",
            ("v", "id_A"): "v", ("id_B", "v"): "v"}
    cells1 = FinCat("walking_iso_1", ("A", "B"), mor_src, mor_tgt,
                    {"A": "id_A", "B": "id_B"}, comp)
    two_id = {m: "2id_%s" % m for m in cells1.morphisms()}
    two_src = {g: m for m, g in two_id.items()}
    two_tgt = dict(two_src)
    two_src.update({"g": "u", "ginv": "v"})
    two_tgt.update({"g": "v", "ginv": "u"})
    vcomp = {}
    cells = {"2id_id_A": ("id_A", "id_A"), "2id_id_B": ("id_B", "id_B"),
             "2id_u": ("u", "u"), "2id_v": ("v", "v"),
             "g": ("u", "v"), "ginv": ("v", "u")}

    def vc(h, g):
        """Compose in the free groupoid on g: u <-> v."""
        table = {("2id_u", "2id_u"): "2id_u", ("2id_v", "2id_v"): "2id_v",
                 ("g", "2id_u"): "g", ("2id_v", "g"): "g",
                 ("ginv", "2id_v"): "ginv", ("2id_u", "ginv"): "ginv",
                 ("ginv", "g"): "2id_u", ("g", "ginv"): "2id_v"}
        return table.get((h, g))

    for gname, (gs, gt) in cells.items():
        for hname, (hs, ht) in cells.items():
            if gt != hs:
                continue
            if gname.startswith("2id_id") or hname.startswith("2id_id"):
                out = gname if hname.startswith("2id_id") else hname
                if gname.startswith("2id_id") and hname.startswith("2id_id"):
                    out = gname
                vcomp[(hname, gname)] = out
            else:
                vcomp[(hname, gname)] = vc(hname, gname)
    hcomp = {}
    for gname, (gs, gt) in cells.items():
        for hname, (hs, ht) in cells.items():
            # h after g horizontally: boundary 1-cells composable
            if cells1.mor_tgt[gs] != cells1.mor_src[hs]:
                continue
            if hname.startswith("2id_id"):
                hcomp[(hname, gname)] = gname
            elif gname.startswith("2id_id"):
                hcomp[(hname, gname)] = hname
            else:
                # never happens: u, v do not compose with themselves
                raise AssertionError
    return TwoCat("walking_iso", cells1, two_src, two_tgt,
                  {m: "2id_%s" % m for m in cells1.morphisms()}, vcomp, hcomp)


# ---------------------------------------------------------------------------
# standard diagrams


def const_two_diagram() -> TwoDiagram:
    """The constant diagram at the arrow category over chain3."""
    return constant_diagram(chain3_twocat(), two(), "consttwo")


def inclusion_chain_diagram() -> TwoDiagram:
    """one -> two -> two over chain3: endpoint inclusion, then identity."""
    idx = chain3_twocat()
    O, T = one(), two()
    incl = Functor("incl0", O, T, {"o": "0"}, {"id_o": "id_0"})
    on1 = {"id_0": identity_functor(O), "id_1": identity_functor(T),
           "id_2": identity_functor(T),
           "0_1": incl, "1_2": identity_functor(T), "0_2": incl}
    fibers = {"0": O, "1": T, "2": T}
    on2 = {idx.two_id[u]: identity_nat(on1[u]) for u in idx.one_cells()}
    return TwoDiagram("inclchain", idx, fibers, on1, on2)


def diamond_chain_diagram() -> TwoDiagram:
    """Constant diamond-valued diagram over chain3 (identity transitions)."""
    return constant_diagram(chain3_twocat(), diamond(), "diamondchain")


def swap_chain_diagram() -> TwoDiagram:
    """Diamond fibers over chain3 with the a<->b symmetry as both steps
    (their composite is the identity)."""
    idx = chain3_twocat()
    D = diamond()
    sw = diamond_swap()
    on1 = {"id_0": identity_functor(D), "id_1": identity_functor(D),
           "id_2": identity_functor(D),
           "0_1": sw, "1_2": sw, "0_2": identity_functor(D)}
    on2 = {idx.two_id[u]: identity_nat(on1[u]) for u in idx.one_cells()}
    return TwoDiagram("swapchain", idx, {"0": D, "1": D, "2": D}, on1, on2)


def point_diagram(C: FinCat) -> TwoDiagram:
    """A diagram over the one-object index, i.e. just the category C."""
    return constant_diagram(point_twocat(), C, "point_%s" % C.name)


def walking_iso_diagram() -> TwoDiagram:
    """Both 1-cells of the walking iso sent to the identity on two, the
    invertible 2-cell to the identity transformation."""
    idx = walking_iso_twocat()
    T = two()
    on1 = {u: identity_functor(T) for u in idx.one_cells()}
    on2 = {g: identity_nat(identity_functor(T)) for g in idx.two_cells()}
    return TwoDiagram("walkingiso_two", idx, {"A": T, "B": T}, on1, on2)
