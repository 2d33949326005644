"""The explicit 2-filtered pseudocolimit of a diagram of categories.

Objects of the colimit are pairs (A, x) with x an object of the fiber at A.
Morphisms are equivalence classes of spans (C, u, v, f): a pair of index
1-cells u : A -> C, v : B -> C and a fiber morphism f : (Fu)x -> (Fv)y.
Two spans are identified when a common refinement (D, w1, w2) with
invertible comparison 2-cells makes the transported fiber morphisms equal;
the implemented relation is the transitive closure of that single-step
relation, decided by exhaustive search over the (finite) index.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .core import Budget, FinCat, Functor, NatTrans, enumerate_functors, \
    enumerate_nat_trans, validate_nat_trans
from .cones import (Modification, Pseudocone, check_pseudocone,
                    enumerate_modifications, enumerate_pseudocones,
                    postcompose_cell, postcompose_cone)
from .errors import (AmbiguousSolution, IllFormedCone, IncompleteAssignment,
                     NoSolution, NotFiltered, NotLiftable)
from .limits import (Cone, Diagram, LimitAssignment, chosen_limit,
                     discrete_pair, empty_diagram, is_limiting_cone,
                     parallel_pair)
from .twocat import TwoDiagram, check_2filtered


class Span(NamedTuple):
    src_idx: str
    src_obj: str
    tgt_idx: str
    tgt_obj: str
    apex: str
    left: str   # 1-cell src_idx -> apex
    right: str  # 1-cell tgt_idx -> apex
    mor: str    # (F left)(src_obj) -> (F right)(tgt_obj) in the apex fiber


def obj_name(A, x):
    return "%s.%s" % (A, x)


def identity_span(F: TwoDiagram, A, x):
    i = F.index.cells1.identities[A]
    return Span(A, x, A, x, A, i, i, F.fibers[A].identities[x])


def all_spans(F: TwoDiagram, A, x, B, y):
    """Every span from (A, x) to (B, y), deterministic order."""
    C1 = F.index.cells1
    out = []
    for apex in sorted(F.index.objects()):
        for u in C1.hom(A, apex):
            for v in C1.hom(B, apex):
                fib = F.fibers[apex]
                for f in fib.hom(F.on1[u].obj_map[x], F.on1[v].obj_map[y]):
                    out.append(Span(A, x, B, y, apex, u, v, f))
    return out


def _invertible_cells_between(A, u, v):
    out = []
    for g in A.two_cells_between(u, v):
        if A.vinverse(g) is not None:
            out.append(g)
    return out


def span_related(F: TwoDiagram, s: Span, t: Span) -> bool:
    """Single-step relation: a common refinement with invertible comparison
    2-cells transporting one fiber morphism onto the other."""
    if s[:4] != t[:4]:
        return False
    A_idx = F.index
    C1 = A_idx.cells1
    x, y = s.src_obj, s.tgt_obj
    for D in sorted(A_idx.objects()):
        for w1 in C1.hom(s.apex, D):
            for w2 in C1.hom(t.apex, D):
                alphas = _invertible_cells_between(
                    A_idx, C1.comp[(w1, s.left)], C1.comp[(w2, t.left)])
                if not alphas:
                    continue
                betas = _invertible_cells_between(
                    A_idx, C1.comp[(w1, s.right)], C1.comp[(w2, t.right)])
                if not betas:
                    continue
                fD = F.fibers[D]
                for alpha in alphas:
                    for beta in betas:
                        lhs = fD.comp[(F.on2[beta].components[y],
                                       F.on1[w1].mor_map[s.mor])]
                        rhs = fD.comp[(F.on1[w2].mor_map[t.mor],
                                       F.on2[alpha].components[x])]
                        if lhs == rhs:
                            return True
    return False


def compose_spans(F: TwoDiagram, s: Span, t: Span, apex_order=None):
    """Composite span t after s, via the first common refinement found.

    Searches apexes in `apex_order` (default: sorted), then 1-cells and
    comparison 2-cells in a fixed order; well-definedness on classes is a
    checked invariant, so the first success is taken.
    """
    assert (s.tgt_idx, s.tgt_obj) == (t.src_idx, t.src_obj)
    A_idx = F.index
    C1 = A_idx.cells1
    order = apex_order if apex_order is not None else sorted(A_idx.objects())
    for D in order:
        for w1 in C1.hom(s.apex, D):
            for w2 in C1.hom(t.apex, D):
                mid1 = C1.comp[(w1, s.right)]
                mid2 = C1.comp[(w2, t.left)]
                for alpha in _invertible_cells_between(A_idx, mid1, mid2):
                    fD = F.fibers[D]
                    y = s.tgt_obj
                    f1 = F.on1[w1].mor_map[s.mor]
                    f2 = F.on1[w2].mor_map[t.mor]
                    comp = fD.compose_path(
                        f2, F.on2[alpha].components[y], f1)
                    return Span(s.src_idx, s.src_obj, t.tgt_idx, t.tgt_obj,
                                D, C1.comp[(w1, s.left)],
                                C1.comp[(w2, t.right)], comp)
    raise NotLiftable("no common refinement for %r ; %r" % (s, t))


@dataclass
class PseudocolimitResult:
    diagram: TwoDiagram
    category: FinCat  # the colimit category L
    cone: Pseudocone  # lambda, vertex L
    class_members: dict[str, tuple[Span, ...]]  # morphism name -> its class
    span_class: dict[Span, str]  # span -> morphism name
    obj_info: dict[str, tuple[str, str]]  # L object -> (index object, fiber object)

    def class_of(self, s: Span) -> str:
        return self.span_class[s]

    def representative(self, m: str) -> Span:
        return self.class_members[m][0]


def build_pseudocolimit(F: TwoDiagram, budget: Budget | None = None,
                        apex_seed=None) -> PseudocolimitResult:
    """Materialize the colimit category and its cone.

    apex_seed shuffles the refinement search order used for composition;
    the result must not depend on it (well-definedness stress knob).
    """
    ok, datum = check_2filtered(F.index)
    if not ok:
        raise NotFiltered("index fails %s at %r" % (datum[0], datum[1:]))
    bud = budget if budget is not None else Budget()
    objs = []
    obj_info = {}
    for A in sorted(F.index.objects()):
        for x in sorted(F.fibers[A].objects):
            objs.append(obj_name(A, x))
            obj_info[obj_name(A, x)] = (A, x)

    apex_order = sorted(F.index.objects())
    if apex_seed is not None:
        rng = random.Random(apex_seed)
        rng.shuffle(apex_order)

    # quotient the spans between each object pair
    span_class = {}
    class_members = {}
    hom_classes = {}  # (p, q) -> ordered class names
    for p in objs:
        for q in objs:
            A, x = obj_info[p]
            B, y = obj_info[q]
            spans = all_spans(F, A, x, B, y)
            bud.charge(len(spans) + 1)
            parent = {s: s for s in spans}

            def find(s):
                while parent[s] != s:
                    parent[s] = parent[parent[s]]
                    s = parent[s]
                return s

            for i, s in enumerate(spans):
                for t in spans[i + 1:]:
                    bud.charge()
                    if find(s) != find(t) and span_related(F, s, t):
                        parent[find(s)] = find(t)
            groups = {}
            for s in spans:
                groups.setdefault(find(s), []).append(s)
            named = []
            for k, members in sorted(groups.items(),
                                     key=lambda kv: min(kv[1])):
                members = tuple(sorted(members))
                name = "%s>%s#%d" % (p, q, len(named))
                named.append(name)
                class_members[name] = members
                for s in members:
                    span_class[s] = name
            hom_classes[(p, q)] = named

    mor_src = {}
    mor_tgt = {}
    for (p, q), names in hom_classes.items():
        for n in names:
            mor_src[n] = p
            mor_tgt[n] = q
    identities = {}
    for p in objs:
        A, x = obj_info[p]
        identities[p] = span_class[identity_span(F, A, x)]

    comp = {}
    for (p, q), names in hom_classes.items():
        for (q2, r), names2 in hom_classes.items():
            if q2 != q:
                continue
            for m1 in names:
                for m2 in names2:
                    bud.charge()
                    s = class_members[m1][0]
                    t = class_members[m2][0]
                    comp[(m2, m1)] = span_class[
                        compose_spans(F, s, t, apex_order)]

    L = FinCat("colim_%s" % F.name, tuple(objs), mor_src, mor_tgt,
               identities, comp)

    legs = {}
    for A in F.index.objects():
        fib = F.fibers[A]
        legs[A] = Functor(
            "lam_%s" % A, fib, L,
            {x: obj_name(A, x) for x in fib.objects},
            {f: span_class[Span(A, fib.mor_src[f], A, fib.mor_tgt[f], A,
                                F.index.cells1.identities[A],
                                F.index.cells1.identities[A], f)]
             for f in fib.morphisms()})
    coherence = {}
    C1 = F.index.cells1
    for u in F.index.one_cells():
        a, b = C1.mor_src[u], C1.mor_tgt[u]
        comps = {}
        for x in F.fibers[a].objects:
            fx = F.on1[u].obj_map[x]
            comps[x] = span_class[Span(a, x, b, fx, b, u, C1.identities[b],
                                       F.fibers[b].identities[fx])]
        coherence[u] = NatTrans(
            "lam_%s" % u, legs[a],
            Functor("lam_%s.F%s" % (b, u), F.fibers[a], L,
                    {x: legs[b].obj_map[F.on1[u].obj_map[x]]
                     for x in F.fibers[a].objects},
                    {m: legs[b].mor_map[F.on1[u].mor_map[m]]
                     for m in F.fibers[a].morphisms()}),
            comps)
    lam = Pseudocone("lambda_%s" % F.name, F, L, legs, coherence)
    return PseudocolimitResult(F, L, lam, class_members, span_class, obj_info)


# ---------------------------------------------------------------------------
# strict factorization


def factor_cone(R: PseudocolimitResult, h: Pseudocone) -> Functor:
    """The unique functor l : L -> X with l . lambda = h on the nose."""
    ok, why = check_pseudocone(h)
    if not ok:
        raise IllFormedCone(why)
    F = R.diagram
    X = h.vertex
    obj_map = {p: h.legs[A].obj_map[x] for p, (A, x) in R.obj_info.items()}
    mor_map = {}
    for name, members in R.class_members.items():
        s = members[0]
        hu = h.coherence[s.left].components[s.src_obj]
        hv = h.coherence[s.right].components[s.tgt_obj]
        mid = h.legs[s.apex].mor_map[s.mor]
        mor_map[name] = X.compose_path(X.inverse(hv), mid, hu)
    return Functor("fact_%s" % h.name, R.category, X, obj_map, mor_map)


def factor_cell(R: PseudocolimitResult, t: Functor,
                phi: Modification) -> NatTrans:
    """The unique 2-cell xi : l => t with (xi . lambda) = phi, where
    l = factor_cone(phi.source).  Invertible whenever phi is."""
    ell = factor_cone(R, phi.source)
    comps = {}
    for p, (A, x) in R.obj_info.items():
        comps[p] = phi.components[A].components[x]
    xi = NatTrans("xi_%s" % phi.name, ell, t, comps)
    bad = validate_nat_trans(xi)
    if bad:
        raise NoSolution("induced 2-cell is not natural: %s" % bad[0])
    return xi


def enumerate_factor_cells(R: PseudocolimitResult, ell: Functor, t: Functor,
                           phi: Modification):
    """Brute-force search for all xi with xi . lambda = phi (oracle for the
    uniqueness clause; must return exactly one element)."""
    out = []
    for xi in enumerate_nat_trans(ell, t):
        if all(xi.components[obj_name(A, x)] == phi.components[A].components[x]
               for p, (A, x) in R.obj_info.items()):
            out.append(xi)
    if len(out) > 1:
        raise AmbiguousSolution("%d mediating 2-cells" % len(out))
    return out


# ---------------------------------------------------------------------------
# the universal-property verifier


@dataclass
class BicolimReport:
    vertex: str
    functor_objects: int
    cone_objects: int
    functor_morphisms: int
    cone_morphisms: int
    objects_bijective: bool
    morphisms_bijective: bool
    strict_triangle: bool  # factor_cone is a section of postcomposition

    @property
    def isomorphism(self):
        return self.objects_bijective and self.morphisms_bijective \
            and self.strict_triangle


def verify_bicolimit(R: PseudocolimitResult, X: FinCat,
                     budget: Budget | None = None) -> BicolimReport:
    """Check that postcomposition with lambda is an isomorphism of
    categories Functors(L, X) -> Pseudocones(F, X), by double enumeration."""
    bud = budget if budget is not None else Budget()
    F = R.diagram
    funcs = enumerate_functors(R.category, X, bud)
    cones = enumerate_pseudocones(F, X, bud)
    images = [postcompose_cone(R.cone, t) for t in funcs]
    image_keys = [c.key() for c in images]
    cone_keys = [c.key() for c in cones]
    objects_bijective = (len(set(image_keys)) == len(funcs)
                         and sorted(image_keys) == sorted(cone_keys))
    strict_triangle = all(
        factor_cone(R, c).key() == t.key()
        for c, t in zip(images, funcs))
    f_mor = 0
    c_mor = 0
    morphisms_bijective = True
    cones_by_key = {k: c for k, c in zip(cone_keys, cones)}
    for s, img_s in zip(funcs, images):
        for t, img_t in zip(funcs, images):
            nats = enumerate_nat_trans(s, t, bud)
            mods = enumerate_modifications(img_s, img_t, bud)
            f_mor += len(nats)
            mapped = [postcompose_cell(R.cone, xi).key() for xi in nats]
            if (len(set(mapped)) != len(nats)
                    or sorted(mapped) != sorted(m.key() for m in mods)):
                morphisms_bijective = False
    # count modification sides over all cone pairs (must equal f_mor when
    # the object sides biject)
    for a in cones:
        for b in cones:
            c_mor += len(enumerate_modifications(a, b, bud))
    return BicolimReport(X.name, len(funcs), len(cones), f_mor, c_mor,
                         objects_bijective, morphisms_bijective,
                         strict_triangle)


# ---------------------------------------------------------------------------
# finite limits in the colimit


def lift_diagram(R: PseudocolimitResult, D: Diagram):
    """Find a fiber A, 1-cells u_i into A, and a diagram in that fiber whose
    image under the canonical re-indexing isos is D.  Returns
    (A, {node: (u, fiber object)}, fiber diagram)."""
    F = R.diagram
    C1 = F.index.cells1
    nodes = sorted(D.nodes)
    for A in sorted(F.index.objects()):
        choices = []
        feasible = True
        for n in nodes:
            B, y = R.obj_info[D.nodes[n]]
            cands = C1.hom(B, A)
            if not cands:
                feasible = False
                break
            choices.append(cands)
        if not feasible:
            continue
        for combo in itertools.product(*choices):
            pick = dict(zip(nodes, combo))
            edges = {}
            ok = True
            for e, (i, j, m) in D.edges.items():
                Bi, yi = R.obj_info[D.nodes[i]]
                Bj, yj = R.obj_info[D.nodes[j]]
                lifted = None
                for s in R.class_members[m]:
                    if s.apex == A and s.left == pick[i] and s.right == pick[j]:
                        lifted = s.mor
                        break
                if lifted is None:
                    ok = False
                    break
                edges[e] = (i, j, lifted)
            if ok:
                lifted_nodes = {}
                for n in nodes:
                    B, y = R.obj_info[D.nodes[n]]
                    lifted_nodes[n] = F.on1[pick[n]].obj_map[y]
                return A, pick, Diagram(lifted_nodes, edges)
    raise NotLiftable("diagram does not lift to a single fiber")


def reindex_iso(R: PseudocolimitResult, A, u, p):
    """The canonical iso (A, (Fu)y) -> (B, y) in L, for u : B -> A and
    p = (B, y)."""
    F = R.diagram
    B, y = R.obj_info[p]
    fy = F.on1[u].obj_map[y]
    s = Span(A, fy, B, y, A, F.index.cells1.identities[A], u,
             F.fibers[A].identities[fy])
    return R.span_class[s]


def colim_finite_limit(R: PseudocolimitResult, D: Diagram,
                       fiber_limits: dict[str, LimitAssignment],
                       verify=False) -> Cone:
    """Limit of a finite diagram in L: lift to one fiber, take the chosen
    limit there, push forward along the cone leg."""
    L = R.category
    if not D.nodes:
        # search for a fiber terminal that is terminal in L
        for A in sorted(R.diagram.index.objects()):
            lim = fiber_limits.get(A)
            if lim is None or lim.terminal is None:
                raise IncompleteAssignment("fiber %s lacks a terminal" % A)
            t = obj_name(A, lim.terminal)
            if all(len(L.hom(o, t)) == 1 for o in L.objects):
                return Cone(t, {})
        raise NotLiftable("no fiber terminal is terminal in the colimit")
    A, pick, lifted = lift_diagram(R, D)
    if A not in fiber_limits:
        raise IncompleteAssignment("fiber %s has no limit assignment" % A)
    cone = chosen_limit(fiber_limits[A], lifted)
    lam_A = R.cone.legs[A]
    legs = {}
    for n in sorted(D.nodes):
        pushed = lam_A.mor_map[cone.legs[n]]
        legs[n] = L.comp[(reindex_iso(R, A, pick[n], D.nodes[n]), pushed)]
    out = Cone(lam_A.obj_map[cone.apex], legs)
    if verify and not is_limiting_cone(L, D, out):
        raise NoSolution("pushed cone is not limiting in the colimit")
    return out


def colim_limit_assignment(R: PseudocolimitResult,
                           fiber_limits: dict[str, LimitAssignment]
                           ) -> LimitAssignment:
    """A complete chosen-limit structure on the colimit category, built
    through colim_finite_limit."""
    L = R.category
    term = colim_finite_limit(R, empty_diagram(), fiber_limits)
    tmap = {}
    for o in L.objects:
        ms = L.hom(o, term.apex)
        assert len(ms) == 1
        tmap[o] = ms[0]
    products = {}
    for a in L.objects:
        for b in L.objects:
            cone = colim_finite_limit(R, discrete_pair(a, b), fiber_limits)
            products[(a, b)] = (cone.apex, cone.legs["l"], cone.legs["r"])
    equalizers = {}
    for f in L.morphisms():
        for g in L.hom(L.mor_src[f], L.mor_tgt[f]):
            if f == g:
                src = L.mor_src[f]
                equalizers[(f, g)] = (src, L.identities[src])
                continue
            cone = colim_finite_limit(R, parallel_pair(L, f, g), fiber_limits)
            equalizers[(f, g)] = (cone.apex, cone.legs["l"])
    return LimitAssignment(L, term.apex, tmap, products, equalizers)


def verify_cone_exactness(R: PseudocolimitResult,
                          fiber_limits: dict[str, LimitAssignment]):
    """check_exact for every cone leg.  Returns {index object: (ok, bad)}."""
    from .limits import check_exact
    out = {}
    for A in sorted(R.diagram.index.objects()):
        out[A] = check_exact(R.cone.legs[A], fiber_limits[A])
    return out
