"""Chosen finite limits and exactness checking.

Limits are chosen structure: a LimitAssignment records one terminal object,
one product cone per ordered object pair and one equalizer cone per ordered
parallel pair.  Arbitrary finite limits are derived from these by the
standard product-then-equalizers reduction.  Universal properties are always
checkable exhaustively against the ambient category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import FinCat, Functor
from .errors import IncompleteAssignment


@dataclass
class Diagram:
    """A finite diagram in a category: shaped by named nodes and edges."""
    nodes: dict[str, str]  # node id -> object
    edges: dict[str, tuple[str, str, str]]  # edge id -> (src node, tgt node, morphism)


@dataclass
class Cone:
    apex: str
    legs: dict[str, str]  # node id -> morphism apex -> D(node)


def discrete_pair(a, b):
    return Diagram({"l": a, "r": b}, {})


def parallel_pair(C: FinCat, f, g):
    a, b = C.mor_src[f], C.mor_tgt[f]
    return Diagram({"l": a, "r": b}, {"f": ("l", "r", f), "g": ("l", "r", g)})


def empty_diagram():
    return Diagram({}, {})


def is_cone(C: FinCat, D: Diagram, cone: Cone) -> bool:
    for n, obj in D.nodes.items():
        leg = cone.legs.get(n)
        if leg is None or C.mor_src[leg] != cone.apex or C.mor_tgt[leg] != obj:
            return False
    for (i, j, f) in D.edges.values():
        if C.comp[(f, cone.legs[i])] != cone.legs[j]:
            return False
    return True


def enumerate_cones(C: FinCat, D: Diagram, apex: str):
    nodes = sorted(D.nodes)
    choices = [C.hom(apex, D.nodes[n]) for n in nodes]
    for combo in itertools.product(*choices):
        cone = Cone(apex, dict(zip(nodes, combo)))
        if all(C.comp[(f, cone.legs[i])] == cone.legs[j]
               for (i, j, f) in D.edges.values()):
            yield cone


def mediators(C: FinCat, limit: Cone, other: Cone):
    return [m for m in C.hom(other.apex, limit.apex)
            if all(C.comp[(limit.legs[n], m)] == other.legs[n]
                   for n in limit.legs)]


def is_limiting_cone(C: FinCat, D: Diagram, cone: Cone) -> bool:
    """Exhaustive universal-property check: every competing cone admits
    exactly one mediating morphism."""
    if not is_cone(C, D, cone):
        return False
    for w in C.objects:
        for other in enumerate_cones(C, D, w):
            if len(mediators(C, cone, other)) != 1:
                return False
    return True


@dataclass
class LimitAssignment:
    cat: FinCat
    terminal: str | None = None
    tmap: dict[str, str] = field(default_factory=dict)  # obj -> unique map to terminal
    products: dict[tuple[str, str], tuple[str, str, str]] = field(default_factory=dict)
    equalizers: dict[tuple[str, str], tuple[str, str]] = field(default_factory=dict)

    def is_complete(self) -> bool:
        C = self.cat
        if self.terminal is None:
            return False
        if any(o not in self.tmap for o in C.objects):
            return False
        for a in C.objects:
            for b in C.objects:
                if (a, b) not in self.products:
                    return False
        for f in C.morphisms():
            for g in C.hom(C.mor_src[f], C.mor_tgt[f]):
                if (f, g) not in self.equalizers:
                    return False
        return True


def validate_assignment(A: LimitAssignment) -> list[str]:
    """Each chosen cone must satisfy its universal property (exhaustively)."""
    C = A.cat
    out = []
    if A.terminal is not None:
        cone = Cone(A.terminal, {})
        if not is_limiting_cone(C, empty_diagram(), cone):
            out.append("chosen terminal %s is not terminal" % A.terminal)
        for o, m in A.tmap.items():
            if C.mor_src[m] != o or C.mor_tgt[m] != A.terminal:
                out.append("tmap at %s has wrong endpoints" % o)
    for (a, b), (p, p1, p2) in A.products.items():
        cone = Cone(p, {"l": p1, "r": p2})
        if not is_limiting_cone(C, discrete_pair(a, b), cone):
            out.append("chosen product of (%s, %s) is not a product" % (a, b))
    for (f, g), (e, incl) in A.equalizers.items():
        D = parallel_pair(C, f, g)
        cone = Cone(e, {"l": incl, "r": C.comp[(f, incl)]})
        if C.comp[(f, incl)] != C.comp[(g, incl)]:
            out.append("chosen equalizer of (%s, %s) does not equalize" % (f, g))
        elif not is_limiting_cone(C, D, cone):
            out.append("chosen equalizer of (%s, %s) is not an equalizer" % (f, g))
    return out


def chosen_limit(A: LimitAssignment, D: Diagram) -> Cone:
    """Limit of an arbitrary finite diagram from the chosen pieces.

    Fold the node objects through chosen binary products, then cut down by a
    chosen equalizer per edge.  Raises IncompleteAssignment when a required
    chosen cone is absent.
    """
    C = A.cat
    nodes = sorted(D.nodes)
    if not nodes:
        if A.terminal is None:
            raise IncompleteAssignment("no chosen terminal in %s" % C.name)
        return Cone(A.terminal, {})
    apex = D.nodes[nodes[0]]
    legs = {nodes[0]: C.identities[apex]}
    for n in nodes[1:]:
        key = (apex, D.nodes[n])
        if key not in A.products:
            raise IncompleteAssignment("no chosen product for %s in %s"
                                       % (key, C.name))
        p, p1, p2 = A.products[key]
        legs = {m: C.comp[(leg, p1)] for m, leg in legs.items()}
        legs[n] = p2
        apex = p
    for e in sorted(D.edges):
        i, j, f = D.edges[e]
        u = C.comp[(f, legs[i])]
        v = legs[j]
        if u == v:
            continue
        key = (u, v)
        if key not in A.equalizers:
            raise IncompleteAssignment("no chosen equalizer for %s in %s"
                                       % (key, C.name))
        eq, incl = A.equalizers[key]
        legs = {m: C.comp[(leg, incl)] for m, leg in legs.items()}
        apex = eq
    return Cone(apex, legs)


def map_diagram(F: Functor, D: Diagram) -> Diagram:
    return Diagram({n: F.obj_map[o] for n, o in D.nodes.items()},
                   {e: (i, j, F.mor_map[f])
                    for e, (i, j, f) in D.edges.items()})


def map_cone(F: Functor, cone: Cone) -> Cone:
    return Cone(F.obj_map[cone.apex],
                {n: F.mor_map[m] for n, m in cone.legs.items()})


def check_exact(F: Functor, src_limits: LimitAssignment):
    """True iff F carries every chosen limiting cone of its source to a
    limiting cone in its target (up to universal property, checked
    exhaustively).  Returns (ok, counterexample diagram or None)."""
    C, D = F.source, F.target
    assert src_limits.cat.name == C.name
    if src_limits.terminal is not None:
        cone = Cone(F.obj_map[src_limits.terminal], {})
        if not is_limiting_cone(D, empty_diagram(), cone):
            return False, empty_diagram()
    for (a, b), (p, p1, p2) in sorted(src_limits.products.items()):
        dia = discrete_pair(a, b)
        if not is_limiting_cone(D, map_diagram(F, dia),
                                map_cone(F, Cone(p, {"l": p1, "r": p2}))):
            return False, dia
    for (f, g), (e, incl) in sorted(src_limits.equalizers.items()):
        dia = parallel_pair(C, f, g)
        cone = Cone(e, {"l": incl, "r": C.comp[(f, incl)]})
        if not is_limiting_cone(D, map_diagram(F, dia), map_cone(F, cone)):
            return False, dia
    return True, None
