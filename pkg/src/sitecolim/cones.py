"""Pseudocones over a diagram of categories, and their modifications.

A pseudocone stores one leg functor per index object and one invertible
coherence transformation per 1-cell (every 1-cell, identities included; no
coherence-by-generators compression).  The defining equations:

  pc0   h_{id_A} = id_{h_A}
  pc1   (h_v . Fu) o h_u = h_{vu}          for composable u, v
  pc2   (h_B . Fg) o h_u = h_v             for a 2-cell g : u => v
  pcM   h_u o phi_A = (phi_B . Fu) o g_u   for a modification phi : g => h

are all checked exhaustively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (Budget, FinCat, Functor, NatTrans, compose_functors,
                   enumerate_functors, enumerate_nat_trans, identity_nat,
                   invert_nat, nat_is_invertible, vcomp_nat,
                   whisker_functor_nat, whisker_nat_functor)
from .errors import NonInvertibleComponent
from .twocat import TwoDiagram


@dataclass
class Pseudocone:
    name: str
    diagram: TwoDiagram
    vertex: FinCat
    legs: dict[str, Functor]  # index object -> functor fiber -> vertex
    coherence: dict[str, NatTrans]  # 1-cell u: A->B -> h_u : h_A => h_B . Fu

    def key(self):
        return (tuple((A, f.key()) for A, f in sorted(self.legs.items())),
                tuple((u, n.key()) for u, n in sorted(self.coherence.items())))


@dataclass
class Modification:
    name: str
    source: Pseudocone
    target: Pseudocone
    components: dict[str, NatTrans]  # index object -> phi_A : g_A => h_A

    def key(self):
        return tuple((A, n.key()) for A, n in sorted(self.components.items()))


def check_pseudocone(h: Pseudocone):
    """(ok, first violated equation as text or None)."""
    F = h.diagram
    A = F.index
    C1 = A.cells1
    for B in A.objects():
        leg = h.legs.get(B)
        if leg is None or leg.source.name != F.fibers[B].name \
                or leg.target.name != h.vertex.name:
            return False, "leg at %s missing or mislabelled" % B
    for u in A.one_cells():
        cell = h.coherence.get(u)
        if cell is None:
            return False, "coherence at %s missing" % u
        a, b = C1.mor_src[u], C1.mor_tgt[u]
        if cell.source != h.legs[a] or \
                cell.target != compose_functors(h.legs[b], F.on1[u]):
            return False, "coherence at %s has wrong boundary" % u
        if not nat_is_invertible(cell):
            return False, "coherence at %s not invertible" % u
    for B in A.objects():  # pc0
        if h.coherence[C1.identities[B]] != identity_nat(h.legs[B]):
            return False, "pc0 fails at %s" % B
    for (v, u), w in C1.comp.items():  # pc1
        lhs = vcomp_nat(whisker_nat_functor(h.coherence[v], F.on1[u]),
                        h.coherence[u])
        if lhs.components != h.coherence[w].components:
            return False, "pc1 fails at (%s, %s)" % (v, u)
    for g in A.two_cells():  # pc2
        u, v = A.parallel(g)
        b = C1.mor_tgt[u]
        lhs = vcomp_nat(whisker_functor_nat(h.legs[b], F.on2[g]),
                        h.coherence[u])
        if lhs.components != h.coherence[v].components:
            return False, "pc2 fails at %s" % g
    return True, None


def check_modification(phi: Modification):
    """(ok, first violated 1-cell or None)."""
    g, h = phi.source, phi.target
    F = g.diagram
    if h.diagram is not F and h.diagram.name != F.name:
        return False, "boundary cones live over different diagrams"
    if g.vertex.name != h.vertex.name:
        return False, "boundary cones have different vertices"
    for B in F.index.objects():
        c = phi.components.get(B)
        if c is None or c.source != g.legs[B] or c.target != h.legs[B]:
            return False, "component at %s missing or mislabelled" % B
    C1 = F.index.cells1
    for u in F.index.one_cells():
        a, b = C1.mor_src[u], C1.mor_tgt[u]
        lhs = vcomp_nat(h.coherence[u], phi.components[a])
        rhs = vcomp_nat(whisker_nat_functor(phi.components[b], F.on1[u]),
                        g.coherence[u])
        if lhs.components != rhs.components:
            return False, u
    return True, None


def identity_modification(h: Pseudocone) -> Modification:
    return Modification("id_%s" % h.name, h, h,
                        {A: identity_nat(h.legs[A]) for A in h.legs})


def compose_modifications(psi: Modification, phi: Modification) -> Modification:
    """psi after phi, componentwise vertical composition."""
    if psi.source.key() != phi.target.key():
        raise ValueError("boundary mismatch composing modifications")
    return Modification("%s.%s" % (psi.name, phi.name), phi.source, psi.target,
                        {A: vcomp_nat(psi.components[A], phi.components[A])
                         for A in phi.components})


def postcompose_cone(h: Pseudocone, s: Functor) -> Pseudocone:
    """Whisker a cone to Z with a functor s : Z -> X."""
    assert s.source.name == h.vertex.name
    return Pseudocone("%s.%s" % (s.name, h.name), h.diagram, s.target,
                      {A: compose_functors(s, f) for A, f in h.legs.items()},
                      {u: whisker_functor_nat(s, n)
                       for u, n in h.coherence.items()})


def postcompose_cell(h: Pseudocone, xi: NatTrans) -> Modification:
    """Whisker a cone with a 2-cell xi : s => t between functors out of the
    vertex; yields a modification s.h => t.h."""
    return Modification("(%s)%s" % (xi.name, h.name),
                        postcompose_cone(h, xi.source),
                        postcompose_cone(h, xi.target),
                        {A: whisker_nat_functor(xi, h.legs[A])
                         for A in h.legs})


def conjugate(g: Pseudocone, phi: dict[str, NatTrans], name="conj"):
    """Transport the cone structure of g along an invertible component
    family phi_A : g_A => h_A.

    h_u := (phi_B . Fu) o g_u o phi_A^{-1}; this is the unique coherence
    structure on the new legs making phi a modification.
    Returns (h, phi as an invertible Modification g -> h).
    """
    F = g.diagram
    C1 = F.index.cells1
    for A, n in phi.items():
        if n.source != g.legs[A]:
            raise ValueError("component at %s does not start at the leg" % A)
        if not nat_is_invertible(n):
            raise NonInvertibleComponent("component at %s not invertible" % A)
    legs = {A: phi[A].target for A in g.legs}
    coherence = {}
    for u in F.index.one_cells():
        a, b = C1.mor_src[u], C1.mor_tgt[u]
        coherence[u] = vcomp_nat(
            vcomp_nat(whisker_nat_functor(phi[b], F.on1[u]), g.coherence[u]),
            invert_nat(phi[a]))
    h = Pseudocone(name, F, g.vertex, legs, coherence)
    mod = Modification("%s_hat" % name, g, h, dict(phi))
    return h, mod


def enumerate_pseudocones(F: TwoDiagram, X: FinCat,
                          budget: Budget | None = None):
    """All pseudocones of F with vertex X, in a deterministic order.

    Legs range over all functors fiber -> X; coherence over invertible
    transformations per non-identity 1-cell (pc0 pins the identities), then
    pc1/pc2 filter.
    """
    bud = budget if budget is not None else Budget()
    A = F.index
    C1 = A.cells1
    objs = sorted(A.objects())
    leg_choices = [enumerate_functors(F.fibers[B], X, bud) for B in objs]
    non_id = [u for u in A.one_cells()
              if u not in C1.identities.values()]
    results = []
    for combo in itertools.product(*leg_choices):
        legs = dict(zip(objs, combo))
        cell_choices = []
        feasible = True
        for u in non_id:
            a, b = C1.mor_src[u], C1.mor_tgt[u]
            cands = [n for n in enumerate_nat_trans(
                legs[a], compose_functors(legs[b], F.on1[u]), bud)
                if nat_is_invertible(n)]
            if not cands:
                feasible = False
                break
            cell_choices.append(cands)
        if not feasible:
            continue
        for cells in itertools.product(*cell_choices):
            bud.charge()
            coherence = dict(zip(non_id, cells))
            for B in objs:
                coherence[C1.identities[B]] = identity_nat(legs[B])
            cone = Pseudocone("pc%d" % len(results), F, X, legs, coherence)
            if check_pseudocone(cone)[0]:
                results.append(cone)
    return results


def enumerate_modifications(g: Pseudocone, h: Pseudocone,
                            budget: Budget | None = None):
    """All modifications g => h, deterministic order."""
    bud = budget if budget is not None else Budget()
    objs = sorted(g.legs)
    choices = [enumerate_nat_trans(g.legs[A], h.legs[A], bud) for A in objs]
    results = []
    for combo in itertools.product(*choices):
        bud.charge()
        mod = Modification("m%d" % len(results), g, h, dict(zip(objs, combo)))
        if check_modification(mod)[0]:
            results.append(mod)
    return results
