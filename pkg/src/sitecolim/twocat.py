"""Finite index 2-categories and strict 2-functors into categories.

The 1-cell layer of a TwoCat is itself a FinCat; 2-cells sit on top with
vertical/horizontal composition tables.  Diagrams are strict 2-functors
index -> Cat; data that arrives in the opposite orientation is flipped at
ingestion (opposite_two_cat) and flagged, so everything downstream sees one
covariant convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (FinCat, Functor, NatTrans, compose_functors, hcomp_nat,
                   identity_functor, identity_nat, validate_category,
                   validate_functor, validate_nat_trans, vcomp_nat)


@dataclass
class TwoCat:
    name: str
    cells1: FinCat  # objects and 1-cells
    two_src: dict[str, str]  # 2-cell -> source 1-cell
    two_tgt: dict[str, str]  # 2-cell -> target 1-cell (parallel to source)
    two_id: dict[str, str]  # 1-cell -> identity 2-cell
    vcomp: dict[tuple[str, str], str]
    hcomp: dict[tuple[str, str], str]  # (beta over B->C, alpha over A->B)

    def objects(self):
        return self.cells1.objects

    def one_cells(self):
        return self.cells1.morphisms()

    def two_cells(self):
        return sorted(self.two_src)

    def parallel(self, g):
        """(source 1-cell, target 1-cell) of a 2-cell."""
        return self.two_src[g], self.two_tgt[g]

    def two_cells_between(self, u, v):
        return tuple(g for g in self.two_cells()
                     if self.two_src[g] == u and self.two_tgt[g] == v)

    def vinverse(self, g):
        u, v = self.parallel(g)
        for h in self.two_cells_between(v, u):
            if (self.vcomp.get((h, g)) == self.two_id[u]
                    and self.vcomp.get((g, h)) == self.two_id[v]):
                return h
        return None

    def whisker_post(self, w, g):
        """w . g for a 1-cell w composable after the boundary of g."""
        return self.hcomp[(self.two_id[w], g)]

    def whisker_pre(self, g, w):
        """g . w for a 1-cell w composable before the boundary of g."""
        return self.hcomp[(g, self.two_id[w])]


def two_cat_from_cat(C: FinCat, name=None) -> TwoCat:
    """View a 1-category as a 2-category with only identity 2-cells."""
    two_id = {u: "2id_%s" % u for u in C.morphisms()}
    two_src = {g: u for u, g in two_id.items()}
    two_tgt = dict(two_src)
    vcomp = {(g, g): g for g in two_id.values()}
    hcomp = {}
    for (v, u), w in C.comp.items():
        hcomp[(two_id[v], two_id[u])] = two_id[w]
    return TwoCat(name or C.name, C, two_src, two_tgt, two_id, vcomp, hcomp)


def validate_two_cat(A: TwoCat) -> list[str]:
    """Enrichment and interchange constraints, exhaustively."""
    out = list(validate_category(A.cells1))
    if out:
        return ["1-cell layer: %s" % v for v in out]
    C = A.cells1
    cells = A.two_cells()
    for g in cells:
        u, v = A.parallel(g)
        if u not in C.mor_src or v not in C.mor_src:
            out.append("2-cell %s has unknown boundary" % g)
        elif (C.mor_src[u], C.mor_tgt[u]) != (C.mor_src[v], C.mor_tgt[v]):
            out.append("2-cell %s boundary not parallel" % g)
    for u in C.morphisms():
        g = A.two_id.get(u)
        if g is None or A.two_src.get(g) != u or A.two_tgt.get(g) != u:
            out.append("1-cell %s has no valid identity 2-cell" % u)
    if out:
        return out
    # each hom-category is a category
    for g in cells:
        for h in cells:
            composable = A.two_tgt[g] == A.two_src[h]
            k = A.vcomp.get((h, g))
            if composable and k is None:
                out.append("missing vertical composite %s . %s" % (h, g))
            elif not composable and k is not None:
                out.append("spurious vertical composite %s . %s" % (h, g))
            elif k is not None and (A.two_src[k] != A.two_src[g]
                                    or A.two_tgt[k] != A.two_tgt[h]):
                out.append("vertical composite %s . %s mislabelled" % (h, g))
    if out:
        return out
    for g in cells:
        u, v = A.parallel(g)
        if A.vcomp[(g, A.two_id[u])] != g or A.vcomp[(A.two_id[v], g)] != g:
            out.append("vertical identity law fails at %s" % g)
    for g in cells:
        for h in cells:
            if A.two_tgt[g] != A.two_src[h]:
                continue
            for k in cells:
                if A.two_tgt[h] != A.two_src[k]:
                    continue
                if A.vcomp[(k, A.vcomp[(h, g)])] != A.vcomp[(A.vcomp[(k, h)], g)]:
                    out.append("vertical associativity fails at (%s,%s,%s)"
                               % (k, h, g))
    # horizontal layer
    def h_composable(b, a):
        return C.mor_tgt[A.two_src[a]] == C.mor_src[A.two_src[b]]

    for a in cells:
        for b in cells:
            c = A.hcomp.get((b, a))
            if h_composable(b, a) and c is None:
                out.append("missing horizontal composite %s * %s" % (b, a))
            elif not h_composable(b, a) and c is not None:
                out.append("spurious horizontal composite %s * %s" % (b, a))
            elif c is not None:
                su = C.comp[(A.two_src[b], A.two_src[a])]
                tv = C.comp[(A.two_tgt[b], A.two_tgt[a])]
                if A.two_src[c] != su or A.two_tgt[c] != tv:
                    out.append("horizontal composite %s * %s mislabelled"
                               % (b, a))
    if out:
        return out
    for u in C.morphisms():
        for v in C.morphisms():
            if C.mor_tgt[u] != C.mor_src[v]:
                continue
            if A.hcomp[(A.two_id[v], A.two_id[u])] != A.two_id[C.comp[(v, u)]]:
                out.append("horizontal identity law fails at (%s, %s)" % (v, u))
    for a in cells:
        for b in cells:
            if not h_composable(b, a):
                continue
            for a2 in cells:
                if A.two_tgt[a] != A.two_src[a2]:
                    continue
                for b2 in cells:
                    if A.two_tgt[b] != A.two_src[b2]:
                        continue
                    lhs = A.hcomp[(A.vcomp[(b2, b)], A.vcomp[(a2, a)])]
                    rhs = A.vcomp[(A.hcomp[(b2, a2)], A.hcomp[(b, a)])]
                    if lhs != rhs:
                        out.append("interchange fails at (%s,%s,%s,%s)"
                                   % (b2, b, a2, a))
    return out


def opposite_two_cat(A: TwoCat) -> TwoCat:
    """Reverse 1-cells, keep 2-cells; involutive."""
    C = A.cells1
    op = FinCat(C.name + "^op", C.objects, dict(C.mor_tgt), dict(C.mor_src),
                dict(C.identities), {(f, g): h for (g, f), h in C.comp.items()})
    return TwoCat(A.name + "^op", op, dict(A.two_src), dict(A.two_tgt),
                  dict(A.two_id),
                  dict(A.vcomp),
                  {(a, b): c for (b, a), c in A.hcomp.items()})


@dataclass
class TwoDiagram:
    """A strict 2-functor index -> Cat.

    covariant=False records that the data was ingested from the
    opposite-orientation convention; the stored index is already flipped.
    """
    name: str
    index: TwoCat
    fibers: dict[str, FinCat]
    on1: dict[str, Functor]
    on2: dict[str, NatTrans]
    covariant: bool = True

    def fiber(self, A):
        return self.fibers[A]


def constant_diagram(index: TwoCat, C: FinCat, name=None) -> TwoDiagram:
    on1 = {u: identity_functor(C) for u in index.one_cells()}
    on2 = {g: identity_nat(identity_functor(C)) for g in index.two_cells()}
    return TwoDiagram(name or "const_%s" % C.name, index,
                      {A: C for A in index.objects()}, on1, on2)


def check_two_functor(F: TwoDiagram):
    """Strict functoriality at all three levels.  (ok, counterexample)."""
    A = F.index
    C1 = A.cells1
    for B in A.objects():
        if B not in F.fibers:
            return False, "no fiber at %s" % B
    for u in A.one_cells():
        f = F.on1.get(u)
        if f is None:
            return False, "no functor at %s" % u
        if (f.source.name != F.fibers[C1.mor_src[u]].name
                or f.target.name != F.fibers[C1.mor_tgt[u]].name):
            return False, "functor at %s has wrong boundary" % u
        if validate_functor(f):
            return False, "functor at %s is invalid" % u
    for B in A.objects():
        if F.on1[C1.identities[B]] != identity_functor(F.fibers[B]):
            return False, "identity 1-cell at %s not sent to identity" % B
    for (v, u), w in C1.comp.items():
        if F.on1[w] != compose_functors(F.on1[v], F.on1[u]):
            return False, "composition %s . %s not preserved" % (v, u)
    for g in A.two_cells():
        n = F.on2.get(g)
        if n is None:
            return False, "no transformation at %s" % g
        u, v = A.parallel(g)
        if n.source != F.on1[u] or n.target != F.on1[v]:
            return False, "transformation at %s has wrong boundary" % g
        if validate_nat_trans(n):
            return False, "transformation at %s is invalid" % g
    for u in A.one_cells():
        if F.on2[A.two_id[u]] != identity_nat(F.on1[u]):
            return False, "identity 2-cell at %s not sent to identity" % u
    for (h, g), k in A.vcomp.items():
        if F.on2[k] != vcomp_nat(F.on2[h], F.on2[g]):
            return False, "vertical composition %s . %s not preserved" % (h, g)
    for (b, a), c in A.hcomp.items():
        if F.on2[c] != hcomp_nat(F.on2[b], F.on2[a]):
            return False, "horizontal composition %s * %s not preserved" % (b, a)
    return True, None


def check_2filtered(A: TwoCat):
    """Conditions F1-F3 by exhaustive search.  (ok, failing datum)."""
    C = A.cells1
    objs = sorted(C.objects)
    for a in objs:  # F1: cospans
        for b in objs:
            if not any(C.hom(a, c) and C.hom(b, c) for c in objs):
                return False, ("F1", a, b)
    for a in objs:  # F2: invertibly merge parallel 1-cells
        for b in objs:
            for u in C.hom(a, b):
                for v in C.hom(a, b):
                    ok = False
                    for c in objs:
                        for w in C.hom(b, c):
                            wu, wv = C.comp[(w, u)], C.comp[(w, v)]
                            for g in A.two_cells_between(wu, wv):
                                if A.vinverse(g) is not None:
                                    ok = True
                                    break
                            if ok:
                                break
                        if ok:
                            break
                    if not ok:
                        return False, ("F2", u, v)
    for g in A.two_cells():  # F3: equalize parallel 2-cells
        for h in A.two_cells():
            if A.parallel(g) != A.parallel(h):
                continue
            u, _ = A.parallel(g)
            b = C.mor_tgt[u]
            ok = False
            for c in objs:
                for w in C.hom(b, c):
                    if A.whisker_post(w, g) == A.whisker_post(w, h):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                return False, ("F3", g, h)
    return True, None


def classical_filtered(C: FinCat):
    """Direct filteredness test for plain categories (independent of
    check_2filtered): nonempty, cospans, coequalizing arrows."""
    if not C.objects:
        return False
    for a in C.objects:
        for b in C.objects:
            if not any(C.hom(a, c) and C.hom(b, c) for c in C.objects):
                return False
    for f in C.morphisms():
        for g in C.hom(C.mor_src[f], C.mor_tgt[f]):
            if not any(C.comp[(h, f)] == C.comp[(h, g)]
                       for c in C.objects for h in C.hom(C.mor_tgt[f], c)):
                return False
    return True
