"""Finite categories given by explicit composition tables.

Everything downstream is enumerative, so categories are stored fully
materialized: every hom-set is listed and composition is a total table on
composable pairs.  Morphism identifiers are opaque strings, unique within
their category; equality is identifier equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceeded, SaturationExceeded

DEFAULT_BUDGET = 10**6


class Budget:
    """Counts candidate assignments; raises instead of silently truncating."""

    def __init__(self, limit=DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def charge(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                "enumeration used %d candidates (budget %d)" % (self.used, self.limit)
            )


@dataclass
class FinCat:
    name: str
    objects: tuple[str, ...]
    mor_src: dict[str, str]
    mor_tgt: dict[str, str]
    identities: dict[str, str]
    comp: dict[tuple[str, str], str]
    _hom: dict = field(default=None, repr=False, compare=False)
    _inv: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.objects = tuple(self.objects)
        hom = {}
        for m in sorted(self.mor_src):
            hom.setdefault((self.mor_src[m], self.mor_tgt[m]), []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._inv = None

    def morphisms(self):
        return sorted(self.mor_src)

    def hom(self, a, b):
        return self._hom.get((a, b), ())

    def src(self, m):
        return self.mor_src[m]

    def tgt(self, m):
        return self.mor_tgt[m]

    def compose(self, g, f):
        """g after f."""
        return self.comp[(g, f)]

    def compose_path(self, *ms):
        """compose_path(h, g, f) = h . g . f"""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def is_identity(self, m):
        return self.identities.get(self.mor_src[m]) == m

    def inverse(self, m):
        """Inverse morphism, or None.  Computed once per category."""
        if self._inv is None:
            inv = {}
            for f in self.morphisms():
                a, b = self.mor_src[f], self.mor_tgt[f]
                for g in self.hom(b, a):
                    if (self.comp.get((g, f)) == self.identities[a]
                            and self.comp.get((f, g)) == self.identities[b]):
                        inv[f] = g
                        break
            self._inv = inv
        return self._inv.get(m)

    def is_iso(self, m):
        return self.inverse(m) is not None


def validate_category(C: FinCat) -> list[str]:
    """Every violated constraint, as a human-readable line.  Empty iff C is
    a category."""
    out = []
    seen = set()
    for o in C.objects:
        if o in seen:
            out.append("duplicate object %s" % o)
        seen.add(o)
    for m in C.morphisms():
        if C.mor_src[m] not in seen:
            out.append("morphism %s has unknown source %s" % (m, C.mor_src[m]))
        if C.mor_tgt[m] not in seen:
            out.append("morphism %s has unknown target %s" % (m, C.mor_tgt[m]))
    for o in C.objects:
        i = C.identities.get(o)
        if i is None:
            out.append("object %s has no identity" % o)
        elif i not in C.mor_src:
            out.append("identity %s of %s is not a morphism" % (i, o))
        elif C.mor_src[i] != o or C.mor_tgt[i] != o:
            out.append("identity %s of %s has wrong endpoints" % (i, o))
    if out:
        return out
    mors = C.morphisms()
    for f in mors:
        for g in mors:
            composable = C.mor_tgt[f] == C.mor_src[g]
            h = C.comp.get((g, f))
            if composable and h is None:
                out.append("missing composite %s . %s" % (g, f))
            elif not composable and h is not None:
                out.append("spurious composite %s . %s" % (g, f))
            elif h is not None:
                if h not in C.mor_src:
                    out.append("composite %s . %s = %s is not a morphism" % (g, f, h))
                elif (C.mor_src[h] != C.mor_src[f]
                      or C.mor_tgt[h] != C.mor_tgt[g]):
                    out.append("composite %s . %s = %s has wrong endpoints" % (g, f, h))
    if out:
        return out
    for f in mors:
        i_s = C.identities[C.mor_src[f]]
        i_t = C.identities[C.mor_tgt[f]]
        if C.comp[(f, i_s)] != f:
            out.append("identity law fails: %s . %s != %s" % (f, i_s, f))
        if C.comp[(i_t, f)] != f:
            out.append("identity law fails: %s . %s != %s" % (i_t, f, f))
    for f in mors:
        for g in mors:
            if C.mor_tgt[f] != C.mor_src[g]:
                continue
            for h in mors:
                if C.mor_tgt[g] != C.mor_src[h]:
                    continue
                if C.comp[(h, C.comp[(g, f)])] != C.comp[(C.comp[(h, g)], f)]:
                    out.append(
                        "associativity fails on (%s, %s, %s)" % (h, g, f))
    return out


# ---------------------------------------------------------------------------
# categories from presentations


@dataclass
class Presentation:
    objects: tuple[str, ...]
    generators: tuple[tuple[str, str, str], ...]  # (name, src, tgt)
    # each side is a path of generator names in diagrammatic order (applied
    # left to right); an empty path denotes the identity at the shared endpoint
    relations: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...] = ()


def _paths_up_to(pres: Presentation, bound: int):
    by_src = {}
    tgt_of = {}
    for name, s, t in pres.generators:
        by_src.setdefault(s, []).append(name)
        tgt_of[name] = t
    paths = []  # (src_obj, names)
    for o in pres.objects:
        frontier = [(o, ())]
        paths.extend(frontier)
        for _ in range(bound):
            nxt = []
            for src, names in frontier:
                end = tgt_of[names[-1]] if names else src
                for g in sorted(by_src.get(end, ())):
                    nxt.append((src, names + (g,)))
            paths.extend(nxt)
            frontier = nxt
    return paths, tgt_of


def build_category(pres: Presentation, bound: int, name="presented") -> FinCat:
    """Saturate paths up to length `bound` modulo the relations.

    Congruence classes are computed over paths of length <= 2*bound so that
    composites of two bounded normal forms stay inside the search space.
    Raises SaturationExceeded when a composite falls into a class whose
    shortest representative is longer than `bound`.
    """
    paths, tgt_of = _paths_up_to(pres, 2 * bound)
    index = {p: i for i, p in enumerate(paths)}
    parent = list(range(len(paths)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            return True
        return False

    changed = True
    while changed:
        changed = False
        for src, names in paths:
            for lhs, rhs in pres.relations:
                n = len(lhs)
                for k in range(len(names) - n + 1):
                    if names[k:k + n] == lhs:
                        new = names[:k] + rhs + names[k + n:]
                        j = index.get((src, new))
                        if j is not None and union(index[(src, names)], j):
                            changed = True
                for k in range(len(names) - len(rhs) + 1):
                    if names[k:k + len(rhs)] == rhs:
                        new = names[:k] + lhs + names[k + len(rhs):]
                        j = index.get((src, new))
                        if j is not None and union(index[(src, names)], j):
                            changed = True

    classes = {}
    for i, p in enumerate(paths):
        classes.setdefault(find(i), []).append(p)
    canon = {}
    for root, members in classes.items():
        rep = min(members, key=lambda p: (len(p[1]), p))
        for m in members:
            canon[m] = rep

    def path_name(p):
        src, names = p
        return "id_%s" % src if not names else ".".join(names)

    def path_tgt(p):
        src, names = p
        return tgt_of[names[-1]] if names else src

    reps = sorted({canon[p] for p in paths if len(canon[p][1]) <= bound},
                  key=lambda p: (len(p[1]), p))
    mor_src = {path_name(p): p[0] for p in reps}
    mor_tgt = {path_name(p): path_tgt(p) for p in reps}
    identities = {o: "id_%s" % o for o in pres.objects}
    comp = {}
    for p in reps:
        for q in reps:
            if path_tgt(p) != q[0]:
                continue
            # q after p, diagrammatic concatenation
            whole = (p[0], p[1] + q[1])
            rep = canon.get(whole)
            if rep is None or len(rep[1]) > bound:
                raise SaturationExceeded(
                    "composite %s then %s does not normalize within bound %d"
                    % (path_name(p), path_name(q), bound))
            comp[(path_name(q), path_name(p))] = path_name(rep)
    return FinCat(name, tuple(pres.objects), mor_src, mor_tgt, identities, comp)


# ---------------------------------------------------------------------------
# functors and natural transformations


@dataclass
class Functor:
    name: str
    source: FinCat
    target: FinCat
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def on_obj(self, o):
        return self.obj_map[o]

    def on_mor(self, m):
        return self.mor_map[m]

    def key(self):
        return (tuple(sorted(self.obj_map.items())),
                tuple(sorted(self.mor_map.items())))

    def __eq__(self, other):
        return (isinstance(other, Functor)
                and self.source.name == other.source.name
                and self.target.name == other.target.name
                and self.obj_map == other.obj_map
                and self.mor_map == other.mor_map)


def identity_functor(C: FinCat) -> Functor:
    return Functor("id_%s" % C.name, C, C,
                   {o: o for o in C.objects},
                   {m: m for m in C.morphisms()})


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G after F."""
    assert F.target.name == G.source.name
    return Functor("%s.%s" % (G.name, F.name), F.source, G.target,
                   {o: G.obj_map[F.obj_map[o]] for o in F.source.objects},
                   {m: G.mor_map[F.mor_map[m]] for m in F.source.morphisms()})


def validate_functor(F: Functor) -> list[str]:
    C, D = F.source, F.target
    out = []
    for o in C.objects:
        if F.obj_map.get(o) not in D.objects:
            out.append("object %s not mapped into target" % o)
    for m in C.morphisms():
        fm = F.mor_map.get(m)
        if fm not in D.mor_src:
            out.append("morphism %s not mapped into target" % m)
        elif (D.mor_src[fm] != F.obj_map[C.mor_src[m]]
              or D.mor_tgt[fm] != F.obj_map[C.mor_tgt[m]]):
            out.append("morphism %s image has wrong endpoints" % m)
    if out:
        return out
    for o in C.objects:
        if F.mor_map[C.identities[o]] != D.identities[F.obj_map[o]]:
            out.append("identity at %s not preserved" % o)
    for (g, f), h in C.comp.items():
        if D.comp[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            out.append("composition %s . %s not preserved" % (g, f))
    return out


def enumerate_functors(C: FinCat, D: FinCat, budget: Budget | None = None):
    """All functors C -> D in a deterministic order.

    Backtracks over object images first (pruning on empty hom-sets), then
    over images of non-identity morphisms, checking each composition-table
    entry as soon as all three of its morphisms have images.
    """
    bud = budget if budget is not None else Budget()
    objs = sorted(C.objects)
    mors = [m for m in C.morphisms() if not C.is_identity(m)]
    comp_items = list(C.comp.items())
    results = []

    def mor_assigned(omap, mmap, m):
        if C.is_identity(m):
            return D.identities[omap[C.mor_src[m]]]
        return mmap.get(m)

    def assign_mors(omap, mmap, i):
        if i == len(mors):
            results.append(Functor(
                "F%d" % len(results), C, D, dict(omap),
                {m: mor_assigned(omap, mmap, m) for m in C.morphisms()}))
            return
        m = mors[i]
        for cand in D.hom(omap[C.mor_src[m]], omap[C.mor_tgt[m]]):
            bud.charge()
            mmap[m] = cand
            ok = True
            for (g, f), h in comp_items:
                ig = mor_assigned(omap, mmap, g)
                if ig is None:
                    continue
                iff = mor_assigned(omap, mmap, f)
                if iff is None:
                    continue
                ih = mor_assigned(omap, mmap, h)
                if ih is not None and D.comp[(ig, iff)] != ih:
                    ok = False
                    break
            if ok:
                assign_mors(omap, mmap, i + 1)
            del mmap[m]

    def assign_objs(omap, i):
        if i == len(objs):
            assign_mors(omap, {}, 0)
            return
        o = objs[i]
        for cand in sorted(D.objects):
            bud.charge()
            omap[o] = cand
            ok = True
            for m in mors:
                s, t = C.mor_src[m], C.mor_tgt[m]
                if s in omap and t in omap and not D.hom(omap[s], omap[t]):
                    ok = False
                    break
            if ok:
                assign_objs(omap, i + 1)
            del omap[o]

    assign_objs({}, 0)
    return results


@dataclass
class NatTrans:
    name: str
    source: Functor
    target: Functor
    components: dict[str, str]  # object of source cat -> morphism of target cat

    def at(self, o):
        return self.components[o]

    def key(self):
        return tuple(sorted(self.components.items()))

    def __eq__(self, other):
        return (isinstance(other, NatTrans)
                and self.source == other.source
                and self.target == other.target
                and self.components == other.components)


def identity_nat(F: Functor) -> NatTrans:
    return NatTrans("id", F, F,
                    {o: F.target.identities[F.obj_map[o]]
                     for o in F.source.objects})


def validate_nat_trans(a: NatTrans) -> list[str]:
    F, G = a.source, a.target
    D = F.target
    out = []
    for o in F.source.objects:
        m = a.components.get(o)
        if m not in D.mor_src:
            out.append("component at %s is not a morphism" % o)
        elif D.mor_src[m] != F.obj_map[o] or D.mor_tgt[m] != G.obj_map[o]:
            out.append("component at %s has wrong endpoints" % o)
    if out:
        return out
    for m in F.source.morphisms():
        s, t = F.source.mor_src[m], F.source.mor_tgt[m]
        if D.comp[(G.mor_map[m], a.components[s])] != \
                D.comp[(a.components[t], F.mor_map[m])]:
            out.append("naturality fails at %s" % m)
    return out


def vcomp_nat(b: NatTrans, a: NatTrans) -> NatTrans:
    """b after a (vertical composition)."""
    D = a.source.target
    return NatTrans("%s.%s" % (b.name, a.name), a.source, b.target,
                    {o: D.comp[(b.components[o], a.components[o])]
                     for o in a.components})


def hcomp_nat(b: NatTrans, a: NatTrans) -> NatTrans:
    """Horizontal composite: a between C -> D, b between D -> E."""
    E = b.source.target
    H = b.source
    return NatTrans("%s*%s" % (b.name, a.name),
                    compose_functors(b.source, a.source),
                    compose_functors(b.target, a.target),
                    {o: E.comp[(b.components[a.target.obj_map[o]],
                                H.mor_map[a.components[o]])]
                     for o in a.components})


def whisker_functor_nat(H: Functor, a: NatTrans) -> NatTrans:
    """H a : H.F => H.G for a : F => G with F, G landing in H's source."""
    return NatTrans("%s(%s)" % (H.name, a.name),
                    compose_functors(H, a.source),
                    compose_functors(H, a.target),
                    {o: H.mor_map[a.components[o]] for o in a.components})


def whisker_nat_functor(a: NatTrans, K: Functor) -> NatTrans:
    """a K : F.K => G.K for a : F => G and K into F's source."""
    return NatTrans("(%s)%s" % (a.name, K.name),
                    compose_functors(a.source, K),
                    compose_functors(a.target, K),
                    {o: a.components[K.obj_map[o]] for o in K.source.objects})


def nat_is_invertible(a: NatTrans) -> bool:
    D = a.source.target
    return all(D.is_iso(m) for m in a.components.values())


def invert_nat(a: NatTrans) -> NatTrans:
    D = a.source.target
    return NatTrans("%s^-1" % a.name, a.target, a.source,
                    {o: D.inverse(m) for o, m in a.components.items()})


def enumerate_nat_trans(F: Functor, G: Functor, budget: Budget | None = None):
    """All natural transformations F => G, deterministic order."""
    assert F.source.name == G.source.name and F.target.name == G.target.name
    bud = budget if budget is not None else Budget()
    C, D = F.source, F.target
    objs = sorted(C.objects)
    mors = C.morphisms()
    results = []

    def rec(comp, i):
        if i == len(objs):
            results.append(NatTrans("n%d" % len(results), F, G, dict(comp)))
            return
        o = objs[i]
        for cand in D.hom(F.obj_map[o], G.obj_map[o]):
            bud.charge()
            comp[o] = cand
            ok = True
            for m in mors:
                s, t = C.mor_src[m], C.mor_tgt[m]
                if s in comp and t in comp:
                    if D.comp[(G.mor_map[m], comp[s])] != \
                            D.comp[(comp[t], F.mor_map[m])]:
                        ok = False
                        break
            if ok:
                rec(comp, i + 1)
            del comp[o]

    rec({}, 0)
    return results


# ---------------------------------------------------------------------------
# equivalence search


@dataclass
class EquivalenceSearch:
    """Outcome of the equivalence hunt.

    witness is (F, G, eta, eps) with eta : G.F => id_C and eps : F.G => id_D
    both invertible, or None.  exhausted distinguishes a completed search
    from one cut short by the budget (the latter raises instead).
    """
    witness: tuple | None
    exhausted: bool


def _fully_faithful(F: Functor):
    C, D = F.source, F.target
    for a in C.objects:
        for b in C.objects:
            images = [F.mor_map[m] for m in C.hom(a, b)]
            if len(set(images)) != len(images):
                return False
            if set(images) != set(D.hom(F.obj_map[a], F.obj_map[b])):
                return False
    return True


def _essentially_surjective(F: Functor):
    """Map each target object to (preimage object, iso F(c) -> d), or None."""
    C, D = F.source, F.target
    out = {}
    for d in sorted(D.objects):
        found = None
        for c in sorted(C.objects):
            for m in D.hom(F.obj_map[c], d):
                if D.is_iso(m):
                    found = (c, m)
                    break
            if found:
                break
        if not found:
            return None
        out[d] = found
    return out


def equivalence_witness(C: FinCat, D: FinCat,
                        budget: Budget | None = None) -> EquivalenceSearch:
    """Search for an equivalence of categories C ~ D.

    Scans functors C -> D for one that is fully faithful and essentially
    surjective, then constructs the quasi-inverse and both isomorphisms
    directly (no second functor enumeration).
    """
    bud = budget if budget is not None else Budget()
    for F in enumerate_functors(C, D, bud):
        if not _fully_faithful(F):
            continue
        surj = _essentially_surjective(F)
        if surj is None:
            continue
        obj_map = {d: surj[d][0] for d in D.objects}
        phi = {d: surj[d][1] for d in D.objects}  # F(Gd) -> d
        mor_map = {}
        for g in D.morphisms():
            d, d2 = D.mor_src[g], D.mor_tgt[g]
            want = D.compose_path(D.inverse(phi[d2]), g, phi[d])
            pre = [m for m in C.hom(obj_map[d], obj_map[d2])
                   if F.mor_map[m] == want]
            assert len(pre) == 1
            mor_map[g] = pre[0]
        G = Functor("Q", D, C, obj_map, mor_map)
        eps = NatTrans("eps", compose_functors(F, G), identity_functor(D), phi)
        eta_comp = {}
        for c in C.objects:
            want = phi[F.obj_map[c]]
            pre = [m for m in C.hom(G.obj_map[F.obj_map[c]], c)
                   if F.mor_map[m] == want]
            assert len(pre) == 1
            eta_comp[c] = pre[0]
        eta = NatTrans("eta", compose_functors(G, F), identity_functor(C),
                       eta_comp)
        return EquivalenceSearch((F, G, eta, eps), exhausted=False)
    return EquivalenceSearch(None, exhausted=True)
