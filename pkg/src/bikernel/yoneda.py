"""Representables, the Yoneda lemma on finite instances, full images and restrictions.

Pseudofunctors from op B into categories are semantic: every object goes to
an actual finite category, every 1-cell to a functor. Their 1-cells and
composable pairs are indexed as in ``op_bicat(B)``, so a 1-cell f : b1 -> b2
of B acts as a functor P(b2) -> P(b1). Categories compose strictly, so the
unitors and associators of the target are identities and drop out of the laws.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .budget import Budget, as_budget
from .core import BicatPresentation, LawReport, Violation, hom_category, op_bicat
from .display import DispBicatPresentation, fullsub_disp
from .errors import ConstructionFailed, PreconditionFailed, TypeMismatch
from .fincat import (
    FiniteCategory, Functor, NatTrans, compose_functors, enumerate_functors, enumerate_nattrans,
    identity_functor, identity_nattrans, is_equivalence, is_natural_iso, lwhisker_nattrans,
    nattrans_problems, rwhisker_nattrans, vcomp_nattrans,
)
from .psfun import PseudofunctorData
from .univalence import check_local_univalence


@dataclass(frozen=True, eq=False)
class CatValuedPsfunctor:
    src: BicatPresentation
    cats: dict[str, FiniteCategory]
    fun: dict[str, Functor]
    nat: dict[str, NatTrans]
    identitor: dict[str, NatTrans]
    compositor: dict[tuple[str, str], NatTrans]

    @property
    def op(self) -> BicatPresentation:
        return _op(self.src)


_OP_CACHE: dict[int, tuple[BicatPresentation, BicatPresentation]] = {}


def _op(B: BicatPresentation) -> BicatPresentation:
    hit = _OP_CACHE.get(id(B))
    if hit is None or hit[0] is not B:
        hit = (B, op_bicat(B))
        _OP_CACHE[id(B)] = hit
    return hit[1]


@dataclass(frozen=True, eq=False)
class CatPstrans:
    src: CatValuedPsfunctor
    tgt: CatValuedPsfunctor
    comp0: dict[str, Functor]
    comp1: dict[str, NatTrans]

    def key(self) -> tuple:
        return (tuple(self.comp0[b].key() for b in self.src.src.objects),
                tuple(self.comp1[f].key() for f in sorted(self.comp1)))


@dataclass(frozen=True, eq=False)
class CatModification:
    src: CatPstrans
    tgt: CatPstrans
    gamma: dict[str, NatTrans]

    def key(self) -> tuple:
        return tuple(self.gamma[b].key() for b in self.src.src.src.objects)


def _show(n: NatTrans) -> str:
    return ",".join(n.comp[a] for a in n.src.src.objects)


class _Laws:
    def __init__(self):
        self.rep = LawReport()

    def eq(self, law: str, cells: tuple, lhs: NatTrans, rhs: NatTrans) -> None:
        self.rep.instances[law] = self.rep.instances.get(law, 0) + 1
        if lhs != rhs:
            self.rep.violations.append(Violation(law, cells, _show(lhs), _show(rhs)))

    def typed(self, what: tuple, n: NatTrans | None, src: Functor, tgt: Functor) -> bool:
        self.rep.instances["typing"] = self.rep.instances.get("typing", 0) + 1
        ok = n is not None and n.src == src and n.tgt == tgt and not nattrans_problems(n)
        if not ok:
            self.rep.violations.append(Violation("typing", what, None, None))
        return ok

    def iso(self, what: tuple, n: NatTrans) -> None:
        self.rep.instances["invertible"] = self.rep.instances.get("invertible", 0) + 1
        if not is_natural_iso(n):
            self.rep.violations.append(Violation("invertible", what, _show(n), None))


V = vcomp_nattrans


def _V(*ns: NatTrans) -> NatTrans:
    out = ns[0]
    for n in ns[1:]:
        out = V(out, n)
    return out


def check_cat_psfunctor(P: CatValuedPsfunctor) -> LawReport:
    Bo = P.op
    r = _Laws()
    for f, (a, b) in Bo.one_cells.items():
        F = P.fun.get(f)
        r.rep.instances["typing"] = r.rep.instances.get("typing", 0) + 1
        if F is None or F.src is not P.cats[a] or F.tgt is not P.cats[b]:
            r.rep.violations.append(Violation("typing", (f,), None, None))
    if not r.rep.ok:
        return r.rep
    for t, (f, g) in Bo.two_cells.items():
        r.typed((t,), P.nat.get(t), P.fun[f], P.fun[g])
    for a in Bo.objects:
        r.typed(("identitor", a), P.identitor.get(a), identity_functor(P.cats[a]), P.fun[Bo.id1[a]])
    for (f, g), h in Bo.comp1.items():
        r.typed(("compositor", f, g), P.compositor.get((f, g)),
                compose_functors(P.fun[f], P.fun[g]), P.fun[h])
    if not r.rep.ok:
        return r.rep
    F1, F2, gam, dl = P.fun, P.nat, P.identitor, P.compositor
    for f in sorted(Bo.one_cells):
        r.eq("id2", (f,), F2[Bo.id2[f]], identity_nattrans(F1[f]))
    for (t, u), tu in sorted(Bo.vcomp.items()):
        r.eq("vcomp", (t, u), F2[tu], V(F2[t], F2[u]))
    for f, (a, b) in sorted(Bo.one_cells.items()):
        Ff = F1[f]
        r.eq("lunitor", (f,), identity_nattrans(Ff),
             _V(rwhisker_nattrans(gam[a], Ff), dl[(Bo.id1[a], f)], F2[Bo.lunitor[f]]))
        r.eq("runitor", (f,), identity_nattrans(Ff),
             _V(lwhisker_nattrans(Ff, gam[b]), dl[(f, Bo.id1[b])], F2[Bo.runitor[f]]))
    for (f, g, h), al in sorted(Bo.lassoc.items()):
        lhs = _V(lwhisker_nattrans(F1[f], dl[(g, h)]), dl[(f, Bo.comp1[(g, h)])], F2[al])
        rhs = _V(rwhisker_nattrans(dl[(f, g)], F1[h]), dl[(Bo.comp1[(f, g)], h)])
        r.eq("lassoc", (f, g, h), lhs, rhs)
    for (f, t), ft in sorted(Bo.lwhisker.items()):
        g1, g2 = Bo.two_cells[t]
        r.eq("lwhisker", (f, t), V(dl[(f, g1)], F2[ft]),
             V(lwhisker_nattrans(F1[f], F2[t]), dl[(f, g2)]))
    for (t, g), tg in sorted(Bo.rwhisker.items()):
        f1, f2 = Bo.two_cells[t]
        r.eq("rwhisker", (t, g), V(dl[(f1, g)], F2[tg]),
             V(rwhisker_nattrans(F2[t], F1[g]), dl[(f2, g)]))
    for a in Bo.objects:
        r.iso(("identitor", a), gam[a])
    for fg in sorted(Bo.comp1):
        r.iso(("compositor",) + fg, dl[fg])
    return r.rep


def check_cat_pstrans(t: CatPstrans) -> LawReport:
    F, G = t.src, t.tgt
    if F.src is not G.src:
        raise TypeMismatch("transformation between pseudofunctors on different bicategories")
    Bo = F.op
    r = _Laws()
    for b in Bo.objects:
        x = t.comp0.get(b)
        r.rep.instances["typing"] = r.rep.instances.get("typing", 0) + 1
        if x is None or x.src is not F.cats[b] or x.tgt is not G.cats[b]:
            r.rep.violations.append(Violation("typing", ("comp0", b), None, None))
    if not r.rep.ok:
        return r.rep
    e0, e1 = t.comp0, t.comp1
    for f, (X, Y) in sorted(Bo.one_cells.items()):
        r.typed(("comp1", f), e1.get(f), compose_functors(e0[X], G.fun[f]),
                compose_functors(F.fun[f], e0[Y]))
    if not r.rep.ok:
        return r.rep
    for f in sorted(Bo.one_cells):
        r.iso(("comp1", f), e1[f])
    for X in Bo.objects:
        x = e0[X]
        lhs = rwhisker_nattrans(F.identitor[X], x)
        rhs = V(lwhisker_nattrans(x, G.identitor[X]), e1[Bo.id1[X]])
        r.eq("identitor", (X,), lhs, rhs)
    for (f, g), fg in sorted(Bo.comp1.items()):
        X, Z = Bo.src1(f), Bo.tgt1(g)
        lhs = _V(rwhisker_nattrans(e1[f], G.fun[g]), lwhisker_nattrans(F.fun[f], e1[g]),
                 rwhisker_nattrans(F.compositor[(f, g)], e0[Z]))
        rhs = V(lwhisker_nattrans(e0[X], G.compositor[(f, g)]), e1[fg])
        r.eq("compositor", (f, g), lhs, rhs)
    for s, (f, g) in sorted(Bo.two_cells.items()):
        X, Y = Bo.one_cells[f]
        r.eq("naturality", (s,), V(lwhisker_nattrans(e0[X], G.nat[s]), e1[g]),
             V(e1[f], rwhisker_nattrans(F.nat[s], e0[Y])))
    return r.rep


def check_cat_modification(m: CatModification) -> LawReport:
    eta, beta = m.src, m.tgt
    F, G = eta.src, eta.tgt
    Bo = F.op
    r = _Laws()
    for b in Bo.objects:
        r.typed(("gamma", b), m.gamma.get(b), eta.comp0[b], beta.comp0[b])
    if not r.rep.ok:
        return r.rep
    for f, (X, Y) in sorted(Bo.one_cells.items()):
        lhs = V(eta.comp1[f], lwhisker_nattrans(F.fun[f], m.gamma[Y]))
        rhs = V(rwhisker_nattrans(m.gamma[X], G.fun[f]), beta.comp1[f])
        r.eq("modification", (f,), lhs, rhs)
    return r.rep


# ---------------------------------------------------------------- representables

def _require_locally_univalent(B: BicatPresentation) -> None:
    if not check_local_univalence(B).ok:
        raise PreconditionFailed("representables need a locally univalent bicategory")


def representable0(B: BicatPresentation, a: str) -> CatValuedPsfunctor:
    """b goes to the hom category B(b, a); f : b1 -> b2 precomposes, g goes to f . g."""
    _require_locally_univalent(B)
    cats = {b: hom_category(B, b, a) for b in B.objects}
    fun = {}
    for f, (b1, b2) in B.one_cells.items():
        src, tgt = cats[b2], cats[b1]
        fun[f] = Functor(src, tgt, {g: B.comp1[(f, g)] for g in src.objects},
                         {t: B.lwhisker[(f, t)] for t in src.morphisms})
    nat = {}
    for t, (f, g) in B.two_cells.items():
        b2 = B.tgt1(f)
        nat[t] = NatTrans(fun[f], fun[g], {h: B.rwhisker[(t, h)] for h in cats[b2].objects})
    ident = {b: NatTrans(identity_functor(cats[b]), fun[B.id1[b]],
                         {g: B.lunitor_inv[g] for g in cats[b].objects}) for b in B.objects}
    Bo = _op(B)
    comp = {}
    for (f, g), h in Bo.comp1.items():
        # f then g in op B is g . f in B
        F = compose_functors(fun[f], fun[g])
        comp[(f, g)] = NatTrans(F, fun[h], {k: B.lassoc[(g, f, k)] for k in F.src.objects})
    return CatValuedPsfunctor(B, cats, fun, nat, ident, comp)


def yoneda_embedding(B: BicatPresentation) -> dict[str, CatValuedPsfunctor]:
    return {a: representable0(B, a) for a in B.objects}


def representable1(B: BicatPresentation, f: str, ya: CatValuedPsfunctor | None = None,
                   yb: CatValuedPsfunctor | None = None) -> CatPstrans:
    """Components h |-> h . f; naturality cells are the associators alpha(g, h, f)."""
    a, b = B.one_cells[f]
    ya = ya or representable0(B, a)
    yb = yb or representable0(B, b)
    comp0 = {c: Functor(ya.cats[c], yb.cats[c], {h: B.comp1[(h, f)] for h in ya.cats[c].objects},
                        {t: B.rwhisker[(t, f)] for t in ya.cats[c].morphisms})
             for c in B.objects}
    Bo = _op(B)
    comp1 = {}
    for g, (c1, c2) in Bo.one_cells.items():
        src = compose_functors(comp0[c1], yb.fun[g])
        tgt = compose_functors(ya.fun[g], comp0[c2])
        comp1[g] = NatTrans(src, tgt, {h: B.lassoc[(g, h, f)] for h in ya.cats[c1].objects})
    return CatPstrans(ya, yb, comp0, comp1)


def representable2(B: BicatPresentation, theta: str, rf: CatPstrans | None = None,
                   rg: CatPstrans | None = None) -> CatModification:
    """Components h |-> h < theta."""
    f, g = B.two_cells[theta]
    rf = rf or representable1(B, f)
    rg = rg or representable1(B, g, rf.src, rf.tgt)
    gamma = {c: NatTrans(rf.comp0[c], rg.comp0[c],
                         {h: B.lwhisker[(h, theta)] for h in rf.src.cats[c].objects})
             for c in B.objects}
    return CatModification(rf, rg, gamma)


# ---------------------------------------------------------------- transformations as a category

def enumerate_cat_pstrans(F: CatValuedPsfunctor, G: CatValuedPsfunctor,
                          budget: Budget | int | None = None) -> list[CatPstrans]:
    budget = as_budget(budget)
    Bo = F.op
    objs = list(Bo.objects)
    cells = sorted(Bo.one_cells)
    out = []
    for comps in itertools.product(*[enumerate_functors(F.cats[b], G.cats[b], budget)
                                     for b in objs]):
        e0 = dict(zip(objs, comps))
        spaces = []
        for f in cells:
            X, Y = Bo.one_cells[f]
            cands = enumerate_nattrans(compose_functors(e0[X], G.fun[f]),
                                       compose_functors(F.fun[f], e0[Y]), budget)
            spaces.append([n for n in cands if is_natural_iso(n)])
        for pick in itertools.product(*spaces):
            budget.charge()
            t = CatPstrans(F, G, e0, dict(zip(cells, pick)))
            if check_cat_pstrans(t).ok:
                out.append(t)
    return out


def enumerate_cat_modifications(s: CatPstrans, t: CatPstrans,
                                budget: Budget | int | None = None) -> list[CatModification]:
    budget = as_budget(budget)
    objs = list(s.src.op.objects)
    out = []
    for pick in itertools.product(*[enumerate_nattrans(s.comp0[b], t.comp0[b], budget)
                                    for b in objs]):
        budget.charge()
        m = CatModification(s, t, dict(zip(objs, pick)))
        if check_cat_modification(m).ok:
            out.append(m)
    return out


def _vcomp_mod(m: CatModification, n: CatModification) -> CatModification:
    return CatModification(m.src, n.tgt, {b: V(m.gamma[b], n.gamma[b]) for b in m.gamma})


def _id_mod(t: CatPstrans) -> CatModification:
    return CatModification(t, t, {b: identity_nattrans(x) for b, x in t.comp0.items()})


@dataclass(eq=False)
class PstransCategory:
    cat: FiniteCategory
    pstrans: dict[str, CatPstrans]
    mods: dict[str, CatModification]

    def token_of(self, t: CatPstrans) -> str:
        for tok, s in self.pstrans.items():
            if s.key() == t.key():
                return tok
        raise ConstructionFailed("transformation is not among the enumerated ones")

    def mod_token(self, m: CatModification) -> str:
        src, tgt = self.token_of(m.src), self.token_of(m.tgt)
        for tok in self.cat.hom(src, tgt):
            if self.mods[tok].key() == m.key():
                return tok
        raise ConstructionFailed("modification is not among the enumerated ones")


def pstrans_category(F: CatValuedPsfunctor, G: CatValuedPsfunctor,
                     budget: Budget | int | None = None) -> PstransCategory:
    """Pseudotransformations F => G and modifications as a finite category."""
    budget = as_budget(budget)
    ts = {f"t{i}": t for i, t in enumerate(enumerate_cat_pstrans(F, G, budget))}
    mods: dict[str, CatModification] = {}
    morphisms: dict[str, tuple[str, str]] = {}
    for s_tok, s in ts.items():
        for t_tok, t in ts.items():
            for j, m in enumerate(enumerate_cat_modifications(s, t, budget)):
                tok = f"{s_tok}:{t_tok}#{j}"
                mods[tok] = m
                morphisms[tok] = (s_tok, t_tok)
    index = {(morphisms[k], m.key()): k for k, m in mods.items()}
    ident = {tok: index[((tok, tok), _id_mod(t).key())] for tok, t in ts.items()}
    comp = {}
    for k1, (a, b) in morphisms.items():
        for k2, (b2, c) in morphisms.items():
            if b2 == b:
                comp[(k1, k2)] = index[((a, c), _vcomp_mod(mods[k1], mods[k2]).key())]
    cat = FiniteCategory("pstrans", tuple(ts), morphisms, ident, comp)
    return PstransCategory(cat, ts, mods)


# ---------------------------------------------------------------- the Yoneda lemma

@dataclass
class YonedaReport:
    ok: bool
    pstrans_count: int
    fiber_count: int
    to_fiber: Functor | None = None
    from_fiber: Functor | None = None
    unit: NatTrans | None = None
    counit: NatTrans | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"status": self.status, "pstrans": self.pstrans_count,
               "fiber": self.fiber_count, "problems": list(self.problems)}
        if self.to_fiber is not None:
            out["F"] = {"objects": dict(self.to_fiber.obj), "morphisms": dict(self.to_fiber.mor)}
        if self.from_fiber is not None:
            out["G"] = {"objects": dict(self.from_fiber.obj),
                        "morphisms": dict(self.from_fiber.mor)}
        if self.unit is not None:
            out["unit"] = dict(self.unit.comp)
        if self.counit is not None:
            out["counit"] = dict(self.counit.comp)
        return out


def _from_fiber(B: BicatPresentation, ya: CatValuedPsfunctor, P: CatValuedPsfunctor,
                z: str) -> CatPstrans:
    """Components h |-> P(h)(z), with the compositors of P as naturality cells."""
    Bo = _op(B)
    comp0 = {}
    for c in B.objects:
        src = ya.cats[c]
        comp0[c] = Functor(src, P.cats[c], {h: P.fun[h].obj[z] for h in src.objects},
                           {t: P.nat[t].comp[z] for t in src.morphisms})
    comp1 = {}
    for g, (c1, c2) in Bo.one_cells.items():
        src = compose_functors(comp0[c1], P.fun[g])
        tgt = compose_functors(ya.fun[g], comp0[c2])
        comp1[g] = NatTrans(src, tgt, {h: P.compositor[(h, g)].comp[z]
                                       for h in ya.cats[c1].objects})
    return CatPstrans(ya, P, comp0, comp1)


def yoneda_check(B: BicatPresentation, P: CatValuedPsfunctor, a: str,
                 budget: Budget | int | None = None) -> YonedaReport:
    """Evaluation at id1(a) against the transformations built from points of P(a)."""
    budget = as_budget(budget)
    _require_locally_univalent(B)
    if P.src is not B:
        raise TypeMismatch("P is not defined on B")
    prep = check_cat_psfunctor(P)
    if not prep.ok:
        raise PreconditionFailed(f"P fails {sorted(prep.laws())}")
    ya = representable0(B, a)
    PT = pstrans_category(ya, P, budget)
    Pa = P.cats[a]
    i = B.id1[a]
    rep = YonedaReport(True, len(PT.pstrans), len(Pa.objects))
    F = Functor(PT.cat, Pa, {t: s.comp0[a].obj[i] for t, s in PT.pstrans.items()},
                {k: m.gamma[a].comp[i] for k, m in PT.mods.items()})
    rep.to_fiber = F
    gobj, gmor = {}, {}
    try:
        for z in Pa.objects:
            t = _from_fiber(B, ya, P, z)
            bad = check_cat_pstrans(t)
            if not bad.ok:
                rep.problems.append(f"G({z}) fails {sorted(bad.laws())}")
                continue
            gobj[z] = PT.token_of(t)
        for u, (z1, z2) in Pa.morphisms.items():
            if z1 not in gobj or z2 not in gobj:
                continue
            s, t = PT.pstrans[gobj[z1]], PT.pstrans[gobj[z2]]
            m = CatModification(s, t, {
                c: NatTrans(s.comp0[c], t.comp0[c],
                            {h: P.fun[h].mor[u] for h in ya.cats[c].objects})
                for c in B.objects})
            if not check_cat_modification(m).ok:
                rep.problems.append(f"G({u}) is not a modification")
                continue
            gmor[u] = PT.mod_token(m)
    except ConstructionFailed as e:
        rep.problems.append(str(e))
    if rep.problems:
        rep.ok = False
        return rep
    G = Functor(Pa, PT.cat, gobj, gmor)
    rep.from_fiber = G
    # unit: tau => G(F(tau)), inverting tau1(h) at id1(a) followed by tau0(c) on the right unitor
    unit = {}
    for tok, tau in PT.pstrans.items():
        target = PT.pstrans[G.obj[F.obj[tok]]]
        gamma = {}
        for c in B.objects:
            Pc = P.cats[c]
            comps = {}
            for h in ya.cats[c].objects:
                psi = Pc.comp[(tau.comp1[h].comp[i], tau.comp0[c].mor[B.runitor[h]])]
                if psi not in Pc.inverses:
                    rep.problems.append(f"unit component at {tok},{h} is not invertible")
                    break
                comps[h] = Pc.inverses[psi]
            gamma[c] = NatTrans(tau.comp0[c], target.comp0[c], comps)
        if rep.problems:
            break
        m = CatModification(tau, target, gamma)
        if not check_cat_modification(m).ok:
            rep.problems.append(f"unit component at {tok} is not a modification")
            break
        unit[tok] = PT.mod_token(m)
    if not rep.problems:
        rep.unit = NatTrans(identity_functor(PT.cat), compose_functors(F, G), unit)
        cinv = Pa.inverses
        counit = {}
        for z in Pa.objects:
            c = P.identitor[a].comp[z]
            counit[z] = cinv.get(c)
        if None in counit.values():
            rep.problems.append("identitor of P is not invertible")
        else:
            rep.counit = NatTrans(compose_functors(G, F), identity_functor(Pa), counit)
    for name, n in (("unit", rep.unit), ("counit", rep.counit)):
        if n is None:
            continue
        probs = nattrans_problems(n)
        if probs:
            rep.problems.append(f"{name}: {probs[0]}")
        elif not is_natural_iso(n):
            rep.problems.append(f"{name} is not a natural isomorphism")
    if not rep.problems and not is_equivalence(F):
        rep.problems.append("evaluation is not an equivalence of categories")
    rep.ok = not rep.problems
    return rep


def yoneda_hom_functor(B: BicatPresentation, x: str, y: str,
                       reps: dict[str, CatValuedPsfunctor] | None = None,
                       budget: Budget | int | None = None) -> Functor:
    """The functor B(x, y) -> PT(y(x), y(y)) induced by the embedding."""
    reps = reps or yoneda_embedding(B)
    PT = pstrans_category(reps[x], reps[y], budget)
    src = hom_category(B, x, y)
    r1 = {f: representable1(B, f, reps[x], reps[y]) for f in src.objects}
    obj = {f: PT.token_of(t) for f, t in r1.items()}
    mor = {}
    for t, (f, g) in src.morphisms.items():
        mor[t] = PT.mod_token(representable2(B, t, r1[f], r1[g]))
    return Functor(src, PT.cat, obj, mor)


def yoneda_local_equivalence(B: BicatPresentation, budget: Budget | int | None = None) -> bool:
    budget = as_budget(budget)
    reps = yoneda_embedding(B)
    return all(is_equivalence(yoneda_hom_functor(B, x, y, reps, budget))
               for x in B.objects for y in B.objects)


# ---------------------------------------------------------------- full image and restriction

def _image_disp(F: PseudofunctorData) -> DispBicatPresentation:
    hit = set(F.F0.values())
    return fullsub_disp(F.tgt, lambda c: c in hit)


def full_image(F: PseudofunctorData) -> BicatPresentation:
    """Objects of the target hit by F, with all cells between them."""
    return _image_disp(F).total


def restrict(F: PseudofunctorData) -> PseudofunctorData:
    """F with its target cut down to the full image."""
    d = _image_disp(F)
    lift = {}
    for over in (d.over0, d.over1, d.over2):
        lift.update({base: tok for tok, (base, _) in over.items()})
    up = lambda m: {k: lift[x] for k, x in m.items()}  # noqa: E731
    return PseudofunctorData(F.src, d.total, up(F.F0), up(F.F1), up(F.F2),
                             up(F.identitor), up(F.compositor))


def constant_cat_psfunctor(B: BicatPresentation, C: FiniteCategory) -> CatValuedPsfunctor:
    """Every object to C, every cell to an identity."""
    I = identity_functor(C)
    one = identity_nattrans(I)
    Bo = _op(B)
    return CatValuedPsfunctor(B, {b: C for b in B.objects}, {f: I for f in B.one_cells},
                              {t: one for t in B.two_cells}, {b: one for b in B.objects},
                              {fg: one for fg in Bo.comp1})
