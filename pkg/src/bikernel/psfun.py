"""Pseudofunctors, pseudotransformations and modifications between finite presentations.

Composition is diagrammatic throughout: ``comp_psfunctor(F, G)`` applies F
first, and ``comp_pstrans(eta, beta)`` runs eta before beta.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .budget import Budget, as_budget, tup
from .core import (
    AdjEquiv, BicatPresentation, Inv2Cell, LawReport, Violation, adjoint_equivalences,
    fullsub_bicat, hom_category, product_bicat, triangles_hold,
)
from .errors import ConstructionFailed, DanglingReference, TypeMismatch
from .fincat import Functor, is_equivalence


def _same(p: BicatPresentation, q: BicatPresentation) -> bool:
    return p is q or p == q


def _invert(p: BicatPresentation, t: str) -> str:
    inv = p.inverses.get(t)
    if inv is None:
        raise ConstructionFailed(f"2-cell {t} is not invertible")
    return inv


def _ty(p: BicatPresentation, tier: str, x: str) -> str:
    src, tgt = (p.one_cells if tier == "1" else p.two_cells)[x]
    return f"{src}=>{tgt}" if tier == "2" else f"{src}->{tgt}"


class _Report:
    """Accumulates violations and instance counts for one validator run."""

    def __init__(self):
        self.rep = LawReport()

    def typed(self, p: BicatPresentation, tier: str, what, cell: str | None,
              src: str, tgt: str) -> bool:
        cells = p.one_cells if tier == "1" else p.two_cells
        if cell is None or cell not in cells:
            raise DanglingReference(f"{what} is missing or names an unknown cell")
        if cells[cell] != (src, tgt):
            arrow = "->" if tier == "1" else "=>"
            self.rep.violations.append(
                Violation("typing", what if isinstance(what, tuple) else (what,),
                          _ty(p, tier, cell), f"{src}{arrow}{tgt}"))
            return False
        return True

    def eq(self, law: str, cells: tuple, lhs: str, rhs: str) -> None:
        self.rep.instances[law] = self.rep.instances.get(law, 0) + 1
        if lhs != rhs:
            self.rep.violations.append(Violation(law, cells, lhs, rhs))

    def invertible(self, p: BicatPresentation, cells: tuple, t: str) -> None:
        self.rep.instances["invertible"] = self.rep.instances.get("invertible", 0) + 1
        if t not in p.inverses:
            self.rep.violations.append(Violation("invertible", cells, t, None))


# ---------------------------------------------------------------- pseudofunctors

@dataclass(frozen=True, eq=False)
class PseudofunctorData:
    src: BicatPresentation
    tgt: BicatPresentation
    F0: dict[str, str]
    F1: dict[str, str]
    F2: dict[str, str]
    identitor: dict[str, str]
    compositor: dict[tuple[str, str], str]

    def key(self) -> tuple:
        return tuple(tuple(sorted(m.items())) for m in
                     (self.F0, self.F1, self.F2, self.identitor, self.compositor))

    def same_as(self, other: PseudofunctorData) -> bool:
        return _same(self.src, other.src) and _same(self.tgt, other.tgt) \
            and self.key() == other.key()


def check_psfunctor(F: PseudofunctorData) -> LawReport:
    B, C = F.src, F.tgt
    r = _Report()
    for a in B.objects:
        if F.F0.get(a) not in C.objects:
            raise DanglingReference(f"object {a} is not sent to an object")
    for f, (a, b) in sorted(B.one_cells.items()):
        r.typed(C, "1", f, F.F1.get(f), F.F0[a], F.F0[b])
    if r.rep.violations:
        return r.rep
    for t, (f, g) in sorted(B.two_cells.items()):
        r.typed(C, "2", t, F.F2.get(t), F.F1[f], F.F1[g])
    for a in B.objects:
        r.typed(C, "2", ("identitor", a), F.identitor.get(a), C.id1[F.F0[a]], F.F1[B.id1[a]])
    for (f, g), h in sorted(B.comp1.items()):
        r.typed(C, "2", ("compositor", f, g), F.compositor.get((f, g)),
                C.comp1[(F.F1[f], F.F1[g])], F.F1[h])
    if r.rep.violations:
        return r.rep
    F1, F2, gam, dl = F.F1, F.F2, F.identitor, F.compositor
    V, LW, RW = C.vc, C.lwhisker, C.rwhisker
    for f in sorted(B.one_cells):
        r.eq("id2", (f,), F2[B.id2[f]], C.id2[F1[f]])
    for (t, u), tu in sorted(B.vcomp.items()):
        r.eq("vcomp", (t, u), F2[tu], C.vcomp[(F2[t], F2[u])])
    for f, (a, b) in sorted(B.one_cells.items()):
        Ff = F1[f]
        r.eq("lunitor", (f,), C.lunitor[Ff],
             V(RW[(gam[a], Ff)], dl[(B.id1[a], f)], F2[B.lunitor[f]]))
        r.eq("runitor", (f,), C.runitor[Ff],
             V(LW[(Ff, gam[b])], dl[(f, B.id1[b])], F2[B.runitor[f]]))
    for (f, g, h), al in sorted(B.lassoc.items()):
        Ff, Fg, Fh = F1[f], F1[g], F1[h]
        lhs = V(LW[(Ff, dl[(g, h)])], dl[(f, B.comp1[(g, h)])], F2[al])
        rhs = V(C.lassoc[(Ff, Fg, Fh)], RW[(dl[(f, g)], Fh)], dl[(B.comp1[(f, g)], h)])
        r.eq("lassoc", (f, g, h), lhs, rhs)
    for (f, t), ft in sorted(B.lwhisker.items()):
        g1, g2 = B.two_cells[t]
        r.eq("lwhisker", (f, t), V(dl[(f, g1)], F2[ft]), V(LW[(F1[f], F2[t])], dl[(f, g2)]))
    for (t, g), tg in sorted(B.rwhisker.items()):
        f1, f2 = B.two_cells[t]
        r.eq("rwhisker", (t, g), V(dl[(f1, g)], F2[tg]), V(RW[(F2[t], F1[g])], dl[(f2, g)]))
    for a in B.objects:
        r.invertible(C, ("identitor", a), gam[a])
    for fg in sorted(B.comp1):
        r.invertible(C, ("compositor",) + fg, dl[fg])
    return r.rep


def id_psfunctor(p: BicatPresentation) -> PseudofunctorData:
    return PseudofunctorData(
        p, p,
        {a: a for a in p.objects}, {f: f for f in p.one_cells}, {t: t for t in p.two_cells},
        {a: p.id2[p.id1[a]] for a in p.objects},
        {fg: p.id2[h] for fg, h in p.comp1.items()},
    )


def comp_psfunctor(F: PseudofunctorData, G: PseudofunctorData) -> PseudofunctorData:
    """F then G."""
    if not _same(F.tgt, G.src):
        raise TypeMismatch("pseudofunctors are not composable")
    B, D = F.src, G.tgt
    return PseudofunctorData(
        B, D,
        {a: G.F0[F.F0[a]] for a in B.objects},
        {f: G.F1[F.F1[f]] for f in B.one_cells},
        {t: G.F2[F.F2[t]] for t in B.two_cells},
        {a: D.vcomp[(G.identitor[F.F0[a]], G.F2[F.identitor[a]])] for a in B.objects},
        {(f, g): D.vcomp[(G.compositor[(F.F1[f], F.F1[g])], G.F2[F.compositor[(f, g)]])]
         for (f, g) in B.comp1},
    )


def image_adjequiv(F: PseudofunctorData, e: AdjEquiv) -> AdjEquiv:
    """The adjoint equivalence on F1(e.f) built from F's identitor and compositor."""
    B, C = F.src, F.tgt
    a, b = B.one_cells[e.f]
    f, g = e.f, e.g
    eta = C.vc(F.identitor[a], F.F2[e.eta.theta], _invert(C, F.compositor[(f, g)]))
    eps = C.vc(F.compositor[(g, f)], F.F2[e.eps.theta], _invert(C, F.identitor[b]))
    Ff, Fg = F.F1[f], F.F1[g]
    if not triangles_hold(C, Ff, Fg, eta, eps):
        raise ConstructionFailed("image of the adjoint equivalence fails a triangle identity")
    return AdjEquiv(Ff, Fg, Inv2Cell(eta, _invert(C, eta)), Inv2Cell(eps, _invert(C, eps)))


# ---------------------------------------------------------------- transformations

@dataclass(frozen=True, eq=False)
class PstransData:
    src: PseudofunctorData
    tgt: PseudofunctorData
    eta0: dict[str, str]
    eta1: dict[str, Inv2Cell]

    def key(self) -> tuple:
        return (tuple(sorted(self.eta0.items())),
                tuple(sorted((f, c.theta) for f, c in self.eta1.items())))

    def same_as(self, other: PstransData) -> bool:
        return self.src.same_as(other.src) and self.tgt.same_as(other.tgt) \
            and self.key() == other.key()


def _pstrans_typing(eta: PstransData, r: _Report) -> None:
    F, G = eta.src, eta.tgt
    if not (_same(F.src, G.src) and _same(F.tgt, G.tgt)):
        raise TypeMismatch("pseudotransformation between non-parallel pseudofunctors")
    B, C = F.src, F.tgt
    for a in B.objects:
        r.typed(C, "1", ("eta0", a), eta.eta0.get(a), F.F0[a], G.F0[a])
    if r.rep.violations:
        return
    for f, (a, b) in sorted(B.one_cells.items()):
        cell = eta.eta1.get(f)
        if cell is None:
            raise DanglingReference(f"eta1 missing at {f}")
        src = C.comp1[(eta.eta0[a], G.F1[f])]
        tgt = C.comp1[(F.F1[f], eta.eta0[b])]
        if r.typed(C, "2", ("eta1", f), cell.theta, src, tgt):
            r.typed(C, "2", ("eta1_inv", f), cell.theta_inv, tgt, src)


def check_pstrans(eta: PstransData) -> LawReport:
    r = _Report()
    _pstrans_typing(eta, r)
    if r.rep.violations:
        return r.rep
    F, G = eta.src, eta.tgt
    B, C = F.src, F.tgt
    e0 = eta.eta0
    e1 = {f: c.theta for f, c in eta.eta1.items()}
    V, LW, RW, al, ali = C.vc, C.lwhisker, C.rwhisker, C.lassoc, C.lassoc_inv
    for f, c in sorted(eta.eta1.items()):
        a = B.src1(f)
        r.rep.instances["invertible"] = r.rep.instances.get("invertible", 0) + 1
        if C.vcomp[(c.theta, c.theta_inv)] != C.id2[C.comp1[(e0[a], G.F1[f])]] or \
                C.vcomp[(c.theta_inv, c.theta)] != C.id2[C.comp1[(F.F1[f], e0[B.tgt1(f)])]]:
            r.rep.violations.append(Violation("invertible", ("eta1", f), c.theta, c.theta_inv))
    for X in B.objects:
        x = e0[X]
        lhs = V(C.runitor[x], C.lunitor_inv[x], RW[(F.identitor[X], x)])
        rhs = V(LW[(x, G.identitor[X])], e1[B.id1[X]])
        r.eq("identitor", (X,), lhs, rhs)
    for (f, g), fg in sorted(B.comp1.items()):
        X, Y, Z = B.src1(f), B.tgt1(f), B.tgt1(g)
        Ff, Fg, Gf, Gg = F.F1[f], F.F1[g], G.F1[f], G.F1[g]
        lhs = V(
            al[(e0[X], Gf, Gg)], RW[(e1[f], Gg)], ali[(Ff, e0[Y], Gg)],
            LW[(Ff, e1[g])], al[(Ff, Fg, e0[Z])], RW[(F.compositor[(f, g)], e0[Z])],
        )
        rhs = V(LW[(e0[X], G.compositor[(f, g)])], e1[fg])
        r.eq("compositor", (f, g), lhs, rhs)
    for t, (f, g) in sorted(B.two_cells.items()):
        X, Y = B.one_cells[f]
        r.eq("naturality", (t,), V(LW[(e0[X], G.F2[t])], e1[g]), V(e1[f], RW[(F.F2[t], e0[Y])]))
    return r.rep


def id_pstrans(F: PseudofunctorData) -> PstransData:
    B, C = F.src, F.tgt
    eta1 = {}
    for f in B.one_cells:
        Ff = F.F1[f]
        eta1[f] = Inv2Cell(C.vc(C.lunitor[Ff], C.runitor_inv[Ff]),
                           C.vc(C.runitor[Ff], C.lunitor_inv[Ff]))
    return PstransData(F, F, {a: C.id1[F.F0[a]] for a in B.objects}, eta1)


def comp_pstrans(eta: PstransData, beta: PstransData) -> PstransData:
    """eta then beta, with eta0 . beta0 as components."""
    if not eta.tgt.same_as(beta.src):
        raise TypeMismatch("pseudotransformations are not composable")
    F, H = eta.src, beta.tgt
    G = eta.tgt
    B, C = F.src, F.tgt
    V, LW, RW, al, ali = C.vc, C.lwhisker, C.rwhisker, C.lassoc, C.lassoc_inv
    e0, b0 = eta.eta0, beta.eta0
    comp0 = {a: C.comp1[(e0[a], b0[a])] for a in B.objects}
    eta1 = {}
    for f, (X, Y) in B.one_cells.items():
        fwd = V(
            ali[(e0[X], b0[X], H.F1[f])], LW[(e0[X], beta.eta1[f].theta)],
            al[(e0[X], G.F1[f], b0[Y])], RW[(eta.eta1[f].theta, b0[Y])],
            ali[(F.F1[f], e0[Y], b0[Y])],
        )
        bwd = V(
            al[(F.F1[f], e0[Y], b0[Y])], RW[(eta.eta1[f].theta_inv, b0[Y])],
            ali[(e0[X], G.F1[f], b0[Y])], LW[(e0[X], beta.eta1[f].theta_inv)],
            al[(e0[X], b0[X], H.F1[f])],
        )
        eta1[f] = Inv2Cell(fwd, bwd)
    return PstransData(F, H, comp0, eta1)


# ---------------------------------------------------------------- modifications

@dataclass(frozen=True, eq=False)
class ModificationData:
    src: PstransData
    tgt: PstransData
    gamma: dict[str, str]

    def key(self) -> tuple:
        return tuple(sorted(self.gamma.items()))


def check_modification(m: ModificationData) -> LawReport:
    eta, beta = m.src, m.tgt
    if not (eta.src.same_as(beta.src) and eta.tgt.same_as(beta.tgt)):
        raise TypeMismatch("modification between non-parallel pseudotransformations")
    F, G = eta.src, eta.tgt
    B, C = F.src, F.tgt
    r = _Report()
    for a in B.objects:
        r.typed(C, "2", ("gamma", a), m.gamma.get(a), eta.eta0[a], beta.eta0[a])
    if r.rep.violations:
        return r.rep
    V, LW, RW = C.vc, C.lwhisker, C.rwhisker
    for f, (X, Y) in sorted(B.one_cells.items()):
        lhs = V(eta.eta1[f].theta, LW[(F.F1[f], m.gamma[Y])])
        rhs = V(RW[(m.gamma[X], G.F1[f])], beta.eta1[f].theta)
        r.eq("modification", (f,), lhs, rhs)
    return r.rep


def is_invertible_modification(m: ModificationData) -> bool:
    C = m.src.src.tgt
    return all(g in C.inverses for g in m.gamma.values())


def id_modification(eta: PstransData) -> ModificationData:
    C = eta.src.tgt
    return ModificationData(eta, eta, {a: C.id2[x] for a, x in eta.eta0.items()})


def vcomp_modification(m: ModificationData, n: ModificationData) -> ModificationData:
    if not m.tgt.same_as(n.src):
        raise TypeMismatch("modifications are not composable")
    C = m.src.src.tgt
    return ModificationData(m.src, n.tgt, {a: C.vcomp[(m.gamma[a], n.gamma[a])] for a in m.gamma})


# ---------------------------------------------------------------- enumeration

def enumerate_psfunctors(B: BicatPresentation, C: BicatPresentation,
                         budget: Budget | int | None = None) -> list[PseudofunctorData]:
    """Every lawful pseudofunctor B -> C, by exhaustive search over all tables."""
    budget = as_budget(budget)
    objs = list(B.objects)
    ones = sorted(B.one_cells)
    twos = sorted(B.two_cells)
    pairs = sorted(B.comp1)
    inv = C.inverses
    out = []
    for images in itertools.product(C.objects, repeat=len(objs)):
        budget.charge()
        F0 = dict(zip(objs, images))
        choices1 = [C.hom(F0[B.src1(f)], F0[B.tgt1(f)]) for f in ones]
        for pick1 in itertools.product(*choices1):
            budget.charge()
            F1 = dict(zip(ones, pick1))
            gam_ch = [[t for t in C.cells2(C.id1[F0[a]], F1[B.id1[a]]) if t in inv] for a in objs]
            del_ch = [[t for t in C.cells2(C.comp1[(F1[f], F1[g])], F1[B.comp1[(f, g)]]) if t in inv]
                      for (f, g) in pairs]
            if any(not c for c in gam_ch) or any(not c for c in del_ch):
                continue
            f2_ch = [C.cells2(F1[B.src2(t)], F1[B.tgt2(t)]) for t in twos]
            f2_ok = []
            for pick2 in itertools.product(*f2_ch):
                budget.charge()
                F2 = dict(zip(twos, pick2))
                if all(F2[B.id2[f]] == C.id2[F1[f]] for f in ones) and all(
                        F2[tu] == C.vcomp[(F2[t], F2[u])] for (t, u), tu in B.vcomp.items()):
                    f2_ok.append(F2)
            for F2 in f2_ok:
                for gpick in itertools.product(*gam_ch):
                    for dpick in itertools.product(*del_ch):
                        budget.charge()
                        F = PseudofunctorData(B, C, F0, F1, F2, dict(zip(objs, gpick)),
                                              dict(zip(pairs, dpick)))
                        if check_psfunctor(F).ok:
                            out.append(F)
    return out


def enumerate_pstrans(F: PseudofunctorData, G: PseudofunctorData,
                      budget: Budget | int | None = None) -> list[PstransData]:
    budget = as_budget(budget)
    B, C = F.src, F.tgt
    objs, ones = list(B.objects), sorted(B.one_cells)
    inv = C.inverses
    out = []
    for pick0 in itertools.product(*[C.hom(F.F0[a], G.F0[a]) for a in objs]):
        budget.charge()
        e0 = dict(zip(objs, pick0))
        choices = []
        for f in ones:
            X, Y = B.one_cells[f]
            src = C.comp1[(e0[X], G.F1[f])]
            tgt = C.comp1[(F.F1[f], e0[Y])]
            choices.append([Inv2Cell(t, inv[t]) for t in C.cells2(src, tgt) if t in inv])
        for pick1 in itertools.product(*choices):
            budget.charge()
            eta = PstransData(F, G, e0, dict(zip(ones, pick1)))
            if check_pstrans(eta).ok:
                out.append(eta)
    return out


def enumerate_modifications(eta: PstransData, beta: PstransData,
                            budget: Budget | int | None = None) -> list[ModificationData]:
    budget = as_budget(budget)
    B, C = eta.src.src, eta.src.tgt
    objs = list(B.objects)
    out = []
    for pick in itertools.product(*[C.cells2(eta.eta0[a], beta.eta0[a]) for a in objs]):
        budget.charge()
        m = ModificationData(eta, beta, dict(zip(objs, pick)))
        if check_modification(m).ok:
            out.append(m)
    return out


@dataclass
class PseudoCounts:
    psfunctors: int
    pstrans: int
    modifications: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.psfunctors, self.pstrans, self.modifications


def pseudo_oracle(B: BicatPresentation, C: BicatPresentation,
                  budget: Budget | int | None = None):
    """Direct enumeration of all three tiers of Pseudo(B, C)."""
    budget = as_budget(budget)
    fs = enumerate_psfunctors(B, C, budget)
    ts = [t for F in fs for G in fs for t in enumerate_pstrans(F, G, budget)]
    ms = []
    for s in ts:
        for t in ts:
            if s.src.same_as(t.src) and s.tgt.same_as(t.tgt):
                ms.extend(enumerate_modifications(s, t, budget))
    return fs, ts, ms


# ---------------------------------------------------------------- weak equivalences

def induced_hom_functor(F: PseudofunctorData, x: str, y: str) -> Functor:
    B, C = F.src, F.tgt
    H1 = hom_category(B, x, y)
    H2 = hom_category(C, F.F0[x], F.F0[y])
    return Functor(H1, H2, {f: F.F1[f] for f in H1.objects}, {t: F.F2[t] for t in H1.morphisms})


def is_local_equivalence(F: PseudofunctorData) -> bool:
    B = F.src
    return all(is_equivalence(induced_hom_functor(F, x, y)) for x in B.objects for y in B.objects)


def is_essentially_surjective(F: PseudofunctorData, budget: Budget | int | None = None) -> bool:
    budget = as_budget(budget)
    C = F.tgt
    return all(any(adjoint_equivalences(C, F.F0[x], y, budget) for x in F.src.objects)
               for y in C.objects)


def is_weak_equivalence(F: PseudofunctorData, budget: Budget | int | None = None) -> bool:
    return is_local_equivalence(F) and is_essentially_surjective(F, budget)


# ---------------------------------------------------------------- biequivalences

@dataclass(frozen=True, eq=False)
class BiequivalenceData:
    L: PseudofunctorData
    R: PseudofunctorData
    eta: PstransData
    eta_i: PstransData
    eps: PstransData
    eps_i: PstransData
    m1: ModificationData
    m2: ModificationData
    m3: ModificationData
    m4: ModificationData


@dataclass
class BiequivalenceReport:
    parts: dict[str, LawReport] = field(default_factory=dict)
    objects_bijective: bool | None = None

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.parts.values()) and self.objects_bijective is not False

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self) -> bool:
        return self.ok

    def failing(self) -> list[str]:
        return [k for k, r in self.parts.items() if not r.ok]

    def to_json(self) -> dict:
        out = {"status": self.status,
               "components": {k: r.to_json() for k, r in self.parts.items()}}
        if self.objects_bijective is not None:
            out["objects_bijective"] = self.objects_bijective
        return out


def _endpoint_check(rep: LawReport, what: str, got, want) -> None:
    if not got.same_as(want):
        rep.violations.append(Violation("endpoints", (what,), None, None))


def check_biequivalence(b: BiequivalenceData, check_objects: bool = True) -> BiequivalenceReport:
    """Validate every component and its endpoints.

    When both sides are univalent the object map of L is also required to be a
    bijection.
    """
    from .univalence import check_univalent

    L, R = b.L, b.R
    if not (_same(L.src, R.tgt) and _same(L.tgt, R.src)):
        raise TypeMismatch("L and R do not run in opposite directions")
    B, C = L.src, L.tgt
    out = BiequivalenceReport()
    out.parts["L"] = check_psfunctor(L)
    out.parts["R"] = check_psfunctor(R)
    if not (out.parts["L"].ok and out.parts["R"].ok):
        return out
    RL, LR = comp_psfunctor(R, L), comp_psfunctor(L, R)
    idB, idC = id_psfunctor(B), id_psfunctor(C)
    for name, t, s, g in (("eta", b.eta, RL, idC), ("eta_i", b.eta_i, idC, RL),
                          ("eps", b.eps, LR, idB), ("eps_i", b.eps_i, idB, LR)):
        rep = check_pstrans(t)
        _endpoint_check(rep, "src", t.src, s)
        _endpoint_check(rep, "tgt", t.tgt, g)
        out.parts[name] = rep
    if not all(out.parts[k].ok for k in ("eta", "eta_i", "eps", "eps_i")):
        return out
    for name, m, first, second, target in (
        ("m1", b.m1, b.eta, b.eta_i, RL), ("m2", b.m2, b.eta_i, b.eta, idC),
        ("m3", b.m3, b.eps, b.eps_i, LR), ("m4", b.m4, b.eps_i, b.eps, idB),
    ):
        rep = LawReport()
        want_src, want_tgt = comp_pstrans(first, second), id_pstrans(target)
        _endpoint_check(rep, "src", m.src, want_src)
        _endpoint_check(rep, "tgt", m.tgt, want_tgt)
        if rep.ok:
            rep = check_modification(m)
            if rep.ok and not is_invertible_modification(m):
                rep.violations.append(Violation("invertible", (name,), None, None))
        out.parts[name] = rep
    if check_objects and out.ok and check_univalent(B).ok and check_univalent(C).ok:
        images = [L.F0[a] for a in B.objects]
        out.objects_bijective = len(set(images)) == len(images) == len(C.objects)
    return out


def identity_biequivalence(p: BicatPresentation) -> BiequivalenceData:
    I = id_psfunctor(p)
    II = comp_psfunctor(I, I)
    t = id_pstrans(II)
    # the identity of I.I and of I coincide as data, so one transformation serves all four
    eta = PstransData(II, I, t.eta0, t.eta1)
    eta_i = PstransData(I, II, t.eta0, t.eta1)
    m1 = _unit_modification(comp_pstrans(eta, eta_i), id_pstrans(II))
    m2 = _unit_modification(comp_pstrans(eta_i, eta), id_pstrans(I))
    return BiequivalenceData(I, I, eta, eta_i, eta, eta_i, m1, m2, m1, m2)


def _unit_modification(src: PstransData, tgt: PstransData) -> ModificationData:
    """Components lambda(id1) : id1 . id1 => id1, the only sensible choice for identity data."""
    C = src.src.tgt
    gamma = {}
    for a, x in src.eta0.items():
        y = tgt.eta0[a]
        cells = [t for t in C.cells2(x, y) if t in C.inverses]
        pick = C.lunitor[y] if C.lunitor[y] in cells else (cells[0] if cells else None)
        if pick is None:
            raise ConstructionFailed(f"no invertible component at {a}")
        gamma[a] = pick
    return ModificationData(src, tgt, gamma)


def find_biequivalence_modifications(L: PseudofunctorData, R: PseudofunctorData,
                                     eta: PstransData, eta_i: PstransData,
                                     eps: PstransData, eps_i: PstransData,
                                     budget: Budget | int | None = None) -> BiequivalenceData | None:
    """Search for invertible modifications m1..m4 completing the given data."""
    budget = as_budget(budget)
    RL, LR = comp_psfunctor(R, L), comp_psfunctor(L, R)
    mods = []
    for first, second, target in ((eta, eta_i, RL), (eta_i, eta, id_psfunctor(L.tgt)),
                                  (eps, eps_i, LR), (eps_i, eps, id_psfunctor(L.src))):
        found = [m for m in enumerate_modifications(comp_pstrans(first, second),
                                                    id_pstrans(target), budget)
                 if is_invertible_modification(m)]
        if not found:
            return None
        mods.append(found[0])
    return BiequivalenceData(L, R, eta, eta_i, eps, eps_i, *mods)


# ---------------------------------------------------------------- the layered Pseudo(B, C)

@dataclass
class PseudoTower:
    """Every layer of the Pseudo(B, C) construction plus decoders for its cells."""

    src: BicatPresentation
    tgt: BicatPresentation
    base: BicatPresentation
    map1: object
    map2: object
    map_id: object
    map_c: object
    raw: object
    bicat: BicatPresentation
    psfunctor_of: dict[str, PseudofunctorData]
    pstrans_of: dict[str, PstransData]
    modification_of: dict[str, ModificationData]

    def counts(self) -> tuple[int, int, int]:
        return self.bicat.size()


def pseudo_tower(B: BicatPresentation, C: BicatPresentation,
                 budget: Budget | int | None = None) -> PseudoTower:
    from .display import equation_disp, fibre_product, prop_disp

    budget = as_budget(budget)
    B0 = list(B.objects)
    B1 = sorted(B.one_cells)
    B2 = sorted(B.two_cells)
    Bc = sorted(B.comp1)
    n = len(B0)
    base = product_bicat([C] * n)
    obj_map = {tup(*xs): dict(zip(B0, xs)) for xs in itertools.product(C.objects, repeat=n)}
    one_map = {tup(*fs): dict(zip(B0, fs)) for fs in itertools.product(sorted(C.one_cells), repeat=n)}
    two_map = {tup(*ts): dict(zip(B0, ts)) for ts in itertools.product(sorted(C.two_cells), repeat=n)}
    V, LW, RW, al, ali = C.vc, C.lwhisker, C.rwhisker, C.lassoc, C.lassoc_inv
    inv = C.inverses

    # layer 1: actions on 1-cells; 1-cells are naturality families, 2-cells are equations
    d0: dict[str, list[str]] = {}
    f1_of: dict[tuple[str, str], dict[str, str]] = {}
    for P, F0 in obj_map.items():
        d0[P] = []
        for pick in itertools.product(*[C.hom(F0[B.src1(f)], F0[B.tgt1(f)]) for f in B1]):
            budget.charge()
            tok = tup(*pick)
            d0[P].append(tok)
            f1_of[(P, tok)] = dict(zip(B1, pick))
    d1: dict[tuple[str, str, str], list[str]] = {}
    e1_of: dict[tuple[str, str], tuple[dict, dict, dict]] = {}
    for E, (P, Q) in base.one_cells.items():
        e0 = one_map[E]
        for x in d0[P]:
            F1 = f1_of[(P, x)]
            for y in d0[Q]:
                G1 = f1_of[(Q, y)]
                choices = []
                for f in B1:
                    X, Y = B.one_cells[f]
                    src, tgt = C.comp1[(e0[X], G1[f])], C.comp1[(F1[f], e0[Y])]
                    choices.append([Inv2Cell(t, inv[t]) for t in C.cells2(src, tgt) if t in inv])
                for pick in itertools.product(*choices):
                    budget.charge()
                    tok = tup(x, y, tup(*[c.theta for c in pick]))
                    d1.setdefault((E, x, y), []).append(tok)
                    e1_of[(E, tok)] = (x, y, F1, G1, dict(zip(B1, pick)))

    def e1_token(E, x, y, fam: dict[str, str]) -> str:
        return tup(x, y, tup(*[fam[f] for f in B1]))

    id_table = {}
    for P in obj_map:
        for x in d0[P]:
            F1 = f1_of[(P, x)]
            fam = {f: V(C.lunitor[F1[f]], C.runitor_inv[F1[f]]) for f in B1}
            id_table[(P, x)] = e1_token(base.id1[P], x, x, fam)
    starting: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for (E, tok), (x, y, *_rest) in e1_of.items():
        starting.setdefault((base.src1(E), x), []).append((E, tok))
    comp_table = {}
    for (E, tok), (x, y, F1, G1, eta1) in e1_of.items():
        e0 = one_map[E]
        for E2, tok2 in starting.get((base.tgt1(E), y), ()):
            _, z, _, H1, beta1 = e1_of[(E2, tok2)]
            b0 = one_map[E2]
            fam = {}
            for f in B1:
                X, Y = B.one_cells[f]
                fam[f] = V(
                    ali[(e0[X], b0[X], H1[f])], LW[(e0[X], beta1[f].theta)],
                    al[(e0[X], G1[f], b0[Y])], RW[(eta1[f].theta, b0[Y])],
                    ali[(F1[f], e0[Y], b0[Y])],
                )
            comp_table[(E, tok, E2, tok2)] = e1_token(base.comp1[(E, E2)], x, z, fam)

    def modif_pred(G, ff, gg) -> bool:
        E = base.src2(G)
        _, _, F1, G1, eta1 = e1_of[(E, ff)]
        beta1 = e1_of[(base.tgt2(G), gg)][4]
        gam = two_map[G]
        for f in B1:
            X, Y = B.one_cells[f]
            if V(eta1[f].theta, LW[(F1[f], gam[Y])]) != V(RW[(gam[X], G1[f])], beta1[f].theta):
                return False
        return True

    map1 = prop_disp(base, d0, d1, id_table, comp_table, modif_pred)
    M = map1.total
    obj_info = {X: (obj_map[P], f1_of[(P, x)]) for X, (P, x) in map1.over0.items()}
    one_info = {Y: (one_map[E],) + e1_of[(E, tok)][2:] for Y, (E, tok) in map1.over1.items()}

    # layers 2-4: identitors, compositors and actions on 2-cells, with equation 1-cells
    def chaotic_layer(families: Callable[[dict, dict], list[list[str]]],
                      holds: Callable[[str, list, list], bool]):
        D0: dict[str, list[str]] = {}
        data: dict[tuple[str, str], list[str]] = {}
        for X in M.objects:
            F0, F1 = obj_info[X]
            D0[X] = []
            for pick in itertools.product(*families(F0, F1)):
                budget.charge()
                tok = tup(*pick)
                D0[X].append(tok)
                data[(X, tok)] = list(pick)
        layer = equation_disp(
            M, D0, lambda Y, x, z: holds(Y, data[(M.src1(Y), x)], data[(M.tgt1(Y), z)]), budget)
        return layer, data

    def id_families(F0, F1):
        return [C.cells2(C.id1[F0[a]], F1[B.id1[a]]) for a in B0]

    def id_holds(Y, gF, gG):
        e0, F1, G1, eta1 = one_info[Y]
        gF, gG = dict(zip(B0, gF)), dict(zip(B0, gG))
        for X in B0:
            x = e0[X]
            lhs = V(C.runitor[x], C.lunitor_inv[x], RW[(gF[X], x)])
            if lhs != V(LW[(x, gG[X])], eta1[B.id1[X]].theta):
                return False
        return True

    def c_families(F0, F1):
        return [C.cells2(C.comp1[(F1[f], F1[g])], F1[B.comp1[(f, g)]]) for (f, g) in Bc]

    def c_holds(Y, dF, dG):
        e0, F1, G1, eta1 = one_info[Y]
        dF, dG = dict(zip(Bc, dF)), dict(zip(Bc, dG))
        for (f, g) in Bc:
            X, Yo, Z = B.src1(f), B.tgt1(f), B.tgt1(g)
            lhs = V(
                al[(e0[X], G1[f], G1[g])], RW[(eta1[f].theta, G1[g])],
                ali[(F1[f], e0[Yo], G1[g])], LW[(F1[f], eta1[g].theta)],
                al[(F1[f], F1[g], e0[Z])], RW[(dF[(f, g)], e0[Z])],
            )
            if lhs != V(LW[(e0[X], dG[(f, g)])], eta1[B.comp1[(f, g)]].theta):
                return False
        return True

    def f2_families(F0, F1):
        return [C.cells2(F1[B.src2(t)], F1[B.tgt2(t)]) for t in B2]

    def f2_holds(Y, aF, aG):
        e0, F1, G1, eta1 = one_info[Y]
        aF, aG = dict(zip(B2, aF)), dict(zip(B2, aG))
        for t in B2:
            f, g = B.two_cells[t]
            X, Yo = B.one_cells[f]
            if V(LW[(e0[X], aG[t])], eta1[g].theta) != V(eta1[f].theta, RW[(aF[t], e0[Yo])]):
                return False
        return True

    map2, f2_data = chaotic_layer(f2_families, f2_holds)
    map_id, id_data = chaotic_layer(id_families, id_holds)
    map_c, c_data = chaotic_layer(c_families, c_holds)
    raw = fibre_product(M, [map2, map_id, map_c])
    R = raw.total

    def decode_obj(T) -> PseudofunctorData:
        X = raw.over0[T][0]
        F0, F1 = obj_info[X]
        p2, pid, pc = raw.parts[T]
        F2 = dict(zip(B2, f2_data[map2.over0[p2][0], map2.over0[p2][1]]))
        gam = dict(zip(B0, id_data[map_id.over0[pid][0], map_id.over0[pid][1]]))
        dl = dict(zip(Bc, c_data[map_c.over0[pc][0], map_c.over0[pc][1]]))
        return PseudofunctorData(B, C, F0, F1, F2, gam, dl)

    candidates = {T: decode_obj(T) for T in R.objects}
    lawful = {T for T, F in candidates.items() if check_psfunctor(F).ok}
    bicat = fullsub_bicat(R, lambda T: T in lawful)
    psf = {T: candidates[T] for T in bicat.objects}
    pst = {}
    for U, (S, T) in bicat.one_cells.items():
        e0, _, _, eta1 = one_info[raw.over1[U][0]]
        pst[U] = PstransData(psf[S], psf[T], dict(e0), dict(eta1))
    mods = {}
    for W, (U1, U2) in bicat.two_cells.items():
        G = map1.over2[raw.over2[W][0]][0]
        mods[W] = ModificationData(pst[U1], pst[U2], dict(two_map[G]))
    return PseudoTower(B, C, base, map1, map2, map_id, map_c, raw, bicat, psf, pst, mods)


def build_pseudo_bicat(B: BicatPresentation, C: BicatPresentation,
                       budget: Budget | int | None = None) -> BicatPresentation:
    return pseudo_tower(B, C, budget).bicat


def tower_matches_oracle(tower: PseudoTower, budget: Budget | int | None = None) -> bool:
    """Cell-by-cell bijection between the layered Pseudo(B, C) and direct enumeration."""
    fs, ts, ms = pseudo_oracle(tower.src, tower.tgt, budget)

    def fkey(F):
        return F.key()

    def tkey(t):
        return fkey(t.src), fkey(t.tgt), t.key()

    def mkey(m):
        return tkey(m.src), tkey(m.tgt), m.key()

    def same(xs, ys, key):
        a, b = [key(x) for x in xs], [key(y) for y in ys]
        return len(set(b)) == len(b) and sorted(a) == sorted(b)

    return (same(fs, tower.psfunctor_of.values(), fkey)
            and same(ts, tower.pstrans_of.values(), tkey)
            and same(ms, tower.modification_of.values(), mkey))
