"""Displayed pseudofunctors, transformations, invertible modifications and biequivalences.

Displayed data is stored through total tokens, so every component is a pair
of a base component and a fiber component. A displayed law is then the total
law over a base law that already holds. When the target fibers of 2-cells have
at most one element, those laws hold automatically and are not re-checked:
the report records zero remaining obligations.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import BicatPresentation, Inv2Cell, LawReport, Violation
from .display import DispBicatPresentation, is_locally_propositional
from .errors import ConstructionFailed, DanglingReference, TypeMismatch
from .psfun import (
    BiequivalenceData, BiequivalenceReport, ModificationData, PseudofunctorData, PstransData,
    _same, check_biequivalence, check_modification, check_pstrans, check_psfunctor,
    comp_psfunctor, comp_pstrans, id_psfunctor, id_pstrans, is_invertible_modification,
)


@dataclass
class DispLawReport(LawReport):
    obligations: int = 0

    def to_json(self) -> dict:
        out = super().to_json()
        out["obligations"] = self.obligations
        return out


@dataclass(frozen=True, eq=False)
class DispPsfunctorData:
    base: PseudofunctorData
    src: DispBicatPresentation
    tgt: DispBicatPresentation
    F0: dict[str, str]
    F1: dict[str, str]
    F2: dict[str, str]
    identitor: dict[str, str]
    compositor: dict[tuple[str, str], str]


@dataclass(frozen=True, eq=False)
class DispPstransData:
    base: PstransData
    src: DispPsfunctorData
    tgt: DispPsfunctorData
    eta0: dict[str, str]
    eta1: dict[str, Inv2Cell]


@dataclass(frozen=True, eq=False)
class DispInvModificationData:
    base: ModificationData
    src: DispPstransData
    tgt: DispPstransData
    gamma: dict[str, str]


@dataclass(frozen=True, eq=False)
class DispBiequivalenceData:
    base: BiequivalenceData
    L: DispPsfunctorData
    R: DispPsfunctorData
    eta: DispPstransData
    eta_i: DispPstransData
    eps: DispPstransData
    eps_i: DispPstransData
    m1: DispInvModificationData
    m2: DispInvModificationData
    m3: DispInvModificationData
    m4: DispInvModificationData


# ---------------------------------------------------------------- totals

def total_psfunctor(dF: DispPsfunctorData) -> PseudofunctorData:
    return PseudofunctorData(dF.src.total, dF.tgt.total, dict(dF.F0), dict(dF.F1), dict(dF.F2),
                             dict(dF.identitor), dict(dF.compositor))


def total_pstrans(de: DispPstransData) -> PstransData:
    return PstransData(total_psfunctor(de.src), total_psfunctor(de.tgt),
                       dict(de.eta0), dict(de.eta1))


def total_invmodification(dm: DispInvModificationData) -> ModificationData:
    return ModificationData(total_pstrans(dm.src), total_pstrans(dm.tgt), dict(dm.gamma))


# ---------------------------------------------------------------- checks

class _Over:
    """Collects 'over' violations: a displayed component not lying over its base component."""

    def __init__(self, rep: LawReport):
        self.rep = rep

    def at(self, d: DispBicatPresentation, tier: str, what, cell, want) -> None:
        over = {"0": d.over0, "1": d.over1, "2": d.over2}[tier]
        if cell is None:
            raise DanglingReference(f"displayed component {what} is missing")
        if cell not in over:
            raise DanglingReference(f"displayed component {what} names unknown cell {cell}")
        self.rep.instances["over"] = self.rep.instances.get("over", 0) + 1
        if over[cell][0] != want:
            self.rep.violations.append(Violation("over", tuple(_flat(what)), over[cell][0], want))


def _flat(what):
    return what if isinstance(what, tuple) else (what,)


def _require_over(d: DispBicatPresentation, base: BicatPresentation, what: str) -> None:
    if not _same(d.base, base):
        raise TypeMismatch(f"{what} is not displayed over the base component's presentation")


def _merge_laws(rep: DispLawReport, total_rep: LawReport, discharge: bool) -> None:
    """Typing always counts; the remaining laws only when they are real obligations."""
    for v in total_rep.violations:
        if v.law == "typing" or not discharge:
            rep.violations.append(v)
    for law, n in total_rep.instances.items():
        if law == "typing" or not discharge:
            rep.instances[law] = rep.instances.get(law, 0) + n
            if law not in ("typing", "invertible"):
                rep.obligations += n


def _base_violations(rep: LawReport, base_rep: LawReport) -> None:
    for v in base_rep.violations:
        rep.violations.append(Violation(f"base.{v.law}", v.cells, v.lhs, v.rhs))


def check_disp_psfunctor(dF: DispPsfunctorData) -> DispLawReport:
    b = dF.base
    _require_over(dF.src, b.src, "source")
    _require_over(dF.tgt, b.tgt, "target")
    rep = DispLawReport()
    _base_violations(rep, check_psfunctor(b))
    S, T = dF.src, dF.tgt
    o = _Over(rep)
    for X, (a, _) in S.over0.items():
        o.at(T, "0", ("F0", X), dF.F0.get(X), b.F0[a])
        o.at(T, "2", ("identitor", X), dF.identitor.get(X), b.identitor[a])
    for F, (f, _) in S.over1.items():
        o.at(T, "1", ("F1", F), dF.F1.get(F), b.F1[f])
    for s, (t, _) in S.over2.items():
        o.at(T, "2", ("F2", s), dF.F2.get(s), b.F2[t])
    for (F, G) in S.total.comp1:
        fg = (S.over1[F][0], S.over1[G][0])
        o.at(T, "2", ("compositor", F, G), dF.compositor.get((F, G)), b.compositor[fg])
    if rep.ok:
        discharge = is_locally_propositional(T)
        _merge_laws(rep, check_psfunctor(total_psfunctor(dF)), discharge)
        if discharge:
            _invertible_lifts(rep, T, [("identitor", X, c) for X, c in dF.identitor.items()]
                              + [("compositor",) + k + (c,) for k, c in dF.compositor.items()])
    return rep


def _invertible_lifts(rep: LawReport, d: DispBicatPresentation, items) -> None:
    """Structure cells must stay invertible even when equations are discharged."""
    inv = d.total.inverses
    for item in items:
        *what, cell = item
        rep.instances["invertible"] = rep.instances.get("invertible", 0) + 1
        if cell not in inv:
            rep.violations.append(Violation("invertible", tuple(what), cell, None))


def _pstrans_over(de: DispPstransData, rep: DispLawReport) -> None:
    b = de.base
    dF, dG = de.src, de.tgt
    if not (dF.base.same_as(b.src) and dG.base.same_as(b.tgt)):
        raise TypeMismatch("displayed endpoints do not lie over the base endpoints")
    S, T = dF.src, dF.tgt
    o = _Over(rep)
    for X, (a, _) in S.over0.items():
        o.at(T, "1", ("eta0", X), de.eta0.get(X), b.eta0[a])
    for F, (f, _) in S.over1.items():
        cell = de.eta1.get(F)
        if cell is None:
            raise DanglingReference(f"displayed eta1 missing at {F}")
        o.at(T, "2", ("eta1", F), cell.theta, b.eta1[f].theta)
        o.at(T, "2", ("eta1_inv", F), cell.theta_inv, b.eta1[f].theta_inv)


def check_disp_pstrans(de: DispPstransData) -> DispLawReport:
    rep = DispLawReport()
    _base_violations(rep, check_pstrans(de.base))
    _pstrans_over(de, rep)
    if rep.ok:
        T = de.src.tgt
        discharge = is_locally_propositional(T)
        _merge_laws(rep, check_pstrans(total_pstrans(de)), discharge)
        if discharge:
            _invertible_lifts(rep, T, [("eta1", F, c.theta) for F, c in de.eta1.items()])
    return rep


def check_disp_invmodification(dm: DispInvModificationData) -> DispLawReport:
    b = dm.base
    rep = DispLawReport()
    _base_violations(rep, check_modification(b))
    if not (dm.src.base.same_as(b.src) and dm.tgt.base.same_as(b.tgt)):
        raise TypeMismatch("displayed endpoints do not lie over the base endpoints")
    S, T = dm.src.src.src, dm.src.src.tgt
    o = _Over(rep)
    for X, (a, _) in S.over0.items():
        o.at(T, "2", ("gamma", X), dm.gamma.get(X), b.gamma[a])
    if not rep.ok:
        return rep
    total = total_invmodification(dm)
    discharge = is_locally_propositional(T)
    _merge_laws(rep, check_modification(total), discharge)
    rep.instances["invertible"] = rep.instances.get("invertible", 0) + 1
    if not is_invertible_modification(total):
        rep.violations.append(Violation("invertible", ("gamma",), None, None))
    return rep


# ---------------------------------------------------------------- identities and composites

def disp_id_psfunctor(d: DispBicatPresentation) -> DispPsfunctorData:
    t = id_psfunctor(d.total)
    return DispPsfunctorData(id_psfunctor(d.base), d, d, t.F0, t.F1, t.F2, t.identitor,
                             t.compositor)


def disp_comp_psfunctor(dF: DispPsfunctorData, dG: DispPsfunctorData) -> DispPsfunctorData:
    """dF then dG, over the composite of the bases."""
    if not (_same(dF.tgt.total, dG.src.total) and _same(dF.tgt.base, dG.src.base)):
        raise TypeMismatch("displayed pseudofunctors are not composable")
    t = comp_psfunctor(total_psfunctor(dF), total_psfunctor(dG))
    return DispPsfunctorData(comp_psfunctor(dF.base, dG.base), dF.src, dG.tgt,
                             t.F0, t.F1, t.F2, t.identitor, t.compositor)


def disp_id_pstrans(dF: DispPsfunctorData) -> DispPstransData:
    t = id_pstrans(total_psfunctor(dF))
    return DispPstransData(id_pstrans(dF.base), dF, dF, t.eta0, t.eta1)


def disp_comp_pstrans(de: DispPstransData, dt: DispPstransData) -> DispPstransData:
    t = comp_pstrans(total_pstrans(de), total_pstrans(dt))
    return DispPstransData(comp_pstrans(de.base, dt.base), de.src, dt.tgt, t.eta0, t.eta1)


def _same_disp_psfunctor(x: DispPsfunctorData, y: DispPsfunctorData) -> bool:
    return x.base.same_as(y.base) and total_psfunctor(x).same_as(total_psfunctor(y))


def _same_disp_pstrans(x: DispPstransData, y: DispPstransData) -> bool:
    return x.base.same_as(y.base) and total_pstrans(x).same_as(total_pstrans(y))


# ---------------------------------------------------------------- biequivalences

def check_disp_biequivalence(db: DispBiequivalenceData) -> BiequivalenceReport:
    """Base biequivalence first, then every displayed component and its endpoints."""
    out = BiequivalenceReport()
    out.parts["base"] = check_biequivalence(db.base, check_objects=False)
    base_rep = LawReport()
    if not out.parts["base"].ok:
        for name in out.parts["base"].failing():
            base_rep.violations.append(Violation("base", (name,), None, None))
    out.parts["base"] = base_rep
    if not base_rep.ok:
        return out
    L, R = db.L, db.R
    out.parts["L"] = check_disp_psfunctor(L)
    out.parts["R"] = check_disp_psfunctor(R)
    if not (out.parts["L"].ok and out.parts["R"].ok):
        return out
    RL, LR = disp_comp_psfunctor(R, L), disp_comp_psfunctor(L, R)
    idB, idC = disp_id_psfunctor(L.src), disp_id_psfunctor(L.tgt)
    for name, t, s, g in (("eta", db.eta, RL, idC), ("eta_i", db.eta_i, idC, RL),
                          ("eps", db.eps, LR, idB), ("eps_i", db.eps_i, idB, LR)):
        rep = check_disp_pstrans(t)
        for what, got, want in (("src", t.src, s), ("tgt", t.tgt, g)):
            if not _same_disp_psfunctor(got, want):
                rep.violations.append(Violation("endpoints", (what,), None, None))
        out.parts[name] = rep
    if not all(out.parts[k].ok for k in ("eta", "eta_i", "eps", "eps_i")):
        return out
    for name, m, first, second, target in (
        ("m1", db.m1, db.eta, db.eta_i, RL), ("m2", db.m2, db.eta_i, db.eta, idC),
        ("m3", db.m3, db.eps, db.eps_i, LR), ("m4", db.m4, db.eps_i, db.eps, idB),
    ):
        rep = DispLawReport()
        for what, got, want in (("src", m.src, disp_comp_pstrans(first, second)),
                                ("tgt", m.tgt, disp_id_pstrans(target))):
            if not _same_disp_pstrans(got, want):
                rep.violations.append(Violation("endpoints", (what,), None, None))
        if rep.ok:
            rep = check_disp_invmodification(m)
        out.parts[name] = rep
    return out


def total_biequivalence(db: DispBiequivalenceData) -> BiequivalenceData:
    return BiequivalenceData(
        total_psfunctor(db.L), total_psfunctor(db.R),
        total_pstrans(db.eta), total_pstrans(db.eta_i),
        total_pstrans(db.eps), total_pstrans(db.eps_i),
        total_invmodification(db.m1), total_invmodification(db.m2),
        total_invmodification(db.m3), total_invmodification(db.m4),
    )


# ---------------------------------------------------------------- forced data

def lift_2cell(d: DispBicatPresentation, base_cell: str, F: str, G: str) -> str:
    """The displayed 2-cell over ``base_cell`` from F to G, which must be unique."""
    found = [S for S in d.total.cells2(F, G) if d.over2[S][0] == base_cell]
    if len(found) != 1:
        raise ConstructionFailed(
            f"{len(found)} displayed 2-cells over {base_cell} from {F} to {G}, expected one")
    return found[0]


def lift_1cell(d: DispBicatPresentation, base_cell: str, X: str, Y: str) -> str:
    """The displayed identity when possible, otherwise the unique displayed 1-cell."""
    T, B = d.total, d.base
    if X == Y and B.id1.get(d.over0[X][0]) == base_cell:
        return T.id1[X]
    found = [F for F in T.hom(X, Y) if d.over1[F][0] == base_cell]
    if len(found) != 1:
        raise ConstructionFailed(
            f"{len(found)} displayed 1-cells over {base_cell} from {X} to {Y}, expected one")
    return found[0]


def forced_disp_psfunctor(base: PseudofunctorData, src: DispBicatPresentation,
                          tgt: DispBicatPresentation, F0: dict[str, str],
                          F1: dict[str, str]) -> DispPsfunctorData:
    """Fill in the 2-cell data of a displayed pseudofunctor by unique lifts."""
    S, T = src.total, tgt.total
    F2 = {s: lift_2cell(tgt, base.F2[src.over2[s][0]], F1[F], F1[G])
          for s, (F, G) in S.two_cells.items()}
    ident = {X: lift_2cell(tgt, base.identitor[src.over0[X][0]], T.id1[F0[X]], F1[S.id1[X]])
             for X in S.objects}
    comp = {}
    for (F, G), H in S.comp1.items():
        cell = base.compositor[(src.over1[F][0], src.over1[G][0])]
        comp[(F, G)] = lift_2cell(tgt, cell, T.comp1[(F1[F], F1[G])], F1[H])
    return DispPsfunctorData(base, src, tgt, dict(F0), dict(F1), F2, ident, comp)


def forced_disp_pstrans(base: PstransData, dF: DispPsfunctorData,
                        dG: DispPsfunctorData) -> DispPstransData:
    src, tgt = dF.src, dF.tgt
    S, T = src.total, tgt.total
    eta0 = {X: lift_1cell(tgt, base.eta0[src.over0[X][0]], dF.F0[X], dG.F0[X]) for X in S.objects}
    eta1 = {}
    for F, (X, Y) in S.one_cells.items():
        cell = base.eta1[src.over1[F][0]]
        fwd_src, fwd_tgt = T.comp1[(eta0[X], dG.F1[F])], T.comp1[(dF.F1[F], eta0[Y])]
        eta1[F] = Inv2Cell(lift_2cell(tgt, cell.theta, fwd_src, fwd_tgt),
                           lift_2cell(tgt, cell.theta_inv, fwd_tgt, fwd_src))
    return DispPstransData(base, dF, dG, eta0, eta1)


def forced_disp_invmodification(base: ModificationData, de: DispPstransData,
                                dt: DispPstransData) -> DispInvModificationData:
    src, tgt = de.src.src, de.src.tgt
    gamma = {X: lift_2cell(tgt, base.gamma[src.over0[X][0]], de.eta0[X], dt.eta0[X])
             for X in src.total.objects}
    return DispInvModificationData(base, de, dt, gamma)


def forced_disp_biequivalence(base: BiequivalenceData, D: DispBicatPresentation,
                              E: DispBicatPresentation, L0: dict, L1: dict, R0: dict,
                              R1: dict) -> DispBiequivalenceData:
    """Displayed biequivalence between locally propositional D and E from object and 1-cell maps.

    D lies over the source of ``base.L`` and E over its target. Unit and
    counit components are displayed identities or unique displayed 1-cells;
    everything at the level of 2-cells is a unique lift.
    """
    L = forced_disp_psfunctor(base.L, D, E, L0, L1)
    R = forced_disp_psfunctor(base.R, E, D, R0, R1)
    RL, LR = disp_comp_psfunctor(R, L), disp_comp_psfunctor(L, R)
    idD, idE = disp_id_psfunctor(D), disp_id_psfunctor(E)
    eta = forced_disp_pstrans(base.eta, RL, idE)
    eta_i = forced_disp_pstrans(base.eta_i, idE, RL)
    eps = forced_disp_pstrans(base.eps, LR, idD)
    eps_i = forced_disp_pstrans(base.eps_i, idD, LR)
    mods = []
    for m, first, second, target in ((base.m1, eta, eta_i, RL), (base.m2, eta_i, eta, idE),
                                     (base.m3, eps, eps_i, LR), (base.m4, eps_i, eps, idD)):
        mods.append(forced_disp_invmodification(
            m, disp_comp_pstrans(first, second), disp_id_pstrans(target)))
    return DispBiequivalenceData(base, L, R, eta, eta_i, eps, eps_i, *mods)


def disp_identity_biequivalence(d: DispBicatPresentation) -> DispBiequivalenceData:
    """The identity displayed biequivalence over the identity biequivalence of the base."""
    from .psfun import identity_biequivalence

    base = identity_biequivalence(d.base)
    I = disp_id_psfunctor(d)
    II = disp_comp_psfunctor(I, I)
    t = disp_id_pstrans(II)
    eta = DispPstransData(base.eta, II, I, t.eta0, t.eta1)
    eta_i = DispPstransData(base.eta_i, I, II, t.eta0, t.eta1)
    m1 = _disp_unit_modification(base.m1, disp_comp_pstrans(eta, eta_i), disp_id_pstrans(II))
    m2 = _disp_unit_modification(base.m2, disp_comp_pstrans(eta_i, eta), disp_id_pstrans(I))
    return DispBiequivalenceData(base, I, I, eta, eta_i, eta, eta_i, m1, m2, m1, m2)


def _disp_unit_modification(base: ModificationData, src: DispPstransData,
                            tgt: DispPstransData) -> DispInvModificationData:
    T = src.src.tgt.total
    return DispInvModificationData(base, src, tgt,
                                   {X: T.lunitor[tgt.eta0[X]] for X in src.eta0})
