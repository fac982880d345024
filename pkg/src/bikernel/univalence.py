"""Local and global univalence of finite presentations, decided by counting.

In the set model the identity type of two cells has at most one inhabitant,
so idtoiso is an equivalence exactly when distinct cells have no invertible
2-cell / adjoint equivalence between them and equal cells have only the
canonical one.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .budget import Budget, as_budget
from .core import (
    AdjEquiv, BicatPresentation, Inv2Cell, adjequiv_structures, adjoint_equivalences,
    canonical_adjequiv, invertible_2cells, is_biinitial, triangles_hold,
)
from .errors import ConstructionFailed, PreconditionFailed, TypeMismatch


@dataclass
class Witness:
    cells: tuple[str, str]
    count: int
    reason: str

    def to_json(self) -> dict:
        return {"cells": list(self.cells), "count": self.count, "reason": self.reason}


@dataclass
class PartReport:
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        return {"status": self.status, "witnesses": [w.to_json() for w in self.witnesses]}


@dataclass
class UnivalenceReport:
    local: PartReport | None
    global_: PartReport | None

    @property
    def ok(self) -> bool:
        return all(part.ok for part in (self.local, self.global_) if part is not None)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.local is not None:
            out["local"] = self.local.to_json()
        if self.global_ is not None:
            out["global"] = self.global_.to_json()
        return out


def local_witnesses(p: BicatPresentation, pairs, budget: Budget) -> PartReport:
    rep = PartReport()
    for f, g in pairs:
        budget.charge()
        cells = invertible_2cells(p, f, g)
        if f != g and cells:
            rep.witnesses.append(Witness((f, g), len(cells), "invertible 2-cell between distinct 1-cells"))
        elif f == g and cells != [Inv2Cell(p.id2[f], p.id2[f])]:
            rep.witnesses.append(Witness((f, g), len(cells), "invertible 2-cells other than the identity"))
    return rep


def check_local_univalence(p: BicatPresentation, budget: Budget | int | None = None) -> PartReport:
    budget = as_budget(budget)
    pairs = [(f, g) for hom in sorted(p.homs.values()) for f in hom for g in hom]
    return local_witnesses(p, pairs, budget)


def check_global_univalence(p: BicatPresentation, budget: Budget | int | None = None) -> PartReport:
    budget = as_budget(budget)
    rep = PartReport()
    for a in p.objects:
        for b in p.objects:
            eqs = adjoint_equivalences(p, a, b, budget)
            if a != b and eqs:
                rep.witnesses.append(Witness((a, b), len(eqs), "adjoint equivalence between distinct objects"))
            elif a == b:
                canon = canonical_adjequiv(p, a)
                if canon not in eqs:
                    rep.witnesses.append(Witness((a, b), len(eqs), "canonical identity equivalence missing"))
                elif len(eqs) != 1:
                    rep.witnesses.append(Witness((a, b), len(eqs), "adjoint equivalences other than the identity"))
    return rep


def check_univalent(p: BicatPresentation, budget: Budget | int | None = None,
                    local: bool = True, global_: bool = True) -> UnivalenceReport:
    budget = as_budget(budget)
    return UnivalenceReport(
        check_local_univalence(p, budget) if local else None,
        check_global_univalence(p, budget) if global_ else None,
    )


def is_univalent(p: BicatPresentation) -> bool:
    return check_univalent(p).ok


def adjequiv_structure_count(p: BicatPresentation, f: str,
                             budget: Budget | int | None = None) -> int:
    return len(adjequiv_structures(p, f, budget))


def _verified(p: BicatPresentation, e: AdjEquiv) -> AdjEquiv:
    inv = p.inverses
    if inv.get(e.eta.theta) != e.eta.theta_inv or inv.get(e.eps.theta) != e.eps.theta_inv:
        raise ConstructionFailed("unit or counit is not invertible")
    if not triangles_hold(p, e.f, e.g, e.eta.theta, e.eps.theta):
        raise ConstructionFailed("triangle identities fail")
    return e


def compose_adjequiv(p: BicatPresentation, e1: AdjEquiv, e2: AdjEquiv) -> AdjEquiv:
    """Adjoint equivalence on e1.f . e2.f with right adjoint e2.g . e1.g."""
    f1, g1, f2, g2 = e1.f, e1.g, e2.f, e2.g
    if p.tgt1(f1) != p.src1(f2):
        raise TypeMismatch("adjoint equivalences are not composable")
    c, V, LW, RW = p.comp1, p.vc, p.lwhisker, p.rwhisker
    al, ali = p.lassoc, p.lassoc_inv
    f, g = c[(f1, f2)], c[(g2, g1)]
    # id => f1.g1 => f1.(id.g1) => f1.((f2.g2).g1) => ... => (f1.f2).(g2.g1)
    eta = V(
        e1.eta.theta,
        LW[(f1, p.lunitor_inv[g1])],
        LW[(f1, RW[(e2.eta.theta, g1)])],
        LW[(f1, ali[(f2, g2, g1)])],
        al[(f1, f2, c[(g2, g1)])],
    )
    # (g2.g1).(f1.f2) => g2.(g1.(f1.f2)) => g2.((g1.f1).f2) => g2.(id.f2) => g2.f2 => id
    eps = V(
        ali[(g2, g1, c[(f1, f2)])],
        LW[(g2, al[(g1, f1, f2)])],
        LW[(g2, RW[(e1.eps.theta, f2)])],
        LW[(g2, p.lunitor[f2])],
        e2.eps.theta,
    )
    inv = p.inverses
    if eta not in inv or eps not in inv:
        raise ConstructionFailed("composed unit or counit is not invertible")
    return _verified(p, AdjEquiv(f, g, Inv2Cell(eta, inv[eta]), Inv2Cell(eps, inv[eps])))


def transport_adjequiv(p: BicatPresentation, e: AdjEquiv, theta: Inv2Cell) -> AdjEquiv:
    """Move the adjoint equivalence along an invertible theta : e.f => f'."""
    f0, g = e.f, e.g
    f, f_back = p.two_cells[theta.theta]
    if f != f0:
        raise TypeMismatch("theta does not start at the underlying 1-cell")
    f1 = f_back
    V, LW, RW = p.vc, p.lwhisker, p.rwhisker
    eta = V(e.eta.theta, RW[(theta.theta, g)])
    eps = V(LW[(g, theta.theta_inv)], e.eps.theta)
    inv = p.inverses
    if eta not in inv or eps not in inv:
        raise ConstructionFailed("transported unit or counit is not invertible")
    return _verified(p, AdjEquiv(f1, g, Inv2Cell(eta, inv[eta]), Inv2Cell(eps, inv[eps])))


def biinitial_uniqueness_check(p: BicatPresentation) -> bool:
    """At most one biinitial object; refused unless p is univalent."""
    if not check_univalent(p).ok:
        raise PreconditionFailed("biinitial uniqueness is only asserted for univalent presentations")
    return sum(1 for a in p.objects if is_biinitial(p, a)) <= 1
