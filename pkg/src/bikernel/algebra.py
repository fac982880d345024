"""Algebras for a pseudofunctor, added 2-cells, and internal monads.

The bicategory of monads is assembled in layers: algebras for the identity,
two added-2-cell layers (unit and multiplication) combined by a product and a
sigma, then the full subpresentation on the monad laws. A direct search over
monad data serves as the independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

from .budget import Budget, as_budget, tup
from .core import BicatPresentation, Inv2Cell
from .display import (
    DispBicatPresentation, equation_disp, fullsub_of_total, prod_disp, projection_psfunctor,
    prop_disp, sigma_disp,
)
from .errors import ConstructionFailed, TypeMismatch
from .psfun import (
    PseudofunctorData, PstransData, check_pstrans, comp_psfunctor, comp_pstrans, id_psfunctor,
    id_pstrans,
)


@dataclass(frozen=True)
class MonadStructure:
    a: str
    m: str
    eta: str
    mu: str


def monad_laws_hold(p: BicatPresentation, s: MonadStructure) -> bool:
    m, eta, mu = s.m, s.eta, s.mu
    V = p.vc
    try:
        return (
            V(p.lwhisker[(m, eta)], mu) == p.runitor[m]
            and V(p.rwhisker[(eta, m)], mu) == p.lunitor[m]
            and V(p.lwhisker[(m, mu)], mu) == V(p.lassoc[(m, m, m)], p.rwhisker[(mu, m)], mu)
        )
    except KeyError:
        return False


# ---------------------------------------------------------------- oracle

def enumerate_monads(p: BicatPresentation, budget: Budget | int | None = None) -> list[MonadStructure]:
    budget = as_budget(budget)
    out = []
    for a in p.objects:
        for m in p.hom(a, a):
            for eta in p.cells2(p.id1[a], m):
                for mu in p.cells2(p.comp1[(m, m)], m):
                    budget.charge()
                    s = MonadStructure(a, m, eta, mu)
                    if monad_laws_hold(p, s):
                        out.append(s)
    return out


def monad_map_laws_hold(p: BicatPresentation, s: MonadStructure, t: MonadStructure,
                        f: str, n: str) -> bool:
    """Unit and multiplication compatibility of n : m_a . f => f . m_b."""
    V, LW, RW = p.vc, p.lwhisker, p.rwhisker
    ma, mb = s.m, t.m
    unit = V(RW[(s.eta, f)], n) == V(p.lunitor[f], p.runitor_inv[f], LW[(f, t.eta)])
    mult = V(RW[(s.mu, f)], n) == V(
        p.lassoc_inv[(ma, ma, f)], LW[(ma, n)], p.lassoc[(ma, f, mb)],
        RW[(n, mb)], p.lassoc_inv[(f, mb, mb)], LW[(f, t.mu)],
    )
    return unit and mult


def monad_oracle(p: BicatPresentation, budget: Budget | int | None = None):
    """All monads, monad maps (s, t, f, n) and monad 2-cells (map, map, x)."""
    budget = as_budget(budget)
    monads = enumerate_monads(p, budget)
    inv = p.inverses
    maps = []
    for s in monads:
        for t in monads:
            for f in p.hom(s.a, t.a):
                for n in p.cells2(p.comp1[(s.m, f)], p.comp1[(f, t.m)]):
                    budget.charge()
                    if n in inv and monad_map_laws_hold(p, s, t, f, n):
                        maps.append((s, t, f, n))
    cells = []
    for u in maps:
        for v in maps:
            if u[:2] != v[:2]:
                continue
            s, t, f, nf = u
            g, ng = v[2], v[3]
            for x in p.cells2(f, g):
                budget.charge()
                if p.vc(p.lwhisker[(s.m, x)], ng) == p.vc(nf, p.rwhisker[(x, t.m)]):
                    cells.append((u, v, x))
    return monads, maps, cells


# ---------------------------------------------------------------- algebras

def alg_disp(F: PseudofunctorData, budget: Budget | int | None = None) -> DispBicatPresentation:
    """Algebras h : F(a) -> a with invertible squares h_a . f => F(f) . h_b over f."""
    return _alg_layer(F, budget)[0]


def _alg_layer(F: PseudofunctorData, budget: Budget | int | None = None):
    budget = as_budget(budget)
    if not (F.src is F.tgt or F.src == F.tgt):
        raise TypeMismatch("algebras need an endo-pseudofunctor")
    B = F.src
    V, LW, RW, al, ali = B.vc, B.lwhisker, B.rwhisker, B.lassoc, B.lassoc_inv
    inv = B.inverses
    d0 = {a: list(B.hom(F.F0[a], a)) for a in B.objects}
    d1: dict[tuple[str, str, str], list[str]] = {}
    square: dict[tuple[str, str], tuple[str, str, str]] = {}
    for f, (a, b) in B.one_cells.items():
        for ha in d0[a]:
            for hb in d0[b]:
                for t in B.cells2(B.comp1[(ha, f)], B.comp1[(F.F1[f], hb)]):
                    budget.charge()
                    if t in inv:
                        tok = tup(ha, hb, t)
                        d1.setdefault((f, ha, hb), []).append(tok)
                        square[(f, tok)] = (ha, hb, t)
    ids = {}
    for a in B.objects:
        for h in d0[a]:
            cell = V(B.runitor[h], B.lunitor_inv[h], RW[(F.identitor[a], h)])
            ids[(a, h)] = tup(h, h, cell)
    leaving: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for (f, tok), (ha, hb, t) in square.items():
        leaving.setdefault((B.src1(f), ha), []).append((f, tok))
    comps = {}
    for (f, tok), (ha, hb, af) in square.items():
        for g, tok2 in leaving.get((B.tgt1(f), hb), ()):
            _, hc, ag = square[(g, tok2)]
            Ff, Fg = F.F1[f], F.F1[g]
            cell = V(
                al[(ha, f, g)], RW[(af, g)], ali[(Ff, hb, g)], LW[(Ff, ag)],
                al[(Ff, Fg, hc)], RW[(F.compositor[(f, g)], hc)],
            )
            comps[(f, tok, g, tok2)] = tup(ha, hc, cell)

    def two_pred(theta: str, ff: str, gg: str) -> bool:
        f, g = B.two_cells[theta]
        ha, hb, af = square[(f, ff)]
        ag = square[(g, gg)][2]
        return V(LW[(ha, theta)], ag) == V(af, RW[(F.F2[theta], hb)])

    return prop_disp(B, d0, d1, ids, comps, two_pred), square


# ---------------------------------------------------------------- added 2-cells

def add2cell_disp(D: DispBicatPresentation, S: PseudofunctorData, l: PstransData,
                  r: PstransData, budget: Budget | int | None = None) -> DispBicatPresentation:
    """2-cells l(x) => r(x) over each total object x, with commuting squares over 1-cells."""
    B = D.base
    T = D.total
    pi = projection_psfunctor(D)
    src, tgt = comp_psfunctor(pi, S), comp_psfunctor(pi, id_psfunctor(B))
    for name, t in (("l", l), ("r", r)):
        if not (t.src.same_as(src) and t.tgt.same_as(tgt)):
            raise TypeMismatch(f"{name} does not run from pi.S to pi.id")
    V, LW, RW = B.vc, B.lwhisker, B.rwhisker
    D0 = {X: list(B.cells2(l.eta0[X], r.eta0[X])) for X in T.objects}

    def holds(F: str, x: str, y: str) -> bool:
        f = pi.F1[F]
        return V(RW[(x, f)], r.eta1[F].theta) == V(l.eta1[F].theta, LW[(src.F1[F], y)])

    return equation_disp(T, D0, holds, budget)


# ---------------------------------------------------------------- the monad tower

@dataclass
class MonadTower:
    base: BicatPresentation
    algebras: DispBicatPresentation
    unit_layer: DispBicatPresentation
    mult_layer: DispBicatPresentation
    structured: DispBicatPresentation
    monads: DispBicatPresentation
    bicat: BicatPresentation
    monad_of: dict[str, MonadStructure]
    # total 1-cell -> (base 1-cell f, invertible n : m_a . f => f . m_b)
    map_of: dict[str, tuple[str, str]]
    l_unit: PstransData
    l_mult: PstransData
    r: PstransData


def carrier_pstrans(M1: DispBicatPresentation, square: dict) -> PstransData:
    """The transformation sending an algebra (a, h) to h, with the squares as naturality cells."""
    B = M1.base
    pi = projection_psfunctor(M1)
    P = comp_psfunctor(pi, id_psfunctor(B))
    inv = B.inverses
    eta0 = {X: M1.over0[X][1] for X in M1.total.objects}
    eta1 = {}
    for F, key in M1.over1.items():
        t = square[key][2]
        eta1[F] = Inv2Cell(t, inv[t])
    return PstransData(P, P, eta0, eta1)


def monad_tower(B: BicatPresentation, budget: Budget | int | None = None) -> MonadTower:
    budget = as_budget(budget)
    S = id_psfunctor(B)
    M1, square = _alg_layer(S, budget)
    r = carrier_pstrans(M1, square)
    l_unit = id_pstrans(r.src)
    l_mult = comp_pstrans(r, r)
    for t in (r, l_unit, l_mult):
        rep = check_pstrans(t)
        if not rep.ok:
            raise ConstructionFailed(f"endpoint transformation fails {sorted(rep.laws())}")
    unit = add2cell_disp(M1, S, l_unit, r, budget)
    mult = add2cell_disp(M1, S, l_mult, r, budget)
    prod = prod_disp(unit, mult)
    M2 = sigma_disp(M1, prod)

    def decode(X: str) -> MonadStructure:
        (Y,) = M2.parts[X]
        pu, pm = prod.parts[Y]
        a, h = M1.over0[unit.over0[pu][0]]
        return MonadStructure(a, h, unit.over0[pu][1], mult.over0[pm][1])

    def decode_map(F: str) -> tuple[str, str]:
        (Y,) = M2.parts[F]
        pu = prod.parts[Y][0]
        f, tok = M1.over1[unit.over1[pu][0]]
        return f, square[(f, tok)][2]

    candidates = {X: decode(X) for X in M2.total.objects}
    lawful = {X for X, s in candidates.items() if monad_laws_hold(B, s)}
    M = fullsub_of_total(M2, lambda X: X in lawful)
    return MonadTower(B, M1, unit, mult, M2, M, M.total,
                      {X: candidates[X] for X in M.total.objects},
                      {F: decode_map(F) for F in M.total.one_cells}, l_unit, l_mult, r)


def monad_bicat(B: BicatPresentation, budget: Budget | int | None = None) -> BicatPresentation:
    return monad_tower(B, budget).bicat


def tower_matches_oracle(tower: MonadTower, budget: Budget | int | None = None) -> bool:
    monads, maps, cells = monad_oracle(tower.base, budget)
    counts = tower.bicat.size()
    objs = sorted((s.a, s.m, s.eta, s.mu) for s in monads)
    mine = sorted((s.a, s.m, s.eta, s.mu) for s in tower.monad_of.values())
    return objs == mine and counts == (len(monads), len(maps), len(cells))
