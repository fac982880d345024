"""Displayed bicategories over a finite base.

A displayed presentation is stored through its total presentation: every
total cell ``<base>|<disp>`` remembers the base cell it lies over and its
fiber token. Displayed operations are the total operations, and because base
laws hold on the nose, the displayed laws are exactly the laws of the total
presentation. Fiber tokens must be unique among the displayed cells over a
given base cell.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

from .budget import Budget, as_budget, tup
from .core import (
    TABLES, AdjEquiv, BicatPresentation, Inv2Cell, LawReport, Violation, adjequiv_structures,
    canonical_adjequiv, check_laws, product_bicat, validate_presentation,
)
from .errors import (
    ChaoticClosureViolation, ConstructionFailed, DanglingReference, DuplicateId, TypeMismatch,
)
from .univalence import PartReport, UnivalenceReport, Witness


def pair(base: str, disp: str) -> str:
    return f"{base}|{disp}"


@dataclass(frozen=True, eq=False)
class DispBicatPresentation:
    base: BicatPresentation
    total: BicatPresentation
    over0: dict[str, tuple[str, str]]
    over1: dict[str, tuple[str, str]]
    over2: dict[str, tuple[str, str]]
    # for fiber products: total cell -> the component total cells it pairs
    parts: dict[str, tuple[str, ...]] | None = None

    @cached_property
    def d0(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.base.objects}
        for X in sorted(self.over0):
            a, x = self.over0[X]
            out[a].append(x)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def d1(self) -> dict[tuple[str, str, str], tuple[str, ...]]:
        out: dict[tuple, list[str]] = {}
        for F in sorted(self.over1):
            f, ff = self.over1[F]
            X, Y = self.total.one_cells[F]
            out.setdefault((f, self.over0[X][1], self.over0[Y][1]), []).append(ff)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def d2(self) -> dict[tuple[str, str, str], tuple[str, ...]]:
        out: dict[tuple, list[str]] = {}
        for T in sorted(self.over2):
            t, tt = self.over2[T]
            F, G = self.total.two_cells[T]
            out.setdefault((t, self.over1[F][1], self.over1[G][1]), []).append(tt)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def objects_over(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.base.objects}
        for X in sorted(self.over0):
            out[self.over0[X][0]].append(X)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def cells1_over(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {f: [] for f in self.base.one_cells}
        for F in sorted(self.over1):
            out[self.over1[F][0]].append(F)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def cells2_over(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {t: [] for t in self.base.two_cells}
        for T in sorted(self.over2):
            out[self.over2[T][0]].append(T)
        return {k: tuple(v) for k, v in out.items()}

    def size(self) -> tuple[int, int, int]:
        return self.total.size()


@dataclass(frozen=True)
class DispInv2Cell:
    base: Inv2Cell
    theta: str
    theta_inv: str


@dataclass(frozen=True)
class DispAdjEquiv:
    base: AdjEquiv
    f: str
    g: str
    eta: DispInv2Cell
    eps: DispInv2Cell


# ---------------------------------------------------------------- validation

def _over_key(d: DispBicatPresentation, key, tiers):
    maps = {"o": d.over0, "1": d.over1, "2": d.over2}
    parts = key if isinstance(key, tuple) else (key,)
    out = tuple(maps[t][x][0] for x, t in zip(parts, tiers))
    return out if isinstance(key, tuple) else out[0]


ARITY = {"id1": ("o", "1"), "comp1": ("11", "1"), "id2": ("1", "2"), "vcomp": ("22", "2"),
         "lwhisker": ("12", "2"), "rwhisker": ("21", "2"), "lunitor": ("1", "2"),
         "lunitor_inv": ("1", "2"), "runitor": ("1", "2"), "runitor_inv": ("1", "2"),
         "lassoc": ("111", "2"), "lassoc_inv": ("111", "2")}


def validate_disp(d: DispBicatPresentation) -> None:
    """Every total cell and table entry lies over the matching base cell or entry."""
    T, B = d.total, d.base
    for tier, cells, over, known in (
        ("object", set(T.objects), d.over0, set(B.objects)),
        ("1-cell", T.one_cells, d.over1, B.one_cells),
        ("2-cell", T.two_cells, d.over2, B.two_cells),
    ):
        if set(cells) != set(over):
            raise DanglingReference(f"total {tier}s and their base assignment disagree")
        for c, (b, _) in over.items():
            if b not in known:
                raise DanglingReference(f"{tier} {c} lies over unknown {b}")
    seen: dict[tuple, str] = {}
    for over, tier in ((d.over1, "1"), (d.over2, "2")):
        for c, key in over.items():
            if (tier, key) in seen:
                raise DuplicateId(f"fiber token {key[1]} repeats over {key[0]}")
            seen[(tier, key)] = c
    for F, (X, Y) in T.one_cells.items():
        if B.one_cells[d.over1[F][0]] != (d.over0[X][0], d.over0[Y][0]):
            raise TypeMismatch(f"1-cell {F} has endpoints over the wrong objects")
    for S, (F, G) in T.two_cells.items():
        if B.two_cells[d.over2[S][0]] != (d.over1[F][0], d.over1[G][0]):
            raise TypeMismatch(f"2-cell {S} has endpoints over the wrong 1-cells")
    for name in TABLES:
        args, res = ARITY[name]
        base_table = getattr(B, name)
        for key, val in getattr(T, name).items():
            bkey = _over_key(d, key, args)
            bval = _over_key(d, val, res)
            if base_table.get(bkey) != bval:
                raise TypeMismatch(f"{name}[{key}] does not lie over {name}[{bkey}]")


def check_disp_laws(d: DispBicatPresentation, budget: Budget | int | None = None) -> LawReport:
    validate_disp(d)
    rep = validate_presentation(d.total)
    if not rep.ok:
        return rep
    return check_laws(d.total, budget)


def total_bicat(d: DispBicatPresentation) -> BicatPresentation:
    return d.total


def projection_psfunctor(d: DispBicatPresentation):
    from .psfun import PseudofunctorData

    B = d.base
    return PseudofunctorData(
        src=d.total, tgt=B,
        F0={X: a for X, (a, _) in d.over0.items()},
        F1={F: f for F, (f, _) in d.over1.items()},
        F2={S: t for S, (t, _) in d.over2.items()},
        identitor={X: B.id2[B.id1[a]] for X, (a, _) in d.over0.items()},
        compositor={(F, G): B.id2[B.comp1[(d.over1[F][0], d.over1[G][0])]]
                    for (F, G) in d.total.comp1},
    )


# ---------------------------------------------------------------- generic builder

def prop_disp(base: BicatPresentation, d0: dict, d1: dict, id_table: dict, comp_table: dict,
              cell_pred: Callable[[str, str, str], bool] | None = None,
              error=ConstructionFailed) -> DispBicatPresentation:
    """Displayed presentation whose 2-cell fibers have at most one element.

    ``d0[a]`` lists fiber objects, ``d1[(f, x, y)]`` fiber 1-cells,
    ``id_table[(a, x)]`` and ``comp_table[(f, ff, g, gg)]`` the displayed
    identities and composites, and ``cell_pred(theta, ff, gg)`` says whether the
    fiber over theta between ff and gg is inhabited (always, when omitted).
    Every displayed 2-cell operation is then forced; ``error`` is raised when a
    forced cell is missing.
    """
    B = base
    over0, over1, over2 = {}, {}, {}
    objects = []
    for a in B.objects:
        for x in d0.get(a, ()):
            X = pair(a, x)
            if X in over0:
                raise DuplicateId(f"fiber object {x} repeats over {a}")
            over0[X] = (a, x)
            objects.append(X)
    one = {}
    ends: dict[tuple[str, str], tuple[str, str]] = {}
    for (f, x, y), toks in d1.items():
        if f not in B.one_cells:
            raise DanglingReference(f"fiber 1-cells over unknown {f}")
        a, b = B.one_cells[f]
        for ff in toks:
            F = pair(f, ff)
            if F in one:
                raise DuplicateId(f"fiber 1-cell {ff} repeats over {f}")
            one[F] = (pair(a, x), pair(b, y))
            over1[F] = (f, ff)
            ends[(f, ff)] = (x, y)
    for F, (X, Y) in one.items():
        if X not in over0 or Y not in over0:
            raise DanglingReference(f"fiber 1-cell {F} has an unknown endpoint")
    by_base: dict[str, list[str]] = {f: [] for f in B.one_cells}
    for F in sorted(one):
        by_base[over1[F][0]].append(F)

    def cell_token(F, G):
        return f"[{over1[F][1]}=>{over1[G][1]}]"

    two = {}
    for t in sorted(B.two_cells):
        f, g = B.two_cells[t]
        for F in by_base[f]:
            for G in by_base[g]:
                if one[F] != one[G]:
                    continue
                if cell_pred is None or cell_pred(t, over1[F][1], over1[G][1]):
                    S = pair(t, cell_token(F, G))
                    two[S] = (F, G)
                    over2[S] = (t, cell_token(F, G))
    cell_of = {(over2[S][0], F, G): S for S, (F, G) in two.items()}

    id1 = {}
    for X in objects:
        a, x = over0[X]
        ff = id_table.get((a, x))
        F = pair(B.id1[a], ff) if ff is not None else None
        if F not in one or one[F] != (X, X):
            raise error(f"no displayed identity over id1({a}) at {x}")
        id1[X] = F
    comp1 = {}
    for F, (X, Y) in one.items():
        f, ff = over1[F]
        for G in sorted(one):
            if one[G][0] != Y:
                continue
            g, gg = over1[G]
            hh = comp_table.get((f, ff, g, gg))
            H = pair(B.comp1[(f, g)], hh) if hh is not None else None
            if H not in one or one[H] != (X, one[G][1]):
                raise error(f"no displayed composite of {F} and {G}")
            comp1[(F, G)] = H

    def need(t, F, G, what):
        S = cell_of.get((t, F, G))
        if S is None:
            raise error(f"forced displayed 2-cell missing for {what}")
        return S

    id2 = {F: need(B.id2[over1[F][0]], F, F, f"id2 at {F}") for F in one}
    vcomp = {}
    out2: dict[str, list[str]] = {}
    for S, (F, G) in two.items():
        out2.setdefault(F, []).append(S)
    for S, (F, G) in two.items():
        for U in out2.get(G, ()):
            t = B.vcomp[(over2[S][0], over2[U][0])]
            vcomp[(S, U)] = need(t, F, two[U][1], f"vcomp of {S} and {U}")
    lw, rw = {}, {}
    for F, (X, Y) in one.items():
        for S, (G, H) in two.items():
            if one[G][0] == Y:
                t = B.lwhisker[(over1[F][0], over2[S][0])]
                lw[(F, S)] = need(t, comp1[(F, G)], comp1[(F, H)], f"lwhisker {F},{S}")
    for S, (F, G) in two.items():
        Y = one[F][1]
        for H, (Y2, _) in one.items():
            if Y2 == Y:
                t = B.rwhisker[(over2[S][0], over1[H][0])]
                rw[(S, H)] = need(t, comp1[(F, H)], comp1[(G, H)], f"rwhisker {S},{H}")
    lun, luni, run, runi = {}, {}, {}, {}
    for F, (X, Y) in one.items():
        f = over1[F][0]
        lf, rf = comp1[(id1[X], F)], comp1[(F, id1[Y])]
        lun[F] = need(B.lunitor[f], lf, F, f"lunitor {F}")
        luni[F] = need(B.lunitor_inv[f], F, lf, f"lunitor_inv {F}")
        run[F] = need(B.runitor[f], rf, F, f"runitor {F}")
        runi[F] = need(B.runitor_inv[f], F, rf, f"runitor_inv {F}")
    al, ali = {}, {}
    starts: dict[str, list[str]] = {}
    for F, (X, Y) in one.items():
        starts.setdefault(X, []).append(F)
    for F, (X, Y) in one.items():
        for G in starts.get(Y, ()):
            FG = comp1[(F, G)]
            for H in starts.get(one[G][1], ()):
                left, right = comp1[(F, comp1[(G, H)])], comp1[(FG, H)]
                key = (over1[F][0], over1[G][0], over1[H][0])
                al[(F, G, H)] = need(B.lassoc[key], left, right, f"lassoc {F},{G},{H}")
                ali[(F, G, H)] = need(B.lassoc_inv[key], right, left, f"lassoc_inv {F},{G},{H}")
    total = BicatPresentation(tuple(objects), one, two, id1, comp1, id2, vcomp, lw, rw,
                              lun, luni, run, runi, al, ali)
    return DispBicatPresentation(B, total, over0, over1, over2)


# ---------------------------------------------------------------- constructions

def fullsub_disp(p: BicatPresentation, pred: Callable[[str], bool]) -> DispBicatPresentation:
    """Unit fibers over the objects satisfying ``pred``, empty fibers elsewhere."""
    keep = {a for a in p.objects if pred(a)}
    d0 = {a: ["*"] for a in keep}
    d1 = {(f, "*", "*"): ["*"] for f, (a, b) in p.one_cells.items() if a in keep and b in keep}
    ids = {(a, "*"): "*" for a in keep}
    comps = {(f, "*", g, "*"): "*" for (f, g) in p.comp1
             if p.src1(f) in keep and p.tgt1(f) in keep and p.tgt1(g) in keep}
    return prop_disp(p, d0, d1, ids, comps)


def chaotic_disp(p: BicatPresentation, D0: dict, D1: dict, id_table: dict,
                 comp_table: dict) -> DispBicatPresentation:
    """Singleton 2-cell fibers over the given objects, 1-cells, identities and composites."""
    return prop_disp(p, D0, D1, id_table, comp_table, None, ChaoticClosureViolation)


def equation_disp(p: BicatPresentation, D0: dict[str, list[str]],
                  holds: Callable[[str, str, str], bool],
                  budget: Budget | int | None = None) -> DispBicatPresentation:
    """Chaotic layer whose 1-cells over F from x to y exist exactly when ``holds(F, x, y)``.

    Fiber 1-cells are named ``(x,y)``; identities and composites are forced,
    so an equation that fails on an identity or a composite raises
    ChaoticClosureViolation.
    """
    budget = as_budget(budget)
    D1: dict[tuple[str, str, str], list[str]] = {}
    for F, (X, Y) in p.one_cells.items():
        for x in D0.get(X, ()):
            for y in D0.get(Y, ()):
                budget.charge()
                if holds(F, x, y):
                    D1[(F, x, y)] = [tup(x, y)]
    ids = {(X, x): tup(x, x) for X in p.objects for x in D0.get(X, ())}
    leaving: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for (F, x, y) in D1:
        leaving.setdefault((p.src1(F), x), []).append((F, y))
    comps = {}
    for (F, x, y) in D1:
        for G, z in leaving.get((p.tgt1(F), y), ()):
            comps[(F, tup(x, y), G, tup(y, z))] = tup(x, z)
    return chaotic_disp(p, D0, D1, ids, comps)


def _rebuild(base: BicatPresentation, src: BicatPresentation, name0, name1, name2):
    """Rename every token of ``src`` through the three maps and return tables."""
    from .core import rename

    return rename(src, obj=name0, one=name1, two=name2)


def trivial_disp(p: BicatPresentation, q: BicatPresentation) -> DispBicatPresentation:
    """q displayed over p with every fiber a copy of q; the total is p x q."""
    prod = product_bicat([p, q])
    over0, over1, over2 = {}, {}, {}
    n0, n1, n2 = {}, {}, {}
    for a in p.objects:
        for x in q.objects:
            n0[tup(a, x)] = pair(a, x)
            over0[pair(a, x)] = (a, x)
    for f in p.one_cells:
        for g in q.one_cells:
            n1[tup(f, g)] = pair(f, g)
            over1[pair(f, g)] = (f, g)
    for t in p.two_cells:
        for u in q.two_cells:
            n2[tup(t, u)] = pair(t, u)
            over2[pair(t, u)] = (t, u)
    total = _rebuild(p, prod, n0, n1, n2)
    return DispBicatPresentation(p, total, over0, over1, over2)


def prod_disp(d1: DispBicatPresentation, d2: DispBicatPresentation) -> DispBicatPresentation:
    """Fiberwise pairs of two displayed presentations over the same base."""
    if d1.base is not d2.base and d1.base != d2.base:
        raise TypeMismatch("product needs a common base")
    return fibre_product(d1.base, [d1, d2])


def fibre_product(base: BicatPresentation, ds: list[DispBicatPresentation]) -> DispBicatPresentation:
    overs = {"o": [d.over0 for d in ds], "1": [d.over1 for d in ds], "2": [d.over2 for d in ds]}

    def combine(tier, tokens):
        b = overs[tier][0][tokens[0]][0]
        return pair(b, tup(*[overs[tier][k][x][1] for k, x in enumerate(tokens)])), b

    def grouped(tier):
        groups: list[dict[str, list[str]]] = []
        for k, d in enumerate(ds):
            g: dict[str, list[str]] = {}
            for x in sorted(overs[tier][k]):
                g.setdefault(overs[tier][k][x][0], []).append(x)
            groups.append(g)
        return groups

    over0, over1, over2 = {}, {}, {}
    parts: dict[str, tuple[str, ...]] = {}
    objects = []
    g0 = grouped("o")
    for a in base.objects:
        for xs in itertools.product(*[g.get(a, []) for g in g0]):
            X, _ = combine("o", xs)
            parts[X] = tuple(xs)
            objects.append(X)
            over0[X] = (a, tup(*[ds[k].over0[x][1] for k, x in enumerate(xs)]))
    one = {}
    g1 = grouped("1")
    for f in sorted(base.one_cells):
        for fs in itertools.product(*[g.get(f, []) for g in g1]):
            ends = [ds[k].total.one_cells[x] for k, x in enumerate(fs)]
            F, _ = combine("1", fs)
            parts[F] = tuple(fs)
            one[F] = (combine("o", [e[0] for e in ends])[0], combine("o", [e[1] for e in ends])[0])
            over1[F] = (f, tup(*[ds[k].over1[x][1] for k, x in enumerate(fs)]))
    two = {}
    g2 = grouped("2")
    for t in sorted(base.two_cells):
        for ts in itertools.product(*[g.get(t, []) for g in g2]):
            ends = [ds[k].total.two_cells[x] for k, x in enumerate(ts)]
            S, _ = combine("2", ts)
            parts[S] = tuple(ts)
            two[S] = (combine("1", [e[0] for e in ends])[0], combine("1", [e[1] for e in ends])[0])
            over2[S] = (t, tup(*[ds[k].over2[x][1] for k, x in enumerate(ts)]))

    def lift(name):
        args, res = ARITY[name]
        tables = [getattr(d.total, name) for d in ds]
        index: list[dict] = []
        for k, tab in enumerate(tables):
            g: dict = {}
            for key, val in tab.items():
                parts = key if isinstance(key, tuple) else (key,)
                bkey = tuple(overs[t][k][x][0] for x, t in zip(parts, args))
                g.setdefault(bkey, []).append((parts, val))
            index.append(g)
        out = {}
        for bkey, entries in index[0].items():
            for combo in itertools.product(entries, *[ix.get(bkey, []) for ix in index[1:]]):
                key = tuple(combine(t, [c[0][j] for c in combo])[0] for j, t in enumerate(args))
                val = combine(res, [c[1] for c in combo])[0]
                out[key if len(key) > 1 else key[0]] = val
        return out

    total = BicatPresentation(tuple(objects), one, two, **{name: lift(name) for name in TABLES})
    return DispBicatPresentation(base, total, over0, over1, over2, parts)


def sigma_disp(d: DispBicatPresentation, e: DispBicatPresentation) -> DispBicatPresentation:
    """Pairs (x, y) with x over a in d and y over (a, x) in e."""
    if e.base is not d.total and e.base != d.total:
        raise TypeMismatch("the second displayed presentation must lie over the total of the first")
    n0, n1, n2 = {}, {}, {}
    over0, over1, over2 = {}, {}, {}
    for tier, src_over, mid_over, names, over in (
        ("o", e.over0, d.over0, n0, over0),
        ("1", e.over1, d.over1, n1, over1),
        ("2", e.over2, d.over2, n2, over2),
    ):
        for T, (S, y) in src_over.items():
            c, x = mid_over[S]
            new = pair(c, tup(x, y))
            names[T] = new
            over[new] = (c, tup(x, y))
    from .core import rename

    total = rename(e.total, obj=n0, one=n1, two=n2)
    parts = {new: (old,) for names in (n0, n1, n2) for old, new in names.items()}
    return DispBicatPresentation(d.base, total, over0, over1, over2, parts)


def fullsub_of_total(d: DispBicatPresentation, pred: Callable[[str], bool]) -> DispBicatPresentation:
    """Restrict a displayed presentation to total objects satisfying ``pred``."""
    from .core import fullsub_bicat

    total = fullsub_bicat(d.total, pred)
    return DispBicatPresentation(
        d.base, total,
        {X: d.over0[X] for X in total.objects},
        {F: d.over1[F] for F in total.one_cells},
        {S: d.over2[S] for S in total.two_cells},
    )


# ---------------------------------------------------------------- displayed searches

def disp_invertible_2cells(d: DispBicatPresentation, theta: Inv2Cell, F: str,
                           G: str) -> list[DispInv2Cell]:
    """Displayed invertible 2-cells over theta from F to G (total tokens)."""
    T, B = d.total, d.base
    if B.inverses.get(theta.theta) != theta.theta_inv:
        raise TypeMismatch("base cell is not the given invertible 2-cell")
    if (d.over1[F][0], d.over1[G][0]) != B.two_cells[theta.theta]:
        raise TypeMismatch("displayed 1-cells do not lie over the endpoints of theta")
    inv = T.inverses
    out = []
    for S in T.cells2(F, G):
        if d.over2[S][0] == theta.theta and S in inv:
            out.append(DispInv2Cell(theta, S, inv[S]))
    return out


def disp_adjoint_equivalences(d: DispBicatPresentation, e: AdjEquiv, X: str, Y: str,
                              budget: Budget | int | None = None) -> list[DispAdjEquiv]:
    """Displayed adjoint equivalences over e from X to Y (total tokens)."""
    budget = as_budget(budget)
    T, B = d.total, d.base
    if (d.over0[X][0], d.over0[Y][0]) != B.one_cells[e.f]:
        raise TypeMismatch("displayed objects do not lie over the endpoints of e")
    inv = T.inverses
    out = []
    base_cells = {"eta": e.eta.theta, "eps": e.eps.theta}
    for F in T.hom(X, Y):
        if d.over1[F][0] != e.f:
            continue
        found = adjequiv_structures(
            T, F, budget,
            g_filter=lambda G: d.over1[G][0] == e.g,
            cell_filter=lambda role, S: d.over2[S][0] == base_cells[role],
        )
        for a in found:
            out.append(DispAdjEquiv(
                e, a.f, a.g,
                DispInv2Cell(e.eta, a.eta.theta, inv[a.eta.theta]),
                DispInv2Cell(e.eps, a.eps.theta, inv[a.eps.theta]),
            ))
    return out


def check_disp_univalence(d: DispBicatPresentation, budget: Budget | int | None = None,
                          local: bool = True, global_: bool = True) -> UnivalenceReport:
    """Fiberwise displayed univalence: over identity 2-cells and identity 1-cells."""
    budget = as_budget(budget)
    T, B = d.total, d.base
    loc = None
    if local:
        loc = PartReport()
        for f in sorted(B.one_cells):
            ident = Inv2Cell(B.id2[f], B.id2[f])
            cells = d.cells1_over[f]
            for F in cells:
                for G in cells:
                    if T.one_cells[F] != T.one_cells[G]:
                        continue
                    budget.charge()
                    found = disp_invertible_2cells(d, ident, F, G)
                    if F != G and found:
                        loc.witnesses.append(Witness((F, G), len(found), "displayed invertible 2-cell between distinct displayed 1-cells"))
                    elif F == G and [x.theta for x in found] != [T.id2[F]]:
                        loc.witnesses.append(Witness((F, G), len(found), "displayed invertible 2-cells other than the identity"))
    glob = None
    if global_:
        glob = PartReport()
        for a in B.objects:
            canon = canonical_adjequiv(B, a)
            xs = d.objects_over[a]
            for X in xs:
                for Y in xs:
                    found = disp_adjoint_equivalences(d, canon, X, Y, budget)
                    if X != Y and found:
                        glob.witnesses.append(Witness((X, Y), len(found), "displayed adjoint equivalence between distinct displayed objects"))
                    elif X == Y:
                        tc = canonical_adjequiv(T, X)
                        mine = [(x.f, x.g, x.eta.theta, x.eps.theta) for x in found]
                        if mine != [(tc.f, tc.g, tc.eta.theta, tc.eps.theta)]:
                            glob.witnesses.append(Witness((X, Y), len(found), "displayed adjoint equivalences other than the identity"))
    return UnivalenceReport(loc, glob)


def is_locally_groupoidal(d: DispBicatPresentation) -> bool:
    binv, tinv = d.base.inverses, d.total.inverses
    return all(S in tinv for S, (t, _) in d.over2.items() if t in binv)


def is_locally_propositional(d: DispBicatPresentation) -> bool:
    return all(len(v) <= 1 for v in d.d2.values())
