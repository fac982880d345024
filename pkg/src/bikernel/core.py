"""Finitely presented bicategories: tables, validation and the coherence checker.

Cells are plain string tokens and two cells are equal exactly when their tokens
are. Composition of 1-cells is diagrammatic: ``comp1[(f, g)]`` is f followed by g.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .budget import Budget, as_budget
from .errors import DanglingReference, DuplicateId, InvalidMonoid, NotStrict, TypeMismatch
from .fincat import FiniteCategory, check_category

TABLES = (
    "id1", "comp1", "id2", "vcomp", "lwhisker", "rwhisker",
    "lunitor", "lunitor_inv", "runitor", "runitor_inv", "lassoc", "lassoc_inv",
)

# item number of the data clause each table implements
TABLE_ITEM = {
    "objects": "1", "one_cells": "2", "two_cells": "3", "id1": "4", "comp1": "5",
    "id2": "6", "vcomp": "7", "lwhisker": "8", "rwhisker": "9",
    "lunitor": "10", "lunitor_inv": "10", "runitor": "11", "runitor_inv": "11",
    "lassoc": "12", "lassoc_inv": "12",
}

LAW_FAMILIES = {
    "12": "vcomp unit and associativity",
    "13": "left whiskering preserves id2 and vcomp",
    "14": "right whiskering preserves id2 and vcomp",
    "15": "left unitor naturality",
    "16": "right unitor naturality",
    "17": "associator naturality in the third argument",
    "18": "associator naturality in the middle argument",
    "19": "associator naturality in the first argument",
    "20": "left unitor inverse",
    "21": "right unitor inverse",
    "22": "associator inverse",
    "23": "triangle",
    "24": "pentagon",
}


@dataclass(frozen=True, eq=False)
class BicatPresentation:
    objects: tuple[str, ...]
    one_cells: dict[str, tuple[str, str]]
    two_cells: dict[str, tuple[str, str]]
    id1: dict[str, str]
    comp1: dict[tuple[str, str], str]
    id2: dict[str, str]
    vcomp: dict[tuple[str, str], str]
    lwhisker: dict[tuple[str, str], str]
    rwhisker: dict[tuple[str, str], str]
    lunitor: dict[str, str]
    lunitor_inv: dict[str, str]
    runitor: dict[str, str]
    runitor_inv: dict[str, str]
    lassoc: dict[tuple[str, str, str], str]
    lassoc_inv: dict[tuple[str, str, str], str]

    def __eq__(self, other):
        if not isinstance(other, BicatPresentation):
            return NotImplemented
        return all(getattr(self, k) == getattr(other, k) for k in FIELDS)

    __hash__ = None

    # -------------------------------------------------------------- indices
    def src1(self, f: str) -> str:
        return self.one_cells[f][0]

    def tgt1(self, f: str) -> str:
        return self.one_cells[f][1]

    def src2(self, t: str) -> str:
        return self.two_cells[t][0]

    def tgt2(self, t: str) -> str:
        return self.two_cells[t][1]

    @cached_property
    def homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for f in sorted(self.one_cells):
            out.setdefault(self.one_cells[f], []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self.homs.get((a, b), ())

    @cached_property
    def out1(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {a: [] for a in self.objects}
        for f in sorted(self.one_cells):
            out.setdefault(self.one_cells[f][0], []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def cells2_index(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {}
        for t in sorted(self.two_cells):
            out.setdefault(self.two_cells[t], []).append(t)
        return {k: tuple(v) for k, v in out.items()}

    def cells2(self, f: str, g: str) -> tuple[str, ...]:
        return self.cells2_index.get((f, g), ())

    @cached_property
    def out2(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {f: [] for f in self.one_cells}
        for t in sorted(self.two_cells):
            out.setdefault(self.two_cells[t][0], []).append(t)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def inverses(self) -> dict[str, str]:
        """Each invertible 2-cell mapped to its (unique) inverse."""
        out = {}
        vc, i2 = self.vcomp, self.id2
        for t in sorted(self.two_cells):
            f, g = self.two_cells[t]
            for u in self.cells2(g, f):
                if vc.get((t, u)) == i2.get(f) and vc.get((u, t)) == i2.get(g):
                    out[t] = u
                    break
        return out

    def size(self) -> tuple[int, int, int]:
        return len(self.objects), len(self.one_cells), len(self.two_cells)

    # composite helpers used across the package
    def vc(self, *cells: str) -> str:
        out = cells[0]
        for c in cells[1:]:
            out = self.vcomp[(out, c)]
        return out

    def hcomp(self, t: str, u: str) -> str:
        """Horizontal composite: (t |> g) followed by (f' <| u)."""
        g = self.src2(u)
        f2 = self.tgt2(t)
        return self.vcomp[(self.rwhisker[(t, g)], self.lwhisker[(f2, u)])]


FIELDS = ("objects", "one_cells", "two_cells") + TABLES


@dataclass
class Violation:
    law: str
    cells: tuple
    lhs: str | None
    rhs: str | None

    def to_json(self) -> dict:
        return {"law": self.law, "cells": list(self.cells), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class LawReport:
    violations: list[Violation] = field(default_factory=list)
    instances: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self) -> bool:
        return self.ok

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_json(self) -> dict:
        return {"status": self.status, "violations": [v.to_json() for v in self.violations]}


ValidationReport = LawReport


@dataclass(frozen=True)
class Inv2Cell:
    theta: str
    theta_inv: str


@dataclass(frozen=True)
class AdjEquiv:
    f: str
    g: str
    eta: Inv2Cell
    eps: Inv2Cell


def make_presentation(objects: Iterable[str], one_cells, two_cells, **tables) -> BicatPresentation:
    objs = tuple(objects)
    if len(set(objs)) != len(objs):
        raise DuplicateId("object tokens repeat")
    return BicatPresentation(objs, dict(one_cells), dict(two_cells),
                             **{k: dict(tables.get(k, {})) for k in TABLES})


# ---------------------------------------------------------------- validation

def _check_references(p: BicatPresentation) -> None:
    objs = set(p.objects)
    if len(objs) != len(p.objects):
        raise DuplicateId("object tokens repeat")
    for f, (a, b) in p.one_cells.items():
        if a not in objs or b not in objs:
            raise DanglingReference(f"1-cell {f} refers to an unknown object")
    for t, (f, g) in p.two_cells.items():
        if f not in p.one_cells or g not in p.one_cells:
            raise DanglingReference(f"2-cell {t} refers to an unknown 1-cell")
    tiers = {
        "id1": (("o",), "1"), "comp1": (("1", "1"), "1"), "id2": (("1",), "2"),
        "vcomp": (("2", "2"), "2"), "lwhisker": (("1", "2"), "2"),
        "rwhisker": (("2", "1"), "2"), "lunitor": (("1",), "2"),
        "lunitor_inv": (("1",), "2"), "runitor": (("1",), "2"),
        "runitor_inv": (("1",), "2"), "lassoc": (("1", "1", "1"), "2"),
        "lassoc_inv": (("1", "1", "1"), "2"),
    }
    known = {"o": objs, "1": p.one_cells, "2": p.two_cells}
    for name, (args, res) in tiers.items():
        for key, val in getattr(p, name).items():
            parts = key if isinstance(key, tuple) else (key,)
            if len(parts) != len(args):
                raise DanglingReference(f"{name} key {key!r} has the wrong arity")
            for part, tier in zip(parts, args):
                if part not in known[tier]:
                    raise DanglingReference(f"{name} key {key!r} mentions unknown {part!r}")
            if val not in known[res]:
                raise DanglingReference(f"{name}[{key!r}] = {val!r} is unknown")


def mandated_types(p: BicatPresentation):
    """Yield (table, key, expected type) for every mandated table entry.

    Expected types are (src, tgt) pairs; for ``id1``/``comp1`` they are object
    pairs, for the 2-cell tables they are 1-cell pairs. ``None`` marks a
    component that cannot be computed because some prerequisite entry is
    missing.
    """
    oc, tc = p.one_cells, p.two_cells
    c1, i1 = p.comp1, p.id1
    for a in p.objects:
        yield "id1", a, (a, a)
    for f, (a, b) in oc.items():
        for g in p.out1.get(b, ()):
            yield "comp1", (f, g), (a, p.tgt1(g))
    for f in oc:
        yield "id2", f, (f, f)
    for t, (f, g) in tc.items():
        for u in p.out2.get(g, ()):
            yield "vcomp", (t, u), (f, p.tgt2(u))
    for f, (a, b) in oc.items():
        for t, (g, h) in tc.items():
            if p.src1(g) == b:
                yield "lwhisker", (f, t), (c1.get((f, g)), c1.get((f, h)))
    for t, (f, g) in tc.items():
        b = p.tgt1(f)
        for h in p.out1.get(b, ()):
            yield "rwhisker", (t, h), (c1.get((f, h)), c1.get((g, h)))
    for f, (a, b) in oc.items():
        lf = c1.get((i1.get(a), f))
        rf = c1.get((f, i1.get(b)))
        yield "lunitor", f, (lf, f)
        yield "lunitor_inv", f, (f, lf)
        yield "runitor", f, (rf, f)
        yield "runitor_inv", f, (f, rf)
    for f, (a, b) in oc.items():
        for g in p.out1.get(b, ()):
            fg = c1.get((f, g))
            for h in p.out1.get(p.tgt1(g), ()):
                left = c1.get((f, c1.get((g, h))))
                right = c1.get((fg, h))
                yield "lassoc", (f, g, h), (left, right)
                yield "lassoc_inv", (f, g, h), (right, left)


def validate_presentation(p: BicatPresentation) -> ValidationReport:
    """Totality and well-typedness of every table.

    Raises DuplicateId / DanglingReference on unknown or repeated tokens and
    reports missing, extra and ill-typed entries as violations.
    """
    _check_references(p)
    rep = LawReport()
    for t, (f, g) in p.two_cells.items():
        if p.one_cells[f] != p.one_cells[g]:
            rep.violations.append(Violation("3", (t,), f, g))
    seen: dict[str, set] = {name: set() for name in TABLES}
    for name, key, (s, t) in mandated_types(p):
        seen[name].add(key)
        table = getattr(p, name)
        cells = key if isinstance(key, tuple) else (key,)
        if key not in table:
            rep.violations.append(Violation(TABLE_ITEM[name], cells, None, f"{s}=>{t}"))
            continue
        val = table[key]
        actual = p.one_cells[val] if name in ("id1", "comp1") else p.two_cells[val]
        if actual != (s, t):
            rep.violations.append(
                Violation(TABLE_ITEM[name], cells, f"{actual[0]}=>{actual[1]}", f"{s}=>{t}")
            )
    for name in TABLES:
        for key in getattr(p, name):
            if key not in seen[name]:
                cells = key if isinstance(key, tuple) else (key,)
                rep.violations.append(Violation(TABLE_ITEM[name], cells, "extra entry", None))
    return rep


# ---------------------------------------------------------------- law checker

def check_laws(p: BicatPresentation, budget: Budget | int | None = None) -> LawReport:
    """Evaluate both sides of every instance of the 13 law families.

    Undefined lookups (possible only on presentations that fail validation)
    are reported as ``None`` sides.
    """
    budget = as_budget(budget)
    rep = LawReport(instances={k: 0 for k in LAW_FAMILIES})
    oc, tc = p.one_cells, p.two_cells
    c1, i1, i2 = p.comp1, p.id1, p.id2
    V, LW, RW = p.vcomp, p.lwhisker, p.rwhisker
    lam, lami, rho, rhoi = p.lunitor, p.lunitor_inv, p.runitor, p.runitor_inv
    al, ali = p.lassoc, p.lassoc_inv
    out1, out2 = p.out1, p.out2

    def v(*xs):
        acc = xs[0]
        for x in xs[1:]:
            if acc is None:
                return None
            acc = V.get((acc, x))
        return acc

    def lw(f, t):
        return LW.get((f, t))

    def rw(t, h):
        return RW.get((t, h))

    def eq(law, cells, lhs, rhs):
        if lhs is None or lhs != rhs:
            rep.violations.append(Violation(law, cells, lhs, rhs))

    tcs = sorted(tc)
    ocs = sorted(oc)
    # 12
    for t in tcs:
        f, g = tc[t]
        rep.instances["12"] += 1
        budget.charge()
        eq("12", (t,), v(i2.get(f), t), t)
        eq("12", (t,), v(t, i2.get(g)), t)
        for u in out2.get(g, ()):
            for w in out2.get(tc[u][1], ()):
                budget.charge()
                rep.instances["12"] += 1
                eq("12", (t, u, w), v(t, v(u, w)), v(v(t, u), w))
    # 13, 15, 17, 18 need f followed by a 2-cell
    for f in ocs:
        a, b = oc[f]
        for g in out1.get(b, ()):
            budget.charge()
            rep.instances["13"] += 1
            eq("13", (f, g), lw(f, i2.get(g)), i2.get(c1.get((f, g))))
    for f in ocs:
        b = oc[f][1]
        for t in tcs:
            g, h = tc[t]
            if oc[g][0] != b:
                continue
            for u in out2.get(h, ()):
                budget.charge()
                rep.instances["13"] += 1
                eq("13", (f, t, u), lw(f, v(t, u)), v(lw(f, t), lw(f, u)))
    # 14
    for f in ocs:
        b = oc[f][1]
        for g in out1.get(b, ()):
            budget.charge()
            rep.instances["14"] += 1
            eq("14", (f, g), rw(i2.get(f), g), i2.get(c1.get((f, g))))
    for t in tcs:
        f, g = tc[t]
        for u in out2.get(g, ()):
            for h in out1.get(oc[f][1], ()):
                budget.charge()
                rep.instances["14"] += 1
                eq("14", (t, u, h), rw(v(t, u), h), v(rw(t, h), rw(u, h)))
    # 15, 16
    for t in tcs:
        f, g = tc[t]
        a, b = oc[f]
        budget.charge(2)
        rep.instances["15"] += 1
        rep.instances["16"] += 1
        eq("15", (t,), v(lw(i1.get(a), t), lam.get(g)), v(lam.get(f), t))
        eq("16", (t,), v(rw(t, i1.get(b)), rho.get(g)), v(rho.get(f), t))
    # 17: theta : h => i on the right of f . g
    for f in ocs:
        for g in out1.get(oc[f][1], ()):
            fg = c1.get((f, g))
            c = oc[g][1]
            for t in tcs:
                h, i = tc[t]
                if oc[h][0] != c:
                    continue
                budget.charge()
                rep.instances["17"] += 1
                eq("17", (f, g, t), v(lw(f, lw(g, t)), al.get((f, g, i))),
                   v(al.get((f, g, h)), lw(fg, t)))
    # 18: theta : g => h in the middle
    for f in ocs:
        b = oc[f][1]
        for t in tcs:
            g, h = tc[t]
            if oc[g][0] != b:
                continue
            for i in out1.get(oc[g][1], ()):
                budget.charge()
                rep.instances["18"] += 1
                eq("18", (f, t, i), v(lw(f, rw(t, i)), al.get((f, h, i))),
                   v(al.get((f, g, i)), rw(lw(f, t), i)))
    # 19: theta : f => g on the left
    for t in tcs:
        f, g = tc[t]
        for h in out1.get(oc[f][1], ()):
            for i in out1.get(oc[h][1], ()):
                budget.charge()
                rep.instances["19"] += 1
                hi = c1.get((h, i))
                eq("19", (t, h, i), v(rw(t, hi), al.get((g, h, i))),
                   v(al.get((f, h, i)), rw(rw(t, h), i)))
    # 20, 21
    for f in ocs:
        a, b = oc[f]
        budget.charge(2)
        rep.instances["20"] += 1
        rep.instances["21"] += 1
        lf = c1.get((i1.get(a), f))
        rf = c1.get((f, i1.get(b)))
        eq("20", (f,), v(lam.get(f), lami.get(f)), i2.get(lf))
        eq("20", (f,), v(lami.get(f), lam.get(f)), i2.get(f))
        eq("21", (f,), v(rho.get(f), rhoi.get(f)), i2.get(rf))
        eq("21", (f,), v(rhoi.get(f), rho.get(f)), i2.get(f))
    # 22, 23, 24
    for f in ocs:
        b = oc[f][1]
        for g in out1.get(b, ()):
            fg = c1.get((f, g))
            budget.charge()
            rep.instances["23"] += 1
            ib = i1.get(b)
            eq("23", (f, g), v(al.get((f, ib, g)), rw(rho.get(f), g)), lw(f, lam.get(g)))
            for h in out1.get(oc[g][1], ()):
                budget.charge()
                rep.instances["22"] += 1
                gh = c1.get((g, h))
                eq("22", (f, g, h), v(al.get((f, g, h)), ali.get((f, g, h))),
                   i2.get(c1.get((f, gh))))
                eq("22", (f, g, h), v(ali.get((f, g, h)), al.get((f, g, h))),
                   i2.get(c1.get((fg, h))))
                for i in out1.get(oc[h][1], ()):
                    budget.charge()
                    rep.instances["24"] += 1
                    hi = c1.get((h, i))
                    lhs = v(al.get((f, g, hi)), al.get((fg, h, i)))
                    rhs = v(lw(f, al.get((g, h, i))), al.get((f, gh, i)),
                            rw(al.get((f, g, h)), i))
                    eq("24", (f, g, h, i), lhs, rhs)
    return rep


def is_lawful(p: BicatPresentation) -> bool:
    return validate_presentation(p).ok and check_laws(p).ok


def require_lawful(p: BicatPresentation, what: str = "presentation") -> None:
    rep = validate_presentation(p)
    if rep.ok:
        rep = check_laws(p)
    if not rep.ok:
        v = rep.violations[0]
        raise TypeMismatch(f"{what} is not a lawful bicategory: law {v.law} at {v.cells}")


# ---------------------------------------------------------------- hom-categories

def hom_category(p: BicatPresentation, a: str, b: str) -> FiniteCategory:
    if a not in p.objects or b not in p.objects:
        raise DanglingReference(f"unknown object in ({a},{b})")
    objs = p.hom(a, b)
    objset = set(objs)
    mors = {t: st for t, st in p.two_cells.items() if st[0] in objset}
    comp = {(t, u): p.vcomp[(t, u)] for t in mors for u in p.out2[mors[t][1]]}
    return check_category(
        FiniteCategory(f"{a}->{b}", objs, mors, {f: p.id2[f] for f in objs}, comp)
    )


# ---------------------------------------------------------------- op

def op_bicat(p: BicatPresentation) -> BicatPresentation:
    """Reverse 1-cells, keep the direction of 2-cells."""
    return BicatPresentation(
        objects=p.objects,
        one_cells={f: (b, a) for f, (a, b) in p.one_cells.items()},
        two_cells=dict(p.two_cells),
        id1=dict(p.id1),
        comp1={(g, f): h for (f, g), h in p.comp1.items()},
        id2=dict(p.id2),
        vcomp=dict(p.vcomp),
        lwhisker={(f, t): u for (t, f), u in p.rwhisker.items()},
        rwhisker={(t, f): u for (f, t), u in p.lwhisker.items()},
        lunitor=dict(p.runitor),
        lunitor_inv=dict(p.runitor_inv),
        runitor=dict(p.lunitor),
        runitor_inv=dict(p.lunitor_inv),
        lassoc={(h, g, f): t for (f, g, h), t in p.lassoc_inv.items()},
        lassoc_inv={(h, g, f): t for (f, g, h), t in p.lassoc.items()},
    )


# ---------------------------------------------------------------- searches

def invertible_2cells(p: BicatPresentation, f: str, g: str) -> list[Inv2Cell]:
    if p.one_cells[f] != p.one_cells[g]:
        raise TypeMismatch(f"1-cells {f} and {g} are not parallel")
    inv = p.inverses
    return [Inv2Cell(t, inv[t]) for t in p.cells2(f, g) if t in inv]


def triangles_hold(p: BicatPresentation, f: str, g: str, eta: str, eps: str) -> bool:
    """Both triangle identities for unit ``eta`` and counit ``eps``."""
    try:
        first = p.vc(
            p.lunitor_inv[f], p.rwhisker[(eta, f)], p.lassoc_inv[(f, g, f)],
            p.lwhisker[(f, eps)], p.runitor[f],
        )
        second = p.vc(
            p.runitor_inv[g], p.lwhisker[(g, eta)], p.lassoc[(g, f, g)],
            p.rwhisker[(eps, g)], p.lunitor[g],
        )
    except KeyError:
        return False
    return first == p.id2[f] and second == p.id2[g]


def canonical_adjequiv(p: BicatPresentation, a: str) -> AdjEquiv:
    """The identity adjoint equivalence on id1(a)."""
    i = p.id1[a]
    return AdjEquiv(i, i, Inv2Cell(p.lunitor_inv[i], p.lunitor[i]),
                    Inv2Cell(p.lunitor[i], p.lunitor_inv[i]))


def adjequiv_structures(p: BicatPresentation, f: str, budget: Budget | int | None = None,
                        g_filter: Callable[[str], bool] | None = None,
                        cell_filter: Callable[[str, str], bool] | None = None) -> list[AdjEquiv]:
    """All (g, eta, eps) completing f to an adjoint equivalence.

    ``g_filter`` and ``cell_filter(role, cell)`` restrict the candidates; they
    are used by the displayed searches.
    """
    budget = as_budget(budget)
    a, b = p.one_cells[f]
    inv = p.inverses
    out = []
    for g in p.hom(b, a):
        if g_filter is not None and not g_filter(g):
            continue
        fg, gf = p.comp1[(f, g)], p.comp1[(g, f)]
        etas = [t for t in p.cells2(p.id1[a], fg) if t in inv]
        epss = [t for t in p.cells2(gf, p.id1[b]) if t in inv]
        if cell_filter is not None:
            etas = [t for t in etas if cell_filter("eta", t)]
            epss = [t for t in epss if cell_filter("eps", t)]
        budget.charge(1 + len(etas) * len(epss))
        for eta in etas:
            for eps in epss:
                if triangles_hold(p, f, g, eta, eps):
                    out.append(AdjEquiv(f, g, Inv2Cell(eta, inv[eta]), Inv2Cell(eps, inv[eps])))
    return out


def adjoint_equivalences(p: BicatPresentation, a: str, b: str,
                         budget: Budget | int | None = None) -> list[AdjEquiv]:
    if a not in p.objects or b not in p.objects:
        raise DanglingReference(f"unknown object in ({a},{b})")
    budget = as_budget(budget)
    out = []
    inv = p.inverses
    for f in p.hom(a, b):
        # prune: some invertible cell into f.g from the identity must exist
        if not any(
            any(t in inv for t in p.cells2(p.id1[a], p.comp1[(f, g)])) for g in p.hom(b, a)
        ):
            budget.charge()
            continue
        out.extend(adjequiv_structures(p, f, budget))
    return out


@dataclass
class BiinitialResult:
    ok: bool
    failing: list[str]

    def __bool__(self) -> bool:
        return self.ok


def is_biinitial(p: BicatPresentation, a: str) -> BiinitialResult:
    failing = []
    for b in p.objects:
        cells = p.hom(a, b)
        if not cells or any(len(p.cells2(f, g)) != 1 for f in cells for g in cells):
            failing.append(b)
    return BiinitialResult(not failing, failing)


# ---------------------------------------------------------------- strictness

@dataclass
class StrictReport:
    locally_strict: bool
    one_strict: bool
    violations: list[tuple]

    def to_json(self) -> dict:
        return {"locally_strict": self.locally_strict, "one_strict": self.one_strict,
                "violations": [list(v) for v in self.violations]}


def check_strict(p: BicatPresentation) -> StrictReport:
    bad = []
    for f, (a, b) in sorted(p.one_cells.items()):
        if p.comp1[(p.id1[a], f)] != f:
            bad.append(("left_unit", f))
        if p.comp1[(f, p.id1[b])] != f:
            bad.append(("right_unit", f))
    for (f, g), fg in sorted(p.comp1.items()):
        for h in p.out1[p.tgt1(g)]:
            if p.comp1[(f, p.comp1[(g, h)])] != p.comp1[(fg, h)]:
                bad.append(("assoc", f, g, h))
    return StrictReport(True, not bad, bad)


@dataclass(frozen=True, eq=False)
class TwoCatPresentation:
    objects: tuple[str, ...]
    one_cells: dict[str, tuple[str, str]]
    two_cells: dict[str, tuple[str, str]]
    id1: dict[str, str]
    comp1: dict[tuple[str, str], str]
    id2: dict[str, str]
    vcomp: dict[tuple[str, str], str]
    lwhisker: dict[tuple[str, str], str]
    rwhisker: dict[tuple[str, str], str]


def strict_to_two_cat(p: BicatPresentation) -> TwoCatPresentation:
    if not check_strict(p).one_strict:
        raise NotStrict("composition of 1-cells is not strictly unital and associative")
    return TwoCatPresentation(p.objects, dict(p.one_cells), dict(p.two_cells), dict(p.id1),
                              dict(p.comp1), dict(p.id2), dict(p.vcomp), dict(p.lwhisker),
                              dict(p.rwhisker))


# ---------------------------------------------------------------- generators

@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    elements: tuple[str, ...]
    unit: str
    mul: dict[tuple[str, str], str]

    def check(self, abelian: bool = False, group: bool = False) -> FiniteMonoid:
        els = set(self.elements)
        if len(els) != len(self.elements) or self.unit not in els:
            raise InvalidMonoid("bad carrier or unit")
        for x in self.elements:
            for y in self.elements:
                if self.mul.get((x, y)) not in els:
                    raise InvalidMonoid(f"product ({x},{y}) missing")
        for x in self.elements:
            if self.mul[(self.unit, x)] != x or self.mul[(x, self.unit)] != x:
                raise InvalidMonoid(f"unit law fails at {x}")
            for y in self.elements:
                if abelian and self.mul[(x, y)] != self.mul[(y, x)]:
                    raise InvalidMonoid("not commutative")
                for z in self.elements:
                    if self.mul[(self.mul[(x, y)], z)] != self.mul[(x, self.mul[(y, z)])]:
                        raise InvalidMonoid(f"not associative at ({x},{y},{z})")
        if group:
            for x in self.elements:
                if not any(self.mul[(x, y)] == self.unit for y in self.elements):
                    raise InvalidMonoid(f"{x} has no inverse")
        return self

    def opposite(self) -> FiniteMonoid:
        return FiniteMonoid(self.elements, self.unit, {(x, y): z for (y, x), z in self.mul.items()})


def cyclic_group(n: int, names: list[str] | None = None) -> FiniteMonoid:
    names = names or [str(k) for k in range(n)]
    mul = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return FiniteMonoid(tuple(names), names[0], mul)


def zmod2() -> FiniteMonoid:
    """The group of order two on the tokens ``1`` (unit) and ``s``."""
    return cyclic_group(2, ["1", "s"])


def bool_monoid() -> FiniteMonoid:
    """Multiplicative monoid {0, 1}."""
    mul = {(x, y): str(int(x) * int(y)) for x in "01" for y in "01"}
    return FiniteMonoid(("1", "0"), "1", mul)


def left_zero_monoid() -> FiniteMonoid:
    """{1, a, b} with x.y = x for x, y in {a, b}: a non-commutative monoid."""
    mul = {}
    for x in ("1", "a", "b"):
        for y in ("1", "a", "b"):
            mul[(x, y)] = y if x == "1" else x
    return FiniteMonoid(("1", "a", "b"), "1", mul)


def trivial_monoid(name: str = "i") -> FiniteMonoid:
    return FiniteMonoid((name,), name, {(name, name): name})


def monoid_delooping(m: FiniteMonoid, obj: str = "*") -> BicatPresentation:
    """One object, 1-cells the elements, identity 2-cells only."""
    m.check()
    els = m.elements
    idc = {x: f"id_{x}" for x in els}
    comp1 = dict(m.mul)
    lw = {(f, idc[g]): idc[m.mul[(f, g)]] for f in els for g in els}
    rw = {(idc[f], g): idc[m.mul[(f, g)]] for f in els for g in els}
    unit = {f: idc[f] for f in els}
    assoc = {(f, g, h): idc[m.mul[(m.mul[(f, g)], h)]] for f in els for g in els for h in els}
    return BicatPresentation(
        (obj,), {x: (obj, obj) for x in els}, {idc[x]: (x, x) for x in els},
        {obj: m.unit}, comp1, dict(idc), {(idc[x], idc[x]): idc[x] for x in els},
        lw, rw, unit, dict(unit), dict(unit), dict(unit), assoc, dict(assoc),
    )


def two_cell_delooping(m: FiniteMonoid, g: FiniteMonoid, obj: str = "*") -> BicatPresentation:
    """1-cells from the monoid m, and on every 1-cell the abelian group g of 2-cells.

    Whiskering leaves the group element unchanged; structural cells are the
    group unit. When m has one element the 2-cell tokens are g's elements.
    """
    m.check()
    g.check(abelian=True, group=True)
    single = len(m.elements) == 1

    def cell(x, k):
        return k if single else f"{k}@{x}"

    els = m.elements
    two = {cell(x, k): (x, x) for x in els for k in g.elements}
    vc = {(cell(x, k), cell(x, l)): cell(x, g.mul[(k, l)])
          for x in els for k in g.elements for l in g.elements}
    lw = {(f, cell(x, k)): cell(m.mul[(f, x)], k) for f in els for x in els for k in g.elements}
    rw = {(cell(x, k), h): cell(m.mul[(x, h)], k) for h in els for x in els for k in g.elements}
    idc = {x: cell(x, g.unit) for x in els}
    assoc = {(f, h, k): idc[m.mul[(m.mul[(f, h)], k)]] for f in els for h in els for k in els}
    return BicatPresentation(
        (obj,), {x: (obj, obj) for x in els}, two, {obj: m.unit}, dict(m.mul), dict(idc), vc,
        lw, rw, dict(idc), dict(idc), dict(idc), dict(idc), assoc, dict(assoc),
    )


def _object_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + k) for k in range(n)]
    return [f"x{k}" for k in range(n)]


def locally_chaotic(objects: list[str], one_cells: dict[str, tuple[str, str]],
                    id1: dict[str, str], comp1: dict[tuple[str, str], str]) -> BicatPresentation:
    """Exactly one 2-cell between any two parallel 1-cells.

    Any total, well-typed choice of identities and composition yields a lawful
    presentation, since every equation between 2-cells holds trivially.
    """
    def cell(f, g):
        return f"{f}~{g}"

    two = {}
    for f, st in one_cells.items():
        for g, st2 in one_cells.items():
            if st == st2:
                two[cell(f, g)] = (f, g)
    c = dict(comp1)
    lw, rw = {}, {}
    for f, (a, b) in one_cells.items():
        for t, (g, h) in two.items():
            if one_cells[g][0] == b:
                lw[(f, t)] = cell(c[(f, g)], c[(f, h)])
    for t, (f, g) in two.items():
        for h, (b, _) in one_cells.items():
            if b == one_cells[f][1]:
                rw[(t, h)] = cell(c[(f, h)], c[(g, h)])
    lun, luni, run, runi = {}, {}, {}, {}
    for f, (a, b) in one_cells.items():
        lf, rf = c[(id1[a], f)], c[(f, id1[b])]
        lun[f], luni[f] = cell(lf, f), cell(f, lf)
        run[f], runi[f] = cell(rf, f), cell(f, rf)
    al, ali = {}, {}
    for f, (a, b) in one_cells.items():
        for g, (b2, cc) in one_cells.items():
            if b2 != b:
                continue
            for h, (c2, d) in one_cells.items():
                if c2 != cc:
                    continue
                x, y = c[(f, c[(g, h)])], c[(c[(f, g)], h)]
                al[(f, g, h)], ali[(f, g, h)] = cell(x, y), cell(y, x)
    vc = {(t, u): cell(two[t][0], two[u][1]) for t in two for u in two if two[t][1] == two[u][0]}
    return BicatPresentation(
        tuple(objects), dict(one_cells), two, dict(id1), c, {f: cell(f, f) for f in one_cells},
        vc, lw, rw, lun, luni, run, runi, al, ali,
    )


def chaotic_bicat(n: int) -> BicatPresentation:
    """One 1-cell per ordered pair of objects and one 2-cell per pair of 1-cells.

    1-cell ``xy`` goes from x to y and its unique 2-cell is ``txy``.
    """
    objs = _object_names(n)
    one = {f"{x}{y}": (x, y) for x in objs for y in objs}
    comp = {(f"{x}{y}", f"{y}{z}"): f"{x}{z}" for x in objs for y in objs for z in objs}
    p = locally_chaotic(objs, one, {x: f"{x}{x}" for x in objs}, comp)
    return rename(p, two={f"{f}~{f}": f"t{f}" for f in one})


def discrete_bicat(n: int) -> BicatPresentation:
    """Only identity 1-cells ``1x`` and identity 2-cells ``ex``."""
    objs = _object_names(n)
    p = locally_chaotic(objs, {f"1{x}": (x, x) for x in objs}, {x: f"1{x}" for x in objs},
                        {(f"1{x}", f"1{x}"): f"1{x}" for x in objs})
    return rename(p, two={f"1{x}~1{x}": f"e{x}" for x in objs})


def terminal_bicat() -> BicatPresentation:
    """One object ``*``, one 1-cell ``i``, one 2-cell ``e``."""
    p = locally_chaotic(["*"], {"i": ("*", "*")}, {"*": "i"}, {("i", "i"): "i"})
    return rename(p, two={"i~i": "e"})


def delta2() -> BicatPresentation:
    """One 1-cell ``i`` carrying the 2-cells ``e`` and ``t`` with t.t = e."""
    return two_cell_delooping(trivial_monoid("i"), cyclic_group(2, ["e", "t"]))


def weak_unit_bicat() -> BicatPresentation:
    """Two objects where composing with an identity changes the 1-cell a->b."""
    one = {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b"), "f'": ("a", "b")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b"}
    for h in ("f", "f'"):
        comp[("1a", h)] = "f'"
        comp[(h, "1b")] = "f'"
    return locally_chaotic(["a", "b"], one, {"a": "1a", "b": "1b"}, comp)


# ---------------------------------------------------------------- renaming and products

def rename(p: BicatPresentation, obj: dict | None = None, one: dict | None = None,
           two: dict | None = None) -> BicatPresentation:
    """Rename tokens tier by tier; unmapped tokens keep their names."""
    o = (lambda x: obj.get(x, x)) if obj else (lambda x: x)
    l = (lambda x: one.get(x, x)) if one else (lambda x: x)
    t = (lambda x: two.get(x, x)) if two else (lambda x: x)
    objs = tuple(o(a) for a in p.objects)
    if len(set(objs)) != len(objs):
        raise DuplicateId("renaming identifies two objects")
    one_cells = {l(f): (o(a), o(b)) for f, (a, b) in p.one_cells.items()}
    two_cells = {t(x): (l(f), l(g)) for x, (f, g) in p.two_cells.items()}
    if len(one_cells) != len(p.one_cells) or len(two_cells) != len(p.two_cells):
        raise DuplicateId("renaming identifies two cells")
    return BicatPresentation(
        objs, one_cells, two_cells,
        {o(a): l(f) for a, f in p.id1.items()},
        {(l(f), l(g)): l(h) for (f, g), h in p.comp1.items()},
        {l(f): t(x) for f, x in p.id2.items()},
        {(t(x), t(y)): t(z) for (x, y), z in p.vcomp.items()},
        {(l(f), t(x)): t(y) for (f, x), y in p.lwhisker.items()},
        {(t(x), l(f)): t(y) for (x, f), y in p.rwhisker.items()},
        {l(f): t(x) for f, x in p.lunitor.items()},
        {l(f): t(x) for f, x in p.lunitor_inv.items()},
        {l(f): t(x) for f, x in p.runitor.items()},
        {l(f): t(x) for f, x in p.runitor_inv.items()},
        {(l(f), l(g), l(h)): t(x) for (f, g, h), x in p.lassoc.items()},
        {(l(f), l(g), l(h)): t(x) for (f, g, h), x in p.lassoc_inv.items()},
    )


def product_bicat(factors: list[BicatPresentation]) -> BicatPresentation:
    """Componentwise product; tokens are tuples ``(x1,...,xn)``."""
    from .budget import tup

    if not factors:
        u = tup()
        return rename(terminal_bicat(), {"*": u}, {"i": u}, {"e": u})
    objects = tuple(tup(*xs) for xs in itertools.product(*[p.objects for p in factors]))
    one = {}
    for fs in itertools.product(*[sorted(p.one_cells) for p in factors]):
        one[tup(*fs)] = (tup(*[p.src1(f) for p, f in zip(factors, fs)]),
                         tup(*[p.tgt1(f) for p, f in zip(factors, fs)]))
    two = {}
    for ts in itertools.product(*[sorted(p.two_cells) for p in factors]):
        two[tup(*ts)] = (tup(*[p.src2(t) for p, t in zip(factors, ts)]),
                         tup(*[p.tgt2(t) for p, t in zip(factors, ts)]))

    def lift(name):
        tables = [getattr(p, name) for p in factors]
        out = {}
        for entries in itertools.product(*[sorted(t.items()) for t in tables]):
            keys = [k for k, _ in entries]
            vals = [v for _, v in entries]
            if isinstance(keys[0], tuple):
                key = tuple(tup(*[k[j] for k in keys]) for j in range(len(keys[0])))
            else:
                key = tup(*keys)
            out[key] = tup(*vals)
        return out

    return BicatPresentation(objects, one, two, **{name: lift(name) for name in TABLES})


def fullsub_bicat(p: BicatPresentation, keep: Callable[[str], bool]) -> BicatPresentation:
    """The full subpresentation on the objects satisfying ``keep``."""
    objs = tuple(a for a in p.objects if keep(a))
    s = set(objs)
    one = {f: ab for f, ab in p.one_cells.items() if ab[0] in s and ab[1] in s}
    two = {t: fg for t, fg in p.two_cells.items() if fg[0] in one}

    def restrict(table, tiers):
        out = {}
        for k, v in table.items():
            ks = k if isinstance(k, tuple) else (k,)
            if all(x in (s if tier == "o" else one if tier == "1" else two)
                   for x, tier in zip(ks, tiers)):
                out[k] = v
        return out

    arity = {"id1": "o", "comp1": "11", "id2": "1", "vcomp": "22", "lwhisker": "12",
             "rwhisker": "21", "lunitor": "1", "lunitor_inv": "1", "runitor": "1",
             "runitor_inv": "1", "lassoc": "111", "lassoc_inv": "111"}
    return BicatPresentation(objs, one, two,
                             **{k: restrict(getattr(p, k), arity[k]) for k in TABLES})
