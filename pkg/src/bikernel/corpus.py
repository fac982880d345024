"""Seed-deterministic corpus of lawful presentations and displayed presentations, and the fuzz run.

Members are grown from small seed families by op, product, totals of chaotic
displays and full subpresentations, so each is lawful by construction. All
randomness comes from ``random.Random(seed)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import alg_disp
from .budget import Budget, as_budget, tup
from .catinst import build_fragment
from .core import (
    BicatPresentation, bool_monoid, chaotic_bicat, cyclic_group, discrete_bicat, fullsub_bicat,
    left_zero_monoid, monoid_delooping, op_bicat, product_bicat, terminal_bicat, trivial_monoid,
    two_cell_delooping, zmod2,
)
from .display import (
    DispBicatPresentation, chaotic_disp, check_disp_univalence, fullsub_disp,
    is_locally_groupoidal, is_locally_propositional, prod_disp, sigma_disp, trivial_disp,
)
from .errors import EnumerationBudgetExceeded
from .fincat import arrow_category, empty_category, terminal_category
from .psfun import enumerate_psfunctors, id_psfunctor
from .univalence import check_univalent

# size caps keep every member cheap to check
MAX_OBJECTS = 4
MAX_ONE = 12
MAX_TWO = 24


@dataclass(eq=False)
class Member:
    name: str
    p: BicatPresentation

    @cached_property
    def univalent(self) -> bool:
        return check_univalent(self.p).ok

    @cached_property
    def locally_univalent(self) -> bool:
        return check_univalent(self.p, global_=False).ok


def seed_members() -> list[Member]:
    out = [Member("terminal", terminal_bicat())]
    out += [Member(f"discrete{n}", discrete_bicat(n)) for n in (1, 2, 3)]
    out += [Member(f"chaotic{n}", chaotic_bicat(n)) for n in (1, 2)]
    for name, m in (("trivial", trivial_monoid()), ("bool", bool_monoid()),
                    ("zmod2", zmod2()), ("leftzero", left_zero_monoid())):
        out.append(Member(f"deloop({name})", monoid_delooping(m)))
    out.append(Member("deloop2(trivial,zmod2)", two_cell_delooping(trivial_monoid(), zmod2())))
    out.append(Member("deloop2(trivial,zmod3)", two_cell_delooping(trivial_monoid(), cyclic_group(3))))
    for names, cats in ((("1",), [terminal_category()]), (("2",), [arrow_category()]),
                        (("0", "1"), [empty_category(), terminal_category()])):
        out.append(Member(f"fragment({','.join(names)})", build_fragment(cats).bicat))
    return out


def _small(p: BicatPresentation) -> bool:
    n0, n1, n2 = p.size()
    return 0 < n0 <= MAX_OBJECTS and n1 <= MAX_ONE and n2 <= MAX_TWO


def monotone_disp(p: BicatPresentation, k: int) -> DispBicatPresentation:
    """Chaotic display with fibers 0..k-1 and a 1-cell x -> y exactly when x <= y.

    Fibers of 1-cells are propositions and the relation is antisymmetric, so
    the only displayed equivalences are identities.
    """
    levels = [str(i) for i in range(k)]
    d0 = {a: list(levels) for a in p.objects}
    d1 = {(f, x, y): [tup(x, y)] for f in p.one_cells for x in levels for y in levels if x <= y}
    ids = {(a, x): tup(x, x) for a in p.objects for x in levels}
    comps = {(f, tup(x, y), g, tup(y2, z)): tup(x, z)
             for (f, g) in p.comp1 for x in levels for y in levels for y2 in levels for z in levels
             if x <= y and y == y2 and y2 <= z}
    return chaotic_disp(p, d0, d1, ids, comps)


def chaotic_total(p: BicatPresentation, k: int) -> BicatPresentation:
    return monotone_disp(p, k).total


def grow_corpus(seed: int, count: int) -> list[Member]:
    """Seed families closed under op, product, total of a chaotic display and full sub."""
    rng = random.Random(seed)
    members = seed_members()
    seen = {m.name for m in members}
    attempts = 0
    while len(members) < count and attempts < 50 * count:
        attempts += 1
        op = rng.choice(("op", "product", "chaotic-total", "fullsub"))
        a = rng.choice(members)
        if op == "op":
            name, make = f"op({a.name})", lambda: op_bicat(a.p)
        elif op == "product":
            b = rng.choice(members)
            name, make = f"({a.name}x{b.name})", lambda: product_bicat([a.p, b.p])
        elif op == "chaotic-total":
            k = rng.choice((1, 2))
            name, make = f"chaotic{k}({a.name})", lambda: chaotic_total(a.p, k)
        else:
            keep = {x for x in a.p.objects if rng.random() < 0.6}
            if not keep:
                continue
            name = f"full({a.name};{','.join(sorted(keep))})"
            make = lambda: fullsub_bicat(a.p, lambda x: x in keep)  # noqa: E731
        if name in seen:
            continue
        if op == "product" and a.p.size()[1] * b.p.size()[1] > MAX_ONE:
            continue
        p = make()
        if not _small(p):
            continue
        seen.add(name)
        members.append(Member(name, p))
    return members


# ---------------------------------------------------------------- displayed instances

@dataclass(eq=False)
class DispInstance:
    name: str
    base: Member
    d: DispBicatPresentation
    kind: str
    # for sigma instances, the two layers
    layers: tuple[DispBicatPresentation, DispBicatPresentation] | None = None


def displayed_corpus(seed: int, count: int) -> list[DispInstance]:
    """``count`` displayed presentations over univalent corpus members."""
    rng = random.Random(seed)
    bases = [m for m in grow_corpus(seed, 40) if m.univalent and m.p.size()[2] <= 12]
    fibres = [m for m in bases if m.p.size()[2] <= 4]
    out: list[DispInstance] = []
    while len(out) < count:
        B = rng.choice(bases)
        kind = rng.choice(("fullsub", "trivial", "monotone", "product", "sigma"))
        i = len(out)
        if kind == "fullsub":
            keep = {x for x in B.p.objects if rng.random() < 0.5}
            d = fullsub_disp(B.p, lambda x: x in keep)
            out.append(DispInstance(f"{i}:full({B.name})", B, d, kind))
        elif kind == "trivial":
            C = rng.choice(fibres)
            out.append(DispInstance(f"{i}:trivial({B.name},{C.name})", B, trivial_disp(B.p, C.p), kind))
        elif kind == "monotone":
            k = rng.choice((1, 2, 3))
            out.append(DispInstance(f"{i}:monotone{k}({B.name})", B, monotone_disp(B.p, k), kind))
        elif kind == "product":
            k = rng.choice((1, 2))
            keep = {x for x in B.p.objects if rng.random() < 0.7}
            d = prod_disp(monotone_disp(B.p, k), fullsub_disp(B.p, lambda x: x in keep))
            out.append(DispInstance(f"{i}:product({B.name})", B, d, kind))
        else:
            d1 = monotone_disp(B.p, rng.choice((1, 2)))
            keep = {x for x in d1.total.objects if rng.random() < 0.7}
            d2 = fullsub_disp(d1.total, lambda x: x in keep)
            out.append(DispInstance(f"{i}:sigma({B.name})", B, sigma_disp(d1, d2), kind, (d1, d2)))
    return out


# ---------------------------------------------------------------- the fuzz run

@dataclass
class FuzzSummary:
    seed: int
    count: int
    verified: dict[str, int] = field(default_factory=dict)
    skipped: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"status": "pass" if self.ok else "fail", "seed": self.seed, "count": self.count,
                "verified": dict(sorted(self.verified.items())),
                "skipped": dict(sorted(self.skipped.items())), "failures": self.failures}


def run_fuzz(seed: int, count: int = 200, budget: Budget | int | None = None) -> FuzzSummary:
    """Check the univalence theorems on ``count`` displayed instances and on the algebra layer."""
    budget = as_budget(budget)
    s = FuzzSummary(seed, count)

    def tally(law: str, ok: bool, name: str) -> None:
        if ok:
            s.verified[law] = s.verified.get(law, 0) + 1
        else:
            s.failures.append({"law": law, "instance": name})

    for inst in displayed_corpus(seed, count):
        disp_ok = check_disp_univalence(inst.d, budget).ok
        tally(f"displayed_univalence.{inst.kind}", disp_ok, inst.name)
        if not disp_ok:
            continue
        tally("total_univalence", check_univalent(inst.d.total, budget).ok, inst.name)
        if inst.layers:
            d1, d2 = inst.layers
            if check_disp_univalence(d1, budget).ok and check_disp_univalence(d2, budget).ok:
                tally("sigma_univalence", check_univalent(inst.d.total, budget).ok, inst.name)
                if all(is_locally_propositional(x) and is_locally_groupoidal(x) for x in (d1, d2)):
                    tally("sigma_displayed_univalence",
                          check_disp_univalence(inst.d, budget).ok, inst.name)
    rng = random.Random(seed)
    univalent = [m for m in grow_corpus(seed, 40) if m.univalent and m.p.size()[2] <= 6]
    for m in univalent:
        endos = [id_psfunctor(m.p)]
        try:
            found = enumerate_psfunctors(m.p, m.p, 20_000)
            if found:
                endos.append(rng.choice(found))
        except EnumerationBudgetExceeded:
            s.skipped["algebra_endofunctor"] = s.skipped.get("algebra_endofunctor", 0) + 1
        for F in endos:
            total = alg_disp(F, budget).total
            tally("algebra_univalence", check_univalent(total, budget).ok, m.name)
    return s
