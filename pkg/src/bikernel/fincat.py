"""Finite categories, functors and natural transformations given by tables."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .budget import Budget, as_budget
from .errors import TypeMismatch


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """Composition is diagrammatic: ``comp[(f, g)]`` is f followed by g."""

    name: str
    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    ident: dict[str, str]
    comp: dict[tuple[str, str], str]

    @cached_property
    def homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for m in sorted(self.morphisms):
            out[self.morphisms[m]].append(m)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self.homs[(a, b)]

    def src(self, m: str) -> str:
        return self.morphisms[m][0]

    def tgt(self, m: str) -> str:
        return self.morphisms[m][1]

    @cached_property
    def inverses(self) -> dict[str, str]:
        out = {}
        for m, (a, b) in self.morphisms.items():
            for k in self.hom(b, a):
                if self.comp[(m, k)] == self.ident[a] and self.comp[(k, m)] == self.ident[b]:
                    out[m] = k
                    break
        return out

    def is_iso(self, m: str) -> bool:
        return m in self.inverses

    def isomorphic(self, a: str, b: str) -> bool:
        return any(self.is_iso(m) for m in self.hom(a, b))

    def same_as(self, other: FiniteCategory) -> bool:
        return (
            self.name == other.name
            and self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.ident == other.ident
            and self.comp == other.comp
        )


def category_problems(c: FiniteCategory) -> list[str]:
    """Every typing, totality, unit or associativity failure of the tables."""
    out = []
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        out.append("duplicate object")
    for m, (a, b) in c.morphisms.items():
        if a not in objs or b not in objs:
            out.append(f"morphism {m} has unknown endpoint")
    if out:
        return out
    for a in c.objects:
        i = c.ident.get(a)
        if i is None or c.morphisms.get(i) != (a, a):
            out.append(f"identity on {a} missing or ill-typed")
    for (f, g), h in c.comp.items():
        if f not in c.morphisms or g not in c.morphisms or c.tgt(f) != c.src(g):
            out.append(f"composite defined on non-composable pair ({f},{g})")
        elif c.morphisms.get(h) != (c.src(f), c.tgt(g)):
            out.append(f"composite of ({f},{g}) ill-typed")
    for f, (a, b) in c.morphisms.items():
        for c2 in c.objects:
            for g in c.hom(b, c2):
                if (f, g) not in c.comp:
                    out.append(f"composite of ({f},{g}) missing")
    if out:
        return out
    for f, (a, b) in c.morphisms.items():
        if c.comp[(c.ident[a], f)] != f or c.comp[(f, c.ident[b])] != f:
            out.append(f"unit law fails at {f}")
    for f, (a, b) in c.morphisms.items():
        for x in c.objects:
            for g in c.hom(b, x):
                fg = c.comp[(f, g)]
                for y in c.objects:
                    for h in c.hom(x, y):
                        if c.comp[(fg, h)] != c.comp[(f, c.comp[(g, h)])]:
                            out.append(f"associativity fails at ({f},{g},{h})")
    return out


def check_category(c: FiniteCategory) -> FiniteCategory:
    problems = category_problems(c)
    if problems:
        raise TypeMismatch(f"category {c.name}: {problems[0]}")
    return c


# ---------------------------------------------------------------- generators

def terminal_category(name: str = "1") -> FiniteCategory:
    return FiniteCategory(name, ("*",), {"1*": ("*", "*")}, {"*": "1*"}, {("1*", "1*"): "1*"})


def empty_category(name: str = "0") -> FiniteCategory:
    return FiniteCategory(name, (), {}, {}, {})


def poset_category(name: str, elements: list[str], leq) -> FiniteCategory:
    """Thin category of a finite preorder; ``leq(x, y)`` decides x <= y."""
    mors = {}
    for x in elements:
        for y in elements:
            if leq(x, y):
                mors[f"{x}<={y}"] = (x, y)
    ident = {x: f"{x}<={x}" for x in elements}
    comp = {}
    for f, (a, b) in mors.items():
        for g, (b2, c) in mors.items():
            if b == b2:
                comp[(f, g)] = f"{a}<={c}"
    return check_category(FiniteCategory(name, tuple(elements), mors, ident, comp))


def discrete_category(name: str, elements: list[str]) -> FiniteCategory:
    return poset_category(name, elements, lambda x, y: x == y)


def chaotic_category(name: str, elements: list[str]) -> FiniteCategory:
    """Exactly one morphism between any two objects; all of them invertible."""
    return poset_category(name, elements, lambda x, y: True)


def arrow_category(name: str = "2") -> FiniteCategory:
    """The poset 0 <= 1."""
    return poset_category(name, ["0", "1"], lambda x, y: x <= y)


def cyclic_group_category(name: str, n: int) -> FiniteCategory:
    """One object with the cyclic group of order n as its endomorphisms."""
    mors = {f"g{k}": ("*", "*") for k in range(n)}
    comp = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return check_category(FiniteCategory(name, ("*",), mors, {"*": "g0"}, comp))


# ---------------------------------------------------------------- functors

@dataclass(frozen=True, eq=False)
class Functor:
    src: FiniteCategory
    tgt: FiniteCategory
    obj: dict[str, str]
    mor: dict[str, str]

    def key(self) -> tuple:
        return (
            tuple(self.obj[a] for a in self.src.objects),
            tuple(self.mor[m] for m in sorted(self.src.morphisms)),
        )

    def __eq__(self, other):
        return isinstance(other, Functor) and self.src is other.src and self.tgt is other.tgt \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def functor_problems(F: Functor) -> list[str]:
    C, D = F.src, F.tgt
    out = []
    for a in C.objects:
        if F.obj.get(a) not in D.objects:
            out.append(f"object {a} not sent to an object")
    if out:
        return out
    for m, (a, b) in C.morphisms.items():
        n = F.mor.get(m)
        if n is None or D.morphisms.get(n) != (F.obj[a], F.obj[b]):
            out.append(f"morphism {m} ill-typed image")
    if out:
        return out
    for a in C.objects:
        if F.mor[C.ident[a]] != D.ident[F.obj[a]]:
            out.append(f"identity on {a} not preserved")
    for (f, g), h in C.comp.items():
        if D.comp[(F.mor[f], F.mor[g])] != F.mor[h]:
            out.append(f"composite ({f},{g}) not preserved")
    return out


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms})


def compose_functors(F: Functor, G: Functor) -> Functor:
    """F then G."""
    if F.tgt is not G.src:
        raise TypeMismatch("functors are not composable")
    return Functor(
        F.src, G.tgt,
        {a: G.obj[F.obj[a]] for a in F.src.objects},
        {m: G.mor[F.mor[m]] for m in F.src.morphisms},
    )


def enumerate_functors(C: FiniteCategory, D: FiniteCategory,
                       budget: Budget | int | None = None) -> list[Functor]:
    budget = as_budget(budget)
    out = []
    mors = sorted(m for m in C.morphisms if m not in set(C.ident.values()))
    for images in itertools.product(D.objects, repeat=len(C.objects)):
        budget.charge()
        obj = dict(zip(C.objects, images))
        choices = [D.hom(obj[C.src(m)], obj[C.tgt(m)]) for m in mors]
        if any(not ch for ch in choices):
            continue
        for pick in itertools.product(*choices):
            budget.charge()
            mor = {C.ident[a]: D.ident[obj[a]] for a in C.objects}
            mor.update(zip(mors, pick))
            F = Functor(C, D, obj, mor)
            if not functor_problems(F):
                out.append(F)
    return out


# ---------------------------------------------------------------- transformations

@dataclass(frozen=True, eq=False)
class NatTrans:
    src: Functor
    tgt: Functor
    comp: dict[str, str]

    def key(self) -> tuple:
        return (self.src.key(), self.tgt.key(), tuple(self.comp[a] for a in self.src.src.objects))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def nattrans_problems(n: NatTrans) -> list[str]:
    F, G = n.src, n.tgt
    C, D = F.src, F.tgt
    out = []
    for a in C.objects:
        c = n.comp.get(a)
        if c is None or D.morphisms.get(c) != (F.obj[a], G.obj[a]):
            out.append(f"component at {a} ill-typed")
    if out:
        return out
    for m, (a, b) in C.morphisms.items():
        if D.comp[(F.mor[m], n.comp[b])] != D.comp[(n.comp[a], G.mor[m])]:
            out.append(f"naturality fails at {m}")
    return out


def enumerate_nattrans(F: Functor, G: Functor,
                       budget: Budget | int | None = None) -> list[NatTrans]:
    budget = as_budget(budget)
    C, D = F.src, F.tgt
    choices = [D.hom(F.obj[a], G.obj[a]) for a in C.objects]
    out = []
    for pick in itertools.product(*choices):
        budget.charge()
        n = NatTrans(F, G, dict(zip(C.objects, pick)))
        if not nattrans_problems(n):
            out.append(n)
    return out


def identity_nattrans(F: Functor) -> NatTrans:
    return NatTrans(F, F, {a: F.tgt.ident[F.obj[a]] for a in F.src.objects})


def vcomp_nattrans(m: NatTrans, n: NatTrans) -> NatTrans:
    D = m.src.tgt
    return NatTrans(m.src, n.tgt, {a: D.comp[(m.comp[a], n.comp[a])] for a in m.src.src.objects})


def lwhisker_nattrans(F: Functor, n: NatTrans) -> NatTrans:
    """F followed by a transformation between functors out of F's target."""
    return NatTrans(compose_functors(F, n.src), compose_functors(F, n.tgt),
                    {a: n.comp[F.obj[a]] for a in F.src.objects})


def rwhisker_nattrans(n: NatTrans, H: Functor) -> NatTrans:
    return NatTrans(compose_functors(n.src, H), compose_functors(n.tgt, H),
                    {a: H.mor[n.comp[a]] for a in n.src.src.objects})


def is_natural_iso(n: NatTrans) -> bool:
    D = n.src.tgt
    return all(D.is_iso(c) for c in n.comp.values())


# ---------------------------------------------------------------- equivalences

def is_fully_faithful(F: Functor) -> bool:
    C = F.src
    for a in C.objects:
        for b in C.objects:
            images = [F.mor[m] for m in C.hom(a, b)]
            if len(set(images)) != len(images):
                return False
            if len(images) != len(F.tgt.hom(F.obj[a], F.obj[b])):
                return False
    return True


def is_essentially_surjective(F: Functor) -> bool:
    D = F.tgt
    hit = set(F.obj.values())
    return all(any(D.isomorphic(x, y) for x in hit) for y in D.objects)


def is_equivalence(F: Functor) -> bool:
    return is_fully_faithful(F) and is_essentially_surjective(F)


def is_gaunt(C: FiniteCategory) -> bool:
    """Every isomorphism is an identity."""
    idents = set(C.ident.values())
    return all(m in idents for m in C.inverses)


def is_groupoid(C: FiniteCategory) -> bool:
    return all(C.is_iso(m) for m in C.morphisms)


def categories_equivalent(C: FiniteCategory, D: FiniteCategory,
                          budget: Budget | int | None = None) -> bool:
    return any(is_equivalence(F) for F in enumerate_functors(C, D, budget))
