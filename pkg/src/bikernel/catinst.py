"""Finite fragments of the bicategory of categories and the structures displayed over them.

A fragment has a chosen list of finite categories as objects, every functor
between them as 1-cells and every natural transformation as 2-cells. Over a
fragment live Kleisli triples, pointed groupoids, presheaves and the layers
that assemble categories with families.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import MonadStructure, monad_tower
from .budget import Budget, as_budget, tup
from .core import BicatPresentation, adjoint_equivalences, make_presentation
from .disp_psfun import DispBiequivalenceData, forced_disp_biequivalence
from .display import (
    DispBicatPresentation, equation_disp, fullsub_of_total, prod_disp, prop_disp, sigma_disp,
)
from .errors import ConstructionFailed, DuplicateId, NotAGroupoid, TypeMismatch
from .fincat import (
    FiniteCategory, Functor, NatTrans, categories_equivalent, check_category, compose_functors,
    enumerate_functors, enumerate_nattrans, identity_functor, identity_nattrans, is_equivalence,
    is_gaunt, is_groupoid, lwhisker_nattrans, rwhisker_nattrans, vcomp_nattrans,
)
from .psfun import PseudofunctorData, identity_biequivalence


# ---------------------------------------------------------------- fragments

@dataclass(eq=False)
class Fragment:
    categories: dict[str, FiniteCategory]
    functors: dict[str, Functor]
    nats: dict[str, NatTrans]
    bicat: BicatPresentation

    @cached_property
    def _functor_index(self) -> dict[tuple, str]:
        return {(F.src.name, F.tgt.name, F.key()): tok for tok, F in self.functors.items()}

    @cached_property
    def _nat_index(self) -> dict[tuple, str]:
        out = {}
        for tok, n in self.nats.items():
            f, g = self.bicat.two_cells[tok]
            out[(f, g, tuple(n.comp[a] for a in n.src.src.objects))] = tok
        return out

    def functor_token(self, F: Functor) -> str:
        return self._functor_index[(F.src.name, F.tgt.name, F.key())]

    def nat_token(self, n: NatTrans) -> str:
        f, g = self.functor_token(n.src), self.functor_token(n.tgt)
        return self._nat_index[(f, g, tuple(n.comp[a] for a in n.src.src.objects))]


def build_fragment(cats: list[FiniteCategory], budget: Budget | int | None = None) -> Fragment:
    budget = as_budget(budget)
    names = [C.name for C in cats]
    if len(set(names)) != len(names):
        raise DuplicateId("fragment categories need distinct names")
    for C in cats:
        check_category(C)
    functors: dict[str, Functor] = {}
    for C in cats:
        for D in cats:
            for i, F in enumerate(enumerate_functors(C, D, budget)):
                functors[f"{C.name}>{D.name}#{i}"] = F
    index = {(F.src.name, F.tgt.name, F.key()): tok for tok, F in functors.items()}

    def ftok(F: Functor) -> str:
        return index[(F.src.name, F.tgt.name, F.key())]

    one = {tok: (F.src.name, F.tgt.name) for tok, F in functors.items()}
    nats: dict[str, NatTrans] = {}
    two = {}
    by_pair: dict[tuple[str, str], list[str]] = {}
    for f, F in functors.items():
        for g, G in functors.items():
            if one[f] != one[g]:
                continue
            for j, n in enumerate(enumerate_nattrans(F, G, budget)):
                tok = f"{f}=>{g}#{j}"
                nats[tok] = n
                two[tok] = (f, g)
                by_pair.setdefault((f, g), []).append(tok)
    nindex = {(f, g, n.key()): tok for tok, n in nats.items() for f, g in [two[tok]]}

    def ntok(n: NatTrans) -> str:
        return nindex[(ftok(n.src), ftok(n.tgt), n.key())]

    cat = {C.name: C for C in cats}
    id1 = {a: ftok(identity_functor(C)) for a, C in cat.items()}
    comp1 = {}
    for f, F in functors.items():
        for g, G in functors.items():
            if one[f][1] == one[g][0]:
                comp1[(f, g)] = ftok(compose_functors(F, G))
    id2 = {f: ntok(identity_nattrans(F)) for f, F in functors.items()}
    vcomp, lw, rw = {}, {}, {}
    for t, m in nats.items():
        g = two[t][1]
        for h in functors:
            if one[h] != one[g]:
                continue
            for u in by_pair.get((g, h), ()):
                vcomp[(t, u)] = ntok(vcomp_nattrans(m, nats[u]))
    for f, F in functors.items():
        for t, n in nats.items():
            if one[two[t][0]][0] == one[f][1]:
                budget.charge()
                lw[(f, t)] = ntok(lwhisker_nattrans(F, n))
    for t, n in nats.items():
        for h, H in functors.items():
            if one[two[t][0]][1] == one[h][0]:
                budget.charge()
                rw[(t, h)] = ntok(rwhisker_nattrans(n, H))
    unit = {f: id2[f] for f in functors}
    assoc = {(f, g, h): id2[comp1[(comp1[(f, g)], h)]]
             for (f, g) in comp1 for h in functors if one[g][1] == one[h][0]}
    p = make_presentation(
        names, one, two, id1=id1, comp1=comp1, id2=id2, vcomp=vcomp, lwhisker=lw, rwhisker=rw,
        lunitor=unit, lunitor_inv=unit, runitor=unit, runitor_inv=unit,
        lassoc=assoc, lassoc_inv=assoc,
    )
    return Fragment(cat, functors, nats, p)


def fincat_fragment_bicat(cats: list[FiniteCategory],
                          budget: Budget | int | None = None) -> BicatPresentation:
    return build_fragment(cats, budget).bicat


def equivalences_agree(frag: Fragment, budget: Budget | int | None = None) -> bool:
    """Adjoint equivalences of the fragment are exactly the equivalences of categories."""
    budget = as_budget(budget)
    p = frag.bicat
    for a in p.objects:
        for b in p.objects:
            found = {e.f for e in adjoint_equivalences(p, a, b, budget)}
            direct = {f for f in p.hom(a, b) if is_equivalence(frag.functors[f])}
            if found != direct:
                return False
            if bool(found) != categories_equivalent(frag.categories[a], frag.categories[b], budget):
                return False
    return True


def constant_psfunctor(frag: Fragment, target: str) -> PseudofunctorData:
    """The pseudofunctor sending every category to ``target`` and every functor to its identity."""
    p = frag.bicat
    if target not in p.objects:
        raise TypeMismatch(f"{target} is not a fragment member")
    i = p.id1[target]
    return PseudofunctorData(
        p, p, {a: target for a in p.objects}, {f: i for f in p.one_cells},
        {t: p.id2[i] for t in p.two_cells}, {a: p.id2[i] for a in p.objects},
        {fg: p.lunitor[i] for fg in p.comp1},
    )


# ---------------------------------------------------------------- Kleisli triples

@dataclass(frozen=True, eq=False)
class KleisliTriple:
    """``star[(f, b)]`` extends f : a -> M(b); b is part of the key since M need not be injective."""

    cat: FiniteCategory
    M: dict[str, str]
    eta: dict[str, str]
    star: dict[tuple[str, str], str]

    def key(self) -> tuple:
        C = self.cat
        return (tuple(self.M[a] for a in C.objects), tuple(self.eta[a] for a in C.objects),
                tuple(sorted(self.star.items())))

    def fmap(self, h: str) -> str:
        """M on a morphism h : a -> b, as (h . eta(b))*."""
        C = self.cat
        b = C.tgt(h)
        return self.star[(C.comp[(h, self.eta[b])], b)]


def kleisli_domain(C: FiniteCategory, M: dict[str, str]) -> list[tuple[str, str]]:
    """Every (f, b) with f : a -> M(b)."""
    return [(f, b) for b in C.objects for f in sorted(C.morphisms) if C.tgt(f) == M[b]]


def kleisli_laws_hold(K: KleisliTriple) -> bool:
    C, M, eta, star = K.cat, K.M, K.eta, K.star
    for a in C.objects:
        if star.get((eta[a], a)) != C.ident[M[a]]:
            return False
    dom = kleisli_domain(C, M)
    for f, b in dom:
        s = star.get((f, b))
        a = C.src(f)
        if s is None or C.morphisms[s] != (M[a], M[b]) or C.comp[(eta[a], s)] != f:
            return False
    for f, b in dom:
        for g, c in dom:
            if C.src(g) != b:
                continue
            fg = C.comp[(f, star[(g, c)])]
            if C.comp[(star[(f, b)], star[(g, c)])] != star[(fg, c)]:
                return False
    return True


def enumerate_kleisli_triples(C: FiniteCategory,
                              budget: Budget | int | None = None) -> list[KleisliTriple]:
    budget = as_budget(budget)
    out = []
    for images in itertools.product(C.objects, repeat=len(C.objects)):
        M = dict(zip(C.objects, images))
        for etas in itertools.product(*[C.hom(a, M[a]) for a in C.objects]):
            eta = dict(zip(C.objects, etas))
            dom = kleisli_domain(C, M)
            # the unit laws already pin down each candidate list
            choices = []
            for f, b in dom:
                a = C.src(f)
                cands = [s for s in C.hom(M[a], M[b]) if C.comp[(eta[a], s)] == f]
                if f == eta[a] and a == b:
                    cands = [s for s in cands if s == C.ident[M[a]]]
                choices.append(cands)
            for pick in itertools.product(*choices):
                budget.charge()
                K = KleisliTriple(C, M, eta, dict(zip(dom, pick)))
                if kleisli_laws_hold(K):
                    out.append(K)
    return out


@dataclass(eq=False)
class KleisliLayer:
    frag: Fragment
    disp: DispBicatPresentation
    triples: dict[tuple[str, str], KleisliTriple]
    # (functor, fiber token) -> (x, y, components M_D(F a) -> F(M_C a))
    families: dict[tuple[str, str], tuple[str, str, dict[str, str]]]

    def triple_of(self, X: str) -> KleisliTriple:
        return self.triples[self.disp.over0[X]]

    def cell_of_family(self, f: str, x: str, y: str, fam: dict[str, str]) -> str:
        C = self.frag.categories[self.frag.bicat.src1(f)]
        return f"{f}|{tup(x, y, *[fam[a] for a in C.objects])}"


def kleisli_layer(frag: Fragment, budget: Budget | int | None = None) -> KleisliLayer:
    budget = as_budget(budget)
    p = frag.bicat
    triples: dict[tuple[str, str], KleisliTriple] = {}
    d0: dict[str, list[str]] = {}
    for name, C in frag.categories.items():
        for i, K in enumerate(enumerate_kleisli_triples(C, budget)):
            triples[(name, f"k{i}")] = K
            d0.setdefault(name, []).append(f"k{i}")

    def token(x, y, C, fam):
        return tup(x, y, *[fam[a] for a in C.objects])

    d1: dict[tuple[str, str, str], list[str]] = {}
    families: dict[tuple[str, str], tuple[str, str, dict[str, str]]] = {}
    for f, F in frag.functors.items():
        C, D = F.src, F.tgt
        cn, dn = p.one_cells[f]
        for x in d0.get(cn, ()):
            KC = triples[(cn, x)]
            for y in d0.get(dn, ()):
                KD = triples[(dn, y)]
                spaces = [[m for m in D.hom(KD.M[F.obj[a]], F.obj[KC.M[a]]) if D.is_iso(m)]
                          for a in C.objects]
                for pick in itertools.product(*spaces):
                    budget.charge()
                    fam = dict(zip(C.objects, pick))
                    if _kleisli_map_laws(F, KC, KD, fam):
                        tok = token(x, y, C, fam)
                        d1.setdefault((f, x, y), []).append(tok)
                        families[(f, tok)] = (x, y, fam)
    ids = {}
    for name, C in frag.categories.items():
        for x in d0.get(name, ()):
            K = triples[(name, x)]
            ids[(name, x)] = token(x, x, C, {a: C.ident[K.M[a]] for a in C.objects})
    leaving: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for (f, tok), (x, y, fam) in families.items():
        leaving.setdefault((p.src1(f), x), []).append((f, tok))
    comps = {}
    for (f, tok), (x, y, fam) in families.items():
        F = frag.functors[f]
        for g, tok2 in leaving.get((p.tgt1(f), y), ()):
            G = frag.functors[g]
            _, z, fam2 = families[(g, tok2)]
            E = G.tgt
            comp = {a: E.comp[(fam2[F.obj[a]], G.mor[fam[a]])] for a in F.src.objects}
            comps[(f, tok, g, tok2)] = token(x, z, F.src, comp)

    def two_pred(t: str, ff: str, gg: str) -> bool:
        n = frag.nats[t]
        f = p.two_cells[t][0]
        x, y, phi = families[(f, ff)]
        psi = families[(p.two_cells[t][1], gg)][2]
        C, D = n.src.src, n.src.tgt
        KC, KD = triples[(C.name, x)], triples[(D.name, y)]
        return all(
            D.comp[(phi[a], n.comp[KC.M[a]])] == D.comp[(KD.fmap(n.comp[a]), psi[a])]
            for a in C.objects
        )

    disp = prop_disp(p, d0, d1, ids, comps, two_pred)
    return KleisliLayer(frag, disp, triples, families)


def _kleisli_map_laws(F: Functor, KC: KleisliTriple, KD: KleisliTriple,
                      fam: dict[str, str]) -> bool:
    C, D = F.src, F.tgt
    inv = D.inverses
    for a in C.objects:
        if D.comp[(KD.eta[F.obj[a]], fam[a])] != F.mor[KC.eta[a]]:
            return False
    for f, b in kleisli_domain(C, KC.M):
        a = C.src(f)
        inner = D.comp[(F.mor[f], inv[fam[b]])]
        lhs = D.comp[(KD.star[(inner, F.obj[b])], fam[b])]
        rhs = D.comp[(fam[a], F.mor[KC.star[(f, b)]])]
        if lhs != rhs:
            return False
    return True


def kleisli_disp(frag: Fragment, budget: Budget | int | None = None) -> DispBicatPresentation:
    return kleisli_layer(frag, budget).disp


def kleisli_bicat(frag: Fragment, budget: Budget | int | None = None) -> BicatPresentation:
    return kleisli_disp(frag, budget).total


# ---------------------------------------------------------------- monads and Kleisli triples

def monad_to_kleisli(frag: Fragment, s: MonadStructure) -> KleisliTriple:
    C = frag.categories[s.a]
    m, eta, mu = frag.functors[s.m], frag.nats[s.eta], frag.nats[s.mu]
    star = {(f, b): C.comp[(m.mor[f], mu.comp[b])] for f, b in kleisli_domain(C, m.obj)}
    return KleisliTriple(C, dict(m.obj), dict(eta.comp), star)


def kleisli_to_monad(frag: Fragment, K: KleisliTriple) -> MonadStructure:
    C = K.cat
    m = Functor(C, C, dict(K.M), {h: K.fmap(h) for h in C.morphisms})
    ident = identity_functor(C)
    eta = NatTrans(ident, m, dict(K.eta))
    mm = compose_functors(m, m)
    mu = NatTrans(mm, m, {a: K.star[(C.ident[K.M[a]], a)] for a in C.objects})
    try:
        return MonadStructure(C.name, frag.functor_token(m), frag.nat_token(eta),
                              frag.nat_token(mu))
    except KeyError:
        raise ConstructionFailed("Kleisli triple does not induce a monad in the fragment") from None


@dataclass(eq=False)
class MonadKleisli:
    frag: Fragment
    monads: DispBicatPresentation
    kleisli: KleisliLayer
    biequiv: DispBiequivalenceData


def monad_kleisli(frag: Fragment, budget: Budget | int | None = None) -> MonadKleisli:
    budget = as_budget(budget)
    tower = monad_tower(frag.bicat, budget)
    K = kleisli_layer(frag, budget)
    Mn, Kd = tower.monads, K.disp
    p = frag.bicat
    ktoken = {(Kd.over0[X][0], K.triple_of(X).key()): X for X in Kd.total.objects}
    mtoken = {s: X for X, s in tower.monad_of.items()}
    L0, R0 = {}, {}
    for X, s in tower.monad_of.items():
        L0[X] = ktoken.get((s.a, monad_to_kleisli(frag, s).key()))
        if L0[X] is None:
            raise ConstructionFailed(f"monad {X} has no Kleisli counterpart")
    for Y in Kd.total.objects:
        R0[Y] = mtoken.get(kleisli_to_monad(frag, K.triple_of(Y)))
        if R0[Y] is None:
            raise ConstructionFailed(f"Kleisli triple {Y} has no monad counterpart")
    L1, R1 = {}, {}
    for F, (f, n) in tower.map_of.items():
        D = frag.functors[f].tgt
        fam = {a: D.inverses[c] for a, c in frag.nats[n].comp.items()}
        X, Y = Mn.total.one_cells[F]
        tok = K.cell_of_family(f, Kd.over0[L0[X]][1], Kd.over0[L0[Y]][1], fam)
        if tok not in Kd.total.one_cells:
            raise ConstructionFailed(f"monad map {F} has no Kleisli counterpart")
        L1[F] = tok
    by_map = {(Mn.total.one_cells[F], fn): F for F, fn in tower.map_of.items()}
    for G, (f, ff) in Kd.over1.items():
        _, _, fam = K.families[(f, ff)]
        Fn = frag.functors[f]
        D = Fn.tgt
        ms, mt = tower.monad_of[R0[Kd.total.one_cells[G][0]]], tower.monad_of[R0[Kd.total.one_cells[G][1]]]
        n = NatTrans(compose_functors(frag.functors[ms.m], Fn), compose_functors(Fn, frag.functors[mt.m]),
                     {a: D.inverses[c] for a, c in fam.items()})
        X, Y = (R0[e] for e in Kd.total.one_cells[G])
        F = by_map.get(((X, Y), (f, frag.nat_token(n))))
        if F is None:
            raise ConstructionFailed(f"Kleisli map {G} has no monad counterpart")
        R1[G] = F
    db = forced_disp_biequivalence(identity_biequivalence(p), Mn, Kd, L0, L1, R0, R1)
    return MonadKleisli(frag, Mn, K, db)


def monad_kleisli_biequiv(frag: Fragment,
                          budget: Budget | int | None = None) -> DispBiequivalenceData:
    return monad_kleisli(frag, budget).biequiv


# ---------------------------------------------------------------- pointed groupoids

def pointed_groupoid_disp(frag: Fragment) -> DispBicatPresentation:
    """Points of each groupoid; over a functor F, isomorphisms F(x) -> y."""
    p = frag.bicat
    for name, C in frag.categories.items():
        if not is_groupoid(C):
            raise NotAGroupoid(f"{name} has a non-invertible morphism")
    d0 = {name: list(C.objects) for name, C in frag.categories.items()}
    d1: dict[tuple[str, str, str], list[str]] = {}
    point: dict[tuple[str, str], tuple[str, str, str]] = {}
    for f, F in frag.functors.items():
        for x in F.src.objects:
            for y in F.tgt.objects:
                for q in F.tgt.hom(F.obj[x], y):
                    tok = tup(x, y, q)
                    d1.setdefault((f, x, y), []).append(tok)
                    point[(f, tok)] = (x, y, q)
    ids = {(name, x): tup(x, x, C.ident[x]) for name, C in frag.categories.items()
           for x in C.objects}
    comps = {}
    for (f, tok), (x, y, q) in point.items():
        for (g, tok2), (y2, z, q2) in point.items():
            if p.src1(g) == p.tgt1(f) and y2 == y:
                G = frag.functors[g]
                comps[(f, tok, g, tok2)] = tup(x, z, G.tgt.comp[(G.mor[q], q2)])

    def two_pred(t: str, ff: str, gg: str) -> bool:
        n = frag.nats[t]
        x, _, q1 = point[(p.two_cells[t][0], ff)]
        q2 = point[(p.two_cells[t][1], gg)][2]
        return n.src.tgt.comp[(n.comp[x], q2)] == q1

    return prop_disp(p, d0, d1, ids, comps, two_pred)


# ---------------------------------------------------------------- presheaves

@dataclass(frozen=True, eq=False)
class Presheaf:
    """Contravariant: ``act[f]`` for f : a -> b maps sets[b] to sets[a]."""

    cat: FiniteCategory
    sets: dict[str, tuple[str, ...]]
    act: dict[str, dict[str, str]]

    def key(self) -> tuple:
        C = self.cat
        return (tuple(self.sets[a] for a in C.objects),
                tuple(tuple(sorted(self.act[m].items())) for m in sorted(C.morphisms)))


def presheaf_problems(T: Presheaf) -> list[str]:
    C = T.cat
    out = []
    for m, (a, b) in C.morphisms.items():
        fn = T.act.get(m)
        if fn is None or set(fn) != set(T.sets[b]) or not set(fn.values()) <= set(T.sets[a]):
            out.append(f"action of {m} is not a function {b} -> {a}")
    if out:
        return out
    for a in C.objects:
        if any(T.act[C.ident[a]][x] != x for x in T.sets[a]):
            out.append(f"identity on {a} acts non-trivially")
    for (f, g), h in C.comp.items():
        if any(T.act[h][x] != T.act[f][T.act[g][x]] for x in T.sets[C.tgt(g)]):
            out.append(f"composite ({f},{g}) acts wrongly")
    return out


def enumerate_presheaves(C: FiniteCategory, bound: int,
                         budget: Budget | int | None = None) -> list[Presheaf]:
    """Presheaves whose sets are initial segments 0..k-1 with k at most ``bound``."""
    budget = as_budget(budget)
    out = []
    mors = sorted(C.morphisms)
    for sizes in itertools.product(range(bound + 1), repeat=len(C.objects)):
        sets = {a: tuple(str(i) for i in range(k)) for a, k in zip(C.objects, sizes)}
        spaces = []
        for m in mors:
            a, b = C.morphisms[m]
            spaces.append([dict(zip(sets[b], img))
                           for img in itertools.product(sets[a], repeat=len(sets[b]))])
        for pick in itertools.product(*spaces):
            budget.charge()
            T = Presheaf(C, sets, dict(zip(mors, pick)))
            if not presheaf_problems(T):
                out.append(T)
    return out


def _fn_token(sets: tuple[str, ...], fn: dict[str, str]) -> str:
    return "{" + ",".join(f"{x}>{fn[x]}" for x in sets) + "}"


def presheaf_maps(T: Presheaf, U: Presheaf, F: Functor,
                  budget: Budget | int | None = None) -> list[dict[str, dict[str, str]]]:
    """Natural transformations T => op F . U, as component functions."""
    budget = as_budget(budget)
    C = T.cat
    spaces = [[dict(zip(T.sets[a], img))
               for img in itertools.product(U.sets[F.obj[a]], repeat=len(T.sets[a]))]
              for a in C.objects]
    out = []
    for pick in itertools.product(*spaces):
        budget.charge()
        beta = dict(zip(C.objects, pick))
        if all(beta[a][T.act[m][x]] == U.act[F.mor[m]][beta[b][x]]
               for m, (a, b) in C.morphisms.items() for x in T.sets[b]):
            out.append(beta)
    return out


@dataclass(eq=False)
class PresheafLayer:
    disp: DispBicatPresentation
    presheaves: dict[tuple[str, str], Presheaf]
    maps: dict[tuple[str, str], tuple[str, str, dict[str, dict[str, str]]]]


def presheaf_layer(frag: Fragment, presheaves: dict[str, list[Presheaf]] | None = None,
                   bound: int = 1, budget: Budget | int | None = None) -> PresheafLayer:
    """Presheaves over each category: the given ones, or all up to ``bound`` elements per set."""
    budget = as_budget(budget)
    p = frag.bicat
    table: dict[tuple[str, str], Presheaf] = {}
    d0: dict[str, list[str]] = {}
    for name, C in frag.categories.items():
        given = presheaves.get(name, []) if presheaves is not None else \
            enumerate_presheaves(C, bound, budget)
        seen = set()
        for i, T in enumerate(given):
            if T.cat is not C:
                raise TypeMismatch(f"presheaf {i} over {name} lives on another category")
            problems = presheaf_problems(T)
            if problems:
                raise TypeMismatch(f"presheaf {i} over {name}: {problems[0]}")
            if T.key() in seen:
                raise DuplicateId(f"presheaf {i} over {name} repeats")
            seen.add(T.key())
            table[(name, f"P{i}")] = T
            d0.setdefault(name, []).append(f"P{i}")

    def token(x, y, T, beta):
        return tup(x, y, *[f"{a}:{_fn_token(T.sets[a], beta[a])}" for a in T.cat.objects])

    d1: dict[tuple[str, str, str], list[str]] = {}
    maps: dict[tuple[str, str], tuple[str, str, dict]] = {}
    for f, F in frag.functors.items():
        cn, dn = p.one_cells[f]
        for x in d0.get(cn, ()):
            for y in d0.get(dn, ()):
                T, U = table[(cn, x)], table[(dn, y)]
                for beta in presheaf_maps(T, U, F, budget):
                    tok = token(x, y, T, beta)
                    d1.setdefault((f, x, y), []).append(tok)
                    maps[(f, tok)] = (x, y, beta)
    ids = {}
    for (name, x), T in table.items():
        ids[(name, x)] = token(x, x, T, {a: {e: e for e in T.sets[a]} for a in T.cat.objects})
    comps = {}
    leaving: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for (f, tok), (x, y, beta) in maps.items():
        leaving.setdefault((p.src1(f), x), []).append((f, tok))
    for (f, tok), (x, y, beta) in maps.items():
        F = frag.functors[f]
        T = table[(p.src1(f), x)]
        for g, tok2 in leaving.get((p.tgt1(f), y), ()):
            _, z, beta2 = maps[(g, tok2)]
            both = {a: {e: beta2[F.obj[a]][beta[a][e]] for e in T.sets[a]} for a in T.cat.objects}
            comps[(f, tok, g, tok2)] = token(x, z, T, both)

    def two_pred(t: str, ff: str, gg: str) -> bool:
        gamma = frag.nats[t]
        f, g = p.two_cells[t]
        x, y, beta = maps[(f, ff)]
        beta2 = maps[(g, gg)][2]
        T, U = table[(p.src1(f), x)], table[(p.tgt1(f), y)]
        return all(beta[a][e] == U.act[gamma.comp[a]][beta2[a][e]]
                   for a in T.cat.objects for e in T.sets[a])

    disp = prop_disp(p, d0, d1, ids, comps, two_pred)
    return PresheafLayer(disp, table, maps)


def presheaf_disp(frag: Fragment, presheaves: dict[str, list[Presheaf]] | None = None,
                  bound: int = 1, budget: Budget | int | None = None) -> DispBicatPresentation:
    return presheaf_layer(frag, presheaves, bound, budget).disp


# ---------------------------------------------------------------- categories with families

@dataclass
class CwFReport:
    ok: bool
    # (context, type) -> (extended context, projection, generic term)
    witnesses: dict[tuple[str, str], tuple[str, str, str]] = field(default_factory=dict)
    failing: list[tuple[str, str]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def is_presheaf_map(C: FiniteCategory, T: Presheaf, U: Presheaf, p: dict[str, dict[str, str]]) -> bool:
    """p : T => U over the identity of C."""
    return all(p[b][x] in U.sets[b] for b in C.objects for x in T.sets[b]) and all(
        p[a][T.act[m][x]] == U.act[m][p[b][x]] for m, (a, b) in C.morphisms.items()
        for x in T.sets[b])


def check_cwf_representation(C: FiniteCategory, Ty: Presheaf, Tm: Presheaf,
                             p: dict[str, dict[str, str]],
                             budget: Budget | int | None = None) -> CwFReport:
    """Each (G, A) needs (G.A, pi, t) with p(t) = Ty(pi)(A), universal among such triples."""
    budget = as_budget(budget)
    if not is_presheaf_map(C, Tm, Ty, p):
        raise TypeMismatch("p is not a natural transformation Tm => Ty")
    rep = CwFReport(True)
    for G in C.objects:
        for A in Ty.sets[G]:
            found = None
            for GA in C.objects:
                for pi in C.hom(GA, G):
                    for t in Tm.sets[GA]:
                        budget.charge()
                        if p[GA][t] == Ty.act[pi][A] and _universal(C, Ty, Tm, p, G, A, GA, pi, t, budget):
                            found = (GA, pi, t)
                            break
                    if found:
                        break
                if found:
                    break
            if found:
                rep.witnesses[(G, A)] = found
            else:
                rep.ok = False
                rep.failing.append((G, A))
    return rep


def _universal(C, Ty, Tm, p, G, A, GA, pi, t, budget) -> bool:
    for D in C.objects:
        for f in C.hom(D, G):
            for s in Tm.sets[D]:
                if p[D][s] != Ty.act[f][A]:
                    continue
                budget.charge()
                gs = [g for g in C.hom(D, GA) if C.comp[(g, pi)] == f and Tm.act[g][t] == s]
                if len(gs) != 1:
                    return False
    return True


@dataclass(eq=False)
class CwFTower:
    presheaves: PresheafLayer
    pairs: DispBicatPresentation
    p_layer: DispBicatPresentation
    structured: DispBicatPresentation
    cwf: DispBicatPresentation
    # total object of ``structured`` -> (category, Ty, Tm, p)
    data_of: dict[str, tuple[str, Presheaf, Presheaf, dict]]


def cwf2_layers(frag: Fragment, presheaves: dict[str, list[Presheaf]] | None = None,
                bound: int = 1, budget: Budget | int | None = None) -> CwFTower:
    """Presheaf pairs, the chaotic layer of maps p : Tm => Ty, their sigma, and the CwF full sub."""
    budget = as_budget(budget)
    P = presheaf_layer(frag, presheaves, bound, budget)
    pairs = prod_disp(P.disp, P.disp)
    T1 = pairs.total

    def unpack(X):
        ty, tm = pairs.parts[X]
        return P.presheaves[P.disp.over0[ty]], P.presheaves[P.disp.over0[tm]]

    D0: dict[str, list[str]] = {}
    trans: dict[tuple[str, str], dict] = {}
    for X in T1.objects:
        Ty, Tm = unpack(X)
        C = Ty.cat
        spaces = [[dict(zip(Tm.sets[a], img)) for img in itertools.product(Ty.sets[a], repeat=len(Tm.sets[a]))]
                  for a in C.objects]
        for i, pick in enumerate(itertools.product(*spaces)):
            budget.charge()
            comp = dict(zip(C.objects, pick))
            if is_presheaf_map(C, Tm, Ty, comp):
                tok = tup(*[f"{a}:{_fn_token(Tm.sets[a], comp[a])}" for a in C.objects])
                D0.setdefault(X, []).append(tok)
                trans[(X, tok)] = comp

    def holds(F: str, x: str, y: str) -> bool:
        X, Y = T1.one_cells[F]
        f = pairs.over1[F][0]
        Fn = frag.functors[f]
        b_ty, b_tm = (P.maps[P.disp.over1[c]][2] for c in pairs.parts[F])
        p, q = trans[(X, x)], trans[(Y, y)]
        Tm = unpack(X)[1]
        return all(b_ty[a][p[a][e]] == q[Fn.obj[a]][b_tm[a][e]]
                   for a in Fn.src.objects for e in Tm.sets[a])

    layer = equation_disp(T1, D0, holds, budget)
    structured = sigma_disp(pairs, layer)
    data_of = {}
    for Z in structured.total.objects:
        (W,) = structured.parts[Z]
        X, tok = layer.over0[W]
        Ty, Tm = unpack(X)
        data_of[Z] = (pairs.over0[X][0], Ty, Tm, trans[(X, tok)])
    reps = {Z: check_cwf_representation(Ty.cat, Ty, Tm, p, budget).ok
            for Z, (_, Ty, Tm, p) in data_of.items()}
    cwf = fullsub_of_total(structured, lambda Z: reps[Z])
    return CwFTower(P, pairs, layer, structured, cwf, data_of)


def cwf_bicat(frag: Fragment, bound: int = 1, presheaves: dict[str, list[Presheaf]] | None = None,
              budget: Budget | int | None = None) -> BicatPresentation:
    return cwf2_layers(frag, presheaves, bound, budget).cwf.total


