from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

import oracle
from strategies import presentations

from bikernel.budget import tup
from bikernel.core import (
    Inv2Cell, canonical_adjequiv, chaotic_bicat, check_laws, delta2, discrete_bicat,
    fullsub_bicat, monoid_delooping, bool_monoid, product_bicat, rename, terminal_bicat,
)
from bikernel.catinst import build_fragment
from bikernel.corpus import displayed_corpus, monotone_disp
from bikernel.display import (
    chaotic_disp, check_disp_laws, check_disp_univalence, disp_adjoint_equivalences,
    disp_invertible_2cells, equation_disp, fullsub_disp, is_locally_groupoidal,
    is_locally_propositional, pair, prod_disp, projection_psfunctor, sigma_disp, total_bicat,
    trivial_disp, validate_disp,
)
from bikernel.errors import ChaoticClosureViolation, DuplicateId, TypeMismatch
from bikernel.fincat import arrow_category
from bikernel.psfun import check_psfunctor
from bikernel.univalence import check_univalent


def _z2_fibre_over_terminal():
    """One displayed object whose endo-fiber over the identity is Z/2 = {p, q}."""
    comps = {("i", "p", "i", "p"): "p", ("i", "p", "i", "q"): "q",
             ("i", "q", "i", "p"): "q", ("i", "q", "i", "q"): "p"}
    return chaotic_disp(terminal_bicat(), {"*": ["x"]}, {("i", "x", "x"): ["p", "q"]},
                        {("*", "x"): "p"}, comps)


def _in(pred_objects):
    return lambda x: x in pred_objects


# ---------------------------------------------------------------- laws

def test_chaotic_display_over_terminal_is_lawful():
    d = chaotic_disp(terminal_bicat(), {"*": ["x", "y"]},
                     {("i", "x", "x"): ["u"], ("i", "y", "y"): ["v"], ("i", "x", "y"): ["w"]},
                     {("*", "x"): "u", ("*", "y"): "v"},
                     {("i", "u", "i", "u"): "u", ("i", "v", "i", "v"): "v",
                      ("i", "u", "i", "w"): "w", ("i", "w", "i", "v"): "w"})
    assert check_disp_laws(d).ok


def test_chaotic_display_must_be_closed_under_composition():
    with pytest.raises(ChaoticClosureViolation):
        chaotic_disp(terminal_bicat(), {"*": ["x"]}, {("i", "x", "x"): ["u"]},
                     {("*", "x"): "u"}, {})


def test_fiber_tokens_must_be_unique_per_base_cell():
    with pytest.raises(DuplicateId):
        chaotic_disp(terminal_bicat(), {"*": ["x", "y"]},
                     {("i", a, b): ["c"] for a in "xy" for b in "xy"},
                     {("*", "x"): "c", ("*", "y"): "c"}, {("i", "c", "i", "c"): "c"})


def test_fullsub_display_over_discrete_is_lawful():
    d = fullsub_disp(discrete_bicat(2), _in({"a"}))
    assert check_disp_laws(d).ok


def test_product_of_lawful_displays_is_lawful():
    p = chaotic_bicat(2)
    d = prod_disp(monotone_disp(p, 2), fullsub_disp(p, _in({"a"})))
    assert check_disp_laws(d).ok


@given(presentations(depth=1), st.integers(1, 2))
def test_monotone_displays_are_lawful(p, k):
    d = monotone_disp(p, k)
    validate_disp(d)
    assert check_disp_laws(d).ok


def test_product_needs_a_common_base():
    with pytest.raises(TypeMismatch):
        prod_disp(fullsub_disp(discrete_bicat(1), _in(set())),
                  fullsub_disp(discrete_bicat(2), _in(set())))


# ---------------------------------------------------------------- totals

def test_trivial_display_totals_to_the_product():
    p, q = chaotic_bicat(2), delta2()
    total = total_bicat(trivial_disp(p, q))
    assert set(total.objects) == {pair(a, x) for a in p.objects for x in q.objects}
    assert total.size() == product_bicat([p, q]).size()
    assert check_laws(total).ok


def test_fullsub_total_over_discrete_is_one_object():
    total = fullsub_disp(discrete_bicat(2), _in({"a"})).total
    assert total.size() == discrete_bicat(1).size()
    assert total.objects == (pair("a", "*"),)


def test_singleton_chaotic_total_is_terminal_up_to_names():
    T = terminal_bicat()
    d = chaotic_disp(T, {"*": ["x"]}, {("i", "x", "x"): ["u"]}, {("*", "x"): "u"},
                     {("i", "u", "i", "u"): "u"})
    obj = {pair("*", "x"): "*"}
    one = {pair("i", "u"): "i"}
    two = {S: "e" for S in d.total.two_cells}
    assert rename(d.total, obj, one, two) == T


@given(presentations(depth=1), st.data())
def test_fullsub_total_matches_direct_full_subpresentation(p, data):
    keep = data.draw(st.sets(st.sampled_from(p.objects))) if p.objects else set()
    d = fullsub_disp(p, _in(keep))
    direct = fullsub_bicat(p, _in(keep))
    strip = {X: d.over0[X][0] for X in d.total.objects}
    strip1 = {F: d.over1[F][0] for F in d.total.one_cells}
    strip2 = {S: d.over2[S][0] for S in d.total.two_cells}
    assert rename(d.total, strip, strip1, strip2) == direct


def test_product_of_fullsubs_has_product_fibers():
    p = discrete_bicat(3)
    P, Q = {"a", "b"}, {"b", "c"}
    d = prod_disp(fullsub_disp(p, _in(P)), fullsub_disp(p, _in(Q)))
    assert {a for a, xs in d.d0.items() if xs} == P & Q


@given(presentations(depth=1), st.integers(1, 2), st.integers(1, 2))
def test_product_totals_have_fiberwise_product_counts(p, j, k):
    d1, d2 = monotone_disp(p, j), monotone_disp(p, k)
    d = prod_disp(d1, d2)
    for tier in ("objects_over", "cells1_over", "cells2_over"):
        a, b, c = getattr(d, tier), getattr(d1, tier), getattr(d2, tier)
        assert all(len(a[x]) == len(b[x]) * len(c[x]) for x in a)
    assert check_laws(d.total).ok


@given(presentations(depth=1))
def test_trivial_totals_have_product_counts(p):
    q = delta2()
    n = trivial_disp(p, q).size()
    assert n == tuple(x * y for x, y in zip(p.size(), q.size()))


def test_sigma_of_fullsubs_on_discrete_has_pair_fibers():
    p = discrete_bicat(2)
    d1 = fullsub_disp(p, _in({"a", "b"}))
    d2 = fullsub_disp(d1.total, _in({pair("a", "*")}))
    s = sigma_disp(d1, d2)
    assert s.d0 == {"a": (tup("*", "*"),), "b": ()}
    assert check_disp_laws(s).ok


def test_sigma_needs_the_second_layer_over_the_first_total():
    d1 = fullsub_disp(discrete_bicat(2), _in({"a"}))
    with pytest.raises(TypeMismatch):
        sigma_disp(d1, fullsub_disp(discrete_bicat(2), _in({"a"})))


@given(presentations(depth=1))
def test_projection_is_a_pseudofunctor(p):
    assert check_psfunctor(projection_psfunctor(monotone_disp(p, 2))).ok


# ---------------------------------------------------------------- displayed searches

def test_chaotic_display_has_one_invertible_cell_per_inhabited_pair():
    p = chaotic_bicat(2)
    d = monotone_disp(p, 2)
    for f in p.one_cells:
        ident = Inv2Cell(p.id2[f], p.id2[f])
        for F, G in itertools.product(d.cells1_over[f], repeat=2):
            if d.total.one_cells[F] == d.total.one_cells[G]:
                assert len(disp_invertible_2cells(d, ident, F, G)) == len(d.total.cells2(F, G)) == 1


def test_fullsub_has_one_displayed_identity_equivalence():
    p = chaotic_bicat(2)
    d = fullsub_disp(p, _in({"a"}))
    X = pair("a", "*")
    assert len(disp_adjoint_equivalences(d, canonical_adjequiv(p, "a"), X, X)) == 1


def test_product_invertible_cells_multiply():
    d1, d2 = _z2_fibre_over_terminal(), _z2_fibre_over_terminal()
    d = prod_disp(d1, d2)
    ident = Inv2Cell("e", "e")
    n = lambda dd: sum(len(disp_invertible_2cells(dd, ident, F, G))  # noqa: E731
                       for F, G in itertools.product(dd.cells1_over["i"], repeat=2))
    assert n(d) == n(d1) * n(d2) == 16


def test_displayed_cells_need_a_matching_base_cell():
    d = monotone_disp(delta2(), 1)
    F = d.cells1_over["i"][0]
    with pytest.raises(TypeMismatch):
        disp_invertible_2cells(d, Inv2Cell("t", "e"), F, F)


# ---------------------------------------------------------------- displayed univalence

@given(presentations(depth=1), st.data())
def test_fullsub_displays_are_univalent(p, data):
    keep = data.draw(st.sets(st.sampled_from(p.objects))) if p.objects else set()
    assert check_disp_univalence(fullsub_disp(p, _in(keep))).ok


def test_two_equivalent_fiber_cells_break_univalence():
    d = _z2_fibre_over_terminal()
    rep = check_disp_univalence(d)
    assert not rep.local.ok and not rep.global_.ok
    (w,) = rep.global_.witnesses
    X = pair("*", "x")
    assert w.cells == (X, X)
    assert w.count == oracle.adjoint_equivalence_count(d.total, X, X) == 4


def test_codiscrete_fiber_fails_globally():
    D1 = {("i", a, b): [tup(a, b)] for a in "xy" for b in "xy"}
    comps = {("i", tup(a, b), "i", tup(b, c)): tup(a, c) for a in "xy" for b in "xy" for c in "xy"}
    d = chaotic_disp(terminal_bicat(), {"*": ["x", "y"]}, D1,
                     {("*", a): tup(a, a) for a in "xy"}, comps)
    rep = check_disp_univalence(d)
    assert rep.local.ok
    assert [w.cells for w in rep.global_.witnesses] == [(pair("*", "x"), pair("*", "y")),
                                                         (pair("*", "y"), pair("*", "x"))]


@given(presentations(depth=1), st.integers(1, 3))
def test_monotone_chaotic_displays_are_univalent(p, k):
    assert check_disp_univalence(monotone_disp(p, k)).ok


def test_product_of_univalent_displays_is_univalent():
    p = monoid_delooping(bool_monoid())
    d = prod_disp(monotone_disp(p, 2), fullsub_disp(p, _in({"*"})))
    assert check_disp_univalence(d).ok


def test_equation_layer_is_propositional_and_univalent():
    p = chaotic_bicat(2)
    d = equation_disp(p, {a: ["0", "1"] for a in p.objects}, lambda F, x, y: x <= y)
    assert is_locally_propositional(d)
    assert check_disp_univalence(d).ok


# ---------------------------------------------------------------- the main theorems, sampled

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_univalent_displays_over_univalent_bases_have_univalent_totals(seed):
    for inst in displayed_corpus(seed, 40):
        assert check_univalent(inst.base.p).ok
        assert check_disp_univalence(inst.d).ok, inst.name
        assert check_univalent(inst.d.total).ok, inst.name


def test_sigma_of_propositional_groupoidal_layers_is_univalent():
    seen = 0
    for inst in displayed_corpus(5, 120):
        if inst.kind != "sigma":
            continue
        d1, d2 = inst.layers
        assert check_univalent(inst.d.total).ok
        if all(is_locally_propositional(x) and is_locally_groupoidal(x) for x in (d1, d2)):
            assert check_disp_univalence(inst.d).ok
            seen += 1
    assert seen > 5


# ---------------------------------------------------------------- fiber shape predicates

def test_chaotic_and_fullsub_are_propositional_and_groupoidal():
    p = chaotic_bicat(2)
    for d in (monotone_disp(p, 2), fullsub_disp(p, _in({"a"}))):
        assert is_locally_propositional(d) and is_locally_groupoidal(d)


def test_two_element_cell_fiber_is_not_propositional():
    d = trivial_disp(terminal_bicat(), delta2())
    assert not is_locally_propositional(d)
    assert is_locally_groupoidal(d)


def test_non_invertible_fiber_cell_is_not_groupoidal():
    fibre = build_fragment([arrow_category()]).bicat
    d = trivial_disp(terminal_bicat(), fibre)
    assert not is_locally_groupoidal(d)
