from __future__ import annotations

import itertools

import pytest
from hypothesis import given

import oracle
from strategies import presentations

from bikernel.budget import Budget
from bikernel.core import (
    Inv2Cell, adjoint_equivalences, bool_monoid, canonical_adjequiv, chaotic_bicat, delta2,
    discrete_bicat, invertible_2cells, is_biinitial, make_presentation, monoid_delooping,
    terminal_bicat, triangles_hold, two_cell_delooping, zmod2, trivial_monoid,
)
from bikernel.errors import EnumerationBudgetExceeded, PreconditionFailed, TypeMismatch
from bikernel.univalence import (
    adjequiv_structure_count, biinitial_uniqueness_check, check_global_univalence,
    check_local_univalence, check_univalent, compose_adjequiv, transport_adjequiv,
)


def _witnesses(part):
    return [(w.cells, w.count) for w in part.witnesses]


# ---------------------------------------------------------------- local

def test_discrete_is_locally_univalent():
    assert check_local_univalence(discrete_bicat(3)).ok


def test_delta2_fails_locally_with_two_isomorphisms():
    assert _witnesses(check_local_univalence(delta2())) == [(("i", "i"), 2)]


def test_chaotic2_is_locally_univalent():
    assert check_local_univalence(chaotic_bicat(2)).ok


# ---------------------------------------------------------------- global

def test_bool_delooping_is_globally_univalent():
    assert check_global_univalence(monoid_delooping(bool_monoid())).ok


def test_z2_delooping_fails_globally_with_two_equivalences():
    assert _witnesses(check_global_univalence(monoid_delooping(zmod2()))) == [(("*", "*"), 2)]


def test_chaotic2_has_cross_object_equivalences():
    rep = check_global_univalence(chaotic_bicat(2))
    assert _witnesses(rep) == [(("a", "b"), 1), (("b", "a"), 1)]


# ---------------------------------------------------------------- overall

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_discrete_presentations_are_univalent(n):
    p = discrete_bicat(n) if n else make_presentation([], {}, {})
    assert check_univalent(p).ok


def test_terminal_is_univalent():
    assert check_univalent(terminal_bicat()).ok


def test_z2_delooping_report_separates_local_and_global():
    rep = check_univalent(monoid_delooping(zmod2()))
    assert rep.local.ok and not rep.global_.ok and not rep.ok
    doc = rep.to_json()
    assert doc["status"] == "fail" and doc["local"]["status"] == "pass"
    assert doc["global"]["witnesses"][0]["cells"] == ["*", "*"]


def test_parts_can_be_skipped():
    rep = check_univalent(delta2(), global_=False)
    assert rep.global_ is None and "global" not in rep.to_json()


def test_univalence_check_respects_its_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        check_univalent(monoid_delooping(zmod2()), Budget(1))


def test_two_cell_group_breaks_local_univalence():
    p = two_cell_delooping(trivial_monoid(), zmod2())
    rep = check_univalent(p)
    assert not rep.local.ok


@given(presentations())
def test_witnesses_can_be_reverified(p):
    rep = check_univalent(p)
    for w in rep.local.witnesses:
        f, g = w.cells
        cells = invertible_2cells(p, f, g)
        assert len(cells) == w.count
        assert f != g or w.count != 1 or cells[0].theta != p.id2[f]
    for w in rep.global_.witnesses:
        a, b = w.cells
        assert len(adjoint_equivalences(p, a, b)) == w.count == oracle.adjoint_equivalence_count(p, a, b)


@given(presentations())
def test_univalence_agrees_with_brute_force_counts(p):
    inv = oracle.inverse_pairs(p)
    local = all((f == g) == bool([t for t in p.cells2(f, g) if t in inv]) and
                (f != g or [t for t in p.cells2(f, f) if t in inv] == [p.id2[f]])
                for f, g in itertools.product(p.one_cells, repeat=2)
                if p.one_cells[f] == p.one_cells[g])
    glob = all(oracle.adjoint_equivalence_count(p, a, b) == (a == b)
               for a, b in itertools.product(p.objects, repeat=2))
    rep = check_univalent(p)
    assert rep.local.ok == local
    # with unique invertible identities the only equivalence on a is the canonical one
    assert rep.global_.ok == (glob and all(
        adjoint_equivalences(p, a, a) == [canonical_adjequiv(p, a)] for a in p.objects))


# ---------------------------------------------------------------- structure counts

def test_identity_carries_one_equivalence_structure():
    assert adjequiv_structure_count(terminal_bicat(), "i") == 1


def test_group_element_carries_one_equivalence_structure():
    assert adjequiv_structure_count(monoid_delooping(zmod2()), "s") == 1


def test_non_unit_carries_no_equivalence_structure():
    assert adjequiv_structure_count(monoid_delooping(bool_monoid()), "0") == 0


@given(presentations())
def test_structure_is_unique_when_locally_univalent(p):
    if check_local_univalence(p).ok:
        for f in p.one_cells:
            assert adjequiv_structure_count(p, f) <= 1


# ---------------------------------------------------------------- composition and transport

def test_composite_of_identity_equivalences_is_identity():
    p = terminal_bicat()
    e = canonical_adjequiv(p, "*")
    assert compose_adjequiv(p, e, e) == e


def test_composite_of_z2_generator_with_itself_lies_on_the_unit():
    p = monoid_delooping(zmod2())
    (e,) = [x for x in adjoint_equivalences(p, "*", "*") if x.f == "s"]
    c = compose_adjequiv(p, e, e)
    assert c.f == "1" and c.g == "1"


def test_transport_along_identity_is_trivial():
    p = chaotic_bicat(2)
    e = adjoint_equivalences(p, "a", "b")[0]
    assert transport_adjequiv(p, e, Inv2Cell(p.id2[e.f], p.id2[e.f])) == e


def test_transport_along_a_non_identity_isomorphism():
    p = delta2()
    e = canonical_adjequiv(p, "*")
    moved = transport_adjequiv(p, e, Inv2Cell("t", "t"))
    assert moved.f == "i"
    assert triangles_hold(p, moved.f, moved.g, moved.eta.theta, moved.eps.theta)


def test_transport_must_start_at_the_equivalence():
    p = chaotic_bicat(2)
    e = adjoint_equivalences(p, "a", "b")[0]
    with pytest.raises(TypeMismatch):
        transport_adjequiv(p, e, Inv2Cell(p.id2["aa"], p.id2["aa"]))


def test_composition_needs_matching_endpoints():
    p = chaotic_bicat(2)
    e = adjoint_equivalences(p, "a", "b")[0]
    with pytest.raises(TypeMismatch):
        compose_adjequiv(p, e, e)


@given(presentations())
def test_composites_of_equivalences_are_equivalences(p):
    for a, b, c in itertools.product(p.objects, repeat=3):
        for e1 in adjoint_equivalences(p, a, b)[:2]:
            for e2 in adjoint_equivalences(p, b, c)[:2]:
                e = compose_adjequiv(p, e1, e2)
                assert triangles_hold(p, e.f, e.g, e.eta.theta, e.eps.theta)
                assert p.one_cells[e.f] == (a, c)


# ---------------------------------------------------------------- biinitial objects

def test_single_discrete_object_is_the_unique_biinitial_one():
    p = discrete_bicat(1)
    assert is_biinitial(p, p.objects[0]).ok
    assert biinitial_uniqueness_check(p)


def test_two_discrete_objects_have_no_biinitial_object():
    assert biinitial_uniqueness_check(discrete_bicat(2))


def test_biinitial_uniqueness_refuses_non_univalent_input():
    with pytest.raises(PreconditionFailed):
        biinitial_uniqueness_check(chaotic_bicat(2))


@given(presentations())
def test_biinitial_objects_are_unique_in_univalent_presentations(p):
    if check_univalent(p).ok:
        assert biinitial_uniqueness_check(p)


# ---------------------------------------------------------------- finite J-consequences

@given(presentations())
def test_invertible_cells_are_identities_when_locally_univalent(p):
    if not check_local_univalence(p).ok:
        return
    for f, g in itertools.product(p.one_cells, repeat=2):
        if p.one_cells[f] == p.one_cells[g]:
            for c in invertible_2cells(p, f, g):
                assert f == g and c == Inv2Cell(p.id2[f], p.id2[f])


@given(presentations())
def test_equivalences_are_canonical_when_univalent(p):
    if not check_univalent(p).ok:
        return
    for a, b in itertools.product(p.objects, repeat=2):
        es = adjoint_equivalences(p, a, b)
        assert es == ([canonical_adjequiv(p, a)] if a == b else [])
