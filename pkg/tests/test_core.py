from __future__ import annotations

import dataclasses
import itertools

import pytest
from hypothesis import given

import oracle
from strategies import presentations

from bikernel.budget import Budget
from bikernel.core import (
    FiniteMonoid, Inv2Cell, adjoint_equivalences, bool_monoid, canonical_adjequiv,
    chaotic_bicat, check_laws, check_strict, cyclic_group, delta2, discrete_bicat, hom_category,
    invertible_2cells, is_biinitial, left_zero_monoid, make_presentation, monoid_delooping,
    op_bicat, product_bicat, strict_to_two_cat, terminal_bicat, triangles_hold,
    two_cell_delooping, validate_presentation, weak_unit_bicat, zmod2,
)
from bikernel.errors import (
    DanglingReference, DuplicateId, EnumerationBudgetExceeded, InvalidMonoid, NotStrict,
    TypeMismatch,
)
from bikernel.fincat import category_problems


def _violations(rep):
    return {(v.law, v.cells) for v in rep.violations}


# ---------------------------------------------------------------- validation

def test_terminal_presentation_validates():
    assert validate_presentation(terminal_bicat()).ok


def test_missing_composite_is_reported_as_totality_violation():
    p = terminal_bicat()
    q = dataclasses.replace(p, comp1={})
    rep = validate_presentation(q)
    assert ("5", ("i", "i")) in _violations(rep)


def test_lunitor_pointing_at_non_parallel_cell_is_a_typing_violation():
    p = terminal_bicat()
    q = dataclasses.replace(
        p, one_cells={**p.one_cells, "j": ("*", "*")},
        two_cells={**p.two_cells, "u": ("j", "j")}, lunitor={"i": "u"},
    )
    rep = validate_presentation(q)
    bad = [v for v in rep.violations if v.law == "10" and v.cells == ("i",)]
    assert bad and bad[0].lhs == "j=>j" and bad[0].rhs == "i=>i"


def test_extra_table_entry_is_reported():
    p = delta2()
    q = dataclasses.replace(p, vcomp={**p.vcomp, ("e", "zz"): "e"},
                            two_cells={**p.two_cells, "zz": ("i", "i")})
    assert not validate_presentation(q).ok


def test_non_parallel_two_cell_is_reported():
    p = chaotic_bicat(2)
    q = dataclasses.replace(p, two_cells={**p.two_cells, "bad": ("aa", "ab")})
    assert ("3", ("bad",)) in _violations(validate_presentation(q))


def test_duplicate_object_tokens_are_rejected():
    with pytest.raises(DuplicateId):
        make_presentation(["a", "a"], {}, {})


def test_unknown_token_is_a_dangling_reference():
    p = terminal_bicat()
    with pytest.raises(DanglingReference):
        validate_presentation(dataclasses.replace(p, id2={"i": "nope"}))
    with pytest.raises(DanglingReference):
        validate_presentation(dataclasses.replace(p, one_cells={"i": ("*", "?")}))


def test_empty_presentation_is_lawful():
    p = make_presentation([], {}, {})
    assert validate_presentation(p).ok and check_laws(p).ok


# ---------------------------------------------------------------- law checking

@pytest.mark.parametrize("p", [
    terminal_bicat(), discrete_bicat(1), discrete_bicat(2), discrete_bicat(3), chaotic_bicat(2),
    monoid_delooping(bool_monoid()), monoid_delooping(zmod2()), delta2(), weak_unit_bicat(),
    two_cell_delooping(bool_monoid(), cyclic_group(3)),
], ids=["terminal", "discrete1", "discrete2", "discrete3", "chaotic2", "deloop-bool",
        "deloop-z2", "delta2", "weak-unit", "deloop2-bool-z3"])
def test_generated_presentations_are_lawful(p):
    assert validate_presentation(p).ok
    rep = check_laws(p)
    assert rep.ok and oracle.law_failures(p) == set()


def test_terminal_exercises_every_law_family_once():
    rep = check_laws(terminal_bicat())
    families = {k for k, v in rep.instances.items() if v}
    assert families == {str(i) for i in range(12, 25)}


def test_wrong_associator_on_z2_fails_at_the_pentagon():
    p = monoid_delooping(zmod2())
    s = next(f for f in p.one_cells if f != p.id1["*"])
    # Z/2 has only identity 2-cells, so retarget the associator to a non-parallel cell
    wrong = p.id2[p.id1["*"]]
    assert p.lassoc[(s, s, s)] == p.id2[s] != wrong
    q = dataclasses.replace(p, lassoc={**p.lassoc, (s, s, s): wrong})
    assert not validate_presentation(q).ok
    rep = check_laws(q)
    assert rep.laws() & {"12", "24"}
    assert any((s, s, s) == v.cells[:3] for v in rep.violations if v.law in {"22", "24"})


def test_law_checker_respects_its_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        check_laws(chaotic_bicat(2), Budget(3))


def test_violations_serialise_to_report_shape():
    p = delta2()
    q = dataclasses.replace(p, lunitor_inv={"i": "t"})
    doc = check_laws(q).to_json()
    assert doc["status"] == "fail"
    assert {v["law"] for v in doc["violations"]} == {"20"}
    assert all(set(v) == {"law", "cells", "lhs", "rhs"} for v in doc["violations"])


def _single_entry_mutations(p, tables):
    for name in tables:
        table = getattr(p, name)
        for key in sorted(table):
            for alt in sorted(p.two_cells):
                if alt != table[key]:
                    q = dataclasses.replace(p, **{name: {**table, key: alt}})
                    if validate_presentation(q).ok:
                        yield name, key, q


@pytest.mark.parametrize("p", [delta2(), two_cell_delooping(bool_monoid(), zmod2()),
                               two_cell_delooping(bool_monoid(), cyclic_group(3))],
                         ids=["delta2", "deloop2-bool-z2", "deloop2-bool-z3"])
def test_every_structural_mutation_is_caught(p):
    tables = ("lunitor", "lunitor_inv", "runitor", "runitor_inv", "lassoc", "lassoc_inv")
    seen = 0
    for _, _, q in _single_entry_mutations(p, tables):
        seen += 1
        got = check_laws(q).laws()
        assert got & {"20", "21", "22", "23", "24"}
        assert got == oracle.law_failures(q)
    assert seen > 0


def test_library_and_naive_checker_agree_on_all_whisker_mutations():
    p = two_cell_delooping(bool_monoid(), zmod2())
    for _, _, q in _single_entry_mutations(p, ("vcomp", "lwhisker", "rwhisker")):
        assert check_laws(q).laws() == oracle.law_failures(q)


@given(presentations())
def test_constructed_presentations_are_lawful(p):
    assert validate_presentation(p).ok
    assert check_laws(p).ok


# ---------------------------------------------------------------- hom categories

def test_hom_category_of_terminal_is_trivial():
    C = hom_category(terminal_bicat(), "*", "*")
    assert len(C.objects) == 1 and len(C.morphisms) == 1


def test_hom_category_of_bool_delooping_is_discrete():
    C = hom_category(monoid_delooping(bool_monoid()), "*", "*")
    assert len(C.objects) == 2 and len(C.morphisms) == 2
    assert all(C.ident[a] in C.morphisms for a in C.objects)


def test_hom_category_of_delta2_has_two_endomorphisms():
    C = hom_category(delta2(), "*", "*")
    assert C.objects == ("i",) and sorted(C.morphisms) == ["e", "t"]
    assert C.comp[("t", "t")] == "e"


def test_hom_category_of_unknown_object_fails():
    with pytest.raises(DanglingReference):
        hom_category(terminal_bicat(), "*", "nowhere")


@given(presentations())
def test_every_hom_category_satisfies_category_axioms(p):
    for a, b in itertools.product(p.objects, repeat=2):
        assert category_problems(hom_category(p, a, b)) == []


# ---------------------------------------------------------------- op

def test_op_of_terminal_is_terminal():
    assert op_bicat(terminal_bicat()) == terminal_bicat()


def _opposite(m: FiniteMonoid) -> FiniteMonoid:
    return FiniteMonoid(m.elements, m.unit, {(b, a): c for (a, b), c in m.mul.items()})


def test_op_of_a_delooping_deloops_the_opposite_monoid():
    m = left_zero_monoid()
    with pytest.raises(InvalidMonoid):
        m.check(abelian=True)
    lhs, rhs = op_bicat(monoid_delooping(m)), monoid_delooping(_opposite(m))
    assert lhs.comp1 == rhs.comp1
    assert lhs.comp1 == {(g, f): h for (f, g), h in monoid_delooping(m).comp1.items()}


@given(presentations())
def test_op_is_an_involution(p):
    assert op_bicat(op_bicat(p)) == p


@given(presentations())
def test_op_preserves_lawfulness(p):
    assert check_laws(op_bicat(p)).ok


# ---------------------------------------------------------------- invertible cells

def test_invertible_cells_of_terminal():
    assert invertible_2cells(terminal_bicat(), "i", "i") == [Inv2Cell("e", "e")]


def test_both_cells_of_delta2_are_invertible():
    assert invertible_2cells(delta2(), "i", "i") == [Inv2Cell("e", "e"), Inv2Cell("t", "t")]


def test_no_invertible_cells_between_distinct_group_elements():
    p = monoid_delooping(zmod2())
    one, s = p.id1["*"], next(f for f in p.one_cells if f != p.id1["*"])
    assert invertible_2cells(p, one, s) == []


def test_invertible_cells_need_parallel_one_cells():
    p = chaotic_bicat(2)
    with pytest.raises(TypeMismatch):
        invertible_2cells(p, "aa", "ab")


@given(presentations())
def test_inverses_are_unique_and_match_brute_force(p):
    brute = oracle.inverse_pairs(p)
    found = {}
    for f, g in itertools.product(p.one_cells, repeat=2):
        if p.one_cells[f] == p.one_cells[g]:
            for c in invertible_2cells(p, f, g):
                assert c.theta not in found
                found[c.theta] = c.theta_inv
    assert found == brute


# ---------------------------------------------------------------- adjoint equivalences

def test_terminal_has_only_the_identity_equivalence():
    assert adjoint_equivalences(terminal_bicat(), "*", "*") == [canonical_adjequiv(terminal_bicat(), "*")]
    e = adjoint_equivalences(terminal_bicat(), "*", "*")[0]
    assert (e.f, e.g, e.eta.theta, e.eps.theta) == ("i", "i", "e", "e")


def test_z2_delooping_has_two_equivalences():
    p = monoid_delooping(zmod2())
    es = adjoint_equivalences(p, "*", "*")
    assert len(es) == 2 == oracle.adjoint_equivalence_count(p, "*", "*")
    assert {e.f for e in es} == set(p.one_cells)


def test_chaotic2_has_one_equivalence_between_distinct_objects():
    p = chaotic_bicat(2)
    assert len(adjoint_equivalences(p, "a", "b")) == 1


def test_equivalence_search_respects_its_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        adjoint_equivalences(monoid_delooping(zmod2()), "*", "*", Budget(1))


@given(presentations())
def test_equivalences_match_brute_force_and_pass_triangles(p):
    for a, b in itertools.product(p.objects, repeat=2):
        es = adjoint_equivalences(p, a, b)
        assert len(es) == oracle.adjoint_equivalence_count(p, a, b)
        for e in es:
            assert triangles_hold(p, e.f, e.g, e.eta.theta, e.eps.theta)
        if a == b:
            assert canonical_adjequiv(p, a) in es


# ---------------------------------------------------------------- biinitiality

def test_terminal_object_is_biinitial():
    assert is_biinitial(terminal_bicat(), "*").ok


def test_discrete_objects_are_not_biinitial():
    r = is_biinitial(discrete_bicat(2), "a")
    assert not r.ok and r.failing == ["b"]


def test_both_chaotic_objects_are_biinitial():
    p = chaotic_bicat(2)
    assert all(is_biinitial(p, a).ok for a in p.objects)


# ---------------------------------------------------------------- strictness

@pytest.mark.parametrize("m", [bool_monoid(), zmod2(), left_zero_monoid(), cyclic_group(3)],
                         ids=["bool", "z2", "leftzero", "z3"])
def test_monoid_deloopings_are_strict(m):
    rep = check_strict(monoid_delooping(m))
    assert rep.locally_strict and rep.one_strict


def test_weak_unit_presentation_is_not_strict():
    p = weak_unit_bicat()
    rep = check_strict(p)
    assert not rep.one_strict
    assert ("left_unit", "f") in rep.violations
    assert p.lunitor["f"] != p.id2["f"]
    with pytest.raises(NotStrict):
        strict_to_two_cat(p)


def test_strict_bool_delooping_becomes_a_two_category():
    c = strict_to_two_cat(monoid_delooping(bool_monoid()))
    assert (len(c.objects), len(c.one_cells), len(c.two_cells)) == (1, 2, 2)
    assert not hasattr(c, "lassoc")


# ---------------------------------------------------------------- generators

def test_generator_tier_counts():
    assert discrete_bicat(3).size() == (3, 3, 3)
    assert monoid_delooping(zmod2()).size() == (1, 2, 2)
    assert chaotic_bicat(2).size() == (2, 4, 4)


def test_non_associative_table_is_not_a_monoid():
    mul = {("1", "1"): "1", ("1", "x"): "x", ("x", "1"): "x", ("x", "x"): "y",
           ("1", "y"): "y", ("y", "1"): "y", ("x", "y"): "x", ("y", "x"): "y", ("y", "y"): "x"}
    with pytest.raises(InvalidMonoid):
        monoid_delooping(FiniteMonoid(("1", "x", "y"), "1", mul))


def test_two_cell_delooping_requires_an_abelian_group():
    with pytest.raises(InvalidMonoid):
        two_cell_delooping(bool_monoid(), bool_monoid())


def test_product_tier_counts_multiply():
    p = product_bicat([chaotic_bicat(2), delta2()])
    assert p.size() == (2, 4, 8)
    assert check_laws(p).ok
