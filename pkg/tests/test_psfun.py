from __future__ import annotations

import dataclasses
import itertools

import pytest
from hypothesis import given, settings

import oracle
from strategies import tiny_presentations

from bikernel.core import (
    adjoint_equivalences, bool_monoid, chaotic_bicat, check_laws, delta2, discrete_bicat, monoid_delooping,
    product_bicat, terminal_bicat, triangles_hold, zmod2,
)
from bikernel.corpus import grow_corpus
from bikernel.display import fullsub_disp, projection_psfunctor
from bikernel.errors import EnumerationBudgetExceeded, TypeMismatch
from bikernel.fincat import is_equivalence
from bikernel.psfun import (
    BiequivalenceData, build_pseudo_bicat, check_biequivalence, check_modification,
    check_psfunctor, check_pstrans, comp_psfunctor, comp_pstrans, enumerate_psfunctors,
    enumerate_pstrans, find_biequivalence_modifications, id_psfunctor, id_pstrans,
    identity_biequivalence, image_adjequiv, induced_hom_functor, is_essentially_surjective,
    is_local_equivalence, is_weak_equivalence, pseudo_tower, tower_matches_oracle,
)
from bikernel.univalence import check_univalent


# ---------------------------------------------------------------- pseudofunctor laws

def test_identity_is_a_pseudofunctor():
    for p in (terminal_bicat(), delta2(), chaotic_bicat(2), monoid_delooping(zmod2())):
        assert check_psfunctor(id_psfunctor(p)).ok


def test_projection_of_a_display_is_a_pseudofunctor():
    d = fullsub_disp(chaotic_bicat(2), lambda x: x == "a")
    assert check_psfunctor(projection_psfunctor(d)).ok


def test_swapping_objects_without_moving_arrows_is_a_typing_error():
    c2 = chaotic_bicat(2)
    F = dataclasses.replace(id_psfunctor(c2), F0={"a": "b", "b": "a"})
    rep = check_psfunctor(F)
    assert not rep.ok and rep.laws() == {"typing"}


def test_wrong_action_on_two_cells_breaks_functoriality():
    d = delta2()
    F = dataclasses.replace(id_psfunctor(d), F2={"e": "t", "t": "t"})
    assert "id2" in check_psfunctor(F).laws()


def test_composite_of_identities_is_the_identity():
    p = delta2()
    I = id_psfunctor(p)
    assert comp_psfunctor(I, I).key() == I.key()


def test_projection_after_a_pseudofunctor_is_lawful():
    d = fullsub_disp(chaotic_bicat(2), lambda x: True)
    for F in enumerate_psfunctors(d.total, d.total):
        assert check_psfunctor(comp_psfunctor(F, projection_psfunctor(d))).ok


def test_composition_checks_the_middle_presentation():
    with pytest.raises(TypeMismatch):
        comp_psfunctor(id_psfunctor(delta2()), id_psfunctor(terminal_bicat()))


@given(tiny_presentations())
@settings(max_examples=15)
def test_composites_of_enumerated_pseudofunctors_are_lawful(p):
    fs = enumerate_psfunctors(p, p, 10**5)[:3]
    for F, G in itertools.product(fs, repeat=2):
        assert check_psfunctor(comp_psfunctor(F, G)).ok


# ---------------------------------------------------------------- transformations

def test_identity_transformations_compose_to_a_valid_one():
    F = id_psfunctor(delta2())
    t = id_pstrans(F)
    assert check_pstrans(t).ok
    assert check_pstrans(comp_pstrans(t, t)).ok


@given(tiny_presentations())
@settings(max_examples=15)
def test_composites_of_enumerated_transformations_are_lawful(p):
    I = id_psfunctor(p)
    ts = enumerate_pstrans(I, I, 10**5)[:3]
    for s, t in itertools.product(ts, repeat=2):
        assert check_pstrans(comp_pstrans(s, t)).ok


# ---------------------------------------------------------------- biequivalences

def test_identity_biequivalence_on_the_terminal_bicategory():
    rep = check_biequivalence(identity_biequivalence(terminal_bicat()))
    assert rep.ok and rep.objects_bijective


def _swap_biequivalence():
    c2 = chaotic_bicat(2)
    (S,) = [F for F in enumerate_psfunctors(c2, c2) if F.F0 == {"a": "b", "b": "a"}]
    SS, I = comp_psfunctor(S, S), id_psfunctor(c2)
    to_id, from_id = enumerate_pstrans(SS, I), enumerate_pstrans(I, SS)
    for eta, eta_i, eps, eps_i in itertools.product(to_id, from_id, to_id, from_id):
        b = find_biequivalence_modifications(S, S, eta, eta_i, eps, eps_i)
        if b is not None:
            return b
    raise AssertionError("no biequivalence data found")


def test_swap_is_a_biequivalence_of_the_chaotic_bicategory():
    rep = check_biequivalence(_swap_biequivalence())
    assert rep.ok
    # the chaotic bicategory is not univalent, so the object bijection is not decided
    assert rep.objects_bijective is None


def test_broken_modification_component_is_reported():
    p = product_bicat([chaotic_bicat(2), delta2()])
    b = identity_biequivalence(p)
    assert check_biequivalence(b).ok
    gamma = {**b.m1.gamma, "(a,*)": "(taa,t)"}
    bad = dataclasses.replace(b, m1=dataclasses.replace(b.m1, gamma=gamma))
    rep = check_biequivalence(bad)
    assert rep.failing() == ["m1"]
    assert check_modification(bad.m1).laws() == {"modification"}


def test_biequivalence_report_serialises():
    doc = check_biequivalence(identity_biequivalence(discrete_bicat(2))).to_json()
    assert doc["status"] == "pass"


# ---------------------------------------------------------------- weak equivalences

def _inclusion(src, tgt, image):
    (F,) = [F for F in enumerate_psfunctors(src, tgt) if F.F0 == image]
    return F


def test_point_into_chaotic_pair_is_a_weak_equivalence():
    F = _inclusion(discrete_bicat(1), chaotic_bicat(2), {"a": "a"})
    assert is_local_equivalence(F) and is_essentially_surjective(F)
    assert is_weak_equivalence(F)


def test_point_into_discrete_pair_misses_an_object():
    F = _inclusion(discrete_bicat(1), discrete_bicat(2), {"a": "a"})
    assert is_local_equivalence(F)
    assert not is_essentially_surjective(F) and not is_weak_equivalence(F)


def test_collapsing_delta2_is_not_locally_an_equivalence():
    (F,) = enumerate_psfunctors(delta2(), terminal_bicat())
    assert not is_local_equivalence(F)


def test_identity_induces_identity_hom_functors():
    p = monoid_delooping(bool_monoid())
    H = induced_hom_functor(id_psfunctor(p), "*", "*")
    assert is_equivalence(H)
    assert all(H.obj[f] == f for f in H.obj) and all(H.mor[t] == t for t in H.mor)


# ---------------------------------------------------------------- enumeration

@pytest.mark.parametrize("target,count", [
    (terminal_bicat(), 1), (delta2(), 2), (monoid_delooping(zmod2()), 1),
    (monoid_delooping(bool_monoid()), 1),
])
def test_pseudofunctors_out_of_the_point(target, count):
    fs = enumerate_psfunctors(terminal_bicat(), target)
    assert len(fs) == count == oracle.psfunctor_count(terminal_bicat(), target)


@pytest.mark.parametrize("src,tgt", [
    (delta2(), delta2()), (monoid_delooping(bool_monoid()), monoid_delooping(bool_monoid())),
    (chaotic_bicat(2), chaotic_bicat(2)), (discrete_bicat(2), delta2()),
])
def test_enumeration_agrees_with_brute_force(src, tgt):
    ours = sorted(F.key() for F in enumerate_psfunctors(src, tgt))
    theirs = sorted(tuple(tuple(sorted(m.items())) for m in t) for t in oracle.psfunctors(src, tgt))
    assert ours == theirs


def test_enumeration_respects_its_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_psfunctors(delta2(), delta2(), 2)


# ---------------------------------------------------------------- Pseudo(B, C)

@pytest.mark.parametrize("C", [terminal_bicat(), delta2(), monoid_delooping(zmod2()),
                               monoid_delooping(bool_monoid()), discrete_bicat(2)])
def test_pseudo_bicategory_out_of_the_point_matches_brute_force(C):
    tower = pseudo_tower(terminal_bicat(), C)
    assert tower.counts() == oracle.pseudo_tiers(terminal_bicat(), C)
    assert tower_matches_oracle(tower)
    assert check_laws(tower.bicat).ok


def test_pseudo_bicategory_on_delta2_has_eight_modifications():
    assert build_pseudo_bicat(terminal_bicat(), delta2()).size() == (2, 4, 8)


def test_pseudo_bicategory_between_two_point_sets():
    tower = pseudo_tower(discrete_bicat(2), discrete_bicat(2))
    assert tower.counts() == (4, 4, 4) == oracle.pseudo_tiers(discrete_bicat(2), discrete_bicat(2))
    assert tower_matches_oracle(tower)


def test_decoded_cells_are_lawful():
    tower = pseudo_tower(terminal_bicat(), delta2())
    assert all(check_psfunctor(F).ok for F in tower.psfunctor_of.values())
    assert all(check_pstrans(t).ok for t in tower.pstrans_of.values())
    assert all(check_modification(m).ok for m in tower.modification_of.values())


_SMALL_UNIVALENT = [m for m in grow_corpus(0, 40) if m.univalent and m.p.size()[2] <= 6]


@pytest.mark.parametrize("B", [terminal_bicat(), discrete_bicat(2)], ids=["point", "two-points"])
def test_pseudo_bicategory_into_univalent_targets_is_univalent(B):
    seen = 0
    for m in _SMALL_UNIVALENT:
        if len(B.objects) == 2 and m.p.size()[1] > 4:
            continue
        assert check_univalent(build_pseudo_bicat(B, m.p)).ok, m.name
        seen += 1
    assert seen >= 10


# ---------------------------------------------------------------- images of equivalences

@given(tiny_presentations())
@settings(max_examples=20)
def test_pseudofunctors_carry_adjoint_equivalences(p):
    for F in enumerate_psfunctors(p, p, 10**5)[:3]:
        for a, b in itertools.product(p.objects, repeat=2):
            for e in adjoint_equivalences(p, a, b)[:2]:
                img = image_adjequiv(F, e)
                assert F.tgt.one_cells[img.f] == (F.F0[a], F.F0[b])
                assert triangles_hold(F.tgt, img.f, img.g, img.eta.theta, img.eps.theta)


def test_identity_image_of_an_equivalence_is_itself_up_to_units():
    p = chaotic_bicat(2)
    e = adjoint_equivalences(p, "a", "b")[0]
    img = image_adjequiv(id_psfunctor(p), e)
    assert (img.f, img.g) == (e.f, e.g)


def test_biequivalence_data_is_a_plain_record():
    b = identity_biequivalence(terminal_bicat())
    assert isinstance(b, BiequivalenceData) and b.L.key() == b.R.key()
