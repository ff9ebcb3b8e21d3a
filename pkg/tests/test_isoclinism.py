"""Isoclinism witnesses, stem decomposition, search, and the decision procedure."""

import itertools
from fractions import Fraction

import pytest

from homsuper.core import (EvenLinearMap, GradedSubspace, HomLieSuperalgebra,
                           SuperSpace, abelian, center, check_regular, derived,
                           direct_sum, is_isomorphism, is_stem, quotient)
from homsuper.errors import PreconditionError, SearchInconclusive
from homsuper.isoclinism import (IsoclinismWitness, central_quotient,
                                 compose_witnesses, derived_algebra,
                                 fingerprint, identity_witness, invert_witness,
                                 iso_search, isoclinic_decide,
                                 isoclinism_abelian_sum, isoclinism_quotient,
                                 stem_decompose, verify_isoclinism,
                                 witness_from_surjection)
from homsuper.linalg import GF, QQ, Matrix

F3 = GF(3)


def scaled_hs_witness(algebras, mu_scale, nu_scale):
    hs = algebras["hs"]
    q, _, _ = central_quotient(hs)
    d, _ = derived_algebra(hs)
    return IsoclinismWitness(
        EvenLinearMap(q.space, q.space, Matrix.from_rows(QQ, [[mu_scale]])),
        EvenLinearMap(d.space, d.space, Matrix.from_rows(QQ, [[nu_scale]])))


# ---------------------------------------------------------------------------
# verification

def test_identity_witness_verifies(algebras, corpus_name):
    g = algebras[corpus_name]
    assert verify_isoclinism(g, g, identity_witness(g)).passed


def test_lemma_style_witness_hs_to_sum(algebras):
    hs = algebras["hs"]
    s = direct_sum(hs, algebras["a_1_0"])
    w = isoclinism_abelian_sum(hs, algebras["a_1_0"])
    rep = verify_isoclinism(hs, s, w)
    assert rep.passed


def test_incompatible_scaling_fails_the_square(algebras):
    hs = algebras["hs"]
    w = scaled_hs_witness(algebras, 2, 2)
    rep = verify_isoclinism(hs, hs, w)
    assert not rep.passed
    # nu([f,f]) = 2z while [2f, 2f] = 4z
    assert any(fl.axiom == "square" and fl.indices == (0, 0)
               for fl in rep.failures)


def test_compatible_scaling_verifies(algebras):
    hs = algebras["hs"]
    assert verify_isoclinism(hs, hs, scaled_hs_witness(algebras, 2, 4)).passed


def test_coset_compatibility_is_checked(algebras):
    # a witness whose maps are fine in isolation but disagree on cosets
    hs2 = algebras["hs2"]
    q, _, _ = central_quotient(hs2)
    d, _ = derived_algebra(hs2)
    w = IsoclinismWitness(
        EvenLinearMap(q.space, q.space, Matrix.identity(QQ, 1)),
        EvenLinearMap(d.space, d.space, Matrix.from_rows(QQ, [[2]])))
    rep = verify_isoclinism(hs2, hs2, w)
    assert not rep.passed


def test_shape_mismatch_reported_not_raised(algebras):
    hs, hs2 = algebras["hs"], algebras["hs2"]
    w = identity_witness(hs)
    rep = verify_isoclinism(hs, hs2, w)
    assert not rep.passed


def test_verification_needs_regular_inputs(algebras):
    bad = abelian(QQ, 1, 0, twist=Matrix.zero(QQ, 1, 1))
    with pytest.raises(PreconditionError):
        verify_isoclinism(bad, bad, identity_witness(algebras["a_1_0"]))


# ---------------------------------------------------------------------------
# constructions

def test_abelian_sum_witness_hs(algebras):
    w = isoclinism_abelian_sum(algebras["hs"], algebras["a_1_0"])
    assert w.quotient_map.matrix == Matrix.identity(QQ, 1)
    assert w.derived_map.matrix == Matrix.identity(QQ, 1)


def test_abelian_sum_with_zero_summand(algebras):
    w = isoclinism_abelian_sum(algebras["hs"], abelian(QQ, 0, 0))
    assert verify_isoclinism(algebras["hs"],
                             direct_sum(algebras["hs"], abelian(QQ, 0, 0)),
                             w).passed


def test_abelian_sum_of_two_abelians(algebras):
    a, b = algebras["a_1_0"], algebras["a_0_1"]
    w = isoclinism_abelian_sum(a, b)
    assert w.quotient_map.matrix.nrows == 0
    assert w.derived_map.matrix.nrows == 0


def test_abelian_sum_rejects_non_abelian_summand(algebras):
    with pytest.raises(PreconditionError):
        isoclinism_abelian_sum(algebras["hs"], algebras["hs"])


def test_quotient_witness_hs2_by_pad(algebras):
    hs2 = algebras["hs2"]
    k = GradedSubspace.from_vectors(QQ, hs2.space, [(0, 1, 0)])
    w = isoclinism_quotient(hs2, k)
    qalg, _ = quotient(hs2, k)
    assert verify_isoclinism(hs2, qalg, w).passed


def test_quotient_witness_zero_ideal(algebras, corpus_name):
    g = algebras[corpus_name]
    k = GradedSubspace.zero(g.field, g.space)
    w = isoclinism_quotient(g, k)
    qalg, _ = quotient(g, k)
    assert verify_isoclinism(g, qalg, w).passed


def test_quotient_witness_rejects_central_derived_ideal(algebras):
    hs = algebras["hs"]
    k = GradedSubspace.from_vectors(QQ, hs.space, [(1, 0)])  # span{z} = G'
    with pytest.raises(PreconditionError):
        isoclinism_quotient(hs, k)


def test_weak_quotient_witness(algebras):
    # g/K ~ g/(K meet G') through the natural projection
    hs2 = algebras["hs2"]
    k = center(hs2)  # span{z, c}; meets G' in span{z}
    w = isoclinism_quotient(hs2, k, strong=False)
    big, _ = quotient(hs2, k)
    small, _ = quotient(hs2, k.intersect(derived(hs2)))
    assert verify_isoclinism(big, small, w).passed


# ---------------------------------------------------------------------------
# stem decomposition

def test_stem_decompose_hs2(algebras):
    sd = stem_decompose(algebras["hs2"])
    assert sd.stem_part.space.dims == (1, 1)
    assert sd.abelian_part.space.dims == (1, 0)
    assert iso_search(sd.stem_part, algebras["hs"]) is not None


def test_stem_decompose_already_stem(algebras):
    sd = stem_decompose(algebras["hs"])
    assert sd.stem_part.space.dims == (1, 1)
    assert sd.abelian_part.space.dims == (0, 0)


def test_stem_decompose_abelian(algebras):
    sd = stem_decompose(algebras["a_1_1"])
    assert sd.stem_part.space.dims == (0, 0)
    assert sd.abelian_part.space.dims == (1, 1)


def test_stem_decompose_dimensions_and_centrality(algebras, corpus_name):
    g = algebras[corpus_name]
    sd = stem_decompose(g)
    p, q = sd.stem_part.space.dims, sd.abelian_part.space.dims
    assert (p[0] + q[0], p[1] + q[1]) == g.space.dims
    assert is_stem(sd.stem_part)
    assert not sd.abelian_part.brackets
    assert is_isomorphism(sd.iso, g,
                          direct_sum(sd.stem_part, sd.abelian_part))
    # the abelian summand sits inside the center of g
    zfull = center(g).to_subspace()
    inv = sd.iso.inverse()
    s = direct_sum(sd.stem_part, sd.abelian_part)
    f = g.field
    for j in range(sd.abelian_part.dim):
        idx = sd.stem_part.space.even_dim + j if j < sd.abelian_part.space.even_dim \
            else sd.stem_part.dim + j
        col = [f.zero] * s.dim
        # abelian block indices inside the sum
    for v in _abelian_block_vectors(sd, s):
        assert zfull.contains_vector(inv(v))


def _abelian_block_vectors(sd, s):
    from homsuper.core import direct_sum_with_embeddings
    _, _, emb = direct_sum_with_embeddings(sd.stem_part, sd.abelian_part)
    return [emb.matrix.col(j) for j in range(sd.abelian_part.dim)]


# ---------------------------------------------------------------------------
# isomorphism search

def test_search_finds_identity_first(algebras):
    hs = algebras["hs"]
    found = iso_search(hs, hs)
    assert found.matrix == Matrix.identity(QQ, 2)


def test_search_dimension_mismatch_is_definitive(algebras):
    assert iso_search(algebras["hs"], algebras["hs2"]) is None


def test_search_finds_diagonal_rescaling(algebras):
    # same constants with f scaled by 3 in the file: [f, f] = 9z
    t2 = algebras["t2"]
    scaled = HomLieSuperalgebra(t2.space, {(1, 1): {0: 9}}, t2.twist)
    found = iso_search(t2, scaled)
    assert found is not None
    assert is_isomorphism(found, t2, scaled)
    assert found.matrix == Matrix.from_rows(QQ, [[1, 0], [0, Fraction(1, 3)]])


def test_search_budget_zero_is_inconclusive(algebras):
    with pytest.raises(SearchInconclusive):
        iso_search(algebras["t2"], algebras["t2"], budget=0)


def test_search_over_f3_is_sound_and_complete():
    # [f,f] = e with twists diag(1,1) vs diag(1,2): provably non-isomorphic
    def alg(b):
        return HomLieSuperalgebra(SuperSpace(1, 1), {(1, 1): {0: 1}},
                                  Matrix.from_rows(F3, [[1, 0], [0, b]]))
    assert iso_search(alg(1), alg(2)) is None
    # [f,f] = e vs [f,f] = 2e with equal twists: isomorphic
    g1 = alg(1)
    g2 = HomLieSuperalgebra(g1.space, {(1, 1): {0: 2}}, g1.twist)
    found = iso_search(g1, g2)
    assert found is not None and is_isomorphism(found, g1, g2)


def test_search_is_deterministic(algebras):
    g = algebras["hs_f3"]
    a = iso_search(g, g)
    b = iso_search(g, g)
    assert a.matrix == b.matrix


def test_search_requires_matching_fields(algebras):
    with pytest.raises(PreconditionError):
        iso_search(algebras["hs"], algebras["hs_f3"])


def test_found_isomorphisms_transport_regularity(algebras):
    t2 = algebras["t2"]
    scaled = HomLieSuperalgebra(t2.space, {(1, 1): {0: 9}}, t2.twist)
    found = iso_search(t2, scaled)
    assert check_regular(t2) and check_regular(scaled)
    assert found is not None


# ---------------------------------------------------------------------------
# witnesses form an equivalence relation (composition / inversion)

def test_witness_inversion_preserves_verification(algebras):
    hs = algebras["hs"]
    s = direct_sum(hs, algebras["a_1_0"])
    w = isoclinism_abelian_sum(hs, algebras["a_1_0"])
    assert verify_isoclinism(s, hs, invert_witness(w)).passed


def test_witness_composition_preserves_verification(algebras):
    hs = algebras["hs"]
    mid = direct_sum(hs, algebras["a_1_0"])
    far = direct_sum(mid, algebras["a_0_1"])
    w1 = isoclinism_abelian_sum(hs, algebras["a_1_0"])
    w2 = isoclinism_abelian_sum(mid, algebras["a_0_1"])
    total = compose_witnesses(w1, w2)
    assert verify_isoclinism(hs, far, total).passed


def test_witness_from_isomorphism(algebras):
    t2 = algebras["t2"]
    scaled = HomLieSuperalgebra(t2.space, {(1, 1): {0: 9}}, t2.twist)
    f = iso_search(t2, scaled)
    w = witness_from_surjection(f, t2, scaled)
    assert verify_isoclinism(t2, scaled, w).passed


# ---------------------------------------------------------------------------
# decision procedure

def test_decide_hs_hs2(algebras):
    verdict, w = isoclinic_decide(algebras["hs"], algebras["hs2"])
    assert verdict == "isoclinic"
    assert verify_isoclinism(algebras["hs"], algebras["hs2"], w).passed


def test_decide_different_stems(algebras):
    verdict, w = isoclinic_decide(algebras["hs"], algebras["a_1_1"])
    assert verdict == "not-isoclinic" and w is None


def test_decide_reflexive(algebras, corpus_name):
    g = algebras[corpus_name]
    if g.field.p is None and g.dim > 3:
        pytest.skip("restricted rational search is too small for this size")
    verdict, w = isoclinic_decide(g, g)
    assert verdict == "isoclinic"
    assert verify_isoclinism(g, g, w).passed


def test_decide_budget_exhaustion_is_inconclusive(algebras):
    verdict, w = isoclinic_decide(algebras["hs"], algebras["hs"], budget=0)
    assert verdict == "inconclusive" and w is None


def test_decide_requires_matching_fields(algebras):
    with pytest.raises(PreconditionError):
        isoclinic_decide(algebras["hs"], algebras["hs_f3"])


# ---------------------------------------------------------------------------
# fingerprints

def test_fingerprint_separates_corpus(algebras):
    assert fingerprint(algebras["hs"]) != fingerprint(algebras["hs2"])
    assert fingerprint(algebras["hs"]) != fingerprint(algebras["t2"])
    assert fingerprint(algebras["hs"]) == fingerprint(algebras["hs"])


def test_fingerprint_includes_derived_series(algebras):
    fp = fingerprint(algebras["g22"])
    series = fp[4]
    assert series[0] == (1, 2)
