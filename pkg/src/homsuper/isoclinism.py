"""Isoclinism of regular Hom-Lie superalgebras.

An isoclinism between two regular Hom-Lie superalgebras is a compatible
pair of isomorphisms: one between the central quotients, one between the
derived subalgebras, making the induced bracket square commute.  The
module provides witness verification, the standard constructions (adding
an abelian summand, quotienting by an ideal missing the derived
subalgebra), stem decomposition, exhaustive/restricted isomorphism
search, and the isoclinism decision procedure that routes through stem
parts.

Witness matrices are always expressed over the deterministic bases:
the greedy graded complement of the center for central quotients, and
the RREF basis of the derived subalgebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (EvenLinearMap, Failure, GradedSubspace, HomLieSuperalgebra,
                   SuperSpace, ValidationReport, bracket_span, center,
                   check_homomorphism, check_multiplicative, check_regular,
                   derived, direct_sum, direct_sum_with_embeddings,
                   is_hom_ideal, is_isomorphism, is_stem, quotient,
                   subalgebra_on)
from .errors import (PreconditionError, SearchInconclusive,
                     StemDecompositionError)
from .linalg import Field, Matrix, Subspace, basis_vec

DEFAULT_BUDGET = 200_000

#: Diagonal entries tried by the restricted rational search.
DEFAULT_SCALARS = (1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-1, 2),
                   Fraction(1, 3), Fraction(-1, 3))


@dataclass(frozen=True)
class IsoclinismWitness:
    """quotient_map acts on central quotients, derived_map on derived
    subalgebras; both must be twist-intertwining isomorphisms."""

    quotient_map: EvenLinearMap
    derived_map: EvenLinearMap


def _require_regular(g: HomLieSuperalgebra, label: str):
    if not check_multiplicative(g).passed:
        raise PreconditionError(f"{label} is not multiplicative")
    if not check_regular(g):
        raise PreconditionError(f"{label} is not regular (twist not invertible)")


def central_quotient(g: HomLieSuperalgebra):
    """Quotient by the center over the deterministic graded complement.

    Returns (quotient algebra, projection, section).  The section maps
    quotient coordinates to the chosen representatives inside g.
    """
    z = center(g)
    w = z.complement_in()
    qalg, proj = quotient(g, z, reps=w)
    reps = w.full_basis_vectors()
    sect = EvenLinearMap(qalg.space, g.space,
                         Matrix.from_columns(g.field, reps) if reps
                         else Matrix.zero(g.field, g.dim, 0))
    return qalg, proj, sect


def derived_algebra(g: HomLieSuperalgebra):
    """Induced algebra on the derived subalgebra; returns (algebra, inclusion)."""
    return subalgebra_on(g, derived(g))


def verify_isoclinism(g1: HomLieSuperalgebra, g2: HomLieSuperalgebra,
                      w: IsoclinismWitness) -> ValidationReport:
    """Check a witness: both maps are twist-intertwining isomorphisms, the
    bracket square commutes on all quotient basis pairs, and images of
    derived elements agree with their quotient images modulo the centers
    (the coset compatibility every isoclinism satisfies)."""
    _require_regular(g1, "first algebra")
    _require_regular(g2, "second algebra")
    q1, proj1, sect1 = central_quotient(g1)
    q2, proj2, sect2 = central_quotient(g2)
    d1sub, d2sub = derived(g1), derived(g2)
    d1alg, incl1 = subalgebra_on(g1, d1sub)
    d2alg, incl2 = subalgebra_on(g2, d2sub)
    fails = []
    if w.quotient_map.source.dims != q1.space.dims \
            or w.quotient_map.target.dims != q2.space.dims:
        fails.append(Failure("quotient-map-shape",
                             (), w.quotient_map.source.dims, q1.space.dims))
    if w.derived_map.source.dims != d1alg.space.dims \
            or w.derived_map.target.dims != d2alg.space.dims:
        fails.append(Failure("derived-map-shape",
                             (), w.derived_map.source.dims, d1alg.space.dims))
    if fails:
        return ValidationReport(tuple(fails))
    for name, fmap, a1, a2 in (("quotient-map", w.quotient_map, q1, q2),
                               ("derived-map", w.derived_map, d1alg, d2alg)):
        rep = check_homomorphism(fmap, a1, a2)
        fails.extend(Failure(f"{name}-{fl.axiom}", fl.indices, fl.lhs, fl.rhs)
                     for fl in rep.failures)
        if not fmap.matrix.is_invertible():
            fails.append(Failure(f"{name}-not-invertible", (), (), ()))
    if fails:
        return ValidationReport(tuple(fails))
    f = g1.field
    d1full = d1sub.to_subspace()
    # commuting square: brackets of representatives, pushed both ways.
    for i in range(q1.dim):
        for j in range(i, q1.dim):
            sig = g1.bracket(sect1.matrix.col(i), sect1.matrix.col(j))
            coords = d1full.coordinates_of(sig)
            lhs = incl2(w.derived_map(coords))
            rhs = g2.bracket(sect2(w.quotient_map(basis_vec(f, q1.dim, i))),
                             sect2(w.quotient_map(basis_vec(f, q1.dim, j))))
            if lhs != rhs:
                fails.append(Failure("square", (i, j), lhs, rhs))
    # coset compatibility on a basis of the derived subalgebra.
    for a in range(d1alg.dim):
        n = incl1.matrix.col(a)
        lhs = w.quotient_map(proj1(n))
        rhs = proj2(incl2(w.derived_map(basis_vec(f, d1alg.dim, a))))
        if lhs != rhs:
            fails.append(Failure("coset", (a,), lhs, rhs))
    return ValidationReport(tuple(fails))


# ---------------------------------------------------------------------------
# witness constructions

def witness_from_surjection(f: EvenLinearMap, g1: HomLieSuperalgebra,
                            g2: HomLieSuperalgebra) -> IsoclinismWitness:
    """Witness induced by an onto homomorphism whose kernel misses the
    derived subalgebra (an isomorphism is the bijective special case)."""
    if not check_homomorphism(f, g1, g2).passed:
        raise PreconditionError("map is not a homomorphism")
    if f.matrix.rank() != g2.dim:
        raise PreconditionError("map is not onto")
    ker = GradedSubspace.from_subspace(g1.space, f.matrix.nullspace())
    if ker.intersect(derived(g1)).dim != 0:
        raise PreconditionError("kernel meets the derived subalgebra")
    q1, proj1, sect1 = central_quotient(g1)
    q2, proj2, _ = central_quotient(g2)
    d1alg, incl1 = derived_algebra(g1)
    d2alg, _ = derived_algebra(g2)
    d2full = derived(g2).to_subspace()
    fl = g1.field
    mu_cols = [proj2(f(sect1.matrix.col(i))) for i in range(q1.dim)]
    mu = EvenLinearMap(q1.space, q2.space,
                       Matrix.from_columns(fl, mu_cols) if mu_cols
                       else Matrix.zero(fl, q2.dim, 0))
    nu_cols = [d2full.coordinates_of(f(incl1.matrix.col(a))) for a in range(d1alg.dim)]
    if any(c is None for c in nu_cols):
        raise PreconditionError("image of the derived subalgebra escapes the target's")
    nu = EvenLinearMap(d1alg.space, d2alg.space,
                       Matrix.from_columns(fl, nu_cols) if nu_cols
                       else Matrix.zero(fl, d2alg.dim, 0))
    return IsoclinismWitness(mu, nu)


def identity_witness(g: HomLieSuperalgebra) -> IsoclinismWitness:
    q, _, _ = central_quotient(g)
    d, _ = derived_algebra(g)
    return IsoclinismWitness(EvenLinearMap.identity(g.field, q.space),
                             EvenLinearMap.identity(g.field, d.space))


def compose_witnesses(w12: IsoclinismWitness, w23: IsoclinismWitness) -> IsoclinismWitness:
    return IsoclinismWitness(w23.quotient_map.compose(w12.quotient_map),
                             w23.derived_map.compose(w12.derived_map))


def invert_witness(w: IsoclinismWitness) -> IsoclinismWitness:
    return IsoclinismWitness(w.quotient_map.inverse(), w.derived_map.inverse())


def isoclinism_abelian_sum(g1: HomLieSuperalgebra,
                           g2: HomLieSuperalgebra) -> IsoclinismWitness:
    """Witness for g1 ~ g1 (+) g2 when g2 is abelian: the quotient map sends
    a coset of m to the coset of (m, 0), the derived map is the identity."""
    if g2.brackets:
        raise PreconditionError("second summand must be abelian")
    _require_regular(g1, "first summand")
    s, emb1, _ = direct_sum_with_embeddings(g1, g2)
    q1, _, sect1 = central_quotient(g1)
    qs, projs, _ = central_quotient(s)
    d1alg, incl1 = derived_algebra(g1)
    dsalg, _ = derived_algebra(s)
    dsfull = derived(s).to_subspace()
    f = g1.field
    mu_cols = [projs(emb1(sect1.matrix.col(i))) for i in range(q1.dim)]
    mu = EvenLinearMap(q1.space, qs.space,
                       Matrix.from_columns(f, mu_cols) if mu_cols
                       else Matrix.zero(f, qs.dim, 0))
    nu_cols = [dsfull.coordinates_of(emb1(incl1.matrix.col(a)))
               for a in range(d1alg.dim)]
    nu = EvenLinearMap(d1alg.space, dsalg.space,
                       Matrix.from_columns(f, nu_cols) if nu_cols
                       else Matrix.zero(f, dsalg.dim, 0))
    w = IsoclinismWitness(mu, nu)
    rep = verify_isoclinism(g1, s, w)
    if not rep.passed:
        raise RuntimeError(f"constructed abelian-sum witness failed verification: {rep.failures[:1]}")
    return w


def isoclinism_quotient(g: HomLieSuperalgebra, k: GradedSubspace,
                        strong: bool = True) -> IsoclinismWitness:
    """Witness relating g to its quotient by k.

    strong=True requires k to miss the derived subalgebra and returns a
    witness for g ~ g/k.  strong=False returns a witness for
    g/k ~ g/(k intersect derived) via the natural projection between the
    two quotients.
    """
    if not is_hom_ideal(g, k):
        raise PreconditionError("subspace is not a Hom-ideal")
    k_meet_d = k.intersect(derived(g))
    if strong:
        if k_meet_d.dim != 0:
            raise PreconditionError("ideal meets the derived subalgebra; g ~ g/k unavailable")
        qalg, proj = quotient(g, k)
        w = witness_from_surjection(proj, g, qalg)
        rep = verify_isoclinism(g, qalg, w)
        if not rep.passed:
            raise RuntimeError("constructed quotient witness failed verification")
        return w
    small, proj_small = quotient(g, k_meet_d)
    big, proj_big = quotient(g, k)
    # natural surjection small -> big: push representatives down.
    f = g.field
    z = k_meet_d.complement_in()
    reps = z.full_basis_vectors()
    cols = [proj_big(v) for v in reps]
    nat = EvenLinearMap(small.space, big.space,
                        Matrix.from_columns(f, cols) if cols
                        else Matrix.zero(f, big.dim, 0))
    w = witness_from_surjection(nat, small, big)
    rep = verify_isoclinism(small, big, w)
    if not rep.passed:
        raise RuntimeError("constructed quotient witness failed verification")
    return invert_witness(w)


# ---------------------------------------------------------------------------
# stem decomposition

@dataclass(frozen=True)
class StemDecomposition:
    """g = stem_part (+) abelian_part up to the recorded isomorphism."""

    stem_part: HomLieSuperalgebra
    abelian_part: HomLieSuperalgebra
    iso: EvenLinearMap  # g -> direct_sum(stem_part, abelian_part)


def stem_decompose(g: HomLieSuperalgebra) -> StemDecomposition:
    """Split off a maximal central abelian summand.

    Deterministic strategy: complement Z(G) ∩ G' inside Z(G) to get the
    abelian part A, then extend G' greedily to a complement of A.  Both
    pieces must be twist-invariant; failure of the greedy choice is
    reported rather than repaired.
    """
    _require_regular(g, "algebra")
    f = g.field
    z = center(g)
    dsub = derived(g)
    c = z.intersect(dsub)
    a = c.complement_in(z)
    afull = a.to_subspace()
    for v in a.full_basis_vectors():
        if not afull.contains_vector(g.theta(v)):
            raise StemDecompositionError(
                "greedy central complement is not twist-invariant")
    # extend the derived subalgebra to a complement of A.
    combined = (dsub + a).to_subspace()
    extra = []
    for i in range(g.dim):
        e = basis_vec(f, g.dim, i)
        if not combined.contains_vector(e):
            extra.append(e)
            combined = combined + Subspace.from_vectors(f, g.dim, [e])
    p0 = GradedSubspace.from_vectors(f, g.space, extra) + dsub
    p0full = p0.to_subspace()
    for v in p0.full_basis_vectors():
        if not p0full.contains_vector(g.theta(v)):
            raise StemDecompositionError(
                "greedy stem complement is not twist-invariant")
    stem_part, _ = subalgebra_on(g, p0)
    abelian_part, _ = subalgebra_on(g, a)
    s, emb_p, emb_a = direct_sum_with_embeddings(stem_part, abelian_part)
    basis = Matrix.from_columns(f, p0.full_basis_vectors() + a.full_basis_vectors())
    coords = basis.inverse()
    iso_matrix = emb_p.matrix.hstack(emb_a.matrix) @ coords
    iso = EvenLinearMap(g.space, s.space, iso_matrix)
    if not is_isomorphism(iso, g, s):
        raise RuntimeError("stem decomposition failed to produce an isomorphism")
    if not is_stem(stem_part):
        raise RuntimeError("stem decomposition produced a non-stem part")
    if abelian_part.brackets:
        raise RuntimeError("stem decomposition produced a non-abelian remainder")
    return StemDecomposition(stem_part, abelian_part, iso)


# ---------------------------------------------------------------------------
# fingerprints and isomorphism search

def derived_series_dims(g: HomLieSuperalgebra) -> tuple:
    """Graded dimensions of G', [G', G'], ... until stabilization."""
    cur = derived(g)
    dims = [cur.dims]
    while True:
        nxt = bracket_span(g, cur, cur)
        if nxt.dims == cur.dims:
            break
        dims.append(nxt.dims)
        cur = nxt
    return tuple(dims)


def fingerprint(g: HomLieSuperalgebra) -> tuple:
    """Isomorphism invariants used to prune search: graded dimensions of
    the algebra, its center, derived subalgebra, their intersection, the
    derived series, and the characteristic polynomial of the twist."""
    z = center(g)
    dsub = derived(g)
    return (g.space.dims, z.dims, dsub.dims, z.intersect(dsub).dims,
            derived_series_dims(g), g.twist.charpoly())


def iso_search(g1: HomLieSuperalgebra, g2: HomLieSuperalgebra,
               budget: int = DEFAULT_BUDGET,
               scalars: Sequence = DEFAULT_SCALARS) -> Optional[EvenLinearMap]:
    """Search for a twist-intertwining isomorphism g1 -> g2.

    Returns a verified isomorphism, or None when provably none exists.
    Over a prime field the whole space of even matrices is enumerated in
    lexicographic entry order (even block then odd block), so None is
    definitive and the returned map is the lexicographically smallest.
    Over the rationals only fingerprint pruning plus a restricted family
    of maps (parity-preserving permutations composed with diagonal
    scalings drawn from `scalars`) is tried; exhausting that family is
    not a proof of absence, so SearchInconclusive is raised instead of
    returning None.
    """
    if g1.field != g2.field:
        raise PreconditionError("isomorphism search requires the same scalar field")
    if fingerprint(g1) != fingerprint(g2):
        return None
    f = g1.field
    p, q = g1.space.dims
    count = 0
    if f.p is not None:
        for flat in itertools.product(f.elements(), repeat=p * p + q * q):
            count += 1
            if count > budget:
                raise SearchInconclusive("budget")
            m = _even_matrix_from_blocks(f, p, q,
                                         flat[:p * p], flat[p * p:])
            if not m.is_invertible():
                continue
            cand = EvenLinearMap(g1.space, g2.space, m)
            if is_isomorphism(cand, g1, g2):
                return cand
        return None
    scalars = tuple(f.of(c) for c in scalars)
    if any(c == 0 for c in scalars):
        raise ValueError("diagonal scalars must be nonzero")
    for pe in itertools.permutations(range(p)):
        for po in itertools.permutations(range(q)):
            for diag in itertools.product(scalars, repeat=p + q):
                count += 1
                if count > budget:
                    raise SearchInconclusive("budget")
                cols = []
                for i in range(p):
                    cols.append([diag[i] if r == pe[i] else f.zero for r in range(p)]
                                + [f.zero] * q)
                for i in range(q):
                    cols.append([f.zero] * p
                                + [diag[p + i] if r == po[i] else f.zero for r in range(q)])
                cand = EvenLinearMap(g1.space, g2.space, Matrix.from_columns(f, cols))
                if is_isomorphism(cand, g1, g2):
                    return cand
    raise SearchInconclusive("restricted-search-exhausted")


def _even_matrix_from_blocks(f: Field, p: int, q: int,
                             even_flat: Sequence, odd_flat: Sequence) -> Matrix:
    rows = []
    for i in range(p):
        rows.append(list(even_flat[i * p:(i + 1) * p]) + [f.zero] * q)
    for i in range(q):
        rows.append([f.zero] * p + list(odd_flat[i * q:(i + 1) * q]))
    return Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, 0)


# ---------------------------------------------------------------------------
# the decision procedure

def isoclinic_decide(g1: HomLieSuperalgebra, g2: HomLieSuperalgebra,
                     budget: int = DEFAULT_BUDGET):
    """Decide whether g1 and g2 are isoclinic by reducing to isomorphism
    of their stem parts.

    Returns (verdict, witness) with verdict one of "isoclinic",
    "not-isoclinic", "inconclusive".  The isoclinic verdict carries a
    composite witness that is re-verified before being returned; the
    negative verdict is definitive (fingerprint mismatch of the stem
    parts, or an exhausted finite-field search).
    """
    _require_regular(g1, "first algebra")
    _require_regular(g2, "second algebra")
    if g1.field != g2.field:
        raise PreconditionError("decision requires the same scalar field")
    sd1 = stem_decompose(g1)
    sd2 = stem_decompose(g2)
    if fingerprint(sd1.stem_part) != fingerprint(sd2.stem_part):
        return "not-isoclinic", None
    try:
        f_stem = iso_search(sd1.stem_part, sd2.stem_part, budget)
    except SearchInconclusive:
        return "inconclusive", None
    if f_stem is None:
        return "not-isoclinic", None
    s1 = direct_sum(sd1.stem_part, sd1.abelian_part)
    s2 = direct_sum(sd2.stem_part, sd2.abelian_part)
    chain = [
        witness_from_surjection(sd1.iso, g1, s1),
        invert_witness(isoclinism_abelian_sum(sd1.stem_part, sd1.abelian_part)),
        witness_from_surjection(f_stem, sd1.stem_part, sd2.stem_part),
        isoclinism_abelian_sum(sd2.stem_part, sd2.abelian_part),
        witness_from_surjection(sd2.iso.inverse(), s2, g2),
    ]
    total = chain[0]
    for w in chain[1:]:
        total = compose_witnesses(total, w)
    rep = verify_isoclinism(g1, g2, total)
    if not rep.passed:
        raise RuntimeError("composite isoclinism witness failed verification")
    return "isoclinic", total
