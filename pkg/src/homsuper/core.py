"""Hom-Lie superalgebras given by structure constants.

A Hom-Lie superalgebra is a Z2-graded space with a graded skew-symmetric
bracket and an even linear twist map satisfying the twisted (Hom-)Jacobi
identity.  This module holds the data model, the axiom validators, the
structural invariants (center, derived subalgebra, stem property), and
the quotient / direct-sum / homomorphism constructions.

Conventions used throughout the package:
  * basis indices 0..p-1 are even, p..p+q-1 are odd;
  * structure constants are stored sparsely for index pairs i <= j only,
    the remaining brackets being recovered through graded skew-symmetry
    (validators tolerate and flag explicitly injected i > j entries);
  * all values are immutable and all operations are pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import PreconditionError
from .linalg import (Field, Matrix, Subspace, basis_vec, vec_add, vec_is_zero,
                     vec_scale, vec_sub, zero_vec)

EVEN, ODD = 0, 1


def koszul_sign(field: Field, pa: int, pb: int):
    """(-1)^{pa * pb} as a field scalar."""
    return field.neg(field.one) if pa == ODD and pb == ODD else field.one


@dataclass(frozen=True)
class SuperSpace:
    """A Z2-graded coordinate space of graded dimension (even_dim | odd_dim)."""

    even_dim: int
    odd_dim: int
    basis_names: Optional[tuple] = None

    def __post_init__(self):
        if self.even_dim < 0 or self.odd_dim < 0:
            raise ValueError("negative dimension")
        if self.basis_names is not None:
            names = tuple(self.basis_names)
            if len(names) != self.dim:
                raise ValueError("basis_names length does not match dimension")
            object.__setattr__(self, "basis_names", names)

    @property
    def dim(self) -> int:
        return self.even_dim + self.odd_dim

    @property
    def dims(self) -> tuple:
        return (self.even_dim, self.odd_dim)

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range")
        return EVEN if i < self.even_dim else ODD

    def name(self, i: int) -> str:
        if self.basis_names is not None:
            return self.basis_names[i]
        return f"e{i}" if i < self.even_dim else f"f{i - self.even_dim}"


def _check_even_matrix(space_rows: SuperSpace, space_cols: SuperSpace, m: Matrix):
    if (m.nrows, m.ncols) != (space_rows.dim, space_cols.dim):
        raise ValueError("matrix shape does not match the graded spaces")
    for i in range(m.nrows):
        for j in range(m.ncols):
            if space_rows.parity(i) != space_cols.parity(j) and m[i, j] != 0:
                raise ValueError(
                    f"map is not even: nonzero entry at ({i}, {j}) crosses parity")


@dataclass(frozen=True)
class HomLieSuperalgebra:
    """Structure constants plus an even twist matrix.

    brackets maps (i, j) -> {k: scalar}, meaning [b_i, b_j] = sum_k c b_k.
    Canonical storage keeps i <= j; entries with i > j may be injected for
    validator testing and are then treated as stored values.
    """

    space: SuperSpace
    brackets: dict
    twist: Matrix

    def __post_init__(self):
        f = self.twist.field
        d = self.space.dim
        if (self.twist.nrows, self.twist.ncols) != (d, d):
            raise ValueError("twist shape does not match the space")
        _check_even_matrix(self.space, self.space, self.twist)
        norm = {}
        for (i, j), cell in self.brackets.items():
            if not (0 <= i < d and 0 <= j < d):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            clean = {}
            for k, v in cell.items():
                if not 0 <= k < d:
                    raise ValueError(f"bracket result index {k} out of range")
                cv = f.of(v)
                if cv != 0:
                    clean[k] = cv
            if clean:
                norm[(i, j)] = clean
        object.__setattr__(self, "brackets", norm)

    @property
    def field(self) -> Field:
        return self.twist.field

    @property
    def dim(self) -> int:
        return self.space.dim

    def _cell(self, i: int, j: int) -> dict:
        """Structure constants of [b_i, b_j]; i > j cells derive by skew
        unless explicitly stored."""
        if (i, j) in self.brackets:
            return self.brackets[(i, j)]
        if i > j and (j, i) in self.brackets:
            f = self.field
            s = f.neg(koszul_sign(f, self.space.parity(i), self.space.parity(j)))
            return {k: f.mul(s, v) for k, v in self.brackets[(j, i)].items()}
        return {}

    def basis_bracket(self, i: int, j: int) -> tuple:
        out = [self.field.zero] * self.dim
        for k, v in self._cell(i, j).items():
            out[k] = v
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Bilinear extension of the structure constants to whole vectors."""
        f = self.field
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("vector length does not match the algebra dimension")
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cell = self._cell(i, j)
                if not cell:
                    continue
                c = f.mul(xi, yj)
                for k, v in cell.items():
                    out[k] = f.add(out[k], f.mul(c, v))
        return tuple(out)

    def theta(self, v: Sequence) -> tuple:
        return self.twist.matvec(v)


# ---------------------------------------------------------------------------
# validation reports

@dataclass(frozen=True)
class Failure:
    axiom: str
    indices: tuple
    lhs: tuple
    rhs: tuple


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed


def check_parity(g: HomLieSuperalgebra) -> ValidationReport:
    """Every stored constant must respect parity additivity."""
    f = g.field
    fails = []
    for (i, j) in sorted(g.brackets):
        want = (g.space.parity(i) + g.space.parity(j)) % 2
        for k in sorted(g.brackets[(i, j)]):
            if g.space.parity(k) != want:
                fails.append(Failure("parity", (i, j, k),
                                     (g.brackets[(i, j)][k],), (f.zero,)))
    return ValidationReport(tuple(fails))


def check_graded_skew(g: HomLieSuperalgebra) -> ValidationReport:
    """[b_i, b_j] = -(-1)^{|i||j|} [b_j, b_i] on all pairs, derived entries
    included; even diagonal brackets are forced to vanish."""
    f = g.field
    d = g.dim
    zero = zero_vec(f, d)
    fails = []
    for i in range(d):
        for j in range(i + 1):
            if i == j:
                if g.space.parity(i) == EVEN:
                    v = g.basis_bracket(i, i)
                    if not vec_is_zero(v):
                        fails.append(Failure("graded-skew", (i, i), v, zero))
                continue
            lhs = g.basis_bracket(i, j)
            s = f.neg(koszul_sign(f, g.space.parity(i), g.space.parity(j)))
            rhs = vec_scale(f, s, g.basis_bracket(j, i))
            if lhs != rhs:
                fails.append(Failure("graded-skew", (i, j), lhs, rhs))
    return ValidationReport(tuple(fails))


def check_hom_jacobi(g: HomLieSuperalgebra) -> ValidationReport:
    """Twisted Jacobi identity on all ordered basis triples i <= j <= k
    (sufficient given trilinearity and graded skew-symmetry)."""
    f = g.field
    d = g.dim
    zero = zero_vec(f, d)
    theta_col = [g.twist.col(i) for i in range(d)]
    e = [basis_vec(f, d, i) for i in range(d)]
    fails = []
    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                pi, pj, pk = (g.space.parity(t) for t in (i, j, k))
                total = zero
                for (a, b, c), sgn in (((i, j, k), koszul_sign(f, pi, pk)),
                                       ((k, i, j), koszul_sign(f, pk, pj)),
                                       ((j, k, i), koszul_sign(f, pj, pi))):
                    term = g.bracket(theta_col[a], g.bracket(e[b], e[c]))
                    total = vec_add(f, total, vec_scale(f, sgn, term))
                if not vec_is_zero(total):
                    fails.append(Failure("hom-jacobi", (i, j, k), total, zero))
    return ValidationReport(tuple(fails))


def check_multiplicative(g: HomLieSuperalgebra) -> ValidationReport:
    """theta([b_i, b_j]) = [theta(b_i), theta(b_j)] on all pairs i <= j."""
    f = g.field
    d = g.dim
    fails = []
    for i in range(d):
        for j in range(i, d):
            lhs = g.theta(g.basis_bracket(i, j))
            rhs = g.bracket(g.twist.col(i), g.twist.col(j))
            if lhs != rhs:
                fails.append(Failure("multiplicative", (i, j), lhs, rhs))
    return ValidationReport(tuple(fails))


def check_regular(g: HomLieSuperalgebra) -> bool:
    """True when the twist matrix is invertible."""
    return g.twist.is_invertible()


def check_axioms(g: HomLieSuperalgebra) -> ValidationReport:
    """Parity, graded skew-symmetry, and the twisted Jacobi identity.

    Multiplicativity is reported separately (see check_multiplicative): it
    is an extra property of the twist, not part of the defining axioms.
    """
    fails = (check_parity(g).failures + check_graded_skew(g).failures
             + check_hom_jacobi(g).failures)
    return ValidationReport(fails)


def is_valid(g: HomLieSuperalgebra) -> bool:
    return check_axioms(g).passed


# ---------------------------------------------------------------------------
# graded subspaces

@dataclass(frozen=True)
class GradedSubspace:
    """A parity-homogeneous subspace, stored as its even and odd parts.

    The even part lives in the even coordinate block (ambient even_dim),
    the odd part in the odd block; both bases are in RREF.
    """

    even: Subspace
    odd: Subspace

    @staticmethod
    def zero(field: Field, space: SuperSpace) -> "GradedSubspace":
        return GradedSubspace(Subspace.zero(field, space.even_dim),
                              Subspace.zero(field, space.odd_dim))

    @staticmethod
    def full(field: Field, space: SuperSpace) -> "GradedSubspace":
        return GradedSubspace(Subspace.full(field, space.even_dim),
                              Subspace.full(field, space.odd_dim))

    @staticmethod
    def from_vectors(field: Field, space: SuperSpace, vectors: Sequence[Sequence]) -> "GradedSubspace":
        """Build from parity-homogeneous full-space vectors."""
        p, q = space.dims
        evens, odds = [], []
        for v in vectors:
            v = tuple(field.of(x) for x in v)
            ve, vo = v[:p], v[p:]
            if vec_is_zero(vo):
                evens.append(ve)
            elif vec_is_zero(ve):
                odds.append(vo)
            else:
                raise ValueError("spanning vector is not parity-homogeneous")
        return GradedSubspace(Subspace.from_vectors(field, p, evens),
                              Subspace.from_vectors(field, q, odds))

    @staticmethod
    def from_subspace(space: SuperSpace, sub: Subspace) -> "GradedSubspace":
        """Split a full-space subspace into parity parts; fails when the
        subspace is not graded."""
        f = sub.field
        p, q = space.dims
        even_block = Subspace.from_vectors(f, space.dim,
                                           [basis_vec(f, space.dim, i) for i in range(p)])
        odd_block = Subspace.from_vectors(f, space.dim,
                                          [basis_vec(f, space.dim, p + i) for i in range(q)])
        e_full = sub.intersect(even_block)
        o_full = sub.intersect(odd_block)
        if e_full.dim + o_full.dim != sub.dim:
            raise ValueError("subspace is not graded")
        evens = [row[:p] for row in e_full.basis_rows()]
        odds = [row[p:] for row in o_full.basis_rows()]
        return GradedSubspace(Subspace.from_vectors(f, p, evens),
                              Subspace.from_vectors(f, q, odds))

    @property
    def field(self) -> Field:
        return self.even.field

    @property
    def dims(self) -> tuple:
        return (self.even.dim, self.odd.dim)

    @property
    def dim(self) -> int:
        return self.even.dim + self.odd.dim

    @property
    def ambient_dims(self) -> tuple:
        return (self.even.ambient_dim, self.odd.ambient_dim)

    def full_basis_vectors(self) -> list:
        """Embedded spanning vectors, even rows first then odd rows."""
        f = self.field
        p, q = self.ambient_dims
        out = [row + zero_vec(f, q) for row in self.even.basis_rows()]
        out += [zero_vec(f, p) + row for row in self.odd.basis_rows()]
        return out

    def to_subspace(self) -> Subspace:
        p, q = self.ambient_dims
        return Subspace.from_vectors(self.field, p + q, self.full_basis_vectors())

    def contains_vector(self, v: Sequence) -> bool:
        p, q = self.ambient_dims
        return self.even.contains_vector(v[:p]) and self.odd.contains_vector(v[p:])

    def contains(self, other: "GradedSubspace") -> bool:
        return self.even.contains(other.even) and self.odd.contains(other.odd)

    def __add__(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace(self.even + other.even, self.odd + other.odd)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        return GradedSubspace(self.even.intersect(other.even),
                              self.odd.intersect(other.odd))

    def complement_in(self, within: Optional["GradedSubspace"] = None) -> "GradedSubspace":
        """Deterministic graded complement, computed per parity block."""
        return GradedSubspace(
            self.even.complement_in(None if within is None else within.even),
            self.odd.complement_in(None if within is None else within.odd))


# ---------------------------------------------------------------------------
# even linear maps

@dataclass(frozen=True)
class EvenLinearMap:
    """A parity-preserving linear map, acting on column vectors."""

    source: SuperSpace
    target: SuperSpace
    matrix: Matrix

    def __post_init__(self):
        _check_even_matrix(self.target, self.source, self.matrix)

    @staticmethod
    def identity(field: Field, space: SuperSpace) -> "EvenLinearMap":
        return EvenLinearMap(space, space, Matrix.identity(field, space.dim))

    @property
    def field(self) -> Field:
        return self.matrix.field

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.matvec(v)

    def compose(self, other: "EvenLinearMap") -> "EvenLinearMap":
        """self after other."""
        if other.target.dims != self.source.dims:
            raise ValueError("maps do not compose")
        return EvenLinearMap(other.source, self.target, self.matrix @ other.matrix)

    def is_invertible(self) -> bool:
        return self.matrix.is_invertible()

    def inverse(self) -> "EvenLinearMap":
        return EvenLinearMap(self.target, self.source, self.matrix.inverse())


# ---------------------------------------------------------------------------
# structural invariants

def center(g: HomLieSuperalgebra) -> GradedSubspace:
    """Z(G) = {x : [x, y] = 0 for all y}, as the kernel of the stacked
    adjoint maps x -> [x, b_j]."""
    f = g.field
    d = g.dim
    rows = []
    for j in range(d):
        cols = [g.basis_bracket(i, j) for i in range(d)]
        for k in range(d):
            rows.append([cols[i][k] for i in range(d)])
    m = Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, d)
    return GradedSubspace.from_subspace(g.space, m.nullspace())


def derived(g: HomLieSuperalgebra) -> GradedSubspace:
    """Span of all brackets of basis pairs, split by parity."""
    f = g.field
    vecs = [g.basis_bracket(i, j) for i in range(g.dim) for j in range(i, g.dim)]
    sub = Subspace.from_vectors(f, g.dim, vecs)
    return GradedSubspace.from_subspace(g.space, sub)


def bracket_span(g: HomLieSuperalgebra, u: GradedSubspace, v: GradedSubspace) -> GradedSubspace:
    """Span of [u, v] over spanning vectors of the two subspaces."""
    vecs = [g.bracket(a, b)
            for a in u.full_basis_vectors() for b in v.full_basis_vectors()]
    return GradedSubspace.from_subspace(
        g.space, Subspace.from_vectors(g.field, g.dim, vecs))


def is_hom_ideal(g: HomLieSuperalgebra, k: GradedSubspace) -> bool:
    """True when k is twist-invariant and absorbs brackets with all of g."""
    if k.ambient_dims != g.space.dims:
        raise ValueError("subspace does not live in the algebra's space")
    f = g.field
    kf = k.to_subspace()
    for v in k.full_basis_vectors():
        if not kf.contains_vector(g.theta(v)):
            return False
        for j in range(g.dim):
            if not kf.contains_vector(g.bracket(v, basis_vec(f, g.dim, j))):
                return False
    return True


def is_stem(g: HomLieSuperalgebra) -> bool:
    """True when the center is contained in the derived subalgebra."""
    return derived(g).contains(center(g))


# ---------------------------------------------------------------------------
# constructions

def quotient(g: HomLieSuperalgebra, k: GradedSubspace,
             reps: Optional[GradedSubspace] = None):
    """Quotient by a Hom-ideal, with structure constants expressed over a
    deterministic graded complement of k (or the supplied one).

    Returns (quotient algebra, projection map).
    """
    if not is_hom_ideal(g, k):
        raise PreconditionError("quotient: subspace is not a Hom-ideal")
    f = g.field
    if reps is None:
        w = k.complement_in()
    else:
        w = reps
        if k.intersect(w).dim != 0 or k.dim + w.dim != g.dim \
                or w.ambient_dims != g.space.dims:
            raise PreconditionError("quotient: supplied representatives do not complement the ideal")
    k_vecs = k.full_basis_vectors()
    w_vecs = w.full_basis_vectors()
    basis = Matrix.from_columns(f, k_vecs + w_vecs)
    proj = basis.inverse().submatrix(range(k.dim, g.dim), range(g.dim))
    qspace = SuperSpace(w.even.dim, w.odd.dim)
    brackets = {}
    for a in range(len(w_vecs)):
        for b in range(a, len(w_vecs)):
            coords = proj.matvec(g.bracket(w_vecs[a], w_vecs[b]))
            cell = {t: c for t, c in enumerate(coords) if c != 0}
            if cell:
                brackets[(a, b)] = cell
    twist = Matrix.from_columns(f, [proj.matvec(g.theta(wv)) for wv in w_vecs]) \
        if w_vecs else Matrix.zero(f, 0, 0)
    qalg = HomLieSuperalgebra(qspace, brackets, twist)
    return qalg, EvenLinearMap(g.space, qspace, proj)


def direct_sum_with_embeddings(g1: HomLieSuperalgebra, g2: HomLieSuperalgebra):
    """Componentwise direct sum, re-sorted to keep even coordinates first.

    Returns (sum algebra, embedding of g1, embedding of g2).
    """
    if g1.field != g2.field:
        raise PreconditionError("direct sum requires the same scalar field")
    f = g1.field
    p1, q1 = g1.space.dims
    p2, q2 = g2.space.dims
    space = SuperSpace(p1 + p2, q1 + q2, _merged_names(g1.space, g2.space))

    def m1(i):
        return i if i < p1 else p1 + p2 + (i - p1)

    def m2(i):
        return p1 + i if i < p2 else p1 + p2 + q1 + (i - p2)

    brackets = {}
    for g, mp in ((g1, m1), (g2, m2)):
        for (i, j), cell in g.brackets.items():
            brackets[(mp(i), mp(j))] = {mp(k): v for k, v in cell.items()}
    d = space.dim
    rows = [[f.zero] * d for _ in range(d)]
    for g, mp in ((g1, m1), (g2, m2)):
        for i in range(g.dim):
            for j in range(g.dim):
                rows[mp(i)][mp(j)] = g.twist[i, j]
    alg = HomLieSuperalgebra(space, brackets,
                             Matrix.from_rows(f, rows) if rows else Matrix.zero(f, 0, 0))
    cols1 = [basis_vec(f, d, m1(i)) for i in range(g1.dim)]
    cols2 = [basis_vec(f, d, m2(i)) for i in range(g2.dim)]
    emb1 = EvenLinearMap(g1.space, space,
                         Matrix.from_columns(f, cols1) if cols1 else Matrix.zero(f, d, 0))
    emb2 = EvenLinearMap(g2.space, space,
                         Matrix.from_columns(f, cols2) if cols2 else Matrix.zero(f, d, 0))
    return alg, emb1, emb2


def _merged_names(s1: SuperSpace, s2: SuperSpace):
    if s1.basis_names is None or s2.basis_names is None:
        return None
    return tuple(s1.basis_names[:s1.even_dim]) + tuple(s2.basis_names[:s2.even_dim]) \
        + tuple(s1.basis_names[s1.even_dim:]) + tuple(s2.basis_names[s2.even_dim:])


def direct_sum(g1: HomLieSuperalgebra, g2: HomLieSuperalgebra) -> HomLieSuperalgebra:
    return direct_sum_with_embeddings(g1, g2)[0]


def abelian(field: Field, even_dim: int, odd_dim: int,
            twist: Optional[Matrix] = None,
            basis_names: Optional[tuple] = None) -> HomLieSuperalgebra:
    """Trivial bracket; the twist defaults to the identity."""
    space = SuperSpace(even_dim, odd_dim, basis_names)
    if twist is None:
        twist = Matrix.identity(field, space.dim)
    return HomLieSuperalgebra(space, {}, twist)


def subalgebra_on(g: HomLieSuperalgebra, k: GradedSubspace):
    """Induced algebra on a bracket-closed, twist-invariant graded subspace.

    Returns (subalgebra, inclusion map).  The coordinates are the RREF
    basis of k, even vectors first.
    """
    f = g.field
    kf = k.to_subspace()
    vecs = k.full_basis_vectors()
    for v in vecs:
        if not kf.contains_vector(g.theta(v)):
            raise PreconditionError("subspace is not twist-invariant")
    for a, va in enumerate(vecs):
        for vb in vecs[a:]:
            if not kf.contains_vector(g.bracket(va, vb)):
                raise PreconditionError("subspace is not closed under the bracket")
    space = SuperSpace(k.even.dim, k.odd.dim)
    brackets = {}
    for a in range(len(vecs)):
        for b in range(a, len(vecs)):
            coords = kf.coordinates_of(g.bracket(vecs[a], vecs[b]))
            cell = {t: c for t, c in enumerate(coords) if c != 0}
            if cell:
                brackets[(a, b)] = cell
    twist = Matrix.from_columns(f, [kf.coordinates_of(g.theta(v)) for v in vecs]) \
        if vecs else Matrix.zero(f, 0, 0)
    alg = HomLieSuperalgebra(space, brackets, twist)
    incl = EvenLinearMap(space, g.space,
                         Matrix.from_columns(f, vecs) if vecs else Matrix.zero(f, g.dim, 0))
    return alg, incl


# ---------------------------------------------------------------------------
# homomorphisms

def check_homomorphism(f: EvenLinearMap, g1: HomLieSuperalgebra,
                       g2: HomLieSuperalgebra) -> ValidationReport:
    """Bracket preservation on all basis pairs plus twist intertwining
    (f . twist_1 = twist_2 . f) as matrix identities."""
    if f.source.dims != g1.space.dims or f.target.dims != g2.space.dims:
        raise ValueError("map endpoints do not match the algebras")
    fl = g1.field
    fails = []
    for i in range(g1.dim):
        for j in range(i, g1.dim):
            lhs = f(g1.basis_bracket(i, j))
            rhs = g2.bracket(f.matrix.col(i), f.matrix.col(j))
            if lhs != rhs:
                fails.append(Failure("homomorphism-bracket", (i, j), lhs, rhs))
    left = f.matrix @ g1.twist
    right = g2.twist @ f.matrix
    for i in range(g1.dim):
        if left.col(i) != right.col(i):
            fails.append(Failure("homomorphism-twist", (i,), left.col(i), right.col(i)))
    return ValidationReport(tuple(fails))


def is_isomorphism(f: EvenLinearMap, g1: HomLieSuperalgebra,
                   g2: HomLieSuperalgebra) -> bool:
    if g1.space.dims != g2.space.dims:
        return False
    return check_homomorphism(f, g1, g2).passed and f.matrix.is_invertible()
