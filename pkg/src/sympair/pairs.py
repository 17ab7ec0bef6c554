"""Symmetric pairs (g, theta): eigenspace decomposition, invariant form,
cone membership, group-level symmetrization, and descendants.

A pair couples a Lie algebra with an involutive automorphism theta.  The
+1 eigenspace is written h, the -1 eigenspace s (the adjoint module of the
fixed subgroup).  The canonical invariant form is the trace form of the
defining realization: unlike the Killing form it stays non-degenerate on
the center, which the restriction arguments need.

Built-in families:

  diagonal       g = gl_n + gl_n, theta swaps the factors, h is the
                 diagonal copy, s = {(X, -X)}.
  quadratic_ext  g = gl_n over Q(sqrt(d)) viewed over Q, theta is the
                 Galois conjugation, h = gl_n(Q), s = sqrt(d) gl_n(Q).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import InvariantViolation, PreconditionError, ShapeError
from .liealg import LieAlgebra, build_gl, build_product, build_quadratic_extension
from .linalg import (
    Matrix,
    Vector,
    coords_in_basis,
    echelon_subspace,
    inverse,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    is_unipotent_matrix,
    is_zero_vector,
    kernel_basis,
    minimal_polynomial,
    rank,
    solve_many,
)
from .scalars import HALF, ONE, ZERO, QuadExt, rat

FAMILY_DIAGONAL = "diagonal"
FAMILY_QUADRATIC_EXT = "quadratic_ext"
FAMILY_CUSTOM = "custom"


class SymmetricPair:
    """A Lie algebra with an involution, its eigenspace bases, and the form B.

    The constructor recomputes the eigenspace bases canonically and checks
    the structural invariants: theta is an involutive automorphism, the
    eigenspaces fill the algebra, B is symmetric, non-degenerate,
    theta-invariant, and h is B-orthogonal to s.
    """

    def __init__(self, algebra: LieAlgebra, theta: Matrix, form: Matrix,
                 family: str = FAMILY_CUSTOM, inner_n: Optional[int] = None,
                 disc: Optional[Fraction] = None):
        d = algebra.dim
        if theta.nrows != d or theta.ncols != d:
            raise ShapeError("theta must be %dx%d" % (d, d))
        if form.nrows != d or form.ncols != d:
            raise ShapeError("form must be %dx%d" % (d, d))
        self.algebra = algebra
        self.theta = theta
        self.form = form
        self.family = family
        self.inner_n = inner_n
        self.disc = disc

        ident = Matrix.identity(d)
        if theta @ theta != ident:
            raise ShapeError("theta is not an involution")
        self._check_automorphism()

        self.h_basis = kernel_basis(theta - ident)
        self.gsigma_basis = kernel_basis(theta + ident)
        if len(self.h_basis) + len(self.gsigma_basis) != d:
            raise ShapeError("theta eigenspaces do not fill the algebra")

        if form.transpose() != form:
            raise ShapeError("form is not symmetric")
        if rank(form) != d:
            raise ShapeError("form is degenerate")
        if theta.transpose() @ form @ theta != form:
            raise ShapeError("form is not theta-invariant")
        self._check_orthogonality()

    # -- invariant checks ---------------------------------------------------

    def _check_automorphism(self):
        g, th = self.algebra, self.theta
        tcols = [th.column(j) for j in range(g.dim)]
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = th.matvec(g.table[i][j])
                rhs = g.bracket(tcols[i], tcols[j])
                if lhs != rhs:
                    raise ShapeError("theta is not a Lie algebra automorphism at (%d, %d)" % (i, j))

    def _check_orthogonality(self):
        hb = Matrix(self.h_basis) if self.h_basis else None
        sb = Matrix(self.gsigma_basis) if self.gsigma_basis else None
        if hb is None or sb is None:
            return
        if not (hb @ self.form @ sb.transpose()).is_zero():
            raise ShapeError("h is not B-orthogonal to the -1 eigenspace")

    def check_grading(self):
        """[h,h] in h, [h,s] in s, [s,s] in h -- implied by the automorphism
        property, re-checked directly for tests."""
        for basis_a, basis_b, sign in ((self.h_basis, self.h_basis, -1),
                                       (self.h_basis, self.gsigma_basis, 1),
                                       (self.gsigma_basis, self.gsigma_basis, -1)):
            for a in basis_a:
                for b in basis_b:
                    v = self.algebra.bracket(a, b)
                    tv = self.theta.matvec(v)
                    bad = [p + sign * q for p, q in zip(tv, v)]
                    if not is_zero_vector(bad):
                        raise ShapeError("grading violated")

    # -- convenience --------------------------------------------------------

    @property
    def dim_g(self) -> int:
        return self.algebra.dim

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)

    @property
    def dim_gsigma(self) -> int:
        return len(self.gsigma_basis)

    def theta_apply(self, v: Vector) -> Vector:
        return self.theta.matvec(v)

    def in_h(self, v: Vector) -> bool:
        return self.theta.matvec(v) == list(v)

    def in_gsigma(self, v: Vector) -> bool:
        return self.theta.matvec(v) == [-a for a in v]

    def project_h(self, v: Vector) -> Vector:
        return [(a + b) * HALF for a, b in zip(v, self.theta.matvec(v))]

    def project_gsigma(self, v: Vector) -> Vector:
        return [(a - b) * HALF for a, b in zip(v, self.theta.matvec(v))]

    def form_value(self, x: Vector, y: Vector) -> Fraction:
        return self.algebra.form_value(self.form, x, y)

    def centralizer_in(self, x: Vector, subspace: Sequence[Vector]) -> List[Vector]:
        """Echelon basis of {v in span(subspace) : [x, v] = 0}, in g coordinates."""
        if not subspace:
            return []
        sub = Matrix.from_columns(list(subspace))
        restricted = self.algebra.ad(x) @ sub
        ker = kernel_basis(restricted)
        return echelon_subspace([sub.matvec(k) for k in ker])

    def invariants_in_gsigma(self) -> List[Vector]:
        """(g^sigma)^h: joint kernel of ad(h-basis) restricted to the -1 space."""
        if not self.gsigma_basis:
            return []
        sub = Matrix.from_columns(self.gsigma_basis)
        blocks = []
        for hb in self.h_basis:
            m = self.algebra.ad(hb) @ sub
            blocks.extend(m.rows)
        if not blocks:
            return list(self.gsigma_basis)
        ker = kernel_basis(Matrix(blocks))
        return echelon_subspace([sub.matvec(k) for k in ker])


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------

def make_diagonal_pair(n: int) -> SymmetricPair:
    """(gl_n + gl_n, swap): h is the diagonal, s = {(X, -X)}, B the trace form."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    g = build_product(build_gl(n), build_gl(n))
    d = g.dim
    half = d // 2
    rows = [[ZERO] * d for _ in range(d)]
    for i in range(half):
        rows[i][half + i] = ONE
        rows[half + i][i] = ONE
    theta = Matrix(rows)
    return SymmetricPair(g, theta, g.trace_form(), family=FAMILY_DIAGONAL, inner_n=n)


def make_quadratic_ext_pair(n: int, disc) -> SymmetricPair:
    """(gl_n over Q(sqrt(disc)) viewed over Q, Galois conjugation)."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    g = build_quadratic_extension(build_gl(n), disc)
    return SymmetricPair(g, g.conjugation, g.trace_form(),
                         family=FAMILY_QUADRATIC_EXT, inner_n=n, disc=rat(disc))


# ---------------------------------------------------------------------------
# Group elements and symmetrization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupElement:
    """Invertible matrix in the realized group of a built-in family.

    diagonal family: a 2n x 2n rational block-diagonal matrix (the two
    GL_n components).  quadratic_ext family: an n x n matrix over
    Q(sqrt(d)).  Custom pairs have no canonical group realization, so no
    group operations.
    """

    pair: SymmetricPair
    matrix: Matrix

    def __post_init__(self):
        fam = self.pair.family
        if fam == FAMILY_DIAGONAL:
            n = self.pair.inner_n
            if self.matrix.nrows != 2 * n or self.matrix.ncols != 2 * n:
                raise ShapeError("diagonal-family group element must be %dx%d" % (2 * n, 2 * n))
            for i in range(2 * n):
                for j in range(2 * n):
                    if (i < n) != (j < n) and self.matrix.rows[i][j]:
                        raise ShapeError("group element must be block diagonal")
        elif fam == FAMILY_QUADRATIC_EXT:
            n = self.pair.inner_n
            if self.matrix.nrows != n or self.matrix.ncols != n:
                raise ShapeError("group element must be %dx%d over the extension" % (n, n))
        else:
            raise PreconditionError("group operations are only available for built-in families")
        if rank(self.matrix) != self.matrix.nrows:
            raise ShapeError("group element must be invertible")

    @staticmethod
    def diagonal(pair: SymmetricPair, left: Matrix, right: Matrix) -> "GroupElement":
        n = pair.inner_n
        rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = left.rows[i][j]
                rows[n + i][n + j] = right.rows[i][j]
        return GroupElement(pair, Matrix(rows))

    def blocks(self) -> Tuple[Matrix, Matrix]:
        n = self.pair.inner_n
        left = Matrix([r[:n] for r in self.matrix.rows[:n]])
        right = Matrix([r[n:] for r in self.matrix.rows[n:]])
        return left, right


def group_theta(pair: SymmetricPair, m: Matrix) -> Matrix:
    if pair.family == FAMILY_DIAGONAL:
        n = pair.inner_n
        rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                rows[i][j] = m.rows[n + i][n + j]
                rows[n + i][n + j] = m.rows[i][j]
        return Matrix(rows)
    if pair.family == FAMILY_QUADRATIC_EXT:
        return Matrix([[e.conj() if isinstance(e, QuadExt) else e for e in row] for row in m.rows])
    raise PreconditionError("group operations are only available for built-in families")


def group_sigma(pair: SymmetricPair, m: Matrix) -> Matrix:
    """The antiinvolution sigma(g) = theta(g^{-1})."""
    return group_theta(pair, inverse(m))


def symmetrize(pair: SymmetricPair, g: GroupElement) -> GroupElement:
    """s(g) = g . sigma(g), landing in the sigma-fixed set of the group."""
    return GroupElement(pair, g.matrix @ group_sigma(pair, g.matrix))


def is_normal(pair: SymmetricPair, g: GroupElement) -> bool:
    """sigma(g) g = g sigma(g)."""
    sg = group_sigma(pair, g.matrix)
    return sg @ g.matrix == g.matrix @ sg


def group_to_algebra_vector(pair: SymmetricPair, m: Matrix) -> Vector:
    """Coordinates of a group-realization matrix inside the Lie algebra.

    Valid because both built-in families realize gl-type algebras whose
    realization is onto the relevant matrix space.
    """
    n = pair.inner_n
    if pair.family == FAMILY_DIAGONAL:
        coords = []
        for i in range(n):
            for j in range(n):
                coords.append(m.rows[i][j])
        for i in range(n):
            for j in range(n):
                coords.append(m.rows[n + i][n + j])
        return coords
    if pair.family == FAMILY_QUADRATIC_EXT:
        plain, wpart = [], []
        for i in range(n):
            for j in range(n):
                e = m.rows[i][j]
                if isinstance(e, QuadExt):
                    plain.append(e.a)
                    wpart.append(e.b)
                else:
                    plain.append(rat(e))
                    wpart.append(ZERO)
        return plain + wpart
    raise PreconditionError("group operations are only available for built-in families")


def rational_realization(pair: SymmetricPair, g: GroupElement) -> Matrix:
    """The group element as a rational matrix in the algebra's realization."""
    if pair.family == FAMILY_DIAGONAL:
        return g.matrix
    n = pair.inner_n
    disc = pair.disc
    rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            e = g.matrix.rows[i][j]
            a, b = (e.a, e.b) if isinstance(e, QuadExt) else (rat(e), ZERO)
            rows[i][j] = a
            rows[n + i][n + j] = a
            rows[i][n + j] = disc * b
            rows[n + i][j] = b
    return Matrix(rows)


# ---------------------------------------------------------------------------
# Jordan-type flags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanFlags:
    semisimple: bool
    nilpotent: bool
    unipotent: bool


def jordan_flags(pair: SymmetricPair, x) -> JordanFlags:
    """Semisimple / nilpotent / unipotent flags via minimal-polynomial tests.

    Accepts an algebra coordinate vector or a GroupElement; both are
    checked through the rational matrix realization.
    """
    if isinstance(x, GroupElement):
        m = rational_realization(pair, x)
    else:
        m = pair.algebra.realize(x)
    return JordanFlags(semisimple=is_semisimple_matrix(m),
                       nilpotent=is_nilpotent_matrix(m),
                       unipotent=is_unipotent_matrix(m))


# ---------------------------------------------------------------------------
# Cones Q, Gamma, R inside the -1 eigenspace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeMembership:
    in_q: bool
    in_gamma: bool
    in_r: bool
    q_projection: tuple


def cone_membership(pair: SymmetricPair, v: Vector) -> ConeMembership:
    """Locate v relative to the invariant-free cone decomposition of s.

    The h-invariants of s split off B-orthogonally; Q is their complement,
    Gamma its nilpotent part, R the rest.  Membership in Gamma is the
    nilpotency of the projected component in the realization.
    """
    if pair.algebra.realization is None:
        raise ShapeError("cone membership requires a matrix realization")
    if not pair.in_gsigma(v):
        raise PreconditionError("element is not in the -1 eigenspace")
    inv = pair.invariants_in_gsigma()
    q_basis = _orthocomplement_in(pair, inv, pair.gsigma_basis)
    if len(inv) + len(q_basis) != pair.dim_gsigma:
        raise InvariantViolation(
            "invariant subspace is B-degenerate: no direct complement")
    combined = list(inv) + list(q_basis)
    if combined:
        coords = coords_in_basis(combined, [v])[0]
    else:
        coords = []
    inv_part = coords[: len(inv)]
    zero = pair.algebra.zero_vector()
    q_proj = list(zero)
    for c, b in zip(coords[len(inv):], q_basis):
        if c:
            q_proj = [a + c * e for a, e in zip(q_proj, b)]
    in_q = all(not c for c in inv_part)
    in_gamma = False
    if in_q:
        in_gamma = is_nilpotent_matrix(pair.algebra.realize(q_proj))
    return ConeMembership(in_q=in_q, in_gamma=in_gamma,
                          in_r=in_q and not in_gamma, q_projection=tuple(q_proj))


def _orthocomplement_in(pair: SymmetricPair, vectors: Sequence[Vector],
                        ambient: Sequence[Vector]) -> List[Vector]:
    """B-orthogonal complement of span(vectors) inside span(ambient)."""
    if not ambient:
        return []
    if not vectors:
        return list(ambient)
    amb = Matrix.from_columns(list(ambient))
    rows = [(Matrix([w]) @ pair.form @ amb).rows[0] for w in vectors]
    ker = kernel_basis(Matrix(rows))
    return echelon_subspace([amb.matvec(k) for k in ker])


# ---------------------------------------------------------------------------
# Descendants
# ---------------------------------------------------------------------------

def descendant(pair: SymmetricPair, x: Vector) -> SymmetricPair:
    """The sub-pair at a semisimple element of the -1 eigenspace.

    Returns (g_x, theta restricted) where g_x is the centralizer of x.
    Requires x split semisimple: rejects irrational spectra, since the
    orbit bookkeeping downstream has no certificates for non-split
    classes.  For x = 0 this is the pair itself.
    """
    if pair.algebra.realization is None:
        raise ShapeError("descendant requires a matrix realization")
    if not pair.in_gsigma(x):
        raise PreconditionError("element is not in the -1 eigenspace")
    if is_zero_vector(x):
        return pair
    mx = pair.algebra.realize(x)
    if not is_semisimple_matrix(mx):
        raise PreconditionError("element is not semisimple in the realization")
    if minimal_polynomial(mx).rational_roots() is None:
        raise PreconditionError(
            "non-split semisimple element: spectrum is irrational over Q")
    cz = pair.algebra.centralizer([x])
    return subpair_on(pair, cz)


def descendant_at_group_element(pair: SymmetricPair, g: GroupElement) -> SymmetricPair:
    """Descendant at s(g) for a normal group element.

    Symmetrizes g, reads s(g) back as an algebra vector (the realization
    is onto the matrix space), and builds the sub-pair on its centralizer.
    """
    if not is_normal(pair, g):
        raise PreconditionError("group element is not normal: sigma(g)g != g sigma(g)")
    s = symmetrize(pair, g)
    v = group_to_algebra_vector(pair, s.matrix)
    mv = pair.algebra.realize(v)
    if not is_semisimple_matrix(mv):
        raise PreconditionError("symmetrization is not semisimple")
    if minimal_polynomial(mv).rational_roots() is None:
        raise PreconditionError(
            "non-split symmetrization: spectrum is irrational over Q")
    cz = pair.algebra.centralizer([v])
    return subpair_on(pair, cz)


def subpair_on(pair: SymmetricPair, basis: Sequence[Vector]) -> SymmetricPair:
    """Restrict the pair to a theta-stable subalgebra given by a basis.

    Builds structure constants, the restricted involution, realization and
    form on the new basis, then revalidates every pair invariant.  A
    degenerate restricted form means the restriction argument failed and
    is raised loudly.
    """
    basis = echelon_subspace(basis)
    k = len(basis)
    if k == 0:
        raise PreconditionError("cannot restrict to the zero subspace")
    cols = Matrix.from_columns(list(basis))

    g = pair.algebra
    targets = []
    for i in range(k):
        for j in range(i + 1, k):
            targets.append(g.bracket(basis[i], basis[j]))
    theta_images = [pair.theta.matvec(b) for b in basis]
    sols = solve_many(cols, targets + theta_images)
    if sols is None:
        raise InvariantViolation("subspace is not closed under bracket or theta")
    table = [[[ZERO] * k for _ in range(k)] for _ in range(k)]
    t = 0
    for i in range(k):
        for j in range(i + 1, k):
            coeffs = sols[t]
            t += 1
            for m, c in enumerate(coeffs):
                table[i][j][m] = c
                table[j][i][m] = -c
    theta_cols = sols[t:]

    realization = None
    if g.realization is not None:
        realization = [g.realize(b) for b in basis]
    labels = ["z%d" % (i + 1) for i in range(k)]
    sub = LieAlgebra(labels, table, realization=realization, validate="basic")
    new_theta = Matrix.from_columns(theta_cols)
    gram = Matrix([[pair.form_value(basis[i], basis[j]) for j in range(k)] for i in range(k)])
    if rank(gram) != k:
        raise InvariantViolation("degenerate restriction: the invariant form "
                                 "collapses on the centralizer")
    return SymmetricPair(sub, new_theta, gram, family=FAMILY_CUSTOM)


def descendant_dimension_identity(pair: SymmetricPair, x: Vector, sub: SymmetricPair):
    """(lhs, rhs) of dim (g_x)^sigma = dim g - 2 dim h + dim h_x."""
    hx = pair.centralizer_in(x, pair.h_basis)
    lhs = sub.dim_gsigma
    rhs = pair.dim_g - 2 * pair.dim_h + len(hx)
    return lhs, rhs
