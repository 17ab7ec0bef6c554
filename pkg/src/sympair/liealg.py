"""Finite-dimensional Lie algebras over Q via structure constants.

An algebra carries its basis labels, the dense table c[i][j] with
[e_i, e_j] = sum_k c[i][j][k] e_k, and optionally a faithful matrix
realization (one square rational matrix per basis element) plus, for
algebras obtained by a quadratic base change, the Galois conjugation as a
linear map on coordinates.

Vectors are coordinate lists over the basis.  All operations are pure;
instances never mutate after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError, ShapeError
from .linalg import (
    Matrix,
    Vector,
    is_zero_vector,
    kernel_basis,
    rank,
)
from .scalars import ONE, ZERO, is_square_free_non_square, rat

SparseRow = Tuple[Tuple[int, Fraction], ...]


class LieAlgebra:

    def __init__(self, labels: Sequence[str], table: List[List[List[Fraction]]],
                 realization: Optional[List[Matrix]] = None,
                 conjugation: Optional[Matrix] = None,
                 validate: str = "basic"):
        self.labels = list(labels)
        self.dim = len(self.labels)
        if len(table) != self.dim or any(len(row) != self.dim for row in table):
            raise ShapeError("structure-constant table has wrong shape")
        self.table = table
        self.realization = realization
        self.conjugation = conjugation
        self._sparse: Dict[Tuple[int, int], SparseRow] = {}
        self._killing: Optional[Matrix] = None
        self._trace_form: Optional[Matrix] = None
        if realization is not None:
            if len(realization) != self.dim:
                raise ShapeError("realization must supply one matrix per basis element")
            sz = realization[0].nrows
            if any(not m.is_square() or m.nrows != sz for m in realization):
                raise ShapeError("realization matrices must be square of equal size")
        if validate == "basic":
            self._check_antisymmetry()
        elif validate == "full":
            self._check_antisymmetry()
            self.check_jacobi()
            if realization is not None:
                self.check_realization()
        elif validate != "none":
            raise ShapeError("unknown validation level %r" % validate)

    # -- structure access ---------------------------------------------------

    def sparse_row(self, i: int, j: int) -> SparseRow:
        key = (i, j)
        row = self._sparse.get(key)
        if row is None:
            row = tuple((k, c) for k, c in enumerate(self.table[i][j]) if c)
            self._sparse[key] = row
        return row

    def zero_vector(self) -> Vector:
        return [ZERO] * self.dim

    def basis_vector(self, i: int) -> Vector:
        v = self.zero_vector()
        v[i] = ONE
        return v

    def bracket(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("bracket operands must have length %d" % self.dim)
        out = self.zero_vector()
        xi = [(i, c) for i, c in enumerate(x) if c]
        yj = [(j, c) for j, c in enumerate(y) if c]
        for i, a in xi:
            for j, b in yj:
                ab = a * b
                for k, c in self.sparse_row(i, j):
                    out[k] += ab * c
        return out

    def ad(self, x: Vector) -> Matrix:
        """Matrix of y -> [x, y] in the algebra basis."""
        if len(x) != self.dim:
            raise ShapeError("ad operand must have length %d" % self.dim)
        cols = [[ZERO] * self.dim for _ in range(self.dim)]
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(self.dim):
                col = cols[j]
                for k, c in self.sparse_row(i, j):
                    col[k] += a * c
        return Matrix.from_columns(cols)

    def realize(self, x: Vector) -> Matrix:
        if self.realization is None:
            raise ShapeError("algebra has no matrix realization")
        acc = Matrix.zeros(self.realization[0].nrows, self.realization[0].ncols)
        for i, c in enumerate(x):
            if c:
                acc = acc + self.realization[i].scale(c)
        return acc

    # -- invariant forms ----------------------------------------------------

    def killing_form(self) -> Matrix:
        """Gram matrix of (x, y) -> tr(ad x . ad y)."""
        if self._killing is None:
            d = self.dim
            gram = [[ZERO] * d for _ in range(d)]
            for i in range(d):
                for j in range(i, d):
                    s = ZERO
                    for k in range(d):
                        for l, a in self.sparse_row(i, k):
                            c = self.table[j][l][k]
                            if c:
                                s += a * c
                    gram[i][j] = s
                    gram[j][i] = s
            self._killing = Matrix(gram)
        return self._killing

    def trace_form(self) -> Matrix:
        """Gram matrix of (x, y) -> tr(rho(x) rho(y)) in the realization."""
        if self.realization is None:
            raise ShapeError("trace form requires a matrix realization")
        if self._trace_form is None:
            d = self.dim
            sparse = [
                {(r, c): v for r, row in enumerate(m.rows) for c, v in enumerate(row) if v}
                for m in self.realization
            ]
            gram = [[ZERO] * d for _ in range(d)]
            for i in range(d):
                si = sparse[i]
                for j in range(i, d):
                    sj = sparse[j]
                    s = ZERO
                    for (r, c), v in si.items():
                        w = sj.get((c, r))
                        if w:
                            s += v * w
                    gram[i][j] = s
                    gram[j][i] = s
            self._trace_form = Matrix(gram)
        return self._trace_form

    def form_value(self, gram: Matrix, x: Vector, y: Vector) -> Fraction:
        return sum((a * b for a, b in zip(gram.matvec(y), x)), ZERO)

    # -- subspaces ------------------------------------------------------------

    def centralizer(self, elements: Sequence[Vector]) -> List[Vector]:
        """Echelon basis of {y : [s, y] = 0 for all s in elements}."""
        ads = [self.ad(s) for s in elements if not is_zero_vector(s)]
        if not ads:
            return [self.basis_vector(i) for i in range(self.dim)]
        stacked = Matrix([row for m in ads for row in m.rows])
        return kernel_basis(stacked)

    # -- validation -----------------------------------------------------------

    def _check_antisymmetry(self):
        for i in range(self.dim):
            if any(c for c in self.table[i][i]):
                raise ShapeError("nonzero bracket [e_%d, e_%d]" % (i, i))
            for j in range(i + 1, self.dim):
                if any(a + b for a, b in zip(self.table[i][j], self.table[j][i])):
                    raise ShapeError("structure constants not antisymmetric at (%d, %d)" % (i, j))

    def check_jacobi(self):
        """Jacobi identity on all basis triples (i < j < k suffices by antisymmetry)."""
        sr = self.sparse_row
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                rij = sr(i, j)
                for k in range(j + 1, self.dim):
                    acc: Dict[int, Fraction] = {}
                    for first, second in ((rij, k), (sr(j, k), i), (sr(k, i), j)):
                        for l, a in first:
                            for m, c in sr(l, second):
                                acc[m] = acc.get(m, ZERO) + a * c
                    if any(acc.values()):
                        raise ShapeError("Jacobi identity fails on basis triple (%d, %d, %d)" % (i, j, k))

    def check_realization(self):
        if self.realization is None:
            return
        for i in range(self.dim):
            ri = self.realization[i]
            for j in range(i + 1, self.dim):
                rj = self.realization[j]
                comm = ri @ rj - rj @ ri
                if comm != self.realize(self.table[i][j]):
                    raise ShapeError("realization commutator disagrees with structure constants "
                                     "at (%d, %d)" % (i, j))


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_gl(n: int) -> LieAlgebra:
    """gl_n over Q with the defining matrix realization.

    Basis E(a,b) in row-major order; [E(a,b), E(c,d)] = delta(b,c) E(a,d)
    - delta(d,a) E(c,b).
    """
    if n < 1:
        raise PreconditionError("gl_n needs n >= 1")
    d = n * n
    labels = ["E%d_%d" % (a + 1, b + 1) for a in range(n) for b in range(n)]

    def idx(a, b):
        return a * n + b

    table = [[None] * d for _ in range(d)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e in range(n):
                    row = [ZERO] * d
                    if b == c:
                        row[idx(a, e)] += ONE
                    if e == a:
                        row[idx(c, b)] -= ONE
                    table[idx(a, b)][idx(c, e)] = row
    realization = []
    for a in range(n):
        for b in range(n):
            m = [[ZERO] * n for _ in range(n)]
            m[a][b] = ONE
            realization.append(Matrix(m))
    return LieAlgebra(labels, table, realization=realization, validate="none")


def build_product(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    """Direct sum with componentwise bracket; realization is block diagonal."""
    d1, d2 = g1.dim, g2.dim
    d = d1 + d2
    labels = ["l.%s" % s for s in g1.labels] + ["r.%s" % s for s in g2.labels]
    table = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(d1):
        for j in range(d1):
            for k, c in enumerate(g1.table[i][j]):
                if c:
                    table[i][j][k] = c
    for i in range(d2):
        for j in range(d2):
            for k, c in enumerate(g2.table[i][j]):
                if c:
                    table[d1 + i][d1 + j][d1 + k] = c
    realization = None
    if g1.realization is not None and g2.realization is not None:
        n1 = g1.realization[0].nrows
        n2 = g2.realization[0].nrows
        realization = []
        for m in g1.realization:
            realization.append(_embed_block(m, 0, n1 + n2))
        for m in g2.realization:
            realization.append(_embed_block(m, n1, n1 + n2))
    return LieAlgebra(labels, table, realization=realization, validate="none")


def _embed_block(m: Matrix, offset: int, size: int) -> Matrix:
    rows = [[ZERO] * size for _ in range(size)]
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if v:
                rows[offset + i][offset + j] = v
    return Matrix(rows)


def build_quadratic_extension(g: LieAlgebra, disc) -> LieAlgebra:
    """Base change to Q(sqrt(disc)) viewed over Q: the basis doubles.

    New basis: e_i (plain copy) followed by w*e_i where w**2 = disc.
    Brackets: [e_i, w e_j] = w [e_i, e_j] and [w e_i, w e_j] = disc [e_i, e_j].
    The Galois conjugation (w -> -w) is stored as a linear map.
    """
    disc = rat(disc)
    if disc.denominator != 1 or not is_square_free_non_square(int(disc)):
        raise PreconditionError("discriminant must be a square-free non-square integer, got %s" % disc)
    d = g.dim
    dd = 2 * d
    labels = list(g.labels) + ["w*%s" % s for s in g.labels]
    table = [[[ZERO] * dd for _ in range(dd)] for _ in range(dd)]
    for i in range(d):
        for j in range(d):
            for k, c in enumerate(g.table[i][j]):
                if not c:
                    continue
                table[i][j][k] = c
                table[i][d + j][d + k] = c
                table[d + i][j][d + k] = c
                table[d + i][d + j][k] = disc * c
    realization = None
    if g.realization is not None:
        n = g.realization[0].nrows
        realization = []
        for m in g.realization:
            realization.append(_regular_rep_block(m, n, disc, plain=True))
        for m in g.realization:
            realization.append(_regular_rep_block(m, n, disc, plain=False))
    conj_rows = [[ZERO] * dd for _ in range(dd)]
    for i in range(d):
        conj_rows[i][i] = ONE
        conj_rows[d + i][d + i] = -ONE
    return LieAlgebra(labels, table, realization=realization,
                      conjugation=Matrix(conj_rows), validate="none")


def _regular_rep_block(m: Matrix, n: int, disc: Fraction, plain: bool) -> Matrix:
    """Realize m (plain) or w*m over Q on Q^n + w Q^n: [[A, disc*B], [B, A]]."""
    rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if not v:
                continue
            if plain:
                rows[i][j] = v
                rows[n + i][n + j] = v
            else:
                rows[i][n + j] = disc * v
                rows[n + i][j] = v
    return Matrix(rows)


# ---------------------------------------------------------------------------
# Form diagnostics used by tests and pair validation
# ---------------------------------------------------------------------------

def form_radical_dimension(gram: Matrix) -> int:
    return gram.nrows - rank(gram)


def form_is_invariant(g: LieAlgebra, gram: Matrix, triples: Sequence[Tuple[int, int, int]]) -> bool:
    """B([z, x], y) + B(x, [z, y]) = 0 on the given basis triples."""
    for zi, xi, yi in triples:
        zx = g.table[zi][xi]
        zy = g.table[zi][yi]
        val = g.form_value(gram, zx, g.basis_vector(yi)) + \
            g.form_value(gram, g.basis_vector(xi), zy)
        if val:
            return False
    return True
