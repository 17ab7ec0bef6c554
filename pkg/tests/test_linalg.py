"""Exact linear algebra: solves, kernels, minimal polynomials, spectra."""

import random
from fractions import Fraction as F

import pytest

from sympair.errors import InvariantViolation, ShapeError
from sympair.linalg import (
    Matrix,
    Poly,
    determinant,
    integer_spectrum,
    inverse,
    is_nilpotent_matrix,
    is_semisimple_matrix,
    is_unipotent_matrix,
    kernel_basis,
    minimal_polynomial,
    rank,
    solve,
    solve_many,
    split_rational_spectrum,
)
from sympair.scalars import QuadExt


def mat(rows):
    return Matrix([[F(e) for e in r] for r in rows])


E12 = mat([[0, 1], [0, 0]])


class TestSolveAndKernel:
    def test_identity_solve(self):
        assert solve(Matrix.identity(3), [F(1), F(2), F(3)]) == [F(1), F(2), F(3)]

    def test_zero_matrix_kernel_is_everything(self):
        assert len(kernel_basis(Matrix.zeros(2, 2))) == 2

    def test_rank_deficient_inconsistent(self):
        # [[1,2],[2,4]] has rank 1 and (1,3) is not proportional to (1,2)
        assert solve(mat([[1, 2], [2, 4]]), [F(1), F(3)]) is None

    def test_rank_deficient_consistent(self):
        x = solve(mat([[1, 2], [2, 4]]), [F(1), F(2)])
        assert x == [F(1), F(0)]

    def test_solution_is_exact(self):
        rng = random.Random(11)
        for _ in range(25):
            n = rng.randint(1, 6)
            m = rng.randint(1, 6)
            a = Matrix([[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
                        for _ in range(m)])
            x = [F(rng.randint(-3, 3)) for _ in range(n)]
            b = a.matvec(x)
            got = solve(a, b)
            assert got is not None
            assert a.matvec(got) == b

    def test_kernel_properties(self):
        rng = random.Random(12)
        for _ in range(25):
            n = rng.randint(1, 6)
            m = rng.randint(1, 6)
            a = Matrix([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)])
            ker = kernel_basis(a)
            assert len(ker) == n - rank(a)
            for v in ker:
                assert all(c == 0 for c in a.matvec(v))
            if ker:
                assert rank(Matrix(ker)) == len(ker)

    def test_kernel_is_canonical_echelon(self):
        a = mat([[1, 2, 3], [0, 0, 0]])
        ker = kernel_basis(a)
        # re-echelonizing changes nothing
        from sympair.linalg import rref
        assert rref(Matrix(ker))[0].rows == ker

    def test_solve_many_detects_inconsistency_past_first_rhs(self):
        a = mat([[1, 0], [0, 0]])
        assert solve_many(a, [[F(1), F(0)], [F(0), F(1)]]) is None

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            solve(mat([[1, 2]]), [F(1), F(2)])
        with pytest.raises(ShapeError):
            mat([[1, 2]]).trace()


class TestMinimalPolynomial:
    def test_zero_matrix(self):
        assert minimal_polynomial(Matrix.zeros(3, 3)) == Poly([F(0), F(1)])

    def test_elementary_nilpotent(self):
        assert minimal_polynomial(E12) == Poly([F(0), F(0), F(1)])

    def test_diag_1_2(self):
        assert minimal_polynomial(mat([[1, 0], [0, 2]])) == Poly([F(2), F(-3), F(1)])

    def test_annihilates_matrix(self):
        rng = random.Random(13)
        for _ in range(20):
            n = rng.randint(1, 5)
            a = Matrix([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
            p = minimal_polynomial(a)
            assert p.eval_matrix(a).is_zero()
            assert p.leading() == 1

    def test_divides_any_annihilator(self):
        a = mat([[1, 1], [0, 1]])
        p = minimal_polynomial(a)           # (x-1)^2
        assert p == Poly([F(1), F(-2), F(1)])


class TestJordanFlagsOnMatrices:
    def test_identity(self):
        i3 = Matrix.identity(3)
        assert is_semisimple_matrix(i3)
        assert not is_nilpotent_matrix(i3)
        assert is_unipotent_matrix(i3)

    def test_elementary(self):
        assert not is_semisimple_matrix(E12)
        assert is_nilpotent_matrix(E12)

    def test_projection_is_semisimple(self):
        # minimal polynomial x(x-1), square-free
        assert is_semisimple_matrix(mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]]))

    def test_unipotent_shear(self):
        assert is_unipotent_matrix(mat([[1, 1], [0, 1]]))
        assert not is_semisimple_matrix(mat([[1, 1], [0, 1]]))


class TestIntegerSpectrum:
    def test_diagonal(self):
        assert integer_spectrum(mat([[2, 0, 0], [0, 0, 0], [0, 0, -2]]), 3) == \
            {-2: 1, 0: 1, 2: 1}

    def test_zero(self):
        assert integer_spectrum(Matrix.zeros(4, 4), 1) == {0: 4}

    def test_multiplicities_sum_to_dimension(self):
        rng = random.Random(14)
        for _ in range(10):
            n = rng.randint(2, 5)
            diag = [F(rng.randint(-3, 3)) for _ in range(n)]
            g = _random_invertible(rng, n)
            a = g @ Matrix([[diag[i] if i == j else F(0) for j in range(n)]
                            for i in range(n)]) @ inverse(g)
            spec = integer_spectrum(a, 3)
            assert sum(spec.values()) == n

    def test_out_of_range_raises(self):
        with pytest.raises(InvariantViolation):
            integer_spectrum(mat([[5]]), 3)

    def test_non_semisimple_raises(self):
        with pytest.raises(InvariantViolation):
            integer_spectrum(mat([[0, 1], [0, 0]]), 4)


class TestSplitSpectrum:
    def test_rational_split(self):
        assert split_rational_spectrum(mat([[1, 0], [0, 2]])) == [F(1), F(2)]

    def test_irrational_returns_none(self):
        # rotation-like matrix: x^2 + 1
        assert split_rational_spectrum(mat([[0, -1], [1, 0]])) is None
        # x^2 - 2
        assert split_rational_spectrum(mat([[0, 2], [1, 0]])) is None


class TestQuadExtField:
    def test_field_axioms_sampled(self):
        rng = random.Random(15)
        d = F(5)
        for _ in range(40):
            a = QuadExt(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)), d)
            b = QuadExt(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)), d)
            assert (a + b) - b == a
            assert a * b == b * a
            assert (a * b).conj() == a.conj() * b.conj()
            if a:
                assert a * a.inv() == QuadExt(F(1), F(0), d)

    def test_conjugation_fixes_exactly_rationals(self):
        d = F(-1)
        x = QuadExt(F(2), F(0), d)
        y = QuadExt(F(2), F(1), d)
        assert x.conj() == x
        assert y.conj() != y

    def test_quadext_matrix_inverse(self):
        w = QuadExt.of(0, 1, 2)
        one = QuadExt.of(1, 0, 2)
        m = Matrix([[one, w], [w, one]])   # det = 1 - 2 = -1, invertible
        assert m @ inverse(m) == Matrix.identity(2, like=one)

    def test_mixed_discriminants_rejected(self):
        with pytest.raises(ShapeError):
            QuadExt.of(1, 1, 2) * QuadExt.of(1, 1, 3)


def _random_invertible(rng, n):
    while True:
        g = Matrix([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if rank(g) == n:
            return g


def test_determinant_matches_rank():
    rng = random.Random(16)
    for _ in range(20):
        n = rng.randint(1, 5)
        a = Matrix([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        d = determinant(a)
        assert (d != 0) == (rank(a) == n)
