import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from matprops import (
    BackendMismatchError,
    DimensionError,
    Matrix,
    SingularMatrixError,
    Vector,
    det,
    identity,
    inverse,
    lu_solve,
    mat_mul,
    mat_pow,
    mat_vec,
    to_float,
    transpose,
)
from oracles import naive_det, naive_matmul

small_ints = st.integers(min_value=-9, max_value=9)


def exact_matrix(rows):
    return Matrix.from_rows(rows, "exact")


def random_int_rows(n, rnd):
    return [[rnd.randint(-9, 9) for _ in range(n)] for _ in range(n)]


class TestConstruction:
    def test_shape_and_access(self):
        m = exact_matrix([[1, 2], [3, 4]])
        assert m.shape == (2, 2)
        assert m[1, 0] == 3

    def test_ragged_rejected(self):
        with pytest.raises(DimensionError):
            Matrix.from_rows([[1, 2], [3]], "exact")

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            Matrix.from_rows([[float("nan")]], "float")
        with pytest.raises(ValueError):
            Matrix.from_rows([[float("inf")]], "float")

    def test_float_literal_rejected_on_exact_backend(self):
        with pytest.raises(TypeError):
            Matrix.from_rows([[5.6]], "exact")

    def test_decimal_string_parses_to_reduced_rational(self):
        m = exact_matrix([["5.6"]])
        assert m[0, 0] == Fraction(28, 5)

    def test_exact_entries_stay_reduced_with_positive_denominator(self):
        m = exact_matrix([["-0.250"]])
        assert m[0, 0].numerator == -1 and m[0, 0].denominator == 4


class TestMatMul:
    def test_identity_is_neutral(self, estp3):
        assert mat_mul(identity(3, "exact"), estp3) == estp3

    def test_square_against_triple_loop_oracle(self, estp3):
        # frozen from a hand-rolled triple loop over the fixture
        expected = exact_matrix([[120, 32, 34], [43, 14, 14], [124, 46, 54]])
        assert mat_mul(estp3, estp3) == expected
        assert naive_matmul(estp3.rows(), estp3.rows()) == expected.rows()

    def test_one_by_one(self):
        assert mat_mul(exact_matrix([[2]]), exact_matrix([[3]]))[0, 0] == 6

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mat_mul(exact_matrix([[1, 2]]), exact_matrix([[1, 2]]))

    def test_backend_mismatch(self):
        with pytest.raises(BackendMismatchError):
            mat_mul(identity(2, "exact"), identity(2, "float"))


class TestMatPow:
    def test_zeroth_power_is_identity(self, ep3):
        assert mat_pow(ep3, 0) == identity(3, "exact")

    def test_fifth_power_of_ep_fixture_entrywise_positive(self, ep3):
        p5 = mat_pow(ep3, 5)
        assert all(x > 0 for row in p5.entries for x in row)

    def test_permutation_involution(self):
        p = exact_matrix([[0, 1], [1, 0]])
        assert mat_pow(p, 2) == identity(2, "exact")

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            mat_pow(Matrix.from_rows([[1, 2]], "exact"), 2)

    def test_negative_exponent_rejected(self, ep3):
        with pytest.raises(ValueError):
            mat_pow(ep3, -1)

    @given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 10_000))
    def test_power_additivity_exact(self, j, k, seed):
        rnd = random.Random(seed)
        a = exact_matrix(random_int_rows(4, rnd))
        assert mat_pow(a, j + k) == mat_mul(mat_pow(a, j), mat_pow(a, k))

    @given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 10_000))
    def test_power_additivity_float(self, j, k, seed):
        rnd = random.Random(seed)
        a = to_float(exact_matrix(random_int_rows(4, rnd)))
        left = mat_pow(a, j + k)
        right = mat_mul(mat_pow(a, j), mat_pow(a, k))
        scale = max(1.0, max(abs(x) for row in left.entries for x in row))
        for lr, rr in zip(left.entries, right.entries):
            for lx, rx in zip(lr, rr):
                assert abs(lx - rx) <= 1e-9 * scale


class TestDet:
    def test_estp_fixture(self, estp3):
        assert det(estp3) == 54

    def test_ep_fixture(self, ep3):
        assert det(ep3) == 470

    def test_decimal_fixture_exact_rational(self, stjs4):
        value = det(stjs4)
        assert value == Fraction(33928, 10000)
        assert value == Fraction(4241, 1250)  # reduced form

    @given(st.integers(0, 10_000))
    def test_multiplicativity_exact(self, seed):
        rnd = random.Random(seed)
        a = exact_matrix(random_int_rows(5, rnd))
        b = exact_matrix(random_int_rows(5, rnd))
        assert det(mat_mul(a, b)) == det(a) * det(b)

    @given(st.integers(0, 10_000))
    def test_against_laplace_oracle(self, seed):
        rnd = random.Random(seed)
        rows = random_int_rows(4, rnd)
        assert det(exact_matrix(rows)) == naive_det(rows)

    def test_float_det_matches_exact(self, estp3, estp3_float):
        assert det(estp3_float) == pytest.approx(float(det(estp3)), rel=1e-12)


class TestLuSolve:
    def test_identity(self):
        b = Vector.from_coords([3, 4], "exact")
        assert lu_solve(identity(2, "exact"), b) == b

    def test_diagonal(self):
        a = exact_matrix([[2, 0], [0, 4]])
        x = lu_solve(a, Vector.from_coords([2, 8], "exact"))
        assert x.coords == (Fraction(1), Fraction(2))

    def test_construct_then_solve_round_trip_exact(self):
        rnd = random.Random(20)
        a = exact_matrix(random_int_rows(5, rnd))
        assert det(a) != 0
        x = Vector.from_coords([rnd.randint(-9, 9) for _ in range(5)], "exact")
        b = mat_vec(a, x)
        assert lu_solve(a, b) == x

    def test_float_round_trip_residual(self):
        rng = np.random.default_rng(11)
        arr = rng.uniform(-1, 1, size=(8, 8)) + 8 * np.eye(8)
        a = Matrix.from_rows(arr.tolist(), "float")
        b = Vector.from_coords(rng.uniform(-1, 1, size=8).tolist(), "float")
        x = lu_solve(a, b)
        residual = np.max(np.abs(arr @ np.array(x.coords) - np.array(b.coords)))
        assert residual <= 1e-10 * np.max(np.abs(b.coords))

    def test_singular_reports_pivot_index(self):
        singular = exact_matrix([[1, 2], [2, 4]])
        with pytest.raises(SingularMatrixError) as info:
            lu_solve(singular, Vector.from_coords([1, 1], "exact"))
        assert info.value.pivot_index == 2

    def test_float_singular_threshold(self):
        a = Matrix.from_rows([[1.0, 1.0], [1.0, 1.0 + 1e-16]], "float")
        with pytest.raises(SingularMatrixError):
            lu_solve(a, Vector.from_coords([1.0, 1.0], "float"))


class TestInverse:
    def test_exact_round_trip(self):
        rnd = random.Random(3)
        a = exact_matrix(random_int_rows(4, rnd))
        assert det(a) != 0
        assert mat_mul(a, inverse(a)) == identity(4, "exact")

    def test_transpose_involution(self, ep3):
        assert transpose(transpose(ep3)) == ep3
