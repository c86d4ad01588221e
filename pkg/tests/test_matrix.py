import numpy as np
import pytest
from pyhmt.tools import messages
from pyhmt.handler.base import Tolerance, DIM_CAP, as_matrix, adj, hermitize, check_hermitian, eig_hermitian, \
    sqrt_psd, inv_sqrt_pd, loewner_slack, loewner_holds, random_unitary, random_isometry, complex_gaussian

hypothesis = pytest.importorskip("hypothesis")
from hypothesis import given, settings, strategies as st  # noqa: E402

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)
sizes = st.integers(min_value=1, max_value=8)


class TestValidation:
    def test_scalar_becomes_matrix(self):
        assert as_matrix(3.0).shape == (1, 1)

    def test_nan_is_refused(self):
        with pytest.raises(messages.Errors.NonFinite):
            as_matrix([[1.0, np.nan], [0.0, 1.0]])

    def test_dimension_cap(self):
        with pytest.raises(messages.Errors.DimensionCap):
            as_matrix(np.eye(DIM_CAP + 1))

    def test_not_square(self):
        with pytest.raises(messages.Errors.NotSquare):
            as_matrix(np.ones((2, 3)), square=True)

    def test_not_hermitian(self):
        with pytest.raises(messages.Errors.NotHermitian):
            check_hermitian([[1.0, 2.0], [0.0, 1.0]])

    def test_negative_tolerance(self):
        with pytest.raises(messages.Errors.ConfigError):
            Tolerance(rel=-1.0)

    def test_tolerance_bound(self):
        tol = Tolerance(rel=1e-9, abs=1e-12)
        assert tol.bound(0.0) == 1e-12
        assert tol.bound(10.0) == pytest.approx(1e-8)


class TestSpectral:
    def test_eigenvalues_ascending(self):
        w, u = eig_hermitian([[2.0, 1.0], [1.0, 2.0]])
        np.testing.assert_allclose(w, [1.0, 3.0], atol=1e-14)
        np.testing.assert_allclose(adj(u) @ u, np.eye(2), atol=1e-14)

    def test_sqrt(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        r = sqrt_psd(m)
        np.testing.assert_allclose(r @ r, m, atol=1e-13)
        np.testing.assert_allclose(np.linalg.eigvalsh(r), [1.0, np.sqrt(3.0)], atol=1e-13)

    def test_sqrt_of_indefinite(self):
        with pytest.raises(messages.Errors.NotPositive):
            sqrt_psd(np.diag([1.0, -1.0]))

    def test_sqrt_clamps_rounding(self):
        r = sqrt_psd(np.diag([1.0, -1e-15]))
        np.testing.assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-14)

    def test_inv_sqrt(self):
        m = np.array([[2.0, 1.0], [1.0, 2.0]])
        r = inv_sqrt_pd(m)
        np.testing.assert_allclose(r @ m @ r, np.eye(2), atol=1e-13)

    def test_inv_sqrt_conditioning_floor(self):
        with pytest.raises(messages.Errors.IllConditioned):
            inv_sqrt_pd(np.diag([1e-3, 1.0]), delta=0.05)


class TestLoewner:
    def test_slack_of_scaled_identity(self):
        assert loewner_slack(np.eye(2), 2 * np.eye(2)) == pytest.approx(1.0)

    def test_incomparable(self):
        assert loewner_slack(np.diag([1.0, 3.0]), np.diag([2.0, 2.0])) == pytest.approx(-1.0)
        assert not loewner_holds(np.diag([1.0, 3.0]), np.diag([2.0, 2.0]))

    def test_size_mismatch(self):
        with pytest.raises(messages.Errors.ShapeMismatch):
            loewner_slack(np.eye(2), np.eye(3))

    def test_non_hermitian_operand(self):
        with pytest.raises(messages.Errors.NotHermitian):
            loewner_slack([[0.0, 1.0], [0.0, 0.0]], np.eye(2))


class TestRandom:
    def test_unitary_is_reproducible(self):
        np.testing.assert_array_equal(random_unitary(4, 11), random_unitary(4, 11))

    def test_unitary_cap(self):
        with pytest.raises(messages.Errors.DimensionCap):
            random_unitary(DIM_CAP + 1, 0)

    def test_isometry_shape(self):
        q = random_isometry(5, 3, 2)
        np.testing.assert_allclose(adj(q) @ q, np.eye(3), atol=1e-13)
        with pytest.raises(messages.Errors.ShapeMismatch):
            random_isometry(2, 3, 0)


class TestProperties:
    @settings(max_examples=30, deadline=None)
    @given(seeds, sizes)
    def test_unitary(self, seed, n):
        u = random_unitary(n, seed)
        np.testing.assert_allclose(adj(u) @ u, np.eye(n), atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(seeds, sizes)
    def test_sqrt_squares_back(self, seed, n):
        z = complex_gaussian((n, n), seed)
        m = hermitize(z @ adj(z))
        r = sqrt_psd(m)
        np.testing.assert_allclose(r @ r, m, atol=1e-9 * max(1.0, np.linalg.norm(m, 2)))
        assert np.linalg.eigvalsh(r)[0] >= -1e-12

    @settings(max_examples=30, deadline=None)
    @given(seeds, sizes)
    def test_slack_of_gram_is_nonnegative(self, seed, n):
        z = complex_gaussian((n, n), seed)
        assert loewner_slack(np.zeros((n, n)), hermitize(z @ adj(z))) >= -1e-10
