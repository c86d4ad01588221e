import numpy as np
import pytest
from pyhmt.tools import messages
from pyhmt.handler.algebra import AlgebraShape, AlgebraElement, alg_mul, alg_adjoint, alg_abs, alg_distance, \
    is_central, is_self_adjoint, self_adjoint_residual, min_singular


class TestShape:
    def test_parse(self):
        shape = AlgebraShape.parse('2+3')
        assert shape.block_dims == (2, 3)
        assert shape.size == 5
        assert shape.dim == 13
        assert str(shape) == '2+3'
        assert shape.offsets == (0, 2)

    def test_integer(self):
        assert AlgebraShape(4) == AlgebraShape((4,))

    def test_wrong_text(self):
        with pytest.raises(messages.Errors.ConfigError):
            AlgebraShape.parse('2+x')

    def test_nonpositive_block(self):
        with pytest.raises(messages.Errors.ShapeMismatch):
            AlgebraShape((2, 0))

    def test_cap(self):
        with pytest.raises(messages.Errors.DimensionCap):
            AlgebraShape((40, 30))

    def test_cap_counts_algebra_dimension(self):
        assert AlgebraShape((8,)).dim == 64
        assert AlgebraShape((4, 4, 4, 4)).size == 16
        with pytest.raises(messages.Errors.DimensionCap):
            AlgebraShape((9,))
        with pytest.raises(messages.Errors.DimensionCap):
            AlgebraShape((6, 6))

    def test_block_of(self):
        np.testing.assert_array_equal(AlgebraShape((2, 1)).block_of, [0, 0, 1])


class TestElement:
    def test_dense_is_block_diagonal(self, algebra):
        a = AlgebraElement.random(algebra, 0)
        dense = a.dense()
        np.testing.assert_array_equal(dense[~algebra.mask], 0)

    def test_from_dense_drops_off_block_entries(self):
        shape = AlgebraShape((1, 1))
        a = AlgebraElement.from_dense(shape, [[1.0, 5.0], [5.0, 2.0]])
        np.testing.assert_array_equal(a.dense(), np.diag([1.0, 2.0]))

    def test_block_mismatch(self):
        with pytest.raises(messages.Errors.ShapeMismatch):
            AlgebraElement((2,), [np.eye(3)])

    def test_shape_mismatch_on_add(self):
        with pytest.raises(messages.Errors.ShapeMismatch):
            AlgebraElement.unit((2,)) + AlgebraElement.unit((1, 1))

    def test_norm_is_max_over_blocks(self):
        a = AlgebraElement((1, 2), [np.array([[3.0]]), np.diag([1.0, -4.0])])
        assert a.norm() == pytest.approx(4.0)
        assert a.fro() == pytest.approx(np.sqrt(26.0))

    def test_arithmetic(self, algebra):
        a = AlgebraElement.random(algebra, 1)
        b = AlgebraElement.random(algebra, 2)
        np.testing.assert_allclose((a + b * 2.0 - a).dense(), 2.0 * b.dense(), atol=1e-14)
        np.testing.assert_allclose((-a).dense(), -a.dense())


class TestOperations:
    def test_unit(self, algebra):
        a = AlgebraElement.random(algebra, 3)
        e = AlgebraElement.unit(algebra)
        assert alg_distance(alg_mul(a, e), a) <= 1e-15
        assert alg_distance(alg_mul(e, a), a) <= 1e-15

    def test_adjoint_reverses_products(self, algebra):
        a = AlgebraElement.random(algebra, 4)
        b = AlgebraElement.random(algebra, 5)
        left = alg_adjoint(alg_mul(a, b))
        right = alg_mul(alg_adjoint(b), alg_adjoint(a))
        assert alg_distance(left, right) <= 1e-14

    def test_abs_squares_to_gram(self, algebra):
        a = AlgebraElement.random(algebra, 6)
        m = alg_abs(a)
        assert alg_distance(alg_mul(m, m), alg_mul(alg_adjoint(a), a)) <= 1e-12
        assert is_self_adjoint(m)

    def test_central(self, algebra):
        assert is_central(AlgebraElement.random_central(algebra, 7))
        assert is_central(AlgebraElement.unit(algebra))

    def test_not_central(self):
        assert not is_central(AlgebraElement.random((2,), 8))

    def test_self_adjoint(self):
        a = AlgebraElement((2,), [np.array([[1.0, 1j], [-1j, 2.0]])])
        assert is_self_adjoint(a)
        assert self_adjoint_residual(a) == 0.0
        assert not is_self_adjoint(AlgebraElement((2,), [np.array([[0.0, 1.0], [0.0, 0.0]])]))

    def test_min_singular(self):
        a = AlgebraElement((1, 2), [np.array([[2.0]]), np.diag([3.0, 0.5])])
        assert min_singular(a) == pytest.approx(0.5)
        assert min_singular(AlgebraElement.zero((2,))) == 0.0

    def test_unitary(self, algebra):
        u = AlgebraElement.random_unitary(algebra, 9)
        assert alg_distance(alg_mul(alg_adjoint(u), u), AlgebraElement.unit(algebra)) <= 1e-13
