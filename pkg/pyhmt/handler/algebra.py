"""
Finite-dimensional C*-algebras realized as direct sums of full matrix blocks
"""
import numbers
import numpy as np
from collections import namedtuple
from scipy import linalg
from ..tools import methods, messages
from .base import DEFAULT_TOL, DIM_CAP, as_matrix, adj, op_norm, fro_norm, sqrt_psd, \
    complex_gaussian, random_unitary


class AlgebraShape(namedtuple('AlgebraShape', ['block_dims'])):
    """ Block dimensions (n_1, ..., n_k) of A = M_{n_1} + ... + M_{n_k}
    """
    __slots__ = ()

    def __new__(cls, block_dims):
        if isinstance(block_dims, numbers.Integral):
            block_dims = (block_dims,)
        block_dims = tuple(int(n) for n in block_dims)
        if not block_dims or any(n < 1 for n in block_dims):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Block dimensions must be positive, got {}'.format(block_dims))
        if sum(n * n for n in block_dims) > DIM_CAP:
            methods.raiseerror(messages.Errors.DimensionCap,
                               'Algebra {} has dimension above the cap {}'.format(block_dims, DIM_CAP))
        return super(AlgebraShape, cls).__new__(cls, block_dims)

    @classmethod
    def parse(cls, text):
        """ Parse '2' or '2+3' into an AlgebraShape
        """
        try:
            return cls([int(n) for n in str(text).split('+')])
        except ValueError:
            methods.raiseerror(messages.Errors.ConfigError, 'Wrong block shape "{}"'.format(text))

    @property
    def size(self):
        """Side of the ambient block-diagonal matrix (sum n_i)"""
        return sum(self.block_dims)

    @property
    def dim(self):
        """Complex dimension of the algebra (sum n_i^2)"""
        return sum(n * n for n in self.block_dims)

    @property
    def offsets(self):
        return tuple(int(v) for v in np.cumsum((0,) + self.block_dims[:-1]))

    @property
    def slices(self):
        return tuple(slice(o, o + n) for o, n in zip(self.offsets, self.block_dims))

    @property
    def mask(self):
        """Boolean support pattern of block-diagonal matrices"""
        return linalg.block_diag(*[np.ones((n, n), dtype=bool) for n in self.block_dims])

    @property
    def block_of(self):
        """Block index of every row/column of the ambient matrix"""
        return np.repeat(np.arange(len(self.block_dims)), self.block_dims)

    def __str__(self):
        return '+'.join(str(n) for n in self.block_dims)


class AlgebraElement(object):
    """ Element of A = M_{n_1} + ... + M_{n_k}, stored blockwise
    """
    def __init__(self, shape, blocks):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        blocks = [np.array(as_matrix(b, square=True)) for b in blocks]
        if len(blocks) != len(shape.block_dims) or \
                any(b.shape[0] != n for b, n in zip(blocks, shape.block_dims)):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Blocks {} do not match shape {}'.format([b.shape for b in blocks], shape))
        for b in blocks:
            b.flags.writeable = False
        self._shape = shape
        self._blocks = tuple(blocks)

    @property
    def shape(self):
        return self._shape

    @property
    def blocks(self):
        return self._blocks

    @classmethod
    def from_dense(cls, shape, m):
        """ Build from a block-diagonal dense matrix (off-block entries are dropped)
        """
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        m = as_matrix(m, square=True)
        if m.shape[0] != shape.size:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Dense side {} does not match shape {}'.format(m.shape[0], shape))
        return cls(shape, [m[s, s] for s in shape.slices])

    @classmethod
    def unit(cls, shape):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        return cls(shape, [np.eye(n) for n in shape.block_dims])

    @classmethod
    def zero(cls, shape):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        return cls(shape, [np.zeros((n, n)) for n in shape.block_dims])

    @classmethod
    def scalars(cls, shape, values):
        """ Central element with block i equal to values[i] * I
        """
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        values = np.broadcast_to(np.asarray(values, dtype=complex), (len(shape.block_dims),))
        return cls(shape, [v * np.eye(n) for v, n in zip(values, shape.block_dims)])

    @classmethod
    def random(cls, shape, rng):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        rng = methods.as_rng(rng)
        return cls(shape, [complex_gaussian((n, n), rng) for n in shape.block_dims])

    @classmethod
    def random_central(cls, shape, rng):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        return cls.scalars(shape, complex_gaussian((len(shape.block_dims),), rng))

    @classmethod
    def random_unitary(cls, shape, rng):
        if not isinstance(shape, AlgebraShape):
            shape = AlgebraShape(shape)
        rng = methods.as_rng(rng)
        return cls(shape, [random_unitary(n, rng) for n in shape.block_dims])

    def dense(self):
        return linalg.block_diag(*self._blocks)

    def scalar_values(self):
        """ Per-block scalars of a central element (trace / n)
        """
        return np.array([np.trace(b) / b.shape[0] for b in self._blocks])

    def norm(self):
        """ C*-norm: max over blocks of the largest singular value
        """
        return max(op_norm(b) for b in self._blocks)

    def fro(self):
        return float(np.sqrt(sum(fro_norm(b) ** 2 for b in self._blocks)))

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.shape != self.shape:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Algebra shape mismatch: {} vs {}'.format(
                                   self.shape, getattr(other, 'shape', type(other).__name__)))

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a + b for a, b in zip(self._blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.shape, [a - b for a, b in zip(self._blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.shape, [-a for a in self._blocks])

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return AlgebraElement(self.shape, [scalar * a for a in self._blocks])

    __rmul__ = __mul__

    def __repr__(self):
        return 'AlgebraElement(shape={}, blocks={})'.format(self.shape, [b.tolist() for b in self._blocks])


def alg_mul(a, b):
    """ Blockwise product a*b
    """
    a._check(b)
    return AlgebraElement(a.shape, [x @ y for x, y in zip(a.blocks, b.blocks)])


def alg_adjoint(a):
    """ Blockwise conjugate transpose
    """
    return AlgebraElement(a.shape, [adj(x) for x in a.blocks])


def alg_abs(a, tol=DEFAULT_TOL):
    """ |a| = (a*a)^{1/2}
    """
    return AlgebraElement(a.shape, [sqrt_psd(adj(x) @ x, tol) for x in a.blocks])


def alg_distance(a, b):
    """ ||a - b||_F / max(||a||_F, ||b||_F, 1)
    """
    return (a - b).fro() / max(a.fro(), b.fro(), 1.0)


def is_central(a, tol=DEFAULT_TOL):
    """ True iff every block is a scalar multiple of its identity
    """
    for block in a.blocks:
        scalar = np.trace(block) / block.shape[0]
        if fro_norm(block - scalar * np.eye(block.shape[0])) > tol.bound(max(fro_norm(block), 1.0)):
            return False
    return True


def is_self_adjoint(a, tol=DEFAULT_TOL):
    """ True iff ||a - a*|| <= tol*||a||
    """
    return (a - alg_adjoint(a)).norm() <= tol.bound(a.norm())


def self_adjoint_residual(a):
    return (a - alg_adjoint(a)).fro() / max(a.fro(), 1.0)


def min_singular(a):
    """ Smallest singular value over all blocks (0 means not invertible)
    """
    return min(float(linalg.svdvals(b)[-1]) for b in a.blocks)
