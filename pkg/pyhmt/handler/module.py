"""
Concrete Hilbert C*-modules over finite-dimensional C*-algebras

Every element is stored as a frame: a complex R x N matrix F supported on a
fixed pattern, where N is the side of the algebra's block-diagonal matrices.
The inner product is <x, y> = F_x* F_y (block-diagonal by construction) and the
right action is x.a = F_x a.
"""
import logging
import numbers
import numpy as np
from collections import namedtuple
from scipy import linalg
from ..tools import methods, messages
from .base import DEFAULT_TOL, DIM_CAP, adj, as_matrix, fro_norm, loewner_slack, sqrt_psd, \
    complex_gaussian
from .algebra import AlgebraShape, AlgebraElement, alg_adjoint, alg_mul, alg_distance

logger = logging.getLogger('pyhmt.handler')


########################################################################################################################
# Module spaces
########################################################################################################################


class ModuleSpace(object):
    """ Base class of the module families

    Subclasses define the algebra, the frame rows, the support mask and the
    payload <-> frame conversion.
    """
    kind = None

    def __init__(self, algebra):
        if not isinstance(algebra, AlgebraShape):
            algebra = AlgebraShape(algebra)
        self._algebra = algebra

    @property
    def algebra(self):
        return self._algebra

    @property
    def rows(self):
        raise NotImplementedError

    @property
    def mask(self):
        raise NotImplementedError

    @property
    def row_blocks(self):
        """Algebra block carried by every frame row"""
        raise NotImplementedError

    @property
    def op_mask(self):
        """ Support pattern of module maps acting on frames from the left

        Row r may only be mixed with rows carrying the same algebra block.
        """
        blocks = self.row_blocks
        return blocks[:, None] == blocks[None, :]

    def params(self):
        return ()

    def _key(self):
        return (self.kind, self.params(), self._algebra)

    def __eq__(self, other):
        return isinstance(other, ModuleSpace) and self._key() == other._key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        params = ', '.join(str(p) for p in self.params())
        if params:
            return '{}({}; A={})'.format(self.kind, params, self._algebra)
        return '{}(A={})'.format(self.kind, self._algebra)

    def _check_rows(self):
        if self.rows > DIM_CAP:
            methods.raiseerror(messages.Errors.DimensionCap,
                               '{} needs {} frame rows'.format(self, self.rows))

    # payload conversion
    def to_frame(self, payload):
        raise NotImplementedError

    def from_frame(self, frame):
        raise NotImplementedError

    def element(self, payload):
        """ Build a ModuleElement from the family's payload
        """
        return ModuleElement(self, self.to_frame(payload))

    def zero(self):
        return ModuleElement(self, np.zeros((self.rows, self._algebra.size), dtype=complex))

    def random_element(self, rng):
        rng = methods.as_rng(rng)
        frame = complex_gaussian((self.rows, self._algebra.size), rng)
        return ModuleElement(self, np.where(self.mask, frame, 0))


class StackedModule(ModuleSpace):
    """ Modules whose elements are columns (a_1, ..., a_k) of algebra elements
    """
    def __init__(self, rank, algebra):
        super(StackedModule, self).__init__(algebra)
        if int(rank) != rank or rank < 1:
            methods.raiseerror(messages.Errors.ShapeMismatch, 'Rank must be positive, got {}'.format(rank))
        self._rank = int(rank)
        self._check_rows()

    @property
    def rank(self):
        return self._rank

    @property
    def rows(self):
        return self._rank * self._algebra.size

    @property
    def mask(self):
        return np.tile(self._algebra.mask, (self._rank, 1))

    @property
    def row_blocks(self):
        return np.tile(self._algebra.block_of, self._rank)

    @property
    def grid_mask(self):
        """Support pattern of k x k grids over A acting on the stacked frame"""
        return np.tile(self._algebra.mask, (self._rank, self._rank))

    def row_slice(self, r):
        size = self._algebra.size
        return slice(r * size, (r + 1) * size)

    def block_indices(self, i):
        """ Frame rows belonging to algebra block i across all k components
        """
        size = self._algebra.size
        sl = self._algebra.slices[i]
        return np.concatenate([np.arange(sl.start, sl.stop) + r * size for r in range(self._rank)])

    def to_frame(self, payload):
        payload = list(payload)
        if len(payload) != self._rank:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               '{} needs {} components, got {}'.format(self, self._rank, len(payload)))
        for a in payload:
            if not isinstance(a, AlgebraElement) or a.shape != self._algebra:
                methods.raiseerror(messages.Errors.ShapeMismatch,
                                   'Components must be elements of A={}'.format(self._algebra))
        return np.vstack([a.dense() for a in payload])

    def from_frame(self, frame):
        return [AlgebraElement.from_dense(self._algebra, frame[self.row_slice(r)]) for r in range(self._rank)]


class SelfModule(StackedModule):
    """ A as a Hilbert A-module, <a, b> = a*b
    """
    kind = 'SelfModule'

    def __init__(self, algebra):
        super(SelfModule, self).__init__(1, algebra)

    def to_frame(self, payload):
        if isinstance(payload, AlgebraElement):
            payload = [payload]
        return super(SelfModule, self).to_frame(payload)

    def from_frame(self, frame):
        return AlgebraElement.from_dense(self._algebra, frame)


class DirectSum(StackedModule):
    """ A^k with <x, y> = sum x_i* y_i
    """
    kind = 'DirectSum'

    def __init__(self, k, algebra):
        super(DirectSum, self).__init__(k, algebra)

    def params(self):
        return (self._rank,)


class SeqModule(StackedModule):
    """ l2(A) truncated to length L
    """
    kind = 'SeqModule'

    def __init__(self, length, algebra):
        super(SeqModule, self).__init__(length, algebra)

    @property
    def length(self):
        return self._rank

    def params(self):
        return (self._rank,)


class RectTuple(ModuleSpace):
    """ n-tuples of m x d matrices, a Hilbert M_d-module via <(T_i), (S_i)> = sum T_i* S_i
    """
    kind = 'RectTuple'

    def __init__(self, n, m, d, algebra=None):
        if algebra is not None and AlgebraShape(algebra) != AlgebraShape((d,)):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'RectTuple over M_{} needs a single block of size {}, got {}'.format(d, d, algebra))
        if min(n, m, d) < 1:
            methods.raiseerror(messages.Errors.ShapeMismatch, 'RectTuple sizes must be positive')
        super(RectTuple, self).__init__(AlgebraShape((d,)))
        self.n, self.m, self.d = int(n), int(m), int(d)
        self._check_rows()

    def params(self):
        return (self.n, self.m, self.d)

    @property
    def rows(self):
        return self.n * self.m

    @property
    def mask(self):
        return np.ones((self.rows, self.d), dtype=bool)

    @property
    def row_blocks(self):
        return np.zeros(self.rows, dtype=int)

    def to_frame(self, payload):
        payload = [as_matrix(t) for t in payload]
        if len(payload) != self.n or any(t.shape != (self.m, self.d) for t in payload):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               '{} needs {} matrices of shape {}'.format(self, self.n, (self.m, self.d)))
        return np.vstack(payload)

    def from_frame(self, frame):
        return [frame[i * self.m:(i + 1) * self.m] for i in range(self.n)]


class BundleModule(ModuleSpace):
    """ Sections of a Hilbert bundle over a finite set K, a Hilbert C(K)-module

    The algebra C(K) is realized as kappa blocks of size one. The inner product is
    <phi, psi>(t) = <psi(t) | phi(t)>_t, with the fibre product linear in its first slot.
    """
    kind = 'BundleModule'

    def __init__(self, fiber_dims, algebra=None):
        fiber_dims = tuple(int(d) for d in fiber_dims)
        if not fiber_dims or any(d < 1 for d in fiber_dims):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Fibre dimensions must be positive, got {}'.format(fiber_dims))
        shape = AlgebraShape((1,) * len(fiber_dims))
        if algebra is not None and AlgebraShape(algebra) != shape:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'BundleModule over {} points needs algebra {}, got {}'.format(
                                   len(fiber_dims), shape, algebra))
        super(BundleModule, self).__init__(shape)
        self.fiber_dims = fiber_dims
        self._check_rows()

    @property
    def point_count(self):
        return len(self.fiber_dims)

    def params(self):
        return (self.fiber_dims,)

    @property
    def rows(self):
        return sum(self.fiber_dims)

    @property
    def fiber_slices(self):
        offsets = np.cumsum((0,) + self.fiber_dims[:-1])
        return tuple(slice(int(o), int(o) + d) for o, d in zip(offsets, self.fiber_dims))

    @property
    def mask(self):
        mask = np.zeros((self.rows, self.point_count), dtype=bool)
        for t, sl in enumerate(self.fiber_slices):
            mask[sl, t] = True
        return mask

    @property
    def row_blocks(self):
        return np.repeat(np.arange(self.point_count), self.fiber_dims)

    def to_frame(self, payload):
        payload = [np.asarray(v, dtype=complex).reshape(-1) for v in payload]
        if len(payload) != self.point_count or \
                any(v.shape[0] != d for v, d in zip(payload, self.fiber_dims)):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               '{} needs vectors of dims {}'.format(self, self.fiber_dims))
        frame = np.zeros((self.rows, self.point_count), dtype=complex)
        for t, (sl, v) in enumerate(zip(self.fiber_slices, payload)):
            frame[sl, t] = v
        return frame

    def from_frame(self, frame):
        return [np.array(frame[sl, t]) for t, sl in enumerate(self.fiber_slices)]

    def function(self, values):
        """ Element of C(K) with the given values at the points of K
        """
        values = np.asarray(values, dtype=complex).reshape(-1)
        if values.shape[0] != self.point_count:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Function needs {} values, got {}'.format(self.point_count, values.shape[0]))
        return AlgebraElement.scalars(self._algebra, values)


def fiber_inner(u, v):
    """ <u | v>_t = v* u, linear in the first slot
    """
    return complex(np.vdot(v, u))


########################################################################################################################
# Module elements
########################################################################################################################


class ModuleElement(object):
    """ Element of a ModuleSpace stored as a read-only frame
    """
    def __init__(self, space, frame):
        frame = np.array(as_matrix(frame))
        if frame.shape != (space.rows, space.algebra.size):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Frame shape {} does not match {}'.format(frame.shape, space))
        mask = space.mask
        stray = fro_norm(np.where(mask, 0, frame))
        if stray > DEFAULT_TOL.bound(max(fro_norm(frame), 1.0)):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Frame is not supported on {} (stray mass {:.3e})'.format(space, stray))
        frame[~mask] = 0
        frame.flags.writeable = False
        self._space = space
        self._frame = frame

    @property
    def space(self):
        return self._space

    @property
    def frame(self):
        return self._frame

    @property
    def payload(self):
        return self._space.from_frame(self._frame)

    def fro(self):
        return fro_norm(self._frame)

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.space != self.space:
            methods.raiseerror(messages.Errors.SpaceMismatch,
                               'Module mismatch: {} vs {}'.format(
                                   self.space, getattr(other, 'space', type(other).__name__)))

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self._space, self._frame + other.frame)

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self._space, self._frame - other.frame)

    def __neg__(self):
        return ModuleElement(self._space, -self._frame)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return ModuleElement(self._space, complex(scalar) * self._frame)

    __rmul__ = __mul__

    def act(self, a):
        return act(self, a)

    def __repr__(self):
        return 'ModuleElement({}, frame={})'.format(self._space, self._frame.tolist())


def inner(x, y):
    """ A-valued inner product <x, y>, conjugate-linear in x and linear in y

    :param x: ModuleElement
    :param y: ModuleElement of the same space
    :return: AlgebraElement
    """
    x._check(y)
    return AlgebraElement.from_dense(x.space.algebra, adj(x.frame) @ y.frame)


def act(x, a):
    """ Right action x.a
    """
    if not isinstance(a, AlgebraElement) or a.shape != x.space.algebra:
        methods.raiseerror(messages.Errors.ShapeMismatch,
                           'Cannot act on {} with {}'.format(x.space, getattr(a, 'shape', type(a).__name__)))
    return ModuleElement(x.space, x.frame @ a.dense())


def self_element(a):
    """ View an algebra element as an element of A as a module over itself
    """
    return SelfModule(a.shape).element(a)


def abs_squared(x):
    """ |x|^2 = <x, x>
    """
    return inner(x, x)


def mod_abs(x, tol=DEFAULT_TOL):
    """ |x| = <x, x>^{1/2}
    """
    xx = inner(x, x)
    return AlgebraElement(xx.shape, [sqrt_psd(b, tol) for b in xx.blocks])


def mod_norm(x):
    """ ||x|| = ||<x, x>||^{1/2}
    """
    return float(np.sqrt(inner(x, x).norm()))


def element_distance(x, y):
    """ Max component norm of x - y relative to the operands
    """
    x._check(y)
    diff = x.frame - y.frame
    scale = max(x.fro(), y.fro(), 1.0)
    if isinstance(x.space, BundleModule):
        return max(float(np.linalg.norm(v)) for v in x.space.from_frame(diff)) / scale
    if isinstance(x.space, RectTuple):
        return max(fro_norm(t) for t in x.space.from_frame(diff)) / scale
    return max(fro_norm(diff[x.space.row_slice(r)]) for r in range(x.space.rank)) / scale


def elements_close(x, y, tol=DEFAULT_TOL):
    return element_distance(x, y) <= tol.bound(1.0)


########################################################################################################################
# Axiom property run
########################################################################################################################

AxiomReport = namedtuple('AxiomReport', ['space', 'trials', 'residuals', 'passed'])

AXIOMS = ('positivity', 'linearity', 'module_action', 'symmetry', 'cauchy_schwarz', 'abs_square')


def check_module_axioms(space, trials, seed, threshold=1e-10):
    """ Property run of the pre-Hilbert module axioms on random probes

    (i) <x,x> >= 0 and definiteness, (ii) <x, y + lz> = <x,y> + l<x,z>,
    (iii) <x, ya> = <x,y>a, (iv) <x,y>* = <y,x>, plus Cauchy-Schwarz and |x|^2 = <x,x>.

    :param space:       ModuleSpace
    :param trials:      number of random probes
    :param seed:        int seed
    :param threshold:   residual bound for the passed flag
    :return: AxiomReport with the max residual per axiom
    """
    if trials < 1:
        methods.raiseerror(messages.Errors.ConfigError, 'trials must be >= 1')
    rng = methods.as_rng(seed)
    worst = dict((name, 0.0) for name in AXIOMS)
    zero = space.zero()
    for _ in range(trials):
        x, y, z = space.random_element(rng), space.random_element(rng), space.random_element(rng)
        lam = complex(complex_gaussian((1,), rng)[0])
        a = AlgebraElement.random(space.algebra, rng)

        xx = inner(x, x)
        dense = xx.dense()
        scale = max(xx.norm(), 1.0)
        slack = loewner_slack(np.zeros_like(dense), (dense + adj(dense)) / 2)
        definite = abs(np.trace(dense).real - x.fro() ** 2) / max(x.fro() ** 2, 1.0)
        positivity = max(0.0, -slack) / scale + definite + inner(zero, zero).fro() + \
            fro_norm(dense - adj(dense)) / scale
        linearity = alg_distance(inner(x, y + z * lam), inner(x, y) + inner(x, z) * lam)
        module_action = alg_distance(inner(x, act(y, a)), alg_mul(inner(x, y), a))
        symmetry = alg_distance(alg_adjoint(inner(x, y)), inner(y, x))
        bound = mod_norm(x) * mod_norm(y)
        cauchy_schwarz = max(0.0, inner(x, y).norm() - bound) / max(bound, 1.0)
        ab = mod_abs(x)
        abs_square = alg_distance(alg_mul(ab, ab), xx)

        for name, value in zip(AXIOMS, (positivity, linearity, module_action, symmetry,
                                        cauchy_schwarz, abs_square)):
            worst[name] = max(worst[name], float(value))
    passed = all(v <= threshold for v in worst.values())
    logger.debug('Axioms::{} trials={} passed={}'.format(space, trials, passed))
    return AxiomReport(space=space, trials=trials, residuals=worst, passed=passed)


def module_family(kind, algebra=None, **kwargs):
    """ Build a module space by family name

    :param kind:    one of SelfModule, DirectSum, RectTuple, SeqModule, BundleModule
    :param algebra: AlgebraShape for the stacked families
    :param kwargs:  k, length, n/m/d or fiber_dims
    """
    if kind == 'SelfModule':
        return SelfModule(algebra)
    elif kind == 'DirectSum':
        return DirectSum(kwargs.get('k', 2), algebra)
    elif kind == 'SeqModule':
        return SeqModule(kwargs.get('length', 4), algebra)
    elif kind == 'RectTuple':
        return RectTuple(kwargs.get('n', 2), kwargs.get('m', 3), kwargs.get('d', 2))
    elif kind == 'BundleModule':
        return BundleModule(kwargs.get('fiber_dims', (1, 2, 3)))
    else:
        methods.raiseerror(messages.Errors.ConfigError, 'Unknown module family "{}"'.format(kind))


FAMILIES = ('SelfModule', 'DirectSum', 'RectTuple', 'SeqModule', 'BundleModule')
