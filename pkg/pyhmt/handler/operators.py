"""
Adjointable module maps

Every map acts on frames from the left: for x in the domain, T(x) has frame
flatten(T) @ F_x. The forms below keep enough structure to take adjoints
exactly and to recognize the cases the inequality checks rely on (central
right multiplications, matrices over A, the ket/bra pair of a module vector).
"""
import logging
import numbers
import numpy as np
from ..tools import methods, messages
from .base import DEFAULT_TOL, adj, as_matrix, fro_norm, rel_residual, sqrt_psd, inv_sqrt_pd
from .algebra import AlgebraElement, alg_adjoint, alg_abs, alg_mul, alg_distance, is_central
from .module import ModuleElement, ModuleSpace, SelfModule, StackedModule, inner

logger = logging.getLogger('pyhmt.handler')


class AdjointableOp(object):
    """ Base class of adjointable maps between two module spaces

    Subclasses implement _call, adjoint and flatten.
    """
    def __init__(self, domain, codomain):
        for space in (domain, codomain):
            if not isinstance(space, ModuleSpace):
                methods.raiseerror(messages.Errors.SpaceMismatch,
                                   'Operators act between module spaces, got {}'.format(type(space).__name__))
        if domain.algebra != codomain.algebra:
            methods.raiseerror(messages.Errors.SpaceMismatch,
                               'Domain {} and codomain {} are over different algebras'.format(domain, codomain))
        self._domain = domain
        self._codomain = codomain

    @property
    def domain(self):
        return self._domain

    @property
    def codomain(self):
        return self._codomain

    @property
    def is_endo(self):
        return self._domain == self._codomain

    def __call__(self, x):
        return apply(self, x)

    def _call(self, x):
        raise NotImplementedError

    @property
    def adjoint(self):
        raise NotImplementedError

    def flatten(self):
        """ codomain.rows x domain.rows matrix acting on frames from the left
        """
        raise NotImplementedError

    def __repr__(self):
        return '{}({} -> {})'.format(self.__class__.__name__, self._domain, self._codomain)


class MatrixOverA(AdjointableOp):
    """ Module map on a single space given by one matrix on the frame rows

    On DirectSum(k), SeqModule(L) and SelfModule this is a k x k grid over A.
    The matrix must be supported on space.op_mask.
    """
    def __init__(self, space, flat):
        super(MatrixOverA, self).__init__(space, space)
        flat = np.array(as_matrix(flat, square=True))
        if flat.shape[0] != space.rows:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Matrix of side {} does not act on {} ({} rows)'.format(
                                   flat.shape[0], space, space.rows))
        mask = space.op_mask
        stray = fro_norm(np.where(mask, 0, flat))
        if stray > DEFAULT_TOL.bound(max(fro_norm(flat), 1.0)):
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'Matrix is not A-linear on {} (stray mass {:.3e})'.format(space, stray))
        flat[~mask] = 0
        flat.flags.writeable = False
        self._flat = flat

    @property
    def space(self):
        return self._domain

    @classmethod
    def identity(cls, space):
        return cls(space, np.eye(space.rows))

    @classmethod
    def from_grid(cls, space, grid):
        """ Build from a k x k nested list of AlgebraElements

        :param space:   StackedModule of rank k
        :param grid:    grid[r][c] is the (r, c) entry
        """
        if not isinstance(space, StackedModule):
            methods.raiseerror(messages.Errors.UnsupportedForm, 'Grids need a stacked module, got {}'.format(space))
        k = space.rank
        if len(grid) != k or any(len(row) != k for row in grid):
            methods.raiseerror(messages.Errors.ShapeMismatch, '{} needs a {}x{} grid'.format(space, k, k))
        for row in grid:
            for entry in row:
                if not isinstance(entry, AlgebraElement) or entry.shape != space.algebra:
                    methods.raiseerror(messages.Errors.ShapeMismatch,
                                       'Grid entries must be elements of A={}'.format(space.algebra))
        return cls(space, np.block([[entry.dense() for entry in row] for row in grid]))

    @property
    def grid(self):
        space = self.space
        if not isinstance(space, StackedModule):
            methods.raiseerror(messages.Errors.UnsupportedForm, '{} has no grid form'.format(space))
        return [[AlgebraElement.from_dense(space.algebra, self._flat[space.row_slice(r), space.row_slice(c)])
                 for c in range(space.rank)] for r in range(space.rank)]

    def _call(self, x):
        return ModuleElement(self._codomain, self._flat @ x.frame)

    @property
    def adjoint(self):
        return MatrixOverA(self.space, adj(self._flat))

    def flatten(self):
        return self._flat


class RightMult(AdjointableOp):
    """ T_c(x) = x.c for a central element c, with adjoint T_{c*}
    """
    def __init__(self, space, c):
        super(RightMult, self).__init__(space, space)
        if not isinstance(c, AlgebraElement) or c.shape != space.algebra:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               'RightMult on {} needs an element of A={}'.format(space, space.algebra))
        if not is_central(c):
            methods.raiseerror(messages.Errors.NotCentral,
                               'Right multiplication is module-linear only for central elements')
        self._c = c

    @property
    def element(self):
        return self._c

    def _call(self, x):
        return ModuleElement(self._codomain, x.frame @ self._c.dense())

    @property
    def adjoint(self):
        return RightMult(self._domain, alg_adjoint(self._c))

    def flatten(self):
        values = self._c.scalar_values()
        return np.diag(values[self._domain.row_blocks])


class Ket(AdjointableOp):
    """ T_z : A -> X, a |-> z.a
    """
    def __init__(self, z):
        if not isinstance(z, ModuleElement):
            methods.raiseerror(messages.Errors.SpaceMismatch, 'Ket needs a module element')
        super(Ket, self).__init__(SelfModule(z.space.algebra), z.space)
        self._z = z

    @property
    def vector(self):
        return self._z

    def _call(self, a):
        return ModuleElement(self._codomain, self._z.frame @ a.frame)

    @property
    def adjoint(self):
        return Bra(self._z)

    def flatten(self):
        return self._z.frame


class Bra(AdjointableOp):
    """ z^ : X -> A, v |-> <z, v>
    """
    def __init__(self, z):
        if not isinstance(z, ModuleElement):
            methods.raiseerror(messages.Errors.SpaceMismatch, 'Bra needs a module element')
        super(Bra, self).__init__(z.space, SelfModule(z.space.algebra))
        self._z = z

    @property
    def vector(self):
        return self._z

    def _call(self, v):
        return ModuleElement(self._codomain, inner(self._z, v).dense())

    @property
    def adjoint(self):
        return Ket(self._z)

    def flatten(self):
        return adj(self._z.frame)


class Compose(AdjointableOp):
    """ Compose([A, B, C]) is A o B o C (C applied first)
    """
    def __init__(self, ops):
        ops = list(ops)
        if not ops:
            methods.raiseerror(messages.Errors.UnsupportedForm, 'Empty composition')
        for left, right in zip(ops[:-1], ops[1:]):
            if left.domain != right.codomain:
                methods.raiseerror(messages.Errors.DomainMismatch,
                                   'Cannot compose {} after {}'.format(left, right))
        super(Compose, self).__init__(ops[-1].domain, ops[0].codomain)
        self._ops = tuple(ops)

    @property
    def ops(self):
        return self._ops

    def _call(self, x):
        for op in reversed(self._ops):
            x = op._call(x)
        return x

    @property
    def adjoint(self):
        return Compose([op.adjoint for op in reversed(self._ops)])

    def flatten(self):
        flat = self._ops[0].flatten()
        for op in self._ops[1:]:
            flat = flat @ op.flatten()
        return flat


class Scale(AdjointableOp):
    """ s.T for a real scalar s
    """
    def __init__(self, scalar, op):
        if not isinstance(scalar, numbers.Real):
            methods.raiseerror(messages.Errors.UnsupportedForm,
                               'Scale takes a real scalar, got {!r}'.format(scalar))
        super(Scale, self).__init__(op.domain, op.codomain)
        self._scalar = float(scalar)
        self._op = op

    @property
    def scalar(self):
        return self._scalar

    @property
    def op(self):
        return self._op

    def _call(self, x):
        return self._op._call(x) * self._scalar

    @property
    def adjoint(self):
        return Scale(self._scalar, self._op.adjoint)

    def flatten(self):
        return self._scalar * self._op.flatten()


class Sum(AdjointableOp):
    def __init__(self, ops):
        ops = list(ops)
        if not ops:
            methods.raiseerror(messages.Errors.UnsupportedForm, 'Empty sum')
        for op in ops[1:]:
            if op.domain != ops[0].domain or op.codomain != ops[0].codomain:
                methods.raiseerror(messages.Errors.DomainMismatch,
                                   'Cannot add {} and {}'.format(ops[0], op))
        super(Sum, self).__init__(ops[0].domain, ops[0].codomain)
        self._ops = tuple(ops)

    @property
    def ops(self):
        return self._ops

    def _call(self, x):
        total = self._ops[0]._call(x)
        for op in self._ops[1:]:
            total = total + op._call(x)
        return total

    @property
    def adjoint(self):
        return Sum([op.adjoint for op in self._ops])

    def flatten(self):
        return sum(op.flatten() for op in self._ops[1:]) + self._ops[0].flatten()


########################################################################################################################
# Operations
########################################################################################################################


def identity(space):
    """ Identity map of a module space
    """
    return MatrixOverA.identity(space)


def apply(op, x):
    """ Apply an adjointable map to a module element

    :param op:  AdjointableOp
    :param x:   ModuleElement of op.domain
    :return: ModuleElement of op.codomain
    """
    if not isinstance(x, ModuleElement) or x.space != op.domain:
        methods.raiseerror(messages.Errors.DomainMismatch,
                           '{} cannot be applied to an element of {}'.format(
                               op, getattr(x, 'space', type(x).__name__)))
    return op._call(x)


def adjoint(op):
    return op.adjoint


def reduce(op):
    """ Collapse an endomorphism to its simplest equivalent form

    Products of right multiplications stay right multiplications, everything
    else becomes one MatrixOverA.
    """
    if isinstance(op, (MatrixOverA, RightMult)):
        return op
    if not op.is_endo:
        methods.raiseerror(messages.Errors.UnsupportedForm,
                           '{} maps between different spaces and has no reduced form'.format(op))
    central = _central_part(op)
    if central is not None:
        return RightMult(op.domain, central)
    return MatrixOverA(op.domain, op.flatten())


def _central_part(op):
    """ Central element c with op = T_c, or None if op is not built from right multiplications
    """
    if isinstance(op, RightMult):
        return op.element
    if isinstance(op, Scale):
        inner_part = _central_part(op.op)
        return None if inner_part is None else inner_part * op.scalar
    if isinstance(op, Compose):
        parts = [_central_part(o) for o in op.ops]
        if any(p is None for p in parts):
            return None
        total = parts[-1]
        for part in reversed(parts[:-1]):
            total = alg_mul(total, part)
        return total
    if isinstance(op, Sum):
        parts = [_central_part(o) for o in op.ops]
        if any(p is None for p in parts):
            return None
        total = parts[0]
        for part in parts[1:]:
            total = total + part
        return total
    return None


def _check_endo(op, name):
    if not op.is_endo:
        methods.raiseerror(messages.Errors.DomainMismatch,
                           '{} needs domain = codomain, got {}'.format(name, op))


def _probe_pairs(space, probes, seed):
    rng = methods.as_rng(seed)
    for _ in range(probes):
        yield space.random_element(rng), space.random_element(rng)


def self_adjoint_residual(op):
    """ ||F - F*||_F / max(||F||_F, 1) of the flattened map
    """
    _check_endo(op, 'self_adjoint_residual')
    flat = op.flatten()
    return fro_norm(flat - adj(flat)) / max(fro_norm(flat), 1.0)


def probe_self_adjoint_residual(op, probes=50, seed=0):
    """ max over random (x, y) of the relative distance between <Tx, y> and <x, Ty>
    """
    _check_endo(op, 'probe_self_adjoint_residual')
    worst = 0.0
    for x, y in _probe_pairs(op.domain, probes, seed):
        worst = max(worst, alg_distance(inner(op._call(x), y), inner(x, op._call(y))))
    return worst


def op_is_self_adjoint(op, probes=50, seed=0, tol=DEFAULT_TOL):
    """ Self-adjointness by the structural check and by random probes

    :param op:      AdjointableOp with domain = codomain
    :param probes:  number of random probe pairs
    :param seed:    probe seed
    :param tol:     Tolerance
    :return: bool
    :raise RepresentationMismatch: when the two checks disagree
    """
    _check_endo(op, 'op_is_self_adjoint')
    structural = self_adjoint_residual(op) <= tol.bound(1.0)
    probed = probe_self_adjoint_residual(op, probes, seed) <= tol.bound(1.0)
    if structural != probed:
        methods.raiseerror(messages.Errors.RepresentationMismatch,
                           'Structural ({}) and probe ({}) self-adjointness disagree for {}'.format(
                               structural, probed, op), logger)
    return structural


def op_distance(s, t):
    """ Relative Frobenius distance of two maps between the same spaces
    """
    if s.domain != t.domain or s.codomain != t.codomain:
        methods.raiseerror(messages.Errors.DomainMismatch, 'Cannot compare {} with {}'.format(s, t))
    return rel_residual(s.flatten(), t.flatten())


def op_equal(s, t, probes=50, seed=0, tol=DEFAULT_TOL):
    """ Equality of two maps, structurally and on random probes
    """
    structural = op_distance(s, t) <= tol.bound(1.0)
    rng = methods.as_rng(seed)
    worst = 0.0
    for _ in range(probes):
        x = s.domain.random_element(rng)
        sx, tx = s._call(x), t._call(x)
        worst = max(worst, fro_norm(sx.frame - tx.frame) / max(sx.fro(), tx.fro(), 1.0))
    probed = worst <= tol.bound(1.0)
    if structural != probed:
        methods.raiseerror(messages.Errors.RepresentationMismatch,
                           'Structural and probe equality disagree for {} and {}'.format(s, t), logger)
    return structural


def op_abs_squared(op):
    """ |T|^2 = T*T
    """
    _check_endo(op, 'op_abs_squared')
    if isinstance(op, RightMult):
        return RightMult(op.domain, alg_mul(alg_adjoint(op.element), op.element))
    if isinstance(op, Scale):
        return Scale(op.scalar ** 2, op_abs_squared(op.op))
    if isinstance(op, MatrixOverA):
        return MatrixOverA(op.space, adj(op.flatten()) @ op.flatten())
    return Compose([op.adjoint, op])


def op_abs(op, tol=DEFAULT_TOL):
    """ |T| = (T*T)^{1/2}

    :raise UnsupportedForm: for bare ket/bra maps
    """
    if isinstance(op, (Ket, Bra)):
        methods.raiseerror(messages.Errors.UnsupportedForm, 'No absolute value for {}'.format(op))
    _check_endo(op, 'op_abs')
    if isinstance(op, RightMult):
        return RightMult(op.domain, alg_abs(op.element, tol))
    if isinstance(op, Scale):
        return Scale(abs(op.scalar), op_abs(op.op, tol))
    flat = op.flatten()
    return MatrixOverA(op.domain, sqrt_psd(adj(flat) @ flat, tol))


def op_sqrt(op, tol=DEFAULT_TOL):
    """ Positive square root of a positive map
    """
    _check_endo(op, 'op_sqrt')
    op = reduce(op)
    if isinstance(op, RightMult):
        return RightMult(op.domain, AlgebraElement.from_dense(op.element.shape, sqrt_psd(op.element.dense(), tol)))
    return MatrixOverA(op.domain, sqrt_psd(op.flatten(), tol))


def op_inv_sqrt(op, delta=0.05, tol=DEFAULT_TOL):
    """ Inverse square root of a positive definite map with lambda_min >= delta*||T||
    """
    _check_endo(op, 'op_inv_sqrt')
    op = reduce(op)
    if isinstance(op, RightMult):
        return RightMult(op.domain, AlgebraElement.from_dense(op.element.shape,
                                                              inv_sqrt_pd(op.element.dense(), delta, tol)))
    return MatrixOverA(op.domain, inv_sqrt_pd(op.flatten(), delta, tol))


def op_min_singular(op):
    """ Smallest singular value of the map (0 means not invertible)
    """
    _check_endo(op, 'op_min_singular')
    return float(np.linalg.svd(op.flatten(), compute_uv=False)[-1])


def operator_norm(op):
    return float(np.linalg.norm(op.flatten(), 2))
