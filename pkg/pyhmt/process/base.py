import logging
import numpy as np
from collections import namedtuple
from pyhmt.tools import methods, messages
from pyhmt.handler.base import DEFAULT_TOL, adj, fro_norm, random_unitary


class Guards(namedtuple('Guards', ['eps_p', 'w_min', 'delta', 'phi_min', 'retries'])):
    """ Numerical guards of the instance generators

    eps_p:      p >= 1 + eps_p for conjugate exponents
    w_min:      smallest admissible weight
    delta:      conditioning floor of I - t_n|T_n|^2
    phi_min:    lower bound of |f_1| on the spectrum (keeps T_1 invertible)
    retries:    redraws per spectral sample before giving up
    """
    __slots__ = ()

    def __new__(cls, eps_p=0.05, w_min=0.02, delta=0.05, phi_min=0.1, retries=32):
        if not 0 < eps_p <= 1:
            methods.raiseerror(messages.Errors.ConfigError, 'eps_p must be in (0, 1], got {}'.format(eps_p))
        if not 0 < w_min < 0.5:
            methods.raiseerror(messages.Errors.ConfigError, 'w_min must be in (0, 1/2), got {}'.format(w_min))
        if not 0 < delta < 1:
            methods.raiseerror(messages.Errors.ConfigError, 'delta must be in (0, 1), got {}'.format(delta))
        if not 0 < phi_min <= 1:
            methods.raiseerror(messages.Errors.ConfigError, 'phi_min must be in (0, 1], got {}'.format(phi_min))
        if int(retries) != retries or retries < 1:
            methods.raiseerror(messages.Errors.ConfigError, 'retries must be a positive integer')
        return super(Guards, cls).__new__(cls, float(eps_p), float(w_min), float(delta), float(phi_min),
                                          int(retries))


class RealTriple(namedtuple('RealTriple', ['alpha', 'beta', 'gamma'])):
    """ Coefficients of the conic alpha*u^2 + beta*v^2 = gamma
    """
    __slots__ = ()

    def __new__(cls, alpha, beta, gamma):
        values = [float(v) for v in (alpha, beta, gamma)]
        if not all(np.isfinite(values)):
            methods.raiseerror(messages.Errors.NonFinite, 'Triple must be finite, got {}'.format(values))
        return super(RealTriple, cls).__new__(cls, *values)

    def feasible(self):
        a, b, g = self
        if a == 0 and b == 0:
            return g == 0
        if a == 0:
            return g * b >= 0
        if b == 0:
            return g * a >= 0
        if a > 0 and b > 0:
            return g >= 0
        if a < 0 and b < 0:
            return g <= 0
        return True


class ConjugatePair(namedtuple('ConjugatePair', ['p', 'q'])):
    """ Conjugate exponents 1/p + 1/q = 1
    """
    __slots__ = ()

    def __new__(cls, p, q=None):
        p = float(p)
        if not np.isfinite(p) or p <= 1:
            methods.raiseerror(messages.Errors.GuardViolation, 'p must be > 1, got {}'.format(p))
        q = p / (p - 1) if q is None else float(q)
        if q <= 1 or abs(1 / p + 1 / q - 1) > 1e-14:
            methods.raiseerror(messages.Errors.GuardViolation, 'p={} and q={} are not conjugate'.format(p, q))
        return super(ConjugatePair, cls).__new__(cls, p, q)

    def check_guard(self, eps_p):
        if self.p < 1 + eps_p:
            methods.raiseerror(messages.Errors.GuardViolation,
                               'p={} is below the guard 1 + {}'.format(self.p, eps_p))
        return self

    def swap(self):
        return ConjugatePair(self.q, self.p)


class WeightVector(namedtuple('WeightVector', ['t'])):
    """ Convex weights t_1..t_n

    :param t:           weights
    :param w_min:       smallest admissible weight (0 allows zeros)
    :param validate:    set False to hold a deliberately broken vector
    """
    __slots__ = ()

    def __new__(cls, t, w_min=0.02, validate=True):
        t = tuple(float(v) for v in np.asarray(t, dtype=float).reshape(-1))
        obj = super(WeightVector, cls).__new__(cls, t)
        if validate:
            obj.validate(w_min)
        return obj

    @property
    def n(self):
        return len(self.t)

    @property
    def array(self):
        return np.array(self.t)

    def sum_residual(self):
        return abs(float(np.sum(self.t)) - 1.0)

    def validate(self, w_min=0.02):
        if not self.t or not all(np.isfinite(self.t)):
            methods.raiseerror(messages.Errors.GuardViolation, 'Weights must be finite and nonempty')
        if self.sum_residual() > 1e-14 * max(1, len(self.t)):
            methods.raiseerror(messages.Errors.GuardViolation,
                               'Weights sum to {!r}, not 1'.format(float(np.sum(self.t))))
        if min(self.t) < w_min or min(self.t) < 0:
            methods.raiseerror(messages.Errors.GuardViolation,
                               'Weight {} is below the guard {}'.format(min(self.t), w_min))
        return self

    def scaled(self, factor):
        """ Rescaled copy without validation
        """
        return WeightVector(self.array * factor, validate=False)


TheoremInstance = namedtuple('TheoremInstance', ['theorem_id', 'scalars', 'operators', 'vectors', 'seed', 'space'])
TheoremInstance.__new__.__defaults__ = ((), (), None, None)


########################################################################################################################
# Spectral helpers shared by the generators
########################################################################################################################


def sample_conic(triple, rng, size):
    """ Draw real points (u, v) on alpha*u^2 + beta*v^2 = gamma

    Ellipses are sampled by angle, hyperbolas by a bounded hyperbolic angle and
    degenerate conics (one coefficient zero) leave the free coordinate Gaussian.

    :param triple:  RealTriple
    :param rng:     numpy Generator
    :param size:    number of points
    :return: (u, v) arrays
    """
    if not triple.feasible():
        methods.raiseerror(messages.Errors.InfeasibleConic,
                           'alpha u^2 + beta v^2 = gamma has no real points for {}'.format(tuple(triple)))
    a, b, g = triple
    if (a < 0 and b <= 0) or (a <= 0 and b < 0) or (a < 0 < b):
        a, b, g = -a, -b, -g
    if a == 0 and b == 0:
        return rng.standard_normal(size), rng.standard_normal(size)
    if b == 0:
        sign = rng.choice([-1.0, 1.0], size)
        return sign * np.sqrt(g / a), rng.standard_normal(size)
    if a == 0:
        sign = rng.choice([-1.0, 1.0], size)
        return rng.standard_normal(size), sign * np.sqrt(g / b)
    if b > 0:
        # ellipse (a, b > 0, g >= 0)
        theta = rng.uniform(0, 2 * np.pi, size)
        return np.sqrt(g / a) * np.cos(theta), np.sqrt(g / b) * np.sin(theta)
    # a > 0 > b
    s = rng.uniform(-1.5, 1.5, size)
    su, sv = rng.choice([-1.0, 1.0], size), rng.choice([-1.0, 1.0], size)
    if g > 0:
        return su * np.sqrt(g / a) * np.cosh(s), sv * np.sqrt(g / -b) * np.sinh(s)
    if g < 0:
        return su * np.sqrt(-g / a) * np.sinh(s), sv * np.sqrt(g / b) * np.cosh(s)
    r = rng.standard_normal(size)
    return r, sv * r * np.sqrt(a / -b)


def block_rows(space, i):
    """ Frame rows carrying algebra block i
    """
    return np.flatnonzero(space.row_blocks == i)


def scatter_blocks(space, blocks):
    """ Assemble a frame-row matrix from one square matrix per algebra block
    """
    flat = np.zeros((space.rows, space.rows), dtype=complex)
    for i, block in enumerate(blocks):
        rows = block_rows(space, i)
        flat[np.ix_(rows, rows)] = block
    return flat


def spectral(v, values):
    """ V diag(values) V*
    """
    return (v * values) @ adj(v)


def pair_residuals(t_flat, s_flat, triple):
    """ Relative residuals of T*S = (T*S)* and alpha T*T + beta S*S = gamma I
    """
    ts = adj(t_flat) @ s_flat
    tt = adj(t_flat) @ t_flat
    ss = adj(s_flat) @ s_flat
    eye = np.eye(tt.shape[0])
    a, b, g = triple
    self_adjoint = fro_norm(ts - adj(ts)) / max(fro_norm(ts), 1.0)
    scale = abs(a) * fro_norm(tt) + abs(b) * fro_norm(ss) + abs(g) * fro_norm(eye)
    constraint = fro_norm(a * tt + b * ss - g * eye) / max(scale, 1.0)
    return self_adjoint, constraint


class BaseProcess(object):
    """ Seeded generators of admissible theorem instances
    """
    def __init__(self, guards=None, tol=DEFAULT_TOL):
        """
        :param guards:  Guards, defaults if not given
        :param tol:     Tolerance of the numerical kernel
        """
        self._guards = guards if guards is not None else Guards()
        self._tol = tol
        self.logger = logging.getLogger('pyhmt.process')
        self.logger.debug('__init__::Initiated_Generators::{}'.format(self._guards))

    @property
    def guards(self):
        return self._guards

    @property
    def tol(self):
        return self._tol

    @staticmethod
    def rng(seed):
        return methods.as_rng(seed)

    def draw_weights(self, n, rng):
        """ Dirichlet weights shifted so that every t_i >= w_min
        """
        if int(n) != n or n < 1:
            methods.raiseerror(messages.Errors.ConfigError, 'n must be a positive integer, got {}'.format(n))
        w_min = self._guards.w_min
        if n * w_min >= 1:
            methods.raiseerror(messages.Errors.GuardViolation,
                               'w_min={} leaves no room for {} weights'.format(w_min, n))
        t = w_min + (1 - n * w_min) * rng.dirichlet(np.ones(int(n)))
        return WeightVector(t / np.sum(t), w_min=w_min)

    def draw_conjugate(self, p):
        return ConjugatePair(p).check_guard(self._guards.eps_p)

    @staticmethod
    def eigenbasis(n, rng):
        return random_unitary(n, rng)

