"""
Generators of weighted families for the n-term inequalities
"""
import numpy as np
from pyhmt.tools import methods, messages
from pyhmt.handler.base import complex_gaussian
from pyhmt.handler.algebra import AlgebraShape, AlgebraElement
from pyhmt.handler.operators import MatrixOverA
from .base import BaseProcess, WeightVector, block_rows, scatter_blocks, spectral
from .hypotheses import ADMISSIBLE_BOUND, family_residuals, central_residual


class FamilyProcess(BaseProcess):
    """ Commuting functional families T_i = f_i(H) with sum t_i |T_i|^2 = I
    """
    def _ellipsoid_point(self, t, rng, label):
        """ Real f with sum t_i f_i^2 = 1, |f_1| >= phi_min and t_n f_n^2 <= 1 - delta
        """
        guards = self._guards
        for attempt in range(guards.retries):
            w = rng.standard_normal(len(t))
            w /= np.linalg.norm(w)
            f = w / np.sqrt(t)
            if abs(f[0]) >= guards.phi_min and t[-1] * f[-1] ** 2 <= 1 - guards.delta:
                return f
            self.logger.debug('Generator::Redraw [{}] attempt={}'.format(label, attempt + 1))
        methods.raiseerror(messages.Errors.GenerationFailure,
                           'No admissible spectral sample for [{}] after {} retries'.format(label, guards.retries),
                           self.logger)

    def _weights(self, weights, n, rng):
        if weights is None:
            return self.draw_weights(n, rng)
        if not isinstance(weights, WeightVector):
            weights = WeightVector(weights, w_min=self._guards.w_min)
        if weights.n != n:
            methods.raiseerror(messages.Errors.ShapeMismatch,
                               '{} weights given for a family of {}'.format(weights.n, n))
        return weights

    def _validate(self, mats, weights, label, extra=None):
        """ Re-check a generated family against the n-term hypotheses

        :raise GenerationFailure: when a residual exceeds the admissibility bound
        """
        residuals = family_residuals(mats, weights, self._guards)
        residuals.update(extra or {})
        worst = max(residuals, key=residuals.get)
        if residuals[worst] > ADMISSIBLE_BOUND:
            methods.raiseerror(messages.Errors.GenerationFailure, 'Generated [{}] family is inadmissible ({} = {:.3e})'
                               .format(label, worst, residuals[worst]), self.logger)

    def gen_bohrn_family(self, space, weights, n, seed, twist=True):
        """ Operators T_1..T_n with T_1*T_2 self-adjoint, sum t_i|T_i|^2 = I,
        T_3..T_n self-adjoint, T_i|T_j| = |T_j|T_i and T_1 invertible

        Per algebra block all T_i share one eigenbasis V; the spectral values are
        points of the ellipsoid sum t_i f_i^2 = 1. T_1 and T_2 are optionally
        multiplied by a common unitary U = V diag(exp(i theta)) V*.

        :param space:   ModuleSpace (DirectSum(k) in the theorem)
        :param weights: WeightVector, drawn if None
        :param n:       family size (>= 2)
        :param seed:    int seed or numpy Generator
        :param twist:   apply the common phase to T_1 and T_2
        :return: (weights, [T_1, ..., T_n])
        """
        if int(n) != n or n < 2:
            methods.raiseerror(messages.Errors.ConfigError, 'n must be an integer >= 2, got {}'.format(n))
        n = int(n)
        rng = self.rng(seed)
        weights = self._weights(weights, n, rng)
        t = weights.array
        blocks = [[] for _ in range(n)]
        for i in range(len(space.algebra.block_dims)):
            m = len(block_rows(space, i))
            v = self.eigenbasis(m, rng)
            values = np.array([self._ellipsoid_point(t, rng, 'bohrn') for _ in range(m)]).T
            phase = np.exp(1j * rng.uniform(0, 2 * np.pi, m)) if twist else np.ones(m)
            for l in range(n):
                spectrum = values[l] * phase if l < 2 else values[l]
                blocks[l].append(spectral(v, spectrum))
        ops = [MatrixOverA(space, scatter_blocks(space, blocks[l])) for l in range(n)]
        self._validate([op.flatten() for op in ops], weights, 'bohrn')
        self.logger.debug('Generator::Family [bohrn] {} n={}'.format(space, n))
        return weights, ops

    def gen_central_family(self, algebra, weights, n, seed, twist=True):
        """ Central a_1..a_n with sum t_i|a_i|^2 = e, a_1*a_2 self-adjoint,
        a_3..a_n self-adjoint and a_1 invertible

        :return: (weights, [a_1, ..., a_n])
        """
        if int(n) != n or n < 2:
            methods.raiseerror(messages.Errors.ConfigError, 'n must be an integer >= 2, got {}'.format(n))
        n = int(n)
        if not isinstance(algebra, AlgebraShape):
            algebra = AlgebraShape(algebra)
        rng = self.rng(seed)
        weights = self._weights(weights, n, rng)
        t = weights.array
        count = len(algebra.block_dims)
        values = np.array([self._ellipsoid_point(t, rng, 'bohrncor') for _ in range(count)]).T
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi, count)) if twist else np.ones(count)
        elements = [AlgebraElement.scalars(algebra, values[l] * phase if l < 2 else values[l]) for l in range(n)]
        self._validate([a.dense() for a in elements], weights, 'bohrncor',
                       dict(central=max(central_residual(a.dense(), algebra) for a in elements)))
        return weights, elements

    def gen_amqm_family(self, dim, n, seed):
        """ Square matrices A_1..A_n and Dirichlet weights for |sum t_i A_i|^2 <= sum t_i |A_i|^2

        :return: (weights, [A_1, ..., A_n])
        """
        if int(n) != n or n < 1:
            methods.raiseerror(messages.Errors.ConfigError, 'n must be a positive integer, got {}'.format(n))
        rng = self.rng(seed)
        t = rng.dirichlet(np.ones(int(n)))
        weights = WeightVector(t / np.sum(t), w_min=0.0)
        return weights, [complex_gaussian((int(dim), int(dim)), rng) for _ in range(int(n))]
