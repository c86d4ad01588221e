"""
Hypothesis validation of theorem instances

Residuals are recomputed from the raw frames and matrices of the instance,
never from the generator that built it.
"""
import numpy as np
from collections import namedtuple
from scipy import linalg
from pyhmt.tools import methods, messages
from pyhmt.handler.base import adj, fro_norm, rel_residual, hermitize
from pyhmt.handler.algebra import AlgebraElement
from pyhmt.handler.operators import AdjointableOp
from .base import BaseProcess, RealTriple, ConjugatePair, WeightVector, pair_residuals

ADMISSIBLE_BOUND = 1e-10
INVERTIBILITY_FLOOR = 1e-8

THEOREMS = ('prvi', 'cprvi', 'l2', 'bhk', 'eul-lagr', 'bundle', 'bohr-pq', 'bohr2', 'bohrn', 'bohrncor', 'amqm')

HypothesisReport = namedtuple('HypothesisReport', ['theorem_id', 'residuals', 'admissible', 'threshold'])


def _hermitian(m):
    return fro_norm(m - adj(m)) / max(fro_norm(m), 1.0)


def central_residual(m, algebra):
    a = AlgebraElement.from_dense(algebra, m)
    worst = 0.0
    for block in a.blocks:
        scalar = np.trace(block) / block.shape[0]
        worst = max(worst, fro_norm(block - scalar * np.eye(block.shape[0])) / max(fro_norm(block), 1.0))
    return worst


def _matrix(item):
    """ Matrix of an operator, an algebra element or a plain array
    """
    if isinstance(item, AdjointableOp):
        return item.flatten()
    if isinstance(item, AlgebraElement):
        return item.dense()
    return np.asarray(item, dtype=complex)


def _positive(value):
    return 0.0 if value > 0 else 1.0 + abs(value)


def family_residuals(mats, weights, guards):
    """ Residuals of the n-term hypotheses on the matrices F_1..F_n

    :param mats:    list of square matrices of one size
    :param weights: WeightVector
    :param guards:  Guards
    :return: dict
    """
    t = weights.array
    n = len(mats)
    eye = np.eye(mats[0].shape[0])
    squares = [adj(m) @ m for m in mats]
    residuals = dict(weights_sum=weights.sum_residual(),
                     weights_positive=max(0.0, guards.w_min - float(np.min(t))),
                     weights_count=0.0 if len(t) == n else 1.0,
                     abs_sum=rel_residual(sum(ti * sq for ti, sq in zip(t, squares)), eye),
                     self_adjoint_12=_hermitian(adj(mats[0]) @ mats[1]))
    if n >= 3:
        residuals['self_adjoint_tail'] = max(_hermitian(m) for m in mats[2:])
        # T_i commutes with |T_j| (i < j) iff it commutes with |T_j|^2
        worst = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                comm = mats[i] @ squares[j] - squares[j] @ mats[i]
                scale = max(fro_norm(mats[i]) * fro_norm(squares[j]), 1.0)
                worst = max(worst, fro_norm(comm) / scale)
        residuals['commutation'] = worst
        sigma = max(float(linalg.svdvals(mats[0])[-1]), float(linalg.svdvals(mats[1])[-1]))
        residuals['invertible'] = max(0.0, INVERTIBILITY_FLOOR - sigma)
        reduced = eye - t[-1] * squares[-1]
        residuals['conditioning'] = max(0.0, guards.delta - float(linalg.eigvalsh(hermitize(reduced))[0]))
    return residuals


class HypothesisProcess(BaseProcess):
    """ check_hypotheses for every theorem id
    """
    def check_hypotheses(self, inst):
        """ Re-derive every hypothesis residual of a TheoremInstance

        :param inst:    TheoremInstance
        :return: HypothesisReport, admissible iff all residuals <= 1e-10
        """
        handler = getattr(self, '_hyp_{}'.format(inst.theorem_id.replace('-', '_')), None)
        if handler is None:
            methods.raiseerror(messages.Errors.UnknownTheorem,
                               'No hypotheses known for "{}"'.format(inst.theorem_id), self.logger)
        residuals = dict((key, float(value)) for key, value in handler(inst).items())
        admissible = all(value <= ADMISSIBLE_BOUND for value in residuals.values())
        if not admissible:
            self.logger.debug('Hypotheses::Inadmissible [{}] seed={} {}'.format(
                inst.theorem_id, inst.seed, residuals))
        return HypothesisReport(theorem_id=inst.theorem_id, residuals=residuals,
                                admissible=admissible, threshold=ADMISSIBLE_BOUND)

    @staticmethod
    def _inst_triple(inst):
        triple = inst.scalars
        return triple if isinstance(triple, RealTriple) else RealTriple(*triple)

    def _pair(self, inst, first, second):
        self_adjoint, constraint = pair_residuals(first, second, self._inst_triple(inst))
        return dict(self_adjoint=self_adjoint, constraint=constraint)

    def _hyp_prvi(self, inst):
        t, s = inst.operators
        if t.domain != s.domain or t.codomain != s.codomain:
            methods.raiseerror(messages.Errors.DomainMismatch, 'T and S must map between the same spaces')
        return self._pair(inst, t.flatten(), s.flatten())

    def _hyp_bohr2(self, inst):
        residuals = self._hyp_prvi(inst)
        a, b, g = self._inst_triple(inst)
        residuals.update(alpha_positive=_positive(a), beta_positive=_positive(b),
                         alpha_beta_sum=abs(a + b - 1.0), gamma_unit=abs(g - 1.0))
        return residuals

    def _hyp_cprvi(self, inst):
        x, y = inst.vectors[:2]
        if x.space != y.space:
            methods.raiseerror(messages.Errors.SpaceMismatch, 'x and y live in different modules')
        return self._pair(inst, x.frame, y.frame)

    _hyp_l2 = _hyp_cprvi
    _hyp_bhk = _hyp_cprvi

    def _hyp_eul_lagr(self, inst):
        a, b = inst.operators[:2]
        residuals = self._pair(inst, a.dense(), b.dense())
        residuals.update(central_a=central_residual(a.dense(), a.shape),
                         central_b=central_residual(b.dense(), b.shape))
        return residuals

    def _hyp_bundle(self, inst):
        f, g = [np.asarray(v) for v in inst.operators[:2]]
        a, b, c = self._inst_triple(inst)
        fr, gr = np.real(f), np.real(g)
        return dict(real_f=float(np.max(np.abs(np.imag(f)))),
                    real_g=float(np.max(np.abs(np.imag(g)))),
                    constraint=float(np.max(np.abs(a * fr ** 2 + b * gr ** 2 - c))) / max(abs(c), 1.0))

    def _hyp_bohr_pq(self, inst):
        pair = inst.scalars
        p, q = (pair.p, pair.q) if isinstance(pair, ConjugatePair) else pair
        return dict(conjugate=abs(1.0 / p + 1.0 / q - 1.0),
                    guard=max(0.0, 1.0 + self._guards.eps_p - p))

    def _hyp_bohrn(self, inst):
        mats = [_matrix(op) for op in inst.operators]
        return family_residuals(mats, self._weights_of(inst), self._guards)

    def _hyp_bohrncor(self, inst):
        residuals = self._hyp_bohrn(inst)
        residuals['central'] = max(central_residual(a.dense(), a.shape) for a in inst.operators)
        return residuals

    def _hyp_amqm(self, inst):
        weights = self._weights_of(inst)
        mats = [np.asarray(m) for m in inst.operators]
        square = all(m.ndim == 2 and m.shape[0] == m.shape[1] and m.shape == mats[0].shape for m in mats)
        return dict(weights_sum=weights.sum_residual(),
                    weights_nonnegative=max(0.0, -float(np.min(weights.array))),
                    weights_count=0.0 if weights.n == len(mats) else 1.0,
                    square=0.0 if square else 1.0)

    @staticmethod
    def _weights_of(inst):
        weights = inst.scalars
        return weights if isinstance(weights, WeightVector) else WeightVector(weights, validate=False)
