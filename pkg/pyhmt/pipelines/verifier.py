"""
Per-theorem checkers

Identities are scored by the relative Frobenius residual of LHS - RHS and
order relations by the Loewner slack lambda_min(RHS - LHS). Instances that
fail their hypotheses are refused and never scored.
"""
import logging
import numpy as np
from collections import namedtuple
from pyhmt.tools import methods, messages
from pyhmt.handler.base import adj, fro_norm, op_norm, rel_residual, loewner_slack
from pyhmt.handler.algebra import AlgebraElement, alg_mul, alg_adjoint
from pyhmt.handler.module import SelfModule, inner, act, self_element, fiber_inner, mod_norm
from pyhmt.handler.operators import Ket, Bra, Compose, Scale, Sum, RightMult, apply, identity, reduce, \
    op_abs_squared, op_sqrt, op_inv_sqrt, op_distance, op_is_self_adjoint, op_min_singular, \
    self_adjoint_residual
from pyhmt.process import Process, TheoremInstance, ConjugatePair
from pyhmt.process.hypotheses import INVERTIBILITY_FLOOR

TrialResult = namedtuple('TrialResult', ['theorem_id', 'seed', 'hypothesis_ok', 'refused',
                                         'identity_residual', 'loewner_slack', 'slack_scale',
                                         'residuals', 'slacks', 'info', 'witness', 'notes', 'passed'])

InductionReplay = namedtuple('InductionReplay', ['residuals', 'slacks', 'info', 'weights', 'ops', 'y', 'w'])

Witness = namedtuple('Witness', ['theorem_id', 'p', 'x', 'y', 'violation', 'predicted', 'attempts'])

EQUALITY_BOUND = 1e-10
ROUNDING_BOUND = 1e-12
CROSS_ORACLE_BOUND = 1e-10
WITNESSES = ('bohr-i', 'bohr-ii', 'bohr-q')


def abs2(x):
    """ |x|^2 = <x, x> as a dense block-diagonal matrix
    """
    return inner(x, x).dense()


def scaled_slack(lhs, rhs):
    """ (lambda_min(rhs - lhs), max(||rhs||, 1))
    """
    return loewner_slack(lhs, rhs), max(op_norm(rhs), 1.0)


def frame_residual(x, y):
    return fro_norm(x.frame - y.frame) / max(x.fro(), y.fro(), 1.0)


class Verifier(object):
    """ Checkers for every theorem id

    :param process: Process used for hypothesis checks and guards
    :param tol:     verdict tolerance of residuals and scaled slacks
    :param probes:  random probes of the operator self-adjointness checks
    """
    def __init__(self, process=None, tol=1e-8, probes=50):
        self._process = process if process is not None else Process()
        self._tol = float(tol)
        self._probes = int(probes)
        self.logger = logging.getLogger('pyhmt.verifier')

    @property
    def process(self):
        return self._process

    @property
    def tol(self):
        return self._tol

    # result assembly
    def _refuse(self, inst, report):
        failing = sorted(key for key, value in report.residuals.items() if value > report.threshold)
        self.logger.info('Verifier::Refused [{}] seed={} failing={}'.format(inst.theorem_id, inst.seed, failing))
        return TrialResult(theorem_id=inst.theorem_id, seed=inst.seed, hypothesis_ok=False, refused=True,
                           identity_residual=None, loewner_slack=None, slack_scale=None,
                           residuals=dict(report.residuals), slacks={}, info={}, witness=None,
                           notes='refused: {}'.format(', '.join(failing)), passed=False)

    def _result(self, inst, identity_residual=None, order=None, residuals=None, slacks=None, info=None,
                witness=None, notes=''):
        residuals = dict(residuals or {})
        slacks = dict(slacks or {})
        slack, scale = (None, None) if order is None else scaled_slack(*order)
        passed = True
        if identity_residual is not None:
            passed &= identity_residual <= self._tol
        if slack is not None:
            passed &= slack / scale >= -self._tol
        passed &= all(value <= self._tol for value in residuals.values())
        passed &= all(value >= -self._tol for value in slacks.values())
        if not passed:
            self.logger.info('Verifier::Failed [{}] seed={}'.format(inst.theorem_id, inst.seed))
        return TrialResult(theorem_id=inst.theorem_id, seed=inst.seed, hypothesis_ok=True, refused=False,
                           identity_residual=identity_residual, loewner_slack=slack, slack_scale=scale,
                           residuals=residuals, slacks=slacks, info=dict(info or {}), witness=witness,
                           notes=notes, passed=bool(passed))

    def _admit(self, inst):
        report = self._process.check_hypotheses(inst)
        return report if report.admissible else None, report

    ####################################################################################################################
    # Identity theorems
    ####################################################################################################################

    def verify_prvi(self, inst):
        """ alpha beta |Tx+Sy|^2 + |beta Sx - alpha Ty|^2 = beta gamma |x|^2 + alpha gamma |y|^2

        :param inst: TheoremInstance with operators (T, S) and vectors (x, y)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        lhs, rhs = self._prvi_sides(inst)
        return self._result(inst, identity_residual=rel_residual(lhs, rhs))

    @staticmethod
    def _prvi_sides(inst):
        t, s = inst.operators
        x, y = inst.vectors
        a, b, g = inst.scalars
        tx, ty, sx, sy = apply(t, x), apply(t, y), apply(s, x), apply(s, y)
        lhs = a * b * abs2(tx + sy) + abs2(sx * b - ty * a)
        rhs = b * g * abs2(x) + a * g * abs2(y)
        return lhs, rhs

    def verify_cprvi(self, inst):
        """ alpha beta |xa+yb|^2 + |beta ya - alpha xb|^2 = beta gamma |a|^2 + alpha gamma |b|^2

        The identity is computed directly and again through the maps T_x, T_y : A -> X,
        which turn the instance into one of the operator identity on A.

        :param inst: TheoremInstance with vectors (x, y) and operators (a, b) in A
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        x, y = inst.vectors
        a, b = inst.operators
        alpha, beta, gamma = inst.scalars
        lhs = alpha * beta * abs2(act(x, a) + act(y, b)) + abs2(act(y, a) * beta - act(x, b) * alpha)
        rhs = beta * gamma * alg_mul(alg_adjoint(a), a).dense() + alpha * gamma * alg_mul(alg_adjoint(b), b).dense()
        direct = rel_residual(lhs, rhs)

        # proof path
        kx, ky = Ket(x), Ket(y)
        algebra_space = SelfModule(x.space.algebra)
        cross = reduce(Compose([Bra(x), Ket(y)]))
        constraint = Sum([Scale(alpha, Compose([kx.adjoint, kx])), Scale(beta, Compose([ky.adjoint, ky]))])
        ket_constraint = op_distance(constraint, Scale(gamma, identity(algebra_space)))
        ket_self_adjoint = op_is_self_adjoint(cross, self._probes, inst.seed or 0)
        lifted = TheoremInstance('prvi', inst.scalars, (kx, ky), (self_element(a), self_element(b)),
                                 inst.seed, algebra_space)
        proof = self.verify_prvi(lifted)
        proof_lhs, _ = self._prvi_sides(lifted)
        residuals = dict(ket_constraint=ket_constraint,
                         ket_self_adjoint=self_adjoint_residual(cross),
                         cross_oracle=rel_residual(lhs, proof_lhs))
        info = dict(proof_residual=proof.identity_residual, ket_self_adjoint_probe=ket_self_adjoint)
        if proof.identity_residual is None or abs(direct - proof.identity_residual) > CROSS_ORACLE_BOUND:
            residuals['cross_oracle'] = max(residuals['cross_oracle'], 1.0)
        proof_residual = 1.0 if proof.identity_residual is None else proof.identity_residual
        return self._result(inst, identity_residual=max(direct, proof_residual), residuals=residuals,
                            info=info)

    def verify_l2(self, inst):
        """ Sequence form over l2(A), summed component by component

        :param inst: TheoremInstance with vectors ((a_i), (b_i)) in SeqModule and operators (a, b)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        x, y = inst.vectors
        a, b = inst.operators
        alpha, beta, gamma = inst.scalars
        lhs = np.zeros((a.shape.size, a.shape.size), dtype=complex)
        for ai, bi in zip(x.payload, y.payload):
            first = alg_mul(ai, a) + alg_mul(bi, b)
            second = alg_mul(bi, a) * beta - alg_mul(ai, b) * alpha
            lhs += alpha * beta * alg_mul(alg_adjoint(first), first).dense()
            lhs += alg_mul(alg_adjoint(second), second).dense()
        rhs = beta * gamma * alg_mul(alg_adjoint(a), a).dense() + alpha * gamma * alg_mul(alg_adjoint(b), b).dense()
        return self._result(inst, identity_residual=rel_residual(lhs, rhs))

    def verify_bhk(self, inst):
        """ Tuple form over B(H, K)^n with d x d test matrices A, B

        :param inst: TheoremInstance with vectors ((T_i), (S_i)) in RectTuple and operators (A, B)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        x, y = inst.vectors
        big_a, big_b = [op.dense() if isinstance(op, AlgebraElement) else np.asarray(op, dtype=complex)
                        for op in inst.operators]
        alpha, beta, gamma = inst.scalars
        lhs = np.zeros(big_a.shape, dtype=complex)
        for ti, si in zip(x.payload, y.payload):
            first = ti @ big_a + si @ big_b
            second = beta * si @ big_a - alpha * ti @ big_b
            lhs += alpha * beta * adj(first) @ first + adj(second) @ second
        rhs = beta * gamma * adj(big_a) @ big_a + alpha * gamma * adj(big_b) @ big_b
        return self._result(inst, identity_residual=rel_residual(lhs, rhs))

    def verify_eul_lagr(self, inst):
        """ alpha beta |xa + yb|^2 + |beta xb - alpha ya|^2 = beta gamma |x|^2 + alpha gamma |y|^2 for central a, b

        Also replayed through the right multiplications T_a, T_b.

        :param inst: TheoremInstance with operators (a, b) central and vectors (x, y)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        x, y = inst.vectors
        a, b = inst.operators
        alpha, beta, gamma = inst.scalars
        lhs = alpha * beta * abs2(act(x, a) + act(y, b)) + abs2(act(x, b) * beta - act(y, a) * alpha)
        rhs = beta * gamma * abs2(x) + alpha * gamma * abs2(y)
        direct = rel_residual(lhs, rhs)

        ta, tb = RightMult(x.space, a), RightMult(x.space, b)
        product = reduce(Compose([ta.adjoint, tb]))
        lifted = TheoremInstance('prvi', inst.scalars, (ta, tb), (x, y), inst.seed, x.space)
        proof = self.verify_prvi(lifted)
        proof_lhs, _ = self._prvi_sides(lifted)
        residuals = dict(right_mult_product=rel_residual(product.flatten(),
                                                         RightMult(x.space, alg_mul(alg_adjoint(a), b)).flatten()),
                         cross_oracle=rel_residual(lhs, proof_lhs))
        if proof.identity_residual is None:
            residuals['cross_oracle'] = 1.0
        return self._result(inst, identity_residual=max(direct, proof.identity_residual or 0.0),
                            residuals=residuals, info=dict(proof_residual=proof.identity_residual))

    def verify_bundle(self, inst):
        """ Bundle identity over a finite K, pointwise and as a sup

        :param inst: TheoremInstance with operators (f, g) real arrays and vectors (phi, psi)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        phi, psi = inst.vectors
        f, g = [np.real(np.asarray(v)) for v in inst.operators[:2]]
        alpha, beta, gamma = inst.scalars
        space = phi.space
        lhs, rhs = [], []
        for t, (u, v) in enumerate(zip(phi.payload, psi.payload)):
            first = u * f[t] + v * g[t]
            second = beta * u * g[t] - alpha * v * f[t]
            lhs.append(alpha * beta * fiber_inner(first, first).real + fiber_inner(second, second).real)
            rhs.append(beta * gamma * fiber_inner(u, u).real + alpha * gamma * fiber_inner(v, v).real)
        lhs, rhs = np.array(lhs), np.array(rhs)
        pointwise = float(np.max(np.abs(lhs - rhs) / np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)))
        sup = abs(float(np.max(lhs)) - float(np.max(rhs))) / max(abs(float(np.max(lhs))), abs(float(np.max(rhs))), 1.0)

        fa, gb = space.function(f), space.function(g)
        module_lhs = alpha * beta * abs2(act(phi, fa) + act(psi, gb)) + abs2(act(phi, gb) * beta - act(psi, fa) * alpha)
        module_path = float(np.max(np.abs(np.real(np.diag(module_lhs)) - lhs))) / max(float(np.max(np.abs(lhs))), 1.0)
        notes = 'classical Euler-Lagrange' if space.point_count == 1 else ''
        return self._result(inst, identity_residual=max(pointwise, sup),
                            residuals=dict(pointwise=pointwise, sup=sup, module_path=module_path),
                            info=dict(sup_lhs=float(np.max(lhs)), sup_rhs=float(np.max(rhs))), notes=notes)

    def verify_bohr_pq(self, inst):
        """ |x-y|^2 + 1/(p-1)|(1-p)x-y|^2 = p|x|^2 + q|y|^2, its q-form, and the verdicts of (i) and (ii)

        RHS - (|x-y|^2 + |(1-p)x-y|^2) equals (1/(p-1) - 1)|(1-p)x-y|^2, so (i) holds for a
        pair iff p <= 2 or (1-p)x = y, and (ii) iff p >= 2 or (1-p)x = y.

        :param inst: TheoremInstance with scalars ConjugatePair and vectors (x, y)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        pair = inst.scalars if isinstance(inst.scalars, ConjugatePair) else ConjugatePair(*inst.scalars)
        p, q = pair
        x, y = inst.vectors
        z = x * (1 - p) - y
        zq = y * (1 - q) - x
        rhs = p * abs2(x) + q * abs2(y)
        xyp = abs2(x - y) + abs2(z) / (p - 1)
        q_form = abs2(y - x) + abs2(zq) / (q - 1)
        lhs_i = abs2(x - y) + abs2(z)
        coefficient = 1 / (p - 1) - 1
        decomposition = rel_residual(rhs - lhs_i, coefficient * abs2(z))

        # every bound below is homogeneous of degree 2 in (x, y); x = y = 0 is an equality case
        size = max(op_norm(rhs), op_norm(lhs_i))
        magnitude = max(mod_norm(x * (1 - p)), mod_norm(y))
        slack_i = loewner_slack(lhs_i, rhs) / size if size > 0 else 0.0
        slack_ii = loewner_slack(rhs, lhs_i) / size if size > 0 else 0.0
        equality_predicted = abs(p - 2) <= 1e-12 or mod_norm(z) <= EQUALITY_BOUND * magnitude
        equality_observed = op_norm(rhs - lhs_i) <= (abs(coefficient) * (EQUALITY_BOUND * magnitude) ** 2
                                                     + ROUNDING_BOUND * size)
        holds_i = slack_i >= -self._tol
        holds_ii = slack_ii >= -self._tol
        predicted_i = p <= 2 or equality_predicted
        predicted_ii = p >= 2 or equality_predicted

        residuals = dict(xyp=rel_residual(xyp, rhs), q_form=rel_residual(q_form, rhs), decomposition=decomposition,
                         verdict_i=0.0 if holds_i == predicted_i else 1.0,
                         verdict_ii=0.0 if holds_ii == predicted_ii else 1.0,
                         equality=0.0 if equality_predicted == equality_observed else 1.0)
        info = dict(slack_i=slack_i, slack_ii=slack_ii, equality_predicted=equality_predicted,
                    equality_observed=equality_observed, holds_i=holds_i, holds_ii=holds_ii)
        return self._result(inst, identity_residual=max(residuals['xyp'], residuals['q_form']),
                            residuals=residuals, info=info)

    ####################################################################################################################
    # Order theorems
    ####################################################################################################################

    def verify_bohr2(self, inst):
        """ |beta Sx + alpha Ty|^2 <= beta|x|^2 + alpha|y|^2 with gap alpha beta |Tx - Sy|^2

        :param inst: TheoremInstance with operators (T, S) and vectors (x, y), alpha + beta = 1, gamma = 1
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        t, s = inst.operators
        x, y = inst.vectors
        alpha, beta, _ = inst.scalars
        tx, ty, sx, sy = apply(t, x), apply(t, y), apply(s, x), apply(s, y)
        lhs = abs2(sx * beta + ty * alpha)
        rhs = beta * abs2(x) + alpha * abs2(y)
        gap = rel_residual(rhs - lhs, alpha * beta * abs2(tx - sy))
        return self._result(inst, order=(lhs, rhs), residuals=dict(gap=gap))

    def verify_bohrn(self, inst):
        """ |t_1 T_1 x_1 + ... + t_n T_n x_n|^2 <= t_1|x_1|^2 + ... + t_n|x_n|^2

        For n >= 3 one induction step is replayed and its identities are scored too.

        :param inst: TheoremInstance with scalars WeightVector, operators T_i and vectors x_i
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        t = [float(v) for v in inst.scalars.t]
        total = inst.vectors[0].space.zero()
        for ti, op, xi in zip(t, inst.operators, inst.vectors):
            total = total + apply(op, xi) * ti
        lhs = abs2(total)
        rhs = sum(ti * abs2(xi) for ti, xi in zip(t, inst.vectors))
        residuals, slacks, info = {}, {}, {}
        if len(inst.operators) >= 3:
            replay = self.replay_induction_step(inst)
            residuals.update(('replay_' + key, value) for key, value in replay.residuals.items())
            slacks.update(('replay_' + key, value) for key, value in replay.slacks.items())
            info.update(('replay_' + key, value) for key, value in replay.info.items())
        return self._result(inst, order=(lhs, rhs), residuals=residuals, slacks=slacks, info=info)

    def replay_induction_step(self, inst):
        """ Rebuild the reduced family of the induction step and score its identities

        s_i = t_i/(1-t_n), S_i = sqrt(1-t_n) T_i (I - t_n|T_n|^2)^{-1/2},
        W = (I - t_n|T_n|^2)^{1/2}/sqrt(1-t_n) and y = sum s_i S_i x_i.

        :param inst:    TheoremInstance of the n-term inequality, n >= 3
        :return: InductionReplay (residuals and scaled slacks)
        :raise IllConditioned: when I - t_n|T_n|^2 breaches the conditioning floor
        """
        ops = list(inst.operators)
        xs = list(inst.vectors)
        n = len(ops)
        if n < 3:
            methods.raiseerror(messages.Errors.ConfigError, 'The induction step needs n >= 3, got {}'.format(n))
        t = [float(v) for v in inst.scalars.t]
        tn = t[-1]
        space = ops[0].domain
        eye = identity(space)
        reduced = reduce(Sum([eye, Scale(-tn, op_abs_squared(ops[-1]))]))
        inv_half = op_inv_sqrt(reduced, self._process.guards.delta)
        half = op_sqrt(reduced)

        s = [ti / (1 - tn) for ti in t[:-1]]
        big_s = [reduce(Scale(np.sqrt(1 - tn), Compose([op, inv_half]))) for op in ops[:-1]]
        w = reduce(Scale(1 / np.sqrt(1 - tn), half))
        y = space.zero()
        for si, op, xi in zip(s, big_s, xs[:-1]):
            y = y + apply(op, xi) * si

        flats = [op.flatten() for op in big_s]
        squares = [op_abs_squared(op).flatten() for op in big_s]
        commutation = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n - 1):
                comm = flats[i] @ squares[j] - squares[j] @ flats[i]
                scale = max(fro_norm(flats[i]) * fro_norm(squares[j]), 1.0)
                commutation = max(commutation, fro_norm(comm) / scale)
        abs_sum = op_distance(Sum([Scale(si, op_abs_squared(op)) for si, op in zip(s, big_s)]), eye)
        uv = op_distance(Sum([Scale(1 - tn, op_abs_squared(w)), Scale(tn, op_abs_squared(ops[-1]))]), eye)
        target = space.zero()
        for ti, op, xi in zip(t[:-1], ops[:-1], xs[:-1]):
            target = target + apply(op, xi) * ti
        pom = frame_residual(apply(w, y) * (1 - tn), target)
        sigma = max(op_min_singular(big_s[0]), op_min_singular(big_s[1]))

        residuals = dict(s_sum=abs(sum(s) - 1.0), abs_sum=abs_sum, commutation=commutation,
                         s12_self_adjoint=self_adjoint_residual(Compose([big_s[0].adjoint, big_s[1]])),
                         uv=uv, pom=pom,
                         wt_self_adjoint=self_adjoint_residual(Compose([w.adjoint, ops[-1]])),
                         reduced_invertible=max(0.0, INVERTIBILITY_FLOOR - sigma))
        if n >= 4:
            residuals['tail_self_adjoint'] = max(self_adjoint_residual(op) for op in big_s[2:])

        # reduced inequality and the closing two-term step
        y_slack, y_scale = scaled_slack(abs2(y), sum(si * abs2(xi) for si, xi in zip(s, xs[:-1])))
        closing = apply(w, y) * (1 - tn) + apply(ops[-1], xs[-1]) * tn
        c_slack, c_scale = scaled_slack(abs2(closing), (1 - tn) * abs2(y) + tn * abs2(xs[-1]))
        slacks = dict(y=y_slack / y_scale, closing=c_slack / c_scale)
        info = dict(sigma_min=sigma, lambda_min_reduced=float(np.linalg.eigvalsh(
            (reduced.flatten() + adj(reduced.flatten())) / 2)[0]))
        return InductionReplay(residuals=residuals, slacks=slacks, info=info, weights=s, ops=big_s, y=y, w=w)

    def verify_bohrncor(self, inst):
        """ |t_1 x_1 a_1 + ... + t_n x_n a_n|^2 <= t_1|x_1|^2 + ... + t_n|x_n|^2 for central a_i

        Cross-checked by lifting a_i to T_i(x) = x a_i and running the operator form.

        :param inst: TheoremInstance with scalars WeightVector, operators a_i and vectors x_i
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        t = [float(v) for v in inst.scalars.t]
        space = inst.vectors[0].space
        total = space.zero()
        for ti, a, xi in zip(t, inst.operators, inst.vectors):
            total = total + act(xi, a) * ti
        lhs = abs2(total)
        rhs = sum(ti * abs2(xi) for ti, xi in zip(t, inst.vectors))
        slack, scale = scaled_slack(lhs, rhs)

        lifted = TheoremInstance('bohrn', inst.scalars, tuple(RightMult(space, a) for a in inst.operators),
                                 inst.vectors, inst.seed, space)
        lift = self.verify_bohrn(lifted)
        residuals = dict(('lift_' + key, value) for key, value in lift.residuals.items())
        slacks = dict(('lift_' + key, value) for key, value in lift.slacks.items())
        if lift.refused:
            residuals['cross_oracle'] = 1.0
        else:
            residuals['cross_oracle'] = abs(slack / scale - lift.loewner_slack / lift.slack_scale)
            if residuals['cross_oracle'] > CROSS_ORACLE_BOUND:
                residuals['cross_oracle'] = max(residuals['cross_oracle'], 1.0)
        return self._result(inst, order=(lhs, rhs), residuals=residuals, slacks=slacks)

    def verify_amqm(self, inst):
        """ |sum t_i A_i|^2 <= sum t_i |A_i|^2

        :param inst: TheoremInstance with scalars WeightVector and operators A_i (square matrices)
        """
        admitted, report = self._admit(inst)
        if admitted is None:
            return self._refuse(inst, report)
        t = [float(v) for v in inst.scalars.t]
        mats = [np.asarray(m, dtype=complex) for m in inst.operators]
        mean = sum(ti * m for ti, m in zip(t, mats))
        lhs = adj(mean) @ mean
        rhs = sum(ti * adj(m) @ m for ti, m in zip(t, mats))
        return self._result(inst, order=(lhs, rhs))

    ####################################################################################################################
    # Witnesses
    ####################################################################################################################

    def witness_search(self, theorem_id, p, space=None, budget=100, seed=0, margin=1e-8):
        """ Search random pairs violating the one-sided forms of the p-inequality

        bohr-i:     |x-y|^2 + |(1-p)x-y|^2 <= p|x|^2 + q|y|^2 (fails for p > 2)
        bohr-ii:    the reversed inequality (fails for p < 2)
        bohr-q:     |x-y|^2 + |(1-q)y-x|^2 <= p|x|^2 + q|y|^2 (fails for p < 2)

        :param theorem_id:  one of bohr-i, bohr-ii, bohr-q
        :param p:           exponent (q is its conjugate)
        :param space:       ModuleSpace, A = C as a module over itself if not given
        :param budget:      number of random pairs
        :param seed:        int seed
        :param margin:      violation must exceed margin * max(||RHS||, 1)
        :return: Witness or None
        """
        if theorem_id not in WITNESSES:
            methods.raiseerror(messages.Errors.UnknownTheorem, 'Unknown witness "{}"'.format(theorem_id), self.logger)
        if budget < 1:
            methods.raiseerror(messages.Errors.ConfigError, 'budget must be >= 1')
        pair = self._process.draw_conjugate(p)
        p, q = pair
        space = space if space is not None else SelfModule(1)
        rng = methods.as_rng(seed)
        for attempt in range(1, int(budget) + 1):
            x, y = space.random_element(rng), space.random_element(rng)
            rhs = p * abs2(x) + q * abs2(y)
            if theorem_id == 'bohr-q':
                z = y * (1 - q) - x
                lhs = abs2(x - y) + abs2(z)
                coefficient = 1 - 1 / (q - 1)
            else:
                z = x * (1 - p) - y
                lhs = abs2(x - y) + abs2(z)
                coefficient = 1 - 1 / (p - 1)
            if theorem_id == 'bohr-ii':
                slack, scale = scaled_slack(rhs, lhs)
                coefficient = -coefficient
            else:
                slack, scale = scaled_slack(lhs, rhs)
            if slack < -margin * scale:
                predicted = coefficient * float(np.linalg.eigvalsh(abs2(z))[-1])
                self.logger.info('Witness::Found [{}] p={} attempt={}'.format(theorem_id, p, attempt))
                return Witness(theorem_id=theorem_id, p=p, x=x, y=y, violation=-slack, predicted=predicted,
                               attempts=attempt)
        self.logger.info('Witness::None [{}] p={} budget={}'.format(theorem_id, p, budget))
        return None


########################################################################################################################
# Classical scalar cases
########################################################################################################################

ClassicalCheck = namedtuple('ClassicalCheck', ['name', 'lhs', 'rhs', 'residual', 'holds'])


def classical_checks(p=3.0, a=1 + 2j, b=-0.5 + 1j):
    """ Scalar cases on C as a module over itself

    Bohr equality at p = q = 2, the 3-4-5 Euler-Lagrange identity at (x, y) = (1, 0),
    the parallelogram law and the classical Bohr inequality |a+b|^2 <= p|a|^2 + q|b|^2.
    """
    space = SelfModule(1)

    def scalar(value):
        return space.element(AlgebraElement.scalars(1, [value]))

    def sq(value):
        return float(abs2(value)[0, 0].real)

    one = scalar(1.0)
    x, y = scalar(1.0), scalar(0.0)
    checks = []
    lhs, rhs = sq(one + one), 2 * sq(one) + 2 * sq(one)
    checks.append(ClassicalCheck('bohr p=q=2 equality', lhs, rhs, abs(lhs - rhs), abs(lhs - rhs) <= 1e-14))
    lhs = sq(x * 3 + y * 4) + sq(x * 4 - y * 3)
    rhs = 25 * (sq(x) + sq(y))
    checks.append(ClassicalCheck('euler-lagrange 3-4-5', lhs, rhs, abs(lhs - rhs), abs(lhs - rhs) <= 1e-14))
    u, v = scalar(a), scalar(b)
    lhs, rhs = sq(u - v) + sq(u + v), 2 * sq(u) + 2 * sq(v)
    checks.append(ClassicalCheck('parallelogram p=2', lhs, rhs, abs(lhs - rhs) / max(rhs, 1.0),
                                 abs(lhs - rhs) <= 1e-14 * max(rhs, 1.0)))
    q = ConjugatePair(p).q
    lhs, rhs = sq(u + v), p * sq(u) + q * sq(v)
    checks.append(ClassicalCheck('classical bohr p={:g}'.format(p), lhs, rhs, rhs - lhs, lhs <= rhs + 1e-14))
    return checks


__all__ = ['Verifier', 'TrialResult', 'InductionReplay', 'Witness', 'WITNESSES', 'classical_checks', 'ClassicalCheck']
