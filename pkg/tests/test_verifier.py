import numpy as np
import pytest
from pyhmt.tools import messages
from pyhmt.handler.algebra import AlgebraShape, AlgebraElement
from pyhmt.handler.module import SelfModule, DirectSum, SeqModule, RectTuple, BundleModule
from pyhmt.handler.operators import MatrixOverA
from pyhmt.process import RealTriple, ConjugatePair, WeightVector, TheoremInstance
from pyhmt.pipelines.verifier import Verifier, classical_checks

ROOT2 = np.sqrt(2.0)


def one(value):
    return AlgebraElement.scalars(1, [value])


def scalar_op(value):
    return MatrixOverA(SelfModule(1), [[value]])


class TestIdentities:
    def test_prvi_scalar(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('prvi', RealTriple(1, 1, 25), (scalar_op(3.0), scalar_op(4.0)),
                               (scalars(space, 1.0), scalars(space, 0.0)), 0, space)
        result = verifier.verify_prvi(inst)
        assert result.hypothesis_ok and result.passed
        assert result.identity_residual <= 1e-15
        assert result.loewner_slack is None

    def test_prvi_zero_vectors(self, verifier):
        space = SelfModule(1)
        inst = TheoremInstance('prvi', RealTriple(1, 1, 25), (scalar_op(3.0), scalar_op(4.0)),
                               (space.zero(), space.zero()), 0, space)
        assert verifier.verify_prvi(inst).identity_residual == 0.0

    @pytest.mark.parametrize('triple', [RealTriple(1, 1, 1), RealTriple(2, 0.5, 3), RealTriple(1, -1, 1),
                                        RealTriple(1.5, -0.5, -2)], ids=str)
    def test_prvi_random(self, proc, verifier, algebra, triple):
        space = DirectSum(2, algebra)
        t, s = proc.gen_constrained_pair(space, triple, 1)
        x, y = proc.gen_sections(space, 2, 2)
        result = verifier.verify_prvi(TheoremInstance('prvi', triple, (t, s), (x, y), 1, space))
        assert result.passed
        assert result.identity_residual <= 1e-10

    def test_prvi_refuses_perturbed_pair(self, proc, verifier):
        space = DirectSum(2, AlgebraShape((2,)))
        triple = RealTriple(1.0, 1.0, 2.0)
        t, s = proc.gen_constrained_pair(space, triple, 3)
        x, y = proc.gen_sections(space, 2, 4)
        result = verifier.verify_prvi(TheoremInstance('prvi', triple, (t, proc.perturb(s)), (x, y), 3, space))
        assert result.refused and not result.hypothesis_ok and not result.passed
        assert result.identity_residual is None
        assert 'constraint' in result.notes

    def test_cprvi_scalar(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('cprvi', RealTriple(1, 1, 25), (one(1.0), one(0.0)),
                               (scalars(space, 3.0), scalars(space, 4.0)), 0, space)
        result = verifier.verify_cprvi(inst)
        assert result.passed
        assert result.identity_residual <= 1e-15

    @pytest.mark.parametrize('space', [DirectSum(3, AlgebraShape((2,))), SeqModule(2, AlgebraShape((2, 1))),
                                       RectTuple(2, 2, 3), BundleModule((1, 3))], ids=repr)
    def test_cprvi_random(self, proc, verifier, space):
        triple = RealTriple(1.0, -1.0, 1.0)
        x, y = proc.gen_module_pair(space, triple, 5)
        a, b = proc.gen_algebra_elements(space.algebra, 2, 6)
        result = verifier.verify_cprvi(TheoremInstance('cprvi', triple, (a, b), (x, y), 5, space))
        assert result.passed, result.residuals
        assert result.info['proof_residual'] <= 1e-10
        assert result.residuals['cross_oracle'] <= 1e-10
        assert result.info['ket_self_adjoint_probe']

    def test_l2_scalar(self, verifier):
        space = SeqModule(2, AlgebraShape((1,)))
        x = space.element([one(0.6), one(0.0)])
        y = space.element([one(0.8), one(0.0)])
        result = verifier.verify_l2(TheoremInstance('l2', RealTriple(1, 1, 1), (one(1.0), one(1.0)), (x, y), 0,
                                                    space))
        assert result.passed
        assert result.identity_residual <= 1e-15

    def test_l2_random(self, proc, verifier):
        space = SeqModule(8, AlgebraShape((2,)))
        triple = RealTriple(1.0, 2.0, 3.0)
        x, y = proc.gen_l2_pair(space, triple, 7)
        a, b = proc.gen_algebra_elements(space.algebra, 2, 8)
        result = verifier.verify_l2(TheoremInstance('l2', triple, (a, b), (x, y), 7, space))
        assert result.passed and result.identity_residual <= 1e-10

    def test_bhk_scalar(self, verifier):
        space = RectTuple(1, 1, 1)
        x, y = space.element([np.array([[0.6]])]), space.element([np.array([[0.8]])])
        unit = AlgebraElement.unit((1,))
        result = verifier.verify_bhk(TheoremInstance('bhk', RealTriple(1, 1, 1), (unit, unit), (x, y), 0, space))
        assert result.passed and result.identity_residual <= 1e-15

    def test_bhk_random(self, proc, verifier):
        space = RectTuple(2, 3, 2)
        triple = RealTriple(1.0, 1.0, 1.0)
        x, y = proc.gen_module_pair(space, triple, 9)
        big_a, big_b = proc.gen_algebra_elements(space.algebra, 2, 10)
        result = verifier.verify_bhk(TheoremInstance('bhk', triple, (big_a, big_b), (x, y), 9, space))
        assert result.passed and result.identity_residual <= 1e-10

    def test_eul_lagr_scalar(self, verifier, scalars):
        space = DirectSum(2, AlgebraShape((1,)))
        inst = TheoremInstance('eul-lagr', RealTriple(1, 1, 25), (one(3.0), one(4.0)),
                               (scalars(space, [1.0, 0.0]), scalars(space, [0.0, 1.0])), 0, space)
        result = verifier.verify_eul_lagr(inst)
        assert result.passed
        assert result.identity_residual <= 1e-15
        assert result.residuals['right_mult_product'] <= 1e-15

    def test_eul_lagr_pq_case(self, verifier, proc):
        p = 3.0
        space = DirectSum(2, AlgebraShape((2,)))
        a, b = AlgebraElement.unit((2,)), AlgebraElement.unit((2,)) * -1.0
        x, y = proc.gen_sections(space, 2, 11)
        result = verifier.verify_eul_lagr(TheoremInstance('eul-lagr', RealTriple(1, p - 1, p), (a, b), (x, y), 11,
                                                          space))
        assert result.passed and result.identity_residual <= 1e-10

    def test_eul_lagr_refuses_non_central(self, verifier, proc):
        space = DirectSum(1, AlgebraShape((2,)))
        a = AlgebraElement((2,), [np.diag([1.0, -1.0])])
        b = AlgebraElement.zero((2,))
        x, y = proc.gen_sections(space, 2, 0)
        result = verifier.verify_eul_lagr(TheoremInstance('eul-lagr', RealTriple(1, 1, 1), (a, b), (x, y), 0, space))
        assert result.refused
        assert 'central_a' in result.notes

    def test_bundle_scalar(self, verifier):
        space = BundleModule((1, 1))
        phi = space.element([np.array([1.0]), np.array([0.0])])
        psi = space.element([np.array([0.0]), np.array([1.0])])
        f, g = np.array([3.0, 3.0]), np.array([4.0, 4.0])
        result = verifier.verify_bundle(TheoremInstance('bundle', RealTriple(1, 1, 25), (f, g), (phi, psi), 0, space))
        assert result.passed
        assert result.info['sup_lhs'] == pytest.approx(25.0)
        assert result.info['sup_rhs'] == pytest.approx(25.0)
        assert result.notes == ''

    def test_bundle_single_point(self, proc, verifier):
        space = BundleModule((3,))
        triple = RealTriple(2.0, 1.0, 2.0)
        f, g = proc.gen_bundle_instance(space, triple, 12)
        phi, psi = proc.gen_sections(space, 2, 13)
        result = verifier.verify_bundle(TheoremInstance('bundle', triple, (f, g), (phi, psi), 12, space))
        assert result.passed
        assert result.notes == 'classical Euler-Lagrange'

    def test_bundle_random(self, proc, verifier):
        space = BundleModule((1, 2, 3, 2, 1))
        triple = RealTriple(1.0, -2.0, 0.5)
        f, g = proc.gen_bundle_instance(space, triple, 14)
        phi, psi = proc.gen_sections(space, 2, 15)
        result = verifier.verify_bundle(TheoremInstance('bundle', triple, (f, g), (phi, psi), 14, space))
        assert result.passed
        assert result.residuals['pointwise'] <= 1e-10
        assert result.residuals['sup'] <= 1e-10
        assert result.residuals['module_path'] <= 1e-10


class TestPInequality:
    def test_violation_of_the_first_form(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohr-pq', ConjugatePair(3.0), (), (scalars(space, 1.0), scalars(space, 0.0)), 0,
                               space)
        result = verifier.verify_bohr_pq(inst)
        assert result.passed
        assert result.info['slack_i'] == pytest.approx(-0.4)
        assert not result.info['holds_i'] and result.info['holds_ii']
        assert not result.info['equality_predicted']

    def test_parallelogram(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohr-pq', ConjugatePair(2.0), (), (scalars(space, 1.0), scalars(space, 1.0)), 0,
                               space)
        result = verifier.verify_bohr_pq(inst)
        assert result.passed and result.identity_residual <= 1e-15
        assert result.info['equality_predicted'] and result.info['equality_observed']

    @pytest.mark.parametrize('p', [1.1, 1.5, 2.0, 3.0, 10.0])
    def test_equality_case(self, verifier, proc, p):
        space = DirectSum(2, AlgebraShape((2,)))
        x = proc.gen_sections(space, 1, 16)[0]
        result = verifier.verify_bohr_pq(TheoremInstance('bohr-pq', ConjugatePair(p), (), (x, x * (1 - p)), 16,
                                                         space))
        assert result.passed, result.residuals
        assert result.info['equality_predicted'] and result.info['equality_observed']
        assert result.info['holds_i'] and result.info['holds_ii']

    @pytest.mark.parametrize('p', [1.1, 1.5, 3.0, 10.0])
    def test_generic_pair(self, verifier, proc, p):
        space = DirectSum(2, AlgebraShape((2, 1)))
        x, y = proc.gen_sections(space, 2, 17)
        result = verifier.verify_bohr_pq(TheoremInstance('bohr-pq', ConjugatePair(p), (), (x, y), 17, space))
        assert result.passed, result.residuals
        assert result.info['holds_i'] == (p < 2)
        assert result.info['holds_ii'] == (p > 2)
        assert result.residuals['q_form'] <= 1e-10

    def test_small_inputs(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohr-pq', ConjugatePair(3.0), (), (scalars(space, 1e-6), scalars(space, 0.0)), 0,
                               space)
        result = verifier.verify_bohr_pq(inst)
        assert result.passed
        assert not result.info['equality_predicted'] and not result.info['equality_observed']
        assert not result.info['holds_i'] and result.info['holds_ii']
        assert result.info['slack_i'] == pytest.approx(-0.4)

    @pytest.mark.parametrize('p', [1.5, 3.0])
    def test_scale_invariance(self, verifier, proc, p):
        space = DirectSum(2, AlgebraShape((2, 1)))
        x, y = proc.gen_sections(space, 2, 18)
        slacks = []
        for scale in (1e-6, 1e-3, 1.0, 1e3, 1e6):
            inst = TheoremInstance('bohr-pq', ConjugatePair(p), (), (x * scale, y * scale), 18, space)
            result = verifier.verify_bohr_pq(inst)
            assert result.passed, (scale, result.residuals, result.info)
            assert result.info['holds_i'] == (p < 2)
            assert result.info['holds_ii'] == (p > 2)
            assert not result.info['equality_predicted'] and not result.info['equality_observed']
            slacks.append(result.info['slack_i'])
        np.testing.assert_allclose(slacks, slacks[2], rtol=1e-6)

    @pytest.mark.parametrize('scale', [1e-6, 1e6])
    def test_scaled_equality_case(self, verifier, proc, scale):
        space = DirectSum(2, AlgebraShape((2, 1)))
        x = proc.gen_sections(space, 1, 19)[0] * scale
        result = verifier.verify_bohr_pq(TheoremInstance('bohr-pq', ConjugatePair(3.0), (), (x, x * -2.0), 19,
                                                         space))
        assert result.passed
        assert result.info['equality_predicted'] and result.info['equality_observed']

    def test_zero_pair(self, verifier):
        space = DirectSum(2, AlgebraShape((2,)))
        result = verifier.verify_bohr_pq(TheoremInstance('bohr-pq', ConjugatePair(3.0), (),
                                                         (space.zero(), space.zero()), 0, space))
        assert result.passed
        assert result.info['equality_predicted'] and result.info['equality_observed']

    def test_guard(self, verifier, proc):
        space = SelfModule(1)
        x, y = proc.gen_sections(space, 2, 0)
        result = verifier.verify_bohr_pq(TheoremInstance('bohr-pq', ConjugatePair(1.02), (), (x, y), 0, space))
        assert result.refused


class TestOrderRelations:
    def test_bohr2_scalar(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohr2', RealTriple(0.5, 0.5, 1.0), (scalar_op(1.0), scalar_op(1.0)),
                               (scalars(space, 1.0), scalars(space, -1.0)), 0, space)
        result = verifier.verify_bohr2(inst)
        assert result.passed
        assert result.loewner_slack == pytest.approx(1.0)
        assert result.residuals['gap'] <= 1e-15

    def test_bohr2_random(self, proc, verifier, algebra):
        space = DirectSum(3, algebra)
        triple = RealTriple(0.3, 0.7, 1.0)
        t, s = proc.gen_constrained_pair(space, triple, 18)
        x, y = proc.gen_sections(space, 2, 19)
        result = verifier.verify_bohr2(TheoremInstance('bohr2', triple, (t, s), (x, y), 18, space))
        assert result.passed
        assert result.loewner_slack / result.slack_scale >= -1e-10
        assert result.residuals['gap'] <= 1e-10

    def test_bohrn_two_identities(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohrn', WeightVector([0.5, 0.5]), (scalar_op(1.0), scalar_op(1.0)),
                               (scalars(space, 1.0), scalars(space, -1.0)), 0, space)
        result = verifier.verify_bohrn(inst)
        assert result.passed
        assert result.loewner_slack == pytest.approx(1.0)

    def test_bohrn_scalar_family(self, verifier, scalars):
        space = SelfModule(1)
        xs = tuple(scalars(space, 1.0) for _ in range(3))
        inst = TheoremInstance('bohrn', WeightVector([0.25, 0.25, 0.5]),
                               (scalar_op(ROOT2), scalar_op(ROOT2), scalar_op(0.0)), xs, 0, space)
        result = verifier.verify_bohrn(inst)
        assert result.passed
        assert result.loewner_slack == pytest.approx(0.5)
        assert result.info['replay_sigma_min'] == pytest.approx(1.0)

    def test_bohrn_one_way_commutation(self, verifier, proc):
        space = DirectSum(2, AlgebraShape((1,)))
        ops = (MatrixOverA(space, np.diag([1.0, np.sqrt(1.5)])), MatrixOverA(space, np.diag([1.0, np.sqrt(0.5)])),
               MatrixOverA(space, [[0.0, 1.0], [1.0, 0.0]]))
        inst = TheoremInstance('bohrn', WeightVector([0.25, 0.25, 0.5]), ops, tuple(proc.gen_sections(space, 3, 25)),
                               25, space)
        report = verifier.process.check_hypotheses(inst)
        assert report.admissible, report.residuals
        assert report.residuals['commutation'] <= 1e-15
        result = verifier.verify_bohrn(inst)
        assert result.passed, (result.residuals, result.slacks)
        assert result.residuals['replay_commutation'] <= 1e-15

    def test_replay_scalar_family(self, verifier, scalars):
        space = SelfModule(1)
        xs = tuple(scalars(space, 1.0) for _ in range(3))
        inst = TheoremInstance('bohrn', WeightVector([0.25, 0.25, 0.5]),
                               (scalar_op(ROOT2), scalar_op(ROOT2), scalar_op(0.0)), xs, 0, space)
        replay = verifier.replay_induction_step(inst)
        np.testing.assert_allclose(replay.weights, [0.5, 0.5])
        np.testing.assert_allclose([op.flatten()[0, 0] for op in replay.ops], [1.0, 1.0])
        np.testing.assert_allclose(replay.w.flatten(), [[ROOT2]])
        np.testing.assert_allclose(replay.y.frame, [[1.0]])
        assert max(replay.residuals.values()) <= 1e-14
        assert min(replay.slacks.values()) >= -1e-14

    def test_replay_needs_three(self, verifier, scalars):
        space = SelfModule(1)
        inst = TheoremInstance('bohrn', WeightVector([0.5, 0.5]), (scalar_op(1.0), scalar_op(1.0)),
                               (scalars(space, 1.0), scalars(space, 1.0)), 0, space)
        with pytest.raises(messages.Errors.ConfigError):
            verifier.replay_induction_step(inst)

    def test_bohrn_equality(self, verifier, proc):
        space = DirectSum(2, AlgebraShape((2,)))
        eye = MatrixOverA.identity(space)
        x = proc.gen_sections(space, 1, 20)[0]
        inst = TheoremInstance('bohrn', WeightVector([0.2, 0.3, 0.5]), (eye, eye, eye), (x, x, x), 20, space)
        result = verifier.verify_bohrn(inst)
        assert result.passed
        assert abs(result.loewner_slack) / result.slack_scale <= 1e-12

    @pytest.mark.parametrize('n', [2, 3, 4, 5])
    def test_bohrn_random(self, proc, verifier, algebra, n):
        space = DirectSum(2, algebra)
        weights, ops = proc.gen_bohrn_family(space, None, n, 21)
        xs = proc.gen_sections(space, n, 22)
        result = verifier.verify_bohrn(TheoremInstance('bohrn', weights, tuple(ops), tuple(xs), 21, space))
        assert result.passed, (result.residuals, result.slacks)
        if n >= 3:
            assert result.residuals['replay_uv'] <= 1e-9
            assert result.residuals['replay_pom'] <= 1e-9
            assert result.slacks['replay_y'] >= -1e-9

    def test_bohrn_refuses_scaled_weights(self, proc, verifier):
        space = DirectSum(2, AlgebraShape((2,)))
        weights, ops = proc.gen_bohrn_family(space, None, 3, 23)
        xs = proc.gen_sections(space, 3, 24)
        inst = TheoremInstance('bohrn', weights.scaled(1.01), tuple(ops), tuple(xs), 23, space)
        result = verifier.verify_bohrn(inst)
        assert result.refused and result.loewner_slack is None

    def test_bohrncor_scalar(self, verifier, scalars):
        space = DirectSum(1, AlgebraShape((1,)))
        xs = tuple(scalars(space, [1.0]) for _ in range(3))
        inst = TheoremInstance('bohrncor', WeightVector([0.25, 0.25, 0.5]), (one(ROOT2), one(ROOT2), one(0.0)), xs,
                               0, space)
        result = verifier.verify_bohrncor(inst)
        assert result.passed
        assert result.loewner_slack == pytest.approx(0.5)
        assert result.residuals['cross_oracle'] <= 1e-10

    @pytest.mark.parametrize('n', [2, 3, 5])
    def test_bohrncor_random(self, proc, verifier, n):
        space = DirectSum(3, AlgebraShape((2, 1)))
        weights, elements = proc.gen_central_family(space.algebra, None, n, 25)
        xs = proc.gen_sections(space, n, 26)
        result = verifier.verify_bohrncor(TheoremInstance('bohrncor', weights, tuple(elements), tuple(xs), 25,
                                                          space))
        assert result.passed, result.residuals
        assert result.residuals['cross_oracle'] <= 1e-10

    def test_amqm(self, verifier):
        inst = TheoremInstance('amqm', WeightVector([0.5, 0.5], w_min=0.0), (np.eye(1), -np.eye(1)))
        result = verifier.verify_amqm(inst)
        assert result.passed and result.loewner_slack == pytest.approx(1.0)

    def test_amqm_single_matrix(self, verifier):
        a = np.array([[1.0, 2.0], [0.0, 1j]])
        result = verifier.verify_amqm(TheoremInstance('amqm', WeightVector([1.0]), (a,)))
        assert result.passed
        assert abs(result.loewner_slack) <= 1e-14

    def test_amqm_random(self, proc, verifier):
        weights, mats = proc.gen_amqm_family(4, 5, 27)
        result = verifier.verify_amqm(TheoremInstance('amqm', weights, tuple(mats)))
        assert result.passed


class TestWitnesses:
    def test_first_form_above_two(self, verifier):
        witness = verifier.witness_search('bohr-i', 3.0, budget=1, seed=7)
        assert witness is not None and witness.attempts == 1
        np.testing.assert_allclose(witness.violation, witness.predicted, rtol=1e-8)

    @pytest.mark.parametrize('p', [2.5, 3.0, 4.0, 10.0])
    def test_first_form_exponents(self, verifier, p):
        witness = verifier.witness_search('bohr-i', p, budget=1, seed=3)
        assert witness is not None and witness.attempts == 1
        assert witness.violation > 0
        np.testing.assert_allclose(witness.violation, witness.predicted, rtol=1e-8)

    def test_none_at_two(self, verifier):
        for theorem_id in ('bohr-i', 'bohr-ii', 'bohr-q'):
            assert verifier.witness_search(theorem_id, 2.0, budget=20, seed=0) is None

    @pytest.mark.parametrize('theorem_id', ['bohr-ii', 'bohr-q'])
    def test_below_two(self, verifier, theorem_id):
        witness = verifier.witness_search(theorem_id, 1.5, space=DirectSum(2, AlgebraShape((2,))), budget=5,
                                          seed=1)
        assert witness is not None
        assert witness.violation > 0
        np.testing.assert_allclose(witness.violation, witness.predicted, rtol=1e-8)

    def test_first_form_below_two(self, verifier):
        assert verifier.witness_search('bohr-i', 1.5, budget=20, seed=2) is None

    def test_errors(self, verifier):
        with pytest.raises(messages.Errors.UnknownTheorem):
            verifier.witness_search('bohr-iii', 3.0)
        with pytest.raises(messages.Errors.ConfigError):
            verifier.witness_search('bohr-i', 3.0, budget=0)
        with pytest.raises(messages.Errors.GuardViolation):
            verifier.witness_search('bohr-i', 1.01)


class TestClassical:
    @pytest.mark.parametrize('p', [1.5, 2.0, 3.0])
    def test_all_hold(self, p):
        checks = classical_checks(p=p)
        assert len(checks) == 4
        assert all(check.holds for check in checks)

    def test_verifier_defaults(self):
        verifier = Verifier()
        assert verifier.tol == 1e-8
        assert verifier.process.guards.eps_p == 0.05
