"""
Generators of constrained pairs: T*S self-adjoint with alpha T*T + beta S*S = gamma I,
and the module-vector, sequence, central and bundle versions of the same constraint
"""
import numpy as np
from pyhmt.tools import methods, messages
from pyhmt.handler.base import random_isometry
from pyhmt.handler.algebra import AlgebraShape, AlgebraElement
from pyhmt.handler.module import ModuleElement, ModuleSpace, SeqModule, RectTuple, BundleModule
from pyhmt.handler.operators import MatrixOverA
from .base import BaseProcess, RealTriple, sample_conic, block_rows, scatter_blocks, spectral, pair_residuals

VALIDATION_BOUND = 1e-12


class PairProcess(BaseProcess):
    """ Constrained pairs for the identity theorems
    """
    def _validated(self, name, residuals):
        worst = max(residuals)
        if worst > VALIDATION_BOUND:
            methods.raiseerror(messages.Errors.GenerationFailure,
                               '{} failed post validation (residual {:.3e})'.format(name, worst), self.logger)

    @staticmethod
    def _triple(triple):
        return triple if isinstance(triple, RealTriple) else RealTriple(*triple)

    def gen_constrained_pair(self, space, triple, seed):
        """ Module maps T, S with T*S self-adjoint and alpha T*T + beta S*S = gamma I

        Per algebra block both maps are W V diag(u) V* and W V diag(v) V* for an
        eigenbasis V, a common twist W and points (u_j, v_j) on the conic.

        :param space:   ModuleSpace (DirectSum(k) in the theorem)
        :param triple:  RealTriple
        :param seed:    int seed or numpy Generator
        :return: (T, S) MatrixOverA
        """
        triple = self._triple(triple)
        rng = self.rng(seed)
        t_blocks, s_blocks = [], []
        for i in range(len(space.algebra.block_dims)):
            m = len(block_rows(space, i))
            v = self.eigenbasis(m, rng)
            w = self.eigenbasis(m, rng)
            u_vals, v_vals = sample_conic(triple, rng, m)
            t_blocks.append(w @ spectral(v, u_vals))
            s_blocks.append(w @ spectral(v, v_vals))
        t_flat = scatter_blocks(space, t_blocks)
        s_flat = scatter_blocks(space, s_blocks)
        self._validated('gen_constrained_pair', pair_residuals(t_flat, s_flat, triple))
        self.logger.debug('Generator::Pair {} triple={}'.format(space, tuple(triple)))
        return MatrixOverA(space, t_flat), MatrixOverA(space, s_flat)

    def gen_central_pair(self, algebra, triple, seed, phase=False):
        """ Central a, b with a*b self-adjoint and alpha a*a + beta b*b = gamma e

        :param algebra: AlgebraShape
        :param triple:  RealTriple
        :param seed:    int seed or numpy Generator
        :param phase:   multiply both elements by a common random phase per block
        :return: (a, b) AlgebraElement
        """
        triple = self._triple(triple)
        if not isinstance(algebra, AlgebraShape):
            algebra = AlgebraShape(algebra)
        rng = self.rng(seed)
        count = len(algebra.block_dims)
        u_vals, v_vals = sample_conic(triple, rng, count)
        twist = np.exp(1j * rng.uniform(0, 2 * np.pi, count)) if phase else np.ones(count)
        a = AlgebraElement.scalars(algebra, twist * u_vals)
        b = AlgebraElement.scalars(algebra, twist * v_vals)
        self._validated('gen_central_pair', pair_residuals(a.dense(), b.dense(), triple))
        return a, b

    def gen_l2_pair(self, space, triple, seed):
        """ Sequences (a_i), (b_i) in l2(A) with sum a_i* b_i self-adjoint and
        alpha sum|a_i|^2 + beta sum|b_i|^2 = gamma e

        Every component is a function of one Hermitian element: on the eigenvector
        of lambda_j the components are u_j * omega and v_j * nu for real unit vectors
        omega, nu in R^L, with a common unitary twist.

        :param space:   SeqModule(L)
        :return: (x, y) ModuleElement
        """
        if not isinstance(space, SeqModule):
            methods.raiseerror(messages.Errors.SpaceMismatch, 'gen_l2_pair needs a SeqModule, got {}'.format(space))
        triple = self._triple(triple)
        rng = self.rng(seed)
        algebra = space.algebra
        length = space.length
        x_parts = [[None] * len(algebra.block_dims) for _ in range(length)]
        y_parts = [[None] * len(algebra.block_dims) for _ in range(length)]
        for i, n in enumerate(algebra.block_dims):
            v = self.eigenbasis(n, rng)
            w = self.eigenbasis(n, rng)
            u_vals, v_vals = sample_conic(triple, rng, n)
            omega = rng.standard_normal((length, n))
            nu = rng.standard_normal((length, n))
            omega /= np.linalg.norm(omega, axis=0)
            nu /= np.linalg.norm(nu, axis=0)
            for l in range(length):
                x_parts[l][i] = w @ spectral(v, u_vals * omega[l])
                y_parts[l][i] = w @ spectral(v, v_vals * nu[l])
        x = space.element([AlgebraElement(algebra, blocks) for blocks in x_parts])
        y = space.element([AlgebraElement(algebra, blocks) for blocks in y_parts])
        self._validated('gen_l2_pair', pair_residuals(x.frame, y.frame, triple))
        return x, y

    def gen_module_pair(self, space, triple, seed):
        """ Module vectors x, y with <x,y> self-adjoint and alpha<x,x> + beta<y,y> = gamma e

        Per algebra block, x and y are Q V diag(u) V* and Q V diag(v) V* for an
        isometry Q onto the rows carrying that block.

        :param space:   any ModuleSpace
        :param triple:  RealTriple
        :param seed:    int seed or numpy Generator
        :return: (x, y) ModuleElement
        """
        if not isinstance(space, ModuleSpace):
            methods.raiseerror(messages.Errors.SpaceMismatch, 'gen_module_pair needs a module space')
        triple = self._triple(triple)
        rng = self.rng(seed)
        x_frame = np.zeros((space.rows, space.algebra.size), dtype=complex)
        y_frame = np.zeros_like(x_frame)
        for i, (n, cols) in enumerate(zip(space.algebra.block_dims, space.algebra.slices)):
            rows = block_rows(space, i)
            if len(rows) < n:
                methods.raiseerror(messages.Errors.ShapeMismatch,
                                   '{} has {} rows for a block of size {}; no isometry exists'.format(
                                       space, len(rows), n))
            q = random_isometry(len(rows), n, rng)
            v = self.eigenbasis(n, rng)
            u_vals, v_vals = sample_conic(triple, rng, n)
            x_frame[rows, cols] = q @ spectral(v, u_vals)
            y_frame[rows, cols] = q @ spectral(v, v_vals)
        x, y = ModuleElement(space, x_frame), ModuleElement(space, y_frame)
        self._validated('gen_module_pair', pair_residuals(x.frame, y.frame, triple))
        return x, y

    def gen_rect_instance(self, space, triple, seed):
        """ Tuples (T_i), (S_i) of m x d matrices with sum T_i* S_i self-adjoint and
        alpha sum T_i* T_i + beta sum S_i* S_i = gamma I (needs n*m >= d)

        :return: (T-tuple, S-tuple) as lists of numpy arrays
        """
        if not isinstance(space, RectTuple):
            methods.raiseerror(messages.Errors.SpaceMismatch,
                               'gen_rect_instance needs a RectTuple, got {}'.format(space))
        x, y = self.gen_module_pair(space, triple, seed)
        return x.payload, y.payload

    def gen_bundle_instance(self, space, triple, seed):
        """ Real functions f, g on K with alpha f(t)^2 + beta g(t)^2 = gamma

        :param space:   BundleModule
        :return: (f, g) real arrays of length kappa
        """
        if not isinstance(space, BundleModule):
            methods.raiseerror(messages.Errors.SpaceMismatch,
                               'gen_bundle_instance needs a BundleModule, got {}'.format(space))
        triple = self._triple(triple)
        rng = self.rng(seed)
        f, g = sample_conic(triple, rng, space.point_count)
        a, b, c = triple
        residual = float(np.max(np.abs(a * f ** 2 + b * g ** 2 - c))) / max(abs(c), 1.0)
        self._validated('gen_bundle_instance', (residual,))
        return np.asarray(f, dtype=float), np.asarray(g, dtype=float)

    def gen_sections(self, space, count, seed):
        """ Independent random module vectors (test vectors of the identities)
        """
        rng = self.rng(seed)
        return [space.random_element(rng) for _ in range(count)]

    def gen_algebra_elements(self, algebra, count, seed):
        rng = self.rng(seed)
        return [AlgebraElement.random(algebra, rng) for _ in range(count)]

    def perturb(self, op, amount=0.1):
        """ op + amount*I, used to break a hypothesis on purpose
        """
        if isinstance(op, MatrixOverA):
            return MatrixOverA(op.space, op.flatten() + amount * np.eye(op.space.rows))
        methods.raiseerror(messages.Errors.UnsupportedForm, 'Cannot perturb {}'.format(op))

