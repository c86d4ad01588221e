"""
Trial builders of the verification suites

Every pipe_<theorem> method draws one seeded admissible instance and hands it
to the matching Verifier checker. Dashes of theorem ids map to underscores.
"""
from pyhmt.tools import methods, messages
from pyhmt.handler.base import DIM_CAP
from pyhmt.handler.algebra import AlgebraShape
from pyhmt.handler.module import SelfModule, DirectSum, SeqModule, RectTuple, BundleModule, FAMILIES
from pyhmt.process import RealTriple, ConjugatePair, TheoremInstance

P_VALUES = (1.1, 1.5, 2.0, 3.0, 10.0)
FAMILY_SIZES = (2, 3, 4, 5)
SEQ_LENGTH = 8
RECT_SHAPE = (3, 4, 3)
BUNDLE_POINTS = 5
MAX_RANK = 4
# multi-block algebras mixed into the default draw
MULTI_BLOCKS = ((1, 1), (1, 2), (2, 3))


class PipeTemplate(object):
    """ Pipeline template class
    """

    @property
    def avail(self):
        pipes = [pipe[5:] for pipe in dir(self) if pipe.startswith('pipe_')]
        output = dict(zip(range(len(pipes)), pipes))
        return output


class TheoremSuite(PipeTemplate):
    def __init__(self, proc, verifier, dims=(1, 4), blocks=None):
        """ Seeded trials for every theorem of the workbench

        :param proc:        Process (generators and hypothesis checks)
        :param verifier:    Verifier used to score the trials
        :param dims:        inclusive (low, high) range of algebra block sizes
        :param blocks:      list of AlgebraShape, used instead of dims when given
        """
        self.proc = proc
        self.verifier = verifier
        self.dims = tuple(int(d) for d in dims)
        self.blocks = [b if isinstance(b, AlgebraShape) else AlgebraShape(b) for b in (blocks or [])]

    def run(self, theorem_id, seed):
        """ Build and verify the trial of a theorem drawn from one seed

        :return: (configuration label, TrialResult)
        """
        pipe = getattr(self, 'pipe_{}'.format(theorem_id.replace('-', '_')), None)
        if pipe is None:
            methods.raiseerror(messages.Errors.UnknownTheorem, 'No suite for "{}"'.format(theorem_id))
        return pipe(seed)

    # drawing helpers
    def _algebra(self, rng):
        if self.blocks:
            return self.blocks[int(rng.integers(len(self.blocks)))]
        low, high = self.dims
        shapes = [(n,) for n in range(low, high + 1)]
        shapes += [b for b in MULTI_BLOCKS if low <= max(b) <= high]
        return AlgebraShape(shapes[int(rng.integers(len(shapes)))])

    @staticmethod
    def _rank(algebra, rng, limit=MAX_RANK):
        top = max(1, min(limit, DIM_CAP // algebra.size))
        return int(rng.integers(1, top + 1))

    @staticmethod
    def _triple(rng):
        """ Random feasible (alpha, beta, gamma): an ellipse or a hyperbola
        """
        alpha = rng.uniform(0.5, 2.0)
        if rng.uniform() < 0.5:
            return RealTriple(alpha, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))
        return RealTriple(alpha, -rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0))

    def _family_space(self, rng):
        kind = FAMILIES[int(rng.integers(len(FAMILIES)))]
        if kind == 'RectTuple':
            d = int(rng.integers(1, 4))
            m = int(rng.integers(1, 5))
            n = int(rng.integers(max(1, -(-d // m)), 4))
            return RectTuple(n, m, d)
        if kind == 'BundleModule':
            return BundleModule(rng.integers(1, 4, size=int(rng.integers(1, BUNDLE_POINTS + 1))))
        algebra = self._algebra(rng)
        if kind == 'SelfModule':
            return SelfModule(algebra)
        if kind == 'DirectSum':
            return DirectSum(self._rank(algebra, rng), algebra)
        return SeqModule(self._rank(algebra, rng, SEQ_LENGTH), algebra)

    def _direct_sum(self, rng):
        algebra = self._algebra(rng)
        return DirectSum(self._rank(algebra, rng), algebra)

    @staticmethod
    def _p(rng):
        return P_VALUES[int(rng.integers(len(P_VALUES)))]

    def _verify(self, inst, label):
        checker = getattr(self.verifier, 'verify_{}'.format(inst.theorem_id.replace('-', '_')))
        return label, checker(inst)

    ####################################################################################################################
    # Identity suites
    ####################################################################################################################

    def pipe_prvi(self, seed):
        rng = methods.as_rng(seed)
        space = self._direct_sum(rng)
        triple = self._triple(rng)
        t, s = self.proc.gen_constrained_pair(space, triple, rng)
        x, y = self.proc.gen_sections(space, 2, rng)
        return self._verify(TheoremInstance('prvi', triple, (t, s), (x, y), seed, space), repr(space))

    def pipe_cprvi(self, seed):
        rng = methods.as_rng(seed)
        space = self._family_space(rng)
        triple = self._triple(rng)
        x, y = self.proc.gen_module_pair(space, triple, rng)
        a, b = self.proc.gen_algebra_elements(space.algebra, 2, rng)
        return self._verify(TheoremInstance('cprvi', triple, (a, b), (x, y), seed, space), repr(space))

    def pipe_l2(self, seed):
        rng = methods.as_rng(seed)
        algebra = self._algebra(rng)
        space = SeqModule(max(1, min(SEQ_LENGTH, DIM_CAP // algebra.size)), algebra)
        triple = self._triple(rng)
        x, y = self.proc.gen_l2_pair(space, triple, rng)
        a, b = self.proc.gen_algebra_elements(algebra, 2, rng)
        return self._verify(TheoremInstance('l2', triple, (a, b), (x, y), seed, space), repr(space))

    def pipe_bhk(self, seed):
        rng = methods.as_rng(seed)
        space = RectTuple(*RECT_SHAPE)
        triple = self._triple(rng)
        x, y = self.proc.gen_module_pair(space, triple, rng)
        big_a, big_b = self.proc.gen_algebra_elements(space.algebra, 2, rng)
        return self._verify(TheoremInstance('bhk', triple, (big_a, big_b), (x, y), seed, space), repr(space))

    def pipe_eul_lagr(self, seed):
        rng = methods.as_rng(seed)
        space = self._family_space(rng)
        triple = self._triple(rng)
        a, b = self.proc.gen_central_pair(space.algebra, triple, rng, phase=bool(rng.integers(2)))
        x, y = self.proc.gen_sections(space, 2, rng)
        return self._verify(TheoremInstance('eul-lagr', triple, (a, b), (x, y), seed, space), repr(space))

    def pipe_bundle(self, seed):
        rng = methods.as_rng(seed)
        space = BundleModule(rng.integers(1, 4, size=BUNDLE_POINTS))
        triple = self._triple(rng)
        f, g = self.proc.gen_bundle_instance(space, triple, rng)
        phi, psi = self.proc.gen_sections(space, 2, rng)
        return self._verify(TheoremInstance('bundle', triple, (f, g), (phi, psi), seed, space), repr(space))

    def pipe_bohr_pq(self, seed):
        """ One trial in four is the equality case y = (1-p)x
        """
        rng = methods.as_rng(seed)
        pair = ConjugatePair(self._p(rng))
        space = self._direct_sum(rng)
        x, y = self.proc.gen_sections(space, 2, rng)
        if rng.uniform() < 0.25:
            y = x * (1 - pair.p)
        label = '{} p={:g}'.format(space, pair.p)
        return self._verify(TheoremInstance('bohr-pq', pair, (), (x, y), seed, space), label)

    ####################################################################################################################
    # Order suites
    ####################################################################################################################

    def pipe_bohr2(self, seed):
        rng = methods.as_rng(seed)
        space = self._direct_sum(rng)
        alpha = rng.uniform(0.05, 0.95)
        triple = RealTriple(alpha, 1.0 - alpha, 1.0)
        t, s = self.proc.gen_constrained_pair(space, triple, rng)
        x, y = self.proc.gen_sections(space, 2, rng)
        return self._verify(TheoremInstance('bohr2', triple, (t, s), (x, y), seed, space), repr(space))

    def pipe_bohrn(self, seed):
        rng = methods.as_rng(seed)
        n = FAMILY_SIZES[int(rng.integers(len(FAMILY_SIZES)))]
        space = self._direct_sum(rng)
        weights, ops = self.proc.gen_bohrn_family(space, None, n, rng)
        xs = self.proc.gen_sections(space, n, rng)
        label = '{} n={}'.format(space, n)
        return self._verify(TheoremInstance('bohrn', weights, tuple(ops), tuple(xs), seed, space), label)

    def pipe_bohrncor(self, seed):
        rng = methods.as_rng(seed)
        n = FAMILY_SIZES[int(rng.integers(len(FAMILY_SIZES)))]
        space = self._direct_sum(rng)
        weights, elements = self.proc.gen_central_family(space.algebra, None, n, rng)
        xs = self.proc.gen_sections(space, n, rng)
        label = '{} n={}'.format(space, n)
        return self._verify(TheoremInstance('bohrncor', weights, tuple(elements), tuple(xs), seed, space), label)

    def pipe_amqm(self, seed):
        rng = methods.as_rng(seed)
        low, high = self.dims
        dim = int(rng.integers(low, high + 1))
        n = int(rng.integers(1, 6))
        weights, mats = self.proc.gen_amqm_family(dim, n, rng)
        label = 'dim={} n={}'.format(dim, n)
        return self._verify(TheoremInstance('amqm', weights, tuple(mats), (), seed, None), label)
