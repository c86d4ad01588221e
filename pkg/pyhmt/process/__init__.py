from .base import BaseProcess, Guards, RealTriple, ConjugatePair, WeightVector, TheoremInstance, sample_conic
from .pairs import PairProcess
from .families import FamilyProcess
from .hypotheses import HypothesisProcess, HypothesisReport, THEOREMS


class Process(PairProcess, FamilyProcess, HypothesisProcess):
    def __init__(self, guards=None, tol=None):
        if tol is None:
            super(Process, self).__init__(guards)
        else:
            super(Process, self).__init__(guards, tol)


__all__ = ['Process', 'BaseProcess', 'Guards', 'RealTriple', 'ConjugatePair', 'WeightVector',
           'TheoremInstance', 'HypothesisReport', 'THEOREMS', 'sample_conic']
