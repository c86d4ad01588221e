from .tools import methods
from .handler import AlgebraShape, AlgebraElement, SelfModule, DirectSum, SeqModule, RectTuple, BundleModule, \
    ModuleElement, MatrixOverA, RightMult, Ket, Bra, Tolerance
from .process import Process, Guards, RealTriple, ConjugatePair, WeightVector, TheoremInstance, THEOREMS
from .pipelines import Pipelines, PipeTemplate, Verifier, make_config


__all__ = ['AlgebraShape', 'AlgebraElement', 'SelfModule', 'DirectSum', 'SeqModule', 'RectTuple', 'BundleModule',
           'ModuleElement', 'MatrixOverA', 'RightMult', 'Ket', 'Bra', 'Tolerance',
           'Process', 'Guards', 'RealTriple', 'ConjugatePair', 'WeightVector', 'TheoremInstance', 'THEOREMS',
           'Pipelines', 'PipeTemplate', 'Verifier', 'make_config']

__version__ = '0.1.0'
