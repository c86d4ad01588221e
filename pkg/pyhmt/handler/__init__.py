"""
Matrix kernel, finite-dimensional C*-algebras, Hilbert modules and their adjointable maps
"""
from .base import Tolerance, DEFAULT_TOL
from .algebra import AlgebraShape, AlgebraElement
from .module import ModuleSpace, SelfModule, DirectSum, SeqModule, RectTuple, BundleModule, ModuleElement, \
    module_family, check_module_axioms
from .operators import AdjointableOp, MatrixOverA, RightMult, Ket, Bra, Compose, Scale, Sum

__all__ = ['Tolerance', 'DEFAULT_TOL', 'AlgebraShape', 'AlgebraElement',
           'ModuleSpace', 'SelfModule', 'DirectSum', 'SeqModule', 'RectTuple', 'BundleModule', 'ModuleElement',
           'module_family', 'check_module_axioms',
           'AdjointableOp', 'MatrixOverA', 'RightMult', 'Ket', 'Bra', 'Compose', 'Scale', 'Sum']
