import numpy as np
import pytest
from pyhmt.handler.algebra import AlgebraShape, AlgebraElement
from pyhmt.handler.module import SelfModule, DirectSum
from pyhmt.process import Process
from pyhmt.pipelines.verifier import Verifier


@pytest.fixture
def proc():
    return Process()


@pytest.fixture
def verifier(proc):
    return Verifier(proc)


@pytest.fixture(params=[(1,), (2,), (2, 3)], ids=['M1', 'M2', 'M2+M3'])
def algebra(request):
    return AlgebraShape(request.param)


@pytest.fixture
def scalar_space():
    """ C as a module over itself """
    return SelfModule(1)


def scalar(space, value):
    """ Element of a module over C^1 whose components are the given scalars """
    values = np.atleast_1d(value)
    if isinstance(space, SelfModule):
        return space.element(AlgebraElement.scalars(1, values[:1]))
    return space.element([AlgebraElement.scalars(1, [v]) for v in values])


@pytest.fixture
def scalars():
    return scalar


@pytest.fixture
def direct_sum(algebra):
    return DirectSum(2, algebra)
