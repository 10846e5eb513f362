import numpy as np
import pytest

from gradedpi.field import make_field
from gradedpi import algebra as alg


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f25():
    return make_field(5, 2)


@pytest.fixture(scope="session")
def sl2_z2(f5):
    return alg.builtin("sl2_z2", f5)


@pytest.fixture(scope="session")
def gl2_z2(f5):
    return alg.builtin("gl2_z2", f5)


@pytest.fixture(scope="session")
def b2_z2(f5):
    return alg.builtin("b2_z2", f5)


@pytest.fixture(scope="session")
def m1(f5):
    return alg.builtin("m1_z", f5)


@pytest.fixture(scope="session")
def heisenberg(f5):
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 1, 2] = 1
    c[1, 0, 2] = 4
    return alg.GradedAlgebra(f5, ["x", "y", "z"], c, alg.TRIVIAL_GROUP,
                             [(), (), ()], name="heisenberg")
