import pytest

from gf2hyper import Gf2Vector, Subspace, validate_nilpotent
from gf2hyper.nilpotent import jordan_matrix


@pytest.fixture
def golden():
    # the published 4x4 operator with one block of size 1 and one of size 3
    return validate_nilpotent(jordan_matrix([1, 3]))


@pytest.fixture
def golden_x(golden):
    z = Gf2Vector(0b0101, 4)
    return Subspace.span([z, golden.mat.apply(z)], 4)


@pytest.fixture
def e():
    return tuple(Gf2Vector.unit(i, 4) for i in range(4))
