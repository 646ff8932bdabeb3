import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acikit import Ring, Ideal
from acikit.gallery import pfaffian_aci


@pytest.fixture(scope="session")
def ring_xyz():
    return Ring("x,y,z")


@pytest.fixture(scope="session")
def symmetric_net(ring_xyz):
    """Grade-2 perfect almost complete intersection in three variables."""
    R = Ring("a,b,c")
    a, b, c = R.vars()
    return Ideal(R, [a * a - b * c, b * b - a * c, c * c - a * b])


@pytest.fixture(scope="session")
def pfaffian5():
    return pfaffian_aci(5)


@pytest.fixture(scope="session")
def pfaffian6():
    return pfaffian_aci(6)


@pytest.fixture(scope="session")
def pfaffian7():
    return pfaffian_aci(7)


@pytest.fixture(scope="session")
def monomial_aci():
    """The square-free example I = (x1x2, x3x4, x2x3)."""
    R = Ring("x1,x2,x3,x4")
    gens = [R.poly("x1*x2"), R.poly("x3*x4"), R.poly("x2*x3")]
    return R, gens


@pytest.fixture(scope="session")
def generic_hb():
    """Generic 3x2 matrix ideal: linearly presented grade-2 family, d = 2."""
    from acikit.gallery import hilbert_burch_ideal
    R = Ring("z11,z12,z21,z22,z31,z32")
    Z = [[R.var("z11"), R.var("z12")],
         [R.var("z21"), R.var("z22")],
         [R.var("z31"), R.var("z32")]]
    return hilbert_burch_ideal(Z)
