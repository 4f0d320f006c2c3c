import pytest

from paramkit.parser import make_ring, parse_poly, parse_poly_list


@pytest.fixture(scope="session")
def heitmann():
    return make_ring(2, ["x", "u"], ["(x+u)^3*u^3", "x*(x+u)^2*u^2"], name="H")


@pytest.fixture(scope="session")
def highpower():
    return make_ring(0, ["a", "b", "c", "d"],
                     ["a*c", "a*d", "b*c", "b*d"], name="Q")


@pytest.fixture(scope="session")
def highpower_f2():
    return make_ring(2, ["a", "b", "c", "d"],
                     ["a*c", "a*d", "b*c", "b*d"], name="Qf2")


@pytest.fixture(scope="session")
def xz_ring():
    return make_ring(0, ["x", "z"], ["x^2*z", "z^2"], name="T")


@pytest.fixture(scope="session")
def ab_line():
    return make_ring(0, ["a", "b"], ["a*b"], name="L")


@pytest.fixture(scope="session")
def plane():
    return make_ring(0, ["x", "z"], [], name="P")


@pytest.fixture
def P():
    """parse a polynomial in the given ring"""
    return parse_poly


@pytest.fixture
def PL():
    return parse_poly_list
