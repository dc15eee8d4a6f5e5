import pytest

from rifrange import build_symbol, product_from_coeffs

EX1_QUADS = [(2, -1, -1, 0), (3, -1, -2, 0)]
EX2_QUADS = [(2, -1, -1, 0), (3, -1, -2, 0), (3, -1, -1, -1)]


@pytest.fixture(scope="session")
def ex1():
    return product_from_coeffs(EX1_QUADS)


@pytest.fixture(scope="session")
def ex2():
    return product_from_coeffs(EX2_QUADS)


@pytest.fixture(scope="session")
def ex1_symbol(ex1):
    return build_symbol(ex1)


@pytest.fixture(scope="session")
def ex2_symbol(ex2):
    return build_symbol(ex2)
