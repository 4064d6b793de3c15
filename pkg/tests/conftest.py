"""Shared fixtures and helpers for the formsign test suite."""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from formsign import (
    Form,
    make_central3_scheme,
    make_midpoint3_scheme,
    make_trisection3_scheme,
    make_wds_scheme,
    parse_form,
)

VARS3 = ("x", "y", "z")

# Degree 6, PSD on the nonnegative orthant but with negative coefficients.
SYM_DIFF_TEXT = "x*(x-y)^5 - y*(-z-y)^5 - z*(x-z)^5"

# Degree 6, indefinite on the nonnegative orthant; 9 monomials as written.
MIXED_SIGN_TEXT = (
    "x^4*y^2 - 2*x^4*y*z + x^4*z^2 + 3*x^3*y^2*z - 2*x^3*y*z^2"
    " - 2*x^2*y^4 - 2*x^2*y^3*z + x^2*y^2*z^2 + y^6"
)

# Degree 24, indefinite; polynomialization of a sixth-root inequality,
# built as 192*N^6 - 729*(x^6+y^6+z^6)*D^6.
BIG_RADICAL_TEXT = (
    "192*(x^2*(z+x)*(x+y) + y^2*(x+y)*(y+z) + z^2*(y+z)*(z+x))^6"
    " - 729*(x^6 + y^6 + z^6)*((y+z)*(z+x)*(x+y))^6"
)


@pytest.fixture(scope="session")
def wds2():
    return make_wds_scheme(2)


@pytest.fixture(scope="session")
def wds3():
    return make_wds_scheme(3)


@pytest.fixture(scope="session")
def midpoint3():
    return make_midpoint3_scheme()


@pytest.fixture(scope="session")
def trisection3():
    return make_trisection3_scheme()


@pytest.fixture(scope="session")
def central3():
    return make_central3_scheme()


@pytest.fixture(scope="session")
def sym_diff_form():
    return parse_form(SYM_DIFF_TEXT, VARS3)


@pytest.fixture(scope="session")
def mixed_sign_form():
    return parse_form(MIXED_SIGN_TEXT, VARS3)


@pytest.fixture(scope="session")
def big_radical_form():
    return parse_form(BIG_RADICAL_TEXT, VARS3)


def all_exponents(n: int, degree: int):
    """All exponent vectors of length n with total degree `degree`."""
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return out


def random_form(rng: random.Random, n: int, degree: int, coeff_bound: int = 5,
                density: float = 0.6) -> Form:
    """A random nonzero form with integer coefficients in [-bound, bound]."""
    monos = all_exponents(n, degree)
    while True:
        terms = {}
        for exps in monos:
            if rng.random() < density:
                c = rng.randint(-coeff_bound, coeff_bound)
                if c:
                    terms[exps] = Fraction(c)
        if terms:
            return Form(n, terms)


def random_simplex_point(rng: random.Random, n: int, denominator: int = 60):
    """A random rational point with positive coordinates summing to 1."""
    weights = [rng.randint(1, denominator) for _ in range(n)]
    total = sum(weights)
    return tuple(Fraction(w, total) for w in weights)
