import random

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import settings

from affinehodge.milnor import milnor_data
from affinehodge.numeric import UniPoly
from affinehodge.parse import parse_polynomial
from affinehodge.polyforms import MPoly, Weights

CUBIC5 = "x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2"

T = sympy.Symbol("t")

settings.register_profile("exact", deadline=None, print_blob=True)
settings.load_profile("exact")

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def poly(src, names=None):
    return parse_polynomial(src, names)


def to_sympy_uni(p: UniPoly):
    return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(p.coeffs)] or [0],
                      T, domain="QQ")


def from_sympy_uni(p) -> UniPoly:
    coeffs = sympy.Poly(p, T).all_coeffs()[::-1]
    return UniPoly([mpq(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs])


def to_sympy_expr(p: MPoly, syms):
    acc = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        acc += term
    return acc


def random_tame(rng: random.Random, nvars=2, max_m=4, lower_terms=2):
    """sum x_i^{m_i} plus a few random lower-degree monomials, with matching weights."""
    from math import gcd, lcm

    m = [rng.randint(2, max_m) for _ in range(nvars)]
    d = lcm(*m)
    alphas = [d // mi for mi in m]
    g = 0
    for a in alphas:
        g = gcd(g, a)
    alphas = [a // g for a in alphas]
    d //= g
    terms = {}
    for i, mi in enumerate(m):
        e = [0] * nvars
        e[i] = mi
        terms[tuple(e)] = mpq(1)
    for _ in range(lower_terms):
        e = tuple(rng.randint(0, mi - 1) for mi in m)
        if sum(a * x for a, x in zip(alphas, e)) < d and any(e):
            terms[e] = mpq(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2, 3]))
    return MPoly(nvars, terms), Weights(tuple(alphas), d)


@pytest.fixture(scope="session")
def cubic5():
    return milnor_data(poly(CUBIC5), Weights((1,) * 5, 3))


@pytest.fixture(scope="session")
def elliptic():
    """x^2 + y^3 - y with weights (3, 2)."""
    return milnor_data(poly("x^2+y^3-y", ["x", "y"]), Weights((3, 2), 6))


@pytest.fixture(scope="session")
def cubic_curve():
    return milnor_data(poly("x1^3+x2^3"), Weights((1, 1), 3))


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(log):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}")
