import random
from math import ceil

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from affinehodge.brieskorn import connection
from affinehodge.errors import CriticalValue, DimensionMismatch, OddDimension
from affinehodge.hodge import (
    DBetaMap, compute_d_beta, compute_d_beta_with_retry, exceptional_polynomial,
    family_is_independent, fermat_hodge_lattice, gs_basis, hodge_basis, hodge_cycle_criterion,
    hodge_dimensions, hodge_labels,
)
from affinehodge.linalg import PolyElimination
from affinehodge.milnor import milnor_data
from affinehodge.numeric import UniPoly
from affinehodge.polyforms import Weights
from conftest import poly, random_tame

ASYM_TABLE = lambda beta: 4 if beta[0] == beta[1] == 0 else (2 if beta[0] == 0 and beta[1] == 1 else 1)


def _data(src, weights, names=None):
    f = poly(src, names)
    d = max(sum(a * e for a, e in zip(weights, exp)) for exp in f.terms)
    return milnor_data(f, Weights(weights, d))


# -- d_beta ---------------------------------------------------------------------


@pytest.mark.parametrize("src,weights,b", [
    ("x1^3+x2^3", (1, 1), 1), ("x1^2+x2^4+x3^3", (6, 3, 4), 2), ("x1^4+x2^4+x3^4", (1, 1, 1), mpq(-1, 3)),
])
def test_quasi_homogeneous_d_beta(src, weights, b):
    data = _data(src, weights)
    dmap = compute_d_beta(data, b)
    assert set(dmap.d_beta.values()) == {data.d - 1}


def test_cubic5_d_beta(cubic5):
    dmap = compute_d_beta(cubic5, 1)
    assert dmap.total() == 64 == (cubic5.d - 1) * cubic5.mu
    assert family_is_independent(cubic5, dmap.d_beta, 1)
    for beta, a in zip(cubic5.I, cubic5.A):
        assert dmap.d_beta[beta] < cubic5.d * (cubic5.n + 2 - a)


def test_cubic5_asymmetric_table_is_independent(cubic5):
    table = {beta: ASYM_TABLE(beta) for beta in cubic5.I}
    assert sum(table.values()) == 64
    assert family_is_independent(cubic5, table, 1)


def test_cubic5_all_two_family_degenerates(cubic5):
    # the constant family d_beta = 2 drops rank exactly where 27t^2 - 8 vanishes,
    # while the asymmetric table never does
    table = {beta: 2 for beta in cubic5.I}
    ex = exceptional_polynomial(cubic5, table)
    assert ex == UniPoly([0, -8, 0, 27])
    assert not (ex % UniPoly([-8, 0, 27]))
    asym = exceptional_polynomial(cubic5, {beta: ASYM_TABLE(beta) for beta in cubic5.I})
    assert asym == UniPoly.const(1)


def test_critical_value_rejected(cubic5, cubic_curve):
    with pytest.raises(CriticalValue):
        compute_d_beta(cubic5, 0)
    with pytest.raises(CriticalValue):
        compute_d_beta(cubic_curve, 0)
    assert compute_d_beta_with_retry(cubic_curve, 0).b == 1


@given(st.integers(0, 10 ** 6))
@settings(max_examples=15)
def test_d_beta_invariants(seed):
    rng = random.Random(seed)
    f, w = random_tame(rng, nvars=rng.choice([2, 3]), max_m=4)
    data = milnor_data(f, w)
    try:
        dmap = compute_d_beta_with_retry(data, rng.randint(1, 4))
    except CriticalValue:
        return
    assert dmap.total() == (data.d - 1) * data.mu
    assert family_is_independent(data, dmap.d_beta, dmap.b)
    for beta, a in zip(data.I, data.A):
        assert dmap.d_beta[beta] < data.d * (data.n + 2 - a)
    # dimension bookkeeping
    rep = hodge_basis(data, None, dmap, with_coords=False)
    dims = hodge_dimensions(data)
    assert sum(rep.counts.values()) == data.mu == dims.total
    assert {w for w, _ in rep.counts} <= {data.n, data.n + 1}


# -- dimension tables and the basis ---------------------------------------------


def test_dimension_examples(cubic5, cubic_curve):
    quad = _data("x1^2+x2^2", (1, 1))
    assert hodge_dimensions(quad).table() == {2: {1: 1}, 1: {}}
    assert hodge_dimensions(cubic5).table() == {5: {2: 5, 3: 5}, 4: {2: 1, 3: 20, 4: 1}}
    assert hodge_dimensions(cubic_curve).table() == {2: {1: 2}, 1: {1: 1, 2: 1}}


def test_quasi_homogeneous_labels(cubic_curve):
    dmap = compute_d_beta(cubic_curve, 1)
    labels = hodge_labels(cubic_curve, dmap)
    n = cubic_curve.n
    expect = set()
    for beta, a in zip(cubic_curve.I, cubic_curve.A):
        if a.denominator == 1:
            expect.add((n + 1, int(a), beta))
        else:
            expect.add((n, ceil(a), beta))
    assert set(labels) == expect


def test_cubic5_basis(cubic5):
    dmap = compute_d_beta(cubic5, 1)
    rep = hodge_basis(cubic5, connection(cubic5), dmap)
    assert rep.counts == {(5, 2): 5, (5, 3): 5, (4, 2): 1, (4, 3): 20, (4, 4): 1}
    low2 = [e for e in rep.entries if (e.weight, e.k) == (4, 2)]
    assert [e.beta for e in low2] == [(0,) * 5]
    assert len(rep.to_dict()["entries"]["5"]["2"]) == 5


def test_conic_basis():
    quad = _data("x1^2+x2^2", (1, 1))
    rep = hodge_basis(quad, None, compute_d_beta(quad, 1))
    assert len(rep.entries) == 1


def test_dimension_mismatch(cubic_curve):
    bad = DBetaMap(1, {beta: 0 for beta in cubic_curve.I}, [])
    with pytest.raises(DimensionMismatch):
        hodge_basis(cubic_curve, None, bad, with_coords=False)


# -- criterion --------------------------------------------------------------------


def test_cubic5_criterion(cubic5):
    dmap = compute_d_beta(cubic5, 1)
    crit = hodge_cycle_criterion(cubic5, connection(cubic5), dmap)
    assert crit.I_h == [((0,) * 5, 2)]
    cleared = crit.cleared()[0]
    idx = cubic5.index
    expect = {
        (1, 1, 0, 0, 0): UniPoly([-192, 0, 972]),
        (0, 1, 0, 0, 0): UniPoly([0, -48, 0, -405]),
        (1, 0, 0, 0, 0): UniPoly([0, -48, 0, -405]),
        (0, 0, 0, 0, 0): UniPoly([64, 0, -36, 0, 243]),
    }
    got = {b: cleared[idx[b]] for b in cubic5.I if cleared[idx[b]]}
    assert got == expect
    # functionals have full row rank
    rows = [{i: p for i, p in enumerate(v.nums) if p} for v in crit.functionals]
    assert PolyElimination(rows, cubic5.mu).run().rank() == len(crit.I_h)


def test_fermat_quartic_criterion():
    data = _data("x1^4+x2^4+x3^4", (1, 1, 1))
    dmap = compute_d_beta(data, 1)
    assert dmap.d_beta[(0, 0, 0)] == 3
    crit = hodge_cycle_criterion(data, connection(data), dmap)
    assert crit.I_h == [((0, 0, 0), 1)]


def test_odd_dimension(cubic_curve):
    with pytest.raises(OddDimension):
        hodge_cycle_criterion(cubic_curve, None, compute_d_beta(cubic_curve, 1))
    with pytest.raises(OddDimension):
        fermat_hodge_lattice((3, 3))


# -- Griffiths-Steenbrink labels --------------------------------------------------


def test_gs_basis_examples():
    assert gs_basis(poly("x1^3+x2^3+x3^3"), Weights((1, 1, 1), 3)) == {
        1: ["eta_alpha/g"], 2: ["X1X2X3eta_alpha/g^2"],
    }
    assert gs_basis(poly("x1^2+x2^2"), Weights((1, 1), 2)) == {1: ["eta_alpha/g"]}
    five = gs_basis(poly("x1^3+x2^3+x3^3+x4^3+x5^3"), Weights((1,) * 5, 3))
    assert {k: len(v) for k, v in five.items()} == {2: 5, 3: 5}
    with pytest.raises(ValueError):
        gs_basis(poly("x1^3+x2^3-x1"), Weights((1, 1), 3))


# -- Fermat lattice ----------------------------------------------------------------


@pytest.mark.parametrize("m,ih,kernel", [((3, 3, 3), 0, 8), ((2, 2, 2), 0, 1), ((4, 4, 4), 1, 25)])
def test_fermat_examples(m, ih, kernel):
    fp = fermat_hodge_lattice(m)
    assert len(fp.I_h) == ih and len(fp.kernel) == kernel
    assert fp.verify()


def test_fermat_quartic_rank_oracle():
    # entries i^(a1+a2+a3+3): the constraint matrix has rank 2 over Q
    fp = fermat_hodge_lattice((4, 4, 4))
    assert fp.mu == 27 and fp.N == 4
    i = sympy.I
    col = [i ** (sum(a) + 3) for a in fp.I]
    rows = sympy.Matrix([[sympy.re(z) for z in col], [sympy.im(z) for z in col]])
    assert rows.rank() == 2 and len(fp.kernel) == 27 - rows.rank()


@pytest.mark.parametrize("m", [(3, 3, 3, 3, 3), (2, 3, 4), (5, 5, 5)])
def test_fermat_kernel_verifies(m):
    fp = fermat_hodge_lattice(m)
    assert fp.verify()
    for v in fp.kernel:
        assert all(isinstance(x, int) for x in v)
