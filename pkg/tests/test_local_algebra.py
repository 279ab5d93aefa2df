import time

import pytest
from hypothesis import given, settings, strategies as st

from qdl.algebra import MPoly, TermOrder, quasi_homogeneous_weights
from qdl.exceptions import DegreeCapError, DomainError
from qdl.local_algebra import (INFINITE, jacobian, milnor_number, mora_normal_form,
                               standard_basis, tjurina_number, truncated_colength)
from qdl.parser import parse_poly
from suite import ADE, SUITE

x, y = MPoly.var("x"), MPoly.var("y")


def test_normal_form_examples():
    basis = [3 * x ** 2, 2 * y]
    assert not mora_normal_form(y, basis)
    assert mora_normal_form(x, basis) == x


def test_normal_form_uses_units():
    # x - x^2 is x times a unit locally, so x reduces to 0 modulo it
    assert not mora_normal_form(x, [x - x ** 2])


def test_staircases():
    assert standard_basis([3 * x ** 2, 2 * y]).leading_staircase == ((0, 1), (2, 0))
    sb = standard_basis([x ** 2, y ** 3, x * y])
    assert set(sb.leading_staircase) == {(2, 0), (1, 1), (0, 3)}


def test_local_versus_global_order():
    # (x - x^2, y) cuts out {0, 1}; only the origin is seen locally
    local = standard_basis([x - x ** 2, y])
    glob = standard_basis([x - x ** 2, y], TermOrder.GLOBAL_DEGREVLEX)
    assert local.standard_monomials() == [(0, 0)]
    assert glob.standard_monomials() == [(0, 0), (1, 0)]


def test_milnor_examples():
    d = milnor_number(x ** 2 + y ** 2)
    assert d.mu == 1 and d.algebra_basis == ((0, 0),)
    assert milnor_number(x ** 3 + y ** 4).mu == 6
    cusp = milnor_number(y ** 2 - x ** 3)
    assert cusp.mu == 2 and set(cusp.algebra_basis) == {(0, 0), (1, 0)}


def test_tjurina_examples():
    assert tjurina_number(y ** 2 - x ** 3) == 2
    assert tjurina_number(x ** 2 + y ** 2) == 1
    f = y ** 2 - x ** 3 - x ** 4
    # oracle: truncated linear algebra in degree <= 8
    tau = truncated_colength([f] + jacobian(f), 8)
    assert tjurina_number(f) == tau <= milnor_number(f).mu


def test_non_isolated():
    assert milnor_number(x ** 2).mu == INFINITE
    assert milnor_number(x * y ** 2).mu == INFINITE


def test_domain_errors():
    with pytest.raises(DomainError):
        milnor_number(x + 1)
    with pytest.raises(DomainError):
        milnor_number(MPoly.zero())


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        milnor_number(x ** 65 + y ** 2)


def test_ade_table_fast():
    start = time.perf_counter()
    for name, text, mu in ADE:
        assert milnor_number(parse_poly(text)).mu == mu, name
    assert time.perf_counter() - start < 1.0


@pytest.mark.parametrize("name,f,mu", SUITE, ids=[s[0] for s in SUITE])
def test_suite_against_oracles(name, f, mu):
    data = milnor_number(f)
    assert data.mu == mu == len(data.algebra_basis)
    tau = tjurina_number(f)
    assert tau <= mu
    if quasi_homogeneous_weights(f) is not None:
        assert tau == mu
    if mu <= 12:
        gens = jacobian(f)
        assert truncated_colength(gens, mu + 2) == truncated_colength(gens, mu + 3) == mu


exps = st.tuples(st.integers(0, 5), st.integers(0, 5))


@settings(max_examples=40)
@given(st.lists(st.tuples(exps, st.integers(-3, 3).filter(bool)), min_size=1, max_size=4))
def test_tau_at_most_mu(terms):
    f = MPoly(("x", "y"), {m: c for m, c in terms if sum(m) >= 2})
    if not f:
        return
    mu = milnor_number(f).mu
    if mu != INFINITE:
        assert tjurina_number(f) <= mu
        if mu <= 8:
            assert truncated_colength(jacobian(f), mu + 2) == mu
