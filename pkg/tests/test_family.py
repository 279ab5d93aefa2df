from fractions import Fraction

import pytest

from qdl.algebra import GaussRational
from qdl.exceptions import (InsufficientDataError, NonReducedFiberError, UnsupportedInputError,
                            ValidationError)
from qdl.family import (FamilyModel, chi_difference, delta_f, deligne_rr_constant,
                        find_singular_points, surface_milnor, weierstrass_degeneration)
from qdl.parser import parse_poly
from qdl.weierstrass import WeierstrassModel
from oracles import DELIGNE_GENUS0_RANK1, deligne_constant_oracle
from test_weierstrass import SUITE, W

CTX = ("x", "y", "t")


def fam(text, points=None, rank=1):
    f = parse_poly(text).embed(CTX)
    return FamilyModel(f, tuple(points if points is not None else find_singular_points(f)), rank)


def test_node_family():
    F = fam("y^2 - x^2*(x + 1) - t", [(0, 0)])
    rep = delta_f(F)
    assert rep.local_mu == (1,) and rep.chi_diff == 1 and rep.delta_f == 1
    assert rep.predicted_slope == Fraction(1, 12)


def test_two_nodes_add():
    F = fam("y^2 - (x^2 - 1)^2 - t")
    assert set(F.singular_points) == {(GaussRational(-1), 0), (GaussRational(1), 0)}
    assert delta_f(F).delta_f == 2


def test_rank_scales_slope():
    F = fam("y^2 - x^2*(x + 1) - t", [(0, 0)], rank=3)
    assert delta_f(F).predicted_slope == Fraction(3, 12)


def test_point_validation():
    with pytest.raises(ValidationError):
        fam("y^2 - x^3 - t", [(1, 0)])
    with pytest.raises(ValidationError):
        fam("y^2 - x^2 - t", [(0, 0)], rank=0)


def test_missing_points_detected():
    F = fam("y^2 - (x^2 - 1)^2 - t", [(1, 0)])
    with pytest.raises(ValidationError):
        chi_difference(F)
    with pytest.raises(InsufficientDataError):
        delta_f(F)
    assert delta_f(F, chi_diff=2).delta_f == 2


def test_non_reduced_fiber():
    with pytest.raises(NonReducedFiberError):
        find_singular_points(parse_poly("y^2 - t").embed(CTX))


def test_irrational_points_unsupported():
    with pytest.raises(UnsupportedInputError):
        find_singular_points(parse_poly("y^2 - (x^2 - 2)^2 - t").embed(CTX))


def test_gaussian_points():
    F = fam("y^2 - (x^2 + 1)^2 - t")
    assert set(F.singular_points) == {(GaussRational(0, 1), 0), (GaussRational(0, -1), 0)}


def test_surface_milnor():
    assert surface_milnor(parse_poly("y^2 - x^3 - t^3"), (0, 0)) == 4  # D4
    assert surface_milnor(parse_poly("y^2 - x^3 - t^2"), (0, 0)) == 2  # A2
    with pytest.raises(UnsupportedInputError):
        surface_milnor(parse_poly("y^2 - x^2*t^2"), (0, 0))


@pytest.mark.parametrize("kw,od,sym,duval", SUITE, ids=[s[2] + "-" + str(s[0]) for s in SUITE])
def test_two_routes_agree(kw, od, sym, duval):
    deg = weierstrass_degeneration(W(**kw))
    assert deg.routes_agree
    assert deg.report.delta_f == deg.ord_delta == od


def test_cusp_family_k():
    for k in range(1, 6):
        deg = weierstrass_degeneration(W(a6=f"t^{k}"))
        assert deg.ord_delta == 2 * k
        assert (deg.check.mu_duval, deg.check.chi_fiber_diff) == (2 * k - 2, 2)


def test_deligne_constant():
    assert deligne_rr_constant(1, 1) == 0.0
    assert deligne_rr_constant(1, 5) == 0.0
    assert abs(deligne_rr_constant(0, 1) - DELIGNE_GENUS0_RANK1) < 1e-6
    assert abs(deligne_rr_constant(0, 1) - deligne_constant_oracle(0, 1)) < 1e-12
    assert abs(deligne_rr_constant(2, 3) - deligne_constant_oracle(2, 3)) < 1e-12
    with pytest.raises(ValidationError):
        deligne_rr_constant(-1, 1)


def test_weierstrass_model_type():
    assert isinstance(weierstrass_degeneration(W(a6="t")).model, WeierstrassModel)
