import pytest

from qdl.algebra import MPoly
from qdl.exceptions import DegenerateModelError, PreconditionError
from qdl.parser import parse_poly
from qdl.weierstrass import (WeierstrassModel, delta_f_check, discriminant, invariants,
                             is_minimal, kodaira_type, minimalize, ord0, short_model)

T = ("t",)


def W(**kw):
    return WeierstrassModel.from_coefficients(**{k: parse_poly(v) for k, v in kw.items()})


def tpoly(text):
    return parse_poly(text).restrict(T)


# the Weierstrass suite: (coefficients, ord disc, Kodaira symbol, du Val)
SUITE = [
    (dict(a6="t"), 2, "II", None),
    (dict(a6="t^2"), 4, "IV", "A2"),
    (dict(a6="t^3"), 6, "I0*", "D4"),
    (dict(a6="t^4"), 8, "IV*", "E6"),
    (dict(a6="t^5"), 10, "II*", "E8"),
    (dict(a4="t"), 3, "III", "A1"),
    (dict(a4="t^3"), 9, "III*", "E7"),
    (dict(a4="-3", a6="2 + t"), 1, "I1", None),
    (dict(a4="-3", a6="2 + t^3"), 3, "I3", "A2"),
    (dict(a4="-3*t^2", a6="2*t^3 + t^4"), 7, "I1*", "D5"),
    (dict(a4="1"), 0, "I0", None),
    (dict(a1="1", a6="t"), 1, "I1", None),
]


def test_discriminant_examples():
    m = W(a4="-3", a6="2 + t")
    assert discriminant(m) == tpoly("-432*(4t + t^2)")
    assert ord0(discriminant(m)) == 1
    assert discriminant(W(a4="1")) == -64


def test_identically_singular_rejected():
    with pytest.raises(DegenerateModelError):
        W(a6="0")


@pytest.mark.parametrize("kw,od,sym,duval", SUITE, ids=[s[2] + "-" + str(s[0]) for s in SUITE])
def test_suite(kw, od, sym, duval):
    m, u = minimalize(W(**kw))
    assert u == 0 and is_minimal(m)
    kt = kodaira_type(m)
    assert (ord0(discriminant(m)), kt.symbol, kt.du_val) == (od, sym, duval)
    chk = delta_f_check(m)
    assert chk.consistent and chk.ord_delta == chk.mu_duval + chk.chi_fiber_diff
    inv = invariants(m)
    num, den = inv.j_num, inv.j_den
    if num.diff("t") * den - num * den.diff("t"):  # j = num/den is not constant
        assert od < 12


def test_minimalize_strips_two_steps():
    m, u = minimalize(W(a6="t^12"))
    assert u == 2 and m.a6 == 1 and ord0(discriminant(m)) == 0


def test_minimalize_via_short_model():
    # a1 = t is not divisible by t^1 after one step; the short model is used
    m, u = minimalize(W(a1="t^2", a6="t^7"))
    assert u == 1 and is_minimal(m)
    assert ord0(discriminant(m)) == ord0(discriminant(W(a1="t^2", a6="t^7"))) - 12


def test_short_model_preserves_invariants():
    m = W(a1="1", a2="t", a3="t^2", a4="3", a6="t - 1")
    s = short_model(m)
    assert (invariants(s).c4, invariants(s).c6, discriminant(s)) == (
        invariants(m).c4, invariants(m).c6, discriminant(m))


def test_kodaira_needs_minimal():
    with pytest.raises(PreconditionError):
        kodaira_type(W(a6="t^12"))


def test_surface_equation():
    f = W(a4="-3", a6="2 + t").surface()
    x, y, t = (MPoly.var(v, ("x", "y", "t")) for v in "xyt")
    assert f == y ** 2 - x ** 3 + 3 * x - 2 - t
