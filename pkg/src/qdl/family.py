"""Degeneration data of a one-parameter family of curves.

A family is an affine local model ``F(x, y, t) = 0`` whose fiber over ``t``
is ``X_t``.  For a reduced special fiber with isolated singular points the
jump of Euler characteristics ``chi(X_0) - chi(X_t)`` is the sum of the local
Milnor numbers of the fiber; adding the Milnor number ``mu_X`` of the total
space gives the discriminant order ``delta_f``, and ``rank * delta_f / 12``
is the predicted coefficient of ``log|t|`` in the log-norm of a section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import univariate
from .algebra import GERM_VARIABLES, GaussRational, MPoly, TermOrder
from .exceptions import (InsufficientDataError, NonReducedFiberError, UnsupportedInputError,
                         ValidationError)
from .local_algebra import INFINITE, is_zero_dimensional, milnor_number, standard_basis
from .weierstrass import WeierstrassModel, delta_f_check, discriminant, minimalize, ord0

FAMILY_CONTEXT = ("x", "y", "t")


def _as_point(p) -> tuple:
    return tuple(GaussRational.coerce(c) for c in p)


@dataclass(frozen=True)
class FamilyModel:
    f: MPoly
    singular_points: tuple = ()
    rank_E: int = 1

    def __post_init__(self):
        object.__setattr__(self, "f", self.f.embed(FAMILY_CONTEXT))
        pts = tuple(_as_point(p) for p in self.singular_points)
        object.__setattr__(self, "singular_points", pts)
        if self.rank_E < 1:
            raise ValidationError("rank of E must be positive")
        fiber = self.special_fiber()
        dx, dy = fiber.diff("x"), fiber.diff("y")
        for p in pts:
            at = {"x": p[0], "y": p[1]}
            if fiber.evaluate(at) or dx.evaluate(at) or dy.evaluate(at):
                raise ValidationError(
                    f"point ({p[0]}, {p[1]}) is not a singular point of the fiber over t = 0")

    def special_fiber(self) -> MPoly:
        return self.f.substitute({"t": 0}).restrict(GERM_VARIABLES)

    def local_germ(self, point) -> MPoly:
        """Fiber over ``t = 0`` translated so that ``point`` is the origin."""
        return self.special_fiber().translate({"x": point[0], "y": point[1]})


@dataclass(frozen=True)
class DegenerationReport:
    mu_total: int | None
    mu_X: int
    chi_diff: int
    delta_f: int
    predicted_slope: Fraction
    rank_E: int
    chi_special: int | None = None
    chi_generic: int | None = None
    local_mu: tuple = field(default=())


def _as_univariate(p: MPoly, var: str):
    p = p.restrict((var,))
    deg = max((m[0] for m in p.terms), default=-1)
    return [p.coefficient((k,)) for k in range(deg + 1)]


def _from_univariate(coeffs, var: str) -> MPoly:
    return MPoly((var,), {(k,): c for k, c in enumerate(coeffs) if c})


def find_singular_points(f: MPoly) -> tuple:
    """Singular points of the fiber over ``t = 0`` for families where one
    partial derivative of the fiber is linear in a variable with constant
    coefficient (Weierstrass-type equations), and all points are Q(i)-rational.
    """
    fiber = f.embed(FAMILY_CONTEXT).substitute({"t": 0}).restrict(GERM_VARIABLES)
    if not is_zero_dimensional([fiber, fiber.diff("x"), fiber.diff("y")], GERM_VARIABLES):
        raise NonReducedFiberError(
            "special fiber is not reduced (non-isolated singular locus); contributions of "
            "non-reduced components are not covered")
    for solve_var, other in (("y", "x"), ("x", "y")):
        d = fiber.diff(solve_var)
        if d.degree_in(solve_var) != 1:
            continue
        k = GERM_VARIABLES.index(solve_var)
        lin = {m: c for m, c in d.terms.items() if m[k] == 1}
        if len(lin) != 1 or sum(next(iter(lin))) != 1:
            continue
        lead = next(iter(lin.values()))
        rest = MPoly(GERM_VARIABLES, {m: c for m, c in d.terms.items() if m[k] == 0})
        solved = rest.scale(-lead.inverse())  # solve_var = solved(other)
        h = fiber.substitute({solve_var: solved})
        hu = _as_univariate(h, other)
        if not univariate.normalize(hu):
            continue
        g = univariate.gcd(hu, univariate.derivative(hu))
        radical, _ = univariate.divmod_poly(g, univariate.gcd(g, univariate.derivative(g)))
        roots = sorted(set(univariate.linear_roots(radical)), key=lambda r: (r.re, r.im))
        if len(roots) != len(radical) - 1:
            raise UnsupportedInputError(
                "singular points are not all Q(i)-rational; supply them explicitly")
        pts = []
        for r in roots:
            s = solved.evaluate({other: r})
            pts.append((r, s) if other == "x" else (s, r))
        return tuple(pts)
    raise UnsupportedInputError(
        "automatic singular-point search needs a partial derivative linear in x or y; "
        "supply the points explicitly")


def total_milnor(fam: FamilyModel) -> int:
    total = 0
    for p in fam.singular_points:
        mu = milnor_number(fam.local_germ(p)).mu
        if mu == INFINITE:
            raise UnsupportedInputError(f"infinite Milnor number at ({p[0]}, {p[1]})")
        total += mu
    return total


def _global_tjurina(fiber: MPoly) -> int:
    sb = standard_basis([fiber, fiber.diff("x"), fiber.diff("y")], TermOrder.GLOBAL_DEGREVLEX)
    monos = sb.standard_monomials()
    return INFINITE if monos is None else len(monos)


def chi_difference(fam: FamilyModel) -> int:
    """``chi(X_0) - chi(X_t)`` as the sum of local Milnor numbers of the fiber.

    Checks that the fiber is reduced and that the listed points account for
    every singular point (their Tjurina numbers must exhaust the global
    colength of ``(f, f_x, f_y)``).
    """
    fiber = fam.special_fiber()
    gens = [fiber, fiber.diff("x"), fiber.diff("y")]
    if not is_zero_dimensional(gens, GERM_VARIABLES):
        raise NonReducedFiberError(
            "special fiber is not reduced (non-isolated singular locus); contributions of "
            "non-reduced components are not covered")
    local_tau = sum(milnor_number(fam.local_germ(p)).tjurina for p in fam.singular_points)
    if local_tau != _global_tjurina(fiber):
        raise ValidationError("listed points do not account for every singular point of the fiber")
    return total_milnor(fam)


def delta_f(fam: FamilyModel, mu_X: int = 0, chi_diff: int | None = None) -> DegenerationReport:
    """Discriminant order ``mu_X + chi(X_0) - chi(X_t)`` and predicted slope."""
    local = tuple(milnor_number(fam.local_germ(p)).mu for p in fam.singular_points)
    if chi_diff is None:
        try:
            chi_diff = chi_difference(fam)
        except ValidationError as exc:
            raise InsufficientDataError(
                "chi difference is neither computable from the listed points nor supplied") from exc
    mu_total = sum(local) if all(m != INFINITE for m in local) else None
    d = int(mu_X) + int(chi_diff)
    return DegenerationReport(mu_total=mu_total, mu_X=int(mu_X), chi_diff=int(chi_diff), delta_f=d,
                              predicted_slope=Fraction(fam.rank_E * d, 12), rank_E=fam.rank_E,
                              local_mu=local)


def surface_milnor(f: MPoly, point) -> int:
    """Milnor number of the total space ``{F = 0}`` at ``(point, t = 0)``."""
    g = f.embed(FAMILY_CONTEXT).translate({"x": point[0], "y": point[1]})
    mu = milnor_number(g, FAMILY_CONTEXT).mu
    if mu == INFINITE:
        raise UnsupportedInputError("total space has a non-isolated singularity")
    return mu


@dataclass(frozen=True)
class WeierstrassDegeneration:
    model: WeierstrassModel
    u_order: int
    family: FamilyModel
    report: DegenerationReport
    ord_delta: int
    check: object  # weierstrass.DeltaCheck

    @property
    def routes_agree(self) -> bool:
        return (self.report.delta_f == self.ord_delta and self.check.consistent
                and self.report.mu_X == self.check.mu_duval
                and self.report.chi_diff == self.check.chi_fiber_diff)


def weierstrass_degeneration(model: WeierstrassModel, rank_E: int = 1) -> WeierstrassDegeneration:
    """Discriminant order of a Weierstrass family computed two ways.

    Route 1: Milnor numbers from standard bases (surface germ in three
    variables plus fiber germs).  Route 2: ``ord0`` of the discriminant and
    the Kodaira/du Val table.
    """
    minimal, u = minimalize(model)
    surface = minimal.surface()
    pts = find_singular_points(surface)
    fam = FamilyModel(surface, pts, rank_E)
    mu_X = sum(surface_milnor(surface, p) for p in pts)
    report = delta_f(fam, mu_X=mu_X)
    chi_smooth = 0
    report = DegenerationReport(**{**report.__dict__, "chi_generic": chi_smooth,
                                   "chi_special": chi_smooth + report.chi_diff})
    return WeierstrassDegeneration(model=minimal, u_order=u, family=fam, report=report,
                                   ord_delta=ord0(discriminant(minimal)),
                                   check=delta_f_check(minimal))


def deligne_rr_constant(genus: int, rank_E: int) -> float:
    """``rank (2 - 2g) (zeta'(-1)/zeta(-1) + 1/2)``."""
    if genus < 0 or rank_E < 1:
        raise ValidationError("need genus >= 0 and rank >= 1")
    factor = rank_E * (2 - 2 * genus)
    if factor == 0:
        return 0.0
    with mpmath.workdps(30):
        ratio = mpmath.zeta(-1, derivative=1) / mpmath.zeta(-1) + mpmath.mpf(1) / 2
        return float(factor * ratio)
