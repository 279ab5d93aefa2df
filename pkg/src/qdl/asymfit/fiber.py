"""Area of the Milnor fiber ``{f = t} ∩ {|x| <= R}``.

The fiber is treated as a branched cover of the x-disc.  Over a point ``x``
the y-branches are the roots of ``f(x, y) = t``; the Euclidean area form of
C^2 pulls back to ``(1 + |dy/dx|^2) dA(x)`` on each branch, with
``dy/dx = -f_x / f_y``.  The density blows up like ``|x - x0|^(-1)`` at a
simple branch point, which is integrable; the polar quadrature puts
breakpoints at the radii and angles of all branch points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from scipy.integrate import tanhsinh

from ..algebra import GERM_VARIABLES, MPoly
from ..exceptions import AccuracyError, PreconditionError, UnsupportedInputError

INTEGRANDS = ("euclidean_area",)
DEFAULT_EPSABS = 1e-9
COLLISION_GAP = 1e-3  # relative distance of a branch radius from the contour
MAX_PERTURBATION = 0.01
_CHUNK = 32  # rings per vectorized inner call, bounds memory


@dataclass(frozen=True)
class FiberIntegral:
    value: float
    error: float
    radius: float
    requested_radius: float
    branch_points: tuple
    metadata: dict = field(default_factory=dict)


class _CoverModel:
    """Numeric data for ``f(x, y) - t`` as a polynomial in ``y``."""

    def __init__(self, f: MPoly):
        f = f.restrict(GERM_VARIABLES)
        d = f.degree_in("y")
        if d < 1:
            raise UnsupportedInputError("f does not involve y; the fiber is not a cover of the x-disc")
        lead = [m for m in f.terms if m[1] == d]
        if len(lead) != 1 or lead[0][0] != 0:
            raise UnsupportedInputError("f must be monic in y up to a constant factor")
        self.f = f
        self.d = d
        self.lead = complex(f.terms[lead[0]])
        # fast path: c*y^d - p(x)
        self.separable = all(m[1] == 0 or m == (0, d) for m in f.terms)
        # coefficient of y^k as numpy poly in x (highest power first)
        self.ycoeffs = []
        for k in range(d + 1):
            part = {m[0]: complex(c) for m, c in f.terms.items() if m[1] == k}
            deg = max(part, default=0)
            self.ycoeffs.append(np.array([part.get(j, 0j) for j in range(deg, -1, -1)]))
        self.p = -self.ycoeffs[0]  # f = c y^d - p(x) in the separable case
        self.dp = np.polyder(self.p) if len(self.p) > 1 else np.array([0j])
        fx, fy = f.diff("x"), f.diff("y")
        self.fx_terms = [(m, complex(c)) for m, c in fx.terms.items()]
        self.fy_terms = [(m, complex(c)) for m, c in fy.terms.items()]
        self.x_order = min((m[0] for m in f.terms if m[1] == 0), default=None)

    def density(self, x, t: complex):
        """Sum over y-branches of ``1 + |f_x/f_y|^2`` at the points ``x``."""
        x = np.asarray(x, dtype=complex)
        d = self.d
        if self.separable:
            dp = np.abs(np.polyval(self.dp, x))
            if d == 1:
                return 1.0 + dp ** 2 / abs(self.lead) ** 2
            aq = np.abs(np.polyval(self.p, x) + t)
            with np.errstate(divide="ignore"):
                # |y|^(2(d-1)) = |q/c|^(2(d-1)/d)
                ypow = (aq / abs(self.lead)) ** (2.0 * (d - 1) / d)
                return d + dp * dp / (d * abs(self.lead) ** 2 * ypow)
        coeffs = [np.polyval(c, x) for c in self.ycoeffs]
        coeffs[0] = coeffs[0] - t
        if d == 2:
            a, b, c = coeffs[2], coeffs[1], coeffs[0]
            s = np.sqrt(b * b - 4 * a * c)
            ys = [(-b + s) / (2 * a), (-b - s) / (2 * a)]
        else:
            flat = np.array([np.roots([c[k] for c in coeffs[::-1]]) for k in range(x.size)])
            ys = [flat[:, j].reshape(x.shape) for j in range(d)]
        total = np.zeros(x.shape)
        for y in ys:
            fx = sum(c * x ** m[0] * y ** m[1] for m, c in self.fx_terms)
            fy = sum(c * x ** m[0] * y ** m[1] for m, c in self.fy_terms)
            with np.errstate(divide="ignore", invalid="ignore"):
                total = total + 1.0 + np.abs(fx / fy) ** 2
        return total

    def branch_points(self, t: complex) -> np.ndarray:
        if self.d == 1:
            return np.array([], dtype=complex)
        if self.separable:
            q = self.p.copy()
            q[-1] += t
            q = np.trim_zeros(q, "f")
            return np.roots(q) if len(q) > 1 else np.array([], dtype=complex)
        coeffs = _discriminant_in_x(self.f)
        poly = np.array([sum(c * t ** k for k, c in enumerate(row)) for row in coeffs])
        poly = np.trim_zeros(poly, "f")
        return np.roots(poly) if len(poly) > 1 else np.array([], dtype=complex)


@lru_cache(maxsize=32)
def _discriminant_in_x(f: MPoly):
    """Coefficients of ``Res_y(f - T, f_y)`` as a polynomial in ``x`` whose
    coefficients are polynomials in ``T`` (ascending), highest x power first."""
    import sympy

    x, y, T = sympy.symbols("x y T")
    expr = sum(sympy.Rational(c.re.numerator, c.re.denominator) * x ** m[0] * y ** m[1]
               + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator) * x ** m[0] * y ** m[1]
               for m, c in f.terms.items()) - T
    res = sympy.Poly(sympy.resultant(expr, sympy.diff(expr, y), y), x, T)
    xdeg = res.degree(x)
    tdeg = res.degree(T)
    rows = []
    for i in range(xdeg, -1, -1):
        row = [complex(res.coeff_monomial(x ** i * T ** k)) for k in range(tdeg + 1)]
        rows.append(tuple(row))
    return tuple(rows)


def _cluster(values, tol: float = 1e-9) -> list:
    """Sorted values with near-duplicates (numerically split roots) merged."""
    out = []
    for v in sorted(values):
        if out and v - out[-1] <= tol * max(1.0, abs(v)):
            continue
        out.append(v)
    return out


def _check_smallness(model: _CoverModel, t: complex, radius: float):
    if model.x_order is None:
        return
    bound = radius ** model.x_order / 4
    if abs(t) > bound:
        raise PreconditionError(
            f"|t| = {abs(t):.3g} is too large for radius {radius}: need |t| <= radius^{model.x_order}/4 "
            f"= {bound:.3g}")


def _choose_radius(radius: float, branch_radii) -> tuple[float, float]:
    """Radius within 1% of ``radius`` keeping branch points off the contour."""
    def gap(r):
        return min((abs(b - r) / r for b in branch_radii), default=math.inf)

    if gap(radius) >= COLLISION_GAP:
        return radius, 0.0
    best = radius
    for k in range(1, 41):
        for sign in (1, -1):
            r = radius * (1 + sign * MAX_PERTURBATION * k / 40)
            if gap(r) > gap(best):
                best = r
        if gap(best) >= COLLISION_GAP:
            break
    return best, best / radius - 1


def fiber_integral(f: MPoly, t: complex, radius: float, integrand: str = "euclidean_area",
                   epsabs: float = DEFAULT_EPSABS) -> FiberIntegral:
    """Adaptive polar quadrature of the pulled-back area form (see module doc)."""
    if integrand not in INTEGRANDS:
        raise UnsupportedInputError(f"unknown integrand {integrand!r}; choose from {INTEGRANDS}")
    if not radius > 0:
        raise PreconditionError("radius must be positive")
    model = _cover_model(f)
    t = complex(t)
    _check_smallness(model, t, radius)
    bps = model.branch_points(t)
    branch_radii = _cluster(float(abs(b)) for b in bps)
    r_used, shift = _choose_radius(radius, branch_radii)
    meta = {"integrand": integrand, "separable": model.separable}
    if shift:
        meta["radius_perturbation"] = shift
    angles = _cluster(cmath.phase(b) % (2 * math.pi) for b in bps if abs(b) > 0)
    angles = [a for a in angles if 1e-12 < a < 2 * math.pi - 1e-12]
    breaks = [0.0] + [r for r in branch_radii if 0 < r < r_used] + [r_used]

    phi_lo = np.array([0.0] + angles)
    phi_hi = np.array(angles + [2 * math.pi])
    inner_atol = epsabs / (4 * math.pi * r_used)
    worst = [0.0]

    def rings(rho):
        rho = np.asarray(rho, dtype=float)
        flat = rho.ravel()
        out = np.empty(flat.size)
        for i in range(0, flat.size, _CHUNK):
            r = flat[i:i + _CHUNK, None] * np.ones(phi_lo.size)
            res = tanhsinh(lambda phi, rr: model.density(rr * np.exp(1j * phi), t),
                           np.broadcast_to(phi_lo, r.shape), np.broadcast_to(phi_hi, r.shape),
                           args=(r,), atol=inner_atol, rtol=1e-12, maxlevel=10)
            worst[0] = max(worst[0], float(np.max(res.error.sum(-1) * flat[i:i + _CHUNK])))
            out[i:i + _CHUNK] = res.integral.sum(-1) * flat[i:i + _CHUNK]
        return out.reshape(rho.shape)

    total, err = 0.0, 0.0
    with np.errstate(invalid="ignore", over="ignore"):
        for a, b in zip(breaks, breaks[1:]):
            if b <= a:
                continue
            res = tanhsinh(rings, a, b, atol=epsabs / len(breaks), rtol=1e-13, maxlevel=10)
            total += float(res.integral)
            err += float(res.error)
    meta["max_ring_error"] = worst[0]
    if not math.isfinite(total) or err > max(epsabs, 1e-12 * abs(total)) * 10:
        raise AccuracyError(f"fiber quadrature did not converge (error estimate {err:.3g})",
                            achieved=err)
    return FiberIntegral(value=total, error=err, radius=r_used, requested_radius=radius,
                         branch_points=tuple(complex(b) for b in bps), metadata=meta)


@lru_cache(maxsize=64)
def _cover_model(f: MPoly) -> _CoverModel:
    return _CoverModel(f)


def integrate_milnor_fiber(f: MPoly, t: complex, radius: float,
                           integrand: str = "euclidean_area", epsabs: float = DEFAULT_EPSABS) -> float:
    """Area of ``{f = t}`` over the disc ``|x| <= radius``, summed over y-branches."""
    return fiber_integral(f, t, radius, integrand, epsabs).value
