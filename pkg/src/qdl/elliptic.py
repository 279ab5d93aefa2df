"""Periods, Dedekind eta and the Quillen log-norm along Weierstrass families.

The fiber over ``t`` is put in the form ``Y^2 = 4X^3 - g2 X - g3`` with
``g2 = c4/12``, ``g3 = c6/216`` so that ``dX/Y`` is the invariant differential
``dx/(2y + a1 x + a3)``.  Its period lattice comes from the complex AGM.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConditioningWarning, DomainError
from .weierstrass import WeierstrassModel, invariants

DISC_TOL = 1e-13
DISC_WARN = 1e-6

# det' of the Kodaira Laplacian (half the de Rham Laplacian) on a unit-area
# flat torus is DET_CONSTANT * Im(tau) * |eta(tau)|^4; see tests/oracles.py.
DET_CONSTANT = 2.0


@dataclass(frozen=True)
class TorusData:
    omega1: complex
    omega2: complex
    tau: complex
    area: float
    warnings: tuple = field(default=())


@dataclass(frozen=True)
class QuillenSample:
    t: complex
    log_l2: float
    zeta_prime_zero: float
    log_quillen: float
    tau: complex
    area: float


def agm(a: complex, b: complex, tol: float = 1e-16, max_iter: int = 200) -> complex:
    """Complex arithmetic-geometric mean with the optimal square-root branch."""
    a, b = complex(a), complex(b)
    for _ in range(max_iter):
        if abs(a - b) <= tol * abs(a):
            return a
        a, b = (a + b) / 2, cmath.sqrt(a * b)
        if abs(a - b) > abs(a + b):
            b = -b
    return a


def _polish_roots(g2: complex, g3: complex):
    roots = np.roots([4.0, 0.0, -g2, -g3]).astype(complex)
    out = []
    for r in roots:
        for _ in range(3):
            f = 4 * r ** 3 - g2 * r - g3
            d = 12 * r ** 2 - g2
            if d == 0:
                break
            step = f / d
            r = r - step
            if abs(step) <= 1e-17 * max(abs(r), 1.0):
                break
        out.append(complex(r))
    return out


def reduce_tau(omega1: complex, omega2: complex):
    """Move ``tau = omega2/omega1`` into the standard fundamental domain,
    applying the same modular moves to the basis."""
    if (omega2 / omega1).imag < 0:
        omega2 = -omega2
    for _ in range(10000):
        tau = omega2 / omega1
        n = round(tau.real)
        if n:
            omega2 = omega2 - n * omega1
            tau = omega2 / omega1
        if abs(tau) < 1 - 1e-15:
            omega1, omega2 = omega2, -omega1
            continue
        break
    return omega1, omega2, omega2 / omega1


def lattice_discriminant_scale(g2: complex, g3: complex) -> float:
    return abs(g2) ** 3 + 27 * abs(g3) ** 2


def periods_agm(g2: complex, g3: complex) -> TorusData:
    """Lattice of ``dX/Y`` on ``Y^2 = 4X^3 - g2 X - g3``."""
    g2, g3 = complex(g2), complex(g3)
    disc = g2 ** 3 - 27 * g3 ** 2
    scale = lattice_discriminant_scale(g2, g3)
    rel = abs(disc) / scale if scale else 0.0
    if rel < DISC_TOL:
        raise DomainError(f"singular cubic: relative discriminant {rel:.3g} below {DISC_TOL}")
    notes = []
    if rel < DISC_WARN:
        msg = (f"near-degenerate cubic (relative discriminant {rel:.3g}); "
               f"estimated relative period error {1e-16 / rel:.1g}")
        warnings.warn(msg, ConditioningWarning, stacklevel=2)
        notes.append(msg)
    e1, e2, e3 = _polish_roots(g2, g3)
    a = cmath.sqrt(e1 - e3)
    b = cmath.sqrt(e1 - e2)
    c = cmath.sqrt(e2 - e3)
    if abs(a - b) > abs(a + b):
        b = -b
    if abs(a - c) > abs(a + c):
        c = -c
    w1 = cmath.pi / agm(a, b)
    w2 = 1j * cmath.pi / agm(a, c)
    w1, w2, tau = reduce_tau(w1, w2)
    area = (w1.conjugate() * w2).imag
    return TorusData(omega1=w1, omega2=w2, tau=tau, area=area, warnings=tuple(notes))


def dedekind_eta(tau: complex) -> complex:
    """``q^(1/24) prod (1 - q^n)`` with ``q = exp(2 pi i tau)``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Dedekind eta needs Im(tau) > 0")
    q = cmath.exp(2j * cmath.pi * tau)
    prod = 1.0 + 0j
    qn = q
    while abs(qn) >= 1e-17:
        prod *= 1 - qn
        qn *= q
    return cmath.exp(2j * cmath.pi * tau / 24) * prod


def log_abs_eta(tau: complex) -> float:
    """``log|eta(tau)|`` without underflow for large ``Im(tau)``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("Dedekind eta needs Im(tau) > 0")
    q = cmath.exp(2j * cmath.pi * tau)
    total = -2 * math.pi * tau.imag / 24
    qn = q
    while abs(qn) >= 1e-17:
        total += math.log(abs(1 - qn))
        qn *= q
    return total


def zeta_unit_zero() -> float:
    """``zeta(0)`` of the Laplacian on any flat torus: ``-dim ker = -1``."""
    return -1.0


def zeta_prime_zero_flat_torus(tau: complex, area: float) -> float:
    """``zeta'(0)`` of the Kodaira Laplacian on a flat torus of shape ``tau``
    and area ``area``."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise DomainError("need Im(tau) > 0")
    if area <= 0:
        raise DomainError("torus area must be positive")
    unit = -(math.log(DET_CONSTANT) + math.log(tau.imag) + 4 * log_abs_eta(tau))
    return unit + math.log(area) * zeta_unit_zero()


def _numeric_coefficients(model: WeierstrassModel, t: complex):
    inv = invariants(model)
    at = {"t": complex(t)}
    c4 = inv.c4.evaluate(at) if inv.c4 else 0j
    c6 = inv.c6.evaluate(at) if inv.c6 else 0j
    return c4 / 12, c6 / 216


def fiber_torus(model: WeierstrassModel, t: complex) -> TorusData:
    g2, g3 = _numeric_coefficients(model, t)
    return periods_agm(g2, g3)


def quillen_log_norm(model: WeierstrassModel, t: complex) -> QuillenSample:
    """Quillen log-norm of the section ``1 (x) omega`` of the determinant of
    cohomology for the flat metric with ``|omega| = 1``.

    ``log_l2 = log A`` (``A`` the fiber area), ``log_quillen = log_l2 + zeta'(0)/2``.
    """
    torus = fiber_torus(model, t)
    log_l2 = math.log(torus.area)
    zp = zeta_prime_zero_flat_torus(torus.tau, torus.area)
    return QuillenSample(t=complex(t), log_l2=log_l2, zeta_prime_zero=zp,
                         log_quillen=log_l2 + zp / 2, tau=torus.tau, area=torus.area)


def track_tau(taus) -> list:
    """Continuous branch of a sequence of reduced ``tau`` values.

    Each value is replaced by the image under a translation, or ``S`` followed
    by a translation, that lies closest to the previous tracked value.
    """
    out = []
    for tau in taus:
        tau = complex(tau)
        if not out:
            out.append(tau)
            continue
        prev = out[-1]
        base = [tau, -1 / tau]
        best = None
        for b in base:
            n0 = round((prev - b).real)
            for n in (n0 - 1, n0, n0 + 1):
                cand = b + n
                if best is None or abs(cand - prev) < abs(best - prev):
                    best = cand
        out.append(best)
    return out
