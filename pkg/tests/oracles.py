"""Independent reference computations used by the tests.

None of these call into the package's numerical pipeline; they recompute the
same quantities from first principles (eigenvalue sums, direct quadrature,
Euler-Maclaurin, closed-form series) so that agreement is meaningful.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.special import ellipkm1

# --------------------------------------------------------------------------
# frozen values ([DERIVED] by the oracles below; regenerate with
# ``python tests/oracles.py``)

ZETA_PRIME_MINUS_ONE = -0.16542114370045094  # Euler-Maclaurin at 30 digits
DELIGNE_GENUS0_RANK1 = 4.9701076             # 2 * (zeta'(-1)/zeta(-1) + 1/2)
CUSP_AREA_EXPONENT = 2.0                     # leading nonconstant exponent, cusp fibers
ETA_I = 0.768225422326056659                 # Gamma(1/4) / (2 pi^(3/4)), mpmath 30 digits


# --------------------------------------------------------------------------
# Riemann zeta near s = -1 by Euler-Maclaurin

def zeta_euler_maclaurin(s, n_terms: int = 20, n_bernoulli: int = 12):
    """Zeta by Euler-Maclaurin summation with explicit Bernoulli corrections.

    Uses only mpmath arithmetic and Bernoulli numbers, never mpmath.zeta.
    """
    s = mpmath.mpf(s)
    N = n_terms
    total = sum(mpmath.power(n, -s) for n in range(1, N))
    total += mpmath.power(N, 1 - s) / (s - 1) + mpmath.power(N, -s) / 2
    rising = s  # s (s+1) ... (s + 2k - 2)
    for k in range(1, n_bernoulli + 1):
        term = mpmath.bernoulli(2 * k) / mpmath.factorial(2 * k) * rising \
            * mpmath.power(N, -s - 2 * k + 1)
        total += term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def zeta_prime_minus_one() -> float:
    with mpmath.workdps(30):
        return float(mpmath.diff(zeta_euler_maclaurin, -1))


def deligne_constant_oracle(genus: int, rank: int) -> float:
    factor = rank * (2 - 2 * genus)
    with mpmath.workdps(30):
        z = zeta_euler_maclaurin(-1)
        zp = mpmath.diff(zeta_euler_maclaurin, -1)
        return float(factor * (zp / z + mpmath.mpf(1) / 2))


# --------------------------------------------------------------------------
# flat tori: eigenvalue sums

def _lattices(tau: complex, area: float, n: int):
    s = math.sqrt(area / tau.imag)
    M = np.array([[s, s * tau.real], [0.0, s * tau.imag]])
    dual = np.linalg.inv(M).T
    m, k = np.meshgrid(np.arange(-n, n + 1), np.arange(-n, n + 1))
    pts = np.stack([m.ravel(), k.ravel()])
    r2 = ((M @ pts) ** 2).sum(0)
    g2 = ((dual @ pts) ** 2).sum(0)
    return r2[r2 > 0], g2[g2 > 0]


def heat_trace_zeta_zero(tau: complex, area: float = 1.0, t: float = 0.01, n: int = 40) -> float:
    """``zeta(0)`` of the flat Laplacian read off the small-time heat trace.

    ``sum' exp(-t lambda) = area/(4 pi t) + zeta(0) + O(exp(-c/t))`` with the
    eigenvalues ``4 pi^2 |gamma*|^2`` summed directly.
    """
    _, g2 = _lattices(complex(tau), area, n)
    theta = float(np.exp(-t * 4 * math.pi ** 2 * g2).sum())
    return theta - area / (4 * math.pi * t)


def mellin_zeta_prime_zero(tau: complex, area: float = 1.0, n: int = 40) -> float:
    """``zeta'(0)`` of the flat (de Rham) Laplacian by Mellin regularization.

    Splits the Mellin integral at ``t = 1``; the small-time half uses the
    Poisson-dual sum over the lattice, the large-time half the eigenvalues.
    """
    tau = complex(tau)
    r2, g2 = _lattices(tau, area, n)
    lam = 4 * math.pi ** 2 * g2

    def small(t):
        return area / (4 * math.pi * t) * np.exp(-r2 / (4 * t)).sum() / t

    def large(t):
        return np.exp(-t * lam).sum() / t

    i1 = quad(small, 0, 1, limit=200)[0]
    i2 = quad(large, 1, np.inf, limit=200)[0]
    return -np.euler_gamma - area / (4 * math.pi) + i1 + i2


def eta_product(tau: complex, n: int = 400) -> complex:
    q = cmath.exp(2j * cmath.pi * tau)
    p = 1 + 0j
    for k in range(1, n):
        p *= 1 - q ** k
    return cmath.exp(2j * cmath.pi * tau / 24) * p


def eta_i_closed_form() -> float:
    return math.gamma(0.25) / (2 * math.pi ** 0.75)


# --------------------------------------------------------------------------
# periods by direct quadrature

def quadrature_periods(g2: complex, g3: complex):
    """``2 int dX/Y`` between pairs of roots of ``4X^3 - g2 X - g3``.

    Along the segment from ``e_i`` to ``e_j`` the principal branch of
    ``sqrt((X - e_k)/(e_i - e_k))`` is continuous (the segment subtends an
    angle below pi at ``e_k``), so the integral is a genuine period.
    """
    with mpmath.workdps(30):
        roots = mpmath.polyroots([4, 0, -mpmath.mpc(g2), -mpmath.mpc(g3)], maxsteps=200,
                                 extraprec=60)
        triples = [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        # drop the pair whose segment passes closest to the third root
        triples.sort(key=lambda ijk: abs(mpmath.arg((roots[ijk[1]] - roots[ijk[2]])
                                                    / (roots[ijk[0]] - roots[ijk[2]]))))
        out = []
        for i, j, k in triples[:2]:
            ei, ej, ek = roots[i], roots[j], roots[k]
            d = ej - ei
            c = mpmath.sqrt(ei - ek)

            def integrand(s, ei=ei, d=d, c=c, ek=ek):
                x = ei + d * s
                return 1 / (2j * mpmath.sqrt(s * (1 - s)) * c * mpmath.sqrt((x - ek) / (ei - ek)))

            out.append(complex(2 * mpmath.quad(integrand, [0, 0.5, 1])))
        return out


# --------------------------------------------------------------------------
# cusp fibers y^2 - x^3 = t: area of {|x| <= R}

def cusp_area_series(a: float, R: float = 1.0, n_terms: int = 60) -> float:
    """Exact expansion in ``a = |t|`` of the fiber area over ``|x| <= R``.

    Angular averaging of ``1/|x^3 + t|`` against ``|x|^4`` on each circle
    gives ``F = 2 pi R^2 + 3 pi R^3 + 9 pi sum_k c_k a^(2k) R^(3-6k)/(3-6k)``
    with ``c_k = binom(-1/2, k)^2``, valid for ``a < R^3``.  Only even powers
    of ``a`` appear: the odd ones cancel between the inner and outer parts of
    the split at ``|x|^3 = a``.
    """
    total = 2 * math.pi * R ** 2 + 3 * math.pi * R ** 3
    for k in range(1, n_terms):
        ck = float(Fraction(math.comb(2 * k, k), 4 ** k) ** 2)
        total += 9 * math.pi * ck * a ** (2 * k) * R ** (3 - 6 * k) / (3 - 6 * k)
    return total


def cusp_area_elliptic(a: float, R: float = 1.0) -> float:
    """Same area by radial quadrature of the exact angular average

    ``avg 1/|A e^{i psi} + a| = 2 K(m) / (pi (A + a))``, ``m = 4 A a/(A + a)^2``
    with ``A = rho^3``.  Independent of the series above.  ``1 - m`` is formed
    as ``((A - a)/(A + a))^2`` to keep the log singularity at ``A = a`` sharp.
    """
    def avg(rho):
        A = rho ** 3
        return 2 * ellipkm1(((A - a) / (A + a)) ** 2) / (math.pi * (A + a))

    def radial(rho):
        return rho ** 5 * avg(rho)

    brk = a ** (1 / 3)
    pieces = [quad(radial, 0, brk, limit=400, epsabs=1e-13, epsrel=1e-12)[0]]
    if brk < R:
        pieces.append(quad(radial, brk, R, limit=400, epsabs=1e-13, epsrel=1e-12)[0])
    return 2 * math.pi * R ** 2 + 9 * math.pi * sum(pieces)


if __name__ == "__main__":  # pragma: no cover
    print("zeta'(-1)", repr(zeta_prime_minus_one()))
    print("Deligne g=0 r=1", repr(deligne_constant_oracle(0, 1)))
    print("eta(i)", repr(eta_i_closed_form()))
    for a in (0.1, 0.01):
        print("cusp", a, cusp_area_series(a), cusp_area_elliptic(a))
