"""Fits of angle-averaged samples and their reported results."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from ..exceptions import ConditioningWarning, FitError, PreconditionError
from .estimators import ExponentBasisRegressor, ExponentScanner, LogSlopeRegressor
from .samples import Samples

MIN_CIRCLES = 4
MEMBERSHIP_TOL = 1e-9
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class BasisTerm:
    """One basis function ``t^m conj(t)^m' |t|^r (log|t|)^h``; ``kind`` marks
    the constant, ``log|t|`` and ``log log(1/|t|)`` terms of slope fits."""

    kind: str  # "const", "log", "loglog", "power"
    m: int = 0
    m_prime: int = 0
    r: object = None  # Fraction or float exponent for "power"
    h: int = 0

    @property
    def label(self) -> str:
        if self.kind == "const":
            return "1"
        if self.kind == "log":
            return "log|t|"
        if self.kind == "loglog":
            return "loglog(1/|t|)"
        text = f"|t|^{self.r}"
        if self.h:
            text += "*log|t|" + (f"^{self.h}" if self.h > 1 else "")
        return text

    def to_dict(self) -> dict:
        r = self.r
        if isinstance(r, Fraction):
            r = f"{r.numerator}/{r.denominator}"
        return {"kind": self.kind, "m": self.m, "m_prime": self.m_prime, "r": r, "h": self.h,
                "label": self.label}


@dataclass(frozen=True)
class FitResult:
    basis: tuple
    coefficients: tuple
    residual_rms: float
    condition_estimate: float
    significant: tuple = ()
    barlet_membership: tuple = ()  # bool per basis term, None where not applicable
    held_out_radius: float | None = None
    model: str = ""
    extras: dict = field(default_factory=dict)

    def coefficient(self, label: str) -> float:
        for term, c in zip(self.basis, self.coefficients):
            if term.label == label:
                return c
        raise KeyError(label)

    @property
    def slope(self) -> float:
        return self.coefficient("log|t|")

    def significant_exponents(self) -> list:
        return [t.r for t, s in zip(self.basis, self.significant) if s and t.kind == "power"]

    def to_dict(self) -> dict:
        return {"model": self.model, "basis": [t.to_dict() for t in self.basis],
                "coefficients": list(self.coefficients), "significant": list(self.significant),
                "barlet_membership": list(self.barlet_membership),
                "residual_rms": self.residual_rms, "condition_estimate": self.condition_estimate,
                "held_out_radius": self.held_out_radius, "extras": self.extras}


def _split(samples: Samples, n_unknown: int):
    if samples.n_circles < n_unknown + 1:
        raise FitError(f"{samples.n_circles} circles cannot determine {n_unknown} coefficients "
                       "with one circle held out")
    if samples.n_circles < MIN_CIRCLES:
        raise PreconditionError(f"fits need at least {MIN_CIRCLES} circles")
    train, held = samples.without_smallest()
    r, v = train.circle_averages()
    rh, vh = held.circle_averages()
    return r[:, None], v, rh[:, None], vh


def fit_log_slope(samples: Samples, model: str = "slope_const") -> FitResult:
    """``c1 log|t| + c0 (+ c2 log log(1/|t|))`` on circle averages.

    Trained on every circle except the smallest, whose average gives the
    held-out residual.
    """
    n = 3 if model == "slope_const_loglog" else 2
    X, y, Xh, yh = _split(samples, n)
    est = LogSlopeRegressor(model=model).fit(X, y)
    resid = float(np.sqrt(np.mean((est.predict(Xh) - yh) ** 2)))
    basis = [BasisTerm("log"), BasisTerm("const")]
    if n == 3:
        basis.append(BasisTerm("loglog"))
    coefs = tuple(float(c) for c in est.coef_)
    return FitResult(basis=tuple(basis), coefficients=coefs, residual_rms=resid,
                     condition_estimate=est.condition_estimate_,
                     significant=tuple(True for _ in basis),
                     barlet_membership=tuple(None for _ in basis),
                     held_out_radius=float(Xh[0, 0]), model=model,
                     extras={"slope": coefs[0], "n_circles": samples.n_circles})


def in_barlet_set(e, barlet_exponents) -> bool:
    """Whether ``e`` is a positive integer or ``r + k`` for a Barlet exponent
    ``r`` and an integer ``k >= 0``."""
    def is_nonneg_int(v):
        if isinstance(v, Fraction):
            return v.denominator == 1 and v >= 0
        return abs(v - round(v)) <= MEMBERSHIP_TOL and v > -MEMBERSHIP_TOL

    if is_nonneg_int(e) and e > 0:
        return True
    return any(is_nonneg_int(e - r) for r in barlet_exponents)


def barlet_candidates(barlet_exponents, max_shift: int = 1, extra=(1, 2, 3, 4)) -> tuple:
    """``{r + m + m' : m + m' <= max_shift} ∪ extra`` as sorted Fractions.

    The integer extras stand in for the smooth part of the expansion; on the
    cusp the ``|t|^4`` term is still far above quadrature noise at
    ``|t| = 0.1``, and leaving it out makes the fit alias it onto
    fractional neighbours.
    """
    out = {Fraction(r) + k for r in barlet_exponents for k in range(max_shift + 1)}
    out |= {Fraction(e) for e in extra}
    return tuple(sorted(out))


BEST_SUBSET_LIMIT = 16


def _subset_rms(r, y, sub):
    from .estimators import power_log_columns

    A = power_log_columns(r, [(float(e), h) for e, h in sub])
    scale = np.max(np.abs(A), axis=0)
    coef, *_ = np.linalg.lstsq(A / scale, y, rcond=None)
    res = A @ (coef / scale) - y
    return float(np.sqrt(np.mean(res ** 2)))


def _prune(est, X, y, noise: float):
    """Smallest term subset whose training residual stays below ``noise``.

    Exhaustive over subsets by increasing size (ties broken by residual), so
    a near-collinear neighbour cannot survive just because a greedy pass
    removed the true term first.  Falls back to backward elimination when
    the basis is too large to enumerate.
    """
    r = X[:, 0]
    terms = list(est.terms_)
    if len(terms) <= BEST_SUBSET_LIMIT:
        for size in range(0, len(terms) + 1):
            rms, sub = min((_subset_rms(r, y, list(c)), c) for c in combinations(terms, size))
            if rms <= noise:
                break
        kept = list(sub)
        dropped = [(t, _subset_rms(r, y, [k for k in terms if k != t])) for t in terms
                   if t not in kept]
        return kept, dropped
    kept = terms
    dropped = []
    while len(kept) > 1:
        rms, k = min((_subset_rms(r, y, kept[:k] + kept[k + 1:]), k) for k in range(len(kept)))
        if rms > noise:
            break
        dropped.append((kept.pop(k), rms))
    return kept, dropped


def fit_exponents(samples: Samples, candidate_exponents, max_h: int = 0, barlet_exponents=None,
                  noise_factor: float = 10.0, collision_tol: float = 1e-3,
                  max_terms: int = 12, prune: bool = True) -> FitResult:
    """Least squares on ``{1} ∪ {|t|^e (log|t|)^h}``.

    With ``prune`` the basis is first thinned by backward elimination: a
    term goes if the refit without it still matches the training data to
    ``noise_factor`` times the held-out residual of the full fit.  Nearby
    fractional powers are close to collinear over a short radius range, so
    without this step the full fit spreads a smooth signal over every term.
    In the final fit, coefficients below ``noise_factor`` times its held-out
    residual are reported as zero and not significant.
    """
    cands = tuple(candidate_exponents)
    est = ExponentBasisRegressor(exponents=cands, max_h=max_h, collision_tol=collision_tol,
                                 max_terms=max_terms)
    n = 1 + len(est._terms(samples.radii[0]))  # also checks for collisions
    X, y, Xh, yh = _split(samples, n)
    est.fit(X, y)
    full_cond = est.condition_estimate_
    full_resid = float(np.sqrt(np.mean((est.predict(Xh) - yh) ** 2)))
    dropped = []
    if prune:
        kept, dropped = _prune(est, X, y, noise_factor * max(full_resid, est.training_rms_))
        if dropped:
            est = ExponentBasisRegressor(terms=kept).fit(X, y)
    if est.condition_estimate_ > CONDITION_LIMIT:
        warnings.warn(f"exponent-basis design is ill-conditioned (estimate "
                      f"{est.condition_estimate_:.1e}); individual coefficients and their "
                      "significance flags are unreliable", ConditioningWarning, stacklevel=2)
    resid = float(np.sqrt(np.mean((est.predict(Xh) - yh) ** 2)))
    threshold = noise_factor * resid
    fitted = dict(zip(est.terms_, est.coef_))
    all_terms = [(e, h) for e in sorted(set(cands), key=float) for h in range(max_h + 1)]
    basis = [BasisTerm("const")]
    coefs = [est.intercept_]
    sig = [True]
    member = [None]
    for e, h in all_terms:
        if (e, h) not in fitted and not any((e, h) == d for d, _ in dropped):
            continue  # truncated by magnitude
        c = fitted.get((e, h), 0.0)
        basis.append(BasisTerm("power", r=e, h=h))
        keep = (e, h) in fitted and abs(c) >= threshold
        coefs.append(float(c) if keep else 0.0)
        sig.append(bool(keep))
        member.append(None if barlet_exponents is None else in_barlet_set(e, barlet_exponents))
    return FitResult(basis=tuple(basis), coefficients=tuple(coefs), residual_rms=resid,
                     condition_estimate=est.condition_estimate_, significant=tuple(sig),
                     barlet_membership=tuple(member), held_out_radius=float(Xh[0, 0]),
                     model="exponent_basis",
                     extras={"raw_coefficients": [float(est.intercept_)] + [float(c) for c in est.coef_],
                             "noise_threshold": threshold, "max_h": max_h,
                             "full_basis_condition": full_cond,
                             "full_basis_residual": full_resid,
                             "pruned": [{"r": str(e), "h": h, "training_rms": rms}
                                        for (e, h), rms in dropped]})


def leading_exponent(fit: FitResult):
    """Smallest significant power exponent of an exponent fit, or None."""
    exps = fit.significant_exponents()
    return min(exps, key=float) if exps else None


@dataclass(frozen=True)
class ScanResult:
    exponent: float
    error: float
    log_correction: bool
    constant: float
    loglog_slope: float
    radii: tuple

    def __float__(self):
        return self.exponent

    def to_dict(self) -> dict:
        return dict(self.__dict__, radii=list(self.radii))


def exponent_scan(samples: Samples, seed: int | None = 0, n_bootstrap: int = 200) -> ScanResult:
    """Leading nonconstant exponent with a bootstrap error bar (see ExponentScanner)."""
    r, v = samples.circle_averages()
    sc = ExponentScanner(n_bootstrap=n_bootstrap, random_state=seed).fit(r[:, None], v)
    return ScanResult(exponent=sc.exponent_, error=sc.error_, log_correction=sc.log_correction_,
                      constant=sc.constant_, loglog_slope=sc.loglog_slope_, radii=samples.radii)


def congruence_report(exponent: float, barlet_exponents, tol: float = 1e-2) -> dict:
    """Compare ``exponent mod 1`` with the Barlet exponents mod 1 and with 0."""
    frac = exponent % 1.0
    dist = lambda a, b: min(abs(a - b), 1 - abs(a - b))
    rows = {str(r): dist(frac, float(r) % 1.0) <= tol for r in barlet_exponents}
    return {"exponent": exponent, "exponent_mod_1": frac,
            "congruent_to": rows, "integer": dist(frac, 0.0) <= tol,
            "in_predicted_set": any(rows.values()) or dist(frac, 0.0) <= tol}
