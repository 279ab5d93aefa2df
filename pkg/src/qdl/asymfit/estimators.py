"""Least-squares estimators on radial data ``(|t|, F)``.

They follow the scikit-learn estimator conventions (constructor stores
hyper-parameters only, ``fit`` returns ``self``, fitted state ends in an
underscore) so they compose with the usual model-selection tooling.  ``X``
is a column of radii ``|t|``; ``y`` the angle-averaged values.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ..exceptions import BasisCollisionError, FitError, PreconditionError, ScanInconclusiveError

SLOPE_MODELS = ("slope_const", "slope_const_loglog")


def _radii(X) -> np.ndarray:
    r = np.asarray(X, dtype=float)[:, 0]
    if np.any(r <= 0):
        raise PreconditionError("radii |t| must be positive")
    return r


def _solve(A: np.ndarray, y: np.ndarray, n_unknown: int):
    """Least squares with column equilibration; FitError when rank deficient."""
    scale = np.max(np.abs(A), axis=0)
    scale[scale == 0] = 1.0
    As = A / scale
    if A.shape[0] < n_unknown or np.linalg.matrix_rank(As) < n_unknown:
        raise FitError(f"rank-deficient design: {A.shape[0]} rows for {n_unknown} unknowns")
    coef, *_ = np.linalg.lstsq(As, y, rcond=None)
    return coef / scale, float(np.linalg.cond(As) ** 2)


class LogSlopeRegressor(RegressorMixin, BaseEstimator):
    """``F = c1 log|t| + c0`` (optionally ``+ c2 log log(1/|t|)``)."""

    def __init__(self, model: str = "slope_const"):
        self.model = model

    def _design(self, r):
        cols = [np.log(r), np.ones_like(r)]
        if self.model == "slope_const_loglog":
            if np.any(r >= 1):
                raise PreconditionError("log log(1/|t|) needs |t| < 1")
            cols.append(np.log(np.log(1 / r)))
        return np.column_stack(cols)

    def fit(self, X, y):
        if self.model not in SLOPE_MODELS:
            raise PreconditionError(f"model must be one of {SLOPE_MODELS}")
        X, y = check_X_y(X, y)
        A = self._design(_radii(X))
        self.coef_, self.condition_estimate_ = _solve(A, y, A.shape[1])
        self.slope_ = float(self.coef_[0])
        self.intercept_ = float(self.coef_[1])
        self.loglog_coef_ = float(self.coef_[2]) if A.shape[1] == 3 else 0.0
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X)
        return self._design(_radii(X)) @ self.coef_


def power_log_columns(r: np.ndarray, terms) -> np.ndarray:
    logr = np.log(r)
    return np.column_stack([np.ones_like(r)] + [r ** e * logr ** h for e, h in terms])


class ExponentBasisRegressor(RegressorMixin, BaseEstimator):
    """``F = c + sum a_{e,h} |t|^e (log|t|)^h`` over a candidate exponent set.

    ``terms`` (explicit ``(e, h)`` pairs) overrides ``exponents``/``max_h``.
    """

    def __init__(self, exponents=(), max_h: int = 0, collision_tol: float = 1e-3,
                 max_terms: int = 12, terms=None):
        self.exponents = exponents
        self.max_h = max_h
        self.collision_tol = collision_tol
        self.max_terms = max_terms
        self.terms = terms

    def _terms(self, r_max: float):
        if self.terms is not None:
            if not self.terms:
                raise PreconditionError("empty term list")
            return [tuple(t) for t in self.terms]
        exps = sorted(set(self.exponents), key=float)
        if not exps:
            raise PreconditionError("empty candidate exponent set")
        if any(float(e) <= 0 for e in exps):
            raise PreconditionError("candidate exponents must be positive")
        for a, b in zip(exps, exps[1:]):
            if float(b) - float(a) < self.collision_tol:
                raise BasisCollisionError(
                    f"candidate exponents {a} and {b} closer than {self.collision_tol}")
        terms = [(e, h) for e in exps for h in range(self.max_h + 1)]
        if len(terms) > self.max_terms:
            mag = [r_max ** float(e) * abs(math.log(r_max)) ** h for e, h in terms]
            order = sorted(range(len(terms)), key=lambda k: -mag[k])[: self.max_terms]
            terms = [terms[k] for k in sorted(order)]
        return terms

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        r = _radii(X)
        self.terms_ = self._terms(float(np.max(r)))
        A = power_log_columns(r, [(float(e), h) for e, h in self.terms_])
        coef, self.condition_estimate_ = _solve(A, y, A.shape[1])
        self.intercept_ = float(coef[0])
        self.coef_ = coef[1:]
        self.training_rms_ = float(np.sqrt(np.mean((A @ coef - y) ** 2)))
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        r = _radii(check_array(X))
        return power_log_columns(r, [(float(e), h) for e, h in self.terms_]) @ np.r_[
            self.intercept_, self.coef_]


def _varpro(r, y, e, with_log: bool):
    cols = [np.ones_like(r), r ** e]
    if with_log:
        cols.append(r ** e * np.log(r))
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    res = A @ coef - y
    return coef, float(res @ res)


def _best_exponent(r, y, bounds, with_log: bool):
    grid = np.linspace(bounds[0], bounds[1], 80)
    ss = [_varpro(r, y, e, with_log)[1] for e in grid]
    k = int(np.argmin(ss))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    opt = minimize_scalar(lambda e: _varpro(r, y, e, with_log)[1], bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-10})
    e = float(opt.x)
    coef, ss = _varpro(r, y, e, with_log)
    return e, coef, ss


class ExponentScanner(BaseEstimator):
    """Model-free estimate of the leading nonconstant exponent.

    The constant ``F(0)`` is extrapolated from a pure power fit
    ``c0 + c |t|^e``; the exponent is the log-log slope of ``|F - F(0)|``
    against ``|t|``.  A fit with an extra ``|t|^e log|t|`` term is preferred
    (and flagged) when it lowers the residual by the factor ``log_ratio``.
    The error bar is a residual bootstrap.
    """

    def __init__(self, bounds=(0.05, 4.0), n_bootstrap: int = 200, log_ratio: float = 1e-3,
                 min_radii: int = 6, min_span: float = 8.0, random_state=None):
        self.bounds = bounds
        self.n_bootstrap = n_bootstrap
        self.log_ratio = log_ratio
        self.min_radii = min_radii
        self.min_span = min_span
        self.random_state = random_state

    def _estimate(self, r, y):
        e1, c1, ss1 = _best_exponent(r, y, self.bounds, with_log=False)
        e2, c2, ss2 = _best_exponent(r, y, self.bounds, with_log=True)
        scale = max(float(np.max(np.abs(y - c1[0]))), 1e-300)
        floor = (1e-10 * scale) ** 2 * len(r)
        log_flag = ss1 > floor and ss2 < self.log_ratio * ss1
        const = float(c2[0] if log_flag else c1[0])
        dev = np.abs(y - const)
        order = np.argsort(r)
        d = dev[order]
        if np.any(d <= 0) or np.any(np.diff(d) <= 0):
            raise ScanInconclusiveError("|F - F(0)| does not decay monotonically with |t|")
        slope = float(np.polyfit(np.log(r), np.log(dev), 1)[0])
        exponent = e2 if log_flag else slope
        fitted = np.column_stack([np.ones_like(r), r ** (e2 if log_flag else e1)]
                                 + ([r ** e2 * np.log(r)] if log_flag else [])) @ (
            c2 if log_flag else c1)
        return exponent, slope, const, log_flag, fitted, (e1, ss1, e2, ss2)

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        r = _radii(X)
        if len(np.unique(r)) < self.min_radii or r.max() / r.min() < self.min_span * (1 - 1e-9):
            raise PreconditionError(
                f"exponent scan needs >= {self.min_radii} radii spanning a factor >= {self.min_span}")
        exponent, slope, const, flag, fitted, diag = self._estimate(r, y)
        resid = y - fitted
        rng = np.random.default_rng(self.random_state)
        boot = []
        for _ in range(self.n_bootstrap):
            yb = fitted + rng.choice(resid, size=resid.size, replace=True)
            try:
                boot.append(self._estimate(r, yb)[0])
            except ScanInconclusiveError:
                continue
        self.exponent_ = float(exponent)
        self.loglog_slope_ = slope
        self.constant_ = const
        self.log_correction_ = bool(flag)
        self.error_ = float(np.std(boot)) if len(boot) > 1 else 0.0
        self.n_bootstrap_used_ = len(boot)
        self.pure_exponent_, self.pure_ss_, self.log_exponent_, self.log_ss_ = diag
        self.n_features_in_ = X.shape[1]
        return self
