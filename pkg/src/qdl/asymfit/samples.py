"""Sampled functions of the base parameter ``t`` on concentric circles."""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import PreconditionError, ValidationError

RADIUS_MATCH = 1e-9


def geometric_radii(start: float, stop: float, count: int) -> tuple:
    """``count`` radii from ``start`` down to ``stop`` in geometric progression."""
    if count < 2 or not (start > stop > 0):
        raise PreconditionError("need start > stop > 0 and count >= 2")
    return tuple(float(r) for r in np.geomspace(start, stop, count))


def circle_points(radii, n_angles: int, phase: float = 0.0) -> list:
    if n_angles < 1:
        raise PreconditionError("need at least one angle per circle")
    return [r * cmath.exp(1j * (phase + 2 * math.pi * k / n_angles))
            for r in radii for k in range(n_angles)]


@dataclass(frozen=True)
class Samples:
    """Values of ``F(t)`` on circles ``|t| = r`` for strictly decreasing ``r``.

    Points are kept sorted by (radius, angle) so that every fit assembles
    the same least-squares system whatever order they were produced in.
    """

    points: tuple
    radii: tuple
    pattern: str = "circles"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if any(not (r > 0 and math.isfinite(r)) for r in radii):
            raise ValidationError("radii must be positive and finite")
        if any(b >= a for a, b in zip(radii, radii[1:])):
            raise ValidationError("radii must be strictly decreasing")
        pts = []
        for t, v in self.points:
            t, v = complex(t), float(v)
            if not math.isfinite(v):
                raise ValidationError(f"non-finite sample value at t = {t}")
            if self._circle_index(abs(t), radii) is None:
                raise ValidationError(f"sample t = {t} lies on none of the declared circles")
            pts.append((t, v))
        pts.sort(key=lambda p: (abs(p[0]), cmath.phase(p[0]) % (2 * math.pi)))
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "metadata", dict(self.metadata))

    @staticmethod
    def _circle_index(r: float, radii):
        for k, rr in enumerate(radii):
            if abs(r - rr) <= RADIUS_MATCH * rr:
                return k
        return None

    @classmethod
    def from_function(cls, func, radii, n_angles: int = 8, phase: float = 0.0,
                      n_jobs: int = 1, metadata=None) -> "Samples":
        """Evaluate ``func(t)`` on ``n_angles`` equally spaced points per circle."""
        ts = circle_points(radii, n_angles, phase)
        if n_jobs > 1:
            with ProcessPoolExecutor(max_workers=n_jobs) as pool:
                values = list(pool.map(func, ts))
        else:
            values = [func(t) for t in ts]
        meta = {"n_angles": n_angles, "phase": phase}
        meta.update(metadata or {})
        return cls(tuple(zip(ts, values)), tuple(radii), "circles", meta)

    @property
    def n_circles(self) -> int:
        return len(self.radii)

    def _by_circle(self):
        groups = [[] for _ in self.radii]
        for t, v in self.points:
            groups[self._circle_index(abs(t), self.radii)].append((t, v))
        return groups

    def circle_averages(self):
        """``(radii, mean value)`` arrays, ordered like ``self.radii``."""
        groups = self._by_circle()
        if any(not g for g in groups):
            raise ValidationError("some circle carries no samples")
        return np.array(self.radii), np.array([np.mean([v for _, v in g]) for g in groups])

    def angular_modes(self, max_k: int) -> np.ndarray:
        """Fourier coefficients ``c_k`` of ``theta -> F(r e^{i theta})`` per circle.

        Row ``j`` holds ``k = -max_k .. max_k`` for circle ``j``; needs equally
        spaced angles with more than ``2*max_k`` points per circle.  Nonzero
        ``k`` exposes ``t^m conj(t)^m'`` terms with ``m - m' = k``.
        """
        out = []
        for g in self._by_circle():
            if len(g) <= 2 * max_k:
                raise PreconditionError(f"{len(g)} angles cannot resolve modes up to {max_k}")
            th = np.array([cmath.phase(t) for t, _ in g])
            v = np.array([v for _, v in g])
            out.append([np.mean(v * np.exp(-1j * k * th)) for k in range(-max_k, max_k + 1)])
        return np.array(out)

    def rotated(self, angle: float) -> "Samples":
        """Same values attached to ``t * exp(i angle)``."""
        w = cmath.exp(1j * angle)
        return Samples(tuple((t * w, v) for t, v in self.points), self.radii, self.pattern,
                       self.metadata)

    def window(self, radii) -> "Samples":
        keep = [r for r in self.radii if any(abs(r - q) <= RADIUS_MATCH * r for q in radii)]
        pts = [(t, v) for t, v in self.points if self._circle_index(abs(t), keep) is not None]
        return Samples(tuple(pts), tuple(keep), self.pattern, self.metadata)

    def without_smallest(self) -> tuple["Samples", "Samples"]:
        """Split into (all but the smallest circle, smallest circle)."""
        return self.window(self.radii[:-1]), self.window(self.radii[-1:])

    def to_dict(self) -> dict:
        return {"pattern": self.pattern, "radii": list(self.radii),
                "points": [[t.real, t.imag, v] for t, v in self.points],
                "metadata": self.metadata}


def _quillen_value(args):
    from ..elliptic import quillen_log_norm
    model, t = args
    return quillen_log_norm(model, t).log_quillen


def sample_quillen(model, radii, n_angles: int = 8, phase: float = 0.1, n_jobs: int = 1) -> Samples:
    """Quillen log-norm of the Weierstrass family ``model`` on circles in ``t``."""
    ts = circle_points(radii, n_angles, phase)
    work = [(model, t) for t in ts]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            values = list(pool.map(_quillen_value, work))
    else:
        values = [_quillen_value(w) for w in work]
    meta = {"source": "quillen_log_norm", "model": str(model), "n_angles": n_angles, "phase": phase}
    return Samples(tuple(zip(ts, values)), tuple(radii), "circles", meta)


def _fiber_value(args):
    from .fiber import fiber_integral
    f, t, radius, epsabs = args
    res = fiber_integral(f, t, radius, epsabs=epsabs)
    return res.value, res.metadata.get("radius_perturbation", 0.0)


def sample_fiber_integrals(f, radii, n_angles: int = 2, phase: float = 0.1, radius: float = 1.0,
                           epsabs: float = 1e-9, n_jobs: int = 1) -> Samples:
    """Milnor-fiber areas ``F(t)`` for ``f = t`` over the disc ``|x| <= radius``."""
    ts = circle_points(radii, n_angles, phase)
    work = [(f, t, radius, epsabs) for t in ts]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            out = list(pool.map(_fiber_value, work))
    else:
        out = [_fiber_value(w) for w in work]
    shifts = [s for _, s in out if s]
    meta = {"source": "integrate_milnor_fiber", "f": str(f), "x_radius": radius,
            "n_angles": n_angles, "phase": phase, "epsabs": epsabs}
    if shifts:
        meta["radius_perturbations"] = shifts
    return Samples(tuple(zip(ts, (v for v, _ in out))), tuple(radii), "circles", meta)
