"""Monodromy of quasi-homogeneous isolated plane-curve singularities.

For weights ``(w1, w2)`` with ``f`` of weighted degree 1, the spectrum is
``{(a+1) w1 + (b+1) w2 : x^a y^b in a monomial basis of the Milnor algebra}``
and the monodromy eigenvalues are ``exp(2 pi i s)`` for ``s`` in the spectrum.
Exponents ``r`` in ``(0, 2)`` with ``exp(pi i r)`` an eigenvalue are ``2s mod 2``.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import GERM_VARIABLES, MPoly, quasi_homogeneous_weights, weighted_degree
from .exceptions import InternalConsistencyError, UnsupportedInputError
from .local_algebra import INFINITE, milnor_number


@dataclass(frozen=True)
class Spectrum:
    values: tuple  # sorted multiset of Fractions in (0, 2)
    weights: tuple

    def __len__(self):
        return len(self.values)

    def is_symmetric(self) -> bool:
        return Counter(self.values) == Counter(2 - s for s in self.values)


@dataclass(frozen=True)
class MonodromyData:
    eigenvalue_args: tuple  # sorted multiset of Fractions in [0, 1)
    char_poly: tuple        # integer coefficients, ascending powers of lambda
    barlet_exponents: tuple  # sorted distinct Fractions in (0, 2)
    excluded_exponents: tuple  # 2s mod 2 landing on 0 (eigenvalue 1)
    spectrum: Spectrum

    @property
    def eigenvalues(self):
        return [cmath.exp(2j * cmath.pi * float(a)) for a in self.eigenvalue_args]

    @property
    def degree(self) -> int:
        return len(self.char_poly) - 1


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c, rem = divmod(a[k + len(b) - 1], b[-1])
        if rem:
            raise InternalConsistencyError("non-exact integer polynomial division")
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
    if any(a[: len(b) - 1]):
        raise InternalConsistencyError("non-exact integer polynomial division")
    return q


_CYCLOTOMIC: dict = {}


def cyclotomic(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial (ascending)."""
    if n not in _CYCLOTOMIC:
        p = [-1] + [0] * (n - 1) + [1]
        for d in range(1, n):
            if n % d == 0:
                p = _poly_exact_div(p, cyclotomic(d))
        _CYCLOTOMIC[n] = tuple(p)
    return _CYCLOTOMIC[n]


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def spectrum_quasihomogeneous(f: MPoly) -> Spectrum:
    f = f.restrict(GERM_VARIABLES)
    w = quasi_homogeneous_weights(f)
    if w is None:
        raise UnsupportedInputError(
            "monodromy is implemented for quasi-homogeneous germs only; "
            f"{f} admits no positive weights")
    data = milnor_number(f)
    if data.mu == INFINITE:
        raise UnsupportedInputError("non-isolated singularity: infinite Milnor number")
    values = sorted(weighted_degree(tuple(e + 1 for e in m), w) for m in data.algebra_basis)
    return Spectrum(values=tuple(values), weights=tuple(w))


def characteristic_polynomial(args) -> tuple:
    """Exact product of ``(lambda - exp(2 pi i a))`` over a multiset of
    rational arguments, assembled from cyclotomic factors."""
    counts = Counter(Fraction(a) % 1 for a in args)
    by_order: dict = {}
    for a, k in counts.items():
        by_order.setdefault(a.denominator, {})[a] = k
    poly = [1]
    for n, members in sorted(by_order.items()):
        mults = set(members.values())
        if len(members) != euler_phi(n) or len(mults) != 1:
            raise InternalConsistencyError(
                f"arguments with denominator {n} do not form full Galois orbits: {members}")
        for _ in range(mults.pop()):
            poly = _poly_mul(poly, list(cyclotomic(n)))
    return tuple(poly)


def monodromy_eigenvalues(f: MPoly) -> MonodromyData:
    spec = spectrum_quasihomogeneous(f)
    args = tuple(sorted(s % 1 for s in spec.values))
    char_poly = characteristic_polynomial(args)
    doubled = {(2 * s) % 2 for s in spec.values}
    exps = tuple(sorted(r for r in doubled if 0 < r < 2))
    excluded = tuple(sorted(r for r in doubled if r == 0))
    return MonodromyData(eigenvalue_args=args, char_poly=char_poly,
                         barlet_exponents=exps, excluded_exponents=excluded,
                         spectrum=spec)


def barlet_exponents(f: MPoly) -> tuple:
    return monodromy_eigenvalues(f).barlet_exponents


def format_char_poly(coeffs, var: str = "lambda") -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if (not mono or mag != 1) else ""
        body = f"{body}*{mono}" if body and mono else (body or mono)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
