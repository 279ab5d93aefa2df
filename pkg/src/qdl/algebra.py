"""Exact arithmetic over the Gaussian rationals Q(i).

Polynomials are sparse maps from exponent tuples to nonzero coefficients.
Monomials are plain tuples of non-negative ints, one entry per variable of
the owning polynomial's context.  The admissible variables are fixed to
``x, y, t`` (in that order); a context is any ordered subset of them.
"""

from __future__ import annotations

import enum
import numbers
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Mapping, Sequence

from .exceptions import ContextError, DomainError

VARIABLES = ("x", "y", "t")
GERM_VARIABLES = ("x", "y")

Monomial = tuple


class GaussRational:
    """Element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, numbers.Rational):
            return cls._raw(Fraction(value.numerator, value.denominator), Fraction(0))
        raise TypeError(f"cannot interpret {value!r} as an exact Gaussian rational")

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussRational._raw(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRational._raw(a * c, b)
        return GaussRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRational":
        if not self:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not self.im:
            return GaussRational._raw(1 / self.re, self.im)
        n = self.re * self.re + self.im * self.im
        return GaussRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRational):
            try:
                other = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussRational":
        return GaussRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        return format_coefficient(self)


ZERO = GaussRational._raw(Fraction(0), Fraction(0))
ONE = GaussRational._raw(Fraction(1), Fraction(0))
I = GaussRational._raw(Fraction(0), Fraction(1))


def format_coefficient(c: GaussRational) -> str:
    """Canonical text for a coefficient, parseable by :func:`qdl.parser.parse_poly`."""
    re, im = c.re, c.im
    if not im:
        return str(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}*i"
    if not re:
        return ims
    sign = "-" if im < 0 else "+"
    mag = ims[1:] if im < 0 else ims
    return f"({re}{sign}{mag})"


# --------------------------------------------------------------------------
# monomials and term orders


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(ai <= bi for ai, bi in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(ai, bi) for ai, bi in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(ai - bi for ai, bi in zip(a, b))


def weighted_degree(m: Monomial, w: Sequence[Fraction]) -> Fraction:
    if len(m) != len(w):
        raise ContextError("weights must be given for every variable of the monomial")
    return sum((Fraction(e) * wi for e, wi in zip(m, w)), Fraction(0))


class TermOrder(enum.Enum):
    """Degree reverse-lexicographic orders.

    ``GLOBAL_DEGREVLEX`` is a well-order (1 is the smallest monomial).
    ``LOCAL_DEGREVLEX`` prefers *lower* total degree, so 1 is the largest
    monomial; it is the order used for computations in C{x, y}.
    """

    GLOBAL_DEGREVLEX = "dp"
    LOCAL_DEGREVLEX = "ds"

    def key(self, m: Monomial):
        """Sort key; a larger key means a larger monomial."""
        rev = tuple(-e for e in reversed(m))
        if self is TermOrder.GLOBAL_DEGREVLEX:
            return (sum(m), rev)
        return (-sum(m), rev)

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)


# --------------------------------------------------------------------------
# polynomials


def _canonical_context(names: Iterable[str]) -> tuple:
    names = set(names)
    unknown = names.difference(VARIABLES)
    if unknown:
        raise ContextError(f"unknown variable(s) {sorted(unknown)}; allowed: {VARIABLES}")
    return tuple(v for v in VARIABLES if v in names)


class MPoly:
    """Immutable sparse polynomial with Gaussian-rational coefficients."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = GERM_VARIABLES,
                 terms: Mapping[Monomial, object] | None = None):
        variables = tuple(variables)
        if _canonical_context(variables) != variables:
            raise ContextError(f"variables must be an ordered subset of {VARIABLES}, got {variables}")
        n = len(variables)
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n or any(e < 0 for e in m):
                raise ContextError(f"monomial {m} does not fit context {variables}")
            c = GaussRational.coerce(c)
            if c:
                clean[m] = clean.get(m, ZERO) + c
                if not clean[m]:
                    del clean[m]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, variables: tuple, terms: dict) -> "MPoly":
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def constant(cls, c, variables: Sequence[str] = GERM_VARIABLES) -> "MPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "MPoly":
        variables = tuple(variables) if variables is not None else _canonical_context(
            set(GERM_VARIABLES) | {name})
        if name not in variables:
            raise ContextError(f"variable {name!r} not in context {variables}")
        m = tuple(1 if v == name else 0 for v in variables)
        return cls._from_clean(variables, {m: ONE})

    @classmethod
    def zero(cls, variables: Sequence[str] = GERM_VARIABLES) -> "MPoly":
        return cls._from_clean(tuple(variables), {})

    # context handling -------------------------------------------------------

    def embed(self, variables: Sequence[str]) -> "MPoly":
        """Same polynomial viewed in a larger (or equal) context."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        if not set(self.variables) <= set(variables) or _canonical_context(variables) != variables:
            raise ContextError(f"cannot embed {self.variables} into {variables}")
        idx = [variables.index(v) for v in self.variables]
        n = len(variables)
        terms = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in zip(idx, m):
                new[i] = e
            terms[tuple(new)] = c
        return MPoly._from_clean(variables, terms)

    def restrict(self, variables: Sequence[str]) -> "MPoly":
        """Drop variables the polynomial does not depend on."""
        variables = _canonical_context(variables)
        if variables == self.variables:
            return self
        used = self.used_variables()
        if not set(used) <= set(variables):
            raise ContextError(
                f"polynomial depends on {sorted(set(used) - set(variables))}, "
                f"which is outside context {variables}")
        if not set(self.variables) >= set(variables):
            return self.restrict(tuple(v for v in variables if v in self.variables)).embed(variables)
        keep = [self.variables.index(v) for v in variables]
        terms = {tuple(m[i] for i in keep): c for m, c in self.terms.items()}
        return MPoly._from_clean(variables, terms)

    def used_variables(self) -> tuple:
        return tuple(v for i, v in enumerate(self.variables)
                     if any(m[i] for m in self.terms))

    def _coerce(self, other) -> tuple["MPoly", "MPoly"]:
        if not isinstance(other, MPoly):
            other = MPoly.constant(other, self.variables)
        if other.variables == self.variables:
            return self, other
        common = _canonical_context(set(self.variables) | set(other.variables))
        return self.embed(common), other.embed(common)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for m, c in b.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s:
                    terms[m] = s
                else:
                    del terms[m]
        return MPoly._from_clean(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._from_clean(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = GaussRational.coerce(other)
            except TypeError:
                return NotImplemented
            return self.scale(c)
        a, b = self._coerce(other)
        terms: dict = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                m = tuple(i + j for i, j in zip(ma, mb))
                s = terms.get(m)
                terms[m] = ca * cb if s is None else s + ca * cb
        return MPoly._from_clean(a.variables, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = GaussRational.coerce(c)
        if not c:
            return MPoly.zero(self.variables)
        return MPoly._from_clean(self.variables, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, m: Monomial, c: GaussRational) -> "MPoly":
        """Multiply by the single term ``c * m``."""
        return MPoly._from_clean(self.variables, {
            tuple(i + j for i, j in zip(k, m)): v * c for k, v in self.terms.items()})

    def __truediv__(self, other):
        c = GaussRational.coerce(other)
        return self.scale(c.inverse())

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers must be non-negative integers")
        result = MPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.constant(other, self.variables)
            except TypeError:
                return NotImplemented
        if self.variables != other.variables:
            try:
                a, b = self._coerce(other)
            except ContextError:
                return False
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            used = self.used_variables()
            p = self.restrict(used) if used != self.variables else self
            self._hash = hash((p.variables, frozenset(p.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # calculus and evaluation ------------------------------------------------

    def diff(self, var: str) -> "MPoly":
        if var not in self.variables:
            return MPoly.zero(self.variables)
        k = self.variables.index(var)
        terms = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                terms[m[:k] + (e - 1,) + m[k + 1:]] = c * e
        return MPoly._from_clean(self.variables, terms)

    def evaluate(self, point: Mapping[str, object]):
        """Value at a point.

        Exact (``GaussRational``) when every coordinate is exact, a Python
        ``complex`` when any coordinate is a float or complex.
        """
        missing = set(self.used_variables()) - set(point)
        if missing:
            raise ContextError(f"no value supplied for {sorted(missing)}")
        numeric = any(isinstance(point[v], (float, complex)) for v in self.variables if v in point)
        if numeric:
            vals = [complex(point.get(v, 0)) for v in self.variables]
            total = 0j
            for m, c in self.terms.items():
                term = complex(c)
                for x, e in zip(vals, m):
                    if e:
                        term *= x ** e
                total += term
            return total
        vals = [GaussRational.coerce(point.get(v, 0)) for v in self.variables]
        total = ZERO
        for m, c in self.terms.items():
            term = c
            for x, e in zip(vals, m):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    def substitute(self, mapping: Mapping[str, "MPoly | object"]) -> "MPoly":
        """Replace variables by polynomials (or constants)."""
        for v in mapping:
            if v not in VARIABLES:
                raise ContextError(f"unknown variable {v!r}")
        images = {}
        for v in self.variables:
            img = mapping.get(v, MPoly.var(v, self.variables))
            if not isinstance(img, MPoly):
                img = MPoly.constant(img, self.variables)
            images[v] = img
        ctx = _canonical_context(set().union(*(p.variables for p in images.values()),
                                              set(self.variables) - set(mapping)))
        images = {v: p.embed(ctx) for v, p in images.items()}
        result = MPoly.zero(ctx)
        power_cache: dict = {}
        for m, c in self.terms.items():
            term = MPoly.constant(c, ctx)
            for v, e in zip(self.variables, m):
                if e:
                    key = (v, e)
                    if key not in power_cache:
                        power_cache[key] = images[v] ** e
                    term = term * power_cache[key]
            result = result + term
        return result

    def translate(self, shift: Mapping[str, object]) -> "MPoly":
        """``p(v + shift[v])``, e.g. to move a point to the origin."""
        return self.substitute({v: MPoly.var(v, self.variables) + GaussRational.coerce(s)
                                for v, s in shift.items() if v in self.variables})

    # inspection -------------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def order(self) -> int:
        """Lowest total degree of a term (``-1`` for the zero polynomial)."""
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.variables or not self.terms:
            return 0 if self.terms else -1
        k = self.variables.index(var)
        return max(m[k] for m in self.terms)

    def constant_term(self) -> GaussRational:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def coefficient(self, m: Monomial) -> GaussRational:
        return self.terms.get(tuple(m), ZERO)

    def support(self) -> list:
        return sorted(self.terms, key=TermOrder.GLOBAL_DEGREVLEX.key, reverse=True)

    def leading(self, order: TermOrder) -> tuple[Monomial, GaussRational]:
        if not self.terms:
            raise DomainError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self.variables}, {format_poly(self)!r})"


def format_poly(p: MPoly) -> str:
    """Canonical text (terms in descending global degrevlex order)."""
    if not p.terms:
        return "0"
    pieces = []
    for m in p.support():
        c = p.terms[m]
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(p.variables, m) if e)
        negative = (not c.im and c.re < 0) or (not c.re and c.im < 0)
        mag = -c if negative else c
        coeff = format_coefficient(mag)
        if not mono:
            body = coeff
        elif mag == ONE:
            body = mono
        else:
            body = f"{coeff}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def poly_arith(op: str, a: MPoly, b: MPoly | None = None, **kwargs) -> MPoly:
    """Dispatch helper: ``add``, ``subtract``, ``multiply``, ``partial_derivative``,
    ``evaluate`` and ``substitute`` on :class:`MPoly` values."""
    if op == "add":
        return a + b
    if op == "subtract":
        return a - b
    if op == "multiply":
        return a * b
    if op == "partial_derivative":
        return a.diff(kwargs["var"])
    if op == "evaluate":
        return a.evaluate(kwargs["point"])
    if op == "substitute":
        return a.substitute(kwargs["mapping"])
    raise DomainError(f"unknown polynomial operation {op!r}")


# --------------------------------------------------------------------------
# quasi-homogeneity


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction], n: int):
    """Gauss-Jordan on an overdetermined system.

    Returns the unique solution, ``None`` if inconsistent, or ``"free"`` when
    the solution is not unique.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, len(aug)) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
    if any(not any(r[:n]) and r[n] for r in aug):
        return None
    if len(pivots) < n:
        return "free"
    sol = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return tuple(sol)


def quasi_homogeneous_weights(f: MPoly):
    """Positive rational weights making every term of ``f`` of weighted degree 1.

    Weights are computed for every variable of ``f``'s context, so restrict
    the polynomial first (``f.restrict(("x", "y"))``) when working with plane
    germs.  Returns ``None`` when no unique positive solution exists.
    """
    if not f:
        raise DomainError("the zero polynomial has no quasi-homogeneous weights")
    if f.constant_term():
        raise DomainError("quasi-homogeneous weights need a polynomial without constant term")
    n = len(f.variables)
    rows = [[Fraction(e) for e in m] for m in f.terms]
    sol = _solve_exact(rows, [Fraction(1)] * len(rows), n)
    if sol is None or sol == "free":
        return None
    if any(w <= 0 for w in sol):
        return None
    return sol


def gcd_list(values: Iterable[int]) -> int:
    from math import gcd
    return reduce(gcd, values, 0)


def monomials_up_to(nvars: int, max_degree: int):
    """All exponent tuples of total degree ``<= max_degree``."""
    for m in product(range(max_degree + 1), repeat=nvars):
        if sum(m) <= max_degree:
            yield m
