"""Standard bases in the local ring at the origin, Milnor and Tjurina numbers.

Reductions use Mora's weak normal form with écart selection, so that the
same code computes Gröbner bases for the global degrevlex order and standard
bases for the local one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .algebra import (GERM_VARIABLES, MPoly, TermOrder, ZERO, degree, divides,
                      monomial_lcm, monomial_quotient)
from .exceptions import DegreeCapError, DomainError

DEGREE_CAP = 64
INFINITE = math.inf


@dataclass(frozen=True)
class StandardBasis:
    generators: tuple
    order: TermOrder
    leading_staircase: tuple  # minimal generators of the leading ideal

    @property
    def variables(self):
        return self.generators[0].variables

    def is_finite_colength(self) -> bool:
        n = len(self.variables)
        if any(not any(m) for m in self.leading_staircase):
            return True
        return all(any(m[k] and sum(m) == m[k] for m in self.leading_staircase)
                   for k in range(n))

    def standard_monomials(self):
        """Monomials outside the leading ideal, by increasing degree.

        Returns ``None`` when there are infinitely many.
        """
        if not self.is_finite_colength():
            return None
        if any(not any(m) for m in self.leading_staircase):
            return []
        n = len(self.variables)
        bounds = []
        for k in range(n):
            bounds.append(min(m[k] for m in self.leading_staircase
                              if m[k] and sum(m) == m[k]))
        out = [m for m in product(*(range(b) for b in bounds))
               if not any(divides(s, m) for s in self.leading_staircase)]
        out.sort(key=lambda m: (sum(m),) + tuple(-e for e in m))
        return out


@dataclass(frozen=True)
class MilnorData:
    mu: float  # int, or INFINITE
    algebra_basis: tuple = field(default=())
    tjurina: float = INFINITE
    variables: tuple = GERM_VARIABLES


def _ecart(p: MPoly, order: TermOrder) -> int:
    lm, _ = p.leading(order)
    return p.total_degree() - degree(lm)


def _check_cap(p: MPoly):
    if p.total_degree() > DEGREE_CAP:
        raise DegreeCapError(
            f"intermediate polynomial of degree {p.total_degree()} exceeds the cap {DEGREE_CAP}")


def s_polynomial(f: MPoly, g: MPoly, order: TermOrder) -> MPoly:
    mf, cf = f.leading(order)
    mg, cg = g.leading(order)
    lcm = monomial_lcm(mf, mg)
    return (f.mul_term(monomial_quotient(lcm, mf), cf.inverse())
            - g.mul_term(monomial_quotient(lcm, mg), cg.inverse()))


def mora_normal_form(g: MPoly, basis, order: TermOrder = TermOrder.LOCAL_DEGREVLEX) -> MPoly:
    """Weak normal form of ``g`` with respect to ``basis``.

    The result is zero or has a leading monomial not divisible by any leading
    monomial of ``basis``; it agrees with ``u*g`` modulo the ideal for some
    unit ``u`` of the local ring.
    """
    basis = [b for b in basis if b]
    if not basis or not g:
        return g
    # reducer list: (leading monomial, leading coefficient, ecart, poly)
    reducers = []
    for b in basis:
        lm, lc = b.leading(order)
        reducers.append((lm, lc, _ecart(b, order), b))
    h = g
    while h:
        lm_h, lc_h = h.leading(order)
        best = None
        for r in reducers:
            if divides(r[0], lm_h) and (best is None or r[2] < best[2]):
                best = r
        if best is None:
            break
        e_h = h.total_degree() - degree(lm_h)
        if best[2] > e_h:
            reducers.append((lm_h, lc_h, e_h, h))
        lm_b, lc_b, _, b = best
        h = h - b.mul_term(monomial_quotient(lm_h, lm_b), lc_h / lc_b)
        _check_cap(h)
    return h


def _minimal_monomials(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(divides(o, m) for o in out):
            out.append(m)
    return tuple(sorted(out, key=lambda m: (sum(m),) + tuple(-e for e in m)))


def standard_basis(gens, order: TermOrder = TermOrder.LOCAL_DEGREVLEX) -> StandardBasis:
    """Standard basis of the ideal generated by ``gens``.

    Buchberger-style pair completion with Mora's normal form; pairs are
    processed by increasing degree of the lcm of leading monomials.
    """
    basis = [g for g in gens if g]
    if not basis:
        raise DomainError("cannot compute a standard basis of the zero ideal")
    ctx = basis[0].variables
    basis = [g.embed(ctx) if g.variables != ctx else g for g in basis]
    for g in basis:
        _check_cap(g)
    leads = [g.leading(order)[0] for g in basis]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda p: (sum(monomial_lcm(leads[p[0]], leads[p[1]])), p[1], p[0]))
        i, j = pairs.pop(0)
        h = mora_normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if h:
            k = len(basis)
            basis.append(h)
            leads.append(h.leading(order)[0])
            pairs.extend((i2, k) for i2 in range(k))
    return StandardBasis(tuple(basis), order, _minimal_monomials(leads))


def _germ(f: MPoly, variables) -> MPoly:
    f = f.restrict(variables)
    if not f:
        raise DomainError("the zero polynomial is not an isolated singularity")
    if f.constant_term():
        raise DomainError("germ must vanish at the origin (nonzero constant term)")
    return f


def _colength(gens) -> tuple:
    gens = [g for g in gens if g]
    if not gens:
        return INFINITE, None
    sb = standard_basis(gens, TermOrder.LOCAL_DEGREVLEX)
    basis = sb.standard_monomials()
    if basis is None:
        return INFINITE, None
    return len(basis), tuple(basis)


def jacobian(f: MPoly):
    return [f.diff(v) for v in f.variables]


def milnor_number(f: MPoly, variables=GERM_VARIABLES) -> MilnorData:
    """Milnor number, local algebra monomial basis and Tjurina number of a germ."""
    f = _germ(f, variables)
    mu, basis = _colength(jacobian(f))
    tau = tjurina_number(f, variables)
    return MilnorData(mu=mu, algebra_basis=basis or (), tjurina=tau, variables=f.variables)


def tjurina_number(f: MPoly, variables=GERM_VARIABLES):
    """Colength of the ideal generated by ``f`` and its partial derivatives."""
    f = _germ(f, variables)
    tau, _ = _colength([f] + jacobian(f))
    return tau


def truncated_colength(gens, n: int) -> int:
    """``dim K[vars]/(I + m^n)`` by plain linear algebra.

    Spans all products ``monomial * generator`` truncated at degree ``n`` and
    counts monomials of degree ``< n`` outside their span.  Independent of the
    standard-basis machinery; equals the local colength once ``m^n`` lies in
    the ideal, which holds for ``n >= colength``.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise DomainError("empty generator list")
    nvars = len(gens[0].variables)
    monos = [m for m in product(range(n), repeat=nvars) if sum(m) < n]
    key = TermOrder.LOCAL_DEGREVLEX.key
    pivots: dict = {}
    for g in gens:
        og = g.order()
        for m in monos:
            if sum(m) + og >= n:
                continue
            row = {}
            for gm, c in g.terms.items():
                mm = tuple(a + b for a, b in zip(m, gm))
                if sum(mm) < n:
                    row[mm] = c
            while row:
                col = max(row, key=key)
                piv = pivots.get(col)
                if piv is None:
                    inv = row[col].inverse()
                    pivots[col] = {k: v * inv for k, v in row.items()}
                    break
                factor = row[col]
                for k, v in piv.items():
                    nv = row.get(k, ZERO) - factor * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
    return len(monos) - len(pivots)


def is_zero_dimensional(gens, variables) -> bool:
    """Whether the affine zero set of ``gens`` is finite (global Gröbner basis)."""
    gens = [g.restrict(variables) for g in gens if g]
    if not gens:
        return False
    sb = standard_basis(gens, TermOrder.GLOBAL_DEGREVLEX)
    return sb.is_finite_colength()
