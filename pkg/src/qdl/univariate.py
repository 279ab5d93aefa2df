"""Dense univariate polynomials over Q(i) as coefficient lists (ascending powers)."""

from __future__ import annotations

from .algebra import ONE, ZERO, GaussRational


def normalize(p):
    p = [GaussRational.coerce(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def derivative(p):
    return normalize([c * k for k, c in enumerate(p)][1:])


def divmod_poly(a, b):
    a, b = normalize(a), normalize(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] * inv
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] = r[i + k] - c * bc
        r = normalize(r)
    return normalize(q), r


def monic(p):
    p = normalize(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def gcd(a, b):
    a, b = normalize(a), normalize(b)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def is_squarefree(p) -> bool:
    """True iff ``p`` has no repeated root over C (degree ≥ 1 assumed)."""
    p = normalize(p)
    if len(p) <= 2:
        return True
    return len(gcd(p, derivative(p))) == 1


def evaluate(p, x):
    acc = ZERO if isinstance(x, GaussRational) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def linear_roots(p):
    """Roots of the linear factors of ``p`` over Q(i) that are found by
    rational-root search on Q and on Q(i) Gaussian-integer candidates.

    Only used on tiny inputs; returns roots with multiplicity.
    """
    p = normalize(p)
    roots = []
    while p and not p[0] and len(p) > 1:
        roots.append(ZERO)
        p = p[1:]
    if len(p) <= 1:
        return roots
    # clear denominators for candidate generation
    den = 1
    for c in p:
        for part in (c.re, c.im):
            den = den * part.denominator // _gcd(den, part.denominator)
    lead = p[-1] * den
    const = p[0] * den
    changed = True
    while changed and len(p) > 1:
        changed = False
        for cand in _candidates(const, lead):
            if not evaluate(p, cand):
                roots.append(cand)
                p, _ = divmod_poly(p, [-cand, ONE])
                changed = True
                break
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int):
    n = abs(n)
    if n == 0:
        return [0]
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.extend({k, n // k})
        k += 1
    return sorted(out)


def _candidates(const: GaussRational, lead: GaussRational):
    # Over Q(i), any root a/b has Gaussian-integer norm constraints; use the
    # norms as a coarse filter and enumerate small Gaussian integers.
    cn = int(const.norm()) if const.norm().denominator == 1 else 0
    ln = int(lead.norm()) if lead.norm().denominator == 1 else 1
    nums = set()
    for d in _divisors(cn) if cn else [0]:
        r = int(d ** 0.5) + 1
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                if a * a + b * b == d:
                    nums.add((a, b))
    dens = set()
    for d in _divisors(ln):
        r = int(d ** 0.5) + 1
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                if a * a + b * b == d and (a, b) != (0, 0):
                    dens.add((a, b))
    seen = set()
    for (a, b) in sorted(nums):
        for (c, d) in sorted(dens):
            val = GaussRational(a, b) / GaussRational(c, d)
            key = (val.re, val.im)
            if key not in seen:
                seen.add(key)
                yield val
