"""Newton polygons of plane germs.

Kouchnirenko's Newton number, the nondegeneracy test on compact edges, and
branch counting for nondegenerate germs.  These serve as independent checks
on the standard-basis Milnor numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import univariate
from .algebra import GERM_VARIABLES, MPoly
from .exceptions import DomainError, PreconditionError, UnsupportedInputError
from .local_algebra import INFINITE, milnor_number


@dataclass(frozen=True)
class Edge:
    start: tuple  # endpoint nearer the x-axis
    end: tuple    # endpoint nearer the y-axis
    direction: tuple  # primitive step from start to end
    lattice_length: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end[1] - self.start[1], self.end[0] - self.start[0])


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    vertices: tuple  # from the y-axis side to the x-axis side
    compact_edges: tuple  # ordered by decreasing slope
    convenient: bool

    @property
    def x_intercept(self):
        v = self.vertices[-1]
        return v[0] if v[1] == 0 else None

    @property
    def y_intercept(self):
        v = self.vertices[0]
        return v[1] if v[0] == 0 else None


@dataclass(frozen=True)
class BranchData:
    branch_count: int
    delta: int
    mu: int


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: MPoly) -> NewtonPolygon:
    f = f.restrict(GERM_VARIABLES)
    if not f:
        raise DomainError("the zero polynomial has no Newton polygon")
    if f.constant_term():
        raise DomainError("Newton polygon of a germ needs f(0, 0) = 0")
    pts = sorted(set(f.terms))
    # lower convex hull, left to right
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    # keep the strictly descending part from the leftmost-lowest point to
    # the first point of minimal height
    min_y = min(p[1] for p in pts)
    verts = [hull[0]]
    for p in hull[1:]:
        if p[1] < verts[-1][1]:
            verts.append(p)
        if p[1] == min_y:
            break
    edges = []
    for a, b in zip(verts, verts[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = gcd(dx, -dy)
        edges.append(Edge(start=b, end=a, direction=(-dx // g, -dy // g), lattice_length=g))
    edges.sort(key=lambda e: e.slope, reverse=True)
    convenient = verts[0][0] == 0 and verts[-1][1] == 0
    return NewtonPolygon(frozenset(pts), tuple(verts), tuple(edges), convenient)


def newton_number(p: NewtonPolygon) -> int:
    """Kouchnirenko number ``2S - a - b + 1`` of a convenient polygon."""
    if not p.convenient:
        raise PreconditionError("Newton number requires a convenient polygon (meeting both axes)")
    a, b = p.x_intercept, p.y_intercept
    ring = [(0, 0), (a, 0)] + list(reversed(p.vertices))[1:]
    twice = 0
    for (x0, y0), (x1, y1) in zip(ring, ring[1:] + ring[:1]):
        twice += x0 * y1 - x1 * y0
    twice = abs(twice)
    # 2S is an integer for lattice polygons
    return twice - a - b + 1


def edge_polynomial(f: MPoly, edge: Edge):
    """Coefficients of the edge polynomial along the lattice points of ``edge``."""
    f = f.restrict(GERM_VARIABLES)
    coeffs = []
    for k in range(edge.lattice_length + 1):
        pt = (edge.start[0] + k * edge.direction[0], edge.start[1] + k * edge.direction[1])
        coeffs.append(f.coefficient(pt))
    return coeffs


def is_nondegenerate(f: MPoly) -> bool:
    """Newton nondegeneracy: every compact-edge polynomial is squarefree in C*."""
    poly = newton_polygon(f)
    return all(univariate.is_squarefree(edge_polynomial(f, e)) for e in poly.compact_edges)


def branch_count_and_delta(f: MPoly, mu=None) -> BranchData:
    """Number of branches and delta invariant of a nondegenerate germ.

    Each compact edge contributes its lattice length; a coordinate axis that
    is itself a branch (the polygon stops one unit short of that axis)
    contributes one more.  ``delta`` then follows from ``mu = 2 delta - r + 1``.
    """
    f = f.restrict(GERM_VARIABLES)
    if not is_nondegenerate(f):
        raise UnsupportedInputError(
            "branch counting needs a Newton-nondegenerate germ; supply the branch count manually")
    if mu is None:
        mu = milnor_number(f).mu
    if mu == INFINITE:
        raise UnsupportedInputError("branch counting needs an isolated singularity (finite Milnor number)")
    poly = newton_polygon(f)
    r = sum(e.lattice_length for e in poly.compact_edges)
    first, last = poly.vertices[0], poly.vertices[-1]
    if first[0] == 1:  # x divides f exactly once: the y-axis is a branch
        r += 1
    if last[1] == 1:   # y divides f exactly once: the x-axis is a branch
        r += 1
    twice_delta = mu + r - 1
    if twice_delta % 2 or twice_delta < 0:
        raise UnsupportedInputError(f"inconsistent data: mu + r - 1 = {twice_delta} is not even")
    return BranchData(branch_count=r, delta=twice_delta // 2, mu=int(mu))
