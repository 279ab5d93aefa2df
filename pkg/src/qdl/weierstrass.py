"""Weierstrass models over a disc with polynomial coefficients in ``t``.

Standard b/c invariants and discriminant, minimal models, the characteristic
zero Kodaira table and the du Val type of the total space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import MPoly
from .exceptions import DegenerateModelError, DomainError, PreconditionError

T_CONTEXT = ("t",)
INF = math.inf


def _in_t(p) -> MPoly:
    if not isinstance(p, MPoly):
        return MPoly.constant(p, T_CONTEXT)
    return p.restrict(T_CONTEXT)


@dataclass(frozen=True)
class WeierstrassModel:
    """``y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: MPoly
    a2: MPoly
    a3: MPoly
    a4: MPoly
    a6: MPoly

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _in_t(getattr(self, name)))
        if not discriminant(self):
            raise DegenerateModelError("discriminant vanishes identically")

    @classmethod
    def from_coefficients(cls, a1=0, a2=0, a3=0, a4=0, a6=0) -> "WeierstrassModel":
        return cls(_in_t(a1), _in_t(a2), _in_t(a3), _in_t(a4), _in_t(a6))

    @property
    def coefficients(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def surface(self) -> MPoly:
        """Defining polynomial of the total space in ``(x, y, t)``."""
        ctx = ("x", "y", "t")
        x, y = MPoly.var("x", ctx), MPoly.var("y", ctx)
        a1, a2, a3, a4, a6 = (a.embed(ctx) for a in self.coefficients)
        return y ** 2 + a1 * x * y + a3 * y - x ** 3 - a2 * x ** 2 - a4 * x - a6

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.coefficients) + "]"


@dataclass(frozen=True)
class WeierstrassInvariants:
    b2: MPoly
    b4: MPoly
    b6: MPoly
    b8: MPoly
    c4: MPoly
    c6: MPoly
    discriminant: MPoly

    @property
    def j_num(self) -> MPoly:
        return self.c4 ** 3

    @property
    def j_den(self) -> MPoly:
        return self.discriminant


def _invariants(a1, a2, a3, a4, a6) -> WeierstrassInvariants:
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    b8 = a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2
    c4 = b2 ** 2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    disc = -(b2 ** 2) * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6
    return WeierstrassInvariants(b2, b4, b6, b8, c4, c6, disc)


def discriminant(m: WeierstrassModel) -> MPoly:
    return _invariants(*m.coefficients).discriminant


def invariants(m: WeierstrassModel) -> WeierstrassInvariants:
    return _invariants(*m.coefficients)


def ord0(p: MPoly) -> int:
    """Order of vanishing at ``t = 0``."""
    p = _in_t(p)
    if not p:
        raise DomainError("the zero polynomial has no finite order of vanishing")
    return min(m[0] for m in p.terms)


def _ord_or_inf(p: MPoly):
    return INF if not p else ord0(p)


def _divide_by_t_power(p: MPoly, k: int):
    if not p:
        return p
    if ord0(p) < k:
        return None
    return MPoly._from_clean(T_CONTEXT, {(m[0] - k,): c for m, c in p.terms.items()})


def short_model(m: WeierstrassModel) -> WeierstrassModel:
    """Isomorphic model ``y^2 = x^3 - c4/48 x - c6/864`` (same c4, c6, discriminant)."""
    inv = invariants(m)
    return WeierstrassModel.from_coefficients(a4=inv.c4 / -48, a6=inv.c6 / -864)


def _reducible(inv: WeierstrassInvariants) -> bool:
    return (_ord_or_inf(inv.c4) >= 4 and _ord_or_inf(inv.c6) >= 6
            and ord0(inv.discriminant) >= 12)


def minimalize(m: WeierstrassModel) -> tuple[WeierstrassModel, int]:
    """Strip factors ``u = t`` via ``(x, y) -> (u^2 x, u^3 y)`` while possible.

    When the invariants allow a reduction but some ``a_i`` is not divisible by
    ``t^i``, the model is first replaced by its short form, which always
    divides cleanly.  Returns the minimal model and the total ``u``-order.
    """
    u_order = 0
    while _reducible(invariants(m)):
        divided = [_divide_by_t_power(a, i) for a, i in zip(m.coefficients, (1, 2, 3, 4, 6))]
        if any(d is None for d in divided):
            m = short_model(m)
            divided = [_divide_by_t_power(a, i) for a, i in zip(m.coefficients, (1, 2, 3, 4, 6))]
            if any(d is None for d in divided):
                break
        m = WeierstrassModel(*divided)
        u_order += 1
    return m, u_order


def is_minimal(m: WeierstrassModel) -> bool:
    return not _reducible(invariants(m))


DU_VAL_MU = {"A": lambda n: n, "D": lambda n: n, "E": lambda n: n}


@dataclass(frozen=True)
class KodairaType:
    kind: str            # "I0", "I", "II", "III", "IV", "I0*", "I*", "IV*", "III*", "II*"
    n: int               # subscript for I_n and I_n^*, else 0
    euler_number: int
    du_val: str | None   # e.g. "A2", "D4", "E8"; None for a smooth total space

    @property
    def symbol(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    @property
    def du_val_mu(self) -> int:
        return 0 if self.du_val is None else int(self.du_val[1:])

    @property
    def additive(self) -> bool:
        return self.kind not in ("I0", "I")

    @property
    def chi_fiber_diff(self) -> int:
        """Euler characteristic of the Weierstrass fiber minus that of a smooth one."""
        if self.kind == "I0":
            return 0
        return 1 if self.kind == "I" else 2


def _classify(oc4, oc6, od) -> KodairaType:
    if od == 0:
        return KodairaType("I0", 0, 0, None)
    if oc4 == 0:
        return KodairaType("I", od, od, f"A{od - 1}" if od >= 2 else None)
    if od == 2:
        return KodairaType("II", 0, 2, None)
    if od == 3:
        return KodairaType("III", 0, 3, "A1")
    if od == 4:
        return KodairaType("IV", 0, 4, "A2")
    if od == 6:
        return KodairaType("I0*", 0, 6, "D4")
    if oc4 == 2 and oc6 == 3 and od > 6:
        n = od - 6
        return KodairaType("I*", n, od, f"D{4 + n}")
    if od == 8:
        return KodairaType("IV*", 0, 8, "E6")
    if od == 9:
        return KodairaType("III*", 0, 9, "E7")
    if od == 10:
        return KodairaType("II*", 0, 10, "E8")
    raise PreconditionError(
        f"no Kodaira type for (ord c4, ord c6, ord disc) = ({oc4}, {oc6}, {od}); model not minimal?")


def kodaira_type(m: WeierstrassModel) -> KodairaType:
    if not is_minimal(m):
        raise PreconditionError("Kodaira classification needs a minimal model; call minimalize first")
    inv = invariants(m)
    return _classify(_ord_or_inf(inv.c4), _ord_or_inf(inv.c6), ord0(inv.discriminant))


@dataclass(frozen=True)
class DeltaCheck:
    ord_delta: int
    mu_duval: int
    chi_fiber_diff: int
    consistent: bool
    kodaira: KodairaType


def delta_f_check(m: WeierstrassModel) -> DeltaCheck:
    """Compare ``ord0(disc)`` with du Val Milnor number plus Euler-characteristic jump."""
    kt = kodaira_type(m)
    od = ord0(discriminant(m))
    mu = kt.du_val_mu
    chi = kt.chi_fiber_diff
    return DeltaCheck(ord_delta=od, mu_duval=mu, chi_fiber_diff=chi,
                      consistent=(od == mu + chi), kodaira=kt)
