"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL]`` line with the measured
quantities and the tolerance it was held to, then asserts.
"""

import cmath
import json
import math
import random
import time
import warnings
from fractions import Fraction

import numpy as np
import pytest

from qdl.algebra import VARIABLES, GaussRational, MPoly
from qdl.asymfit import (barlet_candidates, congruence_report, exponent_scan, fit_exponents,
                         fit_log_slope, geometric_radii, leading_exponent, sample_fiber_integrals,
                         sample_quillen)
from qdl.cli import main, two_windows
from qdl.elliptic import dedekind_eta, periods_agm, zeta_unit_zero
from qdl.exceptions import ConditioningWarning
from qdl.family import deligne_rr_constant, weierstrass_degeneration
from qdl.local_algebra import jacobian, milnor_number, truncated_colength
from qdl.monodromy import barlet_exponents, monodromy_eigenvalues
from qdl.newton import is_nondegenerate, newton_number, newton_polygon
from qdl.parser import parse_poly
from qdl.weierstrass import WeierstrassModel
import oracles
from suite import ADE, SUITE


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")
        assert ok, detail
    return emit


def model(**kw):
    return WeierstrassModel.from_coefficients(**{k: parse_poly(v) for k, v in kw.items()})


def test_1_ade_table(verdict):
    start = time.perf_counter()
    got = {name: milnor_number(parse_poly(text)).mu for name, text, _ in ADE}
    elapsed = time.perf_counter() - start
    wrong = [name for name, _, mu in ADE if got[name] != mu]
    verdict(1, not wrong and elapsed < 1.0,
            f"ADE Milnor table, {len(ADE)} germs exact, mismatches {wrong}, "
            f"{elapsed:.3f} s (limit 1 s)")


def test_2_kouchnirenko_and_colength(verdict):
    start = time.perf_counter()
    checked, bad = [], []
    x, y = MPoly.var("x"), MPoly.var("y")
    for name, f, _ in SUITE:
        if not is_nondegenerate(f):
            continue
        mu = milnor_number(f).mu
        g = f
        if not newton_polygon(f).convenient:
            # f is (mu+1)-determined, so f + x^M + y^M has the same mu and a
            # convenient polygon; the added edges have lattice length 1
            g = f + x ** (mu + 2) + y ** (mu + 2)
        nu = newton_number(newton_polygon(g))
        col = truncated_colength(jacobian(f), mu + 1)
        checked.append(name)
        if not (nu == mu == col):
            bad.append((name, nu, mu, col))
    elapsed = time.perf_counter() - start
    verdict(2, not bad and elapsed < 5.0,
            f"Kouchnirenko number = colength = mu on {len(checked)} nondegenerate germs, "
            f"mismatches {bad}, {elapsed:.2f} s (limit 5 s)")


def test_3_cusp_monodromy(verdict):
    data = monodromy_eigenvalues(parse_poly("y^2 - x^3"))
    T = np.array([[0, 1], [-1, 1]])
    charT = tuple(int(round(c)) for c in np.poly(T)[::-1])
    eig = data.eigenvalues
    primitive = all(abs(z ** 6 - 1) < 1e-12 and min(abs(z ** k - 1) for k in range(1, 6)) > 0.5
                    for z in eig)
    ok = (data.char_poly == (1, -1, 1) == charT and len(eig) == 2 and primitive
          and data.eigenvalue_args == (Fraction(1, 6), Fraction(5, 6)))
    verdict(3, ok, f"cusp char poly {data.char_poly} (ascending) vs char poly of T {charT}; "
                   f"eigenvalue args {[str(a) for a in data.eigenvalue_args]} (exact)")


def test_4_weierstrass_identity(verdict):
    rows, ok = [], True
    for k in range(1, 6):
        deg = weierstrass_degeneration(model(a6=f"t^{k}"))
        c = deg.check
        good = (deg.ord_delta == 2 * k and c.consistent and deg.routes_agree
                and (c.mu_duval, c.chi_fiber_diff) == (2 * k - 2, 2))
        ok &= good
        rows.append(f"k={k}: {deg.ord_delta}={c.mu_duval}+{c.chi_fiber_diff}")
    for label, kw, od in (("I1", dict(a4="-3", a6="2 + t"), 1), ("I0*", dict(a6="t^3"), 6)):
        deg = weierstrass_degeneration(model(**kw))
        good = (deg.ord_delta == od and deg.check.kodaira.symbol == label and deg.routes_agree)
        ok &= good
        rows.append(f"{label}: {deg.ord_delta}={deg.check.mu_duval}+{deg.check.chi_fiber_diff}")
    verdict(4, ok, "ord0(disc) = mu_duval + chi-difference, both routes agree (exact); "
            + "; ".join(rows))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_5_isotrivial_slopes(k, verdict):
    start = time.perf_counter()
    m = model(a6=f"t^{k}")
    s = sample_quillen(m, geometric_radii(0.1, 0.005, 12), n_angles=16)
    fit = fit_log_slope(s)
    elapsed = time.perf_counter() - start
    miss = abs(abs(fit.slope) - k / 6)
    verdict(5, miss <= 1e-3 and elapsed < 30,
            f"y^2 = x^3 + t^{k}: |c1| = {abs(fit.slope):.10f} vs {k}/6, |error| {miss:.1e} "
            f"(tol 1e-3), sign {'-' if fit.slope < 0 else '+'} (recorded), {elapsed:.2f} s (limit 30 s)")


def test_6_nodal_slope(verdict):
    start = time.perf_counter()
    m = model(a4="-3", a6="2 + t")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        s = sample_quillen(m, geometric_radii(0.1, 0.005, 12), n_angles=16)
    fit = fit_log_slope(s, "slope_const_loglog")
    elapsed = time.perf_counter() - start
    miss = abs(abs(fit.slope) - 1 / 12)
    verdict(6, miss <= 5e-3 and elapsed < 60,
            f"I1 family, loglog model: |c1| = {abs(fit.slope):.10f} vs 1/12, |error| {miss:.1e} "
            f"(tol 5e-3), loglog coefficient {fit.coefficient('loglog(1/|t|)'):.1e}, "
            f"{elapsed:.2f} s (limit 60 s)")


def test_7_cusp_barlet_exponent(verdict):
    start = time.perf_counter()
    f = parse_poly("y^2 - x^3")
    be = barlet_exponents(f)
    radii = geometric_radii(0.1, 0.00625, 12)
    s = sample_fiber_integrals(f, radii, n_angles=2, radius=1.0)
    win_a, win_b = two_windows(radii)
    scans = [exponent_scan(s.window(w), seed=0) for w in (win_a, win_b)]
    e_a, e_b = scans[0].exponent, scans[1].exponent
    stability = abs(e_a - e_b) / abs(e_b)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        fit = fit_exponents(s, barlet_candidates(be), barlet_exponents=be)
    lead = leading_exponent(fit)
    cong = congruence_report(e_b, be)
    elapsed = time.perf_counter() - start
    ok = (len(radii) >= 6 and stability <= 0.02
          and abs(e_b - oracles.CUSP_AREA_EXPONENT) <= 1e-2
          and lead is not None and abs(float(lead) - e_b) / e_b <= 0.02
          and elapsed < 120)
    verdict(7, ok,
            f"cusp area exponent windows {e_a:.5f} / {e_b:.5f} (stability {stability:.1e}, tol 2%), "
            f"oracle {oracles.CUSP_AREA_EXPONENT} (tol 1e-2), fitted leading exponent {lead}; "
            f"mod 1 = {cong['exponent_mod_1']:.4f}, congruent to "
            f"{[r for r, v in cong['congruent_to'].items() if v] or 'none of ' + str([str(r) for r in be])}, "
            f"integer {cong['integer']}; {elapsed:.1f} s (limit 120 s)")


def test_8_deligne_constant(verdict):
    g1 = deligne_rr_constant(1, 1)
    g0 = deligne_rr_constant(0, 1)
    oracle = oracles.deligne_constant_oracle(0, 1)
    ok = g1 == 0 and abs(g0 - 4.9701076) <= 1e-6 and abs(g0 - oracle) <= 1e-6
    verdict(8, ok, f"genus 1 -> {g1} (exact 0); genus 0 rank 1 -> {g0:.9f} vs 4.9701076 and "
                   f"Euler-Maclaurin {oracle:.9f} (tol 1e-6)")


def test_9_numeric_infrastructure(verdict):
    eta_err = abs(dedekind_eta(1j) - oracles.eta_i_closed_form())
    t1 = abs(periods_agm(4, 0).tau - 1j)
    t2 = abs(periods_agm(0, 4).tau - cmath.exp(1j * math.pi / 3))
    z_err = max(abs(zeta_unit_zero() - oracles.heat_trace_zeta_zero(tau))
                for tau in (1j, cmath.exp(1j * math.pi / 3), 0.2 + 1.3j))
    ok = eta_err <= 1e-12 and t1 <= 1e-10 and t2 <= 1e-10 and z_err <= 1e-3
    verdict(9, ok, f"eta(i) error {eta_err:.1e} (tol 1e-12); tau lemniscatic {t1:.1e}, "
                   f"equianharmonic {t2:.1e} (tol 1e-10); zeta(0) vs heat trace {z_err:.1e} (tol 1e-3)")


def _random_poly(rng: random.Random) -> MPoly:
    terms = {}
    for _ in range(rng.randint(0, 6)):
        m = tuple(rng.randint(0, 6) for _ in VARIABLES)
        re = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        im = Fraction(rng.randint(-20, 20), rng.randint(1, 9)) if rng.random() < 0.4 else 0
        terms[m] = GaussRational(re, im)
    return MPoly(VARIABLES, terms)


def _cli(argv, capsys):
    code = main(argv)
    out, _ = capsys.readouterr()
    return code, out


def test_10_parser_and_cli(verdict, capsys):
    rng = random.Random(20240601)
    failures = 0
    for _ in range(10_000):
        p = _random_poly(rng)
        text = str(p)
        q = parse_poly(text)
        if q != p or str(q) != text:
            failures += 1
    barlet = ["--json", "--seed", "7", "barlet-fit", "y^2 - x^3", "--radii", "0.1:0.005:11",
              "--bootstrap", "50"]
    first, second = _cli(barlet, capsys), _cli(barlet, capsys)
    qf = ["--json", "--seed", "7", "quillen-fit", "--a6", "t^2", "--radii", "0.1:0.005:8"]
    q1, q2 = _cli(qf, capsys), _cli(qf, capsys)
    codes = {
        0: _cli(["milnor", "x^2 + y^3"], capsys)[0],
        1: _cli(["monodromy", "y^2 - x^3 - x^4"], capsys)[0],
        2: _cli(["milnor", "x^2 +* y"], capsys)[0],
        # the window disagreement (about 1e-3) is a genuine miss at this tolerance
        3: _cli(barlet[3:] + ["--tolerance", "1e-9"], capsys)[0],
    }
    seeded = json.loads(first[1])["inputs"]["seed"] == 7
    identical = first == second and q1 == q2 and first[0] == 0 and q1[0] == 0
    ok = failures == 0 and all(k == v for k, v in codes.items()) and identical and seeded
    verdict(10, ok, f"10^4 random round-trips, {failures} failures; exit codes "
                    f"{ {k: v for k, v in codes.items()} } (expected key = value); "
                    f"barlet-fit and quillen-fit reports byte-identical under --seed 7: {identical}")
