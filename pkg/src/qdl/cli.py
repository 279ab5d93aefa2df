"""Command-line interface.

Exit codes: 0 success, 1 domain or precondition error, 2 usage error
(bad flags, unparsable expressions), 3 accuracy or conditioning failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .exceptions import (ConditioningWarning, PreconditionError, QDLError,
                         UsageError)
from .parser import parse_poly
from .report import RunReport

DEFAULT_TOLERANCE = {"quillen-fit": 1e-3, "barlet-fit": 0.02}
COEFF_NAMES = ("a1", "a2", "a3", "a4", "a6")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError((message or "").strip() or "invalid usage")
        if message:
            sys.stdout.write(message)
        raise SystemExit(0)


def _global_flags(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    p.add_argument("--output", metavar="PATH", default=d(None), help="write the report to PATH")
    p.add_argument("--tolerance", type=float, default=d(None),
                   help="acceptance tolerance (command-specific default)")
    p.add_argument("--seed", type=int, default=d(0), help="bootstrap seed")


def _radii_spec(text: str):
    try:
        start, stop, count = text.split(":")
        from .asymfit import geometric_radii
        return geometric_radii(float(start), float(stop), int(count))
    except (ValueError, PreconditionError) as exc:
        raise UsageError(f"--radii expects start:stop:count with start > stop > 0, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qdl", description="Invariants of plane-curve singularities and "
                                        "degenerating elliptic families.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name, helptext in (("milnor", "Milnor and Tjurina numbers"),
                           ("newton", "Newton polygon invariants"),
                           ("monodromy", "spectrum and monodromy of a quasi-homogeneous germ")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("expr", help="polynomial in x, y")
        _global_flags(s, suppress=True)

    for name in ("weierstrass", "quillen-fit"):
        s = sub.add_parser(name, help="Weierstrass family analysis" if name == "weierstrass"
                           else "fit the log-slope of the Quillen norm")
        for c in COEFF_NAMES:
            s.add_argument(f"--{c}", default=None, metavar="EXPR", help=f"coefficient {c}(t)")
        s.add_argument("--file", default=None, help='JSON file {"a": [a1, a2, a3, a4, a6]}')
        s.add_argument("--rank", type=int, default=1)
        if name == "quillen-fit":
            s.add_argument("--radii", type=str, default="0.1:0.005:12")
            s.add_argument("--angles", type=int, default=16)
            s.add_argument("--model", choices=("slope_const", "slope_const_loglog"),
                           default="slope_const")
        _global_flags(s, suppress=True)

    s = sub.add_parser("family", help="discriminant order of a family F(x, y, t) = 0")
    s.add_argument("--file", required=True, help='JSON file {"f": .., "points": [[x, y]], "rank": 1}')
    _global_flags(s, suppress=True)

    s = sub.add_parser("barlet-fit", help="exponents of Milnor-fiber area integrals")
    s.add_argument("expr", help="quasi-homogeneous germ f(x, y)")
    s.add_argument("--radii", type=str, default="0.1:0.00625:12")
    s.add_argument("--angles", type=int, default=2)
    s.add_argument("--x-radius", type=float, default=1.0)
    s.add_argument("--max-h", type=int, default=0)
    s.add_argument("--bootstrap", type=int, default=200)
    _global_flags(s, suppress=True)
    return p


# --------------------------------------------------------------------------
# commands; each returns (results, text lines)

def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc


def _monomial_text(m, variables=("x", "y")) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, m) if e]
    return "*".join(parts) or "1"


def cmd_milnor(args, report):
    from .local_algebra import milnor_number
    f = parse_poly(args.expr)
    report.inputs["f"] = str(f)
    data = milnor_number(f)
    finite = data.mu != float("inf")
    basis = [_monomial_text(m) for m in data.algebra_basis]
    res = {"mu": int(data.mu) if finite else "inf",
           "tjurina": int(data.tjurina) if data.tjurina != float("inf") else "inf",
           "basis": basis}
    lines = [f"mu = {res['mu']}", f"tau = {res['tjurina']}"]
    if finite:
        lines.append("basis: {" + ", ".join(basis) + "}")
    return res, lines


def cmd_newton(args, report):
    from .local_algebra import milnor_number
    from .newton import branch_count_and_delta, is_nondegenerate, newton_number, newton_polygon
    f = parse_poly(args.expr).restrict(("x", "y"))
    report.inputs["f"] = str(f)
    poly = newton_polygon(f)
    nondeg = is_nondegenerate(f)
    res = {"vertices": [list(v) for v in poly.vertices],
           "edges": [{"start": list(e.start), "end": list(e.end), "slope": e.slope,
                      "lattice_length": e.lattice_length} for e in poly.compact_edges],
           "convenient": poly.convenient, "nondegenerate": nondeg}
    lines = ["vertices: " + " ".join(f"({a},{b})" for a, b in poly.vertices),
             f"convenient: {poly.convenient}", f"nondegenerate: {nondeg}"]
    if poly.convenient:
        nu = newton_number(poly)
        res["newton_number"] = nu
        lines.append(f"Newton number = {nu}")
    mu = milnor_number(f).mu
    res["mu"] = int(mu) if mu != float("inf") else "inf"
    lines.append(f"mu = {res['mu']}")
    if nondeg and mu != float("inf"):
        br = branch_count_and_delta(f, mu)
        res["branches"] = br.branch_count
        res["delta"] = br.delta
        lines.append(f"branches = {br.branch_count}, delta = {br.delta}")
    return res, lines


def cmd_monodromy(args, report):
    from .monodromy import format_char_poly, monodromy_eigenvalues
    f = parse_poly(args.expr)
    report.inputs["f"] = str(f)
    data = monodromy_eigenvalues(f)
    res = {"weights": list(data.spectrum.weights), "spectrum": list(data.spectrum.values),
           "eigenvalue_arguments": list(data.eigenvalue_args),
           "char_poly": list(data.char_poly), "char_poly_text": format_char_poly(data.char_poly),
           "barlet_exponents": list(data.barlet_exponents),
           "excluded_exponents": list(data.excluded_exponents)}
    lines = ["spectrum: " + ", ".join(str(s) for s in data.spectrum.values),
             "characteristic polynomial: " + res["char_poly_text"],
             "eigenvalues: exp(2 pi i a), a in {" + ", ".join(str(a) for a in data.eigenvalue_args) + "}",
             "Barlet exponents: {" + ", ".join(str(r) for r in data.barlet_exponents) + "}"]
    return res, lines


def _model_from_args(args, report):
    from .weierstrass import WeierstrassModel
    given = {c: getattr(args, c) for c in COEFF_NAMES if getattr(args, c) is not None}
    if args.file:
        if given:
            raise UsageError("give either --file or coefficient flags, not both")
        doc = _read_json(args.file)
        a = doc.get("a") if isinstance(doc, dict) else None
        if not isinstance(a, list) or len(a) != 5 or not all(isinstance(v, str) for v in a):
            raise UsageError('model file needs {"a": [a1, a2, a3, a4, a6]} with string entries')
        given = dict(zip(COEFF_NAMES, a))
    polys = {c: parse_poly(text) for c, text in given.items()}
    model = WeierstrassModel.from_coefficients(**polys)
    report.inputs["model"] = {c: str(getattr(model, c)) for c in COEFF_NAMES}
    return model


def cmd_weierstrass(args, report):
    from .family import weierstrass_degeneration
    model = _model_from_args(args, report)
    deg = weierstrass_degeneration(model, rank_E=args.rank)
    chk, rep = deg.check, deg.report
    res = {"minimal_model": {c: str(getattr(deg.model, c)) for c in COEFF_NAMES},
           "u_order": deg.u_order, "ord_discriminant": deg.ord_delta,
           "kodaira_type": chk.kodaira.symbol, "du_val": chk.kodaira.du_val,
           "mu_duval": chk.mu_duval, "chi_difference": chk.chi_fiber_diff,
           "identity_holds": chk.consistent,
           "standard_basis_route": {"mu_X": rep.mu_X, "chi_difference": rep.chi_diff,
                                    "delta_f": rep.delta_f, "local_mu": list(rep.local_mu)},
           "routes_agree": deg.routes_agree, "predicted_slope": rep.predicted_slope}
    lines = [f"minimal model: [{', '.join(res['minimal_model'].values())}] (u-order {deg.u_order})",
             f"ord0(Delta) = {deg.ord_delta}",
             f"Kodaira type {chk.kodaira.symbol}, du Val {chk.kodaira.du_val or 'none (smooth)'}",
             f"identity: {deg.ord_delta} = {chk.mu_duval} + {chk.chi_fiber_diff} "
             f"{'pass' if chk.consistent else 'FAIL'}",
             f"standard bases: mu_X = {rep.mu_X}, chi difference = {rep.chi_diff}, "
             f"Delta_f = {rep.delta_f} ({'agree' if deg.routes_agree else 'DISAGREE'})",
             f"predicted slope rank*Delta_f/12 = {rep.predicted_slope}"]
    if not chk.consistent or not deg.routes_agree:
        raise _Failed(res, lines, "discriminant identity check failed")
    return res, lines


def cmd_family(args, report):
    from .family import FamilyModel, delta_f, find_singular_points, surface_milnor
    doc = _read_json(args.file)
    if not isinstance(doc, dict) or not isinstance(doc.get("f"), str):
        raise UsageError('family file needs {"f": "<expr>", "points": [[x, y], ...], "rank": 1}')
    f = parse_poly(doc["f"]).embed(("x", "y", "t"))
    rank = doc.get("rank", 1)
    if not isinstance(rank, int):
        raise UsageError("rank must be an integer")
    if "points" in doc:
        pts = []
        for p in doc["points"]:
            if not isinstance(p, list) or len(p) != 2:
                raise UsageError("points must be pairs of expressions")
            pts.append(tuple(_exact_constant(str(c)) for c in p))
    else:
        pts = list(find_singular_points(f))
    fam = FamilyModel(f, tuple(pts), rank)
    mu_X = sum(surface_milnor(f, p) for p in fam.singular_points)
    rep = delta_f(fam, mu_X=mu_X)
    report.inputs.update({"f": str(f), "points": [[str(a), str(b)] for a, b in fam.singular_points],
                          "rank": rank})
    res = {"local_mu": list(rep.local_mu), "mu_total": rep.mu_total, "mu_X": rep.mu_X,
           "chi_difference": rep.chi_diff, "delta_f": rep.delta_f,
           "predicted_slope": rep.predicted_slope}
    lines = [f"singular points: {', '.join(f'({a}, {b})' for a, b in fam.singular_points) or 'none'}",
             f"local Milnor numbers: {list(rep.local_mu)}",
             f"mu_X = {rep.mu_X}, chi difference = {rep.chi_diff}, Delta_f = {rep.delta_f}",
             f"predicted slope = {rep.predicted_slope}"]
    return res, lines


def _exact_constant(text: str):
    p = parse_poly(text)
    if p.used_variables():
        raise UsageError(f"point coordinate {text!r} is not a constant")
    return p.constant_term()


def cmd_quillen_fit(args, report):
    from .asymfit import fit_log_slope, sample_quillen
    from .weierstrass import discriminant, minimalize, ord0
    model = _model_from_args(args, report)
    minimal, u = minimalize(model)
    radii = _radii_spec(args.radii)
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE["quillen-fit"]
    report.inputs.update({"radii": list(radii), "angles": args.angles, "fit_model": args.model,
                          "tolerance": tol, "rank": args.rank})
    if args.angles < 1:
        raise UsageError("--angles must be positive")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        samples = sample_quillen(minimal, radii, args.angles)
    report.warnings.extend(str(w.message) for w in caught)
    fit = fit_log_slope(samples, args.model)
    d = ord0(discriminant(minimal))
    predicted = Fraction(args.rank * d, 12)
    miss = abs(abs(fit.slope) - float(predicted))
    res = {"u_order": u, "ord_discriminant": d, "predicted_abs_slope": predicted,
           "fitted_slope": fit.slope, "slope_sign": "negative" if fit.slope < 0 else "positive",
           "abs_error": miss, "within_tolerance": miss <= tol, "fit": fit}
    lines = [f"fitted slope c1 = {fit.slope:.10f} (sign {res['slope_sign']}, recorded only)",
             f"predicted |c1| = rank*Delta_f/12 = {predicted} = {float(predicted):.10f}",
             f"|error| = {miss:.3e} (tolerance {tol:g}) {'pass' if miss <= tol else 'FAIL'}",
             f"held-out residual {fit.residual_rms:.3e}, condition estimate {fit.condition_estimate:.3e}"]
    if miss > tol:
        raise _Failed(res, lines, f"|slope| misses the prediction by {miss:.3e} > {tol:g}",
                      accuracy=True)
    return res, lines


def two_windows(radii, min_radii: int = 6, min_span: float = 8.0):
    """Two overlapping windows (largest and smallest radii) meeting the scan
    requirements, shifted as far apart as possible."""
    best = None
    for k in range(1, len(radii)):
        a, b = radii[:len(radii) - k], radii[k:]
        ok = all(len(w) >= min_radii and w[0] / w[-1] >= min_span * (1 - 1e-9) for w in (a, b))
        if ok:
            best = (a, b)
    if best is None:
        raise PreconditionError(
            f"radii cannot be split into two windows of >= {min_radii} radii spanning >= {min_span}")
    return best


def cmd_barlet_fit(args, report):
    from .asymfit import (barlet_candidates, congruence_report, exponent_scan, fit_exponents,
                          leading_exponent, sample_fiber_integrals)
    from .monodromy import barlet_exponents
    f = parse_poly(args.expr).restrict(("x", "y"))
    radii = _radii_spec(args.radii)
    tol = args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE["barlet-fit"]
    report.inputs.update({"f": str(f), "radii": list(radii), "angles": args.angles,
                          "x_radius": args.x_radius, "max_h": args.max_h, "tolerance": tol,
                          "seed": args.seed, "bootstrap": args.bootstrap})
    be = barlet_exponents(f)
    win_a, win_b = two_windows(radii)
    samples = sample_fiber_integrals(f, radii, n_angles=args.angles, radius=args.x_radius)
    if "radius_perturbations" in samples.metadata:
        report.warnings.append(f"x-radius perturbed on {len(samples.metadata['radius_perturbations'])}"
                               " samples to avoid branch points")
    scans = [exponent_scan(samples.window(w), seed=args.seed, n_bootstrap=args.bootstrap)
             for w in (win_a, win_b)]
    rel = abs(scans[0].exponent - scans[1].exponent) / abs(scans[1].exponent)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConditioningWarning)
        fit = fit_exponents(samples, barlet_candidates(be), max_h=args.max_h, barlet_exponents=be)
    report.warnings.extend(str(w.message) for w in caught)
    cong = congruence_report(scans[1].exponent, be)
    lead = leading_exponent(fit)
    res = {"barlet_exponents": list(be), "scans": scans, "window_relative_difference": rel,
           "stable": rel <= tol, "congruence": cong, "fit": fit, "fit_leading_exponent": lead}
    lines = [f"Barlet exponents: {{{', '.join(str(r) for r in be)}}}"]
    for name, sc in zip(("large-radius window", "small-radius window"), scans):
        lines.append(f"{name}: e* = {sc.exponent:.6f} +/- {sc.error:.1e}"
                     + (" (log correction flagged)" if sc.log_correction else ""))
    lines.append(f"window agreement {rel:.2e} (tolerance {tol:g}) {'pass' if rel <= tol else 'FAIL'}")
    lines.append(f"e* mod 1 = {cong['exponent_mod_1']:.4f}; congruent to "
                 + (", ".join(k for k, v in cong["congruent_to"].items() if v) or "none of the exponents")
                 + ("; integer" if cong["integer"] else ""))
    sig = [f"{t.label} ({'member' if m else 'not member'})"
           for t, s, m in zip(fit.basis, fit.significant, fit.barlet_membership)
           if s and t.kind == "power"]
    lines.append("significant basis terms: " + (", ".join(sig) or "none"))
    if lead is not None:
        lines.append(f"leading fitted exponent {lead} vs scan {scans[1].exponent:.4f}")
    lines.append(f"condition estimate {fit.condition_estimate:.2e}, held-out residual {fit.residual_rms:.2e}")
    if rel > tol:
        raise _Failed(res, lines, f"exponent unstable across windows ({rel:.2e} > {tol:g})",
                      accuracy=True)
    return res, lines


COMMANDS = {"milnor": cmd_milnor, "newton": cmd_newton, "monodromy": cmd_monodromy,
            "weierstrass": cmd_weierstrass, "family": cmd_family,
            "quillen-fit": cmd_quillen_fit, "barlet-fit": cmd_barlet_fit}


class _Failed(Exception):
    """A command ran to completion but its acceptance check failed."""

    def __init__(self, results, lines, message, accuracy=False):
        super().__init__(message)
        self.results, self.lines, self.accuracy = results, lines, accuracy


def _error_record(exc: QDLError) -> dict:
    rec = {"type": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
    for attr in ("line", "column", "expected", "achieved"):
        if getattr(exc, attr, None) is not None:
            v = getattr(exc, attr)
            rec[attr] = list(v) if isinstance(v, tuple) else v
    return rec


def _write(text: str, path):
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            sys.stderr.write(f"qdl: cannot write {path}: {exc.strerror}\n")
            return False
    else:
        sys.stdout.write(text)
    return True


def _sniff_flags(argv):
    """Best-effort --json/--output lookup for errors raised while parsing flags."""
    as_json = "--json" in argv
    out = None
    for k, a in enumerate(argv):
        if a == "--output" and k + 1 < len(argv):
            out = argv[k + 1]
        elif a.startswith("--output="):
            out = a.split("=", 1)[1]
    return as_json, out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json, out = _sniff_flags(argv)
    command = next((a for a in argv if a in COMMANDS), "")
    report = RunReport(command=command)
    try:
        args = build_parser().parse_args(argv)
        as_json, out = args.json, args.output
        report.command = args.command
        report.inputs["tolerance"] = args.tolerance
        report.inputs["seed"] = args.seed
        results, lines = COMMANDS[args.command](args, report)
        code = 0
    except _Failed as exc:
        results, lines = exc.results, exc.lines
        code = 3 if exc.accuracy else 1
        report.error = {"type": "CheckFailed", "message": str(exc), "exit_code": code}
        sys.stderr.write(f"qdl: {exc}\n")
    except QDLError as exc:
        results, lines = {}, []
        code = exc.exit_code
        report.error = _error_record(exc)
        sys.stderr.write(f"qdl: {type(exc).__name__}: {exc}\n")
    except RecursionError:
        results, lines, code = {}, [], 2
        report.error = {"type": "LimitError", "message": "input nested too deeply", "exit_code": 2}
        sys.stderr.write("qdl: input nested too deeply\n")
    except (ArithmeticError, OverflowError) as exc:
        results, lines, code = {}, [], 3
        report.error = {"type": type(exc).__name__, "message": str(exc), "exit_code": 3}
        sys.stderr.write(f"qdl: numerical failure: {exc}\n")
    report.results = results
    if as_json:
        text = report.to_json()
    else:
        text = "".join(line + "\n" for line in lines)
        if report.warnings:
            sys.stderr.write("".join(f"qdl: warning: {w}\n" for w in report.warnings))
    if (text or out) and not _write(text, out):
        return code or 1
    return code


def entry() -> None:  # console script
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
