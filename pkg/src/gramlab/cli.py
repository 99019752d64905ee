"""Command-line surface.

Commands: grid, gram, approx, symm pw, pair, bounds, verify. JSON is the
canonical output (schema: version, command, params, rows, verdicts); CSV is
a flat projection of the rows. Exit codes: 0 success, 1 verification
finding, 2 usage error, 3 internal error. Identical invocations produce
byte-identical output; --jobs only parallelizes independent verify cells
and never reorders rows.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Any

from .approx import linf_best_approx, monomial_gram_truncation, uniform_reference_error, monomial_hardness_ref, verify_certificate
from .arith import GridKind, Poly, grid_points
from .exceptions import ConsistencyError, ParityError, SimplexError
from .extremal import TvMode, bound_b_sq, duality_check, extremal_pair_for_test, extremal_tv
from .gram import alpha_sq, build_basis_gs, build_basis_recurrence
from .report import payload, render_decimal_sqrt, rows_to_csv, to_json
from .symmetrize import build_pw, cw_closed_form
from .verify import SUITE_NAMES, run_suite


def _cmd_grid(args) -> tuple[dict, list, list]:
    grid = grid_points(GridKind(args.kind), args.n)
    rows = [{"index": i, "point": t} for i, t in enumerate(grid.points)]
    return {"kind": args.kind, "n": args.n}, rows, []


def _cmd_gram(args) -> tuple[dict, list, list]:
    n, max_deg = args.n, args.max_deg
    if not 0 <= max_deg < n:
        raise ValueError("max-deg must be < n (and >= 0)")
    gs = build_basis_gs(n, max_deg)
    rec = build_basis_recurrence(n, max_deg)
    rows = []
    for d in range(max_deg + 1):
        rows.append(
            {
                "d": d,
                "coeffs": list(gs.psi[d].coeffs),
                "norm_sq": gs.norm_sq[d],
                "alpha_sq": alpha_sq(n, d) if 1 <= d <= n - 1 else None,
            }
        )
    same = gs.psi == rec.psi and gs.norm_sq == rec.norm_sq
    verdicts = [
        {
            "name": "recurrence_equals_gram_schmidt",
            "pass": same,
            "detail": "coefficient-exact equality of both constructions",
        }
    ]
    return {"n": n, "max_deg": max_deg}, rows, verdicts


def _cmd_approx(args) -> tuple[dict, list, list]:
    n, k = args.n, args.k
    if k < 1:
        raise ValueError("k must be >= 1")
    if args.method == "truncate":
        if args.grid != "out":
            raise ValueError("method 'truncate' is defined over the endpoint grid; use --grid out")
        cert = monomial_gram_truncation(n, k)
    else:
        cert = linf_best_approx(Poly.monomial(k), grid_points(GridKind(args.grid), n), k - 1)
    problems = verify_certificate(cert)
    row: dict[str, Any] = {
        "n": n,
        "k": k,
        "grid": args.grid,
        "method": args.method,
        "degree_bound": cert.degree_bound,
        "epsilon": cert.epsilon,
        "epsilon_sq": cert.epsilon**2,
        "optimal": cert.optimal,
        "coeffs": list(cert.approximant.coeffs),
        "active_points": list(cert.active_points),
        "residuals": list(cert.residuals),
        "uniform_ref": uniform_reference_error(k),
        "hardness_ref_sq": monomial_hardness_ref(n, k) if 1 <= k < n else None,
    }
    verdicts = [
        {
            "name": "certificate_integrity",
            "pass": not problems,
            "detail": "; ".join(problems) if problems else "recomputed residuals match",
        }
    ]
    return {"n": n, "k": k, "grid": args.grid, "method": args.method}, [row], verdicts


def _cmd_symm_pw(args) -> tuple[dict, list, list]:
    test = build_pw(args.n, args.k, args.w)
    row: dict[str, Any] = {
        "n": test.n,
        "k": test.k,
        "w": test.w,
        "degree": test.poly.degree,
        "coeffs": list(test.poly.coeffs),
        "zeros": list(test.zeros),
        "leading_abs": test.leading_abs,
        "leading_sign": test.leading_sign,
    }
    verdicts = [
        {
            "name": "interpolation_consistent",
            "pass": True,
            "detail": "degree, zero pattern, and [0,1] range enforced at construction",
        }
    ]
    if (args.n - args.k) % 2 == 0:
        closed = cw_closed_form(args.n, args.k, args.w)
        row["closed_form"] = closed
        verdicts.append(
            {
                "name": "closed_form_leading_coeff",
                "pass": closed == test.leading_abs,
                "detail": f"closed form {closed} vs interpolated magnitude {test.leading_abs}",
            }
        )
    return {"n": args.n, "k": args.k, "w": args.w}, [row], verdicts


def _pair_fields(pair) -> dict[str, Any]:
    return {
        "mu": list(pair.mu.pmf),
        "nu": list(pair.nu.pmf),
        "test_accepts": sorted(pair.test.accept_weights),
        "advantage": pair.advantage,
        "indist_level": pair.indist_level,
    }


def _cmd_pair(args) -> tuple[dict, list, list]:
    n, k = args.n, args.k
    rows: list[dict[str, Any]] = []
    verdicts: list[dict[str, Any]] = []
    if args.w is not None:
        w_report = args.w
    else:
        advantages = [extremal_pair_for_test(n, k, w).advantage for w in range(k + 1)]
        for w, adv in enumerate(advantages):
            rows.append({"row": "advantage", "w": w, "advantage": adv})
        w_report = max(range(k + 1), key=lambda w: (advantages[w], -w))
    pair = extremal_pair_for_test(n, k, w_report)
    rows.append({"row": "pair", "w": w_report, **_pair_fields(pair)})
    cell = duality_check(n, k, w_report)
    rows.append(
        {
            "row": "duality",
            "w": w_report,
            "lp_advantage": cell.lp_advantage,
            "approx_error": cell.approx_error,
        }
    )
    verdicts.append(
        {
            "name": "strong_duality",
            "pass": cell.holds,
            "detail": f"advantage {cell.lp_advantage} vs 2 * {cell.approx_error}",
        }
    )
    if args.tv:
        tv_pair, tv = extremal_tv(n, k, TvMode(args.tv))
        rows.append({"row": "tv", "tv": tv, "mode": args.tv, **_pair_fields(tv_pair)})
    return {"n": n, "k": k, "w": args.w, "tv": args.tv}, rows, verdicts


def _cmd_bounds(args) -> tuple[dict, list, list]:
    n, k = args.n, args.k
    b_sq = bound_b_sq(n, k)
    row: dict[str, Any] = {
        "n": n,
        "k": k,
        "b_sq": b_sq,
        "b_float": render_decimal_sqrt(b_sq),
        "uniform_ref": uniform_reference_error(k) if k >= 1 else None,
        "hardness_ref_sq": monomial_hardness_ref(n, k) if 1 <= k < n else None,
    }
    return {"n": n, "k": k}, [row], []


def _cmd_verify(args) -> tuple[dict, list, list]:
    results = run_suite(
        args.suite,
        n_max=args.n_max,
        trials=args.trials,
        seed=args.seed,
        k_max=args.k_max,
        jobs=args.jobs,
    )
    rows: list[dict[str, Any]] = []
    verdicts: list[dict[str, Any]] = []
    for res in results:
        for r in res.rows:
            rows.append({"suite": res.suite, **r})
        for v in res.verdicts:
            verdicts.append(
                {"name": f"{res.suite}:{v.name}", "pass": v.passed, "detail": v.detail}
            )
    params = {
        "suite": args.suite,
        "n_max": args.n_max,
        "trials": args.trials,
        "seed": args.seed,
        "k_max": args.k_max,
    }
    return params, rows, verdicts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", "-f", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1, help="parallel verify cells")

    parser = argparse.ArgumentParser(
        prog="gramlab",
        description="Exact rational workbench: Gram polynomial bases, grid minimax "
        "approximation, and extremal indistinguishable distribution pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grid", parents=[common], help="materialize a grid")
    g.add_argument("--kind", choices=["in", "out"], required=True)
    g.add_argument("--n", type=int, required=True)

    gm = sub.add_parser("gram", parents=[common], help="orthogonal basis table")
    gm.add_argument("--n", type=int, required=True)
    gm.add_argument("--max-deg", type=int, required=True)

    ap = sub.add_parser("approx", parents=[common], help="approximate x^k on a grid")
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--k", type=int, required=True)
    ap.add_argument("--grid", choices=["in", "out"], default="out")
    ap.add_argument("--method", choices=["lp", "truncate"], default="lp")

    sy = sub.add_parser("symm", parents=[common], help="symmetrized weight tests")
    sysub = sy.add_subparsers(dest="subcommand", required=True)
    pw = sysub.add_parser("pw", parents=[common], help="one symmetrized test polynomial")
    pw.add_argument("--n", type=int, required=True)
    pw.add_argument("--k", type=int, required=True)
    pw.add_argument("--w", type=int, required=True)

    pr = sub.add_parser("pair", parents=[common], help="extremal indistinguishable pair")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--w", type=int, default=None)
    pr.add_argument("--best-w", action="store_true", help="sweep w and report the best")
    pr.add_argument("--tv", choices=["enumerate", "alternate"], default=None)

    bd = sub.add_parser("bounds", parents=[common], help="closed-form reference bounds")
    bd.add_argument("--n", type=int, required=True)
    bd.add_argument("--k", type=int, required=True)

    vf = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vf.add_argument("--suite", choices=list(SUITE_NAMES) + ["all"], required=True)
    vf.add_argument("--n-max", type=int, default=None)
    vf.add_argument("--trials", type=int, default=None)
    vf.add_argument("--seed", type=int, default=None)
    vf.add_argument("--k-max", type=int, default=None)
    return parser


_DISPATCH = {
    "grid": _cmd_grid,
    "gram": _cmd_gram,
    "approx": _cmd_approx,
    "pair": _cmd_pair,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "symm":
            params, rows, verdicts = _cmd_symm_pw(args)
            command = f"symm {args.subcommand}"
        else:
            params, rows, verdicts = _DISPATCH[args.command](args)
            command = args.command
    except ParityError as exc:
        print(f"gramlab: parity error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"gramlab: usage error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, SimplexError) as exc:
        print(f"gramlab: internal error: {exc}", file=sys.stderr)
        return 3

    doc = payload(command, params, rows, verdicts)
    if args.format == "json":
        text = to_json(doc)
    else:
        text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(v["pass"] for v in verdicts) else 1


if __name__ == "__main__":
    sys.exit(main())
