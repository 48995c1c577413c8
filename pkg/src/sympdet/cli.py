"""Command-line interface.

Exit codes: 0 success, 1 usage/parse/numerical error, 2 the matrix admits
no real diagonalising symplectic. Errors are reported on stderr as a single
line ``CODE: message``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import io as sio
from .baseline import decompose_baseline
from .bench import run_bench, to_csv, to_table
from .degenerate import make_plan
from .detdiag import DetOptions, decompose_det
from .errors import NotPositiveDefinite, SympdetError
from .indefinite import NotDiagonalizable, decompose_indefinite
from .sympbase import (
    convert_ordering,
    gauge_distance,
    normalize_ordering,
    random_covariance,
    reconstruction_residual,
    symplectic_residual,
)
from .sympeig import symplectic_eigenvalues

EXIT_OK, EXIT_ERROR, EXIT_NOT_DIAGONALIZABLE = 0, 1, 2


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _fail(code, message):
    print(f"{code}: {message}", file=sys.stderr)
    return EXIT_ERROR


def _is_pd(V):
    if np.iscomplexobj(V):
        return False
    return bool(np.linalg.eigvalsh(V)[0] > 0)


def _to_decomp_file(result, options):
    if isinstance(result, NotDiagonalizable):
        return sio.DecompFile(
            S=None,
            lambdas=np.asarray(result.lambdas_plus),
            method=result.method,
            residuals={"symp": result.residual_symp, "rec": result.residual_rec},
            options=options,
            verdict="not-diagonalizable",
            info={"reason": result.reason, "gimel": list(result.gimel), **result.info},
        )
    return sio.DecompFile(
        S=result.S,
        lambdas=np.asarray(result.lambdas),
        method=result.method,
        ordering=result.ordering,
        residuals={"symp": result.residual_symp, "rec": result.residual_rec},
        options=options,
        info=result.info,
    )


# --- decompose --------------------------------------------------------------


def cmd_decompose(args):
    mf = sio.read_matrix(args.input, args.ordering)
    V, ordering = mf.data, mf.ordering
    opts = DetOptions(tol=args.tol, kbar=args.kbar, epsilon=args.epsilon)
    options = {
        "method": args.method,
        "kbar": args.kbar,
        "tol": args.tol,
        "epsilon": args.epsilon,
        "allow_indefinite": args.allow_indefinite,
    }
    pd = _is_pd(V)
    if args.method == "baseline":
        if not pd:
            raise NotPositiveDefinite("baseline method needs a positive definite matrix")
        result = decompose_baseline(V, ordering)
        if max(result.residual_symp, result.residual_rec) > args.tol:
            raise CliError("CERTIFICATION", f"baseline residuals exceed {args.tol:g}")
    elif pd:
        result = decompose_det(V, ordering, opts)
        if "epsilon" in result.info:
            options["epsilon"] = result.info["epsilon"]
            options["perturbation"] = result.info.get("strategy")
    elif args.allow_indefinite:
        result = decompose_indefinite(V, ordering, opts)
    else:
        raise NotPositiveDefinite("matrix is not positive definite (use --allow-indefinite)")
    sio.write_decomp(args.output, _to_decomp_file(result, options))
    if isinstance(result, NotDiagonalizable):
        print(f"NOT_DIAGONALIZABLE: {result.reason}", file=sys.stderr)
        return EXIT_NOT_DIAGONALIZABLE
    return EXIT_OK


# --- verify -----------------------------------------------------------------


def cmd_verify(args):
    mf = sio.read_matrix(args.input, args.ordering)
    df = sio.read_decomp(args.decomp)
    if df.S is None:
        raise CliError("NO_DECOMPOSITION", f"decomposition file carries verdict {df.verdict!r}")
    if df.S.shape != mf.data.shape:
        raise CliError("DIMENSION", f"S is {df.S.shape}, matrix is {mf.data.shape}")
    S = convert_ordering(df.S, df.ordering, mf.ordering)
    res_symp = symplectic_residual(S, mf.ordering)
    res_rec = reconstruction_residual(mf.data, S, df.lambdas, mf.ordering)
    ok = res_symp <= args.tol and res_rec <= args.tol
    print(f"residual_symp {res_symp:.3e}")
    print(f"residual_rec {res_rec:.3e}")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_ERROR


# --- compare ----------------------------------------------------------------


def compare(V, ordering="xpxp", opts=None):
    """Run both methods on ``V`` and summarise their agreement."""
    opts = opts or DetOptions()
    t0 = time.perf_counter()
    det_res = decompose_det(V, ordering, opts)
    t_det = time.perf_counter() - t0
    report = {
        "d": det_res.d,
        "det_method": det_res.method,
        "det_ms": t_det * 1e3,
        "det_residuals": [det_res.residual_symp, det_res.residual_rec],
    }
    target = V
    if det_res.method == "det-perturbed":
        plan = make_plan(V, epsilon=opts.epsilon, ordering=ordering)
        target = V + plan.epsilon * plan.delta
        report["note"] = f"degenerate spectrum: baseline run on V + eps*Delta with eps={plan.epsilon:.3e}"
    t0 = time.perf_counter()
    base_res = decompose_baseline(target, ordering)
    t_base = time.perf_counter() - t0
    lam_ref = symplectic_eigenvalues(V, ordering).lambdas
    report.update(
        {
            "baseline_ms": t_base * 1e3,
            "baseline_residuals": [base_res.residual_symp, base_res.residual_rec],
            "lambda_max_rel_diff": float(np.max(np.abs(det_res.lambdas - lam_ref) / np.abs(lam_ref))),
            "baseline_lambda_max_rel_diff": float(np.max(np.abs(base_res.lambdas - lam_ref) / np.abs(lam_ref))),
            "gauge_distance": gauge_distance(det_res.S, base_res.S, det_res.lambdas, ordering),
        }
    )
    if det_res.method == "det-perturbed":
        unpert = decompose_baseline(V, ordering)
        report["gauge_distance_degenerate_mixing"] = gauge_distance(
            det_res.S, unpert.S, det_res.lambdas, ordering, mix_degenerate=True
        )
    return report


def cmd_compare(args):
    mf = sio.read_matrix(args.input, args.ordering)
    report = compare(mf.data, mf.ordering, DetOptions(tol=args.tol, epsilon=args.epsilon))
    if args.json:
        print(json.dumps(sio._jsonable(report), indent=1))
        return EXIT_OK
    for key, value in report.items():
        if isinstance(value, float):
            value = f"{value:.6g}"
        elif isinstance(value, list):
            value = " ".join(f"{v:.3e}" for v in value)
        print(f"{key:<34} {value}")
    return EXIT_OK


# --- gen --------------------------------------------------------------------


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def generate_lambdas(d, lambdas=None, degenerate=None, indefinite=None, seed=0):
    """Resolve the ``gen`` eigenvalue options into a signed list of ``d`` values."""
    values = list(lambdas or [])
    if degenerate:
        for part in degenerate.split(","):
            count, value = part.split(":")
            values.extend([float(value)] * int(count))
    if not values:
        rng = np.random.default_rng(seed)
        values = sorted(rng.uniform(1.0, 5.0, size=d), reverse=True)
    if len(values) != d:
        raise CliError("USAGE", f"{len(values)} symplectic eigenvalues given for {d} modes")
    values = np.array(values, dtype=float)
    if indefinite:
        signs = [s.strip() for s in indefinite.split(",")]
        if len(signs) != d or any(s not in {"+", "-", "−"} for s in signs):
            raise CliError("USAGE", f"--indefinite needs {d} comma-separated signs")
        values = np.abs(values) * np.array([-1.0 if s in {"-", "−"} else 1.0 for s in signs])
    if np.any(values == 0):
        raise CliError("INVALID_LAMBDA", "symplectic eigenvalues must be non-zero")
    return values


def cmd_gen(args):
    lambdas = generate_lambdas(
        args.modes, _floats(args.lambdas) if args.lambdas else None, args.degenerate, args.indefinite, args.seed
    )
    ordering = normalize_ordering(args.ordering)
    inst = random_covariance(args.modes, lambdas, seed=args.seed, ordering=ordering)
    meta = {
        "label": args.label or f"random d={args.modes}",
        "seed": args.seed,
        "lambdas": lambdas,
        "S": inst.S,
    }
    sio.write_matrix(args.output, sio.MatrixFile(data=inst.V, ordering=ordering, meta=meta))
    return EXIT_OK


# --- bench ------------------------------------------------------------------


def cmd_bench(args):
    modes = [int(v) for v in args.modes.split(",")]
    rows = run_bench(modes, args.trials, args.seed)
    sys.stdout.write(to_table(rows))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(to_csv(rows))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="sympdet", description="Williamson decomposition from submatrix determinants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a symmetric matrix")
    p.add_argument("input", help="matrix file, or - for stdin")
    p.add_argument("--method", choices=["det", "baseline"], default="det")
    p.add_argument("--ordering", default=None, help="ordering of raw matrix input (xpxp or xxpp)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--epsilon", type=float, default=None, help="perturbation magnitude for degenerate spectra")
    p.add_argument("--allow-indefinite", action="store_true")
    p.add_argument("--kbar", choices=["fixed", "per-mode"], default="per-mode")
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a decomposition against its matrix")
    p.add_argument("input")
    p.add_argument("decomp")
    p.add_argument("--ordering", default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="run the determinant and baseline methods side by side")
    p.add_argument("input")
    p.add_argument("--ordering", default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen", help="generate a random matrix with known decomposition")
    p.add_argument("--modes", type=int, required=True)
    p.add_argument("--lambdas", default=None, help="comma-separated symplectic eigenvalues")
    p.add_argument("--degenerate", default=None, help="COUNT:VALUE[,COUNT:VALUE...] repeated eigenvalues")
    p.add_argument("--indefinite", default=None, help="comma-separated signs, e.g. +,-")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ordering", default="xpxp")
    p.add_argument("--label", default=None)
    p.add_argument("--output", "-o", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time both methods")
    p.add_argument("--modes", default="2,4,8")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        return _fail(exc.code, str(exc))
    except SympdetError as exc:
        return _fail(exc.code, str(exc))
    except (OSError, ValueError, KeyError) as exc:
        return _fail("ERROR", str(exc).replace("\n", " "))


if __name__ == "__main__":
    sys.exit(main())
