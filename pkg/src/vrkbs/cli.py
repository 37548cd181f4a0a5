"""Command line interface: ``vrkbs train | predict | verify``.

Exit codes: 0 success, 1 input error, 2 solver hit max_iter, 3 a verification
check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from vrkbs import counterexamples as cx
from vrkbs.io import (
    InputError,
    build_space,
    dumps,
    format_float,
    load_model,
    model_to_dict,
    read_dataset,
    save_model,
    write_csv,
)
from vrkbs.learn import (
    LearningProblem,
    LossSpec,
    RegularizerSpec,
    characterization_residual,
    solve,
    zero_minimizer_test,
)
from vrkbs.properties import run_property_suite

EXIT_OK, EXIT_INPUT, EXIT_MAXITER, EXIT_VERIFY = 0, 1, 2, 3
ZERO_REGIME_RTOL = 1e-6


def _fmt(x) -> str:
    return format_float(x)


def _split_columns(header, data, d, n):
    k = len(header)
    xs = [i for i, h in enumerate(header) if h.lower().startswith("x")]
    ys = [i for i, h in enumerate(header) if h.lower().startswith("y")]
    if d is None and n is None:
        if not xs or not ys or len(xs) + len(ys) != k:
            raise InputError("line 1: cannot infer d and n from the header; pass --d and --n")
        d, n = len(xs), len(ys)
    elif d is None:
        d = k - n
    elif n is None:
        n = k - d
    if d < 1 or n < 1 or d + n != k:
        raise InputError(f"line 1: header has {k} columns, expected d + n = {d} + {n}")
    return d, n, data[:, :d], data[:, d:]


def _space_spec(args, d, n, X):
    kind = args.space
    if kind == "tensor":
        if args.kernel == "gaussian":
            kernel = {"kind": "gaussian", "bandwidth": args.bandwidth,
                      "anchors": np.asarray(X, dtype=float).tolist()}
        elif args.kernel == "linear":
            kernel = {"kind": "linear", "input_dim": d, "offset": 1.0}
        else:
            kernel = {"kind": "poly2", "input_dim": d}
        return {"kind": "tensor", "d": d, "n": n, "p": args.p,
                "r": 2.0 if args.r is None else args.r, "kernel": kernel}
    if kind == "ti":
        points = args.grid_points or (400 if d == 1 else max(8, int(round(400 ** (1.0 / d)))))
        if points ** d > 40000:
            raise InputError(f"quadrature grid {points}^{d} is too large; lower --grid-points")
        q = args.p / (args.p - 1.0)
        return {"kind": "ti", "d": d, "n": n, "p": args.p,
                "r": q if args.r is None else args.r,
                "normalization": "probability", "S": np.eye(n).tolist(),
                "grid": {"points": points, "half_width": args.half_width}}
    return {"kind": "sensing", "d": d, "n": n, "p": args.p,
            "r": 2.0 if args.r is None else args.r, "gamma": args.gamma,
            "transpose": bool(args.transpose)}


def cmd_train(args) -> int:
    header, data = read_dataset(args.data)
    if data.shape[0] == 0:
        raise InputError(f"{args.data}: no samples")
    d, n, X, Y = _split_columns(header, data, args.d, args.n)
    spec = _space_spec(args, d, n, X)
    try:
        fm = build_space(spec)
        if args.loss == "square":
            loss = LossSpec("square")
        else:
            scale = max(1.0, float(np.abs(Y).max()))
            mu = args.smoothing if args.smoothing is not None else 1e-4 * scale
            loss = LossSpec("eps", eps=args.eps, smoothing=mu)
        reg = RegularizerSpec(args.sigma)
        problem = LearningProblem(fm, list(X), Y, loss, reg, args.lam)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    model = solve(problem, tol=args.tol, max_iter=args.max_iter)
    resid = characterization_residual(problem, model)
    preds = model.predict_many(list(X))
    zero = zero_minimizer_test(problem)
    scale = max(1.0, float(np.abs(Y).max()))
    zero_regime = bool(zero.holds or np.abs(preds).max() < ZERO_REGIME_RTOL * scale)
    diagnostics = {
        "objective": model.objective,
        "characterization_residual": resid,
        "gradient_norm": model.gradient_norm,
        "iterations": model.iterations,
        "converged": model.converged,
        "zero_minimizer_regime": zero_regime,
        "max_imag_prediction": float(np.abs(np.imag(preds)).max()),
    }
    doc = model_to_dict(model, spec, args.lam, loss, reg, X, diagnostics)
    save_model(args.out, doc)
    print(f"objective {_fmt(model.objective)}")
    print(f"characterization_residual {_fmt(resid)}")
    print(f"iterations {model.iterations}")
    print(f"converged {str(model.converged).lower()}")
    if zero_regime:
        print("zero-minimizer regime: the learned function is numerically zero")
    if not model.converged:
        print(f"warning: max_iter reached ({model.message}); best iterate saved", file=sys.stderr)
        return EXIT_MAXITER
    return EXIT_OK


def cmd_predict(args) -> int:
    model, doc = load_model(args.model)
    header, data = read_dataset(args.data)
    d = int(doc["space"]["d"])
    n = int(doc["space"]["n"])
    if not header:
        Path(args.out).write_text("", encoding="utf-8")
        return EXIT_OK
    if len(header) < d:
        raise InputError(f"{args.data}: line 1: model needs {d} input columns, "
                         f"file has {len(header)}")
    preds = np.real(model.predict_many(list(data[:, :d])))
    out_header = list(header) + [f"pred_{k + 1}" for k in range(n)]
    rows = np.hstack([data, preds.reshape(len(data), n)]) if len(data) else []
    write_csv(args.out, out_header, rows)
    return EXIT_OK


# --- verify ---------------------------------------------------------------
def _load_matrices(path):
    if path is None:
        return dict(cx.BUILTIN)
    try:
        override = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot load matrices: {exc}") from exc
    mats = dict(cx.BUILTIN)
    for name, mat in override.items():
        if name not in mats:
            raise InputError(f"{path}: unknown matrix {name!r}")
        mats[name] = (tuple(tuple(row) for row in mat), mats[name][1])
    return mats


def _verify_counterexamples(mats, seed):
    checks, details = [], {}
    for name in ("A1", "A2"):
        A, s = mats[name]
        rep = cx.nondensity_verify(A, s)
        details[name] = {"s": s, "det": rep.det_before, "det_power": rep.det_after,
                         "exact": rep.exact, "verdict": bool(rep.verdict)}
        checks.append((f"{name} nondensity", bool(rep.verdict)))
    for name in ("W1", "W2"):
        Wm, s = mats[name]
        value = cx.gram_sip_sum(Wm, s)
        details[name] = {"s": s, "gram_sip_sum": value}
        checks.append((f"{name} gram sum negative", value < 0))
    pos = cx.small_m_positivity_check(trials=200, seed=seed)
    details["positivity"] = {"trials": pos.trials, "min_sum": pos.min_sum,
                             "violations": pos.violations}
    checks.append(("positivity m<=2", bool(pos.ok)))
    return checks, details


def cmd_verify(args) -> int:
    mats = _load_matrices(args.matrices)
    checks, report = [], {"schema": 1, "seed": args.seed, "suite": args.suite}
    if args.suite in ("counterexamples", "all"):
        c, details = _verify_counterexamples(mats, args.seed)
        checks += c
        report["counterexamples"] = details
    if args.suite in ("properties", "all"):
        suite = run_property_suite(instances=args.instances, seed=args.seed)
        sd = suite.as_dict()
        report["properties"] = sd
        checks += [(f"property {k}", v["passed"] == args.instances)
                   for k, v in sd["checks"].items()]
    report["checks"] = [{"name": name, "ok": ok} for name, ok in checks]
    report["ok"] = all(ok for _, ok in checks)
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    text = dumps(report)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK if report["ok"] else EXIT_VERIFY


# --- parser ---------------------------------------------------------------
def _positive(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _exponent(s):
    v = float(s)
    if not v > 1:
        raise argparse.ArgumentTypeError("exponents must exceed 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vrkbs", description="Vector-valued RKBS toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("train", help="fit a regularized model to a CSV dataset")
    t.add_argument("--data", required=True)
    t.add_argument("--out", required=True)
    t.add_argument("--space", choices=["tensor", "ti", "sensing"], default="tensor")
    t.add_argument("--d", type=int, default=None, help="number of input columns")
    t.add_argument("--n", type=int, default=None, help="number of output columns")
    t.add_argument("--p", type=_exponent, default=2.0)
    t.add_argument("--r", type=_exponent, default=None)
    t.add_argument("--lambda", dest="lam", type=_positive, default=0.1)
    t.add_argument("--loss", choices=["square", "eps"], default="square")
    t.add_argument("--eps", type=_positive, default=0.1)
    t.add_argument("--smoothing", type=_positive, default=None)
    t.add_argument("--sigma", type=_exponent, default=2.0)
    t.add_argument("--kernel", choices=["gaussian", "linear", "poly2"], default="gaussian")
    t.add_argument("--bandwidth", type=_positive, default=1.0)
    t.add_argument("--gamma", type=_exponent, default=2.0)
    t.add_argument("--transpose", action="store_true")
    t.add_argument("--grid-points", type=int, default=None)
    t.add_argument("--half-width", type=_positive, default=8.0)
    t.add_argument("--tol", type=_positive, default=1e-8)
    t.add_argument("--max-iter", type=int, default=5000)
    t.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="append predictions to a CSV of inputs")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    v = sub.add_parser("verify", help="run counterexample and property checks")
    v.add_argument("--suite", choices=["counterexamples", "properties", "all"], default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--instances", type=int, default=500)
    v.add_argument("--report", default=None, help="write the JSON report here")
    v.add_argument("--matrices", default=None,
                   help="JSON object overriding built-in matrices (A1, A2, W1, W2)")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
