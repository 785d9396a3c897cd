"""Command-line front end.

Exit status: 0 on success, 1 when a verification suite records failures,
2 on usage errors or malformed input. The resolved configuration of every
run is echoed to stderr as one JSON line; stdout carries only results.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import io, verify
from .composite import analyze, build_optimal_separable, correlation_information
from .errors import CorrcapError
from .majorization import compare, infimum, shannon_entropy, supremum
from .twoqubit import QubitPair, feline_state, fig1_curve, sigma_classical, sigma_entangled, sigma_separable

FAMILIES = {
    "classical": sigma_classical,
    "separable": sigma_separable,
    "entangled": sigma_entangled,
}


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("CORRCAP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"CORRCAP_SEED={raw!r} is not an integer")


def _emit(doc) -> None:
    print(json.dumps(doc))


def _prob(text: str) -> float:
    p = float(text)
    if not 0.5 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"{p} outside [0.5, 1]")
    return p


def cmd_major(args) -> int:
    dists = [io.load_distribution(f) for f in args.files]
    if args.op == "cmp":
        if len(dists) != 2:
            raise UsageError("cmp takes exactly two files")
        print(compare(*dists).value)
    else:
        op = infimum if args.op == "inf" else supremum
        _emit(io.distribution_to_doc(op(dists)))
    return 0


def cmd_composite(args) -> int:
    margs = io.load_marginals(args.marginals)
    if len(margs) < 2:
        raise UsageError("need at least two marginals")
    sigma, ens = build_optimal_separable(margs)
    if args.output:
        io.save_state(sigma, args.output)
    _emit(io.report_to_doc(analyze(sigma, ens)))
    return 0


def cmd_analyze(args) -> int:
    rho = io.load_state(args.state)
    _emit(io.report_to_doc(analyze(rho)))
    return 0


def cmd_twoqubit(args) -> int:
    if args.action == "optimal":
        sigma = FAMILIES[args.family](QubitPair(args.pa, args.pb))
        if args.output:
            io.save_state(sigma, args.output)
        report = analyze(sigma)
        report.extras["family"] = args.family
        report.extras["entropy_bits"] = shannon_entropy(report.spectrum)
        _emit(io.report_to_doc(report))
    elif args.action == "fig1":
        rows = fig1_curve(args.pa, args.steps, parallel=args.parallel)
        if args.output in (None, "-"):
            io.write_fig1_csv(rows, sys.stdout)
        else:
            with open(args.output, "w", newline="") as fh:
                io.write_fig1_csv(rows, fh)
    else:
        spectrum = io.load_distribution(args.spectrum)
        psi, dephased = feline_state(args.n, spectrum)
        _emit({
            "n": args.n,
            "spectrum": [io.fmt(x) for x in spectrum],
            "C_pure": io.fmt(correlation_information(psi.density())),
            "C_decohered": io.fmt(correlation_information(dephased)),
        })
    return 0


def cmd_verify(args) -> int:
    res = verify.run_suite(args.suite, trials=args.trials, seed=args.seed, parallel=args.parallel)
    doc = {
        "suite": res.suite,
        "trials": res.trials,
        "seed": args.seed,
        "failures": res.failures,
        "max_violation": io.fmt(res.max_violation),
    }
    if not args.deterministic:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    _emit(doc)
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corrcap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("major", help="majorization order, infimum and supremum of distributions")
    p.add_argument("op", choices=["cmp", "inf", "sup"])
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_major)

    p = sub.add_parser("composite", help="least disordered separable composite of a marginal set")
    p.add_argument("action", choices=["build"])
    p.add_argument("marginals")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_composite)

    p = sub.add_parser("state", help="analyze a state file")
    p.add_argument("action", choices=["analyze"])
    p.add_argument("state")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("twoqubit", help="closed-form two-qubit optima")
    tq = p.add_subparsers(dest="action", required=True)
    q = tq.add_parser("optimal")
    q.add_argument("--pa", type=_prob, required=True)
    q.add_argument("--pb", type=_prob, required=True)
    q.add_argument("--family", choices=sorted(FAMILIES), required=True)
    q.add_argument("-o", "--output")
    q = tq.add_parser("fig1")
    q.add_argument("--pa", type=_prob, required=True)
    q.add_argument("--steps", type=int, default=201)
    q.add_argument("--parallel", action="store_true")
    q.add_argument("-o", "--output")
    q = tq.add_parser("feline")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--spectrum", required=True)
    p.set_defaults(func=cmd_twoqubit)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=sorted(verify.SUITES), required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--deterministic", action="store_true", help="omit the timestamp field")
    p.set_defaults(func=cmd_verify)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if args.command == "twoqubit" and args.action == "fig1" and args.steps < 2:
            raise UsageError("--steps must be at least 2")
        if args.command == "verify" and args.trials < 1:
            raise UsageError("--trials must be positive")
        print(json.dumps({"config": _config(args)}), file=sys.stderr)
        return args.func(args)
    except (UsageError, io.FormatError, CorrcapError, ValueError) as exc:
        print(f"corrcap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
