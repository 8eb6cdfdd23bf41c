"""Command-line surface.

Commands: norm, witness, bernstein, shift, verify. All randomness flows
from --seed through counter-based derivation, so identical invocations
produce byte-identical output. Exit codes: 0 ok, 1 invariant failure,
2 parse/input error, 3 numerical error.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .alternation import Subspace, find_witness, subspace_matrix_from_dict
from .bernstein import bernstein_lower_estimate, estimates_to_csv, estimates_to_jsonl
from .checks import check_names, run_checks
from .errors import (DimensionError, InvalidExponent, InvariantViolation,
                     NoWitnessFound, ParseError, RankDeficient, ShapeMismatch,
                     SingularSystem, TooLarge)
from .james import is_quasi_norm, james_norm, sup_norm
from .readshift import block_bernstein_decay, decay_to_csv, load_shift_config, tail_norm_probe

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3

_PARSE_ERRORS = (ParseError, InvalidExponent, ShapeMismatch, DimensionError,
                 TooLarge, ValueError, OSError)
_NUMERICAL_ERRORS = (RankDeficient, SingularSystem, NoWitnessFound)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_sequence(path) -> np.ndarray:
    data = _load_json(path)
    if not isinstance(data, list) or not data:
        raise ParseError(f"{path}: expected a non-empty JSON array of numbers")
    try:
        return np.array([float(x) for x in data])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: non-numeric entry: {exc}") from exc


def cmd_norm(args) -> int:
    seq = _load_sequence(args.input)
    report = {
        "n": int(seq.size),
        "p": args.p,
        "james_norm": james_norm(seq, args.p),
        "sup_norm": sup_norm(seq),
        "quasi_norm": is_quasi_norm(args.p),
    }
    if args.format == "csv":
        text = ("n,p,james_norm,sup_norm,quasi_norm\n"
                f"{report['n']},{report['p']:.17g},{report['james_norm']:.17g},"
                f"{report['sup_norm']:.17g},{report['quasi_norm']}\n")
    else:
        text = json.dumps(report, sort_keys=True) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_witness(args) -> int:
    data = _load_json(args.input)
    # user bases may span without being orthonormal; re-orthonormalize
    sub = Subspace.from_span(subspace_matrix_from_dict(data))
    cert = find_witness(sub, tol=args.tol)
    _emit(cert.to_json() + "\n", args.output)
    return EXIT_OK


def cmd_bernstein(args) -> int:
    k_max = args.k_max if args.k_max is not None else args.k
    if k_max < args.k:
        raise ParseError(f"--k-max {k_max} below --k {args.k}")
    estimates = [
        bernstein_lower_estimate(k, args.n, args.p, args.q, args.trials, args.seed)
        for k in range(args.k, k_max + 1)
    ]
    if args.format == "json":
        _emit(estimates_to_jsonl(estimates), args.output)
    else:
        _emit(estimates_to_csv(estimates), args.output)
    return EXIT_OK


def cmd_shift(args) -> int:
    cfg = load_shift_config(args.config)
    n_cut = args.n if args.n is not None else len(cfg.weights) // 2
    report = tail_norm_probe(cfg, n_cut, trials=args.trials, seed=args.seed)
    sys.stdout.write(json.dumps({
        "bound": report.bound,
        "max_ratio": report.max_ratio,
        "n_cut": report.n_cut,
        "trials": report.trials,
    }, sort_keys=True) + "\n")
    if args.k_max >= 2:
        cells = block_bernstein_decay(cfg, args.k_max, trials=args.trials,
                                      seed=args.seed)
        _emit(decay_to_csv(cells), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        text = "\n".join(check_names()) + "\n"
        _emit(text, args.output)
        return EXIT_OK
    results = run_checks(args.seed, corrupt=args.corrupt)
    lines = []
    for name, ok, detail in results:
        lines.append(f"ok {name}" if ok else f"FAIL {name}: {detail}")
    failed = [name for name, ok, _ in results if not ok]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed "
                 f"(seed {args.seed})")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.output:
        payload = {
            "seed": args.seed,
            "results": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results],
            "all_ok": not failed,
        }
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK if not failed else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jameslab",
        description="James-space norms, alternating witnesses, Bernstein "
                    "estimates and weighted-shift probes",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="James p-norm and sup-norm of a sequence file")
    p_norm.add_argument("--input", required=True, help="JSON array of numbers")
    p_norm.add_argument("--p", type=float, default=2.0)
    p_norm.add_argument("--output")
    p_norm.add_argument("--format", choices=("json", "csv"), default="json")
    p_norm.set_defaults(fn=cmd_norm)

    p_wit = sub.add_parser("witness", help="alternating witness certificate for a subspace file")
    p_wit.add_argument("--input", required=True,
                       help="JSON object with ambient_dim, dim, basis (row-major)")
    p_wit.add_argument("--tol", type=float, default=1e-9)
    p_wit.add_argument("--output")
    p_wit.set_defaults(fn=cmd_witness)

    p_ber = sub.add_parser("bernstein", help="k-sweep of Bernstein lower estimates vs bounds")
    p_ber.add_argument("--p", type=float, default=1.0)
    p_ber.add_argument("--q", type=float, default=2.0)
    p_ber.add_argument("--k", type=int, default=2)
    p_ber.add_argument("--k-max", type=int, default=None)
    p_ber.add_argument("--n", type=int, default=16)
    p_ber.add_argument("--trials", type=int, default=10)
    p_ber.add_argument("--seed", type=int, default=0)
    p_ber.add_argument("--output")
    p_ber.add_argument("--format", choices=("json", "csv"), default="csv")
    p_ber.set_defaults(fn=cmd_bernstein)

    p_shift = sub.add_parser("shift", help="weighted-shift tail probe and decay table")
    p_shift.add_argument("--config", required=True,
                         help="JSON object with exponents, weights, block_dim")
    p_shift.add_argument("--n", type=int, default=None,
                         help="tail cutoff (default: half the weights)")
    p_shift.add_argument("--trials", type=int, default=50)
    p_shift.add_argument("--seed", type=int, default=0)
    p_shift.add_argument("--k-max", type=int, default=0,
                         help="when >= 2, also emit the per-block decay CSV")
    p_shift.add_argument("--output")
    p_shift.set_defaults(fn=cmd_shift)

    p_ver = sub.add_parser("verify", help="run the named invariant suite")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--list", action="store_true",
                       help="print invariant names without running")
    p_ver.add_argument("--output")
    p_ver.add_argument("--corrupt", default=None, help=argparse.SUPPRESS)
    p_ver.set_defaults(fn=cmd_verify)
    return parser


def _report_error(exc: Exception, code: int) -> int:
    line = json.dumps({"error": type(exc).__name__, "message": str(exc)},
                      sort_keys=True)
    print(line, file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InvariantViolation as exc:
        return _report_error(exc, EXIT_INVARIANT)
    except _NUMERICAL_ERRORS as exc:
        return _report_error(exc, EXIT_NUMERICAL)
    except _PARSE_ERRORS as exc:
        return _report_error(exc, EXIT_PARSE)


if __name__ == "__main__":
    sys.exit(main())
