"""Command-line surface: symbolic output, jet files, verification suites.

Subcommands
    mobius-symbolic    print the invariant family w3..wK exactly
    mobius-project     numeric invariants of one univariate jet
    mobius-verify      randomized + exact checks for the analytic case
    mink-invariants    full invariant report for one jet file
    mink-canonicalize  normal form (spatial block, eigenvalues) of a jet file
    mink-verify        randomized checks for the pseudo-Euclidean case
    verify             run either or both suites (--suite mobius|minkowski|all)

Exit codes: 0 success, 1 domain error (non-timelike gradient, u1 = 0, pole),
2 verification failure, 3 usage or file-format error.  The default master
seed is 0, overridden by the JETRED_SEED environment variable, overridden by
--seed.  Reports are deterministic: same flags, byte-identical output.

Jet file schema (JSON):  {"n": int >= 2, "u": [n numbers],
"u2": [n rows of n numbers, symmetric to 1e-12], "label": optional string}.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .conformal import map_jet2_at, parse_word, pullback_scalar_jet
from .errors import DomainError
from .minkowski import ScalarJet2
from .mobius import jet_from_derivatives, canonical_projection, symbolic_invariants
from .reduction import build_report, canonicalize
from .verify import VerificationReport, run_minkowski_suite, run_mobius_suite

USAGE_EXIT = 3
VERIFY_FAIL_EXIT = 2
DOMAIN_EXIT = 1


class Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


class JetFileError(ValueError):
    """Malformed jet file: wrong JSON shape, asymmetry, non-finite entries."""


def default_seed() -> int:
    raw = os.environ.get("JETRED_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise JetFileError(f"JETRED_SEED must be an integer, got {raw!r}")


def load_jet_file(path: str) -> tuple[ScalarJet2, str | None]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise JetFileError(f"cannot read jet file: {exc}")
    except json.JSONDecodeError as exc:
        raise JetFileError(f"invalid JSON in {path}: {exc}")
    if not isinstance(data, dict):
        raise JetFileError("jet file must be a JSON object")
    allowed = {"n", "u", "u2", "label"}
    unknown = set(data) - allowed
    if unknown:
        raise JetFileError(f"unknown keys in jet file: {sorted(unknown)}")
    for key in ("n", "u", "u2"):
        if key not in data:
            raise JetFileError(f"jet file missing key {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n < 2:
        raise JetFileError("n must be an integer >= 2")
    u = np.asarray(data["u"], dtype=float)
    u2 = np.asarray(data["u2"], dtype=float)
    if u.shape != (n,):
        raise JetFileError(f"u must be a flat array of {n} numbers")
    if u2.shape != (n, n):
        raise JetFileError(f"u2 must be an {n}x{n} array")
    if not (np.isfinite(u).all() and np.isfinite(u2).all()):
        raise JetFileError("jet entries must be finite numbers")
    if np.abs(u2 - u2.T).max() > 1e-12 * max(1.0, float(np.abs(u2).max())):
        raise JetFileError("u2 is not symmetric (tolerance 1e-12)")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise JetFileError("label must be a string")
    return ScalarJet2(u, u2), label


def serialize_jet(jet: ScalarJet2, label: str | None = None) -> dict:
    out = {"n": jet.n, "u": [float(x) for x in jet.u], "u2": [[float(x) for x in row] for row in jet.u2]}
    if label is not None:
        out["label"] = label
    return out


def _dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _apply_word(jet: ScalarJet2, word: str) -> ScalarJet2:
    """Pull the jet back through the word's 2-jet at the origin.

    The file jet is read as the jet of f at the word's image of 0; the
    result is the jet of f∘g at 0.  Invariants are unchanged, which makes
    this flag a direct command-line demonstration of invariance.
    """
    element = parse_word(word, jet.n)
    return pullback_scalar_jet(jet, map_jet2_at(element, np.zeros(jet.n)))


# ---------------------------------------------------------------------------
# subcommands


def cmd_mobius_symbolic(args) -> int:
    family = symbolic_invariants(args.order)
    if args.format == "json":
        payload = {
            "order": family.order,
            "invariants": {name: str(poly) for name, poly in family.items()},
        }
        sys.stdout.write(_dump_json(payload))
    else:
        for name, poly in family.items():
            print(f"{name} = {poly}")
    return 0


def cmd_mobius_project(args) -> int:
    try:
        # decimal tokens are exact rationals, so the projection is exact and
        # only the printed value is rounded to a float
        values = [Fraction(tok.strip()) for tok in args.jet.split(",")]
    except (ValueError, ZeroDivisionError):
        raise JetFileError(f"--jet expects comma-separated numbers, got {args.jet!r}")
    if len(values) < 3:
        raise DomainError("no invariants below order 3: supply at least u1,u2,u3")
    ws = canonical_projection(jet_from_derivatives(values))
    for l, w in enumerate(ws, start=3):
        print(f"w{l} = {float(w)!r}")
    return 0


def cmd_mink_invariants(args) -> int:
    jet, label = load_jet_file(args.jet)
    if args.apply:
        jet = _apply_word(jet, args.apply)
    report = build_report(jet)
    payload = report.as_dict()
    if label is not None:
        payload["label"] = label
    if args.format == "json":
        sys.stdout.write(_dump_json(payload))
    else:
        print(f"n = {report.n}")
        print(f"S = {report.S!r}")
        print(f"sigma = {report.sigma!r}")
        print(f"eigenvalues = {report.eigenvalues!r}")
        print(f"D_closed = {report.D_closed!r}")
        print(f"newton residual = {report.newton_residual!r}")
        print(f"closed-form residuals = {report.closed_form_residuals!r}")
    return 0


def cmd_mink_canonicalize(args) -> int:
    jet, label = load_jet_file(args.jet)
    if args.apply:
        jet = _apply_word(jet, args.apply)
    canonical = canonicalize(jet)
    payload = {
        "n": canonical.n,
        "w_tilde": [[float(x) for x in row] for row in canonical.w_tilde],
        "eigenvalues": [float(x) for x in canonical.eigenvalues],
    }
    if label is not None:
        payload["label"] = label
    if args.format == "json":
        sys.stdout.write(_dump_json(payload))
    else:
        print(f"n = {payload['n']}")
        print(f"w_tilde = {payload['w_tilde']!r}")
        print(f"eigenvalues = {payload['eigenvalues']!r}")
    return 0


def _render_report(report: VerificationReport, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(_dump_json(report.as_dict()))
        return
    header = f"suite: {report.suite}  seed: {report.seed}  trials: {report.trials}"
    if report.dim is not None:
        header += f"  dim: {report.dim}"
    print(header)
    for c in report.checks:
        status = "pass" if c.passed else f"FAIL ({len(c.failures)} failures)"
        print(
            f"  {c.name:32s} trials={c.trials:<5d} tol={c.tolerance:<8g} "
            f"max_residual={c.max_residual!r} {status}"
        )
    print(f"overall: {'PASS' if report.passed else 'FAIL'}")


def _run_suites(args, suites: list[str]) -> int:
    ok = True
    for i, suite in enumerate(suites):
        if suite == "mobius":
            trials = args.trials if args.trials is not None else 500
            report = run_mobius_suite(args.seed, trials, tol=args.tol)
        else:
            trials = args.trials if args.trials is not None else 1000
            report = run_minkowski_suite(args.seed, trials, dim=args.dim, tol=args.tol)
        if i:
            print()
        _render_report(report, args.format)
        ok = ok and report.passed
    return 0 if ok else VERIFY_FAIL_EXIT


def cmd_mobius_verify(args) -> int:
    return _run_suites(args, ["mobius"])


def cmd_mink_verify(args) -> int:
    return _run_suites(args, ["minkowski"])


def cmd_verify(args) -> int:
    suites = ["mobius", "minkowski"] if args.suite == "all" else [args.suite]
    return _run_suites(args, suites)


# ---------------------------------------------------------------------------
# parser


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_verify_flags(sub: argparse.ArgumentParser, with_dim: bool) -> None:
    sub.add_argument("--trials", type=_positive_int, default=None, help="trials per randomized check")
    sub.add_argument("--seed", type=int, default=None, help="master seed (default: JETRED_SEED or 0)")
    sub.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    if with_dim:
        sub.add_argument("--dim", type=int, default=4, help="space dimension n >= 2")


def build_parser() -> Parser:
    parser = Parser(prog="jetred", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"jetred {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("mobius-symbolic", parents=[], help="print w3..wK exactly")
    p.add_argument("--order", type=int, required=True, help="jet order K >= 3")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_mobius_symbolic)

    p = subs.add_parser("mobius-project", help="numeric invariants of a jet u1,u2,...")
    p.add_argument("--jet", required=True, help="comma-separated derivative values")
    p.set_defaults(func=cmd_mobius_project)

    p = subs.add_parser("mobius-verify", help="verification suite, analytic case")
    _add_verify_flags(p, with_dim=False)
    p.set_defaults(func=cmd_mobius_verify)

    p = subs.add_parser("mink-invariants", help="invariant report for a jet file")
    p.add_argument("--jet", required=True, help="path to a JSON jet file")
    p.add_argument("--apply", default=None, help="pull back through a conformal word first")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_mink_invariants)

    p = subs.add_parser("mink-canonicalize", help="normal form of a jet file")
    p.add_argument("--jet", required=True, help="path to a JSON jet file")
    p.add_argument("--apply", default=None, help="pull back through a conformal word first")
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_mink_canonicalize)

    p = subs.add_parser("mink-verify", help="verification suite, pseudo-Euclidean case")
    _add_verify_flags(p, with_dim=True)
    p.set_defaults(func=cmd_mink_verify)

    p = subs.add_parser("verify", help="run one or both verification suites")
    p.add_argument("--suite", choices=("mobius", "minkowski", "all"), required=True)
    _add_verify_flags(p, with_dim=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = default_seed()
        if getattr(args, "dim", None) is not None and args.dim < 2:
            parser.error("--dim must be >= 2")
        return args.func(args)
    except DomainError as exc:
        print(f"jetred: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except (JetFileError, ValueError) as exc:
        print(f"jetred: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
