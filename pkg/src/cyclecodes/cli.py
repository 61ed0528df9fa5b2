"""Command-line entry point ``cyclecodes``.

Exit status: 0 on success, 1 when a computation or check fails, 2 on a usage
error (bad flags or parameters outside a function's domain).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import bounds, codes, fileio
from .checks import certificate_battery, certificate_checks, code_checks
from .errors import BudgetExceededError, CodeFormatError, DomainError
from .krawtchouk import SchemeParams
from .lp import certificate_check, lp_solve
from .search import alpha_search

FIGURES = {"pentagon": 5, "ninegon": 9}
CONSTRUCTIONS = ("even", "pentagon-base", "pentagon", "2r1", "ninecycle")


class UsageError(Exception):
    pass


def _distance(text):
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("distance must be >= 1")
    return v


def _fmt_d(d):
    return "inf" if d == math.inf else str(d)


def _scale(units):
    return 1.0 / math.log(2.0) if units == "bits" else 1.0


def _csv(curves, units) -> str:
    s = _scale(units)
    rows = ["delta,rate,curve"]
    for c in curves:
        for delta, rate in zip(c.deltas, c.rates):
            rows.append(f"{delta:.12g},{rate * s:.12g},{c.label}")
    return "\n".join(rows) + "\n"


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode())


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _grid(args):
    return bounds.delta_grid(args.steps, args.delta_min, args.delta_max)


def cmd_bound(args):
    _need(args, "q", "curve")
    curve = bounds.sample_curve(args.curve, args.q, _grid(args))
    _emit(_csv([curve], args.units), args.out)
    return 0


def cmd_figure(args):
    q = FIGURES[args.name]
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    grid = _grid(args)
    for cid in bounds.applicable_curves(q):
        curve = bounds.sample_curve(cid, q, grid)
        path = out / f"{cid}.csv"
        path.write_bytes(_csv([curve], args.units).encode())
        print(f"wrote {path}")
    return 0


def cmd_search(args):
    _need(args, "q", "n", "d")
    try:
        m, witness = alpha_search(args.q, args.n, args.d, budget=args.budget)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"M >= {exc.lower_bound}")
        return 1
    print(f"M = {m}")
    if args.out:
        fileio.write_code(args.out, witness)
    else:
        sys.stdout.write(fileio.format_code(witness))
    return 0


def cmd_construct(args):
    kind = args.kind
    if kind == "even":
        _need(args, "q", "n", "d")
        binary = codes.Code(2, args.n, tuple(codes.greedy_hamming_code(2, args.n, _finite(args.d))))
        code = codes.construct_even(args.q, binary)
    elif kind == "pentagon-base":
        _need(args, "k")
        code = codes.pentagon_base_code(args.k)
    elif kind == "pentagon":
        _need(args, "k", "d")
        code = codes.construct_pentagon(args.k, _finite(args.d))
    elif kind == "2r1":
        _need(args, "r", "k", "d")
        code = codes.construct_2r1(args.r, args.k, _finite(args.d))
    else:
        _need(args, "k", "d")
        code = codes.construct_ninecycle(args.k, _finite(args.d))
    text = fileio.format_code(code)
    _emit(text, args.out)
    if args.out:
        print(f"{len(code)} words, q={code.q}, n={code.n}")
    return 0


def _finite(d):
    if d == math.inf:
        raise UsageError("this construction needs a finite --d")
    return d


def cmd_verify(args):
    kind = fileio.sniff(args.file)
    failed = False
    if kind == "code":
        code = fileio.read_code(args.file)
        checks, m = code_checks(code, args.d)
        print(f"words = {len(code)}")
        print(f"dmin = {_fmt_d(m)}")
    else:
        cert = fileio.read_certificate(args.file)
        checks, rep = certificate_checks(cert)
        print(f"certified value = {rep.certified_value!r}")
    for c in checks:
        print(c.line())
        failed |= not c.passed
    return 1 if failed else 0


def cmd_lp(args):
    _need(args, "q", "n", "d")
    p = bounds.cycle_params(args.q)
    if p.parity != "odd":
        raise UsageError("lp needs an odd --q")
    scheme = SchemeParams(args.n, p.q_prime)
    cert, res = lp_solve(scheme, args.d, theta_l=p.theta_l)
    rep = certificate_check(cert)
    s = _scale(args.units)
    print(f"value = {res.value!r}")
    print(f"bound = {math.exp(res.log_bound)!r}")
    print(f"rate = {res.rate * s!r} {args.units}")
    print(f"CHECK certificate {'PASS' if rep.feasible else 'FAIL'} "
          f"{max(0.0, rep.max_constraint, -rep.min_coeff):.3e}")
    if args.out:
        fileio.write_certificate(args.out, cert)
    return 0 if rep.feasible else 1


def cmd_cert(args):
    _need(args, "q", "n")
    if bounds.cycle_params(args.q).parity != "odd":
        raise UsageError("cert needs an odd --q")
    d = args.d if args.d is not None else args.n
    checks = certificate_battery(args.q, args.n, d, tol=args.tol)
    for c in checks:
        print(c.line())
    return 0 if all(c.passed for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=_distance)
    common.add_argument("--k", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--delta-min", type=float, default=0.0)
    common.add_argument("--delta-max", type=float, default=1.0)
    common.add_argument("--steps", type=int, default=bounds.DEFAULT_STEPS)
    common.add_argument("--curve", choices=bounds.CURVE_IDS)
    common.add_argument("--units", choices=("nats", "bits"), default="nats")
    common.add_argument("--out")
    common.add_argument("--budget", type=int, default=1000)
    common.add_argument("--tol", type=float)

    parser = argparse.ArgumentParser(prog="cyclecodes", description="Rate bounds and codes for cycle graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("bound", parents=[common], help="sample one bound curve as CSV")
    fig = sub.add_parser("figure", parents=[common], help="write the CSV family for a cycle")
    fig.add_argument("name", choices=sorted(FIGURES))
    sub.add_parser("search", parents=[common], help="exact maximum code by branch and bound")
    con = sub.add_parser("construct", parents=[common], help="write a constructed code")
    con.add_argument("kind", choices=CONSTRUCTIONS)
    ver = sub.add_parser("verify", parents=[common], help="check a code or LP certificate file")
    ver.add_argument("file")
    sub.add_parser("lp", parents=[common], help="finite-length LP bound")
    sub.add_parser("cert", parents=[common], help="run the Fourier and theta checks")
    return parser


HANDLERS = {
    "bound": cmd_bound, "figure": cmd_figure, "search": cmd_search,
    "construct": cmd_construct, "verify": cmd_verify, "lp": cmd_lp, "cert": cmd_cert,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"cyclecodes {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (CodeFormatError, OSError) as exc:
        print(f"cyclecodes {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # computation failures
        print(f"cyclecodes {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
