"""Command-line front end.

Subcommands: ``walk``, ``negativity``, ``sweep``, ``layout``, ``oracle-check``.
Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Sequence

from .entanglement import negativity_curve, parameter_sweep, parse_pair, state_negativity
from .layout import REALIZATIONS, emit_layout
from .operators import SU2Params, WalkKind, WalkVariant, evolve, parse_plate
from .recurrence import compare_with_operator, oracle_evolve
from .state import (
    InitialStateParams,
    distribution_to_csv,
    format_float,
    make_initial_state,
    probability_distribution,
)

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
ORACLE_TOL = 1e-12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


_PI_EXPR = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\*?pi(?:/((?:\d+(?:\.\d*)?|\.\d+)))?$")


def _angle(text: str) -> float:
    """Float, or a multiple of ``pi`` such as ``pi/4``, ``-pi/2`` or ``3*pi/2``."""
    try:
        value = float(text)
    except ValueError:
        match = _PI_EXPR.match(text.replace(" ", ""))
        if not match:
            raise argparse.ArgumentTypeError(f"not an angle: {text!r}")
        factor, divisor = match.groups()
        coeff = {"": 1.0, "+": 1.0, "-": -1.0}.get(factor)
        value = (coeff if coeff is not None else float(factor)) * math.pi / float(divisor or 1)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite angle: {text!r}")
    return value


def _common(formats: Sequence[str], default: str) -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--seed", type=int, default=None, help="reserved; nothing is stochastic yet")
    p.add_argument("--deg", action="store_true", help="read every angle argument in degrees")
    return p


def _walk_args(p: argparse.ArgumentParser):
    p.add_argument("--variant", default="modified-pauli", choices=[k.value for k in WalkKind])
    p.add_argument("--plate", default="q", help="'q', 'hv', 'diagonal', 'elliptic', or JSON")
    p.add_argument("--alpha", type=_angle, default=math.pi / 4)
    p.add_argument("--beta", type=_angle, default=0.0)
    p.add_argument("--steps", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperwalk", description="Coinless 2D quantum walks on polarization, path and OAM.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    data = _common(["csv", "json"], "csv")

    p = sub.add_parser("walk", parents=[data], help="site probabilities after n steps")
    _walk_args(p)

    p = sub.add_parser("negativity", parents=[data], help="negativity between two DoF")
    _walk_args(p)
    p.add_argument("--pair", default="pol-oam", help="pol-oam, pol-path or path-oam")
    p.add_argument("--curve", action="store_true", help="one row per step 1..n")

    p = sub.add_parser("sweep", parents=[data], help="negativity against one plate angle")
    p.add_argument("--variant", default="modified-pauli", choices=[k.value for k in WalkKind])
    p.add_argument("--param", choices=["xi", "zeta", "theta"], required=True)
    p.add_argument("--from", dest="start", type=_angle, default=0.0)
    p.add_argument("--to", dest="stop", type=_angle, default=math.pi / 2)
    p.add_argument("--step", type=_angle, default=None, help="default: 1 degree")
    p.add_argument("--xi", type=_angle, default=0.0)
    p.add_argument("--zeta", type=_angle, default=-math.pi / 2)
    p.add_argument("--theta", type=_angle, default=math.pi / 4)
    p.add_argument("--alpha", type=_angle, default=math.pi / 4)
    p.add_argument("--beta", type=_angle, default=0.0)
    p.add_argument("--steps", type=int, default=25)
    p.add_argument("--pair", default="path-oam")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("layout", parents=[_common(["json", "dot"], "json")], help="optical component netlist")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--realization", choices=REALIZATIONS, default="jplate")

    p = sub.add_parser("oracle-check", parents=[data], help="operator evolution vs amplitude recurrence")
    p.add_argument("--xi", type=_angle, default=0.0)
    p.add_argument("--zeta", type=_angle, default=-math.pi / 2)
    p.add_argument("--theta", type=_angle, default=math.pi / 4)
    p.add_argument("--alpha", type=_angle, default=math.pi / 4)
    p.add_argument("--beta", type=_angle, default=0.0)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--mismatch", type=_angle, default=0.0, help="offset added to xi on the operator side (self-test)")
    return parser


_ANGLE_ARGS = ("alpha", "beta", "start", "stop", "step", "xi", "zeta", "theta", "mismatch")


def _to_radians(args):
    if not args.deg:
        return
    for name in _ANGLE_ARGS:
        value = getattr(args, name, None)
        if value is not None:
            setattr(args, name, math.radians(value))


def _check_steps(args, minimum=0):
    if args.steps < minimum:
        raise UsageError(f"--steps must be at least {minimum}, got {args.steps}")


def _variant(args) -> WalkVariant:
    try:
        plate = parse_plate(args.plate)
    except ValueError as exc:
        raise UsageError(f"malformed --plate: {exc}") from exc
    return WalkVariant(WalkKind(args.variant), plate)


def _pair(text):
    try:
        return parse_pair(text)
    except ValueError as exc:
        raise UsageError(f"invalid --pair: {exc}") from exc


def _init(args) -> InitialStateParams:
    if not (math.isfinite(args.alpha) and math.isfinite(args.beta)):
        raise UsageError("--alpha and --beta must be finite")
    return InitialStateParams(args.alpha, args.beta)


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for a, v in rows:
        w.writerow([a if isinstance(a, int) else format_float(a), format_float(v)])
    return buf.getvalue()


def cmd_walk(args) -> str:
    _check_steps(args)
    variant, init = _variant(args), _init(args)
    state = evolve(make_initial_state(init), variant, args.steps)
    if args.format == "json":
        return state.to_json() + "\n"
    return distribution_to_csv(probability_distribution(state))


def cmd_negativity(args) -> str:
    pair = _pair(args.pair)
    variant, init = _variant(args), _init(args)
    if args.curve:
        _check_steps(args, 1)
        rows = negativity_curve(variant, init, pair, args.steps)
        if args.format == "json":
            return json.dumps({"pair": list(pair), "curve": [[n, v] for n, v in rows]}) + "\n"
        return _rows_csv(["n", "negativity"], rows)
    _check_steps(args)
    value = state_negativity(evolve(make_initial_state(init), variant, args.steps), pair)
    if args.format == "json":
        return json.dumps({"pair": list(pair), "steps": args.steps, "negativity": value}) + "\n"
    return format_float(value) + "\n"


def cmd_sweep(args) -> str:
    _check_steps(args)
    pair = _pair(args.pair)
    step = args.step if args.step is not None else math.pi / 180
    if step <= 0 or args.stop < args.start:
        raise UsageError("sweep needs --step > 0 and --to >= --from")
    rows = parameter_sweep(
        args.param,
        args.start,
        args.stop,
        step,
        SU2Params(args.xi, args.zeta, args.theta),
        _init(args),
        args.steps,
        pair,
        WalkKind(args.variant),
        workers=args.workers,
    )
    if args.format == "json":
        return json.dumps({"param": args.param, "pair": list(pair), "sweep": [[a, v] for a, v in rows]}) + "\n"
    return _rows_csv(["angle_rad", "negativity"], rows)


def cmd_layout(args) -> str:
    _check_steps(args, 1)
    layout = emit_layout(args.steps, args.realization)
    return layout.to_dot() if args.format == "dot" else layout.to_json() + "\n"


def cmd_oracle_check(args):
    _check_steps(args)
    params = SU2Params(args.xi, args.zeta, args.theta)
    init = _init(args)
    grids = oracle_evolve(init, params, args.steps)
    op_params = SU2Params(args.xi + args.mismatch, args.zeta, args.theta)
    state = evolve(make_initial_state(init), WalkVariant(WalkKind.MODIFIED_PAULI, op_params), args.steps)
    dev = compare_with_operator(grids, state)
    ok = dev < ORACLE_TOL
    if args.format == "json":
        text = json.dumps({"steps": args.steps, "max_deviation": dev, "pass": ok}) + "\n"
    else:
        text = f"steps,max_deviation,pass\n{args.steps},{format_float(dev)},{str(ok).lower()}\n"
    return text, ok


_COMMANDS = {
    "walk": cmd_walk,
    "negativity": cmd_negativity,
    "sweep": cmd_sweep,
    "layout": cmd_layout,
    "oracle-check": cmd_oracle_check,
}


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _join_negative_angles(argv: Sequence[str]) -> list:
    """argparse takes ``-pi/2`` for a flag; glue it onto the option before it."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and tok.startswith("-") and _PI_EXPR.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_angles(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        _to_radians(args)
        result = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME

    ok = True
    if isinstance(result, tuple):
        result, ok = result
    try:
        _write(args.out, result)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK if ok else EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
