"""Command-line entry point: ``jwboson {hom,dip,scatter,permanent,qasm}``."""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .encoding import outcome_table
from .errors import JWBosonError
from .experiment import ExperimentSpec, result_to_json, run_experiment
from .hom import run_hom_ideal, sweep_dip
from .oracle import permanent
from .qasm import export_qasm

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class ParseFailure(Exception):
    """Malformed input file; message carries line and column."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_spec(path: str) -> ExperimentSpec:
    text = _read(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return ExperimentSpec.from_dict(data)


def _parse_entry(value) -> complex:
    if isinstance(value, list) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace("i", "j").replace(" ", ""))
    return complex(value)


def read_matrix(text: str, source: str = "<matrix>") -> np.ndarray:
    """Square matrix from JSON (nested lists) or whitespace-separated rows.

    Entries may be numbers, ``[re, im]`` pairs or strings like ``1+2j``.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            rows = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseFailure(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        rows = [line.split() for line in stripped.splitlines() if line.strip() and not line.startswith("#")]
    try:
        matrix = np.array([[_parse_entry(v) for v in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseFailure(f"{source}: bad matrix entry: {exc}") from None
    return matrix


def format_complex(z: complex) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return f"{z.real + 0.0:.12g}{z.imag + 0.0:+.12g}i"


def cmd_hom(args) -> int:
    _, outcomes = run_hom_ideal()
    table = outcome_table(outcomes)
    print("mode0 mode1  probability")
    for occ in [(2, 0), (1, 1), (0, 2)]:
        print(f"{occ[0]:>5} {occ[1]:>5}  {table.get(occ, 0.0):.12f}")
    return EXIT_OK


def cmd_dip(args) -> int:
    curve = sweep_dip(args.theta_min, args.theta_max, args.step, args.phi, args.gamma)
    text = curve.to_csv()
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_scatter(args) -> int:
    spec = _load_spec(args.spec)
    result = run_experiment(spec)
    payload = result_to_json(spec, result)
    qasm_path = args.qasm or spec.qasm_path
    if "qasm" in spec.outputs or args.qasm:
        payload["qasm"] = export_qasm(spec, qasm_path)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_permanent(args) -> int:
    matrix = read_matrix(_read(args.matrix), args.matrix)
    print(format_complex(permanent(matrix)))
    return EXIT_OK


def cmd_qasm(args) -> int:
    text = export_qasm(_load_spec(args.spec), None if args.out in (None, "-") else args.out)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jwboson", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="ideal two-photon HOM bunching table")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("dip", help="HOM dip coincidence curve as CSV")
    p.add_argument("--theta-min", type=float, default=-math.pi)
    p.add_argument("--theta-max", type=float, default=math.pi)
    p.add_argument("--step", type=float, default=math.pi / 100)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=cmd_dip)

    p = sub.add_parser("scatter", help="run a JSON experiment and compare with the permanent oracle")
    p.add_argument("spec")
    p.add_argument("--qasm", default=None, help="also write OpenQASM 2.0 to this path")
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("permanent", help="permanent of a matrix file (JSON or whitespace text)")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_permanent)

    p = sub.add_parser("qasm", help="export a JSON experiment as OpenQASM 2.0")
    p.add_argument("spec")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_qasm)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (JWBosonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
