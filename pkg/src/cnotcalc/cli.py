"""Command-line interface.

Exit codes: 0 for success or a true answer, 1 for a false answer or a failed
check, 2 for input errors.  ``--json`` prints a stable JSON mirror of the
report instead of plain text.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .circuit import (
    CircuitError,
    clause_circuit,
    fanin,
    fanout,
    hat,
    omega,
    omega_nm,
    plus_map,
)
from .gf2 import BitVec
from .normalize import NotIdempotentError, gaussian_eliminate, idempotent_to_clausal, clausal_to_circuit
from .relation import ArityError
from .rewrite import Derivation, replay, verify_all
from .fuzzing import fuzz
from .synth import NotPartialIsoError, synth
from . import lawsuites

OK, FAIL, USAGE = 0, 1, 2


class CliInputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliInputError(f"cannot read {path}: {e}") from None


def _load_circuit(path: str):
    return formats.parse_circuit(_read(path))


def _parse_bits(text: str) -> BitVec:
    if text and any(ch not in "01" for ch in text):
        raise CliInputError(f"input must be a string of 0/1 bits, got {text!r}")
    return BitVec(int(ch) for ch in text)


def _emit(report: dict, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True))
    elif text:
        print(text)


def _cmd_eval(args) -> int:
    _, c = _load_circuit(args.file)
    x = _parse_bits(args.input)
    if len(x) != c.n_in:
        raise CliInputError(f"circuit takes {c.n_in} bits, got {len(x)}")
    y = c.eval_state(x)
    out = "undefined" if y is None else "".join(str(b) for b in y)
    _emit(
        {"command": "eval", "defined": y is not None, "output": None if y is None else out},
        args.json,
        out,
    )
    return OK


def _cmd_semantics(args) -> int:
    _, c = _load_circuit(args.file)
    text = formats.format_relation(c.semantics()).rstrip("\n")
    _emit({"command": "semantics", "relation": text.splitlines()}, args.json, text)
    return OK


def _cmd_equal(args) -> int:
    _, c = _load_circuit(args.file1)
    _, d = _load_circuit(args.file2)
    if (c.n_in, c.n_out) != (d.n_in, d.n_out):
        raise CliInputError(
            f"arity mismatch: {c.n_in}->{c.n_out} vs {d.n_in}->{d.n_out}"
        )
    same = c.semantics() == d.semantics()
    _emit({"command": "equal", "equal": same}, args.json, "equal" if same else "unequal")
    return OK if same else FAIL


def _cmd_normalize(args) -> int:
    _, c = _load_circuit(args.file)
    try:
        cf = gaussian_eliminate(idempotent_to_clausal(c.semantics()))
    except NotIdempotentError as e:
        raise CliInputError(f"not a restriction idempotent: {e}") from None
    text = formats.format_circuit(clausal_to_circuit(cf), name="clausal").rstrip("\n")
    _emit({"command": "normalize", "circuit": text.splitlines()}, args.json, text)
    return OK


def _cmd_synth(args) -> int:
    rel = formats.parse_synth_input(_read(args.file))
    try:
        c = synth(rel)
    except NotPartialIsoError as e:
        raise CliInputError(str(e)) from None
    text = formats.format_circuit(c, name="synth").rstrip("\n")
    _emit({"command": "synth", "circuit": text.splitlines()}, args.json, text)
    return OK


def _cmd_verify(args) -> int:
    lines = []
    ok = True
    for report in verify_all():
        ok &= report.ok
        lines.append(f"{'PASS' if report.ok else 'FAIL'}  rule {report.name}")
    for name, passed in lawsuites.run_all():
        ok &= passed
        lines.append(f"{'PASS' if passed else 'FAIL'}  law {name}")
    text = "\n".join(lines + ["all checks passed" if ok else "FAILURES detected"])
    _emit({"command": "verify", "ok": ok, "report": lines}, args.json, text)
    return OK if ok else FAIL


def _cmd_replay(args) -> int:
    _, c = _load_circuit(args.file)
    steps = formats.parse_derivation(_read(args.derivation))
    try:
        intermediates = replay(Derivation(c, tuple(steps)))
    except ValueError as e:
        raise CliInputError(str(e)) from None
    blocks = [
        formats.format_circuit(ci, name=f"step{i}").rstrip("\n")
        for i, ci in enumerate(intermediates)
    ]
    text = "\n".join(blocks)
    _emit({"command": "replay", "steps": len(steps), "circuits": blocks}, args.json, text)
    return OK


def _cmd_fuzz(args) -> int:
    ran, failure = fuzz(args.wires, args.depth, args.seed, args.trials)
    if failure is None:
        text = f"{ran} trials passed (wires<={args.wires} depth={args.depth} seed={args.seed})"
        _emit(
            {"command": "fuzz", "ok": True, "trials": ran, "seed": args.seed},
            args.json,
            text,
        )
        return OK
    index, c, message = failure
    body = formats.format_circuit(c, name=f"counterexample{index}").rstrip("\n")
    text = f"trial {index}: {message}\n{body}"
    _emit(
        {
            "command": "fuzz",
            "ok": False,
            "trial": index,
            "message": message,
            "circuit": body.splitlines(),
        },
        args.json,
        text,
    )
    return FAIL


def _build_construct(name: str, params: list[str]):
    def arity(k):
        if len(params) != k:
            raise CliInputError(f"construct {name} takes {k} argument(s)")

    def num(i):
        try:
            return int(params[i], 10)
        except ValueError:
            raise CliInputError(f"expected an integer, got {params[i]!r}") from None

    if name == "fanout":
        arity(1)
        return fanout(num(0))
    if name == "fanin":
        arity(1)
        return fanin(num(0))
    if name == "omega":
        if not params:
            return omega()
        arity(2)
        return omega_nm(num(0), num(1))
    if name == "plus":
        arity(1)
        return plus_map(num(0))
    if name == "hat":
        arity(1)
        return hat(_parse_bits(params[0]))
    if name == "clause":
        if len(params) < 2:
            raise CliInputError("construct clause takes: <n> <rhs> [wire ...]")
        n, rhs = num(0), num(1)
        wires = [int(p, 10) for p in params[2:]]
        return clause_circuit(wires, rhs, n)
    raise CliInputError(f"unknown construction {name!r}")


def _cmd_construct(args) -> int:
    c = _build_construct(args.name, args.params)
    text = formats.format_circuit(c, name=args.name).rstrip("\n")
    _emit({"command": "construct", "circuit": text.splitlines()}, args.json, text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cnotcalc",
        description="circuit calculus for cnot gates with computational ancillae",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", _cmd_eval, "run a circuit on a basis state")
    sp.add_argument("file")
    sp.add_argument("--input", required=True, metavar="BITS", help="wire 0 leftmost")

    sp = add("semantics", _cmd_semantics, "print the canonical constraint system")
    sp.add_argument("file")

    sp = add("equal", _cmd_equal, "decide semantic equality of two circuits")
    sp.add_argument("file1")
    sp.add_argument("file2")

    sp = add("normalize", _cmd_normalize, "canonical clausal circuit of an idempotent")
    sp.add_argument("file")

    sp = add("synth", _cmd_synth, "synthesize a circuit from a relation file")
    sp.add_argument("file")

    add("verify", _cmd_verify, "check the axiom corpus and the law suites")

    sp = add("replay", _cmd_replay, "replay a derivation file against a circuit")
    sp.add_argument("file")
    sp.add_argument("derivation")

    sp = add("fuzz", _cmd_fuzz, "random-circuit oracle and round-trip checks")
    sp.add_argument("--wires", type=int, default=5)
    sp.add_argument("--depth", type=int, default=30)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)

    sp = add("construct", _cmd_construct, "print a built-in circuit")
    sp.add_argument("name", choices=["fanout", "fanin", "omega", "plus", "hat", "clause"])
    sp.add_argument("params", nargs="*")

    return p


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        return args.fn(args)
    except (CliInputError, formats.FormatError, ArityError, CircuitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
