"""Command-line front end.

Exit codes: 0 property holds (or plain success), 1 refuted / does not tile,
2 bad input, 3 computation budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import constructions, domino, oracle, tile, tilefile
from .tensor import DEFAULT_EPS, norm_sq
from .transfer import BudgetExceeded
from .verdict import HoldsUpTo
from .walk import WidthTooSmall, walk_distribution

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


def _fmt(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _load(path: str, arity: int):
    try:
        t = tilefile.load(path)
    except OSError as exc:
        raise InputError(str(exc)) from exc
    except tilefile.TileFileError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if t.arity != arity:
        raise InputError(f"{path}: expected arity {arity}, got {t.arity}")
    return t


def _emit_verdict(v, out) -> int:
    out.write(json.dumps(v.to_json()) + "\n")
    return EXIT_OK if isinstance(v, HoldsUpTo) else EXIT_NO


def cmd_classify(args, out) -> int:
    try:
        t = tilefile.load(args.file)
    except (OSError, tilefile.TileFileError) as exc:
        raise InputError(str(exc)) from exc
    if t.arity not in (2, 4):
        raise InputError(f"expected a domino (arity 2) or a tile (arity 4), got arity {t.arity}")
    mod = domino if t.arity == 2 else tile
    kind = mod.classify(t, args.eps)
    supp = mod.support(t, args.eps)
    total = complex(t.coeffs.sum())
    out.write(f"{kind.value}, support {len(supp)}, norm² = {_fmt(norm_sq(t))}, sum = {_fmt(total)}\n")
    return EXIT_OK


def cmd_line_check(args, out) -> int:
    t = domino.as_domino(_load(args.file, 2))
    traces = domino.trace_sequence(t)
    tiles = domino.tiles_line(t, args.eps)
    if tiles:
        zeros = [k for k, z in enumerate(domino.vanishing_traces(t, args.eps), 1) if z]
        note = "; " + ", ".join(f"tr(T^{k})=0" for k in zeros) + " noted" if zeros else ""
        out.write(f"tiles the line{note}\n")
    else:
        out.write(f"does NOT tile the line (nilpotent, index {domino.nilpotency_index(t, args.eps)})\n")
    for k, tr in enumerate(traces, 1):
        out.write(f"tr(T^{k}) = {_fmt(tr)}\n")
    return EXIT_OK if tiles else EXIT_NO


def cmd_plane_check(args, out) -> int:
    t = _load(args.file, 4)
    return _emit_verdict(tile.tiles_plane_up_to(t, args.max, args.eps), out)


def cmd_trace(args, out) -> int:
    t = _load(args.file, 4)
    m, n = args.rect
    if m < 1 or n < 1:
        raise InputError("rectangle sides must be >= 1")
    tr = tile.rect_trace(t, m, n)
    doc = {"m": m, "n": n, "trace": {"re": tr.real, "im": tr.imag}}
    if args.oracle:
        if tile.classify(t, args.eps) is not domino.Kind.POSSIBILISTIC:
            raise InputError("--oracle needs a possibilistic tile")
        ts = tile.support(t, args.eps)
        doc["oracle"] = oracle.count_tilings(ts, tile.rectangle(m, n), oracle.BoundarySpec(wrap_x=True, wrap_y=True))
    out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_aperiodic(args, out) -> int:
    t = _load(args.file, 4)
    if args.strong:
        if len(args.bound) != 2:
            raise InputError("--strong needs --bound U N")
        v = tile.strong_aperiodic_up_to(t, args.bound[0], args.bound[1], args.eps, workers=args.threads)
    else:
        if len(args.bound) != 1:
            raise InputError("--weak needs --bound N")
        v = tile.weak_aperiodic_up_to(t, args.bound[0], args.eps, workers=args.threads)
    return _emit_verdict(v, out)


def _coin(spec: list[str]) -> constructions.CoinOperator:
    name = spec[0]
    if name == "hadamard" and len(spec) == 1:
        return constructions.CoinOperator.hadamard()
    if name == "identity" and len(spec) == 1:
        return constructions.CoinOperator.identity()
    if name == "classical" and len(spec) == 1:
        return constructions.CoinOperator.classical()
    if name == "custom" and len(spec) == 5:
        try:
            a, b, c, d = (complex(s.replace("i", "j")) for s in spec[1:])
        except ValueError as exc:
            raise InputError(f"bad coin entry: {exc}") from exc
        return constructions.CoinOperator(a, b, c, d)
    raise InputError("--coin takes hadamard | identity | classical | custom a b c d")


def cmd_walk(args, out) -> int:
    coin = _coin(args.coin)
    try:
        dist = walk_distribution(coin, args.steps, args.width)
    except WidthTooSmall as exc:
        raise InputError(str(exc)) from exc
    ref = oracle.walk_reference(coin, args.steps, args.width) if args.oracle else None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["position", "p_left", "p_right", "p_total"]
    if ref is not None:
        header += ["ref_left", "ref_right", "ref_total"]
    w.writerow(header)
    dev = 0.0
    for x, pl, pr in zip(dist.positions, dist.p_left, dist.p_right):
        row = [int(x), repr(float(pl)), repr(float(pr)), repr(float(pl + pr))]
        if ref is not None:
            rl, rr = ref[(int(x), "L")], ref[(int(x), "R")]
            dev = max(dev, abs(rl - pl), abs(rr - pr))
            row += [repr(float(rl)), repr(float(rr)), repr(float(rl + rr))]
        w.writerow(row)
    if args.out in (None, "-"):
        out.write(buf.getvalue())
    else:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    if ref is not None:
        print(f"max absolute deviation from oracle: {dev:.3e}", file=sys.stderr)
    return EXIT_OK


_MAKERS = {
    "dimer": constructions.dimer,
    "weighted-dimer": constructions.weighted_dimer,
    "nilpotent": constructions.nilpotent_tile,
    "fixture": lambda: constructions.from_classical(constructions.fixture_aperiodic()),
    "quantum-aperiodic": lambda: constructions.quantum_aperiodic(
        constructions.from_classical(constructions.fixture_aperiodic())),
    "walk-hadamard": lambda: constructions.walk_tile(constructions.CoinOperator.hadamard()),
    "line-classic": lambda: domino.Domino([[1, 1], [1, 0]]),
    "line-quantum": lambda: domino.Domino(constructions.DEFAULT_N),
    "line-diag": lambda: domino.Domino(np.diag([1, 1j]) / np.sqrt(2)),
}


def cmd_make(args, out) -> int:
    text = tilefile.dumps(_MAKERS[args.name]())
    if args.out in (None, "-"):
        out.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwang", description="Tensorial Wang dominoes and tiles.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=DEFAULT_EPS, help="zero tolerance (default 1e-9)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="workers for bounded searches (default: available CPUs)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="kind, support size, norm² and sum")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("line-check", parents=[common], help="does a domino tile the line")
    s.add_argument("file")
    s.set_defaults(func=cmd_line_check)

    s = sub.add_parser("plane-check", parents=[common], help="bounded plane-tiling check")
    s.add_argument("file")
    s.add_argument("--max", type=int, required=True, metavar="N")
    s.set_defaults(func=cmd_plane_check)

    s = sub.add_parser("trace", parents=[common], help="toroidal trace of a rectangle")
    s.add_argument("file")
    s.add_argument("--rect", type=int, nargs=2, required=True, metavar=("M", "N"))
    s.add_argument("--oracle", action="store_true", help="also count toroidal tilings by brute force")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("aperiodic", parents=[common], help="bounded weak/strong trace-aperiodicity")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--weak", action="store_true")
    g.add_argument("--strong", action="store_true")
    s.add_argument("--bound", type=int, nargs="+", required=True, help="N for --weak, U N for --strong")
    s.set_defaults(func=cmd_aperiodic)

    s = sub.add_parser("walk", parents=[common], help="quantum walk distribution from the walk tile")
    s.add_argument("--coin", nargs="+", default=["hadamard"],
                   help="hadamard | identity | classical | custom a b c d")
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--width", type=int, required=True)
    s.add_argument("--out", default="-", help="CSV path (default stdout)")
    s.add_argument("--oracle", action="store_true", help="add the reference distribution")
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("make", help="write a built-in tile or domino as JSON")
    s.add_argument("name", choices=sorted(_MAKERS))
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_make)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
