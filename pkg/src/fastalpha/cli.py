"""Command-line front end: ``fastalpha {verify,census,premultiply,over,bench,expand}``.

Exit codes: 0 success, 1 verification or contract failure, 2 usage, format
or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import pixelio, scalar_core, series_math, swar_blend
from .rng import random_pixels

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


@dataclass
class CliReport:
    command: str
    outcome: str = "info"
    counters: dict = field(default_factory=dict)
    throughput: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


# -- verify -------------------------------------------------------------------

_GRID_A, _GRID_C = (g.ravel() for g in np.meshgrid(
    np.arange(256, dtype=np.uint32), np.arange(256, dtype=np.uint32), indexing="ij"))


def _fill_bytes(word):
    return tuple((word >> (8 * k)) & 0xFF for k in range(4))


# byte values held by the lanes not under test
SIBLING_FILLS = {
    "0x00": _fill_bytes(0x00000000),
    "0xFF": _fill_bytes(0xFFFFFFFF),
    "random": _fill_bytes(int(random_pixels(1, seed=255)[0])),
}


def _count_scalar(candidate, oracle):
    got = candidate(_GRID_A, _GRID_C)
    want = oracle(_GRID_A, _GRID_C)
    return _GRID_A.size, int(np.count_nonzero(got != want))


def lane_sweep(op, lane, fill, shortcut=False):
    """Check one lane position across all 65,536 (alpha, value) pairs.

    ``op`` is ``"premultiply"`` or ``"pixel_mul"``; ``fill`` gives the four
    bytes used for the lanes not under test.  All four output lanes are
    compared against scalar :func:`~fastalpha.scalar_core.fast_mult_16`, so
    any carry between lanes shows up.  For ``premultiply`` the alpha lane is
    the multiplier itself; ``lane=3`` then sweeps the value through all three
    color lanes at once and checks the alpha comes back unchanged.
    ``shortcut`` runs the premultiply with its alpha 0/255 early exits on.

    Returns ``(cases, mismatches)``.
    """
    a, v = _GRID_A, _GRID_C
    lanes = [np.full(a.size, fill[k], dtype=np.uint32) for k in range(4)]
    if op == "premultiply":
        for k in (range(3) if lane == 3 else (lane,)):
            lanes[k] = v
        lanes[3] = a
        out = swar_blend.premultiply_pixel(swar_blend.pack_rgba(*lanes), shortcut=shortcut)
        want = [scalar_core.fast_mult_16(a, lanes[k]) for k in range(3)] + [a]
    elif op == "pixel_mul":
        lanes[lane] = v
        out = swar_blend.pixel_mul(swar_blend.pack_rgba(*lanes), a)
        want = [scalar_core.fast_mult_16(a, lanes[k]) for k in range(4)]
    else:
        raise ValueError(f"unknown op {op!r}")
    bad = np.zeros(a.size, dtype=bool)
    for got, w in zip(swar_blend.unpack_rgba(out), want):
        bad |= got != w
    return a.size, int(np.count_nonzero(bad))


def structured_pixels():
    """All pixels with alpha ``a`` and every color lane equal to ``c``."""
    c = _GRID_C
    return swar_blend.pack_rgba(c, c, c, _GRID_A)


def verify_suites(random_count=1_000_000, seed=0):
    """Yield ``(name, cases, mismatches)`` for every verification suite."""
    sc = scalar_core
    yield ("fast_mult_24 vs float oracle", *_count_scalar(sc.fast_mult_24, sc.exact_mult_float))
    yield ("fast_mult_16 vs float oracle", *_count_scalar(sc.fast_mult_16, sc.exact_mult_float))
    yield ("int oracle vs float oracle", *_count_scalar(sc.exact_mult_int, sc.exact_mult_float))
    for op in ("premultiply", "pixel_mul"):
        cases = bad = 0
        for lane in range(4):
            for fill in SIBLING_FILLS.values():
                n, m = lane_sweep(op, lane, fill)
                cases += n
                bad += m
        yield (f"swar {op} lanes", cases, bad)
    px = np.concatenate([structured_pixels(), random_pixels(random_count, seed)])
    got = swar_blend.premultiply_pixel_w64(px)
    want = swar_blend.premultiply_pixel(px)
    yield ("w64 vs two-lane premultiply", px.size, int(np.count_nonzero(got != want)))
    oracle = swar_blend.premultiply_pixel_oracle(px)
    yield ("two-lane vs float premultiply", px.size, int(np.count_nonzero(want != oracle)))


def cmd_verify(args) -> int:
    report = CliReport("verify")
    failed = False
    for name, cases, bad in verify_suites(args.random, args.seed):
        print(f"{name}: cases = {cases} mismatches = {bad}")
        report.counters[name] = {"cases": cases, "mismatches": bad}
        failed |= bad != 0
    report.outcome = "fail" if failed else "pass"
    print(f"verify: {report.outcome.upper()}")
    return EXIT_FAIL if failed else EXIT_OK


# -- census -------------------------------------------------------------------

CENSUS_EXPECTED = 24


def cmd_census(args) -> int:
    records = scalar_core.mismatch_census(scalar_core.approx_mult_8000, scalar_core.exact_mult_int)
    ok = len(records) == CENSUS_EXPECTED and all(r.want - r.got == 1 for r in records)
    if args.json:
        print(json.dumps({
            "records": [r._asdict() for r in records],
            "total": len(records),
            "outcome": "pass" if ok else "fail",
        }))
    else:
        for r in records:
            print(f"alpha={r.alpha} c={r.channel} got={r.got} want={r.want}")
        print(f"total={len(records)}")
    return EXIT_OK if ok else EXIT_FAIL


# -- image commands -----------------------------------------------------------

def cmd_premultiply(args) -> int:
    buf, fmt = pixelio.load(args.input)
    if args.oracle:
        buf.pixels[:] = swar_blend.premultiply_pixel_oracle(buf.pixels)
    else:
        swar_blend.premultiply_buffer(buf, w64=args.w64)
    pixelio.save(args.output, buf, fmt)
    return EXIT_OK


def cmd_over(args) -> int:
    src, _ = pixelio.load(args.src)
    dst, fmt = pixelio.load(args.dst)
    try:
        swar_blend.over_buffer(src, dst, checked=True)
    except (pixelio.DimensionMismatchError, swar_blend.NotPremultipliedError) as exc:
        print(f"over: {exc}", file=sys.stderr)
        return EXIT_FAIL
    pixelio.save(args.out, dst, fmt)
    return EXIT_OK


# -- bench --------------------------------------------------------------------

def _scalar_premultiply(px):
    r, g, b, a = swar_blend.unpack_rgba(px)
    f = scalar_core.fast_mult_16
    return swar_blend.pack_rgba(f(a, r), f(a, g), f(a, b), a)


BENCH_PATHS = {
    "swar32": swar_blend.premultiply_pixel,
    "swar64": swar_blend.premultiply_pixel_w64,
    "scalar": _scalar_premultiply,
    "float": swar_blend.premultiply_pixel_oracle,
}


def run_bench(n, reps, seed=0):
    """Time every premultiply path; returns ``(outputs, pixels_per_second)``."""
    px = random_pixels(n, seed)
    outputs, rates = {}, {}
    for name, fn in BENCH_PATHS.items():
        best = float("inf")
        for _ in range(reps):
            t0 = time.perf_counter()
            out = fn(px)
            best = min(best, time.perf_counter() - t0)
        outputs[name] = out
        rates[name] = n / best if best > 0 else float("inf")
    return outputs, rates


def cmd_bench(args) -> int:
    if args.pixels < 1 or args.reps < 1:
        print("bench: --pixels and --reps must be >= 1", file=sys.stderr)
        return EXIT_ERROR
    outputs, rates = run_bench(args.pixels, args.reps, args.seed)
    ref = outputs["swar32"]
    same = all(np.array_equal(ref, out) for out in outputs.values())
    for name, rate in rates.items():
        print(f"{name:>7}: {rate:,.0f} pixels/s")
    print(f"outputs identical: {'yes' if same else 'NO'}")
    return EXIT_OK if same else EXIT_FAIL


# -- expand -------------------------------------------------------------------

def cmd_expand(args) -> int:
    try:
        value = int(args.value, 0)
    except ValueError:
        print(f"expand: {args.value!r} is not an integer", file=sys.stderr)
        return EXIT_ERROR
    if not 0 <= value <= 255 or args.terms < 1:
        print("expand: value must be in 0..255 and --terms >= 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        s = series_math.series_div255(value, args.terms)
    except OverflowError as exc:
        print(f"expand: {exc}", file=sys.stderr)
        return EXIT_ERROR
    digits = series_math.repeating_digits(value, args.terms)
    print("0." + "".join(f"{d:02x}" for d in digits))
    print(f"tail = {s.tail_bound_num}/{s.tail_bound_den}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fastalpha", description="Division-free alpha blending tools.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", help="run the exhaustive equivalence suites")
    v.add_argument("--random", type=int, default=1_000_000,
                   help="extra random pixels for the 64-bit check")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="list the 0x8000-constant mismatches")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_census)

    pm = sub.add_parser("premultiply", help="premultiply a raw or PAM image")
    pm.add_argument("input")
    pm.add_argument("output")
    g = pm.add_mutually_exclusive_group()
    g.add_argument("--w64", action="store_true", help="four lanes per 64-bit word")
    g.add_argument("--oracle", action="store_true", help="floating-point reference")
    pm.set_defaults(func=cmd_premultiply)

    o = sub.add_parser("over", help="composite premultiplied SRC over DST")
    o.add_argument("src")
    o.add_argument("dst")
    o.add_argument("out")
    o.set_defaults(func=cmd_over)

    b = sub.add_parser("bench", help="time the premultiply paths")
    b.add_argument("--pixels", type=int, default=1_000_000)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("expand", help="print the base-256 expansion of VALUE/255")
    e.add_argument("value", help="0..255, decimal or 0x-prefixed hex")
    e.add_argument("--terms", type=int, default=4)
    e.set_defaults(func=cmd_expand)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (OSError, pixelio.PixelFormatError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # internal error
        print(f"{args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
