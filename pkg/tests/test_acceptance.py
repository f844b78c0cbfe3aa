"""Exit criteria: one test per criterion, summarised at the end of the run."""

import time
from fractions import Fraction

import numpy as np
import pytest

from fastalpha import cli, pixelio, scalar_core, series_math, swar_blend
from fastalpha.pixelio import PixelBuffer
from fastalpha.rng import random_pixels, splitmix64


def count_misses(candidate, oracle):
    return len(scalar_core.mismatch_census(candidate, oracle))


@pytest.mark.criterion("1. exhaustive exactness")
def test_exhaustive_exactness(criterion):
    t0 = time.perf_counter()
    m24 = count_misses(scalar_core.fast_mult_24, scalar_core.exact_mult_float)
    m16 = count_misses(scalar_core.fast_mult_16, scalar_core.exact_mult_float)
    elapsed = time.perf_counter() - t0
    assert m24 == 0
    assert m16 == 0
    assert elapsed < 1.0
    criterion(f"fast_mult_24 misses={m24} fast_mult_16 misses={m16} over 65536 pairs, {elapsed:.2f}s")


@pytest.mark.criterion("2. two-oracle agreement")
def test_two_oracle_agreement(criterion):
    m = count_misses(scalar_core.exact_mult_int, scalar_core.exact_mult_float)
    assert m == 0
    criterion(f"misses={m} over 65536 pairs")


@pytest.mark.criterion("3. census reproduction")
def test_census_reproduction(criterion):
    records = scalar_core.mismatch_census(scalar_core.approx_mult_8000, scalar_core.exact_mult_int)
    assert len(records) == 24
    assert all(r.want - r.got == 1 for r in records)
    assert any((r.alpha, r.channel) == (253, 191) for r in records)
    criterion(f"{len(records)} mismatches, all low by 1, (253,191) present")


@pytest.mark.criterion("4. SWAR lane fidelity")
def test_swar_lane_fidelity(criterion):
    cases = bad = 0
    for op in ("premultiply", "pixel_mul"):
        for lane in range(4):
            for fill in cli.SIBLING_FILLS.values():
                n, m = cli.lane_sweep(op, lane, fill)
                assert n == 65536
                cases += n
                bad += m
    assert bad == 0
    criterion(f"{cases} lane cases, mismatches={bad}")


@pytest.mark.criterion("5. 64-bit variant equivalence")
def test_w64_equivalence(criterion):
    structured = cli.structured_pixels()
    bad = int(np.count_nonzero(
        swar_blend.premultiply_pixel_w64(structured) != swar_blend.premultiply_pixel(structured)))
    total, step = 10_000_000, 1_000_000
    for start in range(0, total, step):
        px = random_pixels(step, seed=0, start=start)
        bad += int(np.count_nonzero(
            swar_blend.premultiply_pixel_w64(px) != swar_blend.premultiply_pixel(px)))
    assert bad == 0
    criterion(f"{structured.size} structured + {total} random pixels, mismatches={bad}")


@pytest.mark.criterion("6. premultiply file equivalence")
@pytest.mark.parametrize("fmt", ["raw", "pam"])
def test_premultiply_files(tmp_path, capsys, fmt, criterion):
    src = tmp_path / f"in.{fmt}"
    pixelio.save(src, PixelBuffer(256, 256, random_pixels(256 * 256, seed=0)), fmt)
    outs = []
    for flags in ([], ["--w64"], ["--oracle"]):
        dst = tmp_path / f"out{len(outs)}.{fmt}"
        assert cli.main(["premultiply", str(src), str(dst), *flags]) == 0
        outs.append(dst.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1] == outs[2]
    assert outs[0] != src.read_bytes()
    criterion(f"default/--w64/--oracle byte-identical ({len(outs[0])} bytes)")


@pytest.mark.criterion("7. over-compositor properties")
def test_over_properties(criterion):
    n = 1_000_000
    src = swar_blend.premultiply_pixel(random_pixels(n, seed=1))
    dst = swar_blend.premultiply_pixel(random_pixels(n, seed=2))
    scaled = swar_blend.pixel_mul(dst, 255 - (src >> 24))
    lane_sums = [s.astype(np.int64) + d for s, d in
                 zip(swar_blend.unpack_rgba(src), swar_blend.unpack_rgba(scaled))]
    peak = max(int(x.max()) for x in lane_sums)
    assert peak <= 255
    out = swar_blend.over_premul(src, dst)
    np.testing.assert_array_equal(out, swar_blend.pack_rgba(*lane_sums).astype(np.uint32))
    assert np.all(swar_blend.is_premultiplied(out))

    opaque = random_pixels(n, seed=3) | np.uint32(0xFF000000)
    np.testing.assert_array_equal(swar_blend.over_premul(opaque, dst), opaque)
    np.testing.assert_array_equal(swar_blend.over_premul(np.zeros(n, np.uint32), dst), dst)
    criterion(f"{n} pairs, peak lane sum {peak}, closure and identities exact")


@pytest.mark.criterion("8. series certification")
def test_series_certification(criterion):
    for c in range(256):
        for k in range(1, 9):
            assert set(series_math.repeating_digits(c, k)) == {c}
            s = series_math.series_div255(c, k)
            gap = Fraction(c, 255) - Fraction(s.scaled_value, 2 ** (8 * k))
            assert gap == s.tail == Fraction(c, 255 * 2 ** (8 * k))
    ok = sum(series_math.series_matches_fast_formula(a, c)
             for a in range(256) for c in range(256))
    assert ok == 65536
    criterion(f"digits and tails exact for c<256, k<=8; fast formula match {ok}/65536")


@pytest.mark.criterion("9. format round-trips")
def test_format_round_trips(criterion):
    dims = splitmix64(200, seed=9) % np.uint64(257)
    offset = 0
    for i in range(100):
        w, h = int(dims[2 * i]), int(dims[2 * i + 1])
        buf = PixelBuffer(w, h, random_pixels(w * h, seed=10, start=offset))
        offset += w * h
        assert pixelio.read_raw(pixelio.write_raw(buf)) == buf
        assert pixelio.read_pam(pixelio.write_pam(buf)) == buf
    criterion(f"100 buffers, {offset} pixels, raw and PAM identity")


@pytest.mark.criterion("10. benchmark harness")
def test_benchmark_harness(capsys, criterion):
    code = cli.main(["bench", "--pixels", "200000", "--reps", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "outputs identical: yes" in out
    rates = [ln for ln in out.splitlines() if ln.endswith("pixels/s")]
    assert len(rates) == 4
    criterion(" | ".join(" ".join(r.split()) for r in rates))
