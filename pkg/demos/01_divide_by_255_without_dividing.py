# %% [markdown]
# # Multiplying by alpha without dividing by 255
#
# Scaling an 8-bit color value `c` by an 8-bit alpha `a` means computing
# `round(a * c / 255)`. This script compares the reference results with the
# shift-and-add formulas and shows where a first attempt goes wrong.

# %%
import numpy as np

from fastalpha import scalar_core as sc

a, c = 128, 200
print("float reference :", sc.exact_mult_float(a, c))
print("integer (+127)  :", sc.exact_mult_int(a, c))
print("24-bit formula  :", sc.fast_mult_24(a, c))
print("16-bit formula  :", sc.fast_mult_16(a, c))

# %% [markdown]
# The formulas are ordinary integer expressions, so NumPy evaluates them on
# the whole 256 x 256 grid of inputs in one go.

# %%
A, C = np.meshgrid(np.arange(256, dtype=np.uint32), np.arange(256, dtype=np.uint32), indexing="ij")
ref = sc.exact_mult_float(A, C)
for fn in (sc.exact_mult_int, sc.fast_mult_24, sc.fast_mult_16, sc.approx_mult_8000):
    print(f"{fn.__name__:>18}: {np.count_nonzero(fn(A, C) != ref)} mismatches")

# %% [markdown]
# Rounding with 0x8000 instead of 0x8080 is almost right. The census lists
# every pair it misses; each one comes out exactly one too low.

# %%
records = sc.mismatch_census(sc.approx_mult_8000, sc.exact_mult_int)
for r in records[:5]:
    print(r)
print("...", len(records), "in total")
print("all low by one:", all(r.want - r.got == 1 for r in records))
