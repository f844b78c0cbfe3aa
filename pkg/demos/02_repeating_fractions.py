# %% [markdown]
# # c / 255 as a repeating base-256 fraction
#
# Dividing an 8-bit number by 0xff gives that number repeated forever after
# the point, in the same way 37 / 99 = 0.3737... in decimal.

# %%
from fractions import Fraction

from fastalpha import series_math as sm

for c in (0x4A, 0xD7, 0x0E):
    digits = sm.repeating_digits(c, 8)
    print(f"{c:#04x} / 0xff = 0." + "".join(f"{d:02x}" for d in digits) + "...")

# %% [markdown]
# Keeping `k` digits is the same as summing `k` terms of the geometric
# series. The discarded tail is known exactly.

# %%
y = 1000
for k in range(1, 5):
    s = sm.series_div255(y, k)
    print(f"k={k}: {s.value} (tail {s.tail}, ~{float(s.tail):.3g})")
    assert Fraction(y, 255) - s.value == s.tail

# %% [markdown]
# Two terms are what the 24-bit formula uses: alpha * 257 is `0xAAAA` for
# `alpha = 0xAA`. With rounding added the result matches on every input.

# %%
ok = all(sm.series_matches_fast_formula(a, c) for a in range(256) for c in range(256))
print("two-term series reproduces fast_mult_24 everywhere:", ok)
