# %% [markdown]
# # Premultiplying two or four components per multiply
#
# The 16-bit formula never needs more than 16 bits per component, so two
# components fit in one 32-bit word and four fit in a 64-bit word.

# %%
import numpy as np

from fastalpha import swar_blend as sb
from fastalpha.rng import random_pixels

p = 0x802555C8  # alpha 0x80, blue 0x25, green 0x55, red 0xC8
print(f"two lanes : {sb.premultiply_pixel(p):#010x}")
print(f"four lanes: {sb.premultiply_pixel_w64(p):#010x}")
print(f"float ref : {sb.premultiply_pixel_oracle(p):#010x}")

# %% [markdown]
# Masking the shifted word is what keeps red and blue apart. Leave it out
# and the white pixel below loses most of its red.

# %%
white = 0xFFFFFFFF
rb = (white & 0x00FF00FF) * 0xFF + 0x00800080
print(f"unmasked red: {((rb + (rb >> 8)) >> 8) & 0xFF:#04x}")
print(f"masked red  : {sb.premultiply_pixel(white) & 0xFF:#04x}")

# %% [markdown]
# On a million random pixels every path agrees bit for bit.

# %%
px = random_pixels(1_000_000, seed=0)
two = sb.premultiply_pixel(px)
print("w64 == two-lane :", np.array_equal(sb.premultiply_pixel_w64(px), two))
print("float == two-lane:", np.array_equal(sb.premultiply_pixel_oracle(px), two))
