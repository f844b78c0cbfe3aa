# %% [markdown]
# # Source-over compositing and image files
#
# With premultiplied pixels, `src over dst` is `src + dst * (255 - alpha_src)`
# and the multiply is the same packed routine as before.

# %%
import tempfile
from pathlib import Path

from fastalpha import pixelio, swar_blend as sb
from fastalpha.pixelio import PixelBuffer
from fastalpha.rng import random_pixels

src = sb.pack_rgba(100, 0, 0, 128)  # half-covered red, premultiplied
dst = sb.pack_rgba(50, 60, 70, 255)
print("over:", sb.unpack_rgba(sb.over_premul(src, dst)))

# %% [markdown]
# A small image round trip: write a PAM file, premultiply it, composite a
# second layer over it, and read the result back.

# %%
w, h = 64, 32
base = PixelBuffer(w, h, random_pixels(w * h, seed=1))
layer = sb.premultiply_buffer(PixelBuffer(w, h, random_pixels(w * h, seed=2)))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "base.pam"
    pixelio.save(path, base, "pam")
    img, fmt = pixelio.load(path)
    sb.premultiply_buffer(img)
    sb.over_buffer(layer, img, checked=True)
    pixelio.save(path, img, fmt)
    print(path.read_bytes().split(b"ENDHDR")[0].decode("ascii"))
    print("first pixels:", [f"{p:#010x}" for p in pixelio.load(path)[0].pixels[:3]])
