# %% [markdown]
# # Sweeps and the picture
#
# Exhaustive sweeps are practical only for tiny sets; `Phi(3, 2)` has
# `2**2278` colorings, so it gets a seeded random sweep instead.

# %%
from gallai import default_base
from gallai.construction import phi, phi_2
from gallai.sweep import dumps_sweep, exhaustive_sweep, random_sweep

B = default_base(preset="fig1")
print(dumps_sweep(exhaustive_sweep(phi_2(B, 4), 4, 2, "both", B, workers=2)))
print(dumps_sweep(random_sweep(phi(B, 3, 2), 2, 3, 100, 0, B, workers=2)))

# %% [markdown]
# The extracted two-step system for one coloring, drawn in the style of the
# original figure: set points filled, the points the system touches hollow.

# %%
from gallai.coloring import random_coloring
from gallai.proof import extract_delta
from gallai.render import render_svg

P = phi(B, 3, 2)
W = extract_delta(3, 2, 2, random_coloring(P, 2, 1), B)
with open("phi_3_2.svg", "w") as fh:
    render_svg(P, fh, W, B)
print("wrote phi_3_2.svg for system", W.a, W.lambdas)
