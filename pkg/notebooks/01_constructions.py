# %% [markdown]
# # Building the witness sets
#
# `Phi(2, k)` is just `k + 1` evenly spaced points on the line through `e_1`.
# Every higher level is built from the one below by a closure step `E_n`:
# take every positive homothetic copy of `S_{n-1}` that fits inside the set
# and add the image of the next base point.

# %%
from gallai import default_base
from gallai.construction import delta, e_n_closure, enumerate_homotheties, phi, phi_2, recursion_stats

B = default_base(preset="fig1")
print(B.points)
print(list(phi_2(B, 2)))

# %% [markdown]
# The small worked case: three maps fit `S_2` into `Phi(2, 2)`, so the closure
# gains three points.

# %%
for h in enumerate_homotheties(B, 2, phi_2(B, 2)):
    print(h)
print(list(e_n_closure(B, 3, phi_2(B, 2))))

# %% [markdown]
# `Phi(3, 2)` needs a 64-color pass first (one color per 2-coloring of the
# six-point set `Delta(3, 2, 1)`), then a complex sum.

# %%
for row in recursion_stats(B, 3, 2):
    print(row)
P = phi(B, 3, 2)
print(len(P), "points")

# %% [markdown]
# The next parameters blow up fast. With three colors the recursion wants
# `Phi(2, 3**10)` and its closure, which is over the default point budget, so
# the build stops with a `ResourceLimit` instead of running for hours.

# %%
from gallai.errors import ResourceLimit

try:
    phi(B, 3, 3)
except ResourceLimit as exc:
    print("stopped:", exc)
print(len(delta(B, 3, 3, 1)))
