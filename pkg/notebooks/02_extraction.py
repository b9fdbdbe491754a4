# %% [markdown]
# # Extracting monochromatic copies
#
# Given any 2-coloring of `Phi(3, 2)` the extractor walks the induction and
# returns a homothety `h` with `h(S_3)` inside the set and one color.
# An independent checker and a brute-force oracle confirm the answer.

# %%
from gallai import default_base
from gallai.coloring import random_coloring
from gallai.construction import phi
from gallai.proof import LemmaTrace, extract_delta, extract_phi
from gallai.verify import check_phi_witness, find_mono_copies

B = default_base(preset="fig1")
P = phi(B, 3, 2)
f = random_coloring(P, 2, seed=1)

W = extract_delta(3, 2, 2, f, B)
print("system:", W.a, W.lambdas)
w = extract_phi(3, 2, f, B)
print("copy:", w.h, [w.h(e) for e in B.prefix(3)])
print(check_phi_witness(f, w, P, B))

# %% [markdown]
# Passing a `LemmaTrace` turns on the intermediate identity checks of the
# recursive step. A clean run records steps and checks but no violations.

# %%
trace = LemmaTrace()
for seed in range(50):
    extract_phi(3, 2, random_coloring(P, 2, seed), B, trace=trace)
print(trace.steps, trace.checks, trace.violations)

# %% [markdown]
# On small sets the oracle can list every monochromatic copy, and the
# extracted one is always among them.

# %%
from gallai.coloring import Coloring
from gallai.construction import phi_2
from gallai.proof import extract_phi2

V = phi_2(B, 3)
g = Coloring.from_sequence(V, (0, 1, 2, 0), 3)
print(extract_phi2(3, g, B).h, find_mono_copies(V, g, 2, "strong", B))
