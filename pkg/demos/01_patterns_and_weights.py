# %% [markdown]
# # Patterns, bases and weights
# A module is labelled by a signature: a non-increasing integer sequence that is
# constant below `m` and above `n`.  Its basis vectors are interlacing arrays whose
# rows settle onto the signature.  This walk-through builds a few bases and looks
# at the weights carried by each vector.

# %%
import numpy as np

from uqainf.patterns import (central_charge, enumerate_basis, highest_weight, make_signature,
                             pattern_to_text, weight)

ls0 = make_signature(-1, 0, [1, 0])
wide = make_signature(-1, 1, [2, 1, 0])

# %% [markdown]
# The highest weight vector is the array that copies the signature into every row.
# Only the bottom row is stored; everything above it is implied.

# %%
hw = highest_weight(ls0)
print(pattern_to_text(hw))
print("rows 1..4:", [hw.row(r) for r in range(1, 5)])

# %% [markdown]
# Bases grow with the truncation depth `N`.  Each basis at depth `N` contains the one
# at depth `N - 1`.

# %%
dims = np.array([[len(enumerate_basis(s, N)) for N in range(1, 7)] for s in (ls0, wide)])
print(dims)
assert (np.diff(dims, axis=1) >= 0).all()

for p in enumerate_basis(ls0, 3):
    print(p)

# %% [markdown]
# Weights are eigenvalues of the Cartan generators.  Far from the origin every weight
# vanishes, so a small window shows everything.

# %%
window = range(-4, 5)
table = np.array([[float(weight(p, i).const) for i in window] for p in enumerate_basis(ls0, 4)])
print("i:", list(window))
print(table)
print("central charge:", central_charge(ls0))
