"""
Consideration sets and rearranging the shelf
============================================

Four alternatives i, j, k, l. The searcher compares i, j and l with each
other but never compares anything with k, so k forms its own consideration
set. Choices then depend on where the search starts, while cutting a
comparison link inside {i, j, l} does not change them.
"""

import numpy as np

from markov_choice import reference
from markov_choice.core import ModelBlock
from markov_choice.cycles import classify
from markov_choice.manipulate import Restriction, apply_restriction, robustness_to_initial
from markov_choice.markov import generate_limiting, scc_decompose

np.set_printoptions(precision=4, suppress=True)

# %%
# The chain and its communicating classes
M = reference.UNIVERSE.full_menu()
block = ModelBlock(M, reference.STAR_Q, reference.STAR_PI)
print(block.Q)
dec = scc_decompose(block.Q)
print("classes:", [[M.members[a] for a in c] for c in dec.classes])

# %%
# Unlimited search time: 40% of searches start at k and never leave it
print("choice:", generate_limiting(block.Q, block.pi))

# %%
# Moving all of the initial attention to i changes the outcome completely
print("start at i:", generate_limiting(block.Q, [1, 0, 0, 0]))
print("robust to the starting point:", robustness_to_initial(block).holds)

# %%
# Hiding i from l (no direct comparison) keeps the choice the same,
# even when the i-j comparison rate is doubled as well
for r in [Restriction.strict(M, [("i", "l")]),
          Restriction.weak(M, {("i", "l"): 0, ("i", "j"): 2})]:
    nb = apply_restriction(block, r)
    print(r.describe(), "->", generate_limiting(nb.Q, nb.pi))

# %%
# The data alone tells us every rationalizer is reversible, and that k
# cannot share a consideration set with the others
rep = classify(reference.star_data(), M)
print(rep.flags)
print("pairs that must stay unconnected:", rep.unbounded_pairs)
