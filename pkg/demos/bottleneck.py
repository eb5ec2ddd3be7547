"""
Bottlenecks and forced zeros
============================

Some pairs can never be compared directly, whichever chain generated the
data. Here l may only be reached through i, yet an irreducible chain still
explains the choices.
"""

import numpy as np

from markov_choice import reference
from markov_choice.cycles import theorem2_condition, theorem3_condition
from markov_choice.markov import scc_decompose
from markov_choice.rationalize import NotRationalizable, forced_zero_pairs, rationalize, verify_rationalizes

np.set_printoptions(precision=4, suppress=True)

d = reference.bottleneck_data()
M = d.universe.full_menu()

# %%
print("pairs that cannot be compared:", sorted("".join(sorted(p)) for p in forced_zero_pairs(d, M)))
print("pairwise comparable:", theorem2_condition(d, M).pairwise)
print("closed walk over the usable pairs:", theorem3_condition(d, M).witness)

# %%
# A pairwise comparable chain is impossible, and the certificate shows why
try:
    rationalize(d, M, "pairwise")
except NotRationalizable as e:
    print(e)
    print("certificate z:", [str(z) for z in e.certificate.certificate])

# %%
# The irreducible construction disconnects the forced pairs and still fits
model = rationalize(d, M, "irreducible")
Q = model.block(M).Q
print(Q)
print("single class:", scc_decompose(Q).irreducible)
print("max deviation:", verify_rationalizes(model, d, [M]).max_deviation)
