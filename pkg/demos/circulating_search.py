"""
A search that circulates
========================

Choice data where adding alternatives shifts the odds around a cycle
i -> k -> j -> i. No reversible chain explains it, yet a chain comparing
every pair does. We build one from the data and check it.
"""

import numpy as np

from markov_choice import reference
from markov_choice.axioms import check_iia, check_kolmogorov
from markov_choice.cycles import build_delta_graph, theorem1_condition
from markov_choice.rationalize import build_design_system, rationalize, solve_feasibility, verify_rationalizes

np.set_printoptions(precision=4, suppress=True)

d = reference.circulating_data()
M = d.universe.full_menu()

# %%
# Odds shifts between the binary menus and the full menu
g = build_delta_graph(d, M)
for (i, j), v in sorted(g.edges.items()):
    print(f"  {i} -> {j}: {v:+.4f}")
print("IIA holds:", check_iia(d, M).holds)

# %%
# A cycle of positive shifts rules out the reversible-only verdict
t1 = theorem1_condition(d, M)
print("positive cycle:", t1.witness)

# %%
# The exact linear system has a strictly positive solution
sys = build_design_system(d, M)
res = solve_feasibility(sys, "strict")
print("status:", res.status, " gamma:", [str(g) for g in res.gamma])

# %%
# Build the fully comparable chain and confirm it reproduces the data
model = rationalize(d, M, "fully")
Q = model.block(M).Q
print(Q)
print("max deviation:", verify_rationalizes(model, d, [M]).max_deviation)
print("reversible:", check_kolmogorov(Q).holds)
