"""
Decoys and initial attention
============================

Target i, competitor j, decoy k. The searcher never moves from i to the
decoy, but moves from the decoy to the target. Adding k always helps i
relative to j, and helps i outright when the decoy sends searchers to i
more readily than j does.
"""

import numpy as np

from markov_choice.core import ModelBlock, MscModel, Universe
from markov_choice.manipulate import decoy_analysis, nudge_initial_finite

U = Universe("ijk")


def two(a, b):
    return np.array([[1 - a, a], [b, 1 - b]])


def triple(q_ki, q_ji=0.1, q_ij=0.1, q_jk=0.1, q_kj=0.1):
    Q = np.array([[0, q_ij, 0], [q_ji, 0, q_jk], [q_ki, q_kj, 0]])
    np.fill_diagonal(Q, 1 - Q.sum(axis=1))
    return MscModel(U, [
        ModelBlock(U.full_menu(), Q, [1 / 3] * 3),
        ModelBlock(U.binary("i", "j"), two(q_ij, q_ji), [0.5, 0.5]),
        ModelBlock(U.binary("i", "k"), two(0, q_ki), [0.5, 0.5]),
        ModelBlock(U.binary("j", "k"), two(q_jk, q_kj), [0.5, 0.5]),
    ])


# %%
print(f"{'q_ki':>6} {'pair':>7} {'triple':>7} {'ratio up':>9} {'share up':>9}")
for q_ki in (0.02, 0.05, 0.1, 0.2, 0.4):
    rep = decoy_analysis(triple(q_ki), "ijk")
    print(f"{q_ki:6.2f} {rep.rho_pair:7.4f} {rep.rho_triple:7.4f} "
          f"{rep.relative_ratio_increase!s:>9} {rep.absolute_increase!s:>9}")

# %%
# Under time pressure the first fixation matters: start at each alternative
rep = nudge_initial_finite(triple(0.2).block(U.full_menu()), alpha=0.5, target="i")
for s, vec in rep.table.items():
    print(f"start {s}:", np.round(vec, 4))
print("starting at i maximises its share:", rep.strict_maximum)
