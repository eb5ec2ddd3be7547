"""Reference datasets and chains on the four-item universe ``i, j, k, l``.

All three datasets share the same binary shares. They differ in the
four-item menu:

* ``star``: ``k`` gains odds against everyone, nothing else moves.
  Every rationalizer is reversible and disconnects ``k``.
* ``circulating``: positive odds shifts around a cycle through all pairs.
  Fully comparable chains rationalize it.
* ``bottleneck``: ``l`` is reachable only through ``i``. Irreducible
  chains rationalize it, but pairs ``{j,l}`` and ``{k,l}`` must be cut.
"""

from __future__ import annotations

import numpy as np

from .core import ChoiceDataset, ModelBlock, MscModel, Universe

__all__ = [
    "BINARY_SHARES",
    "UNIVERSE",
    "bottleneck_chain",
    "bottleneck_data",
    "circulating_chain",
    "circulating_data",
    "dataset",
    "star_chain",
    "star_data",
]

UNIVERSE = Universe("ijkl")

BINARY_SHARES = {
    ("i", "j"): ("0.5", "0.5"),
    ("i", "k"): ("0.5", "0.5"),
    ("i", "l"): ("0.5", "0.5"),
    ("j", "k"): ("0.6", "0.4"),
    ("j", "l"): ("0.5", "0.5"),
    ("k", "l"): ("0.4", "0.6"),
}

MENU_SHARES = {
    "star": ("0.2", "0.2", "0.4", "0.2"),
    "circulating": ("0.25", "0.28", "0.2", "0.27"),
    "bottleneck": ("0.24", "0.3", "0.22", "0.24"),
}


def dataset(full_menu_shares) -> ChoiceDataset:
    entries = {pair: shares for pair, shares in BINARY_SHARES.items()}
    entries[tuple("ijkl")] = tuple(full_menu_shares)
    return ChoiceDataset(UNIVERSE, entries)


def star_data() -> ChoiceDataset:
    return dataset(MENU_SHARES["star"])


def circulating_data() -> ChoiceDataset:
    return dataset(MENU_SHARES["circulating"])


def bottleneck_data() -> ChoiceDataset:
    return dataset(MENU_SHARES["bottleneck"])


STAR_Q = np.array([
    [0.8, 0.1, 0.0, 0.1],
    [0.1, 0.8, 0.0, 0.1],
    [0.0, 0.0, 1.0, 0.0],
    [0.1, 0.1, 0.0, 0.8],
])
STAR_PI = np.array([0.2, 0.2, 0.4, 0.2])

CIRCULATING_Q = np.array([
    [0.7, 0.1, 0.1, 0.1],
    [0.1, 0.72, 0.16, 0.02],
    [0.1, 0.24, 0.57, 0.09],
    [0.1, 0.02, 0.06, 0.82],
])

BOTTLENECK_Q = np.array([
    [0.4, 0.1, 0.3, 0.2],
    [0.1, 0.7, 0.2, 0.0],
    [0.3, 0.3, 0.4, 0.0],
    [0.2, 0.0, 0.0, 0.8],
])

_UNIFORM = np.full(4, 0.25)


def _binary_blocks() -> list[ModelBlock]:
    out = []
    for (a, b), (pa, pb) in BINARY_SHARES.items():
        pa, pb = float(pa), float(pb)
        Q = [[1 - 0.5 * pb, 0.5 * pb], [0.5 * pa, 1 - 0.5 * pa]]
        out.append(ModelBlock(UNIVERSE.binary(a, b), Q, [pa, pb]))
    return out


def _chain(Q, pi) -> MscModel:
    return MscModel(UNIVERSE, [ModelBlock(UNIVERSE.full_menu(), Q, pi), *_binary_blocks()])


def star_chain(pi=STAR_PI) -> MscModel:
    """Reversible chain for ``star_data``; ``k`` is a closed singleton."""
    return _chain(STAR_Q, pi)


def circulating_chain(pi=_UNIFORM) -> MscModel:
    """Fully comparable, non-reversible chain for ``circulating_data``."""
    return _chain(CIRCULATING_Q, pi)


def bottleneck_chain(pi=_UNIFORM) -> MscModel:
    """Irreducible chain for ``bottleneck_data`` with ``{j,l}``, ``{k,l}`` cut."""
    return _chain(BOTTLENECK_Q, pi)
