"""Choice probabilities generated by an exploration chain.

The finite-horizon form stops the chain with probability ``alpha`` each
period; the limiting form is the ``alpha -> 0`` limit, which for a reducible
chain mixes the stationary laws of the closed classes by their absorption
probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.sparse.csgraph import connected_components

__all__ = [
    "PreconditionError",
    "SccDecomposition",
    "absorption_weights",
    "generate_finite",
    "generate_limiting",
    "generate_series",
    "scc_decompose",
    "stationary_distribution",
]


class PreconditionError(ValueError):
    pass


def _as_chain(Q: ArrayLike) -> NDArray[np.float64]:
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or Q.shape[0] == 0:
        raise ValueError(f"transition matrix must be square and non-empty, got shape {Q.shape}")
    return Q


def _as_dist(pi: ArrayLike, n: int) -> NDArray[np.float64]:
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (n,):
        raise ValueError(f"initial distribution must have length {n}, got shape {pi.shape}")
    return pi


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"stopping probability must lie strictly in (0, 1), got {alpha}")
    return alpha


def generate_finite(Q: ArrayLike, pi: ArrayLike, alpha: float) -> NDArray[np.float64]:
    """``alpha * pi @ inv(I - (1 - alpha) Q)``, via a linear solve."""
    Q = _as_chain(Q)
    pi = _as_dist(pi, Q.shape[0])
    alpha = _check_alpha(alpha)
    A = np.eye(Q.shape[0]) - (1.0 - alpha) * Q
    # rho A = alpha pi  <=>  A^T rho^T = alpha pi^T
    return np.linalg.solve(A.T, alpha * pi)


def generate_series(Q: ArrayLike, pi: ArrayLike, alpha: float, T: int) -> NDArray[np.float64]:
    """Partial sum of the stopping-time series up to period ``T`` inclusive."""
    Q = _as_chain(Q)
    pi = _as_dist(pi, Q.shape[0])
    alpha = _check_alpha(alpha)
    if T < 0:
        raise ValueError("T must be non-negative")
    term = alpha * pi
    total = term.copy()
    for _ in range(T):
        term = (1.0 - alpha) * (term @ Q)
        total += term
    return total


@dataclass(frozen=True)
class SccDecomposition:
    """Communicating classes of a chain, as tuples of state indices.

    Classes are ordered by their smallest member.
    """

    classes: tuple[tuple[int, ...], ...]
    closed: tuple[bool, ...]
    class_index: tuple[int, ...]

    @property
    def closed_classes(self) -> list[tuple[int, ...]]:
        return [c for c, flag in zip(self.classes, self.closed) if flag]

    @property
    def transient(self) -> list[int]:
        return sorted(s for c, flag in zip(self.classes, self.closed) if not flag for s in c)

    @property
    def irreducible(self) -> bool:
        return len(self.classes) == 1

    def same_structure(self, other: "SccDecomposition") -> bool:
        return set(zip(self.classes, self.closed)) == set(zip(other.classes, other.closed))


def scc_decompose(Q: ArrayLike) -> SccDecomposition:
    Q = _as_chain(Q)
    n = Q.shape[0]
    adj = (Q > 0).astype(np.int8)
    np.fill_diagonal(adj, 0)
    _, labels = connected_components(adj, directed=True, connection="strong")
    groups: dict[int, list[int]] = {}
    for s, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(s)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])
    class_index = [0] * n
    for k, c in enumerate(classes):
        for s in c:
            class_index[s] = k
    closed = []
    for c in classes:
        outside = [s for s in range(n) if s not in c]
        closed.append(not np.any(adj[np.ix_(list(c), outside)]) if outside else True)
    return SccDecomposition(tuple(classes), tuple(closed), tuple(class_index))


def stationary_distribution(Q: ArrayLike) -> NDArray[np.float64]:
    """Unique invariant law of an irreducible chain.

    Solves ``rho (I - Q) = 0`` with the normalisation row appended, in the
    least-squares sense so the overdetermined system is handled directly.
    """
    Q = _as_chain(Q)
    n = Q.shape[0]
    if n == 1:
        return np.ones(1)
    dec = scc_decompose(Q)
    if not dec.irreducible:
        raise PreconditionError("stationary_distribution needs an irreducible chain; "
                                f"found classes {dec.classes}")
    if np.max(np.abs(Q.sum(axis=1) - 1.0)) > 1e-9:
        raise PreconditionError("chain rows do not sum to 1 (class is not closed)")
    A = np.vstack([(np.eye(n) - Q).T, np.ones((1, n))])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    rho, *_ = np.linalg.lstsq(A, b, rcond=None)
    rho = np.clip(rho, 0.0, None)
    return rho / rho.sum()


def absorption_weights(Q: ArrayLike, pi: ArrayLike) -> dict[tuple[int, ...], float]:
    """Probability of ending in each closed class when starting from ``pi``."""
    Q = _as_chain(Q)
    pi = _as_dist(pi, Q.shape[0])
    dec = scc_decompose(Q)
    closed = dec.closed_classes
    trans = dec.transient
    weights = {c: float(pi[list(c)].sum()) for c in closed}
    if trans:
        Qtt = Q[np.ix_(trans, trans)]
        # expected visits to each transient state before absorption
        visits = np.linalg.solve((np.eye(len(trans)) - Qtt).T, pi[trans])
        for c in closed:
            weights[c] += float(visits @ Q[np.ix_(trans, list(c))].sum(axis=1))
    return weights


def generate_limiting(Q: ArrayLike, pi: ArrayLike) -> NDArray[np.float64]:
    Q = _as_chain(Q)
    pi = _as_dist(pi, Q.shape[0])
    rho = np.zeros(Q.shape[0])
    for cls, w in absorption_weights(Q, pi).items():
        if w == 0.0:
            continue
        idx = list(cls)
        rho[idx] += w * stationary_distribution(Q[np.ix_(idx, idx)])
    return rho
