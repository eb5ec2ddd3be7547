"""Checks on data (positivity, IIA, Luce fit) and on chains (reversibility)."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
from numpy.typing import ArrayLike

from .core import DEFAULT_TOL, ChoiceDataset, Tolerances, binary_share
from .cycles import CapacityError, delta
from .markov import scc_decompose, stationary_distribution

__all__ = [
    "AxiomViolation",
    "BalanceResult",
    "IiaResult",
    "KolmogorovResult",
    "LuceFit",
    "PositivityResult",
    "check_detailed_balance",
    "check_iia",
    "check_kolmogorov",
    "check_positivity",
    "check_reversible",
    "fit_luce",
]


class AxiomViolation(ValueError):
    """A precondition axiom fails; ``axiom`` names it."""

    def __init__(self, axiom: str, detail: str):
        super().__init__(f"{axiom} violated: {detail}")
        self.axiom = axiom
        self.detail = detail


@dataclass(frozen=True)
class PositivityResult:
    holds: bool
    witnesses: tuple[tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def check_positivity(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> PositivityResult:
    """Every alternative has positive probability in every stored sub-menu of ``M``.

    Witnesses are ``(alternative, menu)`` pairs with a zero probability.
    """
    M = d.universe.menu(M)
    d.vector(M)
    bad = []
    for sub in d.menus:
        if not sub.issubset(M) or len(sub) < 2:
            continue
        for alt, v in zip(sub, d.vector(sub)):
            if not v > tol.eps_delta:
                bad.append((alt, str(sub)))
    return PositivityResult(not bad, tuple(bad))


@dataclass(frozen=True)
class IiaResult:
    holds: bool
    max_violation: float
    worst_pair: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_iia(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> IiaResult:
    """Odds within ``M`` match binary odds for every pair."""
    M = d.universe.menu(M)
    worst, worst_pair, holds = 0.0, None, True
    for i, j in M.pairs():
        v = float(delta(d, M, i, j))
        scale = max(binary_share(d, i, j), binary_share(d, j, i))
        if abs(v) > tol.eps_delta * scale:
            holds = False
        if abs(v) > worst:
            worst, worst_pair = abs(v), ((i, j) if v > 0 else (j, i))
    return IiaResult(holds, worst, worst_pair)


@dataclass(frozen=True)
class BalanceResult:
    holds: bool
    violations: tuple[tuple[int, int, float, float], ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def check_detailed_balance(Q: ArrayLike, rho: ArrayLike, tol: Tolerances = DEFAULT_TOL) -> BalanceResult:
    """Pairwise flow balance; violations are ``(i, j, rho_i q_ij, rho_j q_ji)``."""
    Q = np.asarray(Q, dtype=float)
    rho = np.asarray(rho, dtype=float)
    if Q.shape != (len(rho), len(rho)):
        raise ValueError("dimension mismatch between chain and distribution")
    flow = rho[:, None] * Q
    bad = []
    n = len(rho)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(flow[i, j] - flow[j, i]) > tol.eps_tol:
                bad.append((i, j, float(flow[i, j]), float(flow[j, i])))
    return BalanceResult(not bad, tuple(bad))


@dataclass(frozen=True)
class KolmogorovResult:
    holds: bool
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def check_kolmogorov(Q: ArrayLike, cap: int = 9, tol: Tolerances = DEFAULT_TOL) -> KolmogorovResult:
    """Forward and backward products agree on every simple cycle.

    Only cycles inside closed classes are inspected: transient states carry
    no limiting mass, matching :func:`check_reversible`.
    """
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[0]
    if n > cap:
        raise CapacityError(f"chain of size {n} exceeds cycle enumeration cap {cap}; "
                            "use check_reversible (detailed balance) instead")
    dec = scc_decompose(Q)
    g = nx.DiGraph()
    for cls in dec.closed_classes:
        g.add_nodes_from(cls)
        for a in cls:
            for b in cls:
                if a != b and Q[a, b] > 0:
                    g.add_edge(a, b)
    for cyc in nx.simple_cycles(g):
        if len(cyc) < 3:
            # a two-cycle reads the same pair both ways
            continue
        nxt = cyc[1:] + cyc[:1]
        fwd = float(np.prod([Q[a, b] for a, b in zip(cyc, nxt)]))
        bwd = float(np.prod([Q[b, a] for a, b in zip(cyc, nxt)]))
        if abs(fwd - bwd) > tol.eps_tol * max(fwd, bwd):
            return KolmogorovResult(False, tuple(cyc))
    return KolmogorovResult(True)


def check_reversible(Q: ArrayLike, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Detailed balance against the stationary law of each closed class."""
    Q = np.asarray(Q, dtype=float)
    dec = scc_decompose(Q)
    for cls in dec.closed_classes:
        idx = list(cls)
        sub = Q[np.ix_(idx, idx)]
        # scale-free: compare flows relative to the stationary law
        rho = stationary_distribution(sub)
        if not check_detailed_balance(sub, rho, tol).holds:
            return False
    return True


@dataclass(frozen=True)
class LuceFit:
    """Luce utilities normalised so the anchor (first alternative) has utility 1."""

    utilities: dict[str, float]
    residual: float
    anchor: str


def fit_luce(d: ChoiceDataset, menus=None, tol: Tolerances = DEFAULT_TOL) -> LuceFit:
    """Utilities from binary odds against the anchor, checked on every menu.

    Raises :class:`AxiomViolation` naming ``"positivity"``, ``"iia"`` or
    ``"luce"`` (binary odds inconsistent across menus) when the fit fails.
    """
    menus = d.menus if menus is None else [d.universe.menu(m) for m in menus]
    for M in menus:
        pos = check_positivity(d, M, tol)
        if not pos.holds:
            alt, where = pos.witnesses[0]
            raise AxiomViolation("positivity", f"p({alt}|{where}) = 0")
        iia = check_iia(d, M, tol)
        if not iia.holds:
            i, j = iia.worst_pair
            raise AxiomViolation("iia", f"delta_{i}{j}({M}) = {iia.max_violation:.6g}")
    involved = {a for M in menus for a in M}
    alts = [a for a in d.universe if a in involved]
    if not alts:
        raise ValueError("no menus to fit")
    anchor = alts[0]
    u = {anchor: 1.0}
    for a in alts[1:]:
        u[a] = binary_share(d, a, anchor) / binary_share(d, anchor, a)
    residual = 0.0
    for M in menus:
        total = sum(u[a] for a in M)
        pred = np.array([u[a] / total for a in M])
        residual = max(residual, float(np.max(np.abs(pred - d.vector(M)))))
    if residual > tol.eps_tol:
        raise AxiomViolation("luce", f"binary odds are not transitive (residual {residual:.3g})")
    return LuceFit(u, residual, anchor)
