"""Odds-shift function, its positive digraph, and the cycle conditions on data.

``delta(d, M, i, j)`` compares the odds of ``i`` against ``j`` in ``M`` with
their odds in the binary menu. Its positive pairs form a digraph whose
cycles decide which model classes can rationalize the data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, combinations

import networkx as nx

from .core import DEFAULT_TOL, ChoiceDataset, Menu, Tolerances, binary_share

__all__ = [
    "BoundedResult",
    "CapacityError",
    "ClassificationReport",
    "ConditionResult",
    "CycleWitness",
    "DeltaGraph",
    "PairwiseResult",
    "bounded_in_cycle",
    "build_delta_graph",
    "classify",
    "delta",
    "delta_is_zero",
    "enumerate_sign_consistent_cycles",
    "theorem1_condition",
    "theorem2_condition",
    "theorem3_condition",
]


class CapacityError(ValueError):
    """Menu is too large for exhaustive enumeration."""


Pair = tuple[str, str]


def delta(d: ChoiceDataset, M, i: str, j: str, exact: bool = False):
    """``p(i|M) p(j|{i,j}) - p(i|{i,j}) p(j|M)``."""
    if i == j:
        raise ValueError("delta needs two distinct alternatives")
    M = d.universe.menu(M)
    for a in (i, j):
        if a not in M:
            raise KeyError(f"{a!r} is not in menu {M}")
    pi_M, pj_M = d.p(i, M, exact), d.p(j, M, exact)
    pi_b, pj_b = binary_share(d, i, j, exact), binary_share(d, j, i, exact)
    return pi_M * pj_b - pi_b * pj_M


def _threshold(d: ChoiceDataset, i: str, j: str, tol: Tolerances) -> float:
    return tol.eps_delta * max(binary_share(d, i, j), binary_share(d, j, i))


def delta_is_zero(d: ChoiceDataset, M, i: str, j: str, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(delta(d, M, i, j)) <= _threshold(d, i, j, tol)


@dataclass(frozen=True)
class DeltaGraph:
    """Positive part of the odds-shift function on one menu.

    ``edges`` maps each ordered pair with a positive value to that value,
    in lexicographic order of universe positions. ``zero_pairs`` holds the
    remaining unordered pairs.
    """

    menu: Menu
    edges: dict[Pair, float]
    zero_pairs: frozenset[frozenset[str]]
    universe_order: tuple[str, ...] = field(repr=False)

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.menu)
        g.add_edges_from(self.edges)
        return g

    def sign(self, i: str, j: str) -> int:
        if (i, j) in self.edges:
            return 1
        if (j, i) in self.edges:
            return -1
        return 0

    @property
    def margin(self) -> float | None:
        """Smallest nonzero magnitude; small values flag borderline data."""
        return min(self.edges.values()) if self.edges else None


def build_delta_graph(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> DeltaGraph:
    M = d.universe.menu(M)
    edges: dict[Pair, float] = {}
    zeros = set()
    for i, j in M.pairs():
        v = delta(d, M, i, j)
        if abs(v) <= _threshold(d, i, j, tol):
            zeros.add(frozenset((i, j)))
        elif v > 0:
            edges[(i, j)] = float(v)
        else:
            edges[(j, i)] = float(-v)
    pos = d.universe.index
    ordered = dict(sorted(edges.items(), key=lambda kv: (pos(kv[0][0]), pos(kv[0][1]))))
    return DeltaGraph(M, ordered, frozenset(zeros), d.universe.alternatives)


@dataclass(frozen=True)
class CycleWitness:
    """Closed chain of ordered pairs together with its common sign.

    ``sign`` is +1, -1 or 0. Covering walks from :func:`theorem3_condition`
    may revisit alternatives and carry ``sign=None``.
    """

    pairs: tuple[Pair, ...]
    sign: int | None

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.pairs)

    def __str__(self) -> str:
        body = ",".join(f"({a},{b})" for a, b in self.pairs)
        return "{" + body + "}" + {1: "+", -1: "-", 0: "0", None: ""}[self.sign]

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "sign": self.sign}


def _close(path: list[str]) -> tuple[Pair, ...]:
    return tuple(zip(path, path[1:] + path[:1]))


def enumerate_sign_consistent_cycles(
    d: ChoiceDataset, M, cap: int = 7, tol: Tolerances = DEFAULT_TOL
) -> list[CycleWitness]:
    """All cycles over subsets of at least two alternatives with a common sign.

    Each cycle is listed once per orientation, starting at its earliest
    member in universe order. Exhaustive and exponential in ``|M|``.
    """
    M = d.universe.menu(M)
    if len(M) > cap:
        raise CapacityError(f"menu of size {len(M)} exceeds enumeration cap {cap}; "
                            "use the graph-based conditions instead")
    g = build_delta_graph(d, M, tol)
    out: list[CycleWitness] = []
    for size in range(2, len(M) + 1):
        for subset in combinations(M.members, size):
            head, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                pairs = _close([head, *perm])
                if size == 2 and perm != rest:
                    continue
                signs = {g.sign(a, b) for a, b in pairs}
                if len(signs) == 1:
                    out.append(CycleWitness(pairs, signs.pop()))
    return out


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    witness: CycleWitness | None = None
    blocking: tuple[Pair, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def theorem1_condition(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> ConditionResult:
    """No cycle of strictly positive odds shifts.

    When the condition fails the witness is such a cycle, and every
    rationalizing model is then not forced to be reversible.
    """
    g = build_delta_graph(d, M, tol)
    try:
        cyc = nx.find_cycle(g.digraph())
    except nx.NetworkXNoCycle:
        return ConditionResult(True)
    return ConditionResult(False, CycleWitness(tuple((a, b) for a, b in cyc), 1))


@dataclass(frozen=True)
class BoundedResult:
    holds: bool
    vacuous: bool
    cycle: CycleWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


def _bounded(g: DeltaGraph, dg: nx.DiGraph, i: str, j: str) -> BoundedResult:
    s = g.sign(i, j)
    if s == 0:
        return BoundedResult(True, True)
    a, b = (i, j) if s > 0 else (j, i)
    try:
        back = nx.shortest_path(dg, b, a)
    except nx.NetworkXNoPath:
        return BoundedResult(False, False)
    path = [a, *back[:-1]]
    cyc = CycleWitness(_close(path), 1)
    if s < 0:
        cyc = CycleWitness(tuple((y, x) for x, y in reversed(cyc.pairs)), -1)
    return BoundedResult(True, False, cyc)


def bounded_in_cycle(d: ChoiceDataset, M, pair: Pair, tol: Tolerances = DEFAULT_TOL) -> BoundedResult:
    i, j = pair
    g = build_delta_graph(d, M, tol)
    if i not in g.menu or j not in g.menu or i == j:
        raise ValueError(f"({i},{j}) is not a pair of distinct members of {g.menu}")
    return _bounded(g, g.digraph(), i, j)


def _unbounded_pairs(g: DeltaGraph) -> list[Pair]:
    dg = g.digraph()
    return [(i, j) for i, j in g.menu.pairs() if not _bounded(g, dg, i, j).holds]


@dataclass(frozen=True)
class PairwiseResult:
    pairwise: bool
    fully: bool
    unbounded: tuple[Pair, ...] = ()
    zero_choices: tuple[tuple[str, str], ...] = ()


def theorem2_condition(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> PairwiseResult:
    """Every pair bounded in a cycle; ``fully`` adds positivity."""
    from .axioms import check_positivity

    g = build_delta_graph(d, M, tol)
    unbounded = tuple(_unbounded_pairs(g))
    pos = check_positivity(d, g.menu, tol)
    pairwise = not unbounded
    return PairwiseResult(pairwise, pairwise and pos.holds, unbounded, pos.witnesses)


def ok_digraph(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> nx.DiGraph:
    """Directions an irreducible rationalizer may use.

    ``i -> j`` is kept when the pair is bounded (or has no odds shift) and
    ``j`` is chosen with positive probability from ``{i, j}``.
    """
    g = build_delta_graph(d, M, tol)
    dg = g.digraph()
    ok = nx.DiGraph()
    ok.add_nodes_from(g.menu)
    for i, j in g.menu.pairs():
        if not _bounded(g, dg, i, j).holds:
            continue
        if binary_share(d, j, i) > tol.eps_delta:
            ok.add_edge(i, j)
        if binary_share(d, i, j) > tol.eps_delta:
            ok.add_edge(j, i)
    return ok


def theorem3_condition(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> ConditionResult:
    """A closed walk over all of ``M`` using only bounded pairs.

    On success the witness is such a walk. On failure ``blocking`` lists
    the unbounded pairs, which is where a covering walk gets stuck.
    """
    M = d.universe.menu(M)
    ok = ok_digraph(d, M, tol)
    if not nx.is_strongly_connected(ok):
        g = build_delta_graph(d, M, tol)
        blocking = tuple(_unbounded_pairs(g))
        if not blocking:
            # disconnected only through zero binary shares
            blocking = tuple(
                (i, j) for i, j in M.pairs() if not (ok.has_edge(i, j) and ok.has_edge(j, i))
            )
        return ConditionResult(False, None, blocking)
    walk = [M.members[0]]
    for target in [*M.members[1:], M.members[0]]:
        if target == walk[-1]:
            continue
        walk.extend(nx.shortest_path(ok, walk[-1], target)[1:])
    walk.pop()
    pairs = _close(walk) if len(walk) > 1 else ()
    return ConditionResult(True, CycleWitness(pairs, None))


@dataclass(frozen=True)
class ClassificationReport:
    """Which exploration-model classes can rationalize the data on a menu.

    ``reversible_only`` means every rationalizer is reversible.
    """

    menu: Menu
    rationalizable_always: bool
    reversible_only: bool
    pairwise: bool
    fully: bool
    irreducible: bool
    luce: bool
    margin: float | None
    edges: dict[Pair, float]
    positive_cycle: CycleWitness | None
    unbounded_pairs: tuple[Pair, ...]
    covering_walk: CycleWitness | None
    irreducible_blocking: tuple[Pair, ...]
    positivity_witnesses: tuple[tuple[str, str], ...]
    iia_max_violation: float

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "rationalizable_always": self.rationalizable_always,
            "reversible_only": self.reversible_only,
            "pairwise": self.pairwise,
            "fully": self.fully,
            "irreducible": self.irreducible,
            "luce": self.luce,
        }

    def to_json(self) -> dict:
        return {
            "menu": list(self.menu),
            "flags": self.flags,
            "margin": self.margin,
            "delta_edges": [{"pair": list(p), "delta": v} for p, v in self.edges.items()],
            "witnesses": {
                "positive_cycle": self.positive_cycle.to_json() if self.positive_cycle else None,
                "unbounded_pairs": [list(p) for p in self.unbounded_pairs],
                "covering_walk": self.covering_walk.to_json() if self.covering_walk else None,
                "irreducible_blocking": [list(p) for p in self.irreducible_blocking],
                "positivity_violations": [list(w) for w in self.positivity_witnesses],
                "iia_max_violation": self.iia_max_violation,
            },
        }


def classify(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> ClassificationReport:
    from .axioms import check_iia

    M = d.universe.menu(M)
    g = build_delta_graph(d, M, tol)
    t1 = theorem1_condition(d, M, tol)
    t2 = theorem2_condition(d, M, tol)
    t3 = theorem3_condition(d, M, tol)
    iia = check_iia(d, M, tol)
    return ClassificationReport(
        menu=M,
        rationalizable_always=True,
        reversible_only=t1.holds,
        pairwise=t2.pairwise,
        fully=t2.fully,
        irreducible=t3.holds,
        luce=not t2.zero_choices and iia.holds,
        margin=g.margin,
        edges=dict(g.edges),
        positive_cycle=t1.witness,
        unbounded_pairs=t2.unbounded,
        covering_walk=t3.witness,
        irreducible_blocking=t3.blocking,
        positivity_witnesses=t2.zero_choices,
        iia_max_violation=iia.max_violation,
    )
