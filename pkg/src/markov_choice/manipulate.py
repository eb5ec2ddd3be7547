"""Choice-architecture interventions on an exploration chain.

Comparability restrictions cut or rescale direct transitions between
pairs while keeping the reachable sets intact; initial-fixation changes
move the starting law; a decoy is a third option the target cannot
reach directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .core import DEFAULT_TOL, Menu, ModelBlock, MscModel, Tolerances, validate_model
from .markov import generate_finite, generate_limiting, scc_decompose

__all__ = [
    "DecoyPatternError",
    "DecoyReport",
    "InitialRobustness",
    "InvalidRestriction",
    "NudgeReport",
    "Restriction",
    "RestrictionRobustness",
    "apply_restriction",
    "decoy_analysis",
    "enumerate_strict_restrictions",
    "nudge_initial_finite",
    "robustness_to_initial",
    "robustness_to_restrictions",
    "sample_weak_restrictions",
]


class InvalidRestriction(ValueError):
    """The restricted matrix is not an admissible chain for this block."""


@dataclass(frozen=True)
class Restriction:
    """Symmetric multiplicative factors on off-diagonal transitions.

    ``factors`` maps unordered pairs to their factor; unlisted pairs get
    ``default``. A strict restriction uses only 0 and ``default``.
    """

    menu: Menu
    factors: Mapping[frozenset, float] = field(default_factory=dict)
    default: float = 1.0
    kind: str = "strict"

    def __post_init__(self):
        if self.kind not in ("strict", "weak"):
            raise ValueError(f"unknown restriction kind {self.kind!r}")
        if self.default <= 0:
            raise ValueError("the common scaling factor must be positive")
        for pair, f in self.factors.items():
            if len(pair) != 2 or not set(pair) <= set(self.menu):
                raise ValueError(f"{set(pair)} is not a pair of menu members")
            if f < 0:
                raise ValueError("restriction factors must be non-negative")
            if self.kind == "strict" and f not in (0, self.default):
                raise ValueError("strict restrictions only zero pairs or apply the common factor")

    @classmethod
    def strict(cls, menu: Menu, zeroed: Iterable[Iterable[str]], c: float = 1.0) -> "Restriction":
        return cls(menu, {frozenset(p): 0.0 for p in zeroed}, float(c), "strict")

    @classmethod
    def weak(cls, menu: Menu, factors: Mapping, default: float = 1.0) -> "Restriction":
        return cls(menu, {frozenset(p): float(f) for p, f in factors.items()}, float(default), "weak")

    def matrix(self) -> np.ndarray:
        n = len(self.menu)
        R = np.full((n, n), self.default)
        for pair, f in self.factors.items():
            a, b = (self.menu.position(x) for x in pair)
            R[a, b] = R[b, a] = f
        np.fill_diagonal(R, 0.0)
        return R

    def describe(self) -> str:
        parts = [f"r_{''.join(sorted(p, key=self.menu.position))}={f:g}" for p, f in self.factors.items()]
        return f"{self.kind}[{', '.join(parts) or 'none'}; others={self.default:g}]"


def apply_restriction(block: ModelBlock, r: Restriction, tol: Tolerances = DEFAULT_TOL) -> ModelBlock:
    """Scale off-diagonals by ``r`` and let the diagonal absorb the difference."""
    if r.menu != block.menu:
        raise ValueError(f"restriction is for menu {r.menu}, block is for {block.menu}")
    Q = block.Q * r.matrix()
    diag = 1.0 - Q.sum(axis=1)
    bad = [a for a, v in zip(block.menu, diag) if not v > 0]
    if bad:
        raise InvalidRestriction(f"diagonal would vanish for {', '.join(bad)}")
    np.fill_diagonal(Q, diag)
    if not scc_decompose(Q).same_structure(scc_decompose(block.Q)):
        raise InvalidRestriction("communicating classes change")
    return ModelBlock(block.menu, Q, block.pi)


def enumerate_strict_restrictions(
    block: ModelBlock, scales=(0.5, 1.0, 1.5), tol: Tolerances = DEFAULT_TOL
) -> list[Restriction]:
    """Valid restrictions that zero one connected pair and rescale the rest."""
    out = []
    n = len(block.menu)
    for a, b in combinations(range(n), 2):
        if block.Q[a, b] == 0 and block.Q[b, a] == 0:
            continue
        pair = (block.menu.members[a], block.menu.members[b])
        for c in scales:
            r = Restriction.strict(block.menu, [pair], c)
            try:
                apply_restriction(block, r, tol)
            except InvalidRestriction:
                continue
            out.append(r)
    return out


def sample_weak_restrictions(
    block: ModelBlock, k: int = 50, seed: int = 0, zero_prob: float = 0.25, max_tries: int = 100_000,
    tol: Tolerances = DEFAULT_TOL,
) -> list[Restriction]:
    """``k`` valid random restrictions with factors drawn from [0, 2]."""
    rng = np.random.default_rng(seed)
    pairs = list(block.menu.pairs())
    out = []
    tries = 0
    while len(out) < k and tries < max_tries:
        tries += 1
        f = rng.uniform(0.0, 2.0, len(pairs))
        f[rng.random(len(pairs)) < zero_prob] = 0.0
        r = Restriction.weak(block.menu, dict(zip(pairs, f)))
        try:
            apply_restriction(block, r, tol)
        except InvalidRestriction:
            continue
        out.append(r)
    return out


@dataclass(frozen=True)
class RestrictionRobustness:
    holds: bool
    tested: int
    max_change: float
    counterexample: Restriction | None = None


def robustness_to_restrictions(
    block: ModelBlock,
    scope: str = "strict_single_pair",
    k: int = 50,
    seed: int = 0,
    extra: Iterable[Restriction] = (),
    tol: Tolerances = DEFAULT_TOL,
) -> RestrictionRobustness:
    """Does the limiting choice survive every tested restriction?

    ``scope`` is ``"strict_single_pair"`` (exhaustive) or ``"weak"``
    (``k`` samples). ``extra`` restrictions are tested too when valid.
    """
    if scope == "strict_single_pair":
        rs = enumerate_strict_restrictions(block, tol=tol)
    elif scope == "weak":
        rs = sample_weak_restrictions(block, k, seed, tol=tol)
    else:
        raise ValueError(f"unknown scope {scope!r}")
    base = generate_limiting(block.Q, block.pi)
    worst, culprit, tested = 0.0, None, 0
    for r in [*extra, *rs]:
        try:
            nb = apply_restriction(block, r, tol)
        except InvalidRestriction:
            continue
        tested += 1
        change = float(np.max(np.abs(generate_limiting(nb.Q, nb.pi) - base)))
        if change > worst:
            worst, culprit = change, r
    holds = worst <= tol.eps_tol
    return RestrictionRobustness(holds, tested, worst, None if holds else culprit)


@dataclass(frozen=True)
class InitialRobustness:
    holds: bool
    max_spread: float


def robustness_to_initial(
    block: ModelBlock, k: int = 20, seed: int = 0, tol: Tolerances = DEFAULT_TOL
) -> InitialRobustness:
    """Limiting choice under ``k`` random and all point-mass starting laws."""
    n = len(block.menu)
    rng = np.random.default_rng(seed)
    starts = [*np.eye(n), *rng.dirichlet(np.ones(n), size=k)]
    lims = np.array([generate_limiting(block.Q, p) for p in starts])
    spread = float(np.max(lims.max(axis=0) - lims.min(axis=0)))
    return InitialRobustness(spread <= tol.eps_tol, spread)


@dataclass(frozen=True)
class DecoyReport:
    """Effect of adding decoy ``k`` to the pair of target ``i`` and competitor ``j``."""

    target: str
    competitor: str
    decoy: str
    rho_pair: float
    rho_triple: float
    ratio_pair: float
    ratio_triple: float
    relative_ratio_increase: bool
    absolute_increase: bool
    condition_q_ki_gt_q_ji: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


class DecoyPatternError(ValueError):
    pass


def decoy_analysis(model: MscModel, triple, tol: Tolerances = DEFAULT_TOL) -> DecoyReport:
    """Target ``i``, competitor ``j``, decoy ``k``: ``i`` never moves to ``k``.

    Every other transition in the triple must be positive.
    """
    i, j, k = triple
    U = model.universe
    rep = validate_model(model, tol)
    # binary blocks other than {i,j} and {i,k} are not needed here
    if rep.stochastic or not rep.a1 or not rep.a2 or rep.ratio_consistency:
        raise DecoyPatternError("model breaks its assumptions: " + "; ".join(rep.lines()))
    tb = model.block(U.menu([i, j, k]))
    pb = model.block(U.binary(i, j))
    if tb.q(i, k) != 0:
        raise DecoyPatternError(f"target {i} must not transition to decoy {k} in the triple")
    if U.binary(i, k) in model:
        _require(model.block(U.binary(i, k)).q(i, k) == 0,
                 f"target {i} must not transition to decoy {k} in the binary menu")
    for a, b in [(i, j), (j, i), (j, k), (k, j), (k, i)]:
        _require(tb.q(a, b) > 0, f"transition {a}->{b} must be positive in the triple")
    _require(pb.q(i, j) > 0 and pb.q(j, i) > 0, "binary target/competitor transitions must be positive")
    rp = generate_limiting(pb.Q, pb.pi)
    rt = generate_limiting(tb.Q, tb.pi)
    pi_, pj_ = rp[pb.menu.position(i)], rp[pb.menu.position(j)]
    ti, tj = rt[tb.menu.position(i)], rt[tb.menu.position(j)]
    return DecoyReport(
        target=i, competitor=j, decoy=k,
        rho_pair=float(pi_), rho_triple=float(ti),
        ratio_pair=float(pi_ / pj_), ratio_triple=float(ti / tj),
        relative_ratio_increase=bool(ti / tj > pi_ / pj_),
        absolute_increase=bool(ti - pi_ > tol.eps_delta),
        condition_q_ki_gt_q_ji=bool(tb.q(k, i) > tb.q(j, i)),
    )


def _require(ok: bool, msg: str) -> None:
    if not ok:
        raise DecoyPatternError(msg)


@dataclass(frozen=True)
class NudgeReport:
    """Finite-horizon choice under each point-mass start.

    ``table[s]`` is the choice vector when the search starts at ``s``.
    """

    menu: Menu
    alpha: float
    target: str
    table: dict[str, np.ndarray]
    strict_maximum: bool

    def target_share(self, start: str) -> float:
        return float(self.table[start][self.menu.position(self.target)])

    def to_json(self) -> dict:
        return {
            "menu": list(self.menu),
            "alpha": self.alpha,
            "target": self.target,
            "table": {s: [float(v) for v in vec] for s, vec in self.table.items()},
            "strict_maximum": self.strict_maximum,
        }


def nudge_initial_finite(block: ModelBlock, alpha: float, target: str) -> NudgeReport:
    menu = block.menu
    t = menu.position(target)
    n = len(menu)
    table = {s: generate_finite(block.Q, np.eye(n)[a], alpha) for a, s in enumerate(menu)}
    own = table[target][t]
    strict = all(own > table[s][t] for s in menu if s != target)
    return NudgeReport(menu, float(alpha), target, table, bool(strict))
