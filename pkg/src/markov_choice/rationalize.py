"""Rationalizability engine.

A dataset is generated on a menu by some exploration chain iff a
non-negative vector ``gamma`` over the positive odds-shift pairs solves
``D gamma = 0``. Each column of ``D`` has the form ``c (e_i - e_j)``, so the
system is a circulation problem on the odds-shift digraph. Feasibility is
decided exactly; infeasibility comes with a verified dual certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from .core import (
    DEFAULT_TOL,
    ChoiceDataset,
    Menu,
    ModelBlock,
    MscModel,
    Tolerances,
    binary_share,
)
from .cycles import (
    bounded_in_cycle,
    build_delta_graph,
    delta,
    theorem1_condition,
    theorem2_condition,
    theorem3_condition,
)
from .markov import generate_limiting
from .rational_lp import solve_standard_form

__all__ = [
    "CLASSES",
    "ConstructionError",
    "DesignSystem",
    "FeasibilityResult",
    "NotRationalizable",
    "VerifyResult",
    "build_design_system",
    "construct_irreducible",
    "construct_model",
    "construct_trivial",
    "float_feasibility_status",
    "forced_zero_pairs",
    "rationalize",
    "solve_feasibility",
    "verify_rationalizes",
]

CLASSES = ("any", "reversible", "pairwise", "fully", "irreducible")

STRICT = "strictly_positive"
NONNEG = "nonneg_nonzero"
ONLY_ZERO = "only_zero"


class ConstructionError(ValueError):
    pass


class NotRationalizable(ValueError):
    """Data cannot be generated by the requested model class.

    ``reason`` is a short label, ``witness`` carries the pairs, cycle or
    certificate explaining why.
    """

    def __init__(self, cls: str, reason: str, witness=None, certificate=None):
        super().__init__(f"not rationalizable as {cls}: {reason}")
        self.cls = cls
        self.reason = reason
        self.witness = witness
        self.certificate = certificate


@dataclass(frozen=True)
class DesignSystem:
    """``D`` with one column per positive pair; column ``(i, j)`` holds
    ``+delta/p(j|{i,j})`` at row ``i`` and its negative at row ``j``."""

    menu: Menu
    G: tuple[tuple[str, str], ...]
    D: tuple[tuple[Fraction, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.menu), len(self.G))

    def as_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.D], dtype=float).reshape(self.shape)

    def apply(self, gamma: Sequence[Fraction]) -> list[Fraction]:
        return [sum((a * g for a, g in zip(row, gamma)), Fraction(0)) for row in self.D]

    def row_times(self, z: Sequence[Fraction]) -> list[Fraction]:
        return [
            sum((z[a] * self.D[a][b] for a in range(len(self.menu))), Fraction(0))
            for b in range(len(self.G))
        ]


def build_design_system(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> DesignSystem:
    g = build_delta_graph(d, M, tol)
    M = g.menu
    G = tuple(g.edges)
    D = [[Fraction(0)] * len(G) for _ in M]
    for b, (i, j) in enumerate(G):
        v = delta(d, M, i, j, exact=True) / binary_share(d, j, i, exact=True)
        D[M.position(i)][b] = v
        D[M.position(j)][b] = -v
    return DesignSystem(M, G, tuple(tuple(r) for r in D))


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of one feasibility solve.

    ``status`` grades the best solution available: ``strictly_positive``,
    ``nonneg_nonzero`` or ``only_zero``. ``gamma`` solves the system at the
    requested grade when it does; otherwise ``certificate`` holds ``z`` with
    ``z D >> 0`` (``kind == "gordan"``) or ``z D >= 0``, nonzero
    (``kind == "stiemke"``).
    """

    grade: str
    status: str
    gamma: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None = None
    kind: str | None = None

    @property
    def feasible(self) -> bool:
        return self.gamma is not None

    def to_json(self) -> dict:
        return {
            "grade": self.grade,
            "status": self.status,
            "gamma": [str(v) for v in self.gamma] if self.gamma is not None else None,
            "certificate": (
                {"kind": self.kind, "z": [str(v) for v in self.certificate]}
                if self.certificate is not None
                else None
            ),
        }


def _split_free(rows_T: list[list[Fraction]]) -> list[list[Fraction]]:
    """Columns for ``z = z+ - z-`` given coefficients of ``z``."""
    return [row + [-v for v in row] for row in rows_T]


def _nonneg_lp(sys: DesignSystem):
    """max t  s.t.  D g = 0, sum g = 1, g_b - t - s_b = 0;  variables (g, t, s)."""
    n, m = sys.shape
    nv = 2 * m + 1
    A, b = [], []
    for r in range(n):
        A.append(list(sys.D[r]) + [0] * (m + 1))
        b.append(0)
    A.append([1] * m + [0] * (m + 1))
    b.append(1)
    for k in range(m):
        row = [0] * nv
        row[k] = 1
        row[m] = -1
        row[m + 1 + k] = -1
        A.append(row)
        b.append(0)
    c = [0] * m + [-1] + [0] * m
    res = solve_standard_form(c, A, b)
    if res.status != "optimal":
        return None
    return res.x[:m], res.x[m]


def _gordan(sys: DesignSystem):
    """z with z D >= 1, minimising |z|_1."""
    n, m = sys.shape
    coeff = [[sys.D[a][b] for a in range(n)] for b in range(m)]
    A = [row + [-1 if k == b else 0 for k in range(m)] for b, row in enumerate(_split_free(coeff))]
    c = [1] * (2 * n) + [0] * m
    res = solve_standard_form(c, A, [1] * m)
    if res.status != "optimal":
        return None
    return tuple(res.x[a] - res.x[n + a] for a in range(n))


def _strict_lp(sys: DesignSystem):
    """min sum y  s.t.  D y = -D 1, y >= 0;  gamma = 1 + y."""
    n, m = sys.shape
    A = [list(r) for r in sys.D]
    b = [-sum(r, Fraction(0)) for r in sys.D]
    res = solve_standard_form([1] * m, A, b)
    if res.status != "optimal":
        return None
    return tuple(1 + y for y in res.x)


def _stiemke(sys: DesignSystem):
    """z with w = z D >= 0 and sum w = 1, minimising |z|_1."""
    n, m = sys.shape
    coeff = [[sys.D[a][b] for a in range(n)] for b in range(m)]
    A = [row + [-1 if k == b else 0 for k in range(m)] for b, row in enumerate(_split_free(coeff))]
    A.append([0] * (2 * n) + [1] * m)
    c = [1] * (2 * n) + [0] * m
    res = solve_standard_form(c, A, [0] * m + [1])
    if res.status != "optimal":
        return None
    return tuple(res.x[a] - res.x[n + a] for a in range(n))


def _check_solution(sys: DesignSystem, gamma) -> None:
    if any(v != 0 for v in sys.apply(gamma)):
        raise AssertionError("internal error: gamma does not solve D gamma = 0")


def solve_feasibility(sys: DesignSystem, grade: str = "strict") -> FeasibilityResult:
    """Decide the system at ``grade`` ("nonneg" or "strict") in exact arithmetic.

    nonneg: a gamma >= 0 with unit sum, maximising its smallest entry.
    strict: a gamma with every entry >= 1, minimising the sum.
    """
    if grade not in ("nonneg", "strict"):
        raise ValueError(f"unknown grade {grade!r}")
    n, m = sys.shape
    if m == 0:
        return FeasibilityResult(grade, STRICT, ())
    if grade == "strict":
        gamma = _strict_lp(sys)
        if gamma is not None:
            _check_solution(sys, gamma)
            return FeasibilityResult(grade, STRICT, gamma)
        z = _stiemke(sys)
        w = sys.row_times(z)
        if not (all(v >= 0 for v in w) and any(v > 0 for v in w)):
            raise AssertionError("internal error: Stiemke certificate failed verification")
        status = solve_feasibility(sys, "nonneg").status
        return FeasibilityResult(grade, status, None, z, "stiemke")
    found = _nonneg_lp(sys)
    if found is not None:
        gamma, t = found
        _check_solution(sys, gamma)
        return FeasibilityResult(grade, STRICT if t > 0 else NONNEG, tuple(gamma))
    z = _gordan(sys)
    if z is None or not all(v > 0 for v in sys.row_times(z)):
        raise AssertionError("internal error: Gordan certificate failed verification")
    return FeasibilityResult(grade, ONLY_ZERO, None, z, "gordan")


def float_feasibility_status(sys: DesignSystem, grade: str = "strict", tol: float = 1e-9) -> bool:
    """Floating-point cross-check: is the system feasible at ``grade``?"""
    n, m = sys.shape
    if m == 0:
        return True
    D = sys.as_float()
    opts = {"primal_feasibility_tolerance": tol, "dual_feasibility_tolerance": tol}
    if grade == "strict":
        res = linprog(np.ones(m), A_eq=D, b_eq=np.zeros(n), bounds=[(1, None)] * m,
                      method="highs", options=opts)
    else:
        A = np.vstack([D, np.ones((1, m))])
        b = np.zeros(n + 1)
        b[-1] = 1.0
        res = linprog(np.zeros(m), A_eq=A, b_eq=b, bounds=[(0, None)] * m,
                      method="highs", options=opts)
    return res.status == 0


def forced_zero_pairs(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> set[frozenset[str]]:
    """Pairs every rationalizing chain must leave unconnected on ``M``."""
    g = build_delta_graph(d, M, tol)
    out = set()
    for i, j in g.edges:
        if not bounded_in_cycle(d, g.menu, (i, j), tol).holds:
            out.add(frozenset((i, j)))
    return out


def _binary_block(d: ChoiceDataset, i: str, j: str) -> ModelBlock:
    menu = d.universe.binary(i, j)
    a, b = menu.members
    pa, pb = binary_share(d, a, b, exact=True), binary_share(d, b, a, exact=True)
    half = Fraction(1, 2)
    Q = [[1 - half * pb, half * pb], [half * pa, 1 - half * pa]]
    return ModelBlock(menu, [[float(v) for v in r] for r in Q], [float(pa), float(pb)])


def _assemble(d: ChoiceDataset, M: Menu, qprime: dict, zero: Iterable[frozenset] = ()) -> MscModel:
    zero = set(zero)
    n = len(M)
    Q = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in qprime.items():
        if frozenset((i, j)) not in zero:
            Q[M.position(i)][M.position(j)] = v
    top = max(sum(r) for r in Q)
    if top > 0:
        kappa = Fraction(1, 2) / top
        Q = [[kappa * v for v in r] for r in Q]
    for k in range(n):
        Q[k][k] = 1 - sum(Q[k])
    pi = [float(v) for v in d.exact_vector(M)]
    blocks = [ModelBlock(M, [[float(v) for v in r] for r in Q], pi)]
    if n > 2:
        blocks += [_binary_block(d, i, j) for i, j in M.pairs()]
    return MscModel(d.universe, blocks)


def _qprime(d: ChoiceDataset, sys: DesignSystem, gamma: Sequence) -> dict:
    M = sys.menu
    gpos = {pair: Fraction(gamma[b]) for b, pair in enumerate(sys.G)}
    q = {}
    for i in M:
        for j in M:
            if i == j:
                continue
            if (i, j) in gpos:
                q[(i, j)] = gpos[(i, j)]
            elif (j, i) in gpos:
                q[(i, j)] = gpos[(j, i)] * binary_share(d, j, i, exact=True) / binary_share(d, i, j, exact=True)
            else:
                q[(i, j)] = binary_share(d, j, i, exact=True)
    return q


def construct_model(
    d: ChoiceDataset, M, gamma: Sequence | None = None, tol: Tolerances = DEFAULT_TOL,
    sys: DesignSystem | None = None,
) -> MscModel:
    """Chain on ``M`` (plus binary blocks) built from a solution ``gamma``.

    Off-diagonal weights are ``gamma`` on positive pairs, ``gamma`` times
    the binary odds on their reversals and the binary share elsewhere;
    all are scaled so the largest row mass is 1/2 and the diagonal takes
    the rest. The initial law is the data itself, which is invariant.
    """
    M = d.universe.menu(M)
    sys = sys or build_design_system(d, M, tol)
    if gamma is None:
        gamma = [Fraction(0)] * len(sys.G)
    gamma = [Fraction(g) if not isinstance(g, float) else Fraction(repr(g)) for g in gamma]
    if len(gamma) != len(sys.G) or any(g < 0 for g in gamma) or any(v != 0 for v in sys.apply(gamma)):
        raise ConstructionError("gamma is not a non-negative solution of the design system")
    model = _assemble(d, M, _qprime(d, sys, gamma))
    _self_check(model, d, M, tol)
    return model


def _self_check(model: MscModel, d: ChoiceDataset, M: Menu, tol: Tolerances) -> None:
    from .core import validate_model

    rep = validate_model(model, tol)
    if not rep.ok:
        raise ConstructionError("constructed model breaks assumptions: " + "; ".join(rep.lines()))
    ver = verify_rationalizes(model, d, [M], tol)
    if not ver.holds:
        raise ConstructionError(f"constructed model misses the data by {ver.max_deviation:.3g}")


def construct_trivial(d: ChoiceDataset) -> MscModel:
    """Stay-put chains started at the data on every menu of size three or more.

    Binary menus get the half-share chain, since a binary block must move.
    """
    blocks = []
    for M in d.menus:
        if len(M) == 2:
            blocks.append(_binary_block(d, *M.members))
        elif len(M) == 1:
            blocks.append(ModelBlock(M, [[1.0]], [1.0]))
        else:
            blocks.append(ModelBlock(M, np.eye(len(M)), d.vector(M)))
    return MscModel(d.universe, blocks)


def construct_irreducible(d: ChoiceDataset, M, tol: Tolerances = DEFAULT_TOL) -> MscModel:
    """Irreducible chain reproducing the data on ``M``.

    Binary shares of the forced-zero pairs are replaced by the menu odds,
    which removes their odds shift; the adjusted data is rationalized with a
    strict solution and the forced pairs are then disconnected again.
    """
    M = d.universe.menu(M)
    t3 = theorem3_condition(d, M, tol)
    if not t3.holds:
        raise NotRationalizable("irreducible", "no covering walk over bounded pairs",
                                witness=t3.blocking)
    forced = forced_zero_pairs(d, M, tol)
    adjusted = {}
    for pair in forced:
        k, l = d.universe.binary(*pair).members
        pk, pl = d.p(k, M, exact=True), d.p(l, M, exact=True)
        adjusted[(k, l)] = (pk / (pk + pl), pl / (pk + pl))
    dstar = d.replace(adjusted)
    sys = build_design_system(dstar, M, tol)
    res = solve_feasibility(sys, "strict")
    if not res.feasible:
        raise ConstructionError("adjusted data has no strict solution")
    model = _assemble(d, M, _qprime(dstar, sys, res.gamma), zero=forced)
    _self_check(model, d, M, tol)
    return model


@dataclass(frozen=True)
class VerifyResult:
    holds: bool
    max_deviation: float
    per_menu: dict[str, float]


def verify_rationalizes(
    model: MscModel, d: ChoiceDataset, menus=None, tol: Tolerances = DEFAULT_TOL
) -> VerifyResult:
    menus = d.menus if menus is None else [d.universe.menu(m) for m in menus]
    per = {}
    for M in menus:
        b = model.block(M)
        per[str(M)] = float(np.max(np.abs(generate_limiting(b.Q, b.pi) - d.vector(M))))
    worst = max(per.values(), default=0.0)
    return VerifyResult(worst <= tol.eps_tol, worst, per)


def rationalize(d: ChoiceDataset, M, cls: str = "any", tol: Tolerances = DEFAULT_TOL) -> MscModel:
    """Model of class ``cls`` rationalizing the data on ``M``.

    ``reversible`` succeeds only when every rationalizer must be
    reversible. Raises :class:`NotRationalizable` with a witness otherwise.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")
    M = d.universe.menu(M)
    if cls == "irreducible":
        return construct_irreducible(d, M, tol)
    sys = build_design_system(d, M, tol)
    if cls == "reversible":
        t1 = theorem1_condition(d, M, tol)
        if not t1.holds:
            raise NotRationalizable("reversible", "a cycle of positive odds shifts admits "
                                    "non-reversible rationalizers", witness=t1.witness)
        # acyclic positive pairs leave gamma = 0 as the only solution
        return construct_model(d, M, None, tol, sys)
    if cls == "any":
        res = solve_feasibility(sys, "nonneg")
        return construct_model(d, M, res.gamma, tol, sys)
    t2 = theorem2_condition(d, M, tol)
    res = solve_feasibility(sys, "strict")
    if not res.feasible:
        raise NotRationalizable(cls, "some pair is not bounded in a cycle",
                                witness=t2.unbounded, certificate=res)
    if cls == "fully" and not t2.fully:
        raise NotRationalizable(cls, "a choice probability is zero", witness=t2.zero_choices)
    return construct_model(d, M, res.gamma, tol, sys)
