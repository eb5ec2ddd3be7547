"""Domain types: alternatives, menus, choice datasets and exploration models."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "AssumptionReport",
    "ChoiceDataset",
    "Menu",
    "MissingMenuError",
    "ModelBlock",
    "MscModel",
    "StructuralError",
    "Tolerances",
    "Universe",
    "ValidationReport",
    "binary_share",
    "to_fraction",
    "validate_dataset",
    "validate_model",
]


class MissingMenuError(LookupError):
    """A menu needed by a computation is not stored in the dataset or model."""


class StructuralError(ValueError):
    """Shapes or labels of a model block do not match its menu."""


def to_fraction(value) -> Fraction:
    """Exact rational for a decimal string, ``"p/q"`` string, int, Fraction or float.

    Floats go through their shortest round-trip repr, so ``0.28`` becomes 7/25.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return Fraction(int(value))
    return Fraction(repr(float(value)))


@dataclass(frozen=True)
class Tolerances:
    eps_sum: float = 1e-12
    eps_tol: float = 1e-9
    eps_delta: float = 1e-12

    def __post_init__(self):
        if min(self.eps_sum, self.eps_tol, self.eps_delta) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.eps_delta > self.eps_tol:
            raise ValueError("eps_delta must not exceed eps_tol")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Menu:
    """Non-empty set of alternatives, stored in canonical universe order.

    Build menus through :meth:`Universe.menu` so the ordering is canonical.
    """

    members: tuple[str, ...]

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, alt: object) -> bool:
        return alt in self.members

    def position(self, alt: str) -> int:
        try:
            return self.members.index(alt)
        except ValueError:
            raise KeyError(f"{alt!r} is not in menu {self}") from None

    def pairs(self) -> Iterator[tuple[str, str]]:
        """Unordered pairs in canonical order."""
        return combinations(self.members, 2)

    def issubset(self, other: "Menu") -> bool:
        return set(self.members) <= set(other.members)

    def __str__(self) -> str:
        return "{" + ",".join(self.members) + "}"


@dataclass(frozen=True)
class Universe:
    alternatives: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, alternatives: Iterable[str]):
        alts = tuple(alternatives)
        if len(alts) < 2:
            raise ValueError("a universe needs at least two alternatives")
        for a in alts:
            if not isinstance(a, str) or not a:
                raise ValueError(f"alternative identifiers must be non-empty strings, got {a!r}")
        if len(set(alts)) != len(alts):
            raise ValueError("alternative identifiers must be unique")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "_index", {a: k for k, a in enumerate(alts)})

    def __len__(self) -> int:
        return len(self.alternatives)

    def __iter__(self) -> Iterator[str]:
        return iter(self.alternatives)

    def __contains__(self, alt: object) -> bool:
        return alt in self._index

    def index(self, alt: str) -> int:
        try:
            return self._index[alt]
        except KeyError:
            raise KeyError(f"{alt!r} is not in the universe") from None

    def menu(self, members: Iterable[str] | str) -> Menu:
        """Canonical menu; a string is split on commas."""
        if isinstance(members, Menu):
            members = members.members
        if isinstance(members, str):
            members = [m.strip() for m in members.split(",") if m.strip()]
        members = list(members)
        if not members:
            raise ValueError("a menu must be non-empty")
        if len(set(members)) != len(members):
            raise ValueError(f"duplicate alternatives in menu {members}")
        for m in members:
            self.index(m)
        return Menu(tuple(sorted(members, key=self._index.__getitem__)))

    def full_menu(self) -> Menu:
        return Menu(self.alternatives)

    def binary(self, i: str, j: str) -> Menu:
        if i == j:
            raise ValueError(f"{{{i},{j}}} is not a binary menu")
        return self.menu([i, j])


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class ChoiceDataset:
    """Choice probability vectors indexed by menu.

    Each vector is kept both as float64 and as exact rationals; the
    rationals come from decimal strings when supplied that way.
    """

    def __init__(self, universe: Universe, entries: Mapping[Menu | Sequence[str] | str, Sequence]):
        self.universe = universe
        probs: dict[Menu, NDArray[np.float64]] = {}
        exact: dict[Menu, tuple[Fraction, ...]] = {}
        for key, values in entries.items():
            menu = universe.menu(key)
            values = list(values)
            if len(values) != len(menu):
                raise ValueError(
                    f"menu {menu} has {len(menu)} members but {len(values)} probabilities"
                )
            fr = tuple(to_fraction(v) for v in values)
            exact[menu] = fr
            probs[menu] = np.array(
                [float(v) if isinstance(v, (float, np.floating)) else float(f) for v, f in zip(values, fr)],
                dtype=float,
            )
            probs[menu].setflags(write=False)
        self._probs = probs
        self._exact = exact

    @property
    def menus(self) -> list[Menu]:
        return sorted(self._probs, key=lambda m: (len(m), [self.universe.index(a) for a in m]))

    def __contains__(self, menu: object) -> bool:
        return menu in self._probs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChoiceDataset):
            return NotImplemented
        return self.universe == other.universe and self._exact == other._exact

    def __repr__(self) -> str:
        return f"ChoiceDataset({len(self._probs)} menus over {list(self.universe)})"

    def _lookup(self, table, menu):
        menu = self.universe.menu(menu)
        try:
            return table[menu]
        except KeyError:
            raise MissingMenuError(f"menu {menu} is not stored") from None

    def vector(self, menu) -> NDArray[np.float64]:
        return self._lookup(self._probs, menu)

    def exact_vector(self, menu) -> tuple[Fraction, ...]:
        return self._lookup(self._exact, menu)

    def p(self, alt: str, menu, exact: bool = False):
        """Probability of choosing ``alt`` from ``menu``; 0 when ``alt`` is not a member."""
        menu = self.universe.menu(menu)
        vec = self.exact_vector(menu) if exact else self.vector(menu)
        if alt not in menu:
            self.universe.index(alt)
            return Fraction(0) if exact else 0.0
        return vec[menu.position(alt)]

    def replace(self, entries: Mapping) -> "ChoiceDataset":
        """Copy with some menus replaced or added (exact values preserved)."""
        merged: dict = {m: self._exact[m] for m in self._probs}
        for key, values in entries.items():
            merged[self.universe.menu(key)] = values
        return ChoiceDataset(self.universe, merged)


def binary_share(d: ChoiceDataset, i: str, j: str, exact: bool = False):
    """``p(i | {i, j})``."""
    return d.p(i, d.universe.binary(i, j), exact=exact)


def validate_dataset(d: ChoiceDataset, tol: Tolerances = DEFAULT_TOL) -> ValidationReport:
    out: list[str] = []
    for menu in d.menus:
        vec = d.vector(menu)
        for alt, v in zip(menu, vec):
            if not (0.0 <= v <= 1.0) or not np.isfinite(v):
                out.append(f"menu {menu}: p({alt}) = {v} outside [0,1]")
        s = float(np.sum(vec))
        if abs(s - 1.0) > tol.eps_sum:
            out.append(f"menu {menu}: sum {s:.12g} ≠ 1")
        if len(menu) >= 2:
            for i, j in menu.pairs():
                if d.universe.binary(i, j) not in d:
                    out.append(f"menu {menu}: missing binary menu {{{i},{j}}}")
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class ModelBlock:
    """Transition matrix and initial distribution for one menu."""

    menu: Menu
    Q: NDArray[np.float64]
    pi: NDArray[np.float64]

    def __init__(self, menu: Menu, Q, pi):
        Q = np.array(Q, dtype=float)
        pi = np.array(pi, dtype=float)
        Q.setflags(write=False)
        pi.setflags(write=False)
        object.__setattr__(self, "menu", menu)
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "pi", pi)

    def q(self, i: str, j: str) -> float:
        return float(self.Q[self.menu.position(i), self.menu.position(j)])

    def check_shape(self) -> None:
        n = len(self.menu)
        if self.Q.shape != (n, n):
            raise StructuralError(f"menu {self.menu}: Q has shape {self.Q.shape}, expected {(n, n)}")
        if self.pi.shape != (n,):
            raise StructuralError(f"menu {self.menu}: pi has shape {self.pi.shape}, expected {(n,)}")

    def __eq__(self, other):
        if not isinstance(other, ModelBlock):
            return NotImplemented
        return (
            self.menu == other.menu
            and np.array_equal(self.Q, other.Q)
            and np.array_equal(self.pi, other.pi)
        )

    __hash__ = None


class MscModel:
    """Per-menu exploration blocks over a universe."""

    def __init__(self, universe: Universe, blocks: Iterable[ModelBlock] | Mapping, metadata: Mapping | None = None):
        self.universe = universe
        self.metadata = dict(metadata or {})
        if isinstance(blocks, Mapping):
            blocks = [
                b if isinstance(b, ModelBlock) else ModelBlock(universe.menu(k), *b)
                for k, b in blocks.items()
            ]
        self._blocks: dict[Menu, ModelBlock] = {}
        for b in blocks:
            menu = universe.menu(b.menu)
            if menu != b.menu:
                raise StructuralError(f"block menu {b.menu} is not in canonical order")
            self._blocks[menu] = b

    @property
    def menus(self) -> list[Menu]:
        return sorted(self._blocks, key=lambda m: (len(m), [self.universe.index(a) for a in m]))

    def __contains__(self, menu) -> bool:
        return menu in self._blocks

    def block(self, menu) -> ModelBlock:
        menu = self.universe.menu(menu)
        try:
            return self._blocks[menu]
        except KeyError:
            raise MissingMenuError(f"model has no block for menu {menu}") from None

    def blocks(self) -> list[ModelBlock]:
        return [self._blocks[m] for m in self.menus]

    def __eq__(self, other):
        if not isinstance(other, MscModel):
            return NotImplemented
        return self.universe == other.universe and self._blocks == other._blocks

    def __repr__(self) -> str:
        return f"MscModel({[str(m) for m in self.menus]})"


@dataclass(frozen=True)
class AssumptionReport:
    """Per-assumption outcome of :func:`validate_model`.

    ``stochastic`` lists simplex violations, ``prolonged_consideration``
    the (menu, alternative) locations with ``q_ii <= 0``,
    ``binary_comparability`` binary menus with no transition either way,
    ``ratio_consistency`` the (menu, pair) locations breaking transition-ratio
    consistency with the binary block, and ``missing_binary`` the pairs whose
    binary block is absent so consistency could not be checked.
    """

    stochastic: tuple[str, ...] = ()
    prolonged_consideration: tuple[tuple[str, str], ...] = ()
    binary_comparability: tuple[str, ...] = ()
    ratio_consistency: tuple[tuple[str, tuple[str, str]], ...] = ()
    missing_binary: tuple[tuple[str, tuple[str, str]], ...] = ()

    @property
    def a1(self) -> bool:
        return not self.prolonged_consideration

    @property
    def a2(self) -> bool:
        return not self.binary_comparability

    @property
    def a3(self) -> bool:
        return not self.ratio_consistency and not self.missing_binary

    @property
    def ok(self) -> bool:
        return not self.stochastic and self.a1 and self.a2 and self.a3

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        out = list(self.stochastic)
        out += [f"A1 fails: q_{a}{a} = 0 in menu {m}" for m, a in self.prolonged_consideration]
        out += [f"A2 fails: no transition in binary menu {m}" for m in self.binary_comparability]
        out += [f"A3 fails: menu {m}, pair ({i},{j})" for m, (i, j) in self.ratio_consistency]
        out += [f"A3 unverifiable: menu {m} lacks binary block {{{i},{j}}}" for m, (i, j) in self.missing_binary]
        return out


def validate_model(m: MscModel, tol: Tolerances = DEFAULT_TOL) -> AssumptionReport:
    stochastic: list[str] = []
    a1: list = []
    a2: list = []
    a3: list = []
    missing: list = []
    for block in m.blocks():
        block.check_shape()
    for block in m.blocks():
        menu, Q, pi = block.menu, block.Q, block.pi
        if np.any(Q < 0) or np.any(Q > 1) or not np.all(np.isfinite(Q)):
            stochastic.append(f"menu {menu}: Q entries outside [0,1]")
        rows = Q.sum(axis=1)
        for alt, r in zip(menu, rows):
            if abs(r - 1.0) > tol.eps_sum:
                stochastic.append(f"menu {menu}: row {alt} sums to {r:.12g}")
        if np.any(pi < 0) or abs(pi.sum() - 1.0) > tol.eps_sum:
            stochastic.append(f"menu {menu}: pi is not a distribution")
        for k, alt in enumerate(menu):
            if not Q[k, k] > 0:
                a1.append((str(menu), alt))
        if len(menu) == 2 and Q[0, 1] == 0 and Q[1, 0] == 0:
            a2.append(str(menu))
        if len(menu) > 2:
            for i, j in menu.pairs():
                b = m.universe.binary(i, j)
                if b not in m:
                    if block.q(i, j) > 0 or block.q(j, i) > 0:
                        missing.append((str(menu), (i, j)))
                    continue
                bb = m.block(b)
                lhs = bb.q(i, j) * block.q(j, i)
                rhs = bb.q(j, i) * block.q(i, j)
                if abs(lhs - rhs) > tol.eps_tol:
                    a3.append((str(menu), (i, j)))
    return AssumptionReport(tuple(stochastic), tuple(a1), tuple(a2), tuple(a3), tuple(missing))
