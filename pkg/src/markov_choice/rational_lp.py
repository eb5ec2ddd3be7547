"""Exact two-phase simplex over the rationals.

Solves ``min c.x  s.t.  A x = b, x >= 0`` with :class:`fractions.Fraction`
arithmetic and Bland's rule, which cannot cycle. Dimensions here are tiny
(a handful of rows, a few dozen columns), so a dense tableau is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LpResult", "solve_standard_form"]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        piv = row[col]
        if piv != ONE:
            self.rows[r] = row = [v / piv for v in row]
            self.rhs[r] /= piv
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[col]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(other, row)]
                self.rhs[k] -= f * self.rhs[r]
        self.basis[r] = col

    def minimize(self, cost: Sequence[Fraction], allowed: int) -> str:
        """Run simplex on columns ``< allowed``; returns "optimal" or "unbounded"."""
        while True:
            reduced = self._reduced_costs(cost, allowed)
            entering = next((j for j in range(allowed) if reduced[j] < 0), None)
            if entering is None:
                return "optimal"
            best, leave = None, None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    if best is None or ratio < best or (ratio == best and self.basis[r] < self.basis[leave]):
                        best, leave = ratio, r
            if leave is None:
                return "unbounded"
            self.pivot(leave, entering)

    def _reduced_costs(self, cost, allowed):
        red = list(cost[:allowed])
        for r, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[r]
                for j in range(allowed):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red

    def solution(self, n: int) -> list[Fraction]:
        x = [ZERO] * n
        for r, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[r]
        return x


def solve_standard_form(
    c: Sequence, A: Sequence[Sequence], b: Sequence
) -> LpResult:
    """Minimise ``c.x`` subject to ``A x = b`` and ``x >= 0``, exactly."""
    c = [Fraction(v) for v in c]
    n = len(c)
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    if any(len(r) != n for r in rows) or len(rhs) != len(rows):
        raise ValueError("inconsistent LP dimensions")
    m = len(rows)
    for r in range(m):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
    # phase 1: one artificial column per row
    for r in range(m):
        rows[r] = rows[r] + [ONE if k == r else ZERO for k in range(m)]
    tab = _Tableau(rows, rhs, [n + r for r in range(m)])
    phase1_cost = [ZERO] * n + [ONE] * m
    tab.minimize(phase1_cost, n + m)
    if sum(tab.rhs[r] for r in range(m) if tab.basis[r] >= n) > 0:
        return LpResult("infeasible")
    # drive zero-level artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:n] for row in tab.rows]
    status = tab.minimize(c, n)
    if status == "unbounded":
        return LpResult("unbounded")
    x = tab.solution(n)
    return LpResult("optimal", tuple(x), sum((ci * xi for ci, xi in zip(c, x)), ZERO))
