"""Exact two-phase simplex over rationals with Bland's anti-cycling rule.

The solver handles the two LP shapes used in this package: minimax
approximation (free variables, inequality rows) and extremal distribution
pairs (nonnegative variables, equality rows). Everything is dense and
exact; the instances are at most a few hundred constraints, so the dense
tableau is the right tool and there are no conditioning concerns.

Free variables are split into differences of nonnegatives, rows are
normalized to nonnegative right-hand sides, and phase 1 minimizes the sum
of artificial variables from an all-slack/artificial starting basis.
Bland's smallest-index rule is used for both the entering and the leaving
choice, which guarantees termination. Failure modes that the callers have
ruled out (infeasible, unbounded) raise SimplexError; they are never
silently absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .arith import as_rational
from .exceptions import SimplexError


class Rel(Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


@dataclass
class LinearProgram:
    """max (or min) objective . x subject to rows; x_j >= 0 unless j in free."""

    num_vars: int
    objective: Sequence
    maximize: bool = False
    free: frozenset[int] = frozenset()
    rows: list[tuple[tuple[Fraction, ...], Rel, Fraction]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length must equal num_vars")
        self.objective = tuple(as_rational(c) for c in self.objective)
        self.free = frozenset(self.free)

    def add(self, coeffs: Sequence, rel: Rel, rhs) -> None:
        if len(coeffs) != self.num_vars:
            raise ValueError("constraint length must equal num_vars")
        self.rows.append((tuple(as_rational(c) for c in coeffs), rel, as_rational(rhs)))


@dataclass(frozen=True)
class LPSolution:
    x: tuple[Fraction, ...]
    value: Fraction


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    if piv == 0:
        raise SimplexError("pivot on a zero element")
    if piv != 1:
        tab[row] = [v / piv for v in tab[row]]
    prow = tab[row]
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            tab[i] = [a - f * b if b else a for a, b in zip(r, prow)]
    basis[row] = col


_STALL_LIMIT = 40


def _optimize(
    tab: list[list[Fraction]],
    basis: list[int],
    reduced: list[Fraction],
    obj: Fraction,
    ncols: int,
) -> Fraction:
    """Minimize; mutates tableau/basis/reduced costs in place.

    Entering variable: most negative reduced cost (smallest index on ties),
    which keeps pivot counts low. Any run of _STALL_LIMIT consecutive
    degenerate pivots switches permanently to Bland's smallest-index rule,
    whose termination guarantee rules out cycling; nondegenerate pivots
    strictly decrease the objective, so the whole loop is finite.
    """
    stalled = 0
    bland = False
    while True:
        enter = -1
        if bland:
            for j in range(ncols):
                if reduced[j] < 0:
                    enter = j
                    break
        else:
            most_negative = _ZERO
            for j in range(ncols):
                rj = reduced[j]
                if rj < most_negative:
                    most_negative = rj
                    enter = j
        if enter < 0:
            return obj
        leave = -1
        best_t = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                t = row[-1] / a
                if best_t is None or t < best_t or (t == best_t and basis[i] < basis[leave]):
                    best_t = t
                    leave = i
        if leave < 0:
            raise SimplexError("objective unbounded")
        if best_t == 0:
            stalled += 1
            if stalled >= _STALL_LIMIT:
                bland = True
        else:
            stalled = 0
            obj += reduced[enter] * best_t
        _pivot(tab, basis, leave, enter)
        prow = tab[leave]
        f = reduced[enter]
        for j in range(ncols):
            b = prow[j]
            if b:
                reduced[j] -= f * b


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve exactly; raises SimplexError on infeasible or unbounded input."""
    # Structural columns: free variables become (plus, minus) pairs.
    col_of: list[tuple[int, int]] = []
    n_struct = 0
    for j in range(lp.num_vars):
        if j in lp.free:
            col_of.append((n_struct, n_struct + 1))
            n_struct += 2
        else:
            col_of.append((n_struct, -1))
            n_struct += 1

    normalized: list[tuple[tuple[Fraction, ...], Rel, Fraction]] = []
    for coeffs, rel, rhs in lp.rows:
        if rhs < 0:
            coeffs = tuple(-c for c in coeffs)
            rhs = -rhs
            rel = {Rel.LE: Rel.GE, Rel.GE: Rel.LE, Rel.EQ: Rel.EQ}[rel]
        normalized.append((coeffs, rel, rhs))

    n_slack = sum(1 for _, rel, _ in normalized if rel is not Rel.EQ)
    n_art = sum(1 for _, rel, _ in normalized if rel is not Rel.LE)
    n_real = n_struct + n_slack
    width = n_real + n_art + 1  # + rhs column

    tab: list[list[Fraction]] = []
    basis: list[int] = []
    slack_at = n_struct
    art_at = n_real
    for coeffs, rel, rhs in normalized:
        row = [_ZERO] * width
        for j, c in enumerate(coeffs):
            if c:
                p, m = col_of[j]
                row[p] += c
                if m >= 0:
                    row[m] -= c
        row[-1] = rhs
        if rel is Rel.LE:
            row[slack_at] = _ONE
            basis.append(slack_at)
            slack_at += 1
        elif rel is Rel.GE:
            row[slack_at] = -_ONE
            slack_at += 1
            row[art_at] = _ONE
            basis.append(art_at)
            art_at += 1
        else:
            row[art_at] = _ONE
            basis.append(art_at)
            art_at += 1
        tab.append(row)

    ncols = width - 1
    if n_art:
        # Phase 1: minimize the artificial total. Reduced costs start as
        # -(sum of rows with an artificial basis), objective as that total.
        reduced = [_ZERO] * ncols
        obj = _ZERO
        for i, b in enumerate(basis):
            if b >= n_real:
                for j in range(ncols):
                    v = tab[i][j]
                    if v:
                        reduced[j] -= v
                obj += tab[i][-1]
        for j in range(n_real, ncols):
            reduced[j] += _ONE
        obj = _optimize(tab, basis, reduced, obj, ncols)
        if obj != 0:
            raise SimplexError("infeasible system")
        # Drive leftover zero-valued artificials out of the basis, dropping
        # rows that turn out to be redundant.
        keep: list[int] = []
        for i in range(len(tab)):
            if basis[i] >= n_real:
                enter = -1
                for j in range(n_real):
                    if tab[i][j]:
                        enter = j
                        break
                if enter < 0:
                    continue  # redundant row
                _pivot(tab, basis, i, enter)
            keep.append(i)
        tab = [tab[i][:n_real] + [tab[i][-1]] for i in keep]
        basis = [basis[i] for i in keep]

    # Phase 2 on the real objective (in minimization form).
    sign = Fraction(-1) if lp.maximize else Fraction(1)
    cost = [_ZERO] * n_real
    for j, c in enumerate(lp.objective):
        if c:
            p, m = col_of[j]
            cost[p] += sign * c
            if m >= 0:
                cost[m] -= sign * c
    reduced = list(cost)
    obj = _ZERO
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            for j in range(n_real):
                v = tab[i][j]
                if v:
                    reduced[j] -= cb * v
            obj += cb * tab[i][-1]
    _optimize(tab, basis, reduced, obj, n_real)

    vals = [_ZERO] * n_real
    for i, b in enumerate(basis):
        vals[b] = tab[i][-1]
    x = []
    for j in range(lp.num_vars):
        p, m = col_of[j]
        x.append(vals[p] - vals[m] if m >= 0 else vals[p])
    value = sum((c * v for c, v in zip(lp.objective, x)), _ZERO)
    return LPSolution(tuple(x), value)
