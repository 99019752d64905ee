"""Independent oracles used to pin expected values.

Everything here recomputes results by a different route than the package:
brute-force enumeration, direct definitional sums, textbook linear algebra.
Oracles must stay independent of the code paths they check.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from gramlab.arith import Grid, Poly


def pointwise_inner_product(f: Poly, g: Poly, points) -> Fraction:
    """Definitional uniform-average bilinear form: explicit sum over points."""
    total = Fraction(0)
    for x in points:
        total += f(x) * g(x)
    return total / len(points)


def lagrange_interpolate(xs, ys) -> Poly:
    """Interpolation by the explicit Lagrange formula (vs Newton in-package)."""
    out = Poly.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Poly.one()
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly((-xj, Fraction(1)))
                denom *= xi - xj
        out = out + basis * (yi / denom)
    return out


def brute_hypergeometric(n: int, k: int, m: int, w: int) -> Fraction:
    """P[w ones in the first k bits | weight-m string], by counting strings."""
    if not 0 <= m <= n:
        raise ValueError("bad weight")
    hits = 0
    for ones in combinations(range(n), m):
        if sum(1 for b in ones if b < k) == w:
            hits += 1
    return Fraction(hits, comb(n, m))


def solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Exact Gaussian elimination; None when the system is singular."""
    size = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(size):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][-1] for r in range(size)]


def brute_lp_max_eq(objective, a_eq, b_eq) -> Fraction:
    """Exact optimum of max c.x s.t. A x = b, x >= 0, by vertex enumeration.

    Tries every choice of basis columns; assumes the optimum is attained
    (true for the bounded feasible instances it is used on).
    """
    nrows = len(a_eq)
    ncols = len(objective)
    best: Fraction | None = None
    for cols in combinations(range(ncols), nrows):
        sub = [[a_eq[r][c] for c in cols] for r in range(nrows)]
        sol = solve_square(sub, list(b_eq))
        if sol is None or any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * ncols
        for c, v in zip(cols, sol):
            x[c] = v
        value = sum((ci * xi for ci, xi in zip(objective, x)), Fraction(0))
        if best is None or value > best:
            best = value
    if best is None:
        raise AssertionError("oracle found no feasible vertex")
    return best


def brute_minimax_error(target: Poly, grid: Grid, deg: int) -> Fraction:
    """Best max-error of degree <= deg approximations on the grid.

    Alternation oracle: on a finite grid the optimal error equals the
    largest |level| over all (deg+2)-point subsets of the linear system
    q(t_i) + (-1)^i e = f(t_i). Levels of non-extremal subsets are smaller
    in magnitude, so the max is the optimum.
    """
    pts = list(grid.points)
    if len(pts) <= deg + 1:
        return Fraction(0)
    best = Fraction(0)
    for subset in combinations(pts, deg + 2):
        rows = []
        rhs = []
        for i, t in enumerate(subset):
            rows.append([t**p for p in range(deg + 1)] + [Fraction((-1) ** i)])
            rhs.append(target(t))
        sol = solve_square(rows, rhs)
        if sol is None:
            continue
        level = abs(sol[-1])
        if level > best:
            best = level
    return best


def restricted_pmf(weight_pmf, n: int, subset) -> dict[tuple[int, ...], Fraction]:
    """Marginal of a symmetric distribution on a coordinate subset, from the
    full 2^n string expansion."""
    out: dict[tuple[int, ...], Fraction] = {}
    for mask in range(1 << n):
        weight = mask.bit_count()
        p = weight_pmf[weight] / comb(n, weight)
        if p:
            pattern = tuple((mask >> b) & 1 for b in subset)
            out[pattern] = out.get(pattern, Fraction(0)) + p
    return out
