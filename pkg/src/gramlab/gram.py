"""Monic Gram (discrete Chebyshev) polynomial bases over the interior grid.

The Gram family for parameter n is the sequence of polynomials orthogonal
under the uniform-average inner product on the n-point interior grid. The
textbook family is normalized to unit norm, which forces irrational
coefficients; to keep the whole pipeline rational we carry the *monic*
family psi_0, psi_1, ... together with the exact squared norms
N_d = (psi_d, psi_d). Everything usually phrased about the unit-norm family
is carried as an exact square: a polynomial with monic-basis coefficients
a_d has unit-basis coefficient squares a_d**2 * N_d.

Two independent constructions are provided. `build_basis_gs` runs exact
Gram-Schmidt on the monomials and is the ground truth. `build_basis_recurrence`
uses the three-term recurrence

    psi_d = x * psi_{d-1} - (N_{d-1} / N_{d-2}) * psi_{d-2}

where the norm ratio has the closed form N_{d-1}/N_{d-2} = 1 / (4 * alpha_sq(n, d-1)).
The two must agree coefficient-for-coefficient; the test suite pins that.

Inner products inside the builders are evaluated through precomputed power
sums of the grid (exactly the same bilinear form, just factored through the
monomial basis), which turns basis construction from cubic-in-n work into
cubic-in-degree work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .arith import Grid, GridKind, Poly, grid_points
from .exceptions import ConsistencyError


@dataclass(frozen=True)
class OrthoBasis:
    """Monic orthogonal family psi_0..psi_max_deg with exact squared norms."""

    n: int
    max_deg: int
    psi: tuple[Poly, ...]
    norm_sq: tuple[Fraction, ...]


@dataclass(frozen=True)
class GramExpansion:
    """Coefficients of a polynomial in a monic orthogonal basis.

    psi_coeffs[d] multiplies psi_d; normalized_coeff_sq[d] is the square of
    the corresponding unit-norm-basis coefficient, psi_coeffs[d]**2 * N_d.
    """

    basis: OrthoBasis
    psi_coeffs: tuple[Fraction, ...]
    normalized_coeff_sq: tuple[Fraction, ...]

    def reconstruct(self) -> Poly:
        out = Poly.zero()
        for a, psi in zip(self.psi_coeffs, self.basis.psi):
            if a:
                out = out + a * psi
        return out


def alpha_sq(n: int, d: int) -> Fraction:
    """Square of the recurrence factor for step d: n^2 (d^2 - 1/4) / (d^2 (n^2 - d^2)).

    Defined for 1 <= d <= n - 1; the formula is singular at d = 0 and d = n.
    """
    if not 1 <= d <= n - 1:
        raise ValueError(f"alpha_sq requires 1 <= d <= n-1, got d={d}, n={n}")
    return Fraction(n * n * (4 * d * d - 1), 4 * d * d * (n * n - d * d))


def _check_basis_args(n: int, max_deg: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= max_deg <= n - 1:
        raise ValueError(
            f"max_deg must satisfy 0 <= max_deg <= n-1 (only {n} grid points); got {max_deg}"
        )


def _monomial_moments(n: int, top: int) -> list[Fraction]:
    """moments[r] = (1/n) * sum of x**r over the n-point interior grid, r = 0..top."""
    pts = grid_points(GridKind.IN, n).points
    sums = [Fraction(0)] * (top + 1)
    for x in pts:
        p = Fraction(1)
        for r in range(top + 1):
            sums[r] += p
            p *= x
    return [s / n for s in sums]


def _ip_with_monomials(coeffs: list[Fraction], moments: list[Fraction], top: int) -> list[Fraction]:
    """Inner products of a polynomial (given by coeffs) with 1, x, ..., x**top."""
    out = []
    for r in range(top + 1):
        acc = Fraction(0)
        for s, c in enumerate(coeffs):
            if c:
                acc += c * moments[s + r]
        out.append(acc)
    return out


def _quadratic_form(coeffs: list[Fraction], moments: list[Fraction]) -> Fraction:
    """(p, p) under the interior-grid inner product, via the moment table."""
    acc = Fraction(0)
    for r, cr in enumerate(coeffs):
        if not cr:
            continue
        for s, cs in enumerate(coeffs):
            if cs:
                acc += cr * cs * moments[r + s]
    return acc


def build_basis_gs(n: int, max_deg: int) -> OrthoBasis:
    """Exact Gram-Schmidt on {1, x, x^2, ...} under the interior-grid form.

    This is the reference construction: `build_basis_recurrence` must
    reproduce it exactly.
    """
    _check_basis_args(n, max_deg)
    moments = _monomial_moments(n, 2 * max_deg)
    psi: list[list[Fraction]] = []
    norms: list[Fraction] = []
    proj: list[list[Fraction]] = []  # proj[j][r] = (x**r, psi_j)
    for d in range(max_deg + 1):
        coeffs = [Fraction(0)] * d + [Fraction(1)]
        for j in range(d):
            c = proj[j][d] / norms[j]
            if c:
                for s, cs in enumerate(psi[j]):
                    if cs:
                        coeffs[s] -= c * cs
        # psi_d is orthogonal to everything of lower degree, so its squared
        # norm equals its inner product with the bare monomial x**d.
        mono_ip = _ip_with_monomials(coeffs, moments, max_deg)
        norm = mono_ip[d]
        if norm <= 0:
            raise ConsistencyError(f"degenerate Gram-Schmidt norm at n={n}, d={d}")
        psi.append(coeffs)
        norms.append(norm)
        proj.append(mono_ip)
    return OrthoBasis(n, max_deg, tuple(Poly(tuple(c)) for c in psi), tuple(norms))


def build_basis_recurrence(n: int, max_deg: int) -> OrthoBasis:
    """Three-term-recurrence construction of the monic family.

    psi_0 = 1, psi_1 = x, and for d >= 2
    psi_d = x * psi_{d-1} - b_d * psi_{d-2} with b_d = 1 / (4 * alpha_sq(n, d-1)),
    which is exactly the norm ratio N_{d-1}/N_{d-2}. Squared norms are
    recomputed from the polynomials themselves (full quadratic form) rather
    than from the product formula, so norm data stays independent of the
    closed form it is tested against.
    """
    _check_basis_args(n, max_deg)
    moments = _monomial_moments(n, 2 * max_deg)
    psi: list[list[Fraction]] = [[Fraction(1)]]
    if max_deg >= 1:
        psi.append([Fraction(0), Fraction(1)])
    for d in range(2, max_deg + 1):
        b = Fraction(1, 4) / alpha_sq(n, d - 1)
        prev = psi[d - 1]
        prev2 = psi[d - 2]
        coeffs = [Fraction(0)] + list(prev)  # x * psi_{d-1}
        for s, cs in enumerate(prev2):
            if cs:
                coeffs[s] -= b * cs
        psi.append(coeffs)
    norms = [_quadratic_form(c, moments) for c in psi]
    for d, norm in enumerate(norms):
        if norm <= 0:
            raise ConsistencyError(f"degenerate recurrence norm at n={n}, d={d}")
    return OrthoBasis(n, max_deg, tuple(Poly(tuple(c)) for c in psi), tuple(norms))


def basis_inner_products(basis: OrthoBasis) -> list[list[Fraction]]:
    """Full matrix of pairwise inner products (psi_i, psi_j), exactly.

    Off-diagonal entries must all be zero for a genuine orthogonal family;
    the verification suites assert that.
    """
    moments = _monomial_moments(basis.n, 2 * basis.max_deg)
    tables = [
        _ip_with_monomials(list(p.coeffs), moments, basis.max_deg) for p in basis.psi
    ]
    size = basis.max_deg + 1
    out = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        ci = basis.psi[i].coeffs
        for j in range(i, size):
            acc = Fraction(0)
            tj = tables[j]
            for r, cr in enumerate(ci):
                if cr:
                    acc += cr * tj[r]
            out[i][j] = acc
            out[j][i] = acc
    return out


def gram_expand(p: Poly, basis: OrthoBasis) -> GramExpansion:
    """Expand p exactly in the monic basis by descending-degree elimination."""
    if p.degree > basis.max_deg:
        raise ValueError(
            f"degree {p.degree} exceeds basis max_deg {basis.max_deg}"
        )
    rem = list(p.coeffs) + [Fraction(0)] * (basis.max_deg + 1 - len(p.coeffs))
    coeffs = [Fraction(0)] * (basis.max_deg + 1)
    for d in range(basis.max_deg, -1, -1):
        a = rem[d]
        if a:
            coeffs[d] = a
            for s, cs in enumerate(basis.psi[d].coeffs):
                rem[s] -= a * cs
    if any(rem):
        raise ConsistencyError("Gram expansion failed to eliminate the target")
    norm_coeffs = tuple(a * a * nsq for a, nsq in zip(coeffs, basis.norm_sq))
    return GramExpansion(basis, tuple(coeffs), norm_coeffs)


def monomial_leading_coeff_sq(n: int, k: int) -> Fraction:
    """Square of the top unit-norm-basis coefficient of x**k for parameter n.

    Since x**k is monic its monic-basis top coefficient is 1, so the square
    is exactly the squared norm N_k, which telescopes to the product of the
    norm ratios: prod over d = 1..k of 1 / (4 * alpha_sq(n, d)). The suites
    pin this closed form against norms taken from both basis constructions.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"requires 1 <= k <= n-1, got k={k}, n={n}")
    out = Fraction(1)
    for d in range(1, k + 1):
        out *= Fraction(1, 4) / alpha_sq(n, d)
    return out


def l2_best_approx(p: Poly, basis: OrthoBasis, deg: int) -> tuple[Poly, Fraction]:
    """Best mean-square approximation of p by polynomials of degree <= deg.

    Returns the truncation of the Gram expansion together with the exact
    mean-square error, the sum of the squared unit-basis coefficients above
    deg. Because no competitor of degree <= deg can change those
    coefficients, the max error over the grid of *any* such competitor is at
    least the square root of the returned value. Degenerate requests with
    deg >= deg(p) return (p, 0).
    """
    if deg >= p.degree:
        return p, Fraction(0)
    expansion = gram_expand(p, basis)
    out = Poly.zero()
    err = Fraction(0)
    for d, a in enumerate(expansion.psi_coeffs):
        if d <= deg:
            if a:
                out = out + a * basis.psi[d]
        else:
            err += expansion.normalized_coeff_sq[d]
    return out, err


def leading_coeff_envelope(n: int, k: int) -> Fraction:
    """The scaled quantity C^2 * (2n)^(2k) * (n-k)! / (n+k)! used to report
    how tightly the closed-form reference brackets the exact coefficient.
    """
    c_sq = monomial_leading_coeff_sq(n, k)
    return c_sq * Fraction((2 * n) ** (2 * k) * factorial(n - k), factorial(n + k))
