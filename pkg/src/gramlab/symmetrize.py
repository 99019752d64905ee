"""Symmetrized weight tests: the univariate face of "accept iff you see
exactly w ones among k observed bits".

For n-bit strings of fixed Hamming weight m, the number of ones seen in k
observed positions is hypergeometric, so the acceptance probability of the
exact-weight-w test depends only on m. Re-parameterizing weights by the
endpoint-grid points t = 1 - 2m/n, those probabilities are interpolated by
a unique polynomial p of degree <= k (`build_pw`). The polynomial is forced
to vanish at the k extreme grid points where the weight is too small or too
large to show w ones, its leading-coefficient magnitude has a closed form
in double factorials (`cw_closed_form`), and over w that magnitude peaks at
the centre w = k/2 (`cw_argmax`).

Interpolation of the hypergeometric values is the primary constructor; the
factored zero form and the closed-form leading coefficient are *derived*
facts that the constructor and the suites verify, not alternative
constructors. The closed form describes the magnitude only; the observed
sign is recorded separately and never asserted.

`wallis_product` and the pi bracket support the exact monotone-range check
of the partial Wallis products that calibrate the leading-coefficient
envelope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .arith import Poly, weight_to_point
from .exceptions import ConsistencyError, ParityError


def double_factorial(m: int) -> int:
    """m!! = m (m-2) (m-4) ..., with 0!! = (-1)!! = 1."""
    if m < -1:
        raise ValueError("double factorial requires m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def hypergeometric_pmf(n: int, k: int, m: int, w: int) -> Fraction:
    """P[w ones among k observed bits | uniformly random n-bit string of weight m].

    C(k, w) * C(n-k, m-w) / C(n, m), with out-of-range binomials equal to 0.
    """
    if not 0 <= w <= k <= n:
        raise ValueError(f"requires 0 <= w <= k <= n, got n={n}, k={k}, w={w}")
    if not 0 <= m <= n:
        raise ValueError(f"weight m={m} out of range 0..{n}")
    if w > m or m - w > n - k:
        return Fraction(0)
    return Fraction(comb(k, w) * comb(n - k, m - w), comb(n, m))


@dataclass(frozen=True)
class SymmetrizedTest:
    """The univariate acceptance-probability polynomial of one weight test.

    poly has degree <= k, takes values in [0, 1] on the endpoint grid, and
    vanishes there exactly on `zeros` (the grid points of weight < w or
    weight > n - k + w). leading_abs is |leading coefficient| and
    leading_sign its observed sign.
    """

    n: int
    k: int
    w: int
    poly: Poly
    zeros: tuple[Fraction, ...]
    leading_abs: Fraction
    leading_sign: int


def predicted_zeros(n: int, k: int, w: int) -> tuple[Fraction, ...]:
    """The k forced zeros: the k-w lowest and the w highest grid points."""
    low = [Fraction(-1) + Fraction(2 * h, n) for h in range(k - w)]
    high = [Fraction(1) - Fraction(2 * h, n) for h in range(w)]
    return tuple(sorted(low + high))


def _interpolate(xs: list[Fraction], ys: list[Fraction]) -> Poly:
    """Unique exact interpolant through distinct nodes (Newton form)."""
    coef = list(ys)
    npts = len(xs)
    for j in range(1, npts):
        for i in range(npts - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = Poly.constant(coef[-1])
    for i in range(npts - 2, -1, -1):
        poly = poly * Poly((-xs[i], Fraction(1))) + coef[i]
    return poly


@lru_cache(maxsize=None)
def build_pw(n: int, k: int, w: int) -> SymmetrizedTest:
    """Interpolate the hypergeometric acceptance probabilities exactly.

    Raises ConsistencyError if the interpolant violates anything that must
    hold by construction: degree above k, a value outside [0, 1], a missing
    forced zero, or a spurious zero elsewhere on the grid.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= w <= k <= n:
        raise ValueError(f"requires 0 <= w <= k <= n, got n={n}, k={k}, w={w}")
    xs = [weight_to_point(n, m) for m in range(n + 1)]
    ys = [hypergeometric_pmf(n, k, m, w) for m in range(n + 1)]
    poly = _interpolate(xs, ys)
    if poly.degree > k:
        raise ConsistencyError(
            f"symmetrized test has degree {poly.degree} > k = {k} (n={n}, w={w})"
        )
    zeros = predicted_zeros(n, k, w)
    zero_set = set(zeros)
    for t, y in zip(xs, ys):
        if not 0 <= y <= 1:
            raise ConsistencyError("acceptance probability outside [0, 1]")
        if (t in zero_set) != (y == 0):
            raise ConsistencyError(
                f"zero pattern mismatch at t={t} for (n={n}, k={k}, w={w})"
            )
    lead = poly.leading_coefficient
    return SymmetrizedTest(
        n, k, w, poly, zeros, abs(lead), 0 if lead == 0 else (1 if lead > 0 else -1)
    )


def cw_closed_form(n: int, k: int, w: int) -> Fraction:
    """Closed form for |leading coefficient| of the symmetrized weight test.

    [C(k,w) * C(n-k, (n-k)/2) / C(n, (n-k+2w)/2)]
      * n**k * ((n-k)!!)**2 / ((n-k+2w)!! * (n-2w+k)!!)

    Requires n - k even, since it evaluates the polynomial at a point of
    weight (n-k+2w)/2; odd parity raises ParityError. Describes the
    magnitude only (the true sign alternates with w).
    """
    if not 0 <= w <= k <= n:
        raise ValueError(f"requires 0 <= w <= k <= n, got n={n}, k={k}, w={w}")
    if (n - k) % 2:
        raise ParityError(f"closed form needs n-k even, got n={n}, k={k}")
    half = (n - k) // 2
    front = Fraction(comb(k, w) * comb(n - k, half), comb(n, half + w))
    back = Fraction(
        n**k * double_factorial(n - k) ** 2,
        double_factorial(n - k + 2 * w) * double_factorial(n - 2 * w + k),
    )
    return front * back


class CwArgmax(NamedTuple):
    w: int
    c_abs: Fraction


def cw_argmax(n: int, k: int) -> CwArgmax:
    """Exhaustive argmax over w of the leading-coefficient magnitude.

    Requires n and k even (the centre closed form evaluates half-integer
    factorials otherwise). The maximum must sit at w = k/2 and match

        [C(k,k/2) * C(n-k,(n-k)/2) / C(n,n/2)] * n**k * ((n-k)!!)**2 / (n!!)**2

    exactly; either failure is a ConsistencyError, as is any tie at the top
    beyond the symmetric w <-> k-w pair.
    """
    if n % 2 or k % 2:
        raise ParityError(f"argmax analysis needs n and k even, got n={n}, k={k}")
    if not 0 <= k <= n:
        raise ValueError(f"requires 0 <= k <= n, got n={n}, k={k}")
    mags = [build_pw(n, k, w).leading_abs for w in range(k + 1)]
    best = max(mags)
    winners = [w for w, m in enumerate(mags) if m == best]
    centre = k // 2
    if winners not in ([centre], [centre, k - centre]):
        raise ConsistencyError(
            f"argmax of leading coefficients is {winners}, expected centre {centre}"
        )
    expected = (
        Fraction(comb(k, centre) * comb(n - k, (n - k) // 2), comb(n, n // 2))
        * Fraction(n**k * double_factorial(n - k) ** 2, double_factorial(n) ** 2)
    )
    if mags[centre] != expected:
        raise ConsistencyError(
            f"centre coefficient {mags[centre]} does not match closed form {expected}"
        )
    return CwArgmax(centre, mags[centre])


def wallis_product(k: int) -> Fraction:
    """v(k) = product over i = 1..k of (1 - 1/(4 i^2)), exactly.

    Strictly decreasing in k from v(1) = 3/4 toward the limit 2/pi.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    num = 1
    den = 1
    for i in range(1, k + 1):
        num *= 4 * i * i - 1
        den *= 4 * i * i
    return Fraction(num, den)


def wallis_closed_form(k: int) -> Fraction:
    """Independent closed form (2k+1) * C(2k, k)**2 / 16**k for the same product."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction((2 * k + 1) * comb(2 * k, k) ** 2, 16**k)


def _arctan_bracket(inv_x: int, terms: int) -> tuple[Fraction, Fraction]:
    """Exact bracket of arctan(1/inv_x) from the alternating series.

    Consecutive partial sums of an alternating series with decreasing terms
    straddle the limit, so (min, max) of the last two partial sums is a
    certified enclosure.
    """
    x = Fraction(1, inv_x)
    term = x
    partial = Fraction(0)
    last_two = []
    for j in range(terms + 1):
        partial += term if j % 2 == 0 else -term
        term *= x * x * Fraction(2 * j + 1, 2 * j + 3)
        last_two = [partial] + last_two[:1]
    return min(last_two), max(last_two)


def pi_bracket(terms: int = 12) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of pi via 16*arctan(1/5) - 4*arctan(1/239)."""
    lo5, hi5 = _arctan_bracket(5, terms)
    lo239, hi239 = _arctan_bracket(239, terms)
    return 16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239


def two_over_pi_bracket(terms: int = 12) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of 2/pi."""
    lo, hi = pi_bracket(terms)
    return Fraction(2) / hi, Fraction(2) / lo
