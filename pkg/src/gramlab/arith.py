"""Exact scalars, dense univariate polynomials, and the two reference grids.

Every quantity in this package is an arbitrary-precision rational
(`fractions.Fraction`): stored in lowest terms with positive denominator,
with exact field arithmetic and an exception (never a value) on division by
zero. There is no floating point anywhere in the computational core;
decimal renderings exist only in `gramlab.report` and are never fed back
into decisions.

Two families of equispaced grids on [-1, 1] are used throughout:

* the *interior* grid with n points, {-1 + 1/n, -1 + 3/n, ..., 1 - 1/n},
  the midpoints of an equispaced subdivision, symmetric about 0;
* the *endpoint* grid with n + 1 points, {-1, -1 + 2/n, ..., 1}.

They are linked by two exact identities: stretching the (n+1)-point
interior grid by (n+1)/n gives the n-parameter endpoint grid, and every
interior point is an endpoint-grid point shifted down by 1/n. Endpoint-grid
points are also in bijection with Hamming weights m of n-bit strings via
t = 1 - 2m/n, which is how distribution-level objects enter the polynomial
world.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def as_rational(x: Scalar | str) -> Fraction:
    """Coerce an int, Fraction, or string like "5/16" to an exact Fraction.

    Floats are rejected: silently rationalizing a float would smuggle
    rounding error into an otherwise exact pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of x**i; trailing zeros are trimmed on
    construction so the highest stored coefficient is nonzero. The zero
    polynomial stores no coefficients and has degree -1 by convention, which
    keeps degree bounds such as "degree <= k - 1" uniformly checkable.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [as_rational(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((Fraction(1),))

    @staticmethod
    def x() -> "Poly":
        return Poly((Fraction(0), Fraction(1)))

    @staticmethod
    def constant(c: Scalar) -> "Poly":
        return Poly((as_rational(c),))

    @staticmethod
    def monomial(k: int, c: Scalar = 1) -> "Poly":
        """c * x**k."""
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return Poly((Fraction(0),) * k + (as_rational(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    __radd__ = __add__

    def __sub__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if not isinstance(other, Poly):
            c = as_rational(other)
            return Poly(tuple(c * a for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Poly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t: Scalar) -> Fraction:
        """Evaluate at an exact point by Horner's rule."""
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not parts:
                lead = f"{c}" if not mono else ("-" if c == -1 else "" if c == 1 else f"{c}*")
                parts.append(f"{lead}{mono}")
            else:
                sign = " - " if c < 0 else " + "
                c = abs(c)
                body = f"{c}" if not mono else ("" if c == 1 else f"{c}*") + mono
                parts.append(sign + body)
        return "".join(parts)


def poly_affine_compose(p: Poly, a: Scalar, b: Scalar) -> Poly:
    """Return q with q(x) = p(a*x + b), expanded exactly.

    When a != 0 the degree is preserved; a = 0 collapses p to the constant
    p(b).
    """
    lin = Poly((as_rational(b), as_rational(a)))
    acc = Poly.zero()
    for c in reversed(p.coeffs):
        acc = acc * lin + c
    return acc


@dataclass(frozen=True)
class AffineMap:
    """The exact map t -> a*t + b."""

    a: Fraction
    b: Fraction

    def __call__(self, t: Scalar) -> Fraction:
        return self.a * as_rational(t) + self.b

    def inverse(self) -> "AffineMap":
        if self.a == 0:
            raise ValueError("constant map has no inverse")
        return AffineMap(1 / self.a, -self.b / self.a)


class GridKind(Enum):
    IN = "in"    # n interior points, no endpoints
    OUT = "out"  # n + 1 points including both endpoints


@dataclass(frozen=True)
class Grid:
    """A finite increasing sequence of exact points on [-1, 1]."""

    kind: GridKind
    n: int
    points: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def grid_points(kind: GridKind, n: int) -> Grid:
    """Materialize the interior (n points) or endpoint (n+1 points) grid."""
    if n < 1:
        raise ValueError("grid parameter n must be >= 1")
    if kind is GridKind.IN:
        pts = tuple(Fraction(2 * i + 1 - n, n) for i in range(n))
    elif kind is GridKind.OUT:
        pts = tuple(Fraction(2 * i - n, n) for i in range(n + 1))
    else:
        raise ValueError(f"unknown grid kind: {kind!r}")
    return Grid(kind, n, pts)


def stretch_map(n: int) -> AffineMap:
    """The map x -> ((n+1)/n) * x.

    Applied pointwise to the (n+1)-point interior grid it yields exactly the
    n-parameter endpoint grid.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return AffineMap(Fraction(n + 1, n), Fraction(0))


def weight_to_point(n: int, m: int) -> Fraction:
    """Map a Hamming weight m in {0..n} to its endpoint-grid point 1 - 2m/n."""
    if not 0 <= m <= n:
        raise ValueError(f"weight {m} out of range 0..{n}")
    return Fraction(n - 2 * m, n)


def point_to_weight(n: int, t: Scalar) -> int:
    """Inverse of weight_to_point: t -> (1 - t) * n / 2, which must be integral."""
    w = (1 - as_rational(t)) * n / 2
    if w.denominator != 1 or not 0 <= w <= n:
        raise ValueError(f"{t} is not an endpoint-grid point for n={n}")
    return int(w)


def inner_product(f: Poly, g: Poly, n: int) -> Fraction:
    """The uniform-average bilinear form (1/n) * sum of f(x)*g(x) over the
    n-point interior grid. Exact, symmetric, and bilinear; positive
    semidefinite with (f, f) = 0 exactly when f vanishes on the grid.
    """
    grid = grid_points(GridKind.IN, n)
    total = Fraction(0)
    for x in grid.points:
        total += f(x) * g(x)
    return total / n
