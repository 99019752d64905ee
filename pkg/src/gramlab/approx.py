"""Best minimax approximation on finite grids, exactly, plus the
constructive routes that complement it.

`linf_best_approx` is the single source of truth for optimal errors: it
solves min over degree-bounded q of max over the grid of |target - q| as an
exact linear program (coefficients of q plus the error bound as variables,
two inequalities per grid point) and returns a certificate whose optimality
witness is the set of active points. An optimal error bound that is
strictly positive is attained, with alternating residual signs, on at least
degree_bound + 2 grid points; `verify_certificate` rechecks all of that
from scratch.

The constructive (non-optimal) companions are `monomial_gram_truncation`,
which approximates x**k on the endpoint grid by dropping the top term of a
stretched Gram expansion, and `shift_reduce`, which transports an
endpoint-grid certificate to the interior grid without increasing its
error. `uniform_reference_error` and `monomial_hardness_ref` expose the two
closed-form reference constants the reports compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .arith import Grid, GridKind, Poly, grid_points, poly_affine_compose
from .exceptions import ConsistencyError, SimplexError
from .gram import build_basis_recurrence
from .simplex import LinearProgram, Rel, solve_lp


@dataclass(frozen=True)
class ApproxCertificate:
    """A degree-bounded approximant on a grid with its exact max error.

    residuals[i] = target(points[i]) - approximant(points[i]), aligned with
    grid.points; epsilon is exactly max |residual|. When optimal is True the
    certificate came from the LP and active_points (the points attaining
    epsilon) witness optimality: for a positive epsilon there are at least
    degree_bound + 2 of them with alternating residual signs.
    """

    target: Poly
    grid: Grid
    degree_bound: int
    approximant: Poly
    epsilon: Fraction
    residuals: tuple[Fraction, ...]
    optimal: bool
    active_points: tuple[Fraction, ...]

    def residual_by_point(self) -> dict[Fraction, Fraction]:
        return dict(zip(self.grid.points, self.residuals))


def _certificate(
    target: Poly, grid: Grid, degree_bound: int, approximant: Poly, optimal: bool
) -> ApproxCertificate:
    residuals = tuple(target(t) - approximant(t) for t in grid.points)
    eps = max((abs(r) for r in residuals), default=Fraction(0))
    active = tuple(t for t, r in zip(grid.points, residuals) if abs(r) == eps)
    return ApproxCertificate(
        target, grid, degree_bound, approximant, eps, residuals, optimal, active
    )


def linf_best_approx(target: Poly, grid: Grid, deg: int) -> ApproxCertificate:
    """Exact optimum of min over degree <= deg q of max over the grid of
    |target(t) - q(t)|, by exact simplex.

    Variables are the deg+1 coefficients of q plus the error bound; each
    grid point contributes the two inequalities q(t) + e >= target(t) and
    -q(t) + e >= -target(t). Infeasibility is impossible; any solver-level
    failure is raised, never hidden.
    """
    if deg < 0:
        raise ValueError("degree bound must be >= 0")
    nv = deg + 2  # q coefficients, then the error bound
    lp = LinearProgram(
        num_vars=nv,
        objective=(0,) * (deg + 1) + (1,),
        maximize=False,
        free=frozenset(range(nv)),
    )
    for t in grid.points:
        powers = [t**i for i in range(deg + 1)]
        f = target(t)
        lp.add(powers + [Fraction(1)], Rel.GE, f)
        lp.add([-p for p in powers] + [Fraction(1)], Rel.GE, -f)
    sol = solve_lp(lp)
    approximant = Poly(sol.x[: deg + 1])
    cert = _certificate(target, grid, deg, approximant, optimal=True)
    if cert.epsilon != sol.x[-1]:
        raise SimplexError(
            f"LP error bound {sol.x[-1]} does not match recomputed residual max {cert.epsilon}"
        )
    return cert


def monomial_gram_truncation(n: int, k: int) -> ApproxCertificate:
    """Constructive degree <= k-1 approximation of x**k on the endpoint grid.

    Expand ((n+1)/n * x)**k in the monic Gram basis with parameter n+1, drop
    the top basis term, and pull the result back through the stretch map
    that carries the (n+1)-point interior grid onto the endpoint grid. The
    certificate reports the exact realized grid error and is marked
    non-optimal.
    """
    if not 1 <= k <= n:
        raise ValueError(f"requires 1 <= k <= n, got k={k}, n={n}")
    basis = build_basis_recurrence(n + 1, k)
    stretched = poly_affine_compose(Poly.monomial(k), Fraction(n + 1, n), 0)
    top = stretched.coefficient(k)
    truncated = stretched - top * basis.psi[k]
    approximant = poly_affine_compose(truncated, Fraction(n, n + 1), 0)
    if approximant.degree > k - 1:
        raise ConsistencyError("truncation failed to cancel the top term")
    grid = grid_points(GridKind.OUT, n)
    return _certificate(Poly.monomial(k), grid, k - 1, approximant, optimal=False)


def shift_reduce(target: Poly, cert_out: ApproxCertificate) -> ApproxCertificate:
    """Transport an endpoint-grid certificate for target to the interior grid.

    With p = target, ptilde = cert_out.approximant, and h = 1/n, the
    polynomial q(t) = ptilde(t + h) + p(t) - p(t + h) has degree <= k - 1
    (the top terms of p cancel) and, because every interior point is an
    endpoint point shifted by h, satisfies
    max over the interior grid of |p - q| <= cert_out.epsilon. The returned
    certificate carries the exact realized interior error.
    """
    if cert_out.grid.kind is not GridKind.OUT:
        raise ValueError("shift_reduce expects a certificate over the endpoint grid")
    if cert_out.target != target:
        raise ValueError("certificate does not certify the given target")
    k = target.degree
    if k < 1:
        raise ValueError("target must have degree >= 1")
    if cert_out.degree_bound > k - 1:
        raise ValueError(
            f"certificate degree bound {cert_out.degree_bound} exceeds k-1 = {k - 1}"
        )
    n = cert_out.grid.n
    h = Fraction(1, n)
    q = (
        poly_affine_compose(cert_out.approximant, 1, h)
        + target
        - poly_affine_compose(target, 1, h)
    )
    if q.degree > k - 1:
        raise ConsistencyError("shifted approximant exceeded its degree budget")
    cert_in = _certificate(target, grid_points(GridKind.IN, n), k - 1, q, optimal=False)
    if cert_in.epsilon > cert_out.epsilon:
        raise ConsistencyError(
            "interior-grid error exceeded the endpoint-grid certificate"
        )
    return cert_in


def uniform_reference_error(k: int) -> Fraction:
    """2**(1-k): the best error of uniform approximations to x**k on [-1, 1]
    by lower-degree polynomials; a comparison column only.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return Fraction(2) ** (1 - k)


def monomial_hardness_ref(n: int, k: int) -> Fraction:
    """Squared closed-form floor (2n)^(-2k) * (n+k)!/(n-k)! for the error of
    degree <= k-1 approximations to x**k on the endpoint grid.

    Kept squared to stay rational. Reporting-only: the binding exact lower
    bound is `gram.monomial_leading_coeff_sq`.
    """
    if not 1 <= k < n:
        raise ValueError(f"requires 1 <= k < n, got k={k}, n={n}")
    return Fraction(factorial(n + k), factorial(n - k) * (2 * n) ** (2 * k))


def verify_certificate(cert: ApproxCertificate) -> list[str]:
    """Recheck a certificate from scratch; returns a list of problems (empty = good).

    Recomputes residuals from the stored approximant, confirms epsilon is
    exactly the residual max and the degree bound holds, and for optimal
    certificates with positive error confirms the equioscillation witness:
    at least degree_bound + 2 active points whose residual signs alternate.
    """
    problems: list[str] = []
    if cert.approximant.degree > cert.degree_bound:
        problems.append("approximant degree exceeds the bound")
    residuals = tuple(cert.target(t) - cert.approximant(t) for t in cert.grid.points)
    if residuals != cert.residuals:
        problems.append("stored residuals do not match recomputation")
    eps = max((abs(r) for r in residuals), default=Fraction(0))
    if eps != cert.epsilon:
        problems.append("epsilon is not the exact residual max")
    active = tuple(t for t, r in zip(cert.grid.points, residuals) if abs(r) == eps)
    if active != cert.active_points:
        problems.append("active point set does not match recomputation")
    if cert.optimal and cert.epsilon > 0:
        blocks = 0
        last = 0
        for r in residuals:
            if abs(r) != eps:
                continue
            s = 1 if r > 0 else -1
            if s != last:
                blocks += 1
                last = s
        if blocks < cert.degree_bound + 2:
            problems.append(
                f"only {blocks} alternating active points; optimality requires "
                f">= {cert.degree_bound + 2}"
            )
    return problems
