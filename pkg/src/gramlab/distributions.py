"""Symmetric distributions on n-bit strings, represented by Hamming-weight
mass functions.

A symmetric distribution gives every string of the same weight the same
probability, so it is determined by the n+1 masses on weights 0..n. Its
restriction to any k coordinates is again symmetric and independent of the
chosen coordinates; the weight seen in the restriction follows the
hypergeometric mixture computed by `marginal`.

Equality of all marginals on up to j coordinates is decided through the
factorial moments E[C(|X|, i)] for i <= j: conditioned on weight m, the
probability that i fixed positions are all ones is C(m, i) / C(n, i), and
inclusion-exclusion generates every j-coordinate marginal probability from
those, so matching factorial moments up to j is equivalent to j-wise
indistinguishability. The verification suite pins this equivalence against
a brute-force enumeration of subsets on small n.

Nothing here samples; all operations are exact and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .arith import Scalar, as_rational
from .symmetrize import hypergeometric_pmf


@dataclass(frozen=True)
class SymmetricDist:
    """Weight mass function of a symmetric distribution on n-bit strings."""

    n: int
    pmf: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        pmf = tuple(as_rational(p) for p in self.pmf)
        if len(pmf) != self.n + 1:
            raise ValueError(f"pmf must have {self.n + 1} entries, got {len(pmf)}")
        if any(p < 0 for p in pmf):
            raise ValueError("pmf entries must be nonnegative")
        if sum(pmf) != 1:
            raise ValueError("pmf must sum to exactly 1")
        object.__setattr__(self, "pmf", pmf)

    @staticmethod
    def point_mass(n: int, m: int) -> "SymmetricDist":
        if not 0 <= m <= n:
            raise ValueError(f"weight {m} out of range 0..{n}")
        return SymmetricDist(
            n, tuple(Fraction(1) if i == m else Fraction(0) for i in range(n + 1))
        )


@dataclass(frozen=True)
class SymmetricTestSet:
    """A symmetric accept/reject test on k bits: accept iff the observed
    weight lies in accept_weights."""

    k: int
    accept_weights: frozenset[int]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        accept = frozenset(self.accept_weights)
        if not all(0 <= w <= self.k for w in accept):
            raise ValueError("accept weights must lie in 0..k")
        object.__setattr__(self, "accept_weights", accept)


def marginal(dist: SymmetricDist, k: int) -> SymmetricDist:
    """Weight pmf of the restriction to any k coordinates (all choices agree)."""
    if not 1 <= k <= dist.n:
        raise ValueError(f"k must be in 1..{dist.n}, got {k}")
    out = []
    for w in range(k + 1):
        acc = Fraction(0)
        for m, p in enumerate(dist.pmf):
            if p:
                acc += p * hypergeometric_pmf(dist.n, k, m, w)
        out.append(acc)
    return SymmetricDist(k, tuple(out))


def factorial_moment(dist: SymmetricDist, i: int) -> Fraction:
    """E[C(|X|, i)], the i-th binomial (factorial) moment of the weight."""
    if not 0 <= i <= dist.n:
        raise ValueError(f"i must be in 0..{dist.n}, got {i}")
    return sum(
        (p * comb(m, i) for m, p in enumerate(dist.pmf) if p), Fraction(0)
    )


def is_jwise_indist(mu: SymmetricDist, nu: SymmetricDist, j: int) -> bool:
    """True iff every marginal on at most j coordinates agrees exactly.

    Decided via factorial moments 1..j; j = 0 means no constraints and is
    always True.
    """
    if mu.n != nu.n:
        raise ValueError("distributions live on different string lengths")
    if not 0 <= j <= mu.n:
        raise ValueError(f"j must be in 0..{mu.n}, got {j}")
    return all(
        factorial_moment(mu, i) == factorial_moment(nu, i) for i in range(1, j + 1)
    )


def tv_distance(mu: SymmetricDist, nu: SymmetricDist) -> Fraction:
    """Total variation distance, half the L1 gap of the weight pmfs.

    For symmetric distributions restricted to the same coordinates this is
    the statistical distance of the underlying string distributions.
    """
    if mu.n != nu.n:
        raise ValueError("distributions live on different string lengths")
    return sum((abs(p - q) for p, q in zip(mu.pmf, nu.pmf)), Fraction(0)) / 2


def best_symmetric_test(mu_k: SymmetricDist, nu_k: SymmetricDist) -> tuple[SymmetricTestSet, Fraction]:
    """The optimal accept set {w : mu(w) > nu(w)} and its advantage.

    The advantage equals the total variation distance exactly; no test on
    the same coordinates does better.
    """
    if mu_k.n != nu_k.n:
        raise ValueError("distributions live on different string lengths")
    accept = frozenset(w for w in range(mu_k.n + 1) if mu_k.pmf[w] > nu_k.pmf[w])
    gain = sum(
        (mu_k.pmf[w] - nu_k.pmf[w] for w in accept), Fraction(0)
    )
    return SymmetricTestSet(mu_k.n, accept), gain


def advantage(
    mu: SymmetricDist, nu: SymmetricDist, test: SymmetricTestSet, k: int
) -> Fraction:
    """|P[test accepts under mu's k-marginal] - same under nu|, exact."""
    if test.k != k:
        raise ValueError(f"test reads {test.k} bits, expected {k}")
    mu_k = marginal(mu, k)
    nu_k = marginal(nu, k)
    gap = sum(
        (mu_k.pmf[w] - nu_k.pmf[w] for w in test.accept_weights), Fraction(0)
    )
    return abs(gap)
