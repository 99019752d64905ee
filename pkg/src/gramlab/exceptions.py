"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parameter problems
(ValueError, including ParityError) are usage errors, ConsistencyError and
SimplexError are internal errors, and failed verification checks are
reported as findings without raising at all.
"""


class ParityError(ValueError):
    """A closed form was requested outside its parity domain."""


class ConsistencyError(RuntimeError):
    """An internal invariant that should hold by construction was violated."""


class SimplexError(RuntimeError):
    """The exact LP solver failed (infeasible/unbounded where impossible)."""
