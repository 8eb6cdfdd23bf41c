"""Exception types shared across the package.

The CLI maps these onto exit codes: bad input (2), numerical failure (3),
violated invariant (1).
"""


class JamesLabError(Exception):
    """Base class for all package errors."""


class ParseError(JamesLabError, ValueError):
    """Malformed input file or rejected configuration key."""


class InvalidExponent(JamesLabError, ValueError):
    """Exponent outside the admissible range (p > 0, and p < q where required)."""


class ShapeMismatch(JamesLabError, ValueError):
    """Vector or block shapes inconsistent with the given configuration."""


class DimensionError(JamesLabError, ValueError):
    """Dimension parameters out of range (e.g. k > N)."""


class TooLarge(JamesLabError, ValueError):
    """Problem size exceeds what an exhaustive routine is willing to enumerate."""


class RankDeficient(JamesLabError):
    """Input vectors fail the linear-independence tolerance."""


class SingularSystem(JamesLabError):
    """Square solve rejected: condition estimate or residual beyond tolerance."""


class NoWitnessFound(JamesLabError):
    """Exhaustive witness search failed.

    Existence of a witness is mathematically guaranteed, so this signals a
    numerical problem or an invalid subspace, never a genuine absence.
    """


class InvariantViolation(JamesLabError):
    """A property that holds mathematically failed numerically; indicates a bug."""


class LemmaViolation(InvariantViolation):
    """A sign-alternating polynomial with non-negligible coefficients was reported."""
