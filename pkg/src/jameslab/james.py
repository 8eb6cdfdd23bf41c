"""James p-norms of finite real sequences.

For a sequence a of length N and exponent p > 0, the value computed here is

    sup over index chains i_1 < ... < i_n within 1..N, n >= 2, of
    ( sum_{j=2..n} |a_{i_j} - a_{i_{j-1}}|^p )^{1/p}

i.e. the finite-section James norm. Chains do not extend into the zero tail
of the underlying zero-convergent sequence; a constant sequence therefore
gets value 0, so on R^N this is a seminorm (append an explicit 0 to a
sequence if the tail should participate). For p >= 1 the triangle
inequality holds; exponents in (0, 1) are accepted but give a quasi-norm.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidExponent, TooLarge
from .numerics import as_vector

ORACLE_MAX_LEN = 20


def _checked_exponent(p) -> float:
    p = float(p)
    if not np.isfinite(p) or p <= 0.0:
        raise InvalidExponent(f"exponent must be a finite positive real, got {p!r}")
    return p


def is_quasi_norm(p) -> bool:
    """True when the exponent only yields a quasi-norm (0 < p < 1)."""
    return _checked_exponent(p) < 1.0


def max_chain_sums(rows, p) -> np.ndarray:
    """Row-wise maximum of sum |a_{i_j} - a_{i_{j-1}}|^p over increasing chains.

    Dynamic programme over chain endpoints: with f(0)=...=f(N-1) initialized
    to 0, f(i) = max_{j<i} f(j) + |a_i - a_j|^p, answer max_i f(i). O(N^2)
    per row, vectorized across rows.
    """
    p = _checked_exponent(p)
    arr = np.atleast_2d(np.asarray(rows, dtype=float))
    if arr.ndim != 2:
        raise ValueError("expected a vector or a 2-D stack of vectors")
    nrows, n = arr.shape
    best = np.zeros((nrows, n))
    for i in range(1, n):
        gains = np.abs(arr[:, i, None] - arr[:, :i]) ** p
        best[:, i] = np.max(best[:, :i] + gains, axis=1)
    return best.max(axis=1)


def james_norm(a, p) -> float:
    """Finite-section James p-norm of `a` (dynamic programme, O(N^2))."""
    vec = as_vector(a)
    p = _checked_exponent(p)
    if vec.size == 1:
        return 0.0
    return float(max_chain_sums(vec[None, :], p)[0] ** (1.0 / p))


def james_norm_rows(rows, p) -> np.ndarray:
    """James p-norm of every row of a 2-D array in one vectorized pass."""
    p = _checked_exponent(p)
    return max_chain_sums(rows, p) ** (1.0 / p)


def james_norm_with_chain(a, p):
    """James norm together with a maximizing chain (1-based indices).

    Ties during reconstruction are broken toward smaller indices. A value of
    exactly 0 (constant sequence) has no contributing chain and returns ().
    """
    vec = as_vector(a)
    p = _checked_exponent(p)
    n = vec.size
    best = np.zeros(n)
    pred = np.full(n, -1, dtype=int)
    for i in range(1, n):
        cand = best[:i] + np.abs(vec[i] - vec[:i]) ** p
        j = int(np.argmax(cand))  # argmax returns the first (smallest) index
        if cand[j] > best[i]:
            best[i] = cand[j]
            pred[i] = j
    end = int(np.argmax(best))
    if best[end] == 0.0:
        return 0.0, ()
    chain = [end]
    while pred[chain[-1]] >= 0:
        chain.append(int(pred[chain[-1]]))
    chain.reverse()
    return float(best[end] ** (1.0 / p)), tuple(i + 1 for i in chain)


def james_norm_oracle(a, p) -> float:
    """Exact James norm by exhaustive enumeration of all increasing chains.

    Independent cross-check for `james_norm`; every chain of length >= 2 is
    visited explicitly, so the length is capped at ORACLE_MAX_LEN.
    """
    vec = as_vector(a)
    p = _checked_exponent(p)
    n = vec.size
    if n > ORACLE_MAX_LEN:
        raise TooLarge(f"oracle enumerates 2^N chains; N={n} > {ORACLE_MAX_LEN}")
    if n < 2:
        return 0.0
    gains = (np.abs(vec[None, :] - vec[:, None]) ** p).tolist()
    best = 0.0

    def extend(last: int, acc: float) -> None:
        nonlocal best
        row = gains[last]
        for nxt in range(last + 1, n):
            total = acc + row[nxt]
            if total > best:
                best = total
            extend(nxt, total)

    for start in range(n - 1):
        extend(start, 0.0)
    return best ** (1.0 / p)


def sup_norm(a) -> float:
    """Supremum norm max_i |a_i|."""
    return float(np.max(np.abs(as_vector(a))))


@dataclass
class InterpolationReport:
    """Both sides of the sup/James interpolation inequality for one vector.

    rhs_homogeneous is (2 sup|a|)^{(q-p)/q} * Jp(a)^{p/q}, which majorizes
    Jq(a) and scales linearly with a. rhs_inhomogeneous places exponent
    (q-p)/p on the sup-norm factor instead; it fails first-degree
    homogeneity and is computed for comparison only.
    """

    lhs: float
    rhs_homogeneous: float
    rhs_inhomogeneous: float
    holds_homogeneous: bool
    holds_inhomogeneous: bool


def check_interpolation(a, p, q) -> InterpolationReport:
    """Evaluate Jq(a) against both interpolation majorants (requires p < q)."""
    p = _checked_exponent(p)
    q = _checked_exponent(q)
    if not p < q:
        raise InvalidExponent(f"need 0 < p < q, got p={p}, q={q}")
    lhs = james_norm(a, q)
    sup = sup_norm(a)
    jp = james_norm(a, p)
    rhs_hom = (2.0 * sup) ** ((q - p) / q) * jp ** (p / q)
    rhs_inhom = 2.0 ** ((q - p) / p) * sup ** ((q - p) / p) * jp ** (p / q)
    slack = 1.0 + 1e-12  # absorb rounding at equality cases
    return InterpolationReport(
        lhs=lhs,
        rhs_homogeneous=rhs_hom,
        rhs_inhomogeneous=rhs_inhom,
        holds_homogeneous=lhs <= rhs_hom * slack,
        holds_inhomogeneous=lhs <= rhs_inhom * slack,
    )
