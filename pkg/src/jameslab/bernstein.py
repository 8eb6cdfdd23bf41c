"""Bernstein-number estimates for the inclusion of James spaces J_p into J_q.

For a k-dimensional subspace E the inner quantity is inf { Jq(x) : x in E,
Jp(x) = 1 }; its supremum over all k-dimensional subspaces tends to 0 as k
grows, witnessed by the closed-form bound (k-1)^(-(q-p)/(pq)). Sampling
subspaces gives a heuristic lower estimate; the bound is the sound cap.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .alternation import Subspace, find_witness, random_subspace
from .errors import DimensionError, InvalidExponent, JamesLabError
from .james import james_norm, max_chain_sums
from .seeding import derive_int, derive_rng

CSV_HEADER = "k,p,q,N,trials,lower_estimate,upper_sharp,upper_safe,seed"


def _checked_pq(p, q):
    p, q = float(p), float(q)
    if not (np.isfinite(p) and np.isfinite(q) and 0.0 < p < q):
        raise InvalidExponent(f"need 0 < p < q, got p={p}, q={q}")
    return p, q


@dataclass
class UpperBounds:
    """Closed-form caps on the inner minimum over any k-dim subspace.

    `safe` = (k-1)^(-(q-p)/(pq)) follows from the homogeneous interpolation
    inequality and the alternating witness; `sharp` multiplies it by
    2^(-p/q) < 1 and is reported but never used as an acceptance gate.
    """

    sharp: float
    safe: float


def inclusion_upper_bounds(p, q, k: int) -> UpperBounds:
    """Evaluate both closed-form bounds (requires k >= 2)."""
    p, q = _checked_pq(p, q)
    if k < 2:
        raise DimensionError("bounds need k >= 2; k = 1 has no finite cap")
    safe = float(k - 1) ** (-(q - p) / (p * q))
    return UpperBounds(sharp=2.0 ** (-p / q) * safe, safe=safe)


def staircase_subspace(n: int, k: int) -> Subspace:
    """Span of k disjoint contiguous blocks filled with alternating +-1.

    Natural extremal suspects for James norms: each basis vector carries
    maximal variation on its own block.
    """
    if not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={n}")
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    basis = np.zeros((n, k))
    start = 0
    for col, size in enumerate(sizes):
        block = (-1.0) ** np.arange(size)
        basis[start:start + size, col] = block / math.sqrt(size)
        start += size
    return Subspace(basis)


@dataclass
class SphereMinimum:
    value: float
    argmin: np.ndarray


def min_on_sphere(subspace: Subspace, p, q, restarts: int = 4, seed: int = 0,
                  max_sweeps: int = 60, witness_tol: float = 1e-9) -> SphereMinimum:
    """Upper estimate of inf { Jq(x) : x in subspace, Jp(x) = 1 }.

    Minimizes the scale-invariant ratio Jq(x)/Jp(x) over coefficient vectors
    by multi-start pattern search: coordinate directions plus fresh random
    directions, with a shrinking step grid evaluated in one batch per sweep.
    The alternating witness is always one of the starts; it already realizes
    the closed-form cap, so the returned value can only improve on it. The
    argmin is normalized to Jp = 1.
    """
    p, q = _checked_pq(p, q)
    basis = subspace.basis
    n, k = basis.shape

    def ratios(coeff_rows: np.ndarray) -> np.ndarray:
        vectors = coeff_rows @ basis.T
        sums_q = max_chain_sums(vectors, q)
        sums_p = max_chain_sums(vectors, p)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = sums_q ** (1.0 / q) / np.where(sums_p > 0.0, sums_p, 1.0) ** (1.0 / p)
        return np.where(sums_p > 0.0, vals, np.inf)

    starts = []
    witness = find_witness(subspace, tol=witness_tol)
    w_coeff = basis.T @ witness.vector
    if np.isfinite(ratios(w_coeff[None, :])[0]):
        starts.append(w_coeff / np.linalg.norm(w_coeff))
    for r in range(restarts):
        c = derive_rng(seed, r, 0).standard_normal(k)
        norm = np.linalg.norm(c)
        if norm > 0 and np.isfinite(ratios((c / norm)[None, :])[0]):
            starts.append(c / norm)
    if not starts:
        raise JamesLabError("the James p-variation vanishes identically on the subspace")

    steps = np.array([-1.0, -0.3, -0.1, 0.1, 0.3, 1.0])
    best_val = math.inf
    best_coeff = starts[0]
    for start_id, coeff in enumerate(starts):
        rng = derive_rng(seed, start_id, 1)
        cur = coeff
        cur_val = float(ratios(cur[None, :])[0])
        scale = 0.5
        for _ in range(max_sweeps):
            extra = rng.standard_normal((2, k))
            extra /= np.linalg.norm(extra, axis=1, keepdims=True)
            dirs = np.vstack([np.eye(k), extra])
            cands = (cur[None, None, :] + (scale * steps)[None, :, None] * dirs[:, None, :])
            cands = cands.reshape(-1, k)
            norms = np.linalg.norm(cands, axis=1)
            keep = norms > 1e-12
            cands = cands[keep] / norms[keep, None]
            vals = ratios(cands)
            idx = int(np.argmin(vals))
            if vals[idx] < cur_val - 1e-14:
                cur, cur_val = cands[idx], float(vals[idx])
            else:
                scale *= 0.35
                if scale < 1e-7:
                    break
        if cur_val < best_val:
            best_val, best_coeff = cur_val, cur
    x = basis @ best_coeff
    jp = james_norm(x, p)
    argmin = x / jp
    return SphereMinimum(value=james_norm(argmin, q), argmin=argmin)


@dataclass
class BernsteinEstimate:
    """One (k, p, q, N) record of the sampled lower estimate and the caps.

    `lower_estimate` is heuristic on both sides (finitely many subspaces,
    local inner minimization); `upper_bound_safe` is the sound cap. k = 1
    carries infinite sentinel bounds. `best_subspace_seed` is the trial
    counter of the winning subspace, -1 for the structured staircase.
    """

    k: int
    p: float
    q: float
    n: int
    trials: int
    lower_estimate: float
    upper_bound_sharp: float
    upper_bound_safe: float
    best_subspace_seed: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "q": self.q,
            "N": self.n,
            "trials": self.trials,
            "lower_estimate": self.lower_estimate,
            "upper_sharp": self.upper_bound_sharp,
            "upper_safe": self.upper_bound_safe,
            "best_subspace_seed": self.best_subspace_seed,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv_row(self) -> str:
        return ",".join([
            str(self.k),
            _fmt(self.p),
            _fmt(self.q),
            str(self.n),
            str(self.trials),
            _fmt(self.lower_estimate),
            _fmt(self.upper_bound_sharp),
            _fmt(self.upper_bound_safe),
            str(self.seed),
        ])


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def bernstein_lower_estimate(k: int, n: int, p, q, subspace_trials: int,
                             seed: int, restarts: int = 4) -> BernsteinEstimate:
    """Max of min_on_sphere over sampled subspaces plus the staircase.

    Subspaces are seeded per trial by counter, so results are reproducible
    and independent of evaluation order; ties resolve to the lowest trial
    id (the staircase counts as -1 and is always included).
    """
    p, q = _checked_pq(p, q)
    if not 1 <= k <= n:
        raise DimensionError(f"need 1 <= k <= n, got k={k}, n={n}")
    if subspace_trials < 0:
        raise ValueError("subspace_trials must be non-negative")
    candidates = [(-1, staircase_subspace(n, k))]
    for trial in range(subspace_trials):
        candidates.append((trial, random_subspace(n, k, derive_rng(seed, k, trial))))
    best_value = -math.inf
    best_id = candidates[0][0]
    for trial_id, sub in candidates:
        value = min_on_sphere(
            sub, p, q, restarts=restarts, seed=derive_int(seed, k, trial_id + 1)
        ).value
        if value > best_value:
            best_value, best_id = value, trial_id
    if k >= 2:
        bounds = inclusion_upper_bounds(p, q, k)
    else:
        bounds = UpperBounds(sharp=math.inf, safe=math.inf)
    return BernsteinEstimate(
        k=k, p=p, q=q, n=n, trials=subspace_trials,
        lower_estimate=best_value,
        upper_bound_sharp=bounds.sharp,
        upper_bound_safe=bounds.safe,
        best_subspace_seed=best_id,
        seed=seed,
    )


def estimates_to_csv(estimates) -> str:
    lines = [CSV_HEADER]
    lines.extend(e.to_csv_row() for e in estimates)
    return "\n".join(lines) + "\n"


def estimates_to_jsonl(estimates) -> str:
    return "".join(e.to_json() + "\n" for e in estimates)
