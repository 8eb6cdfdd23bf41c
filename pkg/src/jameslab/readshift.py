"""Finite truncation of a weighted unilateral shift on an l2-direct sum.

The ambient space is a direct sum of James spaces with strictly increasing
integer exponents p_1 < ... < p_{m+1}, combined in l2; blocks are truncated
to R^M. The shift sends block i to slot i+1 scaled by beta_i (the exponent
reinterpretation is the identity on coordinates, only the norm changes);
the last block falls off the truncation. Since Jq <= Jp for p < q and the
weights tend to zero, the shift is a contraction dominated by max beta_i
and its tail beyond a cutoff is dominated by the tail weights.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .bernstein import _fmt, bernstein_lower_estimate
from .errors import DimensionError, InvariantViolation, ParseError, ShapeMismatch
from .james import james_norm
from .seeding import derive_int, derive_rng

_CONFIG_KEYS = {"exponents", "weights", "block_dim"}
DECAY_CSV_HEADER = "block,p,q,beta,k,value,upper_safe"


@dataclass(frozen=True)
class ShiftConfig:
    exponents: tuple  # strictly increasing positive integers, one per block
    weights: tuple    # positive reals, one per shifted block (len = blocks - 1)
    block_dim: int

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        wts = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "weights", wts)
        object.__setattr__(self, "block_dim", int(self.block_dim))
        if len(exps) < 2 or any(e < 1 for e in exps):
            raise ValueError("need at least two positive integer exponents")
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        if len(wts) != len(exps) - 1:
            raise ValueError("need exactly one weight per shifted block")
        if any(not math.isfinite(w) or w <= 0 for w in wts):
            raise ValueError("weights must be positive and finite")
        if self.block_dim < 1:
            raise ValueError("block_dim must be at least 1")

    @property
    def block_count(self) -> int:
        return len(self.exponents)

    def to_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "weights": list(self.weights),
            "block_dim": self.block_dim,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ShiftConfig":
        if not isinstance(data, dict):
            raise ParseError("shift config must be a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ParseError(f"unknown shift config keys: {sorted(unknown)}")
        try:
            return cls(
                exponents=tuple(data["exponents"]),
                weights=tuple(data["weights"]),
                block_dim=data["block_dim"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed shift config: {exc}") from exc


def load_shift_config(path) -> ShiftConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read shift config {path}: {exc}") from exc
    return ShiftConfig.from_dict(data)


@dataclass
class DirectSumVec:
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "blocks",
                           tuple(np.asarray(b, dtype=float) for b in self.blocks))

    @classmethod
    def zeros(cls, cfg: ShiftConfig) -> "DirectSumVec":
        return cls(tuple(np.zeros(cfg.block_dim) for _ in range(cfg.block_count)))


def random_direct_sum(cfg: ShiftConfig, rng: np.random.Generator) -> DirectSumVec:
    return DirectSumVec(tuple(rng.standard_normal((cfg.block_count, cfg.block_dim))))


def _check_shape(v: DirectSumVec, cfg: ShiftConfig) -> None:
    if len(v.blocks) != cfg.block_count:
        raise ShapeMismatch(
            f"vector has {len(v.blocks)} blocks, config expects {cfg.block_count}")
    for i, block in enumerate(v.blocks):
        if block.shape != (cfg.block_dim,):
            raise ShapeMismatch(f"block {i + 1} has shape {block.shape}, "
                                f"expected ({cfg.block_dim},)")


def direct_sum_norm(v: DirectSumVec, cfg: ShiftConfig) -> float:
    """l2 combination of the per-block James norms at their own exponents."""
    _check_shape(v, cfg)
    total = sum(james_norm(block, p) ** 2
                for block, p in zip(v.blocks, cfg.exponents))
    return math.sqrt(total)


def apply_shift(v: DirectSumVec, cfg: ShiftConfig) -> DirectSumVec:
    """(x_1, ..., x_B) -> (0, beta_1 x_1, ..., beta_{B-1} x_{B-1}).

    Coordinates are copied unchanged; block i + 1 of the output is simply
    measured at the next exponent. The final input block is discarded, the
    truncation semantics of a unilateral shift.
    """
    _check_shape(v, cfg)
    out = [np.zeros(cfg.block_dim)]
    out.extend(w * b for w, b in zip(cfg.weights, v.blocks[:-1]))
    return DirectSumVec(tuple(out))


@dataclass
class TailProbeReport:
    max_ratio: float
    bound: float
    n_cut: int
    trials: int


def tail_norm_probe(cfg: ShiftConfig, n_cut: int, trials: int,
                    seed: int) -> TailProbeReport:
    """Compare the shift restricted to blocks beyond n_cut against its cap.

    For random vectors v, the ratio ||W(I - P_{n_cut}) v|| / ||v|| (with
    P_{n_cut} keeping the first n_cut blocks) never exceeds the largest
    surviving weight max_{i > n_cut} beta_i, because reinterpreting a block
    at the next exponent cannot increase its norm. The probe checks this on
    `trials` samples and raises InvariantViolation on any excess; n_cut
    must leave at least one tail weight (0 <= n_cut < len(weights)).
    """
    m = len(cfg.weights)
    if not 0 <= n_cut < m:
        raise ValueError(f"need 0 <= n_cut < {m}, got {n_cut}")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    bound = max(cfg.weights[n_cut:])
    rng = derive_rng(seed, n_cut)
    max_ratio = 0.0
    for _ in range(trials):
        v = random_direct_sum(cfg, rng)
        denom = direct_sum_norm(v, cfg)
        if denom == 0.0:
            continue
        tail_blocks = list(v.blocks)
        for i in range(n_cut):
            tail_blocks[i] = np.zeros(cfg.block_dim)
        ratio = direct_sum_norm(apply_shift(DirectSumVec(tuple(tail_blocks)), cfg),
                                cfg) / denom
        if ratio > max_ratio:
            max_ratio = ratio
    if max_ratio > bound + 1e-9:
        raise InvariantViolation(
            f"tail ratio {max_ratio:.12g} exceeds weight bound {bound:.12g}")
    return TailProbeReport(max_ratio=max_ratio, bound=bound, n_cut=n_cut,
                           trials=trials)


@dataclass
class DecayCell:
    """Scaled Bernstein estimate for one shifted block at one dimension k."""

    block: int
    p: int
    q: int
    beta: float
    k: int
    value: float
    upper_safe: float

    def to_csv_row(self) -> str:
        return ",".join([
            str(self.block), str(self.p), str(self.q), _fmt(self.beta),
            str(self.k), _fmt(self.value), _fmt(self.upper_safe),
        ])


def block_bernstein_decay(cfg: ShiftConfig, k_max: int, trials: int, seed: int,
                          restarts: int = 3) -> list:
    """Per-block, per-k table of beta_i-scaled Bernstein estimates.

    Block i acts from exponent p_i into p_{i+1} with weight beta_i; for
    each k in 2..k_max the sampled lower estimate and the safe cap are
    scaled by beta_i. Entries shrink in k, the finite-stage version of
    the blockwise decay of the shift.
    """
    if k_max < 2:
        raise DimensionError("k_max must be at least 2")
    cells = []
    for i, (p, q, beta) in enumerate(
            zip(cfg.exponents, cfg.exponents[1:], cfg.weights), start=1):
        for k in range(2, k_max + 1):
            est = bernstein_lower_estimate(
                k, cfg.block_dim, p, q, trials,
                seed=derive_int(seed, i, k), restarts=restarts)
            cells.append(DecayCell(
                block=i, p=p, q=q, beta=beta, k=k,
                value=beta * est.lower_estimate,
                upper_safe=beta * est.upper_bound_safe,
            ))
    return cells


def decay_to_csv(cells) -> str:
    lines = [DECAY_CSV_HEADER]
    lines.extend(c.to_csv_row() for c in cells)
    return "\n".join(lines) + "\n"
