"""Alternating-sign witness vectors in subspaces of R^N.

Every k-dimensional subspace of R^N contains a vector of sup-norm one with
k coordinates equal to +-1 in alternating sign order. This module finds such
vectors by exhaustive search and certifies them, and it houses the
supporting machinery: the power-basis projector chain, an injectivity
probe for the projected alternating sets, the sign-alternating polynomial
test, the index interleaving rule and a truncation-stabilization driver for
subspaces given as sections of decaying sequences.
"""

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LemmaViolation, NoWitnessFound, ParseError
from .james import sup_norm
from .numerics import as_matrix, as_vector, complement_projector, orthonormalize
from .seeding import derive_rng

ORTHONORMAL_TOL = 1e-10
DEFAULT_WITNESS_TOL = 1e-9
_SUBSPACE_KEYS = {"ambient_dim", "dim", "basis"}


@dataclass(eq=False)
class Subspace:
    """A k-dimensional subspace of R^N held as an N x k orthonormal basis."""

    basis: np.ndarray

    def __post_init__(self):
        self.basis = as_matrix(self.basis)
        n, k = self.basis.shape
        if k > n:
            raise ValueError(f"dim {k} exceeds ambient dim {n}")
        gram = self.basis.T @ self.basis
        if np.max(np.abs(gram - np.eye(k))) > ORTHONORMAL_TOL:
            raise ValueError("basis columns are not orthonormal; use Subspace.from_span")

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def from_span(cls, columns) -> "Subspace":
        """Orthonormalize an independent spanning set (raises RankDeficient)."""
        return cls(orthonormalize(columns))

    def project(self, vector) -> np.ndarray:
        v = as_vector(vector)
        return self.basis @ (self.basis.T @ v)

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "basis": [float(x) for x in self.basis.ravel()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Subspace":
        return cls(subspace_matrix_from_dict(data))


def subspace_matrix_from_dict(data: dict) -> np.ndarray:
    """Parse the subspace JSON schema into a raw N x k basis matrix.

    Only shapes are validated here; orthonormality is the Subspace
    constructor's concern (use Subspace.from_span for a plain spanning set).
    """
    if not isinstance(data, dict):
        raise ParseError("subspace JSON must be an object")
    unknown = set(data) - _SUBSPACE_KEYS
    if unknown:
        raise ParseError(f"unknown subspace keys: {sorted(unknown)}")
    try:
        n = int(data["ambient_dim"])
        k = int(data["dim"])
        flat = [float(x) for x in data["basis"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed subspace JSON: {exc}") from exc
    if n < 1 or k < 1 or len(flat) != n * k:
        raise ParseError(f"basis must hold {n}*{k} row-major entries")
    return np.array(flat).reshape(n, k)


def random_subspace(n: int, k: int, rng: np.random.Generator) -> Subspace:
    """Rotation-invariant random subspace: orthonormalized Gaussian columns."""
    return Subspace(orthonormalize(rng.standard_normal((n, k))))


@dataclass
class AlternationCertificate:
    """Witness that a subspace meets the alternating +-1 set.

    `indices` are 1-based positions i_1 < ... < i_k at which the vector
    takes the values orientation * (-1)^(j-1); the vector has sup-norm one
    up to `sup_residual` and lies in the certified subspace.
    """

    vector: np.ndarray
    indices: tuple
    orientation: int
    sup_residual: float
    coord_residual: float
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "ambient_dim": len(self.vector),
            "dim": len(self.indices),
            "vector": [float(x) for x in self.vector],
            "indices": [int(i) for i in self.indices],
            "orientation": int(self.orientation),
            "sup_residual": float(self.sup_residual),
            "coord_residual": float(self.coord_residual),
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AlternationCertificate":
        try:
            return cls(
                vector=np.array([float(x) for x in data["vector"]]),
                indices=tuple(int(i) for i in data["indices"]),
                orientation=int(data["orientation"]),
                sup_residual=float(data["sup_residual"]),
                coord_residual=float(data["coord_residual"]),
                seed=data.get("seed"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed certificate JSON: {exc}") from exc


@dataclass
class VerifyResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def alternation_count(a, tol: float = 0.0) -> int:
    """Length of the longest sign-alternating subsequence with |a_i| >= 1 - tol.

    A greedy left-to-right scan taking every qualifying entry whose sign
    differs from the last one taken is optimal (exchange argument: replacing
    any optimal pick by the earliest available one never hurts).
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    vec = as_vector(a)
    count = 0
    last = 0
    for x in vec:
        if x == 0.0 or abs(x) < 1.0 - tol:
            continue
        sign = 1 if x > 0 else -1
        if sign != last:
            count += 1
            last = sign
    return count


def _alternating_pattern(k: int) -> np.ndarray:
    # (-1)^j for j = 1..k: starts at -1
    return -((-1.0) ** np.arange(k))


def _subset_batches(n: int, k: int, batch: int):
    combos = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(combos, batch))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _certify(subspace: Subspace, vector: np.ndarray, indices0: np.ndarray,
             tol: float) -> AlternationCertificate | None:
    first = vector[indices0[0]]
    orientation = -1 if first < 0 else 1
    signs = orientation * (-1.0) ** np.arange(indices0.size)
    cert = AlternationCertificate(
        vector=vector,
        indices=tuple(int(i) + 1 for i in indices0),
        orientation=orientation,
        sup_residual=abs(sup_norm(vector) - 1.0),
        coord_residual=float(np.max(np.abs(vector[indices0] - signs))),
    )
    return cert if verify_certificate(subspace, cert, tol) else None


def find_witness(subspace: Subspace, tol: float = DEFAULT_WITNESS_TOL,
                 batch_size: int = 4096) -> AlternationCertificate:
    """Find a certified alternating +-1 witness in the subspace.

    Index subsets S = {i_1 < ... < i_k} are enumerated in lexicographic
    order (in vectorized batches); for each, the k x k system basis_S c =
    pattern with pattern_j = (-1)^j is solved, and the candidate x = basis c
    is accepted once sup|x| <= 1 + tol and the rescaled vector certifies at
    tolerance `tol`. Negating x gives the mirrored orientation, so a single
    solve covers both sign patterns. Singular subsets are skipped.

    Existence is guaranteed for every k-dimensional subspace, so exhausting
    all subsets raises NoWitnessFound and indicates a numerical problem.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    basis = subspace.basis
    n, k = basis.shape
    pattern = _alternating_pattern(k)
    for subsets in _subset_batches(n, k, batch_size):
        systems = basis[subsets]  # (m, k, k): rows i_1..i_k of the basis
        rhs = np.broadcast_to(pattern, subsets.shape)[..., None]
        with np.errstate(all="ignore"):
            try:
                coeffs = np.linalg.solve(systems, rhs)[..., 0]
            except np.linalg.LinAlgError:
                # batch contains exactly singular subsets: solve the rest
                dets = np.linalg.det(systems)
                good = dets != 0.0
                coeffs = np.full(subsets.shape, np.nan)
                if good.any():
                    coeffs[good] = np.linalg.solve(systems[good], rhs[good])[..., 0]
            candidates = coeffs @ basis.T
            sups = np.max(np.abs(candidates), axis=1)
        hits = np.nonzero(sups <= 1.0 + tol)[0]  # NaN sups compare False
        for row in hits:
            cert = _certify(subspace, candidates[row] / sups[row], subsets[row], tol)
            if cert is not None:
                return cert
    raise NoWitnessFound(
        f"no witness at tol={tol} in dim-{k} subspace of R^{n}; "
        "existence is guaranteed, so this is a numerical failure"
    )


def verify_certificate(subspace: Subspace, cert: AlternationCertificate,
                       tol: float = DEFAULT_WITNESS_TOL) -> VerifyResult:
    """Re-check a certificate from scratch against its subspace.

    All residuals are recomputed from the vector; the stored ones are
    treated as claims. Returns a falsy result carrying a reason code
    instead of raising.
    """
    n, k = subspace.basis.shape
    idx = np.asarray(cert.indices, dtype=int)
    if idx.ndim != 1 or idx.size != k:
        return VerifyResult(False, "IndexCount")
    if idx.size > 1 and np.any(np.diff(idx) <= 0):
        return VerifyResult(False, "NonIncreasingIndices")
    if idx[0] < 1 or idx[-1] > n:
        return VerifyResult(False, "IndexRange")
    if cert.orientation not in (-1, 1):
        return VerifyResult(False, "Orientation")
    vec = np.asarray(cert.vector, dtype=float)
    if vec.shape != (n,) or not np.all(np.isfinite(vec)):
        return VerifyResult(False, "Shape")
    if abs(sup_norm(vec) - 1.0) > tol:
        return VerifyResult(False, "SupNorm")
    signs = cert.orientation * (-1.0) ** np.arange(k)
    if np.max(np.abs(vec[idx - 1] - signs)) > tol:
        return VerifyResult(False, "CoordPattern")
    if np.max(np.abs(vec - subspace.project(vec))) > tol:
        return VerifyResult(False, "Membership")
    return VerifyResult(True, None)


@dataclass
class ProjectionChain:
    """Nested orthogonal projectors P_0 = I, P_1, ..., P_max_k on R^N.

    P_k projects onto the complement of span{zeta^1, ..., zeta^k} where
    zeta^j = (1^(j-1), 2^(j-1), ..., N^(j-1)), so rank(P_k) = N - k and
    range(P_{k+1}) is contained in range(P_k).
    """

    n: int
    max_k: int
    projectors: list = field(repr=False)


def power_basis_vector(n: int, j: int) -> np.ndarray:
    """zeta^j in R^n with entries i^(j-1) at positions i = 1..n."""
    if j < 1:
        raise ValueError("j must be at least 1")
    return np.arange(1.0, n + 1.0) ** (j - 1)


def vandermonde_chain(n: int, max_k: int) -> ProjectionChain:
    """Build the power-basis projector chain P_0..P_max_k (needs max_k < n)."""
    if not 0 <= max_k < n:
        raise ValueError(f"need 0 <= max_k < n, got max_k={max_k}, n={n}")
    zetas = [power_basis_vector(n, j) for j in range(1, max_k + 1)]
    projectors = [complement_projector(zetas[:k], dim=n) for k in range(max_k + 1)]
    return ProjectionChain(n=n, max_k=max_k, projectors=projectors)


@dataclass
class InjectivityReport:
    min_ratio: float
    trials: int


def _sample_alternating(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    x = rng.uniform(-1.0, 1.0, size=n)
    pos = np.sort(rng.choice(n, size=k, replace=False))
    x[pos] = (-1.0) ** np.arange(k)  # +1, -1, ... : alternating, starting +1
    return x


def injectivity_probe(chain: ProjectionChain, k: int, trials: int,
                      seed: int) -> InjectivityReport:
    """Probe injectivity of P_k on vectors with k alternating +-1 coordinates.

    Samples pairs x != y from the +1-start alternating set and reports the
    minimum of ||P_k (x - y)|| / ||x - y|| over all trials; the sampler
    rejects pairs closer than 1e-6 so the ratio is well defined. The result
    must be strictly positive; zero would contradict injectivity.
    """
    if not 1 <= k <= chain.max_k:
        raise ValueError(f"need 1 <= k <= {chain.max_k}, got {k}")
    proj = chain.projectors[k]
    rng = derive_rng(seed, k)
    min_ratio = math.inf
    for _ in range(trials):
        x = _sample_alternating(rng, chain.n, k)
        y = _sample_alternating(rng, chain.n, k)
        diff = x - y
        dist = np.linalg.norm(diff)
        while dist <= 1e-6:
            y = _sample_alternating(rng, chain.n, k)
            diff = x - y
            dist = np.linalg.norm(diff)
        ratio = np.linalg.norm(proj @ diff) / dist
        if ratio < min_ratio:
            min_ratio = float(ratio)
    return InjectivityReport(min_ratio=min_ratio, trials=trials)


@dataclass
class PolySignVerdict:
    pattern_satisfied: bool
    must_be_zero: bool


def poly_sign_check(coeffs, points, zero_tol: float = 1e-9) -> PolySignVerdict:
    """Check the alternating weak-sign pattern p(t_1) >= 0, p(t_2) <= 0, ...

    `coeffs` are ascending (coeffs[i] multiplies t^i). A polynomial of
    effective degree d that weakly alternates on d + 2 increasing points is
    identically zero, so a satisfied pattern with any coefficient above
    `zero_tol` in modulus raises LemmaViolation: that combination signals a
    numerical or logic bug, not mathematics.
    """
    c = as_vector(coeffs)
    t = as_vector(points)
    if t.size > 1 and np.any(np.diff(t) <= 0):
        raise ValueError("points must be strictly increasing")
    nonzero = np.nonzero(c)[0]
    eff_degree = int(nonzero[-1]) if nonzero.size else -1
    if t.size < max(eff_degree + 2, 2):
        raise ValueError(
            f"need at least degree + 2 = {eff_degree + 2} points, got {t.size}"
        )
    values = np.polynomial.polynomial.polyval(t, c)
    satisfied = bool(np.all(values[0::2] >= 0.0) and np.all(values[1::2] <= 0.0))
    if not satisfied:
        return PolySignVerdict(pattern_satisfied=False, must_be_zero=False)
    if np.max(np.abs(c)) > zero_tol:
        raise LemmaViolation(
            "weakly alternating sign pattern satisfied by a polynomial with "
            f"coefficients up to {np.max(np.abs(c)):.3e} in modulus"
        )
    return PolySignVerdict(pattern_satisfied=True, must_be_zero=True)


def interleave_indices(r, s):
    """Merge two equal-length increasing index lists into k + 1 indices.

    Returns None when the lists coincide. Otherwise: equal heads are kept
    and the rule recurses on the tails; at the first disagreement the
    smaller head comes first, the larger second, and the remainder of the
    list that supplied the larger head completes the output. Along the
    result, the difference of two vectors interpolating the alternating
    pattern at r and s changes sign at every step.
    """
    r = tuple(int(i) for i in r)
    s = tuple(int(i) for i in s)
    if len(r) != len(s) or not r:
        raise ValueError("index lists must be non-empty and of equal length")
    for name, seq in (("r", r), ("s", s)):
        if any(b <= a for a, b in zip(seq, seq[1:])):
            raise ValueError(f"{name} must be strictly increasing")
    if r == s:
        return None

    def merge(a, b):
        if a[0] == b[0]:
            return (a[0],) + merge(a[1:], b[1:])
        if a[0] < b[0]:
            return (a[0], b[0]) + b[1:]
        return (b[0], a[0]) + a[1:]

    return merge(r, s)


@dataclass
class TruncationReport:
    """Outcome of witness searches over successively longer truncations."""

    stabilized: bool
    certificate: AlternationCertificate
    attempts: list  # (n, AlternationCertificate) in the order tried

    @property
    def index_history(self) -> list:
        return [cert.indices for _, cert in self.attempts]


def truncation_stabilize(basis_provider, tol: float, n_start: int,
                         n_max: int) -> TruncationReport:
    """Run find_witness on growing truncations until the witness settles.

    `basis_provider(n)` must return the Subspace spanned by the first n
    coordinates of k fixed decaying sequences. Truncation lengths double
    from n_start (capped at n_max). Stabilization is declared when two
    successive runs return identical index sets and witness vectors within
    `tol` in sup-norm on their common prefix (coordinates past the shorter
    truncation are new at every extension and are not compared). Reaching
    n_max without that simply yields a report with stabilized=False: the
    indices settle eventually, but no rate is available a priori.
    """
    if not 1 <= n_start <= n_max:
        raise ValueError("need 1 <= n_start <= n_max")
    attempts = []
    prev = None
    n = n_start
    while True:
        sub = basis_provider(n)
        if sub.ambient_dim != n:
            raise ValueError(f"provider returned ambient dim {sub.ambient_dim}, wanted {n}")
        cert = find_witness(sub, tol=tol)
        attempts.append((n, cert))
        if prev is not None and prev.indices == cert.indices:
            common = prev.vector.size
            if sup_norm(prev.vector - cert.vector[:common]) <= tol:
                return TruncationReport(True, cert, attempts)
        prev = cert
        if n >= n_max:
            return TruncationReport(False, cert, attempts)
        n = min(2 * n, n_max)
