"""Dense real linear algebra substrate.

Thin, validated wrappers around numpy: stable orthonormalization, guarded
square solves and orthogonal complement projectors. All functions are pure;
matrices are 2-D float64 arrays, vectors 1-D.
"""

import numpy as np

from .errors import RankDeficient, SingularSystem

INDEPENDENCE_TOL = 1e-10
CONDITION_LIMIT = 1e12
RESIDUAL_TOL = 1e-10


def as_vector(values) -> np.ndarray:
    vec = np.array(values, dtype=float)
    if vec.ndim != 1 or vec.size == 0:
        raise ValueError("expected a non-empty 1-D real vector")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector entries must be finite")
    return vec


def as_matrix(values) -> np.ndarray:
    mat = np.array(values, dtype=float)
    if mat.ndim != 2 or mat.shape[0] < 1 or mat.shape[1] < 1:
        raise ValueError("expected a 2-D matrix with at least one row and column")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix entries must be finite")
    return mat


def orthonormalize(basis, independence_tol: float = INDEPENDENCE_TOL) -> np.ndarray:
    """Orthonormal basis with the same column span as `basis`.

    Columns must be independent: the smallest singular value has to exceed
    `independence_tol` times the largest. Column signs are normalized so the
    result is deterministic (positive diagonal of the triangular factor).
    """
    mat = as_matrix(basis)
    n, k = mat.shape
    if k > n:
        raise RankDeficient(f"{k} columns cannot be independent in dimension {n}")
    svals = np.linalg.svd(mat, compute_uv=False)
    if svals[-1] <= independence_tol * svals[0]:
        raise RankDeficient(
            f"columns dependent up to tolerance (sigma_min/sigma_max = "
            f"{svals[-1] / svals[0] if svals[0] else 0.0:.3e})"
        )
    q, r = np.linalg.qr(mat)
    signs = np.sign(np.diagonal(r))
    signs = np.where(signs == 0.0, 1.0, signs)
    return q * signs


def solve_square(matrix, rhs, condition_limit: float = CONDITION_LIMIT,
                 residual_tol: float = RESIDUAL_TOL) -> np.ndarray:
    """Solve A x = b with a condition guard and a certified residual.

    Raises SingularSystem when the condition estimate exceeds
    `condition_limit` or when iterative refinement cannot push the residual
    below `residual_tol * ||b||`.
    """
    a = as_matrix(matrix)
    b = as_vector(rhs)
    if a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.shape[0] != b.size:
        raise ValueError("right-hand side length does not match matrix size")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > condition_limit:
        raise SingularSystem(f"condition estimate {cond:.3e} exceeds {condition_limit:.1e}")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    # One or two refinement passes keep the residual near machine level even
    # for the ill-conditioned power-basis systems this package generates.
    bound = residual_tol * np.linalg.norm(b)
    for _ in range(2):
        res = b - a @ x
        if np.linalg.norm(res) <= bound:
            break
        x = x + np.linalg.solve(a, res)
    if np.linalg.norm(b - a @ x) > bound:
        raise SingularSystem("refined residual still exceeds tolerance")
    return x


def complement_projector(vectors, dim: int | None = None,
                         independence_tol: float = INDEPENDENCE_TOL) -> np.ndarray:
    """Orthogonal projector onto the complement of span(vectors) in R^dim.

    `vectors` may be empty, in which case `dim` is required and the identity
    is returned. Each vector is normalized before Gram-Schmidt so badly
    scaled inputs (e.g. high powers of integer nodes) do not trip the
    independence test spuriously.
    """
    vecs = [as_vector(v) for v in vectors]
    if vecs:
        n = vecs[0].size
        if any(v.size != n for v in vecs):
            raise ValueError("all vectors must have the same length")
        if dim is not None and dim != n:
            raise ValueError(f"dim={dim} does not match vector length {n}")
    else:
        if dim is None:
            raise ValueError("dim is required when no vectors are given")
        n = int(dim)
        if n < 1:
            raise ValueError("dim must be at least 1")
    q = np.zeros((n, 0))
    for v in vecs:
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise RankDeficient("zero vector in spanning set")
        w = v / norm
        for _ in range(2):  # re-orthogonalize once for stability
            w = w - q @ (q.T @ w)
        rem = np.linalg.norm(w)
        if rem <= independence_tol:
            raise RankDeficient("vector numerically dependent on the previous ones")
        q = np.column_stack([q, w / rem])
    proj = np.eye(n) - q @ q.T
    return (proj + proj.T) / 2.0
