"""Named invariant checks behind the `verify` CLI command.

Each check is a pure function of a seed that raises CheckFailed on
violation. Scales are kept small so the whole registry runs in well under
a minute; the pytest suite exercises the same properties at full scale.
"""

import math

import numpy as np

from . import alternation, bernstein, james, numerics, readshift
from .errors import JamesLabError
from .seeding import derive_int, derive_rng


class CheckFailed(JamesLabError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def check_projector_laws(seed):
    rng = derive_rng(seed, 0)
    for trial in range(10):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, n))
        vecs = [rng.standard_normal(n) for _ in range(m)]
        proj = numerics.complement_projector(vecs)
        _require(np.max(np.abs(proj @ proj - proj)) <= 1e-10, f"P^2 != P (trial {trial})")
        _require(np.max(np.abs(proj - proj.T)) <= 1e-10, f"P not symmetric (trial {trial})")
        for v in vecs:
            _require(np.max(np.abs(proj @ v)) <= 1e-10 * max(1.0, np.max(np.abs(v))),
                     f"P v != 0 (trial {trial})")


def check_orthonormalize(seed):
    rng = derive_rng(seed, 0)
    for trial in range(10):
        n = int(rng.integers(2, 10))
        k = int(rng.integers(1, n + 1))
        mat = rng.standard_normal((n, k))
        q = numerics.orthonormalize(mat)
        _require(np.max(np.abs(q.T @ q - np.eye(k))) <= 1e-12,
                 f"columns not orthonormal (trial {trial})")
        resid = mat - q @ (q.T @ mat)
        _require(np.max(np.abs(resid)) <= 1e-10 * np.max(np.abs(mat)),
                 f"span changed (trial {trial})")
        q2 = numerics.orthonormalize(q)
        _require(np.max(np.abs(q2 - q @ (q.T @ q2))) <= 1e-10,
                 f"not idempotent up to signs (trial {trial})")


def check_solve_residual(seed):
    rng = derive_rng(seed, 0)
    for trial in range(10):
        n = int(rng.integers(1, 9))
        a = rng.standard_normal((n, n)) + n * np.eye(n)
        b = rng.standard_normal(n)
        x = numerics.solve_square(a, b)
        _require(np.linalg.norm(a @ x - b) <= 1e-10 * np.linalg.norm(b),
                 f"residual too large (trial {trial})")


def check_oracle_agreement(seed):
    rng = derive_rng(seed, 0)
    for trial in range(40):
        n = int(rng.integers(1, 11))
        a = rng.uniform(-2.0, 2.0, size=n)
        for p in (1.0, 1.5, 2.0, 3.0):
            dp = james.james_norm(a, p)
            ex = james.james_norm_oracle(a, p)
            _require(abs(dp - ex) <= 1e-12 * (1.0 + ex),
                     f"DP {dp} != oracle {ex} (trial {trial}, p={p})")


def check_homogeneity(seed):
    rng = derive_rng(seed, 0)
    for trial in range(30):
        a = rng.uniform(-3.0, 3.0, size=int(rng.integers(2, 12)))
        lam = float(rng.uniform(-4.0, 4.0))
        for p in (0.5, 1.0, 2.0):
            lhs = james.james_norm(lam * a, p)
            rhs = abs(lam) * james.james_norm(a, p)
            _require(abs(lhs - rhs) <= 1e-12 * (1.0 + rhs), f"homogeneity (trial {trial})")


def check_triangle(seed):
    rng = derive_rng(seed, 0)
    for trial in range(30):
        n = int(rng.integers(2, 12))
        a = rng.uniform(-2.0, 2.0, size=n)
        b = rng.uniform(-2.0, 2.0, size=n)
        for p in (1.0, 1.5, 2.0):
            _require(
                james.james_norm(a + b, p)
                <= james.james_norm(a, p) + james.james_norm(b, p) + 1e-10,
                f"triangle inequality (trial {trial}, p={p})")


def check_monotone_in_exponent(seed):
    rng = derive_rng(seed, 0)
    for trial in range(30):
        a = rng.uniform(-2.0, 2.0, size=int(rng.integers(2, 12)))
        for p, q in ((1.0, 2.0), (1.0, 3.0), (2.0, 3.0), (0.5, 1.0)):
            _require(james.james_norm(a, q) <= james.james_norm(a, p) + 1e-12,
                     f"J_q > J_p (trial {trial}, p={p}, q={q})")


def check_alternating_value(seed):
    for k in range(2, 7):
        a = (-1.0) ** np.arange(k)
        for p in (1.0, 1.5, 2.0, 3.0):
            want = 2.0 * (k - 1) ** (1.0 / p)
            got = james.james_norm(a, p)
            _require(abs(got - want) <= 1e-12 * want,
                     f"alternating value {got} != {want} (k={k}, p={p})")


def check_interpolation_sweep(seed):
    rng = derive_rng(seed, 0)
    for trial in range(200):
        a = rng.uniform(-2.0, 2.0, size=int(rng.integers(1, 12)))
        rep = james.check_interpolation(a, 1.0, 3.0)
        _require(rep.holds_homogeneous, f"interpolation failed (trial {trial})")


def check_alternation_count(seed):
    rng = derive_rng(seed, 0)
    for trial in range(40):
        n = int(rng.integers(1, 10))
        a = rng.choice([-1.0, -0.5, 0.0, 0.5, 1.0], size=n)
        greedy = alternation.alternation_count(a, tol=0.0)
        best = 0
        for mask in range(1, 2 ** n):
            sub = [a[i] for i in range(n) if mask >> i & 1]
            if any(abs(x) < 1.0 for x in sub):
                continue
            if all(x * y < 0 for x, y in zip(sub, sub[1:])):
                best = max(best, len(sub))
        _require(greedy == best, f"greedy {greedy} != brute {best} (trial {trial})")


def check_witness_roundtrip(seed):
    for trial in range(20):
        rng = derive_rng(seed, trial)
        k = int(rng.integers(1, 5))
        n = int(rng.integers(k, 11))
        sub = alternation.random_subspace(n, k, rng)
        cert = alternation.find_witness(sub, tol=1e-9)
        _require(bool(alternation.verify_certificate(sub, cert, tol=1e-9)),
                 f"certificate failed verification (trial {trial})")
        _require(alternation.alternation_count(cert.vector, tol=1e-9) >= k,
                 f"too few alternating coordinates (trial {trial})")
        for p in (1.0, 2.0):
            _require(james.james_norm(cert.vector, p) >= 2.0 * (k - 1) ** (1.0 / p) - 1e-9,
                     f"witness lower bound violated (trial {trial}, p={p})")


def check_projector_chain(seed):
    chain = alternation.vandermonde_chain(12, 5)
    for k in range(6):
        proj = chain.projectors[k]
        rank = int(np.sum(np.linalg.svd(proj, compute_uv=False) > 1e-8))
        _require(rank == 12 - k, f"rank(P_{k}) = {rank}, wanted {12 - k}")
        if k:
            prev = chain.projectors[k - 1]
            _require(np.max(np.abs(proj @ prev - proj)) <= 1e-9,
                     f"chain not nested at k={k}")
            for j in range(1, k + 1):
                zeta = alternation.power_basis_vector(12, j)
                _require(np.max(np.abs(proj @ zeta)) <= 1e-9 * np.max(zeta),
                         f"P_{k} does not kill the degree-{j - 1} vector")


def check_injectivity(seed):
    chain = alternation.vandermonde_chain(10, 4)
    for k in range(1, 5):
        rep = alternation.injectivity_probe(chain, k, trials=100, seed=seed)
        _require(rep.min_ratio > 0.0, f"projected pair collapse at k={k}")


def check_poly_signs(seed):
    rng = derive_rng(seed, 0)
    for trial in range(150):
        m = int(rng.integers(0, 7))
        coeffs = rng.uniform(-1.0, 1.0, size=m + 1)
        if np.max(np.abs(coeffs)) <= 1e-9:
            continue
        for _ in range(5):
            pts = np.sort(rng.uniform(-3.0, 3.0, size=m + 2))
            if np.any(np.diff(pts) <= 0):
                continue
            verdict = alternation.poly_sign_check(coeffs, pts)
            values = np.polynomial.polynomial.polyval(pts, coeffs)
            if np.min(np.abs(values)) > 1e-9:
                _require(not verdict.pattern_satisfied,
                         f"nonzero polynomial alternated (trial {trial})")


def check_interleave(seed):
    rng = derive_rng(seed, 0)
    for trial in range(60):
        k = int(rng.integers(1, 7))
        r = tuple(sorted(rng.choice(20, size=k, replace=False).tolist()))
        s = tuple(sorted(rng.choice(20, size=k, replace=False).tolist()))
        merged = alternation.interleave_indices(r, s)
        if r == s:
            _require(merged is None, "equal lists must merge to None")
            continue
        _require(merged is not None and len(merged) == k + 1,
                 f"merged length {merged} (trial {trial})")
        _require(all(b > a for a, b in zip(merged, merged[1:])),
                 f"merged not increasing (trial {trial})")
        _require(set(merged) <= set(r) | set(s), f"foreign index (trial {trial})")


def check_bound_formulas(seed):
    b = bernstein.inclusion_upper_bounds(1.0, 2.0, 5)
    _require(abs(b.sharp - 2.0 ** -0.5 * 4.0 ** -0.5) <= 1e-15, "sharp bound value")
    _require(abs(b.safe - 0.5) <= 1e-15, "safe bound value")
    for p, q in ((1.0, 2.0), (1.0, 3.0), (2.0, 3.0)):
        prev = math.inf
        for k in range(2, 9):
            cur = bernstein.inclusion_upper_bounds(p, q, k).safe
            _require(cur < prev, f"safe bound not decreasing in k (p={p}, q={q})")
            prev = cur
    for k in (3, 5, 8):
        prev = math.inf
        for q in (1.5, 2.0, 3.0, 4.0):
            cur = bernstein.inclusion_upper_bounds(1.0, q, k).safe
            _require(cur < prev, f"safe bound not decreasing in q (k={k})")
            prev = cur


def check_epsilon_threshold(seed):
    for eps in (0.5, 0.2, 0.1, 0.05):
        hit = any(bernstein.inclusion_upper_bounds(1.0, 2.0, k).safe < eps
                  for k in range(2, 2000))
        _require(hit, f"no k pushes the safe bound below {eps}")


def check_sphere_min_soundness(seed):
    for trial, k in enumerate((2, 3)):
        rng = derive_rng(seed, trial)
        sub = alternation.random_subspace(12, k, rng)
        res = bernstein.min_on_sphere(sub, 1.0, 2.0, restarts=2, seed=seed)
        safe = bernstein.inclusion_upper_bounds(1.0, 2.0, k).safe
        _require(res.value <= safe + 1e-9,
                 f"sphere minimum {res.value} above safe cap {safe} (k={k})")
        _require(abs(james.james_norm(res.argmin, 1.0) - 1.0) <= 1e-10,
                 "argmin not normalized")


def check_shift_contraction(seed):
    cfg = readshift.ShiftConfig(exponents=tuple(range(1, 7)),
                                weights=tuple(2.0 ** -i for i in range(1, 6)),
                                block_dim=8)
    rng = derive_rng(seed, 0)
    for trial in range(10):
        v = readshift.random_direct_sum(cfg, rng)
        u = readshift.random_direct_sum(cfg, rng)
        alpha = float(rng.uniform(-2.0, 2.0))
        wv = readshift.apply_shift(v, cfg)
        _require(
            readshift.direct_sum_norm(wv, cfg)
            <= max(cfg.weights) * readshift.direct_sum_norm(v, cfg) + 1e-10,
            f"shift not contractive (trial {trial})")
        lin_lhs = readshift.apply_shift(
            readshift.DirectSumVec(tuple(alpha * a + b for a, b in zip(v.blocks, u.blocks))),
            cfg)
        lin_rhs = [alpha * a + b
                   for a, b in zip(wv.blocks, readshift.apply_shift(u, cfg).blocks)]
        err = max(np.max(np.abs(a - b)) for a, b in zip(lin_lhs.blocks, lin_rhs))
        scale = max(1.0, max(np.max(np.abs(b)) for b in lin_rhs))
        _require(err <= 1e-12 * scale, f"shift not linear (trial {trial})")


def check_shift_tail(seed):
    cfg = readshift.ShiftConfig(exponents=tuple(range(1, 8)),
                                weights=tuple(2.0 ** -i for i in range(1, 7)),
                                block_dim=8)
    for cut in (2, 4):
        rep = readshift.tail_norm_probe(cfg, cut, trials=30, seed=seed)
        _require(rep.max_ratio <= rep.bound + 1e-9,
                 f"tail ratio {rep.max_ratio} above bound {rep.bound} (cut={cut})")


CHECKS = [
    ("numerics.projector_laws", check_projector_laws),
    ("numerics.orthonormalize", check_orthonormalize),
    ("numerics.solve_residual", check_solve_residual),
    ("james.oracle_agreement", check_oracle_agreement),
    ("james.homogeneity", check_homogeneity),
    ("james.triangle", check_triangle),
    ("james.monotone_in_exponent", check_monotone_in_exponent),
    ("james.alternating_value", check_alternating_value),
    ("james.interpolation_sweep", check_interpolation_sweep),
    ("alternation.count_greedy", check_alternation_count),
    ("alternation.witness_roundtrip", check_witness_roundtrip),
    ("alternation.projector_chain", check_projector_chain),
    ("alternation.injectivity", check_injectivity),
    ("alternation.poly_signs", check_poly_signs),
    ("alternation.interleave", check_interleave),
    ("bernstein.bound_formulas", check_bound_formulas),
    ("bernstein.epsilon_threshold", check_epsilon_threshold),
    ("bernstein.sphere_min_soundness", check_sphere_min_soundness),
    ("readshift.contraction_linearity", check_shift_contraction),
    ("readshift.tail_bound", check_shift_tail),
]


def check_names() -> list:
    return [name for name, _ in CHECKS]


def run_checks(seed: int, corrupt: str | None = None):
    """Run every registered check; returns a list of (name, ok, detail).

    `corrupt` names a check that is forced to fail (test hook for the
    verify command's failure path).
    """
    results = []
    for index, (name, fn) in enumerate(CHECKS):
        try:
            if corrupt == name:
                raise CheckFailed("corrupted by test hook")
            fn(derive_int(seed, index))
            results.append((name, True, ""))
        except CheckFailed as exc:
            results.append((name, False, str(exc)))
    return results
