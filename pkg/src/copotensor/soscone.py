"""Inner hierarchy based on sum-of-squares feasibility.

Membership at level r asks for a Gram decomposition of P(y): a PSD matrix G
over the degree-(d+r) monomial basis with m(y)^T G m(y) matching every
coefficient.  The basis splits into parity blocks (exponent vectors congruent
mod 2); products across blocks give odd exponents, which never occur in P, so
G may be taken block diagonal.

The solver is untrusted: it alternates projections (with Dykstra correction
on the PSD side) between the affine coefficient-matching set and the PSD
cone, and any Certified result is re-verified by an independent checker
before being reported.  Unknown is never a proof of non-membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .combinatorics import enumerate_exponents
from .polycone import expand_auto, member_C_r
from .tensor import SymTensor

DEFAULT_EIG_TOL = 1e-8
DEFAULT_MATCH_TOL = 1e-8
DEFAULT_MAX_ITERS = 20000

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class GramProblem:
    n: int
    d: int
    r: int
    basis: tuple[Exponent, ...]
    blocks: tuple[tuple[int, ...], ...]       # basis indices per parity class
    targets: dict[Exponent, float]            # even exponent -> coefficient
    # per target: list of (block position, i, j) with i <= j inside the block
    constraints: dict[Exponent, list[tuple[int, int, int]]]


@dataclass
class GramCertificate:
    block_matrices: list[np.ndarray]
    residual: float
    min_eig: float


@dataclass(frozen=True)
class SosVerdict:
    certified: bool
    r: int
    certificate: GramCertificate | None = None
    residual: float | None = None
    min_eig: float | None = None
    iterations: int = 0
    fast_path: bool = False


def build_gram_problem(A: SymTensor, r: int) -> GramProblem:
    """Monomial basis, parity blocks, and coefficient targets for level r."""
    if r < 0:
        raise ValueError("r must be >= 0")
    basis = enumerate_exponents(A.n, A.d + r)
    parity: dict[Exponent, list[int]] = {}
    for idx, mono in enumerate(basis):
        parity.setdefault(tuple(e % 2 for e in mono), []).append(idx)
    blocks = tuple(tuple(v) for _, v in sorted(parity.items()))
    targets = {tuple(2 * t for t in theta): float(c)
               for theta, c in expand_auto(A, r).coeffs.items()}
    constraints: dict[Exponent, list[tuple[int, int, int]]] = {g: [] for g in targets}
    for b, members in enumerate(blocks):
        for ai in range(len(members)):
            for aj in range(ai, len(members)):
                g = tuple(x + y for x, y in zip(basis[members[ai]], basis[members[aj]]))
                constraints[g].append((b, ai, aj))
    return GramProblem(A.n, A.d, r, basis, blocks, targets, constraints)


def jacobi_eigh(M: np.ndarray, sweeps: int = 60, tol: float = 1e-14):
    """Symmetric eigendecomposition by cyclic Jacobi rotations.

    Deterministic and dependency-free; adequate for the block sizes that
    occur here (tens of rows).  Returns (eigenvalues, eigenvectors) with
    columns of V the eigenvectors, M = V diag(w) V^T.
    """
    A = np.array(M, dtype=float)
    m = A.shape[0]
    V = np.eye(m)
    if m == 1:
        return A.diagonal().copy(), V
    scale = max(1.0, float(np.max(np.abs(A))))
    for _ in range(sweeps):
        off = 0.0
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                off = max(off, abs(apq))
                if abs(apq) <= tol * scale:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(1.0 + theta * theta)) \
                    if theta != 0 else 1.0
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        if off <= tol * scale:
            break
    return A.diagonal().copy(), V


def _project_psd(G: np.ndarray) -> np.ndarray:
    # untrusted hot path; the independent checker re-derives eigenvalues
    # with the Jacobi routine, so LAPACK here cannot smuggle in an error
    w, V = np.linalg.eigh(G)
    w = np.maximum(w, 0.0)
    out = (V * w) @ V.T
    return 0.5 * (out + out.T)


def _project_affine(mats: list[np.ndarray], problem: GramProblem) -> list[np.ndarray]:
    """Exact projection onto the coefficient-matching affine set.

    Constraints for distinct target exponents touch disjoint Gram entries, so
    the projection decomposes per target: each involved upper-triangle entry
    shifts by the same amount.
    """
    out = [m.copy() for m in mats]
    for g, pairs in problem.constraints.items():
        t = problem.targets[g]
        cur = 0.0
        weight = 0
        for b, i, j in pairs:
            w = 1 if i == j else 2
            cur += w * out[b][i, j]
            weight += w
        shift = (t - cur) / weight
        for b, i, j in pairs:
            out[b][i, j] += shift
            if i != j:
                out[b][j, i] += shift
    return out


def _residual(mats: list[np.ndarray], problem: GramProblem) -> float:
    worst = 0.0
    for g, pairs in problem.constraints.items():
        cur = 0.0
        for b, i, j in pairs:
            cur += (1 if i == j else 2) * mats[b][i, j]
        worst = max(worst, abs(cur - problem.targets[g]))
    return worst


def _min_eig(mats: list[np.ndarray]) -> float:
    # trusted path: cyclic Jacobi, independent of the solver's LAPACK calls
    return min(float(np.min(jacobi_eigh(m)[0])) for m in mats)


def _min_eig_fast(mats: list[np.ndarray]) -> float:
    return min(float(np.linalg.eigvalsh(m)[0]) for m in mats)


def check_certificate(problem: GramProblem, cert: GramCertificate,
                      eig_tol: float = DEFAULT_EIG_TOL,
                      match_tol: float = DEFAULT_MATCH_TOL) -> bool:
    """Independent re-verification: recompute the reconstructed coefficients
    and the minimum eigenvalue from scratch and test the stated tolerances.
    """
    residual = _residual(cert.block_matrices, problem)
    min_eig = _min_eig(cert.block_matrices)
    cert.residual = residual
    cert.min_eig = min_eig
    return residual <= match_tol and min_eig >= -eig_tol


def solve_gram(problem: GramProblem,
               eig_tol: float = DEFAULT_EIG_TOL,
               match_tol: float = DEFAULT_MATCH_TOL,
               max_iters: int = DEFAULT_MAX_ITERS) -> SosVerdict:
    """Dykstra-corrected alternating projections between the affine
    coefficient-matching set and the PSD cone (blockwise).

    Certified only if the candidate passes :func:`check_certificate`;
    iteration budget exhaustion yields Unknown, which is a verdict, not an
    error and not a non-membership proof.
    """
    if eig_tol <= 0 or match_tol <= 0:
        raise ValueError("tolerances must be positive")
    mats = _project_affine([np.zeros((len(bl), len(bl))) for bl in problem.blocks],
                           problem)
    corrections = [np.zeros_like(m) for m in mats]
    best_residual = float("inf")
    best_min_eig = -float("inf")
    check_every = 25
    it = 0
    while it < max_iters:
        it += 1
        shifted = [m + p for m, p in zip(mats, corrections)]
        psd = [_project_psd(m) for m in shifted]
        corrections = [sh - ps for sh, ps in zip(shifted, psd)]
        mats = _project_affine(psd, problem)
        if it % check_every == 0 or it == max_iters:
            me = _min_eig_fast(mats)
            best_min_eig = max(best_min_eig, me)
            best_residual = min(best_residual, _residual(psd, problem))
            if me >= -eig_tol:
                cert = GramCertificate([m.copy() for m in mats], 0.0, me)
                if check_certificate(problem, cert, eig_tol, match_tol):
                    return SosVerdict(True, problem.r, cert,
                                      cert.residual, cert.min_eig, it)
    return SosVerdict(False, problem.r, None, best_residual, best_min_eig, it)


def _diagonal_certificate(problem: GramProblem) -> GramCertificate:
    """Non-negative coefficients give P = sum A_theta (y^theta)^2 directly."""
    pos = {m: i for i, m in enumerate(problem.basis)}
    mats = [np.zeros((len(bl), len(bl))) for bl in problem.blocks]
    lookup = {}
    for b, members in enumerate(problem.blocks):
        for k, idx in enumerate(members):
            lookup[idx] = (b, k)
    for g, t in problem.targets.items():
        half = tuple(e // 2 for e in g)
        b, k = lookup[pos[half]]
        mats[b][k, k] = t
    return GramCertificate(mats, 0.0, 0.0)


def lift_certificate(low: GramProblem, cert: GramCertificate,
                     high: GramProblem) -> GramCertificate:
    """Lift a level-r certificate to level r+1.

    Multiplying P by sum y_k^2 turns each square q(y)^2 into the squares
    (y_k q(y))^2, i.e. the lifted Gram matrix is the sum over k of the old
    one conjugated by the multiply-by-y_k basis embedding.  PSD-ness is
    preserved; tiny negative eigenvalues are clipped before conjugating so
    they cannot accumulate.
    """
    if high.r != low.r + 1:
        raise ValueError("can only lift by one level")
    pos_high = {m: i for i, m in enumerate(high.basis)}
    lookup_high = {}
    for b, members in enumerate(high.blocks):
        for k, idx in enumerate(members):
            lookup_high[idx] = (b, k)
    mats = [np.zeros((len(bl), len(bl))) for bl in high.blocks]
    for lb, members in enumerate(low.blocks):
        G = _project_psd(cert.block_matrices[lb])
        for var in range(low.n):
            # where each block monomial lands after multiplying by y_var
            targets = []
            for idx in members:
                mono = low.basis[idx]
                lifted = tuple(e + (1 if i == var else 0)
                               for i, e in enumerate(mono))
                targets.append(lookup_high[pos_high[lifted]])
            hb = targets[0][0]
            for i, (bi, ki) in enumerate(targets):
                assert bi == hb  # multiplying by one variable keeps parity class
                for j, (bj, kj) in enumerate(targets):
                    mats[hb][ki, kj] += G[i, j]
    return GramCertificate(mats, 0.0, 0.0)


def member_K_r(A: SymTensor, r: int,
               eig_tol: float = DEFAULT_EIG_TOL,
               match_tol: float = DEFAULT_MATCH_TOL,
               max_iters: int = DEFAULT_MAX_ITERS) -> SosVerdict:
    """SOS membership at level r; fast path through the coefficient cone.

    A tensor with all-non-negative level-r coefficients certifies with a
    diagonal Gram matrix immediately.  Otherwise the projection solver runs
    at levels 0..r in turn: the levels nest, a lower-level certificate lifts
    to level r, and the lower problems are much better conditioned when the
    feasible set at r touches the PSD boundary.  Every lifted certificate is
    re-checked independently before being trusted.
    """
    problem = build_gram_problem(A, r)
    coef = member_C_r(A, r) if A.is_rational() else member_C_r(A, r, tol=0.0)
    if coef.member:
        cert = _diagonal_certificate(problem)
        if check_certificate(problem, cert, eig_tol, match_tol):
            return SosVerdict(True, r, cert, cert.residual, cert.min_eig,
                              0, fast_path=True)
    problems = [build_gram_problem(A, rr) for rr in range(r)] + [problem]
    last = None
    for rr in range(r + 1):
        v = solve_gram(problems[rr], eig_tol, match_tol, max_iters)
        if rr == r:
            last = v
        if not v.certified:
            continue
        cert = v.certificate
        ok = True
        for step in range(rr, r):
            cert = lift_certificate(problems[step], cert, problems[step + 1])
            if not check_certificate(problems[step + 1], cert, eig_tol, match_tol):
                ok = False
                break
        if ok:
            return SosVerdict(True, r, cert, cert.residual, cert.min_eig,
                              v.iterations)
    return last
