"""Dense symmetric eigensolver: cyclic Jacobi rotations.

Desk-scale oracle (order <= ~500) for every spectral check in the package.
Kept dependency-free so both the walk-counting and spectral layers can use
it without import cycles.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameter, NoConvergence

__all__ = ["eigenvalues_symmetric"]


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def eigenvalues_symmetric(
    matrix: np.ndarray,
    tol: float = 1e-12,
    max_sweeps: int = 64,
    with_vectors: bool = False,
):
    """Eigenvalues (descending) of a real symmetric matrix by cyclic Jacobi.

    Terminates when the off-diagonal Frobenius norm drops below ``tol``
    times the matrix scale; raises NoConvergence after ``max_sweeps``
    full sweeps.  With ``with_vectors=True`` returns ``(w, V)`` with
    ``V[:, k]`` the eigenvector for ``w[k]``, so ``V @ diag(w) @ V.T``
    reconstructs the input.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParameter("matrix must be square")
    if not np.allclose(a, a.T, atol=1e-12 * max(1.0, np.abs(a).max())):
        raise InvalidParameter("matrix must be symmetric")
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        w = np.array([a[0, 0]])
        return (w, v) if with_vectors else w
    scale = max(np.abs(a).max(), 1.0)
    thresh = tol * scale
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])) + 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                # symmetric Schur rotation annihilating a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    t = apq / diff  # rotation angle ~ apq/diff, overflow-safe
                else:
                    tau = diff / (2.0 * apq)
                    if tau >= 0.0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp, rq = a[p].copy(), a[q].copy()
                a[p] = c * rp - s * rq
                a[q] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi sweeps exhausted at off-norm {_offdiag_norm(a):.3e}")
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    if with_vectors:
        return w, v[:, order]
    return w
