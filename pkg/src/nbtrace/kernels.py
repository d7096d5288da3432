"""Heat and Schroedinger kernels on regular graphs, trees, and lattices.

With Delta = (q+1) I - A, the fundamental solutions expand over the
non-backtracking matrices as e^{-t Delta} = sum_r h_{r,q}(t) A_r and
e^{-i t Delta} = sum_r w_{r,q}(t) A_r with

    h_{r,q}(t) = e^{-(q+1)t} / t * sum_k q^{-(r+2k+1)/2} (r+1+2k)
                 I_{r+1+2k}(2 sqrt(q) t),
    w_{r,q}(t) = e^{-i(q+1)t} / t * sum_k q^{-(r+2k+1)/2} i^{r+2k} (r+1+2k)
                 J_{r+1+2k}(2 sqrt(q) t),

reducing for q = 1 to e^{-2t} I_r(2t) and i^r e^{-2it} J_r(2t).  The
phase/sign of w is pinned by unitarity of e^{-i t Delta} and the
eigendecomposition oracle (small-t check: diagonal ~ 1 - i(q+1)t).

Infinite trees and lattices are never materialized: the closed forms are
the implementation, and finite tori / truncated trees act as oracles with
explicit wrap-around error budgets in the tests.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .coefficients import bessel_i, bessel_j
from .errors import InvalidParameter, NoConvergence
from .graphs import RegularGraph, adjacency_matrix

__all__ = [
    "heat_coeff",
    "schrodinger_coeff",
    "cjk_alternative_heat_coeff",
    "heat_operator",
    "schrodinger_operator",
    "tree_kernel_entry",
    "lattice_heat_entry",
    "lattice_walk_count",
    "tree_walk_count",
]

_MAX_TERMS = 400


def heat_coeff(r: int, q: int, t: float) -> float:
    """Coefficient h_{r,q}(t) of A_r in e^{-t Delta}; h_{r,q}(0) = delta_{r0}."""
    if r < 0 or q < 1:
        raise InvalidParameter("need r >= 0 and q >= 1")
    if t < 0:
        raise InvalidParameter("heat flow needs t >= 0")
    if t == 0.0:
        return 1.0 if r == 0 else 0.0
    if q == 1:
        return math.exp(-2.0 * t) * bessel_i(r, 2.0 * t).real
    u = 2.0 * math.sqrt(q) * t
    total = 0.0
    for k in range(_MAX_TERMS):
        m = r + 1 + 2 * k
        term = q ** (-m / 2) * m * bessel_i(m, u).real
        total += term
        if term <= 1e-18 * max(total, 1e-300) and k >= 2:
            return math.exp(-(q + 1) * t) / t * total
    raise NoConvergence(f"heat coefficient series stalled at r={r}, q={q}, t={t}")


def schrodinger_coeff(r: int, q: int, t: float) -> complex:
    """Coefficient w_{r,q}(t) of A_r in e^{-i t Delta}; w_{r,q}(0) = delta_{r0}."""
    if r < 0 or q < 1:
        raise InvalidParameter("need r >= 0 and q >= 1")
    if t == 0.0:
        return 1.0 + 0.0j if r == 0 else 0.0 + 0.0j
    if q == 1:
        return (1j**r) * cmath.exp(-2j * t) * bessel_j(r, 2.0 * t)
    u = 2.0 * math.sqrt(q) * t
    total = 0.0 + 0.0j
    for k in range(_MAX_TERMS):
        m = r + 1 + 2 * k
        term = q ** (-m / 2) * (1j ** (m - 1)) * m * bessel_j(m, u)
        total += term
        # J_m decays like (u/2)^m / m!; bound the ignored tail by the next term size
        bound = q ** (-m / 2) * m * abs(u / 2) ** m / math.factorial(min(m, 170))
        if bound <= 1e-18 * max(abs(total), 1e-300) and k >= 2:
            return cmath.exp(-1j * (q + 1) * t) / t * total
    raise NoConvergence(f"wave coefficient series stalled at r={r}, q={q}, t={t}")


def cjk_alternative_heat_coeff(r: int, q: int, t: float) -> float:
    """Equivalent heat coefficient form

        q^{-r/2} e^{-(q+1)t} I_r(2 sqrt(q) t)
        - (q-1) sum_{k>=1} q^{-(r+2k)/2} e^{-(q+1)t} I_{r+2k}(2 sqrt(q) t).
    """
    if r < 0 or q < 1:
        raise InvalidParameter("need r >= 0 and q >= 1")
    if t < 0:
        raise InvalidParameter("t must be >= 0")
    if t == 0.0:
        return 1.0 if r == 0 else 0.0
    u = 2.0 * math.sqrt(q) * t
    total = q ** (-r / 2) * bessel_i(r, u).real
    if q > 1:
        for k in range(1, _MAX_TERMS):
            term = q ** (-(r + 2 * k) / 2) * bessel_i(r + 2 * k, u).real
            total -= (q - 1) * term
            if term <= 1e-18 * max(abs(total), 1e-300) and k >= 2:
                break
        else:
            raise NoConvergence("alternative heat form stalled")
    return math.exp(-(q + 1) * t) * total


def _operator_series(g: RegularGraph, coeff_fn, tol: float) -> np.ndarray:
    """Accumulate sum_r coeff(r) A_r with the rolling integer recurrence."""
    q = g.q
    a = adjacency_matrix(g).astype(float)
    eye = np.eye(g.n)
    out = coeff_fn(0) * eye.astype(complex)
    prev, cur = eye, a
    r = 1
    while True:
        c = coeff_fn(r)
        out += c * cur
        # remaining operator mass is bounded by sum_{s>r} |c_s| (q+1) q^{s-1}
        if abs(c) * (q + 1) * q ** max(r - 1, 0) < tol and r >= 3:
            break
        if r > 600:
            raise NoConvergence("kernel series did not decay within 600 terms")
        if r == 1:
            prev, cur = cur, a @ a - (q + 1) * eye
        else:
            prev, cur = cur, a @ cur - q * prev
        r += 1
    return out


def heat_operator(g: RegularGraph, t: float, tol: float = 1e-13) -> np.ndarray:
    """e^{-t Delta} as a dense matrix; rows sum to 1 and entries are >= 0."""
    if t < 0:
        raise InvalidParameter("heat flow needs t >= 0")
    out = _operator_series(g, lambda r: heat_coeff(r, g.q, t), tol)
    return out.real.copy()


def schrodinger_operator(g: RegularGraph, t: float, tol: float = 1e-13) -> np.ndarray:
    """e^{-i t Delta} as a dense complex matrix; unitary."""
    return _operator_series(g, lambda r: schrodinger_coeff(r, g.q, t), tol)


def tree_kernel_entry(q: int, d: int, t: float, kind: str = "heat"):
    """Kernel entry between tree vertices at distance d:

    (e^{-t Delta})_{u,v} = h_{d,q}(t)  and  (e^{-i t Delta})_{u,v} = w_{d,q}(t).
    """
    if d < 0:
        raise InvalidParameter("distance must be >= 0")
    if kind == "heat":
        return heat_coeff(d, q, t)
    if kind == "schrodinger":
        return schrodinger_coeff(d, q, t)
    raise InvalidParameter("kind must be 'heat' or 'schrodinger'")


def lattice_heat_entry(D: int, m: Sequence[int], n: Sequence[int], t: float) -> float:
    """(e^{-t Delta})_{m,n} on the D-dimensional grid lattice:

        e^{-2Dt} prod_k I_{|m_k - n_k|}(2t).
    """
    if D < 1:
        raise InvalidParameter("D must be >= 1")
    m = list(m)
    n = list(n)
    if len(m) != D or len(n) != D:
        raise InvalidParameter("points must have D coordinates")
    prod = 1.0
    for a, b in zip(m, n):
        prod *= bessel_i(abs(a - b), 2.0 * t).real
    return math.exp(-2.0 * D * t) * prod


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def lattice_walk_count(D: int, m: Sequence[int], n: Sequence[int], length: int) -> int:
    """Number of lattice walks of the given length from m to n (exact).

    Zero unless length >= d with length - d even, where d is the l1
    distance; otherwise

        sum_{k_1+..+k_D = k} (d+2k)! prod_l 1 / (k_l! (k_l + d_l)!).
    """
    if D < 1:
        raise InvalidParameter("D must be >= 1")
    m = list(m)
    n = list(n)
    if len(m) != D or len(n) != D:
        raise InvalidParameter("points must have D coordinates")
    if length < 0:
        raise InvalidParameter("length must be >= 0")
    dists = [abs(a - b) for a, b in zip(m, n)]
    d = sum(dists)
    if length < d or (length - d) % 2:
        return 0
    k = (length - d) // 2
    total = Fraction(0)
    fact = math.factorial(length)
    for ks in _compositions(k, D):
        term = Fraction(fact)
        for k_l, d_l in zip(ks, dists):
            term /= math.factorial(k_l) * math.factorial(k_l + d_l)
        total += term
    assert total.denominator == 1
    return int(total)


def tree_walk_count(q: int, d: int, k: int) -> int:
    """Walks of length d + 2k between tree vertices at distance d (exact):

        sum_{0<=m<=k} (C(d+2k, m) - C(d+2k, m-1)) q^m.
    """
    if q < 1 or d < 0 or k < 0:
        raise InvalidParameter("need q >= 1, d >= 0, k >= 0")
    n = d + 2 * k
    return sum(
        (math.comb(n, m) - (math.comb(n, m - 1) if m else 0)) * q**m for m in range(k + 1)
    )
