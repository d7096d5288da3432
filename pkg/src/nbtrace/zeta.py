"""Ihara zeta function: determinant form, log series, Ramanujan check.

For a finite (q+1)-regular graph the zeta function over prime-circuit
classes, zeta_G(t) = prod_gamma (1 - t^{l_gamma})^{-1}, satisfies the
Ihara-Bass determinant identity

    1 / zeta_G(t) = (1 - t^2)^{(q-1)|V|/2} det(I - t A + q t^2 I),

equivalently  -log zeta_G(t) = sum_{r>=1} c_r(G) t^r / r  with c_r the
circuit counts.  Note the q t^2 term in the determinant: the series
identity pins it (the q-less variant fails for every q > 1).

The power-series route is exact: the characteristic polynomial of A is
computed in rational arithmetic (Faddeev-LeVerrier) and the formal log
is taken coefficient by coefficient, so the comparison against c_r / r
is an integer/rational identity, not a float one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .eigen import eigenvalues_symmetric
from .errors import InvalidParameter
from .graphs import RegularGraph, adjacency_matrix, is_bipartite
from .nbwalks import circuit_counts_exact

__all__ = [
    "zeta_reciprocal",
    "zeta_log_series",
    "zeta_reciprocal_log_series",
    "characteristic_polynomial",
    "RamanujanVerdict",
    "ramanujan_check",
]


def zeta_reciprocal(g: RegularGraph, t: complex) -> complex:
    """1/zeta_G(t) evaluated from the eigenvalue product

        (1 - t^2)^{(q-1)|V|/2} prod_k (1 - t lambda_k + q t^2).

    The exponent (q-1)|V|/2 is an integer for every regular graph (since
    (q+1)|V| is even); a real-power fallback covers hypothetical
    non-integer cases for real |t| < 1 rather than assuming the theory.
    """
    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    q = g.q
    det = 1.0 + 0.0j
    for lk in lam:
        det *= 1.0 - t * lk + q * t * t
    twice_exp = (q - 1) * g.n
    base = 1.0 - t * t
    if twice_exp % 2 == 0:
        pref = complex(base) ** (twice_exp // 2)
    else:
        if isinstance(t, complex) and t.imag != 0 or abs(t) >= 1:
            raise InvalidParameter("half-integer exponent needs real |t| < 1")
        pref = float(base) ** (twice_exp / 2)
    value = pref * det
    if isinstance(t, complex) and t.imag != 0:
        return value
    return value.real


def characteristic_polynomial(g: RegularGraph) -> list[int]:
    """det(x I - A) coefficients [c_0 .. c_n], highest power first, exact.

    Faddeev-LeVerrier in rational arithmetic; c_0 = 1.
    """
    a = adjacency_matrix(g)
    n = g.n
    frac_a = [[Fraction(int(a[i, j])) for j in range(n)] for i in range(n)]

    def matmul(x, y):
        return [
            [sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)
        ]

    coeffs = [Fraction(1)]
    m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    am = matmul(frac_a, m)
    for k in range(1, n + 1):
        ck = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k == n:
            break
        m = [[am[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(frac_a, m)
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(int(c))
    return out


def _poly_mul(p: list[Fraction], q: list[Fraction], rmax: int) -> list[Fraction]:
    out = [Fraction(0)] * (rmax + 1)
    for i, pi in enumerate(p[: rmax + 1]):
        if pi == 0:
            continue
        for j, qj in enumerate(q[: rmax + 1 - i]):
            out[i + j] += pi * qj
    return out


def _formal_log(s: list[Fraction], rmax: int) -> list[Fraction]:
    """log of a power series with s_0 = 1, through order rmax."""
    assert s[0] == 1
    s = s[: rmax + 1] + [Fraction(0)] * max(0, rmax + 1 - len(s))
    out = [Fraction(0)] * (rmax + 1)
    # k s_k = sum_{j=1}^{k} j l_j s_{k-j}  =>  solve for l_k ascending
    for k in range(1, rmax + 1):
        acc = k * s[k]
        for j in range(1, k):
            acc -= j * out[j] * s[k - j]
        out[k] = acc / k
    return out


def zeta_reciprocal_log_series(g: RegularGraph, rmax: int) -> list[Fraction]:
    """Exact coefficients of -log of the determinant side, through t^rmax."""
    if rmax < 1:
        raise InvalidParameter("rmax must be >= 1")
    n, q = g.n, g.q
    char = characteristic_polynomial(g)  # c_j, j = 0..n ; det(xI - A) = sum c_j x^{n-j}
    # det(I - tA + q t^2 I) = t^n p((1 + q t^2)/t) = sum_j c_j t^j (1 + q t^2)^{n-j}
    det_series = [Fraction(0)] * (rmax + 1)
    for j, cj in enumerate(char):
        if cj == 0:
            continue
        # t^j (1 + q t^2)^{n-j}: term k contributes at power j + 2k
        for k in range(n - j + 1):
            power = j + 2 * k
            if power > rmax:
                break
            det_series[power] += cj * math.comb(n - j, k) * q**k
    twice_exp = (q - 1) * n
    assert twice_exp % 2 == 0, "(q-1)|V| is even for regular graphs"
    e2 = twice_exp // 2
    # (1 - t^2)^{e2}
    pref = [Fraction(0)] * (rmax + 1)
    for k in range(min(e2, rmax // 2) + 1):
        pref[2 * k] = Fraction((-1) ** k * math.comb(e2, k))
    full = _poly_mul(pref, det_series, rmax)
    logs = _formal_log(full, rmax)
    return [-c for c in logs]


def zeta_log_series(g: RegularGraph, rmax: int) -> list[Fraction]:
    """Exact coefficients of -log zeta_G(t) = sum_r c_r t^r / r, r = 0..rmax."""
    if rmax < 1:
        raise InvalidParameter("rmax must be >= 1")
    circ = circuit_counts_exact(g, rmax)
    return [Fraction(0)] + [Fraction(circ[r], r) for r in range(1, rmax + 1)]


@dataclass
class RamanujanVerdict:
    is_ramanujan: bool
    witness: float | None
    bound: float
    bipartite: bool


def ramanujan_check(g: RegularGraph, edge_tol: float = 1e-9) -> RamanujanVerdict:
    """Whether all nontrivial adjacency eigenvalues lie in [-2 sqrt(q), 2 sqrt(q)].

    Trivial means one copy of q+1, and one copy of -(q+1) when the graph
    is bipartite (the standard convention).  Extra copies signal a
    disconnected graph and stay in the nontrivial list.  The witness is
    the nontrivial eigenvalue of largest magnitude.
    """
    lam = list(eigenvalues_symmetric(adjacency_matrix(g).astype(float)))
    q = g.q
    bip = is_bipartite(g)

    def drop_one(values, target):
        hits = [i for i, l in enumerate(values) if abs(l - target) <= edge_tol]
        if hits:
            values = values[: hits[0]] + values[hits[0] + 1 :]
        return values

    nontrivial = drop_one(lam, q + 1)
    if bip:
        nontrivial = drop_one(nontrivial, -(q + 1))
    bound = 2.0 * math.sqrt(q)
    if not nontrivial:
        return RamanujanVerdict(True, None, bound, bip)
    witness = max(nontrivial, key=abs)
    return RamanujanVerdict(bool(abs(witness) <= bound + edge_tol), float(witness), bound, bip)
