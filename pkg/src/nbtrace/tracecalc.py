"""Functional calculus, pre-trace, and trace formulas with truncation control.

For h holomorphic on Omega(rho), rho > sqrt(q), and a (q+1)-regular graph:

    h(q^{-1/2} A) = (int h dmu_q) I + sum_{r>=1} q^{-r/2} a_{r,q}(h) A_r
    int h dmu_G^v = int h dmu_q + sum_{r>=1} q^{-r/2} a_{r,q}(h) f_r(v; G)
    sum_k h(q^{-1/2} lambda_k) = |V| int h dmu_q
                                 + sum_{r>=1} q^{-r/2} a_{r,1}(h) c_r(G)

Two coefficient families coexist and are never mixed: the X_{.,q}
coefficients drive the functional calculus and pre-trace formula, the
Y coefficients drive the trace formula.  Tail truncation rests on the
per-vertex walk bound f_r(v) <= (q+1) q^{r-1} (hence c_r <= f_r <=
|V| (q+1) q^{r-1} globally), so a declared coefficient decay tau must
satisfy tau sqrt(q) < 1 (the holomorphy hypothesis in disguise).

Residuals are returned, never asserted here; thresholds live in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import Basis, CoefficientSeries, Y_BASIS, km_integrate
from .coefficients import FunctionSpec, expansion_coefficients
from .errors import DivergentSeries, InvalidParameter
from .graphs import RegularGraph, adjacency_matrix
from .nbwalks import (
    circuit_counts_exact,
    closed_nbw_counts,
    nbw_matrices,
    prime_circuit_classes,
)
from .spectral import eigenvalues_symmetric, vertex_integral

__all__ = [
    "TraceComparison",
    "PrimeTraceComparison",
    "truncation_radius",
    "functional_calculus",
    "pretrace",
    "trace_formula",
    "trace_formula_prime",
]


@dataclass
class TraceComparison:
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> complex:
        return self.lhs - self.rhs


@dataclass
class PrimeTraceComparison(TraceComparison):
    tail_bound: float


def _fsum(values) -> complex:
    vals = [complex(v) for v in values]
    re = math.fsum(v.real for v in vals)
    im = math.fsum(v.imag for v in vals)
    return complex(re, im) if im != 0.0 else re


def truncation_radius(series: CoefficientSeries, q: int, tol: float) -> int:
    """Smallest R whose neglected tail is below ``tol``.

    Terms are bounded by C (tau sqrt(q))^r (1 + 1/q) using the circuit
    bound; raises DivergentSeries when tau sqrt(q) >= 1.  A series without
    declared decay is an exact polynomial: R is its last nonzero index.
    """
    if tol <= 0:
        raise InvalidParameter("tol must be positive")
    if series.declared_decay is None:
        nz = np.nonzero(np.abs(series.coeffs) > 0)[0]
        return int(nz[-1]) if len(nz) else 0
    tau = series.declared_decay
    growth = tau * math.sqrt(q)
    if growth >= 1.0:
        raise DivergentSeries(
            f"coefficient decay {tau} too slow for q = {q} (tau sqrt(q) = {growth:.3f} >= 1)"
        )
    c = series.tail_constant()
    factor = c * (1.0 + 1.0 / q) / (1.0 - growth)
    r = 1
    while factor * growth ** (r + 1) >= tol and r < 100_000:
        r += 1
    return r


def _coefficients_to_radius(
    h: FunctionSpec, basis: Basis, q: int, tol: float, rmax_start: int = 64
) -> tuple[CoefficientSeries, int]:
    """Expand h far enough that the neglected series tail is below tol.

    Term r of every consumer is bounded by |a_r| (1 + 1/q) q^{r/2} (via
    c_r, f_r(v) <= (q+1) q^{r-1} and the same bound on A_r entries), so the
    cut is chosen from explicit suffix sums of those weights plus a
    geometric extrapolation beyond storage.
    """
    if h.holo_radius <= math.sqrt(q):
        raise DivergentSeries(
            f"h must be holomorphic on Omega(rho) for rho > sqrt(q) = {math.sqrt(q):.4f}"
        )
    rmax = rmax_start
    while True:
        series = expansion_coefficients(h, basis, rmax)
        n = len(series.coeffs)
        if series.declared_decay is None:
            nz = np.nonzero(np.abs(series.coeffs) > 0)[0]
            return series, int(nz[-1]) if len(nz) else 0
        weights = np.abs(series.coeffs) * (1.0 + 1.0 / q) * (math.sqrt(q) ** np.arange(n))
        growth = series.declared_decay * math.sqrt(q)
        beyond = math.inf if growth >= 1.0 else weights[-1] * growth / (1.0 - growth)
        if beyond <= 0.5 * tol:
            suffix = np.cumsum(weights[::-1])[::-1]  # suffix[r] = sum_{s >= r} w_s
            cut = n - 1
            while cut >= 1 and suffix[cut] + beyond < tol:
                cut -= 1
            return series, cut
        rmax *= 2
        if rmax > 8192:
            raise DivergentSeries("coefficient tail does not clear the tolerance")


def functional_calculus(g: RegularGraph, h: FunctionSpec, tol: float = 1e-10) -> np.ndarray:
    """Evaluate h(q^{-1/2} A) through the walk-matrix expansion."""
    q = g.q
    series, radius = _coefficients_to_radius(h, Basis(q), q, tol * 0.5)
    background = km_integrate(q, h, tol=min(tol * 0.1, 1e-12))
    mats = nbw_matrices(g, radius)
    out = background * np.eye(g.n, dtype=complex)
    for r in range(1, radius + 1):
        out = out + q ** (-r / 2) * series.coeffs[r] * mats[r].astype(float)
    if np.abs(out.imag).max() <= 1e-14 * max(1.0, np.abs(out.real).max()):
        out = out.real.copy()
    return out


def pretrace(g: RegularGraph, v: int, h: FunctionSpec, tol: float = 1e-10) -> TraceComparison:
    """Vertex-measure integral of h against its walk-count expansion.

    lhs comes from the eigendecomposition (oracle side), rhs from tree
    quadrature plus the per-vertex closed-NBW counts.
    """
    q = g.q
    series, radius = _coefficients_to_radius(h, Basis(q), q, tol * 0.5)
    lhs = vertex_integral(g, v, h)
    counts = closed_nbw_counts(g, radius).per_vertex[v]
    background = km_integrate(q, h, tol=min(tol * 0.1, 1e-12))
    terms = [q ** (-r / 2) * series.coeffs[r] * counts[r] for r in range(1, radius + 1)]
    rhs = background + _fsum(terms)
    return TraceComparison(lhs=complex(lhs), rhs=complex(rhs))


def trace_formula(g: RegularGraph, h: FunctionSpec, tol: float = 1e-10) -> TraceComparison:
    """Spectral sum of h against the circuit-count expansion."""
    q = g.q
    # the global circuit count obeys c_r <= f_r <= |V| (q+1) q^{r-1}
    series, radius = _coefficients_to_radius(h, Y_BASIS, q, tol * 0.5 / g.n)
    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    lhs = _fsum(h(lam / math.sqrt(q)))
    circuits = circuit_counts_exact(g, radius)
    background = g.n * km_integrate(q, h, tol=min(tol * 0.1, 1e-12))
    terms = [q ** (-r / 2) * series.coeffs[r] * circuits[r] for r in range(1, radius + 1)]
    rhs = background + _fsum(terms)
    return TraceComparison(lhs=complex(lhs), rhs=complex(rhs))


def trace_formula_prime(
    g: RegularGraph,
    h: FunctionSpec,
    tol: float = 1e-10,
    lmax: int = 12,
    budget: int = 10_000_000,
) -> PrimeTraceComparison:
    """Trace formula resummed over prime-circuit classes.

    Primes are enumerated to length ``lmax``; circuits whose prime length
    exceeds it are covered by the reported ``tail_bound`` via
    c_r <= (q+1) q^{r-1}.  The comparison holds within tol + tail_bound.
    """
    q = g.q
    series, radius = _coefficients_to_radius(h, Y_BASIS, q, tol * 0.5 / g.n)
    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    lhs = _fsum(h(lam / math.sqrt(q)))
    background = g.n * km_integrate(q, h, tol=min(tol * 0.1, 1e-12))
    classes = prime_circuit_classes(g, min(lmax, radius) if radius >= 1 else lmax, budget=budget)
    terms = []
    for cls in classes:
        ell = cls.length
        n = 1
        while n * ell <= radius:
            terms.append(ell * series.coeffs[n * ell] * q ** (-n * ell / 2))
            n += 1
    rhs = background + _fsum(terms)
    # circuits of prime length > lmax are absent from the class sum;
    # bound them by c_r <= f_r <= |V| (q+1) q^{r-1}
    tail = math.fsum(
        abs(series.coeffs[r]) * q ** (-r / 2) * g.n * (q + 1) * q ** (r - 1)
        for r in range(min(lmax, radius) + 1, radius + 1)
    )
    return PrimeTraceComparison(lhs=complex(lhs), rhs=complex(rhs), tail_bound=float(tail))
