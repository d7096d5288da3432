"""Spectral measures, Stieltjes transforms, Fourier-Laplace, heat trace.

The normalized spectral measure of a finite (q+1)-regular graph places
weight 1/|V| at each q^{-1/2} lambda_k(A).  Its modified Stieltjes
transform generates the closed-NBW counts,

    S~_{mu_G, q}(t) = sum_r q^{-r/2} (f_r / |V|) t^r,

and with the q = 1 kernel the circuit counts appear instead on top of the
tree background (1 - t^2) / (1 - t^2/q).

The heat-trace series implemented here is

    sum_k e^{-lambda_k(Delta) t}
        = |V| e^{-(q+1)t} int e^{sqrt(q) t x} dmu_q(x)
          + e^{-(q+1)t} sum_{r>=1} q^{-r/2} c_r I_r(2 sqrt(q) t),

which follows from the trace formula applied to h(x) = e^{sqrt(q) t x};
it is cross-validated against the eigenvalue route in the tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_values, km_integrate
from .coefficients import bessel_i, bessel_j
from .eigen import eigenvalues_symmetric
from .errors import InvalidParameter, NoConvergence, PoleOnSupport
from .graphs import RegularGraph, adjacency_matrix
from .nbwalks import circuit_counts_exact, closed_nbw_counts

__all__ = [
    "DiscreteMeasure",
    "eigenvalues_symmetric",
    "spectral_measure",
    "vertex_integral",
    "stieltjes",
    "stieltjes_modified",
    "km_stieltjes",
    "km_stieltjes_modified",
    "stieltjes_series_check",
    "fourier_laplace",
    "fourier_correction_order",
    "heat_trace",
]


@dataclass
class DiscreteMeasure:
    """Atoms with positive weights; locations ascending, total mass 1."""

    locations: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.locations = np.asarray(self.locations, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.locations.shape != self.weights.shape or self.locations.ndim != 1:
            raise InvalidParameter("locations and weights must be matching 1-d arrays")
        if np.any(self.weights <= 0):
            raise InvalidParameter("weights must be positive")
        if np.any(np.diff(self.locations) < 0):
            raise InvalidParameter("locations must be sorted ascending")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise InvalidParameter("weights must sum to 1 within 1e-12")

    def integrate(self, f) -> float | complex:
        return np.sum(self.weights * np.asarray(f(self.locations)))

    def moment(self, n: int) -> float:
        return float(np.sum(self.weights * self.locations**n))


def spectral_measure(g: RegularGraph) -> DiscreteMeasure:
    """mu_G: weight 1/|V| at each q^{-1/2} lambda_k, multiplicities merged."""
    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    x = np.sort(lam / math.sqrt(g.q))
    merge_tol = 1e-8 * max(1.0, np.abs(x).max())
    locs: list[float] = []
    weights: list[float] = []
    for value in x:
        if locs and abs(value - locs[-1]) <= merge_tol:
            # running mean keeps merged atoms centered
            total = weights[-1] + 1
            locs[-1] += (value - locs[-1]) / total
            weights[-1] = total
        else:
            locs.append(float(value))
            weights.append(1)
    w = np.asarray(weights, dtype=float) / g.n
    return DiscreteMeasure(np.asarray(locs), w)


def vertex_integral(g: RegularGraph, v: int, h) -> float | complex:
    """int h dmu_G^v = <1_v, h(q^{-1/2} A) 1_v> via the eigendecomposition."""
    if not 0 <= v < g.n:
        raise InvalidParameter(f"vertex {v} out of range")
    lam, vec = eigenvalues_symmetric(adjacency_matrix(g).astype(float), with_vectors=True)
    x = lam / math.sqrt(g.q)
    weights = vec[v, :] ** 2
    return np.sum(weights * np.asarray(h(x)))


# ---------------------------------------------------------------------------
# Stieltjes transforms


def stieltjes(mu: DiscreteMeasure, z: complex) -> complex:
    """S_mu(z) = int (x - z)^{-1} dmu for z off the support."""
    dif = mu.locations - z
    if np.min(np.abs(dif)) < 1e-12 * max(1.0, np.abs(mu.locations).max()):
        raise PoleOnSupport(f"z = {z} touches the support")
    return complex(np.sum(mu.weights / dif))


def stieltjes_modified(mu: DiscreteMeasure, q, t: complex) -> complex:
    """S~_{mu,q}(t) = int (1 - t^2/q) / (1 - x t + t^2) dmu.

    Related to the plain transform by S~_{mu,q}(t) = (t/q - 1/t) S_mu(t + 1/t);
    the sign follows from 1 - x t + t^2 = -t (x - (t + 1/t)).
    """
    inv_q = 0.0 if q == math.inf else 1.0 / q
    den = 1.0 - mu.locations * t + t * t
    if np.min(np.abs(den)) < 1e-12:
        raise PoleOnSupport(f"integrand pole on the support at t = {t}")
    return complex((1.0 - inv_q * t * t) * np.sum(mu.weights / den))


def _unit_disc_preimage(z: complex) -> complex:
    """The root t of t^2 - z t + 1 = 0 with |t| < 1."""
    root = cmath.sqrt(z * z - 4.0)
    t1 = (z - root) / 2.0
    t2 = (z + root) / 2.0
    t = t1 if abs(t1) < abs(t2) else t2
    if abs(abs(t) - 1.0) < 1e-12:
        raise PoleOnSupport(f"z = {z} lies on the support [-2, 2]")
    return t


def km_stieltjes(q, z: complex) -> complex:
    """Stieltjes transform of mu_q at z outside [-2, 2]:  t / (t^2/q - 1)."""
    t = _unit_disc_preimage(complex(z))
    inv_q = 0.0 if q == math.inf else 1.0 / q
    return t / (inv_q * t * t - 1.0)


def km_stieltjes_modified(q, q_kernel, t: complex) -> complex:
    """S~_{mu_q, q'}(t) for |t| < 1; equals 1 when q' = q."""
    if abs(t) >= 1:
        raise PoleOnSupport("need |t| < 1")
    inv_q = 0.0 if q == math.inf else 1.0 / q
    inv_qk = 0.0 if q_kernel == math.inf else 1.0 / q_kernel
    return (1.0 - inv_qk * t * t) / (1.0 - inv_q * t * t)


@dataclass
class SeriesCheckReport:
    rmax: int
    q_form_deviations: list[float]
    y_form_deviations: list[float]

    @property
    def max_deviation(self) -> float:
        return max(self.q_form_deviations + self.y_form_deviations)


def stieltjes_series_check(g: RegularGraph, rmax: int) -> SeriesCheckReport:
    """Compare transform Taylor coefficients against walk counts.

    Coefficient r of S~_{mu_G, q} is sum_i w_i X_{r,q}(x_i) (Horner-free
    recurrence on the atoms, no finite differences) and must equal
    q^{-r/2} f_r / |V|; the q-kernel-1 variant must equal the tree
    background plus q^{-r/2} c_r / |V|.
    """
    if rmax < 0:
        raise InvalidParameter("rmax must be >= 0")
    mu = spectral_measure(g)
    q = g.q
    table = closed_nbw_counts(g, rmax)
    circ = circuit_counts_exact(g, rmax)
    xq_vals = cheb_values(rmax, mu.locations, 1.0 / q)
    y_vals = cheb_values(rmax, mu.locations, 1.0)
    q_dev = []
    y_dev = []
    for r in range(rmax + 1):
        coeff_q = float(np.sum(mu.weights * xq_vals[r]))
        q_dev.append(abs(coeff_q - q ** (-r / 2) * table.f[r] / g.n))
        coeff_y = float(np.sum(mu.weights * y_vals[r]))
        if r == 0:
            background = 1.0
        elif r % 2:
            background = 0.0
        else:
            background = (1.0 - q) * q ** (-(r // 2))  # coefficients of (1-t^2)/(1-t^2/q)
        y_dev.append(abs(coeff_y - background - q ** (-r / 2) * circ[r] / g.n))
    return SeriesCheckReport(rmax, q_dev, y_dev)


# ---------------------------------------------------------------------------
# Fourier-Laplace transform and heat trace


def _series_radius(q: int, weight_fn, tol: float, rmin: int = 4, rmax: int = 400) -> int:
    """Smallest R with sum_{r>R} (1+1/q) q^{r/2} weight(r) < tol."""
    r = rmin
    while r < rmax:
        bound = sum((1 + 1 / q) * q ** (s / 2) * weight_fn(s) for s in range(r + 1, r + 40))
        if bound < tol:
            return r
        r += 4
    raise NoConvergence("series tail bound did not fall below tolerance")


def fourier_laplace(g: RegularGraph, p: complex, route: str = "bessel_series", tol: float = 1e-12) -> complex:
    """mu_G-hat(p) = int e^{ipx} dmu_G by eigenvalues or the Bessel series

        mu_q-hat(p) + sum_{r>=1} q^{-r/2} i^r J_r(2p) c_r / |V|.
    """
    if route == "eigen":
        mu = spectral_measure(g)
        return complex(mu.integrate(lambda x: np.exp(1j * p * x)))
    if route != "bessel_series":
        raise InvalidParameter("route must be 'eigen' or 'bessel_series'")
    q = g.q
    # |J_r(2p)| <= I_r(2|p|), c_r <= (q+1) q^{r-1}
    rmax = _series_radius(q, lambda r: abs(bessel_i(r, 2 * abs(p))), tol)
    background = km_integrate(q, lambda x: np.exp(1j * p * x), tol=tol)
    circ = circuit_counts_exact(g, rmax)
    terms = [
        q ** (-r / 2) * (1j**r) * bessel_j(r, 2 * p) * circ[r] / g.n
        for r in range(1, rmax + 1)
    ]
    return complex(background + sum(terms))


def fourier_correction_order(g: RegularGraph, search_to: int | None = None) -> int:
    """Order of the zero of mu_G-hat - mu_q-hat at p = 0.

    Equals the smallest r with c_r(G) > 0, which is the girth.
    """
    bound = search_to if search_to is not None else 2 * g.num_edges
    circ = circuit_counts_exact(g, bound)
    for r in range(1, bound + 1):
        if circ[r] > 0:
            return r
    raise NoConvergence(f"no circuit found up to length {bound}")


def heat_trace(g: RegularGraph, t: float, route: str = "series", tol: float = 1e-12) -> float:
    """Trace of e^{-t Delta} with Delta = (q+1) I - A.

    ``route='eigen'`` sums over the Laplacian spectrum; ``route='series'``
    evaluates the circuit expansion documented in the module docstring.
    """
    if t < 0:
        raise InvalidParameter("t must be >= 0")
    q = g.q
    if route == "eigen":
        lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
        return float(np.sum(np.exp(-((q + 1) - lam) * t)))
    if route != "series":
        raise InvalidParameter("route must be 'eigen' or 'series'")
    if t == 0.0:
        return float(g.n)
    u = 2.0 * math.sqrt(q) * t
    rmax = _series_radius(q, lambda r: bessel_i(r, u), tol)
    background = g.n * km_integrate(q, lambda x: np.exp(math.sqrt(q) * t * x), tol=tol)
    circ = circuit_counts_exact(g, rmax)
    series = sum(q ** (-r / 2) * circ[r] * bessel_i(r, u) for r in range(1, rmax + 1))
    return float(math.exp(-(q + 1) * t) * (background + series))
