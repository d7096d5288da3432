"""Chebyshev-type polynomials and the Kesten-McKay distribution.

The three polynomial families used throughout the package are generated by

    (1 - t^2/q) / (1 - x t + t^2) = sum_r  X_{r,q}(x) t^r,

with the shorthand ``Y_r = X_{r,1}`` (branching number 1) and
``X_r = X_{r,inf}``.  All families satisfy the same three-term recurrence
as X_r and differ only in their degree-(r-2) correction:

    X_0 = 1,  X_1 = x,  X_{r+1} = x X_r - X_{r-1},
    X_{r,q} = X_r - X_{r-2}/q          (X_r = 0 for r < 0).

Note the constant term: X_{0,q} = 1 for every q, including q = 1, so
Y_0 = 1 while Y_r(z + 1/z) = z^r + z^{-r} only for r >= 1.

The X_{r,q} are orthogonal with respect to the Kesten-McKay distribution
mu_q with squared norms 1 (r = 0) and 1 + 1/q (r >= 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InvalidParameter, MissingDecay, NoConvergence, SingularEndpoint

__all__ = [
    "Basis",
    "CoefficientSeries",
    "cheb_eval",
    "cheb_values",
    "cheb_joukowsky",
    "cheb_coefficients",
    "km_density",
    "km_theta_weight",
    "km_integrate",
    "km_moment_x",
    "km_moment_y",
    "basis_convert",
]


@dataclass(frozen=True)
class Basis:
    """Tag for one of the polynomial families X_{., q}.

    ``q`` is 1 (the Y family), a positive integer >= 2, or ``math.inf``
    (the X family).
    """

    q: float

    def __post_init__(self):
        q = self.q
        if q == math.inf:
            return
        if isinstance(q, float) and q.is_integer():
            object.__setattr__(self, "q", int(q))
            q = self.q
        if not isinstance(q, int) or q < 1:
            raise InvalidParameter(f"basis parameter must be 1, an integer >= 2, or inf; got {q!r}")

    @property
    def inv_q(self) -> float:
        return 0.0 if self.q == math.inf else 1.0 / self.q

    def __repr__(self) -> str:
        if self.q == 1:
            return "Basis(Y)"
        if self.q == math.inf:
            return "Basis(Xinf)"
        return f"Basis(Xq({self.q}))"


Y_BASIS = Basis(1)
XINF_BASIS = Basis(math.inf)


def cheb_values(rmax: int, x, inv_q: float = 0.0) -> np.ndarray:
    """Evaluate X_{0,q}..X_{rmax,q} at ``x`` by the three-term recurrence.

    Returns an array of shape ``(rmax + 1,) + shape(x)``.  ``inv_q = 0``
    gives the X family, ``inv_q = 1`` the Y family.
    """
    if rmax < 0:
        raise InvalidParameter("rmax must be >= 0")
    x = np.asarray(x)
    out = np.zeros((rmax + 3,) + x.shape, dtype=np.result_type(x, float))
    # slots 0,1 hold X_{-2}, X_{-1} = 0
    out[2] = 1.0
    if rmax >= 1:
        out[3] = x
    for r in range(2, rmax + 1):
        out[r + 2] = x * out[r + 1] - out[r]
    if inv_q == 0.0:
        return out[2:]
    return out[2:] - inv_q * out[:-2]


def cheb_eval(basis: Basis, r: int, x):
    """Value of the r-th polynomial of ``basis`` at ``x`` (scalar or array)."""
    if r < 0:
        raise InvalidParameter("polynomial index must be >= 0")
    return cheb_values(r, x, basis.inv_q)[r]


def cheb_joukowsky(basis: Basis, r: int, z):
    """Evaluate via the substitution x = z + 1/z.

    Test oracle for |x| > 2 where the recurrence is still exact but this
    closed form is independent of it: X_r(z + 1/z) = (z^{r+1} - z^{-r-1})/(z - 1/z).
    """
    z = np.asarray(z, dtype=complex)

    def x_r(k):
        if k < 0:
            return np.zeros_like(z)
        return (z ** (k + 1) - z ** (-k - 1)) / (z - 1.0 / z)

    return x_r(r) - basis.inv_q * x_r(r - 2)


def cheb_coefficients(basis: Basis, r: int) -> list[Fraction]:
    """Exact monomial coefficients of the r-th polynomial, constant first."""
    if r < 0:
        raise InvalidParameter("polynomial index must be >= 0")
    # X_r in exact arithmetic
    prev = [Fraction(1)]          # X_0
    cur = [Fraction(0), Fraction(1)]  # X_1
    if r == 0:
        xs = [prev]
    elif r == 1:
        xs = [prev, cur]
    else:
        xs = [prev, cur]
        for _ in range(2, r + 1):
            shifted = [Fraction(0)] + cur
            nxt = [shifted[i] - (prev[i] if i < len(prev) else Fraction(0)) for i in range(len(shifted))]
            prev, cur = cur, nxt
            xs.append(cur)
    coeffs = list(xs[r])
    if basis.q != math.inf and r >= 2:
        inv_q = Fraction(1, int(basis.q))
        lower = xs[r - 2]
        coeffs = [c - inv_q * lower[i] if i < len(lower) else c for i, c in enumerate(coeffs)]
    return coeffs


# ---------------------------------------------------------------------------
# Kesten-McKay distribution


def km_density(q, x: float) -> float:
    """Density of mu_q at ``x``; 0 outside [-2, 2].

    For q = 1 the density diverges at the endpoints; pointwise evaluation
    there raises SingularEndpoint (integration goes through km_integrate,
    whose theta substitution removes the singularity).
    """
    if abs(x) > 2.0:
        return 0.0
    if q == 1:
        if abs(x) == 2.0:
            raise SingularEndpoint("mu_1 density diverges at |x| = 2")
        return 1.0 / (math.pi * math.sqrt(4.0 - x * x))
    if q == math.inf:
        return math.sqrt(4.0 - x * x) / (2.0 * math.pi)
    s2 = (q ** -0.5 + q ** 0.5) ** 2
    return (q + 1) * math.sqrt(4.0 - x * x) / (2.0 * math.pi * (s2 - x * x))


def km_theta_weight(q, theta: np.ndarray) -> np.ndarray:
    """Weight w(theta) with  int f dmu_q = int_0^pi f(2 cos theta) w(theta) dtheta."""
    theta = np.asarray(theta, dtype=float)
    if q == 1:
        return np.full_like(theta, 1.0 / math.pi)
    s = np.sin(theta)
    if q == math.inf:
        return 2.0 * s * s / math.pi
    s2 = (q ** -0.5 + q ** 0.5) ** 2
    x = 2.0 * np.cos(theta)
    return (q + 1) * 2.0 * s * s / (math.pi * (s2 - x * x))


def km_integrate(q, f: Callable, tol: float = 1e-12, max_nodes: int = 1 << 20):
    """Integrate ``f`` against mu_q by trapezoid rule in theta.

    ``f`` is called with a numpy array of points in [-2, 2] and may return
    complex values.  The node count doubles until two successive answers
    agree within ``tol``; raises NoConvergence at the node budget.
    """
    if tol <= 0:
        raise InvalidParameter("tol must be positive")
    n = 64
    prev = None
    while n <= max_nodes:
        theta = np.linspace(0.0, math.pi, n + 1)
        vals = np.asarray(f(2.0 * np.cos(theta))) * km_theta_weight(q, theta)
        est = np.trapezoid(vals, theta)
        if prev is not None and abs(est - prev) <= tol:
            return est
        prev = est
        n *= 2
    raise NoConvergence(f"quadrature did not stabilize within {max_nodes} nodes")


def km_moment_x(r: int, q):
    """Closed form of  int X_r dmu_q : q^{-r/2} for even r, else 0."""
    if r < 0:
        raise InvalidParameter("r must be >= 0")
    if r % 2:
        return 0.0
    if q == math.inf:
        return 1.0 if r == 0 else 0.0
    if isinstance(q, int):
        return Fraction(1, q ** (r // 2))
    return q ** (-r / 2)


def km_moment_y(r: int, q):
    """Closed form of  int Y_r dmu_q : 1, 0 (odd r), or (1-q) q^{-r/2}."""
    if r == 0:
        return 1 if isinstance(q, int) else 1.0
    if r % 2:
        return 0.0
    if q == math.inf:
        return -1.0 if r == 2 else 0.0
    if isinstance(q, int):
        return Fraction(1 - q, q ** (r // 2))
    return (1.0 - q) * q ** (-r / 2)


# ---------------------------------------------------------------------------
# Coefficient series and basis conversion


@dataclass
class CoefficientSeries:
    """A finite coefficient sequence a_0..a_R in one of the three bases.

    ``declared_decay`` is an optional ratio tau < 1 asserting |a_r| <= C tau^r;
    it marks the series as the truncation of an infinite expansion and is used
    by downstream truncation control.  A series without it is treated as an
    exact, finitely supported polynomial expansion.
    """

    basis: Basis
    coeffs: np.ndarray
    declared_decay: float | None = None

    def __post_init__(self):
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise InvalidParameter("coefficient sequence must be a nonempty 1-d array")
        if self.declared_decay is not None and not (0.0 <= self.declared_decay < 1.0):
            raise InvalidParameter("declared_decay must lie in [0, 1)")

    def __len__(self) -> int:
        return len(self.coeffs)

    def tail_constant(self) -> float:
        """Smallest C with |a_r| <= C tau^r on the stored coefficients.

        Entries at the numerical noise floor (16 orders below the peak) are
        ignored; they carry no information about the true decay.
        """
        if self.declared_decay is None:
            raise MissingDecay("series has no declared decay rate")
        tau = max(self.declared_decay, 1e-300)
        mags = np.abs(self.coeffs)
        floor = float(mags.max()) * 1e-16
        live = [(r, m) for r, m in enumerate(mags) if m > floor]
        if not live:
            return 0.0
        return float(max(m / tau**r for r, m in live))

    def evaluate(self, x):
        """Sum of a_r X_{r,q}(x) over the stored coefficients."""
        vals = cheb_values(len(self.coeffs) - 1, x, self.basis.inv_q)
        return np.tensordot(self.coeffs, vals, axes=(0, 0))


def _to_xinf(coeffs: np.ndarray, inv_q: float) -> np.ndarray:
    # a_{r,inf} = a_{r,q} - a_{r+2,q}/q, coefficients beyond storage are zero
    out = coeffs.astype(complex if np.iscomplexobj(coeffs) else float).copy()
    out[:-2] -= inv_q * coeffs[2:]
    return out


def _from_xinf(coeffs: np.ndarray, inv_q: float) -> np.ndarray:
    # a_{r,q} = sum_k q^{-k} a_{r+2k,inf}; finite because storage is finite
    out = np.zeros_like(coeffs, dtype=complex if np.iscomplexobj(coeffs) else float)
    n = len(coeffs)
    for r in range(n - 1, -1, -1):
        out[r] = coeffs[r] + (inv_q * out[r + 2] if r + 2 < n else 0.0)
    return out


def basis_convert(
    series: CoefficientSeries, target: Basis, assume_finite: bool = True
) -> CoefficientSeries:
    """Re-express a coefficient series in another basis.

    Coefficients beyond the stored length are taken to be exactly zero, which
    is correct for polynomial (finitely supported) series.  For a truncated
    infinite series the conversions toward finite q sum over unseen tail
    coefficients, so the result's last two entries inherit the truncation
    error; in that direction the series must either carry ``declared_decay``
    (bounding the ignored tail) or be explicitly vouched for with
    ``assume_finite=True``.
    """
    src = series.basis
    if src == target:
        return CoefficientSeries(target, series.coeffs.copy(), series.declared_decay)
    needs_tail = target.q != math.inf
    if needs_tail and series.declared_decay is None and not assume_finite:
        raise MissingDecay(
            "conversion toward a finite-q basis sums over the coefficient tail; "
            "set declared_decay or pass assume_finite=True for polynomial series"
        )
    xinf = series.coeffs if src.q == math.inf else _to_xinf(series.coeffs, src.inv_q)
    out = xinf if target.q == math.inf else _from_xinf(np.asarray(xinf), target.inv_q)
    return CoefficientSeries(target, np.asarray(out), series.declared_decay)
