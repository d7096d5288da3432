"""Expansion coefficients a_{r,q}(h) and the machinery that produces them.

A function h holomorphic on the ellipse domain Omega(rho) expands as
h = sum_r a_{r,q}(h) X_{r,q} with

    a_{r,q}(h) = (1/2 pi i) oint_{|xi|=1} h(xi + 1/xi) xi^{r-1}
                 (1 - xi^2) / (1 - xi^2/q) d xi.

For q = 1 the rational factor has a removable singularity on the contour
and the integral reduces to the cosine form
a_{r,1}(h) = (1/pi) int_0^pi h(2 cos t) cos(r t) dt, which is what the
sampled contour evaluates in that case.  Equivalently, by orthogonality,
a_{r,q}(h) = <h, X_{r,q}>_{mu_q} / (1 + 1/q) for r >= 1 (divide by the
squared norm); the quadrature route in the tests pins this normalization.

Closed forms: powers expand with binomial coefficients, exponentials with
modified Bessel functions (e^{zx} = sum I_n(2z) Y_n(x)), and
-log(1 - xt + t^2) = sum_{r>=1} (t^r / r) Y_r(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .chebyshev import Basis, CoefficientSeries, Y_BASIS, basis_convert, cheb_values
from .errors import InvalidParameter, NoConvergence, RadiusTooSmall

__all__ = [
    "FunctionSpec",
    "RadialFunction",
    "bessel",
    "coeffs_a",
    "taylor_to_cheb",
    "power_coeffs",
    "power_coeffs_exact",
    "exp_coeffs",
    "log_kernel_coeffs",
    "expansion_coefficients",
    "horocycle_transform",
    "inverse_horocycle",
    "radial_embedding",
]


# ---------------------------------------------------------------------------
# Bessel functions by their defining power series


def bessel(kind: str, n: int, x: complex, tol: float = 1e-17, max_terms: int = 600):
    """I_n or J_n at ``x`` by the power series with term-ratio stopping.

    I_n(x) = sum_k (x/2)^(2k+n) / (k! (k+n)!); J_n alternates signs.
    Intended for desk scale |x| up to a few tens.
    """
    if n < 0:
        raise InvalidParameter("order must be >= 0")
    if kind not in ("I", "J"):
        raise InvalidParameter("kind must be 'I' or 'J'")
    half = x / 2.0
    if half == 0:
        return (1.0 + 0.0j if isinstance(x, complex) else 1.0) if n == 0 else 0.0
    sign = 1.0 if kind == "I" else -1.0
    # leading term (x/2)^n / n! built multiplicatively: no factorial overflow,
    # graceful underflow to 0 for orders far above |x|
    term = 1.0 + 0.0j if isinstance(half, complex) else 1.0
    for j in range(1, n + 1):
        term *= half / j
    if term == 0:
        return term
    total = term
    ratio_base = sign * half * half
    for k in range(1, max_terms):
        term = term * ratio_base / (k * (k + n))
        total += term
        if abs(term) <= tol * max(abs(total), 1e-300):
            return total
    raise NoConvergence(f"Bessel series for {kind}_{n}({x!r}) did not converge")


def bessel_i(n: int, x: complex):
    return bessel("I", n, x)


def bessel_j(n: int, x: complex):
    return bessel("J", n, x)


# ---------------------------------------------------------------------------
# Test-function descriptions


@dataclass
class FunctionSpec:
    """A test function h with the metadata the calculus needs.

    ``holo_radius`` is the largest rho (possibly inf) such that h is
    holomorphic on Omega(rho); trace/kernel consumers require
    holo_radius > sqrt(q).  ``taylor``/``taylor_radius`` are set when a
    power series at 0 is available, ``samples``/``sample_radius`` for the
    circle-sample variant (which supports coefficient extraction only).
    """

    label: str
    func: Callable | None
    holo_radius: float
    taylor: np.ndarray | None = None
    taylor_radius: float | None = None
    samples: np.ndarray | None = None
    sample_radius: float | None = None
    builtin: tuple | None = None

    def __call__(self, x):
        if self.func is None:
            raise InvalidParameter(
                f"{self.label} is sample-based and cannot be evaluated pointwise"
            )
        return self.func(x)

    # -- constructors -------------------------------------------------

    @classmethod
    def exp(cls, z: complex) -> "FunctionSpec":
        """h(x) = exp(z x); entire."""
        return cls(
            label=f"exp[z={z}]",
            func=lambda x, z=z: np.exp(z * np.asarray(x)),
            holo_radius=math.inf,
            builtin=("exp", z),
        )

    @classmethod
    def oscillatory(cls, z: float) -> "FunctionSpec":
        """h(x) = exp(i z x); entire."""
        return cls(
            label=f"oscexp[z={z}]",
            func=lambda x, z=z: np.exp(1j * z * np.asarray(x)),
            holo_radius=math.inf,
            builtin=("exp", 1j * z),
        )

    @classmethod
    def monomial(cls, n: int) -> "FunctionSpec":
        if n < 0:
            raise InvalidParameter("monomial degree must be >= 0")
        return cls(
            label=f"x^{n}",
            func=lambda x, n=n: np.asarray(x) ** n,
            holo_radius=math.inf,
            builtin=("monomial", n),
        )

    @classmethod
    def chebyshev(cls, basis: Basis, r: int) -> "FunctionSpec":
        """h = X_{r, basis}; a polynomial basis element."""
        return cls(
            label=f"cheb[{basis!r},{r}]",
            func=lambda x, b=basis, r=r: cheb_values(r, np.asarray(x), b.inv_q)[r],
            holo_radius=math.inf,
            builtin=("cheb", basis, r),
        )

    @classmethod
    def log_kernel(cls, t: float) -> "FunctionSpec":
        """h(x) = log(1 - x t + t^2); holomorphic on Omega(rho) for rho < 1/|t|."""
        if not 0 < abs(t) < 1:
            raise InvalidParameter("log kernel parameter needs 0 < |t| < 1")
        return cls(
            label=f"log1mxt[t={t}]",
            func=lambda x, t=t: np.log(1.0 - np.asarray(x) * t + t * t),
            holo_radius=1.0 / abs(t),
            builtin=("logkernel", t),
        )

    @classmethod
    def taylor_series(cls, coeffs: Sequence, radius: float) -> "FunctionSpec":
        b = np.asarray(coeffs)

        def horner(x, b=b):
            x = np.asarray(x)
            acc = np.zeros_like(x, dtype=np.result_type(b.dtype, x.dtype, float))
            for c in b[::-1]:
                acc = acc * x + c
            return acc

        rho = math.inf if radius == math.inf else (radius + math.sqrt(radius**2 - 4)) / 2 if radius > 2 else 1.0
        return cls(
            label=f"taylor[deg<={len(b)-1}]",
            func=horner,
            holo_radius=rho,
            taylor=b,
            taylor_radius=radius,
        )

    @classmethod
    def circle_samples(cls, values: Sequence, radius: float = 1.0) -> "FunctionSpec":
        """Values of h(xi + 1/xi) at the N-th roots of unity scaled by ``radius``."""
        v = np.asarray(values, dtype=complex)
        if v.ndim != 1 or len(v) < 4:
            raise InvalidParameter("need at least 4 equispaced samples")
        return cls(
            label=f"samples[N={len(v)}]",
            func=None,
            holo_radius=1.0 / radius if radius < 1 else math.inf,
            samples=v,
            sample_radius=radius,
        )


# ---------------------------------------------------------------------------
# Coefficient computation


def _fit_decay(coeffs: np.ndarray, window: int = 8) -> float:
    """Geometric ratio fit on the last ``window`` coefficients above the
    numerical floor (entries at rounding level would flatten the fit)."""
    mags = np.abs(np.asarray(coeffs, dtype=complex))
    top = mags.max()
    if top == 0 or len(mags) < 2:
        return 1e-12
    live = np.nonzero(mags > top * 1e-16)[0]
    if len(live) < 2:
        return 1e-12
    end = int(live[-1])
    start = max(int(live[0]), end - window)
    if end == start:
        return 1e-12
    ratio = (mags[end] / max(mags[start], 1e-300)) ** (1.0 / (end - start))
    return float(min(max(ratio, 1e-12), 0.999))


def coeffs_a(
    h,
    basis: Basis,
    rmax: int,
    tol: float = 1e-12,
    max_nodes: int = 1 << 18,
) -> CoefficientSeries:
    """a_{0..rmax, q}(h) by uniform sampling of the contour integral.

    ``h`` is a FunctionSpec or a plain callable.  The sample count (a power
    of two) doubles until the retained coefficients move by less than
    ``tol``.  For basis q = 1 the rational contour factor is identically 1
    after cancelling its removable pole, i.e. the cosine-transform form.
    """
    if rmax < 0:
        raise InvalidParameter("rmax must be >= 0")
    spec = h if isinstance(h, FunctionSpec) else None
    if spec is not None and spec.samples is not None:
        return _coeffs_from_samples(spec, basis, rmax)
    fn = spec if spec is not None else h

    inv_q = basis.inv_q
    n = 64
    while n < 2 * (rmax + 2):
        n *= 2
    prev = None
    while n <= max_nodes:
        theta = 2.0 * math.pi * np.arange(n) / n
        xi = np.exp(1j * theta)
        vals = np.asarray(fn(xi + 1.0 / xi), dtype=complex)
        if inv_q != 1.0:
            vals = vals * (1.0 - xi**2) / (1.0 - inv_q * xi**2)
        est = np.fft.ifft(vals)[: rmax + 1]
        if prev is not None and np.max(np.abs(est - prev)) <= tol:
            break
        prev = est
        n *= 2
    else:
        raise NoConvergence(f"contour sampling did not stabilize within {max_nodes} nodes")
    coeffs = est
    if np.max(np.abs(coeffs.imag)) <= 1e-13 * max(np.max(np.abs(coeffs)), 1.0):
        coeffs = coeffs.real.copy()
    return CoefficientSeries(basis, coeffs, declared_decay=_fit_decay(coeffs))


def _coeffs_from_samples(spec: FunctionSpec, basis: Basis, rmax: int) -> CoefficientSeries:
    v = spec.samples
    n = len(v)
    if rmax + 1 > n // 2:
        raise InvalidParameter(f"{n} samples resolve coefficients only up to r = {n // 2 - 1}")
    tau = spec.sample_radius
    theta = 2.0 * math.pi * np.arange(n) / n
    xi = tau * np.exp(1j * theta)
    w = np.ones(n, dtype=complex) if basis.q == 1 else (1.0 - xi**2) / (1.0 - basis.inv_q * xi**2)
    base = np.fft.ifft(v * w)[: rmax + 1]
    coeffs = base * tau ** np.arange(rmax + 1)
    return CoefficientSeries(basis, coeffs, declared_decay=_fit_decay(coeffs))


def taylor_to_cheb(b: Sequence, radius: float, rmax: int) -> CoefficientSeries:
    """Y-basis coefficients from a Taylor series on B(0, radius), radius > 2:

        a_{r,1} = sum_k  C(2k + r, k) b_{2k+r}.
    """
    if radius <= 2:
        raise RadiusTooSmall("Taylor radius must exceed 2 to cover [-2, 2]")
    b = list(b)
    out = []
    for r in range(rmax + 1):
        total = 0.0
        for k in range((len(b) - r) // 2 + 1):
            idx = 2 * k + r
            if idx >= len(b):
                break
            total += math.comb(idx, k) * b[idx]
        out.append(total)
    coeffs = np.asarray(out)
    if radius == math.inf:
        decay = _fit_decay(coeffs)
    else:
        decay = 2.0 / (radius + math.sqrt(radius**2 - 4))  # = 1/rho
    return CoefficientSeries(Y_BASIS, coeffs, declared_decay=decay)


def power_coeffs_exact(n: int, basis: Basis) -> list[Fraction]:
    """Exact coefficients of x^n in the given basis, index 0..n.

    x^n = sum_k C(n,k) Y_{n-2k}
        = sum_k (C(n,k) - C(n,k-1)) X_{n-2k}
        = sum_k (sum_{m<=k} q^{-(k-m)} (C(n,m) - C(n,m-1))) X_{n-2k,q}.
    """
    if n < 0:
        raise InvalidParameter("power must be >= 0")
    out = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        r = n - 2 * k
        if basis.q == 1:
            out[r] = Fraction(math.comb(n, k))
        elif basis.q == math.inf:
            out[r] = Fraction(math.comb(n, k) - (math.comb(n, k - 1) if k else 0))
        else:
            q = int(basis.q)
            out[r] = sum(
                Fraction(math.comb(n, m) - (math.comb(n, m - 1) if m else 0), q ** (k - m))
                for m in range(k + 1)
            )
    return out


def power_coeffs(n: int, basis: Basis) -> CoefficientSeries:
    exact = power_coeffs_exact(n, basis)
    return CoefficientSeries(basis, np.array([float(c) for c in exact]))


def exp_coeffs(z: complex, basis: Basis, rmax: int | None = None, tol: float = 1e-16) -> CoefficientSeries:
    """Coefficients of e^{zx} from the modified-Bessel closed forms.

    a_{r,1} = I_r(2z);  a_{r,inf} = (r+1) I_{r+1}(2z) / z;
    a_{r,q} = (1/z) sum_k q^{-k} (r+2k+1) I_{r+2k+1}(2z).

    For z = 0 the 1/z forms are replaced by the exact limit h == 1.
    Oscillatory e^{izx} is the same call with imaginary z, where
    I_n(2iz) = i^n J_n(2z).
    """
    if rmax is None:
        rmax = 8
        while abs(bessel_i(rmax, 2 * abs(z) if z else 0.0)) > 1e-16 and rmax < 256:
            rmax += 4
    if z == 0:
        coeffs = np.zeros(rmax + 1, dtype=float)
        coeffs[0] = 1.0
        return CoefficientSeries(basis, coeffs, declared_decay=1e-12)
    complex_z = isinstance(z, complex) and z.imag != 0
    kmax = rmax + 64
    iv = [bessel("I", m, 2 * z, tol=tol) for m in range(kmax + 2)]
    if basis.q == 1:
        coeffs = np.array(iv[: rmax + 1])
    elif basis.q == math.inf:
        coeffs = np.array([(r + 1) * iv[r + 1] / z for r in range(rmax + 1)])
    else:
        inv_q = basis.inv_q
        coeffs = np.empty(rmax + 1, dtype=complex)
        for r in range(rmax + 1):
            total = 0.0
            for k in range((kmax - r) // 2 + 1):
                m = r + 2 * k + 1
                if m > kmax + 1:
                    break
                total += inv_q**k * m * iv[m]
            coeffs[r] = total / z
    if not complex_z:
        coeffs = coeffs.real.copy() if np.iscomplexobj(coeffs) else coeffs
    return CoefficientSeries(basis, np.asarray(coeffs), declared_decay=_fit_decay(coeffs))


def log_kernel_coeffs(t: float, rmax: int) -> CoefficientSeries:
    """Y-basis coefficients of -log(1 - x t + t^2): a_0 = 0, a_r = t^r / r.

    (The expansion of the logarithm itself carries the opposite sign; the
    minus sign here is fixed by direct numerical evaluation and is the form
    the zeta-function work consumes.)
    """
    if not 0 < abs(t) < 1:
        raise InvalidParameter("need 0 < |t| < 1")
    coeffs = np.array([0.0] + [t**r / r for r in range(1, rmax + 1)])
    return CoefficientSeries(Y_BASIS, coeffs, declared_decay=abs(t))


def expansion_coefficients(h: FunctionSpec, basis: Basis, rmax: int, tol: float = 1e-12) -> CoefficientSeries:
    """Coefficients of ``h`` in ``basis``, preferring closed forms.

    Builtin exponentials use the Bessel forms, polynomials their exact
    binomial expansions; everything else goes through the sampled contour
    integral.  Cross-route agreement between the two paths is part of the
    test suite.
    """
    if h.builtin is not None:
        kind = h.builtin[0]
        if kind == "exp":
            return exp_coeffs(h.builtin[1], basis, rmax)
        if kind == "monomial":
            n = h.builtin[1]
            series = power_coeffs(n, basis)
            if len(series.coeffs) >= rmax + 1:
                return series
            coeffs = np.zeros(rmax + 1, dtype=series.coeffs.dtype)
            coeffs[: len(series.coeffs)] = series.coeffs
            return CoefficientSeries(basis, coeffs)
        if kind == "cheb":
            src_basis, r = h.builtin[1], h.builtin[2]
            coeffs = np.zeros(max(rmax, r) + 1)
            coeffs[r] = 1.0
            return basis_convert(CoefficientSeries(src_basis, coeffs), basis)
        if kind == "logkernel":
            series = log_kernel_coeffs(h.builtin[1], rmax)
            # log_kernel_coeffs expands -log(1 - xt + t^2); h here is +log
            flipped = CoefficientSeries(Y_BASIS, -series.coeffs, series.declared_decay)
            return flipped if basis.q == 1 else basis_convert(flipped, basis)
    if h.taylor is not None and basis.q == 1:
        return taylor_to_cheb(h.taylor, h.taylor_radius, rmax)
    return coeffs_a(h, basis, rmax, tol=tol)


# ---------------------------------------------------------------------------
# Radial functions on the (q+1)-regular tree


@dataclass
class RadialFunction:
    """Finitely supported rotation-invariant function on the tree.

    ``values[r]`` is the common value on the distance-r shell around the
    root; ``q`` is the branching number.
    """

    values: list
    q: int

    def __post_init__(self):
        self.values = list(self.values)
        if not self.values:
            raise InvalidParameter("radial function needs at least the root value")
        if self.q < 1:
            raise InvalidParameter("q must be >= 1")

    def __getitem__(self, r: int):
        return self.values[r] if 0 <= r < len(self.values) else 0


def horocycle_transform(f: RadialFunction) -> list:
    """Hf(n) = f(|n|) + (q-1) sum_{j>=1} q^{j-1} f(|n|+2j), for n = 0..N.

    The transform is even in n; only the nonnegative side is returned.
    Exact when the shell values are ints or Fractions.
    """
    q = f.q
    nmax = len(f.values) - 1
    out = []
    for n in range(nmax + 1):
        total = f[n]
        j = 1
        while n + 2 * j <= nmax:
            total += (q - 1) * q ** (j - 1) * f[n + 2 * j]
            j += 1
        out.append(total)
    return out


def inverse_horocycle(hf: Sequence, q: int) -> RadialFunction:
    """Invert the horocycle transform: f(n) = Hf(n) - (q-1) sum_{j>=1} Hf(n+2j)."""
    hf = list(hf)
    nmax = len(hf) - 1
    vals = []
    for n in range(nmax + 1):
        total = hf[n]
        j = 1
        while n + 2 * j <= nmax:
            total -= (q - 1) * hf[n + 2 * j]
            j += 1
        vals.append(total)
    return RadialFunction(vals, q)


def radial_embedding(f: RadialFunction) -> CoefficientSeries:
    """Embed a radial function into L^2(mu_q):

        Phi(f) = f(0) + (1 + 1/q)^{-1} sum_{r>=1} f(r) q^{r/2} X_{r,q}.

    Under the basis orthogonality, <Phi f, Phi g> equals
    f(0) g(0) + (1 + 1/q)^{-1} sum_{r>=1} f(r) g(r) q^r.
    """
    q = f.q
    scale = 1.0 / (1.0 + 1.0 / q)
    coeffs = [float(f[0])]
    coeffs += [scale * float(f[r]) * q ** (r / 2) for r in range(1, len(f.values))]
    return CoefficientSeries(Basis(q), np.asarray(coeffs))
