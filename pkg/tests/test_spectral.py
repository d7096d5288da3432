import math

import numpy as np
import pytest

import nbtrace as nt
from nbtrace import DiscreteMeasure
from nbtrace.errors import InvalidParameter, PoleOnSupport


# -- eigensolver -------------------------------------------------------------


def test_eigenvalues_k4():
    w = nt.eigenvalues_symmetric(nt.adjacency_matrix(nt.complete(4)).astype(float))
    assert np.allclose(w, [3, -1, -1, -1], atol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 5, 8])
def test_eigenvalues_cycle_closed_form(n):
    w = nt.eigenvalues_symmetric(nt.adjacency_matrix(nt.cycle(n)).astype(float))
    want = np.sort([2 * math.cos(2 * math.pi * k / n) for k in range(n)])[::-1]
    assert np.allclose(w, want, atol=1e-10)


def test_eigenvalues_identity():
    w = nt.eigenvalues_symmetric(np.eye(6))
    assert np.allclose(w, 1.0)


def test_eigen_reconstruction(test_graphs, eig_oracle):
    for g in test_graphs.values():
        a = nt.adjacency_matrix(g).astype(float)
        w, v = nt.eigenvalues_symmetric(a, with_vectors=True)
        assert np.abs(v @ np.diag(w) @ v.T - a).max() < 1e-9
        w_ref, _ = eig_oracle(a)
        assert np.allclose(w, w_ref, atol=1e-9)


def test_eigen_random_symmetric_against_lapack(eig_oracle):
    rng = np.random.default_rng(11)
    m = rng.normal(size=(40, 40))
    m = (m + m.T) / 2
    w = nt.eigenvalues_symmetric(m)
    w_ref, _ = eig_oracle(m)
    assert np.allclose(w, w_ref, atol=1e-9)


def test_eigen_rejects_nonsymmetric():
    with pytest.raises(InvalidParameter):
        nt.eigenvalues_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))


# -- spectral measure --------------------------------------------------------


def test_measure_k4():
    mu = nt.spectral_measure(nt.complete(4))
    assert np.allclose(mu.locations, [-1 / math.sqrt(2), 3 / math.sqrt(2)], atol=1e-10)
    assert np.allclose(mu.weights, [0.75, 0.25])


def test_measure_cycle4():
    mu = nt.spectral_measure(nt.cycle(4))
    assert np.allclose(mu.locations, [-2, 0, 2], atol=1e-10)
    assert np.allclose(mu.weights, [0.25, 0.5, 0.25])


def test_measure_support_and_mass(test_graphs):
    for g in test_graphs.values():
        mu = nt.spectral_measure(g)
        edge = math.sqrt(g.q) + 1 / math.sqrt(g.q)
        assert mu.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.abs(mu.locations) <= edge + 1e-9)


def test_moment_consistency(test_graphs):
    # atom sums equal normalized traces of (q^{-1/2} A)^n
    for g in test_graphs.values():
        mu = nt.spectral_measure(g)
        b = nt.adjacency_matrix(g).astype(float) / math.sqrt(g.q)
        m = np.eye(g.n)
        for n in range(9):
            assert mu.moment(n) == pytest.approx(np.trace(m) / g.n, abs=1e-10)
            m = m @ b


def test_vertex_integral_examples():
    k4 = nt.complete(4)
    ones = lambda x: np.ones_like(np.asarray(x))
    assert nt.vertex_integral(k4, 0, ones) == pytest.approx(1.0)
    # x^2 at a vertex is the normalized degree
    assert nt.vertex_integral(k4, 1, lambda x: x**2) == pytest.approx((2 + 1) / 2)
    assert nt.vertex_integral(k4, 2, lambda x: x) == pytest.approx(0.0, abs=1e-12)


def test_vertex_measures_average_to_global(test_graphs):
    for g in test_graphs.values():
        mu = nt.spectral_measure(g)
        for n in range(7):
            avg = np.mean([nt.vertex_integral(g, v, lambda x: x**n) for v in range(g.n)])
            assert avg == pytest.approx(mu.moment(n), abs=1e-10)


# -- Stieltjes transforms ----------------------------------------------------


def test_plain_stieltjes_single_atom():
    mu = DiscreteMeasure([0.0], [1.0])
    assert nt.stieltjes(mu, 2j) == pytest.approx(0.5j)


def test_plain_stieltjes_pole_detection():
    mu = DiscreteMeasure([0.0, 1.0], [0.5, 0.5])
    with pytest.raises(PoleOnSupport):
        nt.stieltjes(mu, 1.0)


def test_km_modified_is_one():
    for q in (1, 2, 3):
        for t in (0.1, 0.45, -0.3):
            assert nt.km_stieltjes_modified(q, q, t) == pytest.approx(1.0)


def test_km_stieltjes_closed_form_against_quadrature():
    for q in (2, 3):
        for z in (3.0, 2.6, -4.0):
            direct = nt.km_integrate(q, lambda x: 1.0 / (x - z))
            assert nt.km_stieltjes(q, z) == pytest.approx(direct, abs=1e-10)


def test_modified_plain_relation():
    # S~_{mu,q}(t) = (t/q - 1/t) S_mu(t + 1/t); sign fixed by factoring
    # 1 - x t + t^2 = -t (x - (t + 1/t))
    mu = nt.spectral_measure(nt.complete(4))
    q, t = 2, 0.3
    lhs = nt.stieltjes_modified(mu, q, t)
    rhs = (t / q - 1 / t) * nt.stieltjes(mu, t + 1 / t)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_series_check_small_deviation(test_graphs):
    for g in test_graphs.values():
        rep = nt.stieltjes_series_check(g, 10)
        assert rep.max_deviation < 1e-8
        assert rep.q_form_deviations[0] < 1e-12  # r = 0 coefficient is f_0/|V| = 1


def test_series_check_k4_coefficient_value():
    # r = 3 coefficient of the q-kernel transform is q^{-3/2} f_3 / |V|
    mu = nt.spectral_measure(nt.complete(4))
    vals = nt.cheb_values(3, mu.locations, 0.5)
    coeff = float(np.sum(mu.weights * vals[3]))
    assert coeff == pytest.approx(2 ** (-1.5) * 24 / 4, abs=1e-10)


# -- Fourier-Laplace ---------------------------------------------------------


def test_fourier_at_zero(test_graphs):
    for g in test_graphs.values():
        assert nt.fourier_laplace(g, 0.0, "eigen") == pytest.approx(1.0)
        assert nt.fourier_laplace(g, 0.0, "bessel_series") == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("p", [0.25, 1.0, 2.0, -1.3])
def test_fourier_routes_agree(test_graphs, p):
    for g in test_graphs.values():
        a = nt.fourier_laplace(g, p, "eigen")
        b = nt.fourier_laplace(g, p, "bessel_series")
        assert abs(a - b) < 1e-8


def test_fourier_correction_order_is_girth(test_graphs):
    for name in ("C5", "K4", "petersen"):
        g = test_graphs[name]
        assert nt.fourier_correction_order(g) == nt.girth(g)


def test_fourier_petersen_correction_is_order_five():
    g = nt.petersen()
    def correction(p):
        return abs(
            nt.fourier_laplace(g, p, "eigen") - nt.km_integrate(2, lambda x: np.exp(1j * p * x))
        )
    # quintic zero: halving p divides the correction by ~2^5
    ratio = correction(0.2) / correction(0.1)
    assert ratio == pytest.approx(32.0, rel=0.15)


# -- heat trace --------------------------------------------------------------


def test_heat_trace_at_zero(test_graphs):
    for g in test_graphs.values():
        assert nt.heat_trace(g, 0.0, "eigen") == pytest.approx(g.n)
        assert nt.heat_trace(g, 0.0, "series") == pytest.approx(g.n)


def test_heat_trace_k4_value():
    # Laplacian spectrum of K4 is {0, 4, 4, 4}
    want = 1 + 3 * math.exp(-4.0)
    assert nt.heat_trace(nt.complete(4), 1.0, "eigen") == pytest.approx(want, abs=1e-12)
    assert nt.heat_trace(nt.complete(4), 1.0, "series") == pytest.approx(want, abs=1e-10)


@pytest.mark.parametrize("t", [0.1, 0.5, 1.0, 2.0])
def test_heat_trace_routes_agree(test_graphs, t):
    for g in test_graphs.values():
        a = nt.heat_trace(g, t, "eigen")
        b = nt.heat_trace(g, t, "series")
        assert abs(a - b) < 1e-8


def test_heat_trace_background_needs_full_laplacian_shift():
    # the series background must be |V| e^{-(q+1)t} int e^{sqrt(q) t x} dmu_q;
    # the naive variant int e^{-t(sqrt(q)-1)^2 x} dmu_q (no |V|, no phase
    # factor) does not reproduce the spectral side
    g = nt.complete(4)
    q, t = g.q, 0.8
    eig = nt.heat_trace(g, t, "eigen")
    circ = nt.circuit_counts_exact(g, 40)
    series_part = math.exp(-(q + 1) * t) * sum(
        q ** (-r / 2) * circ[r] * nt.bessel_i(r, 2 * math.sqrt(q) * t).real for r in range(1, 41)
    )
    good = g.n * math.exp(-(q + 1) * t) * nt.km_integrate(q, lambda x: np.exp(math.sqrt(q) * t * x))
    naive = nt.km_integrate(q, lambda x: np.exp(-t * (math.sqrt(q) - 1) ** 2 * x))
    assert eig == pytest.approx(good + series_part, abs=1e-10)
    assert abs(eig - (naive + series_part / g.n)) > 1e-2


def test_heat_trace_rejects_negative_time():
    with pytest.raises(InvalidParameter):
        nt.heat_trace(nt.cycle(3), -0.5)
