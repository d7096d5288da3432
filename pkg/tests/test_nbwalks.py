from collections import Counter

import numpy as np
import pytest

import nbtrace as nt
from nbtrace.errors import BudgetExceeded


def adjacency_power_entry(g, a, b, n):
    """Exact big-integer matrix-power oracle for general walk counts."""
    A = nt.adjacency_matrix(g).astype(object)
    M = np.eye(g.n, dtype=np.int64).astype(object)
    for _ in range(n):
        M = M @ A
    return int(M[a, b])


def test_nbw_matrix_k4_r2():
    a2 = nt.nbw_matrix(nt.complete(4), 2)
    want = 2 * (np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    assert (a2 == want).all()


def test_nbw_matrix_r1_is_adjacency(test_graphs):
    for g in test_graphs.values():
        assert (nt.nbw_matrix(g, 1) == nt.adjacency_matrix(g)).all()


def test_nbw_matrix_cycle5_r3():
    a3 = nt.nbw_matrix(nt.cycle(5), 3)
    assert a3[0, 3] == 1 and a3[0, 2] == 1 and a3[0, 0] == 0


def test_enumerate_trivial_and_small():
    g = nt.complete(4)
    assert nt.enumerate_nbw(g, 2, 2, 0) == 1
    assert nt.enumerate_nbw(g, 0, 1, 2) == 2
    assert nt.enumerate_nbw(nt.cycle(3), 0, 0, 3) == 2


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        nt.enumerate_nbw(nt.petersen(), 0, 0, 12, budget=100)


@pytest.mark.parametrize("name", ["C3", "C5", "K4", "petersen"])
def test_matrix_equals_enumeration(test_graphs, name):
    g = test_graphs[name]
    mats = nt.nbw_matrices(g, 6)
    for r in range(7):
        for a in range(g.n):
            for b in range(g.n):
                assert mats[r][a, b] == nt.enumerate_nbw(g, a, b, r), (name, r, a, b)


def test_closed_counts_cycle3():
    t = nt.closed_nbw_counts(nt.cycle(3), 6)
    assert t.f[0] == 3
    assert t.f[3] == 6 and t.f[4] == 0 and t.f[6] == 6


def test_closed_counts_k4_f3():
    assert nt.closed_nbw_counts(nt.complete(4), 3).f[3] == 24


def test_closed_counts_petersen_girth5():
    t = nt.closed_nbw_counts(nt.petersen(), 4)
    assert t.f[1:] == [0, 0, 0, 0]


def test_per_vertex_sums_to_total(test_graphs):
    for g in test_graphs.values():
        t = nt.closed_nbw_counts(g, 6)
        for r in range(7):
            assert sum(t.per_vertex[v][r] for v in range(g.n)) == t.f[r]


def test_circuit_counts_k4():
    t = nt.circuit_counts(nt.complete(4), 8)
    assert t.c[3] == 24
    assert t.c[5] == 0  # no circuit of length 5 fits in K4


def test_circuit_counts_cycle3_multiples_of_girth():
    t = nt.circuit_counts(nt.cycle(3), 9)
    for r in range(1, 10):
        assert t.c[r] == (6 if r % 3 == 0 else 0)


def test_bipartite_has_no_odd_circuits():
    t = nt.circuit_counts(nt.complete_bipartite(3), 9)
    assert all(t.c[r] == 0 for r in range(1, 10, 2))


def test_frcr_relation_is_exact(test_graphs):
    # f_r = c_r + (q-1) sum_{1<=i<r/2} q^{i-1} c_{r-2i}, pure integers
    for g in test_graphs.values():
        t = nt.circuit_counts(g, 8)
        for r in range(1, 9):
            recon = t.c[r] + (g.q - 1) * sum(
                g.q ** (i - 1) * t.c[r - 2 * i] for i in range(1, (r + 1) // 2)
            )
            assert t.f[r] == recon


def test_prime_classes_cycle3():
    classes = nt.prime_circuit_classes(nt.cycle(3), 6)
    assert [p.length for p in classes] == [3, 3]  # one class per orientation


def test_prime_classes_k4():
    classes = nt.prime_circuit_classes(nt.complete(4), 3)
    assert len(classes) == 8 and all(p.length == 3 for p in classes)


def test_prime_classes_petersen_empty_below_girth():
    assert nt.prime_circuit_classes(nt.petersen(), 4) == []


def test_prime_class_representative_is_canonical():
    for p in nt.prime_circuit_classes(nt.complete(4), 4):
        rotations = [p.edges[i:] + p.edges[:i] for i in range(p.length)]
        assert p.edges == min(rotations)


def test_lpcr_on_all_graphs(test_graphs):
    # c_r = sum over classes with length | r (validated internally, and here)
    for g in test_graphs.values():
        classes = nt.prime_circuit_classes(g, 7)
        counts = Counter(p.length for p in classes)
        c = nt.circuit_counts_exact(g, 7)
        for r in range(1, 8):
            assert c[r] == sum(ell * counts[ell] for ell in counts if r % ell == 0)


def test_girths(test_graphs):
    expected = {"C3": 3, "C5": 5, "K4": 3, "petersen": 5, "torus42": 4}
    for name, g in test_graphs.items():
        assert nt.girth(g) == expected[name]


def test_girth_of_loop_is_one():
    assert nt.girth(nt.build_graph([(0, 0)], 1)) == 1


def test_chebyshev_walk_identity(test_graphs):
    # A_r = q^{r/2} X_{r,q}(q^{-1/2} A): the float route is a test only
    for g in test_graphs.values():
        x = nt.adjacency_matrix(g).astype(float) / np.sqrt(g.q)
        mats = nt.nbw_matrices(g, 10)
        eye = np.eye(g.n)
        prev, cur = np.zeros_like(eye), eye  # X_{-1}, X_0 placeholders
        xs = [eye, x]
        for r in range(2, 11):
            xs.append(x @ xs[-1] - xs[-2])
        for r in range(11):
            xrq = xs[r] - (xs[r - 2] / g.q if r >= 2 else 0.0)
            assert np.abs(g.q ** (r / 2) * xrq - mats[r]).max() < 1e-9


def test_walk_count_examples():
    k4 = nt.complete(4)
    assert nt.walk_count(k4, 0, 0, 2) == 3
    assert nt.walk_count(k4, 1, 1, 0) == 1
    # full cycle wrap: C(4,2)=6 line walks plus 2 walks around the square
    assert nt.walk_count(nt.cycle(4), 0, 0, 4) == 8


def test_walk_count_matches_matrix_power(test_graphs):
    for g in test_graphs.values():
        for n in range(11):
            for (a, b) in [(0, 0), (0, 1 % g.n), (1 % g.n, g.n - 1)]:
                assert nt.walk_count(g, a, b, n) == adjacency_power_entry(g, a, b, n)


def test_walk_count_big_lengths_exact():
    # arbitrary-precision: counts overflow int64 comfortably
    g = nt.complete(4)
    n = 50
    assert nt.walk_count(g, 0, 0, n) == adjacency_power_entry(g, 0, 0, n)
