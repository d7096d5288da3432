"""Non-backtracking walk matrices, enumeration oracles, and circuit counts.

The length-r non-backtracking matrix A_r counts NBWs of length r between
vertex pairs.  It is computed by the exact integer recurrence

    A_0 = I,  A_1 = A,  A_2 = A^2 - (q+1) I,  A_{r+1} = A A_r - q A_{r-1},

never by floating Chebyshev evaluation (that identity is a test, not the
implementation).  Brute-force depth-first enumeration over directed edges
serves as the independent oracle.

Closed-NBW counts f_r, circuit counts c_r, and prime-circuit classes are
linked by

    f_r = c_r + (q-1) sum_{1 <= i < r/2} q^{i-1} c_{r-2i},
    c_r = sum over prime classes gamma with len | r of len(gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import km_moment_y
from .eigen import eigenvalues_symmetric
from .errors import BudgetExceeded, InvalidParameter, RouteMismatch
from .graphs import RegularGraph, adjacency_matrix

__all__ = [
    "NbwCountTable",
    "PrimeCircuitClass",
    "nbw_matrix",
    "nbw_matrices",
    "enumerate_nbw",
    "closed_nbw_counts",
    "circuit_counts",
    "circuit_counts_exact",
    "prime_circuit_classes",
    "girth",
    "walk_count",
]

_INT64_SAFE = 1 << 62


@dataclass
class NbwCountTable:
    """Per-length walk counts of one graph up to radius R.

    ``f[r]`` counts closed NBWs of length r, ``per_vertex[v][r]`` those
    based at v, and ``c[r]`` the circuits.  By definition f[0] = |V| and
    c[0] = 0.
    """

    n: int
    q: int
    rmax: int
    f: list[int]
    per_vertex: list[list[int]]
    c: list[int] | None = None


@dataclass(frozen=True)
class PrimeCircuitClass:
    """Rotation-equivalence class of prime circuits.

    The representative is the lexicographically least cyclic rotation of
    the directed-edge index sequence.  Orientation reversal is *not*
    quotiented: a geometric cycle contributes one class per orientation.
    """

    edges: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)


def _needs_bigint(q: int, r: int) -> bool:
    return r >= 1 and (q + 1) * q ** max(r - 1, 0) >= _INT64_SAFE


def nbw_matrices(g: RegularGraph, rmax: int, exact: bool = False) -> list[np.ndarray]:
    """A_0..A_rmax by the integer recurrence.

    Uses int64 while the entry bound (q+1) q^(r-1) fits, otherwise Python
    integers (object dtype).  ``exact=True`` forces big integers.
    """
    if rmax < 0:
        raise InvalidParameter("rmax must be >= 0")
    dtype = object if (exact or _needs_bigint(g.q, rmax)) else np.int64
    a = adjacency_matrix(g).astype(dtype)
    eye = np.eye(g.n, dtype=np.int64).astype(dtype)
    mats = [eye]
    if rmax >= 1:
        mats.append(a)
    if rmax >= 2:
        mats.append(a @ a - (g.q + 1) * eye)
    for _ in range(3, rmax + 1):
        mats.append(a @ mats[-1] - g.q * mats[-2])
    return mats


def nbw_matrix(g: RegularGraph, r: int) -> np.ndarray:
    """The length-r non-backtracking matrix A_r."""
    return nbw_matrices(g, r)[r]


def enumerate_nbw(g: RegularGraph, a: int, b: int, r: int, budget: int = 10_000_000) -> int:
    """Count NBWs of length r from a to b by brute-force DFS.

    Independent of the matrix recurrence; O((q+1) q^(r-1)) per source, so
    callers keep r small.  Raises BudgetExceeded past ``budget`` edge
    traversals.
    """
    if r < 0:
        raise InvalidParameter("walk length must be >= 0")
    if r == 0:
        return int(a == b)
    terminus = g.terminus
    count = 0
    visited = 0
    # stack of (directed edge, steps remaining after taking it)
    stack = [(e, r - 1) for e in g.out_edges(a)]
    while stack:
        e, remaining = stack.pop()
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"NBW enumeration exceeded {budget} traversals")
        if remaining == 0:
            if terminus[e] == b:
                count += 1
            continue
        bar = e ^ 1
        for nxt in g.out_edges(int(terminus[e])):
            if nxt != bar:
                stack.append((nxt, remaining - 1))
    return count


def closed_nbw_counts(g: RegularGraph, rmax: int) -> NbwCountTable:
    """f_r(G) and f_r(v; G) for r <= rmax, from traces and diagonals of A_r."""
    mats = nbw_matrices(g, rmax)
    per_vertex = [[int(mats[r][v, v]) for r in range(rmax + 1)] for v in range(g.n)]
    f = [int(np.trace(mats[r])) for r in range(rmax + 1)]
    return NbwCountTable(n=g.n, q=g.q, rmax=rmax, f=f, per_vertex=per_vertex)


def _circuits_from_f(f: list[int], q: int) -> list[int]:
    # invert f_r = c_r + (q-1) sum_{1 <= i < r/2} q^{i-1} c_{r-2i}
    c = [0] * len(f)
    for r in range(1, len(f)):
        correction = sum(q ** (i - 1) * c[r - 2 * i] for i in range(1, (r + 1) // 2))
        c[r] = f[r] - (q - 1) * correction
    return c


def circuit_counts_exact(g: RegularGraph, rmax: int) -> list[int]:
    """c_0..c_rmax by exact integer arithmetic (trace route)."""
    return _circuits_from_f(closed_nbw_counts(g, rmax).f, g.q)


def circuit_counts(g: RegularGraph, rmax: int, round_tol: float = 1e-6) -> NbwCountTable:
    """Circuit counts c_r by two independent routes; error on disagreement.

    Route 1 inverts the closed-NBW relation in integer arithmetic; route 2
    evaluates the spectral identity
    int Y_r dmu_G = int Y_r dmu_q + q^{-r/2} c_r / |V| on the eigenvalues
    and rounds.  A mismatch after rounding raises RouteMismatch.
    """
    if rmax < 1:
        raise InvalidParameter("rmax must be >= 1")
    table = closed_nbw_counts(g, rmax)
    c1 = _circuits_from_f(table.f, g.q)

    lam = eigenvalues_symmetric(adjacency_matrix(g).astype(float))
    x = lam / math.sqrt(g.q)
    # sum of Y_r over the normalized spectrum, via the X recurrence
    xs = [np.ones_like(x), x.copy()]
    for r in range(2, rmax + 1):
        xs.append(x * xs[-1] - xs[-2])
    moments = [float(g.n)]
    for r in range(1, rmax + 1):
        y = xs[r] - (xs[r - 2] if r >= 2 else 0.0)
        moments.append(float(np.sum(y)))

    for r in range(1, rmax + 1):
        background = g.n * float(km_moment_y(r, g.q))
        value = g.q ** (r / 2) * (moments[r] - background)
        rounded = round(value)
        if abs(value - rounded) > round_tol:
            raise RouteMismatch(
                f"spectral circuit count at r={r} is {value!r}, not near an integer"
            )
        if rounded != c1[r]:
            raise RouteMismatch(
                f"circuit routes disagree at r={r}: combinatorial {c1[r]}, spectral {rounded}"
            )
    table.c = c1
    return table


def _minimal_period(seq: tuple[int, ...]) -> int:
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[i] == seq[i % p] for i in range(n)):
            return p
    return n


def _canonical_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _circuits_up_to(g: RegularGraph, lmax: int, budget: int):
    """Yield (length, edge tuple) for every circuit of length <= lmax.

    One depth-first pass per starting edge covers all lengths; a closed
    prefix passing the seam condition is a circuit based at that edge.
    """
    terminus = g.terminus
    path: list[int] = []
    out = []
    budget_left = budget

    def extend(e0: int, base: int, e: int):
        nonlocal budget_left
        budget_left -= 1
        if budget_left < 0:
            raise BudgetExceeded(f"circuit enumeration exceeded {budget} traversals")
        path.append(e)
        if terminus[e] == base and e != (e0 ^ 1):
            out.append((len(path), tuple(path)))
        if len(path) < lmax:
            bar = e ^ 1
            for nxt in g.out_edges(int(terminus[e])):
                if nxt != bar:
                    extend(e0, base, nxt)
        path.pop()

    for e0 in range(g.num_directed_edges):
        extend(e0, int(g.origin[e0]), e0)
        yield from out
        out.clear()


def prime_circuit_classes(
    g: RegularGraph, lmax: int, budget: int = 10_000_000
) -> list[PrimeCircuitClass]:
    """Rotation classes of prime circuits up to length lmax.

    Cross-validates c_r = sum_{len | r} len over the found classes against
    the exact circuit counts for every r <= lmax.  Results are cached on
    the (immutable) graph, so repeated calls with the same or a smaller
    horizon are free.
    """
    if lmax < 1:
        raise InvalidParameter("lmax must be >= 1")
    cached = g.__dict__.get("_prime_class_cache")
    if cached is not None and cached[0] >= lmax:
        return [p for p in cached[1] if p.length <= lmax]
    classes: dict[tuple[int, ...], None] = {}
    found_counts = [0] * (lmax + 1)
    for length, circuit in _circuits_up_to(g, lmax, budget):
        found_counts[length] += 1
        if _minimal_period(circuit) == length:
            classes.setdefault(_canonical_rotation(circuit), None)
    result = sorted(
        (PrimeCircuitClass(edges) for edges in classes), key=lambda p: (p.length, p.edges)
    )
    c_exact = circuit_counts_exact(g, lmax)
    for r in range(1, lmax + 1):
        if found_counts[r] != c_exact[r]:
            raise RouteMismatch(
                f"enumerated {found_counts[r]} circuits of length {r}, trace route says {c_exact[r]}"
            )
        from_primes = sum(p.length for p in result if r % p.length == 0)
        if from_primes != c_exact[r]:
            raise RouteMismatch(
                f"prime-class divisor sum {from_primes} != c_{r} = {c_exact[r]}"
            )
    object.__setattr__(g, "_prime_class_cache", (lmax, result))
    return result


def girth(g: RegularGraph) -> int:
    """Smallest r >= 1 with a closed NBW of length r."""
    bound = 2 * g.num_edges
    mats = nbw_matrices(g, 0)
    a = adjacency_matrix(g).astype(object)
    eye = np.eye(g.n, dtype=np.int64).astype(object)
    prev, cur = eye, a
    for r in range(1, bound + 1):
        if np.trace(cur) > 0:
            return r
        if r == 1:
            prev, cur = cur, a @ a - (g.q + 1) * eye
        else:
            prev, cur = cur, a @ cur - g.q * prev
    raise RouteMismatch("no closed NBW found within 2|E| steps; graph invalid")


def walk_count(g: RegularGraph, a: int, b: int, n: int) -> int:
    """Number of (all, backtracking allowed) walks of length n from a to b.

    Exact big-integer evaluation of
    W_n = sum_{0<=k<=n/2} (sum_{0<=m<=k} (C(n,m) - C(n,m-1)) q^m) f_{n-2k},
    which the tests pin against the matrix-power oracle A^n.
    """
    if n < 0:
        raise InvalidParameter("walk length must be >= 0")
    mats = nbw_matrices(g, n, exact=True)
    q = g.q
    total = 0
    for k in range(n // 2 + 1):
        coeff = sum(
            (math.comb(n, m) - (math.comb(n, m - 1) if m >= 1 else 0)) * q**m
            for m in range(k + 1)
        )
        total += coeff * int(mats[n - 2 * k][a, b])
    return total
