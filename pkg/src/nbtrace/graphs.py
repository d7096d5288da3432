"""Finite regular multigraphs with explicit directed-edge structure.

A (q+1)-regular multigraph stores its undirected edge multiset together
with the derived directed edges: undirected edge i yields directed edges
2i (u -> v) and 2i+1 (v -> u), mutual inverses.  Loops and multi-edges
are allowed; a loop contributes 2 to its endpoint's degree and 2 to the
diagonal adjacency entry, keeping row sums equal to the degree.

Graphs are immutable after construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .errors import EmptyGraph, InvalidParameter, NonRegular

__all__ = [
    "RegularGraph",
    "build_graph",
    "cycle",
    "complete",
    "complete_bipartite",
    "petersen",
    "random_regular",
    "torus",
    "generate",
    "cartesian_product",
    "adjacency_matrix",
    "is_bipartite",
    "read_edge_list",
    "write_edge_list",
]


@dataclass(frozen=True)
class RegularGraph:
    """A validated (q+1)-regular multigraph."""

    n: int
    q: int
    edges: tuple[tuple[int, int], ...]
    origin: np.ndarray = field(repr=False)
    terminus: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return self.q + 1

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_directed_edges(self) -> int:
        return 2 * len(self.edges)

    def inverse(self, e: int) -> int:
        """Index of the reversed directed edge; an involution without fixed points."""
        return e ^ 1

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    @property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        # built lazily; cached on the instance despite frozen=True
        cached = self.__dict__.get("_out_cache")
        if cached is None:
            buckets: list[list[int]] = [[] for _ in range(self.n)]
            for e, o in enumerate(self.origin):
                buckets[o].append(e)
            cached = tuple(tuple(b) for b in buckets)
            object.__setattr__(self, "_out_cache", cached)
        return cached

    def adjacency(self) -> np.ndarray:
        return adjacency_matrix(self)


def build_graph(edge_list, expected_q: int) -> RegularGraph:
    """Validate an undirected edge list into a RegularGraph.

    Vertex count is one plus the largest vertex index.  Raises NonRegular
    when any degree differs from expected_q + 1, EmptyGraph on an empty
    edge list.
    """
    edges = [(int(u), int(v)) for u, v in edge_list]
    if not edges:
        raise EmptyGraph("edge list is empty")
    if expected_q < 1:
        raise InvalidParameter("expected_q must be >= 1")
    n = max(max(u, v) for u, v in edges) + 1
    if min(min(u, v) for u, v in edges) < 0:
        raise InvalidParameter("vertex indices must be nonnegative")
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for v, d in enumerate(deg):
        if d != expected_q + 1:
            raise NonRegular(f"vertex {v} has degree {d}, expected {expected_q + 1}")
    origin = np.empty(2 * len(edges), dtype=np.int64)
    terminus = np.empty(2 * len(edges), dtype=np.int64)
    for i, (u, v) in enumerate(edges):
        origin[2 * i], terminus[2 * i] = u, v
        origin[2 * i + 1], terminus[2 * i + 1] = v, u
    origin.setflags(write=False)
    terminus.setflags(write=False)
    return RegularGraph(n=n, q=expected_q, edges=tuple(edges), origin=origin, terminus=terminus)


def cycle(n: int) -> RegularGraph:
    if n < 3:
        raise InvalidParameter("cycle needs n >= 3")
    return build_graph([(i, (i + 1) % n) for i in range(n)], 1)


def complete(n: int) -> RegularGraph:
    if n < 3:
        raise InvalidParameter("complete needs n >= 3 (branching number q = n - 2 >= 1)")
    return build_graph(list(combinations(range(n), 2)), n - 2)


def complete_bipartite(k: int) -> RegularGraph:
    if k < 2:
        raise InvalidParameter("complete_bipartite needs k >= 2")
    return build_graph([(i, k + j) for i in range(k) for j in range(k)], k - 1)


def petersen() -> RegularGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return build_graph(outer + inner + spokes, 2)


def random_regular(n: int, d: int, seed: int) -> RegularGraph:
    """Configuration-model d-regular multigraph; loops and multi-edges kept."""
    if d < 2 or n < 1:
        raise InvalidParameter("random_regular needs d >= 2 and n >= 1")
    if (n * d) % 2:
        raise InvalidParameter("n * d must be even")
    stubs = [v for v in range(n) for _ in range(d)]
    random.Random(seed).shuffle(stubs)
    edges = [(stubs[2 * i], stubs[2 * i + 1]) for i in range(len(stubs) // 2)]
    return build_graph(edges, d - 1)


def torus(n: int, D: int) -> RegularGraph:
    """Discrete torus (Z/n)^D with +-1 steps per axis; n^D vertices, degree 2D.

    Vertices are row-major multi-indices, so torus(n, D) equals the D-fold
    Cartesian product of cycle(n) entry for entry.
    """
    if n < 3:
        raise InvalidParameter("torus needs n >= 3 so the two axis neighbours differ")
    if D < 1:
        raise InvalidParameter("torus needs D >= 1")
    strides = [n ** (D - 1 - k) for k in range(D)]
    edges = []
    for coords in product(range(n), repeat=D):
        v = sum(c * s for c, s in zip(coords, strides))
        for k in range(D):
            stepped = list(coords)
            stepped[k] = (stepped[k] + 1) % n
            edges.append((v, sum(c * s for c, s in zip(stepped, strides))))
    return build_graph(edges, 2 * D - 1)


_FAMILIES = {
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "petersen": petersen,
    "random_regular": random_regular,
    "torus": torus,
}


def generate(family: str, *args, seed: int | None = None) -> RegularGraph:
    """Dispatch on a family name: cycle, complete, complete_bipartite,
    petersen, random_regular, torus."""
    try:
        fn = _FAMILIES[family]
    except KeyError:
        raise InvalidParameter(
            f"unknown family {family!r}; choose from {sorted(_FAMILIES)}"
        ) from None
    if family == "random_regular":
        if seed is None and len(args) < 3:
            raise InvalidParameter("random_regular requires a seed")
        return fn(*args) if len(args) >= 3 else fn(*args, seed)
    return fn(*args)


def cartesian_product(g1: RegularGraph, g2: RegularGraph) -> RegularGraph:
    """Cartesian product with row-major vertex pairing (i, j) -> i * n2 + j.

    The adjacency matrix equals A1 (x) I + I (x) A2 bit-exactly under this
    ordering; the degree is (q1 + 1) + (q2 + 1).
    """
    n2 = g2.n
    edges = []
    for u, v in g1.edges:
        edges.extend((u * n2 + j, v * n2 + j) for j in range(n2))
    for u, v in g2.edges:
        edges.extend((i * n2 + u, i * n2 + v) for i in range(g1.n))
    return build_graph(edges, g1.q + g2.q + 1)


def adjacency_matrix(g: RegularGraph) -> np.ndarray:
    """Symmetric integer adjacency matrix; a loop adds 2 to its diagonal entry."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        if u == v:
            a[u, u] += 2
        else:
            a[u, v] += 1
            a[v, u] += 1
    return a


def is_bipartite(g: RegularGraph) -> bool:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for e in g.out_edges(u):
                w = int(g.terminus[e])
                if w == u:
                    return False  # loop
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


# ---------------------------------------------------------------------------
# Edge-list text format: first line "n q", then one "u v" pair per line.


def read_edge_list(text: str) -> RegularGraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise EmptyGraph("no content in edge list")
    try:
        n, q = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise InvalidParameter("header must be 'n q'") from None
    edges = []
    for ln in lines[1:]:
        try:
            u, v = (int(tok) for tok in ln.split())
        except ValueError:
            raise InvalidParameter(f"bad edge line {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidParameter(f"vertex out of range in {ln!r}")
        edges.append((u, v))
    g = build_graph(edges, q)
    if g.n != n:
        raise NonRegular(f"header says {n} vertices but edges reach only {g.n}")
    return g


def write_edge_list(g: RegularGraph) -> str:
    lines = [f"{g.n} {g.q}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"
