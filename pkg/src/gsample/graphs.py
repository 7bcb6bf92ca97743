"""Undirected weighted graphs, their Laplacians, and random graph models.

Graphs are stored densely; all experiments run at a few thousand nodes at
most, where dense storage is simpler and faster than sparse bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .rng import rng_from

# Generators resample a disconnected draw with an incremented seed this
# many times before giving up.
MAX_CONNECT_ATTEMPTS = 50


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph on nodes 0..n-1.

    The adjacency matrix must be exactly symmetric with nonnegative
    weights and a zero diagonal.  `meta` records generator provenance
    (model tag, seed actually used).
    """

    n: int
    adjacency: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=float)
        if self.n < 2:
            raise ValueError("graph needs at least 2 nodes")
        if adj.shape != (self.n, self.n):
            raise ValueError(f"adjacency shape {adj.shape} != ({self.n}, {self.n})")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be exactly symmetric")
        if np.any(adj < 0):
            raise ValueError("edge weights must be nonnegative")
        if np.any(np.diag(adj) != 0):
            raise ValueError("self-loops are not allowed")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.adjacency)) )


@dataclass(frozen=True)
class Laplacian:
    """Combinatorial Laplacian L = D - A with its degree vector."""

    matrix: np.ndarray
    degree: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        d = np.asarray(self.degree, dtype=float)
        d.setflags(write=False)
        object.__setattr__(self, "degree", d)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def build_laplacian(graph: Graph) -> Laplacian:
    """Return L = D - A for a valid Graph.

    Row sums of L are zero to rounding and L is positive semidefinite;
    both follow from symmetry and nonnegative weights, which the Graph
    constructor enforces.
    """
    adj = graph.adjacency
    deg = adj.sum(axis=1)
    lap = np.diag(deg) - adj
    return Laplacian(lap, deg)


def _is_connected(adjacency: np.ndarray) -> bool:
    ncomp, _ = connected_components((adjacency > 0).astype(np.int8), directed=False)
    return ncomp == 1


def gen_sensor(n: int, k_nn: int = 6, seed: int = 0) -> Graph:
    """Random geometric sensor graph on the unit square.

    Nodes are placed uniformly at random; each node is linked to its
    k_nn nearest neighbours (union symmetrization) with Gaussian-kernel
    weights w_ij = exp(-d_ij^2 / (2 theta^2)), where theta is the mean
    distance to the k_nn-th neighbour.  Disconnected draws are resampled
    with an incremented seed.
    """
    if n < k_nn + 1:
        raise ValueError("need n >= k_nn + 1")
    for attempt in range(MAX_CONNECT_ATTEMPTS):
        used_seed = seed + attempt
        rng = rng_from(used_seed)
        pos = rng.random((n, 2))
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((diff ** 2).sum(axis=-1))
        order = np.argsort(dist, axis=1, kind="stable")  # column 0 is the node itself
        theta = dist[np.arange(n), order[:, k_nn]].mean()
        weights = np.exp(-(dist ** 2) / (2.0 * theta ** 2))
        adj = np.zeros((n, n))
        rows = np.repeat(np.arange(n), k_nn)
        cols = order[:, 1 : k_nn + 1].ravel()
        adj[rows, cols] = weights[rows, cols]
        adj = np.maximum(adj, adj.T)
        if _is_connected(adj):
            return Graph(n, adj, meta={"model": "sensor", "seed": used_seed,
                                       "k_nn": k_nn})
    raise RuntimeError(
        f"no connected sensor graph in {MAX_CONNECT_ATTEMPTS} attempts (n={n})")


def gen_er(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi graph: each pair linked independently with probability p."""
    if not 0 < p <= 1:
        raise ValueError("edge probability must be in (0, 1]")
    if n < 2:
        raise ValueError("graph needs at least 2 nodes")
    for attempt in range(MAX_CONNECT_ATTEMPTS):
        used_seed = seed + attempt
        rng = rng_from(used_seed)
        draws = rng.random((n, n))
        upper = np.triu(draws < p, k=1)
        adj = (upper | upper.T).astype(float)
        if _is_connected(adj):
            return Graph(n, adj, meta={"model": "er", "seed": used_seed, "p": p})
    raise RuntimeError(
        f"no connected ER graph in {MAX_CONNECT_ATTEMPTS} attempts (n={n}, p={p})")


def gen_community(n: int, seed: int = 0, p_in: float = 0.3,
                  p_out: float | None = None) -> Graph:
    """Stochastic block model with floor(sqrt(n)/2) communities.

    Community sizes are random with a minimum of 2 nodes each; edges are
    unit weight with probability p_in inside a community and p_out = 2/n
    across communities.
    """
    if n < 8:
        raise ValueError("community model needs n >= 8")
    c = int(np.floor(np.sqrt(n) / 2.0))
    c = max(c, 1)
    if p_out is None:
        p_out = 2.0 / n
    for attempt in range(MAX_CONNECT_ATTEMPTS):
        used_seed = seed + attempt
        rng = rng_from(used_seed)
        sizes = 2 + rng.multinomial(n - 2 * c, np.full(c, 1.0 / c))
        labels = np.repeat(np.arange(c), sizes)
        same = labels[:, None] == labels[None, :]
        prob = np.where(same, p_in, p_out)
        draws = rng.random((n, n))
        upper = np.triu(draws < prob, k=1)
        adj = (upper | upper.T).astype(float)
        if _is_connected(adj):
            return Graph(n, adj, meta={"model": "community", "seed": used_seed,
                                       "communities": int(c),
                                       "sizes": tuple(int(s) for s in sizes)})
    raise RuntimeError(
        f"no connected community graph in {MAX_CONNECT_ATTEMPTS} attempts (n={n})")


def save_graph(graph: Graph, path) -> None:
    """Write a graph as a weighted edge list, one `i j w` triple per line.

    Indices are 0-based with i < j; weights use round-trip float repr so
    load_graph reproduces the adjacency bit for bit.  Lines beginning
    with `#` are comments.
    """
    ii, jj = np.nonzero(np.triu(graph.adjacency, k=1))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, j in zip(ii.tolist(), jj.tolist()):
            fh.write(f"{i} {j} {float(graph.adjacency[i, j])!r}\n")


def load_graph(path, n: int | None = None) -> Graph:
    """Read a weighted edge list written by save_graph.

    If `n` is not given, the node count is inferred as max index + 1
    (exact for graphs without isolated nodes, in particular everything
    the generators produce).
    """
    edges = []
    seen = set()
    max_idx = -1
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'i j w', got {line!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
                w = float(parts[2])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: unparsable edge {line!r}") from exc
            if i == j:
                raise ValueError(f"{path}:{lineno}: self-loop on node {i}")
            if i < 0 or j < 0 or i >= j:
                raise ValueError(f"{path}:{lineno}: indices must satisfy 0 <= i < j")
            if w < 0:
                raise ValueError(f"{path}:{lineno}: negative weight {w}")
            if n is not None and j >= n:
                raise ValueError(f"{path}:{lineno}: node index {j} out of range for n={n}")
            if (i, j) in seen:
                raise ValueError(f"{path}:{lineno}: duplicate edge ({i}, {j})")
            seen.add((i, j))
            edges.append((i, j, w))
            max_idx = max(max_idx, j)
    size = n if n is not None else max_idx + 1
    if size < 2:
        raise ValueError(f"{path}: edge list defines fewer than 2 nodes")
    adj = np.zeros((size, size))
    for i, j, w in edges:
        adj[i, j] = w
        adj[j, i] = w
    return Graph(size, adj, meta={"model": "file", "path": str(path)})
