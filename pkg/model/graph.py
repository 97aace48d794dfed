"""
Graph model for spectral quantum-walk computations.

Undirected simple graphs stored as sorted adjacency tuples, the named generators
used throughout the test corpus (path, kite, six-vertex tree, random), and the
breadth-first distance partition (stratification) from a reference vertex.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from model.errors import IndexOutOfRange, InvalidSize, OutOfRange, SelfLoop


@dataclass(frozen=True)
class Graph:
    """
    Undirected simple graph on vertices 0..n-1.

    Attributes:
        n: Vertex count
        adjacency: adjacency[u] is the sorted tuple of neighbours of u
        labels: Optional human-readable vertex labels (kite coordinates, tree numbering).
            Labels never take part in equality.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    labels: Optional[Tuple] = field(default=None, compare=False, repr=False)

    @cached_property
    def matrix(self) -> sp.csr_matrix:
        """Sparse adjacency matrix A (CSR, float64)."""
        rows = [u for u, nbrs in enumerate(self.adjacency) for _ in nbrs]
        cols = [v for nbrs in self.adjacency for v in nbrs]
        data = np.ones(len(rows), dtype=float)
        return sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def apply(self, vector: np.ndarray) -> np.ndarray:
        """Return A @ vector without forming a dense matrix."""
        return self.matrix @ vector

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self.adjacency]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    @property
    def one_norm(self) -> float:
        """Max column sum of A, i.e. the maximum degree."""
        return float(max(self.degrees(), default=0))

    def label(self, u: int):
        return self.labels[u] if self.labels is not None else u

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return stratify(self, 0).component_size == self.n


@dataclass(frozen=True)
class Stratification:
    """
    Distance partition Gamma_k(o) of the connected component of a reference vertex.

    Attributes:
        reference: The reference vertex o
        strata: strata[k] is the sorted tuple of vertices at distance k from o
        n: Vertex count of the whole graph
        warnings: Machine-readable flags, e.g. "proper_component"
    """

    reference: int
    strata: Tuple[Tuple[int, ...], ...]
    n: int
    warnings: Tuple[str, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.strata)

    @property
    def sizes(self) -> List[int]:
        return [len(s) for s in self.strata]

    @property
    def component(self) -> List[int]:
        return sorted(v for stratum in self.strata for v in stratum)

    @property
    def component_size(self) -> int:
        return sum(self.sizes)

    @property
    def is_proper(self) -> bool:
        """True when the reference component misses some vertices of the graph."""
        return self.component_size < self.n

    def level(self) -> Dict[int, int]:
        """Map vertex -> stratum index for every vertex in the component."""
        return {v: k for k, stratum in enumerate(self.strata) for v in stratum}


def build_graph(n: int, edges: Iterable[Sequence[int]],
                labels: Optional[Sequence] = None) -> Graph:
    """
    Build a Graph from a vertex count and a list of vertex pairs.

    Duplicate pairs (in either orientation) collapse to one edge.

    Raises:
        InvalidSize: n is negative
        IndexOutOfRange: a vertex index is outside [0, n)
        SelfLoop: a pair (u, u)
    """
    if n < 0:
        raise InvalidSize(f"vertex count must be non-negative, got {n}")

    neighbours: List[set] = [set() for _ in range(n)]
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        for w in (u, v):
            if w < 0 or w >= n:
                raise IndexOutOfRange(f"vertex {w} not in [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        neighbours[u].add(v)
        neighbours[v].add(u)

    adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbours)
    return Graph(n=n, adjacency=adjacency,
                 labels=tuple(labels) if labels is not None else None)


def gen_path(n: int) -> Graph:
    """Open path 0 - 1 - ... - (n-1)."""
    if n < 1:
        raise InvalidSize(f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_kite(k: int, n: int) -> Graph:
    """
    Kite graph K(k, n) embedded in Z^k.

    Vertices: the origin, axis vertices l*e_i for i = 1..k and l = 1..n, and a
    diagonal vertex (l, ..., l) for each odd l <= n. The origin joins the l = 1
    axis vertices and each axis is a chain. The diagonal vertex (l, ..., l) joins
    every axis vertex at level l and, when l + 2 <= n, at level l + 2; with those
    edges the Lanczos vectors from the origin are the generalized stratum vectors
    and beta_1^2 = k, beta_i^2 = k + 1 for i >= 2.

    Indexing: origin = 0, then axis vertices in (l, i) lexicographic order,
    then diagonal vertices by increasing l.
    """
    if k < 2 or n < 1:
        raise InvalidSize(f"kite needs k >= 2 and n >= 1, got k={k}, n={n}")

    def axis(l: int, i: int) -> int:
        return 1 + (l - 1) * k + (i - 1)

    odd_levels = list(range(1, n + 1, 2))
    diagonal = {l: 1 + k * n + j for j, l in enumerate(odd_levels)}
    size = 1 + k * n + len(odd_levels)

    edges = [(0, axis(1, i)) for i in range(1, k + 1)]
    for l in range(1, n):
        edges.extend((axis(l, i), axis(l + 1, i)) for i in range(1, k + 1))
    for l in odd_levels:
        for level in (l, l + 2):
            if level <= n:
                edges.extend((axis(level, i), diagonal[l]) for i in range(1, k + 1))

    labels: List[Tuple[int, ...]] = [(0,) * k]
    for l in range(1, n + 1):
        for i in range(1, k + 1):
            coord = [0] * k
            coord[i - 1] = l
            labels.append(tuple(coord))
    labels.extend((l,) * k for l in odd_levels)

    return build_graph(size, edges, labels=labels)


def kite_vertex(k: int, n: int, coord: Sequence[int]) -> int:
    """Index of a kite vertex given its lattice coordinate."""
    coord = tuple(coord)
    if len(coord) != k:
        raise IndexOutOfRange(f"coordinate {coord} has wrong dimension for k={k}")
    if all(c == 0 for c in coord):
        return 0
    nonzero = [(i, c) for i, c in enumerate(coord) if c != 0]
    if len(nonzero) == 1:
        i, l = nonzero[0]
        if 1 <= l <= n:
            return 1 + (l - 1) * k + i
    elif len(set(coord)) == 1 and coord[0] % 2 == 1 and coord[0] <= n:
        return 1 + k * n + (coord[0] - 1) // 2
    raise IndexOutOfRange(f"{coord} is not a vertex of K({k}, {n})")


def gen_tree_fig4() -> Graph:
    """
    Six-vertex tree used for the non-GQD vertex-amplitude example.

    Vertex j in 1-based numbering is index j - 1: vertex 1 joins 2, 3, 4; 3 joins 5; 4 joins 6.
    """
    return build_graph(6, [(0, 1), (0, 2), (0, 3), (2, 4), (3, 5)],
                       labels=[1, 2, 3, 4, 5, 6])


def gen_random(n: int, p: float, seed: int, max_tries: int = 1000) -> Graph:
    """
    Erdos-Renyi G(n, p), redrawn until connected.

    The same (n, p, seed) always yields the same graph.
    """
    if n < 1:
        raise InvalidSize(f"random graph needs n >= 1, got {n}")
    if not 0.0 < p <= 1.0:
        raise OutOfRange(f"edge probability must be in (0, 1], got {p}")

    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(max_tries):
        keep = rng.random(iu.size) < p
        graph = build_graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))
        if graph.is_connected():
            return graph
    raise OutOfRange(f"no connected G({n}, {p}) drawn in {max_tries} tries (seed {seed})")


GENERATORS = {
    "path": lambda params: gen_path(params["n"]),
    "kite": lambda params: gen_kite(params["k"], params["n"]),
    "tree-fig4": lambda params: gen_tree_fig4(),
    "random": lambda params: gen_random(params["n"], params.get("p", 0.2),
                                        params.get("seed", 0),
                                        params.get("max_tries", 1000)),
}


def generate(name: str, **params) -> Graph:
    """Dispatch to a named generator."""
    if name not in GENERATORS:
        raise InvalidSize(f"unknown generator '{name}' (choose from {', '.join(GENERATORS)})")
    missing = {"path": ["n"], "kite": ["k", "n"], "random": ["n"]}.get(name, [])
    for key in missing:
        if params.get(key) is None:
            raise InvalidSize(f"generator '{name}' needs --{key}")
    return GENERATORS[name](params)


def stratify(g: Graph, o: int) -> Stratification:
    """
    Breadth-first distance partition from vertex o.

    Only the connected component of o is covered; when that component is
    proper the result carries the "proper_component" warning.
    """
    if o < 0 or o >= g.n:
        raise IndexOutOfRange(f"reference vertex {o} not in [0, {g.n})")

    distance = {o: 0}
    queue = deque([o])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in distance:
                distance[v] = distance[u] + 1
                queue.append(v)

    depth = max(distance.values()) + 1
    strata: List[List[int]] = [[] for _ in range(depth)]
    for v, d in distance.items():
        strata[d].append(v)

    warnings = ("proper_component",) if len(distance) < g.n else ()
    return Stratification(reference=o,
                          strata=tuple(tuple(sorted(s)) for s in strata),
                          n=g.n,
                          warnings=warnings)
