"""Graph representation, seeded family generators, and perturbation operators.

Graphs are simple and undirected, with nodes labeled 0..n-1 and edges stored
as a sorted tuple of (u, v) pairs with u < v.  Values are immutable after
construction and safe to share between threads.

All randomized construction is driven by numpy's PCG64 generator, so a given
seed reproduces the same graph on any platform.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    EdgeNotPresent,
    EmptyEdgeSet,
    InfeasibleDegreeSequence,
    NodeOutOfRange,
)

Edge = tuple[int, int]

MAX_REGULAR_RESTARTS = 10_000


@dataclass(frozen=True)
class GraphMeta:
    """Provenance carried alongside a graph: family tag, generation
    parameters, seed, and a description of any perturbation applied."""

    family: str = "custom"
    params: dict = field(default_factory=dict)
    seed: int | None = None
    perturbation: str | None = None


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    meta: GraphMeta = field(default_factory=GraphMeta, compare=False)

    def validate(self) -> None:
        """Raise ValueError unless the invariants hold: endpoints in range,
        u < v, sorted, duplicate-free."""
        if self.n < 0:
            raise ValueError("negative node count")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
        if list(self.edges) != sorted(set(self.edges)):
            raise ValueError("edge list must be sorted and duplicate-free")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in set(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[set[int]]:
        nbr: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        return nbr

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def adjacency_rows(self) -> list[list[int]]:
        """Adjacency matrix as nested Python-int lists (for exact arithmetic)."""
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = 1
            a[v][u] = 1
        return a

    def isolated_nodes(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 0]

    def label(self) -> str:
        """Short human/CSV identifier derived from the metadata."""
        base = f"{self.meta.family}-n{self.meta.params.get('n', self.n)}"
        if self.meta.perturbation:
            base += f"+{self.meta.perturbation}"
        return base

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "edges": [[u, v] for u, v in self.edges],
            "meta": {
                "family": self.meta.family,
                "params": self.meta.params,
                "seed": self.meta.seed,
                "perturbation": self.meta.perturbation,
            },
        }
        return json.dumps(payload)


def graph_from_json(text: str) -> Graph:
    payload = json.loads(text)
    meta = payload.get("meta", {})
    g = Graph(
        n=int(payload["n"]),
        edges=tuple(sorted((int(u), int(v)) for u, v in payload["edges"])),
        meta=GraphMeta(
            family=meta.get("family", "custom"),
            params=meta.get("params", {}),
            seed=meta.get("seed"),
            perturbation=meta.get("perturbation"),
        ),
    )
    g.validate()
    return g


def _mk(n: int, edges, meta: GraphMeta) -> Graph:
    g = Graph(n=n, edges=tuple(sorted(set(map(tuple, edges)))), meta=meta)
    g.validate()
    return g


# ---------------------------------------------------------------------------
# Family generators
# ---------------------------------------------------------------------------

def gen_complete(n: int) -> Graph:
    """Complete graph K_n.  K_0 is the null graph, K_1 a single node."""
    if n < 0:
        raise ValueError("n must be >= 0")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return _mk(n, edges, GraphMeta("complete", {"n": n}))


def gen_erdos_renyi(n: int, q: float, seed: int) -> Graph:
    """Independent edges with probability q; deterministic per (n, q, seed)."""
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    rng = np.random.default_rng(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < q:
                edges.append((u, v))
    return _mk(n, edges, GraphMeta("erdos_renyi", {"n": n, "q": q}, seed=seed))


def gen_full_binary_tree(h: int) -> Graph:
    """Rooted full binary tree of height h, 2^(h+1)-1 nodes in level order."""
    if h < 0:
        raise ValueError("height must be >= 0")
    return replace(
        gen_full_rary_tree(2, 2 ** (h + 1) - 1),
        meta=GraphMeta("binary_tree", {"h": h, "n": 2 ** (h + 1) - 1}),
    )


def gen_full_rary_tree(r: int, n: int) -> Graph:
    """Level-order-filled r-ary tree on n nodes; node i>0 hangs off (i-1)//r."""
    if r < 2:
        raise ValueError("arity must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    edges = [((i - 1) // r, i) for i in range(1, n)]
    return _mk(n, edges, GraphMeta("rary_tree", {"r": r, "n": n}))


def gen_random_regular(d: int, n: int, seed: int) -> Graph:
    """Random d-regular graph by the pairing model with full restart on
    self-loops or duplicate edges."""
    if d >= n or (d * n) % 2 != 0:
        raise InfeasibleDegreeSequence(f"no simple {d}-regular graph on {n} nodes")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(MAX_REGULAR_RESTARTS):
        perm = rng.permutation(stubs)
        edges = set()
        ok = True
        for i in range(0, len(perm), 2):
            u, v = int(perm[i]), int(perm[i + 1])
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return _mk(n, edges, GraphMeta("regular", {"n": n, "d": d}, seed=seed))
    raise RuntimeError(
        f"pairing model failed after {MAX_REGULAR_RESTARTS} restarts (d={d}, n={n})"
    )


# ---------------------------------------------------------------------------
# Perturbations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Shadow:
    """Add s isolated nodes; the edge set is untouched."""

    s: int = 1
    seed: int = 0


@dataclass(frozen=True)
class DeleteEdge:
    """Remove one edge, keeping both endpoints.  With edge=None a uniform
    random edge is chosen under the seed."""

    edge: Edge | None = None
    seed: int = 0


@dataclass(frozen=True)
class PendantEdge:
    """Attach a new degree-one node to u (uniform random u when None)."""

    u: int | None = None
    seed: int = 0


Perturbation = Shadow | DeleteEdge | PendantEdge


def apply_perturbation(g: Graph, p: Perturbation) -> Graph:
    """Return the perturbed copy of g.  New nodes take the next free labels;
    the metadata records the exact random choice made."""
    if isinstance(p, Shadow):
        if p.s < 1:
            raise ValueError("shadow count must be >= 1")
        meta = replace(g.meta, perturbation=f"shadow:{p.s}")
        return Graph(n=g.n + p.s, edges=g.edges, meta=meta)

    if isinstance(p, DeleteEdge):
        if not g.edges:
            raise EmptyEdgeSet("cannot delete an edge from an edgeless graph")
        if p.edge is None:
            rng = np.random.default_rng(p.seed)
            edge = g.edges[int(rng.integers(len(g.edges)))]
        else:
            u, v = p.edge
            edge = (u, v) if u < v else (v, u)
            if not all(0 <= w < g.n for w in edge):
                raise NodeOutOfRange(f"edge {p.edge} out of range")
            if edge not in set(g.edges):
                raise EdgeNotPresent(f"edge {edge} not in graph")
        meta = replace(g.meta, perturbation=f"delete:{edge[0]}-{edge[1]}")
        return Graph(n=g.n, edges=tuple(e for e in g.edges if e != edge), meta=meta)

    if isinstance(p, PendantEdge):
        if p.u is None:
            if g.n == 0:
                raise NodeOutOfRange("cannot attach a pendant edge to the null graph")
            rng = np.random.default_rng(p.seed)
            u = int(rng.integers(g.n))
        else:
            u = p.u
            if not 0 <= u < g.n:
                raise NodeOutOfRange(f"node {u} out of range")
        meta = replace(g.meta, perturbation=f"pendant:{u}")
        return Graph(n=g.n + 1, edges=tuple(sorted(g.edges + ((u, g.n),))), meta=meta)

    raise TypeError(f"unknown perturbation {p!r}")


def enumerate_edge_deletions(g: Graph) -> list[Graph]:
    """One graph per edge of g, each missing exactly that edge."""
    if not g.edges:
        raise EmptyEdgeSet("graph has no edges to delete")
    return [apply_perturbation(g, DeleteEdge(edge=e)) for e in g.edges]


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Apply a node permutation (perm[v] is the new label of v)."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    edges = []
    for u, v in g.edges:
        a, b = perm[u], perm[v]
        edges.append((a, b) if a < b else (b, a))
    return _mk(g.n, edges, replace(g.meta, perturbation="relabeled"))


def complement_graph(g: Graph) -> Graph:
    present = set(g.edges)
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in present
    ]
    return _mk(g.n, edges, replace(g.meta, perturbation="complement"))


def delete_nodes(g: Graph, nodes: set[int]) -> Graph:
    """Remove the given nodes and their incident edges, relabeling the
    remaining nodes to stay contiguous."""
    for v in nodes:
        if not 0 <= v < g.n:
            raise NodeOutOfRange(f"node {v} out of range")
    keep = [v for v in range(g.n) if v not in nodes]
    new_label = {v: i for i, v in enumerate(keep)}
    edges = [
        (new_label[u], new_label[v])
        for u, v in g.edges
        if u not in nodes and v not in nodes
    ]
    return _mk(len(keep), edges, replace(g.meta, perturbation=None))
