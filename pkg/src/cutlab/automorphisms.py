"""Automorphism groups by pruned backtracking, plus closed-form predictors.

The enumerator computes the exact group order through an orbit-stabilizer
chain: node colors are refined by iterated neighborhood signatures (starting
from degree and sorted neighbor degrees), and candidate images are explored
only within color classes.  Orders are exact arbitrary-precision integers.

Closed-form predictors for the perturbed families were frozen only after
the enumeration oracle confirmed each case on explicit instances; see
FINDINGS.md for where the natural case-split readings had to be corrected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .charpoly import char_poly
from .errors import LevelOutOfRange, TooLarge
from .graphs import Graph

DEFAULT_NODE_CAP = 12


@dataclass(frozen=True)
class AutReport:
    order: int
    generators: list[tuple[int, ...]]
    method: str  # "enumerated" | "predicted"
    prediction_rule: str | None = None


@dataclass(frozen=True)
class CospectralReport:
    cospectral: bool
    isomorphic: bool


# ---------------------------------------------------------------------------
# Color refinement
# ---------------------------------------------------------------------------

def _refine_colors(neighbor_lists: list[list[set[int]]]) -> list[list[int]]:
    """Iterated neighborhood-signature refinement, canonicalized jointly
    across all supplied graphs so color ids are comparable between them."""
    colorss = [[len(nb[v]) for v in range(len(nb))] for nb in neighbor_lists]
    while True:
        sigss = [
            [
                (colors[v], tuple(sorted(colors[w] for w in nb[v])))
                for v in range(len(nb))
            ]
            for nb, colors in zip(neighbor_lists, colorss)
        ]
        palette = sorted({sig for sigs in sigss for sig in sigs})
        mapping = {sig: i for i, sig in enumerate(palette)}
        new = [[mapping[sig] for sig in sigs] for sigs in sigss]
        if new == colorss:
            return colorss
        colorss = new


def _search_order(n: int, nbr: list[set[int]], seeds: list[int]) -> list[int]:
    """Node assignment order: seeds first, then greedily the node with the
    most already-placed neighbors (ties to smaller ids)."""
    order = list(seeds)
    placed = set(seeds)
    while len(order) < n:
        best = min(
            (v for v in range(n) if v not in placed),
            key=lambda v: (-sum(1 for w in nbr[v] if w in placed), v),
        )
        order.append(best)
        placed.add(best)
    return order


def _find_bijection(
    nbr1: list[set[int]],
    nbr2: list[set[int]],
    colors1: list[int],
    colors2: list[int],
    forced: dict[int, int],
) -> list[int] | None:
    """Backtracking search for an edge-preserving bijection extending
    `forced`, or None.  Both graphs must have the same node count."""
    n = len(nbr1)
    sigma: list[int | None] = [None] * n
    used = [False] * n
    for v, w in forced.items():
        if colors1[v] != colors2[w] or used[w]:
            return None
        sigma[v] = w
        used[w] = True
    forced_images = {sigma[u] for u in forced}
    for v, w in forced.items():
        # adjacency consistency among the forced prefix
        for u in nbr1[v]:
            if sigma[u] is not None and sigma[u] not in nbr2[w]:
                return None
        if sum(1 for x in nbr2[w] if x in forced_images) != sum(
            1 for u in nbr1[v] if u in forced
        ):
            return None

    order = _search_order(n, nbr1, list(forced))
    start = len(forced)

    def backtrack(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        placed_nbr_images = [sigma[u] for u in nbr1[v] if sigma[u] is not None]
        for w in range(n):
            if used[w] or colors2[w] != colors1[v]:
                continue
            if any(img not in nbr2[w] for img in placed_nbr_images):
                continue
            if sum(1 for x in nbr2[w] if used[x]) != len(placed_nbr_images):
                continue
            sigma[v] = w
            used[w] = True
            if backtrack(idx + 1):
                return True
            sigma[v] = None
            used[w] = False
        return False

    if backtrack(start):
        return [int(x) for x in sigma]  # type: ignore[arg-type]
    return None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def aut_order(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> AutReport:
    """Exact |Aut(g)| and a generating set.

    The order is the product of orbit sizes along the point stabilizer chain
    0, 1, ..., n-1; the transversal permutations found along the way form a
    generating set.  Every generator is re-checked against the edge set
    before the report is returned.
    """
    if g.n > node_cap:
        raise TooLarge(f"n={g.n} exceeds enumeration cap {node_cap}")
    if g.n <= 1:
        return AutReport(1, [], "enumerated")
    nbr = g.neighbors()
    colors = _refine_colors([nbr])[0]
    order = 1
    generators: list[tuple[int, ...]] = []
    forced: dict[int, int] = {}
    for b in range(g.n):
        orbit = 1
        for w in range(g.n):
            if w == b or colors[w] != colors[b]:
                continue
            sigma = _find_bijection(nbr, nbr, colors, colors, {**forced, b: w})
            if sigma is not None:
                orbit += 1
                generators.append(tuple(sigma))
        order *= orbit
        forced[b] = b
    edge_set = set(g.edges)
    for sig in generators:
        mapped = {tuple(sorted((sig[u], sig[v]))) for u, v in g.edges}
        if mapped != edge_set:
            raise AssertionError("search returned a non-automorphism")
    return AutReport(order, generators, "enumerated")


def is_isomorphic(g1: Graph, g2: Graph, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """Exact isomorphism test by color-pruned backtracking."""
    if max(g1.n, g2.n) > node_cap:
        raise TooLarge(f"n exceeds isomorphism cap {node_cap}")
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    nbr1, nbr2 = g1.neighbors(), g2.neighbors()
    colors1, colors2 = _refine_colors([nbr1, nbr2])
    if sorted(colors1) != sorted(colors2):
        return False
    return _find_bijection(nbr1, nbr2, colors1, colors2, {}) is not None


def cospectral_nonisomorphic_check(
    g1: Graph, g2: Graph, node_cap: int = DEFAULT_NODE_CAP
) -> CospectralReport:
    """Exact char-poly comparison paired with a brute-force isomorphism
    decision, to exhibit cospectral non-isomorphic pairs."""
    if g1.n < 1 or g2.n < 1:
        raise ValueError("both graphs must be nonempty")
    cosp = char_poly(g1).coeffs == char_poly(g2).coeffs
    return CospectralReport(cosp, is_isomorphic(g1, g2, node_cap))


# ---------------------------------------------------------------------------
# Closed-form predictors
# ---------------------------------------------------------------------------

def predict_shadow_order(
    base_order: int, s: int, base_has_isolated_nodes: bool = False
) -> int | None:
    """s! times the base order.  Not applicable (None) when the base already
    has isolated nodes: the new nodes merge with them into one larger
    interchangeable block and the product formula undercounts."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if base_has_isolated_nodes:
        return None
    return math.factorial(s) * base_order


def predict_tree_order(h: int) -> int:
    """|Aut| of the full binary tree of height h >= 1: doubling-squaring
    recursion with closed form 2^(2^h - 1)."""
    if h < 1:
        raise ValueError("h must be >= 1")
    return 2 ** (2**h - 1)


def _tree_orders_product(lo: int, hi: int) -> int:
    """Product of full-binary-tree group orders for heights lo..hi."""
    out = 1
    for i in range(lo, hi + 1):
        out *= predict_tree_order(i) if i >= 1 else 1
    return out


def predict_tree_deleted_edge_order(h: int, r: int) -> int:
    """|Aut| after deleting one edge at level r (between depths r-1 and r)
    from the full binary tree of height h.

    The detached branch is the full subtree of height h-r; the enumeration
    oracle fixed the index ranges and the two boundary surprises (h=1, and
    the three-leaf star arising at h=2, r=1)."""
    if h < 1:
        raise ValueError("h must be >= 1")
    if not 1 <= r <= h:
        raise LevelOutOfRange(f"level {r} outside 1..{h}")
    if h == 1:
        return 2
    if r == 1:
        return 12 if h == 2 else predict_tree_order(h - 1) ** 2
    k = h - r
    base = predict_tree_order(k) if k >= 1 else 1
    return base**2 * _tree_orders_product(k + 1, h - 1)


def predict_tree_pendant_order(h: int, r: int) -> int:
    """|Aut| after attaching a new leaf to a depth-r node of the full binary
    tree of height h.  Attaching next to the bottom leaves (r = h-1) leaves
    three interchangeable leaves, hence the factor 6."""
    if h < 1:
        raise ValueError("h must be >= 1")
    if not 1 <= r <= h:
        raise LevelOutOfRange(f"level {r} outside 1..{h}")
    if h == 1:
        return 2
    if r == h:
        return _tree_orders_product(1, h - 1)
    if r == h - 1:
        return 6 * _tree_orders_product(1, h - 1)
    k = h - r
    return predict_tree_order(k) ** 2 * _tree_orders_product(k + 1, h - 1)


def predict_kn_deleted_edge_order(n: int) -> int:
    """|Aut| of the complete graph on n nodes minus one edge: 2 * (n-2)!."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2 * math.factorial(n - 2)


def predict_kn_pendant_order(n: int) -> int:
    """|Aut| of the complete graph on n nodes plus a pendant edge: (n-1)!.

    Only valid for n >= 3; at n = 2 the result is a 3-path whose enumerated
    order is 2, not 1 (see FINDINGS.md)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return math.factorial(n - 1)
