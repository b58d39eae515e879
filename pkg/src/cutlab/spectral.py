"""Spectra, exact perturbation identities, and eigenvalue MaxCut bounds.

Exact polynomial facts are checked with integer arithmetic; the rational
identities relating edge/node deletion to the spectral decomposition are
verified by multipoint evaluation at real sample points kept away from the
eigenvalues, rather than by symbolic algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charpoly import (
    CharPoly,
    char_poly,
    poly_compose_neg_shift,
    poly_divmod_exact,
    poly_mul,
)
from .errors import ConvergenceFailure, EdgeNotPresent, NodeOutOfRange, NotATree, NotRegular
from .graphs import DeleteEdge, Graph, Perturbation, Shadow, apply_perturbation, delete_nodes
from .maxcut import brute_force_maxcut

CLUSTER_TOL = 1e-8
IDENTITY_TOL = 1e-6
SAMPLE_MIN_DIST = 1e-2
RADIUS_TOL = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in descending order (with multiplicity), plus one
    orthogonal projector per distinct eigenvalue."""

    eigenvalues: np.ndarray
    distinct: np.ndarray
    projectors: list[np.ndarray]

    @property
    def num_distinct(self) -> int:
        return len(self.distinct)


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    points: tuple[float, ...]
    max_rel_discrepancy: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class RadiusReport:
    kind: str
    radius_base: float
    radius_pert: float
    delta: float
    equal: bool


@dataclass(frozen=True)
class BoundsReport:
    literal: float
    sound: float
    maxcut: int
    literal_violated: bool


def eigen_decomposition(g: Graph, cluster_tol: float = CLUSTER_TOL) -> SpectralDecomposition:
    """Symmetric eigensolve of the adjacency matrix.  Eigenvalues closer than
    cluster_tol are grouped into one eigenspace before projectors are built."""
    if g.n < 1:
        raise ValueError("n must be >= 1")
    a = g.adjacency_matrix()
    try:
        vals, vecs = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.argsort(vals)[::-1]
    vals = vals[order]
    vecs = vecs[:, order]
    distinct: list[float] = []
    projectors: list[np.ndarray] = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[start] - vals[i] > cluster_tol:
            block = vecs[:, start:i]
            projectors.append(block @ block.T)
            distinct.append(float(np.mean(vals[start:i])))
            start = i
    return SpectralDecomposition(vals, np.array(distinct), projectors)


def spectral_radius(g: Graph) -> float:
    dec = eigen_decomposition(g)
    return float(np.max(np.abs(dec.eigenvalues)))


# ---------------------------------------------------------------------------
# Exact perturbation predictions
# ---------------------------------------------------------------------------

def predicted_charpoly_shadow(phi: CharPoly, s: int) -> CharPoly:
    """Char poly after adding s isolated nodes: multiply by lambda^s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return phi.shift(s)


def predicted_charpoly_pendant(g: Graph, u: int) -> CharPoly:
    """Char poly after attaching a new degree-one node at u:
    lambda * phi(g) - phi(g - u), all in the monic convention."""
    if not 0 <= u < g.n:
        raise NodeOutOfRange(f"node {u} out of range")
    phi = char_poly(g)
    phi_minus_u = char_poly(delete_nodes(g, {u}))
    return phi.shift(1) - phi_minus_u


def tree_charpoly(g: Graph, root: int = 0) -> CharPoly:
    """Linear-time exact char poly of a tree by the bottom-up two-polynomial
    recursion: each node u carries (phi of u's subtree, phi of the forest of
    u's child subtrees), with leaves starting at (lambda, 1)."""
    if g.n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= root < g.n:
        raise NodeOutOfRange(f"root {root} out of range")
    if g.num_edges != g.n - 1:
        raise NotATree(f"|E|={g.num_edges} != n-1={g.n - 1}")
    nbr = g.neighbors()
    parent = [-1] * g.n
    order = [root]
    seen = {root}
    for v in order:
        for w in nbr[v]:
            if w not in seen:
                seen.add(w)
                parent[w] = v
                order.append(w)
    if len(order) != g.n:
        raise NotATree("graph is disconnected")
    children: list[list[int]] = [[] for _ in range(g.n)]
    for v in order[1:]:
        children[parent[v]].append(v)

    phi_c: list[tuple[int, ...]] = [()] * g.n
    phi_f: list[tuple[int, ...]] = [()] * g.n
    for v in reversed(order):
        kids = children[v]
        if not kids:
            phi_c[v] = (0, 1)
            phi_f[v] = (1,)
            continue
        forest = [1]
        for c in kids:
            forest = poly_mul(forest, phi_c[c])
        acc = [0] + list(forest)  # lambda * forest
        for i, c in enumerate(kids):
            term = list(phi_f[c])
            for j, other in enumerate(kids):
                if j != i:
                    term = poly_mul(term, phi_c[other])
            for k, t in enumerate(term):
                acc[k] -= t
        phi_f[v] = tuple(forest)
        phi_c[v] = tuple(acc)
    return CharPoly(phi_c[root])


def complement_charpoly(g: Graph) -> CharPoly:
    """Char poly of the complement of an r-regular graph, via the exact
    substitution lambda -> -lambda - 1 followed by an exact linear division.
    A nonzero remainder is an implementation fault and raises."""
    degs = g.degrees()
    if g.n >= 1 and len(set(degs)) != 1:
        raise NotRegular(f"degree sequence {sorted(set(degs))} is not uniform")
    r = degs[0] if degs else 0
    n = g.n
    shifted = poly_compose_neg_shift(char_poly(g).coeffs)
    num = poly_mul(shifted, [r + 1 - n, 1])  # (lambda - n + r + 1)
    if n % 2 == 1:
        num = [-c for c in num]
    quot = poly_divmod_exact(num, [r + 1, 1])  # / (lambda + r + 1)
    return CharPoly(tuple(quot))


# ---------------------------------------------------------------------------
# Rational identity verification by multipoint evaluation
# ---------------------------------------------------------------------------

def _sample_points(g: Graph, dec: SpectralDecomposition) -> list[float]:
    """2n+1 real points in [-n-1, n+1], each at least SAMPLE_MIN_DIST away
    from every eigenvalue.  Deterministic."""
    n = g.n
    want = 2 * n + 1
    grid_size = 40 * want
    while True:
        grid = np.linspace(-n - 1, n + 1, grid_size)
        dist = np.min(np.abs(grid[:, None] - dec.distinct[None, :]), axis=1)
        ok = grid[dist >= SAMPLE_MIN_DIST]
        if len(ok) >= want:
            idx = np.linspace(0, len(ok) - 1, want).round().astype(int)
            return [float(x) for x in ok[idx]]
        grid_size *= 4


def _resolvent_entry(dec: SpectralDecomposition, u: int, v: int, x: float) -> float:
    """Sum over distinct eigenvalues of P_i[u, v] / (x - lambda_i)."""
    return float(
        sum(p[u, v] / (x - lam) for p, lam in zip(dec.projectors, dec.distinct))
    )


def _rel_err(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def verify_deleted_edge_identity(g: Graph, u: int, v: int) -> IdentityReport:
    """Check that the char poly of g minus the edge (u, v) equals
    phi(g) - phi(g-u-v) + 2*phi(g)*sum_i P_i[u,v]/(x - lambda_i)
    at the sample points, in the det(A - lambda*I) sign convention."""
    if u > v:
        u, v = v, u
    if (u, v) not in set(g.edges):
        raise EdgeNotPresent(f"edge ({u}, {v}) not in graph")
    sign = (-1) ** g.n
    phi = char_poly(g)
    phi_del = char_poly(apply_perturbation(g, DeleteEdge(edge=(u, v))))
    phi_uv = char_poly(delete_nodes(g, {u, v}))
    dec = eigen_decomposition(g)
    points = _sample_points(g, dec)
    worst = 0.0
    for x in points:
        lhs = sign * float(phi_del.eval_at(x))
        base = sign * float(phi.eval_at(x))
        rhs = base - sign * float(phi_uv.eval_at(x)) + 2.0 * base * _resolvent_entry(dec, u, v, x)
        worst = max(worst, _rel_err(lhs, rhs))
    return IdentityReport("deleted-edge", tuple(points), worst, IDENTITY_TOL, worst <= IDENTITY_TOL)


def verify_two_node_deletion_identity(g: Graph, u: int, v: int) -> IdentityReport:
    """Check that the char poly of g with nodes u, v removed equals
    phi(g) * (R_uu * R_vv - R_uv^2) with R the eigenprojector resolvent,
    at the sample points."""
    if u == v:
        raise NodeOutOfRange("u and v must differ")
    for w in (u, v):
        if not 0 <= w < g.n:
            raise NodeOutOfRange(f"node {w} out of range")
    sign = (-1) ** g.n
    phi = char_poly(g)
    phi_uv = char_poly(delete_nodes(g, {u, v}))
    dec = eigen_decomposition(g)
    points = _sample_points(g, dec)
    worst = 0.0
    for x in points:
        lhs = sign * float(phi_uv.eval_at(x))
        ruu = _resolvent_entry(dec, u, u, x)
        rvv = _resolvent_entry(dec, v, v, x)
        ruv = _resolvent_entry(dec, u, v, x)
        rhs = sign * float(phi.eval_at(x)) * (ruu * rvv - ruv * ruv)
        worst = max(worst, _rel_err(lhs, rhs))
    return IdentityReport("two-node-deletion", tuple(points), worst, IDENTITY_TOL, worst <= IDENTITY_TOL)


# ---------------------------------------------------------------------------
# Radius preservation and MaxCut bounds
# ---------------------------------------------------------------------------

def check_radius_preservation(g: Graph, p: Perturbation) -> RadiusReport:
    """Spectral radius before/after a perturbation.  Equality is a hard
    invariant for shadow nodes; for edge perturbations the report is
    informational."""
    gp = apply_perturbation(g, p)
    r0 = spectral_radius(g)
    r1 = spectral_radius(gp)
    delta = abs(r1 - r0)
    equal = delta <= RADIUS_TOL
    if isinstance(p, Shadow) and not equal:
        raise AssertionError(f"shadow nodes changed the spectral radius by {delta}")
    return RadiusReport(type(p).__name__, r0, r1, delta, equal)


def maxcut_upper_bounds(g: Graph) -> BoundsReport:
    """Two eigenvalue bounds on the MaxCut value.

    literal: 1/2 + rho/2 as quoted; it is not sound for dense graphs and a
    violation flag is set when the true optimum exceeds it.
    sound:   |E|/2 - n*lambda_min/4, which is a valid upper bound.
    """
    if g.n < 1:
        raise ValueError("n must be >= 1")
    dec = eigen_decomposition(g)
    rho = float(np.max(np.abs(dec.eigenvalues)))
    lam_min = float(dec.eigenvalues[-1])
    literal = 0.5 + 0.5 * rho
    sound = g.num_edges / 2.0 - g.n * lam_min / 4.0
    opt = brute_force_maxcut(g).value
    return BoundsReport(literal, sound, opt, opt > literal + 1e-12)
