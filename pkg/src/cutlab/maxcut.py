"""Exact MaxCut by exhaustive bipartition search, plus perturbation shifts.

The objective counts edges whose endpoints land on opposite sides of the
bipartition.  A second reading of the raw binary objective (an edge pays 1
unless both endpoints are 1) is exposed behind the `semantics` flag for
comparison; it is not a cut count and nothing downstream uses it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, TooLarge
from .graphs import DeleteEdge, Graph, PendantEdge, Perturbation, Shadow, apply_perturbation

MAX_BRUTE_FORCE_NODES = 24


@dataclass(frozen=True)
class CutSolution:
    value: int
    witness: tuple[int, ...]
    degenerate_count: int


@dataclass(frozen=True)
class ShiftReport:
    kind: str
    maxcut_base: int
    maxcut_pert: int
    shift: int


def cut_value(g: Graph, z, semantics: str = "cut") -> int:
    """Objective value of the assignment z in {0,1}^n.

    semantics="cut":  each edge contributes 1 when its endpoints differ.
    semantics="binary-product":  each edge contributes 1 - z_u * z_v.
    """
    if len(z) != g.n:
        raise LengthMismatch(f"assignment length {len(z)} != n={g.n}")
    if semantics == "cut":
        return sum(1 for u, v in g.edges if z[u] != z[v])
    if semantics == "binary-product":
        return sum(1 - z[u] * z[v] for u, v in g.edges)
    raise ValueError(f"unknown semantics {semantics!r}")


def brute_force_maxcut(g: Graph) -> CutSolution:
    """Exhaustive maximum cut with z_0 fixed to 0 (quotienting the global
    flip).  Ties break to the lexicographically smallest witness; the number
    of optimal bipartitions is counted with z and its complement as one."""
    if g.n > MAX_BRUTE_FORCE_NODES:
        raise TooLarge(f"n={g.n} exceeds brute-force cap {MAX_BRUTE_FORCE_NODES}")
    if g.n == 0:
        return CutSolution(0, (), 1)
    nbits = g.n - 1
    masks = np.arange(1 << nbits, dtype=np.int64)
    cuts = np.zeros(1 << nbits, dtype=np.int32)
    for u, v in g.edges:
        bu = (masks >> (u - 1)) & 1 if u > 0 else 0
        bv = (masks >> (v - 1)) & 1
        cuts += np.asarray(bu ^ bv, dtype=np.int32)
    best = int(cuts.max())
    optima = np.flatnonzero(cuts == best)
    # lexicographic order on [z_1, ..., z_{n-1}] is numeric order of the
    # bit-reversed mask
    rev = np.zeros_like(optima)
    for i in range(nbits):
        rev = (rev << 1) | ((optima >> i) & 1)
    witness_mask = int(optima[int(np.argmin(rev))])
    witness = (0,) + tuple((witness_mask >> i) & 1 for i in range(nbits))
    return CutSolution(best, witness, len(optima))


def perturbation_shift(g: Graph, p: Perturbation) -> ShiftReport:
    """MaxCut values before/after a perturbation.  Shadow nodes never move
    the optimum, a pendant edge always gains exactly 1, and deleting an edge
    loses at most 1; violations indicate an implementation fault."""
    gp = apply_perturbation(g, p)
    base = brute_force_maxcut(g)
    pert = brute_force_maxcut(gp)
    shift = pert.value - base.value
    if isinstance(p, Shadow) and shift != 0:
        raise AssertionError(f"shadow perturbation moved the MaxCut value by {shift}")
    if isinstance(p, PendantEdge) and shift != 1:
        raise AssertionError(f"pendant edge shifted MaxCut by {shift}, expected +1")
    if isinstance(p, DeleteEdge) and shift not in (-1, 0):
        raise AssertionError(f"edge deletion shifted MaxCut by {shift}")
    kind = type(p).__name__
    return ShiftReport(kind, base.value, pert.value, shift)
