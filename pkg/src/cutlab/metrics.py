"""Symmetry/approximation metrics and the heuristic evaluation report.

A metrics row joins one optimization run with the cell-level aggregates:
mean approximation ratios, their quotient across a perturbation, and the
symmetry indices mixing MaxCut values (or mean ARs) with automorphism-group
orders.  Aggregates use fsum, so they are independent of record order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivisionByZero, EmptyInput, InsufficientData
from .graphs import Graph
from .spectral import BoundsReport, maxcut_upper_bounds


@dataclass
class MetricsRecord:
    graph_id: str
    family: str
    n: int
    perturbation: str
    p: int
    seed: int
    restarts: int
    f_star: float
    maxcut: int
    ar: float
    aut_order_base: int
    aut_order_pert: int
    mu_base: float
    mu_pert: float
    i_prime: float
    i_sym: float
    i_sym_prime: float
    runtime_ms: float = 0.0
    error: str = ""


def mean_ar(ars) -> tuple[float, float]:
    """Mean and population standard deviation of approximation ratios.

    Accepts raw floats or objects with an `ar` attribute."""
    values = [a.ar if hasattr(a, "ar") else float(a) for a in ars]
    if not values:
        raise EmptyInput("mean_ar over an empty collection")
    values.sort()
    mu = math.fsum(values) / len(values)
    var = math.fsum((v - mu) ** 2 for v in values) / len(values)
    return mu, math.sqrt(var)


def quotient_i_prime(mu_base: float, mu_pert: float) -> float:
    if mu_pert <= 0:
        raise DivisionByZero("mu_pert must be positive")
    return mu_base / mu_pert


def symmetry_index(maxcut_base: int, maxcut_pert: int, aut_base: int, aut_pert: int) -> float:
    """(maxcut_base * aut_pert) / (maxcut_pert * aut_base), reduced exactly
    as a rational before converting to float."""
    if maxcut_pert <= 0 or aut_base <= 0:
        raise DivisionByZero("maxcut_pert and aut_base must be positive")
    return float(Fraction(maxcut_base * aut_pert, maxcut_pert * aut_base))


def approx_symmetry_index(mu_base: float, mu_pert: float, aut_base: int, aut_pert: int) -> float:
    if mu_pert <= 0 or aut_base <= 0:
        raise DivisionByZero("mu_pert and aut_base must be positive")
    return (mu_base * aut_pert) / (mu_pert * aut_base)


@dataclass
class HeuristicReport:
    """Monitored statistics: flatness of the quotient metrics across layer
    counts, approximation-ratio deltas for shadow cells, symmetry-count
    changes versus AR changes, and the eigenvalue bound table."""

    flatness: dict = field(default_factory=dict)
    shadow_ar_deltas: dict = field(default_factory=dict)
    symmetry_table: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    thresholds: dict = field(
        default_factory=lambda: {"shadow_ar_noise": 0.02, "i_prime_spread": 0.1}
    )


def heuristic_report(records: list[MetricsRecord], graphs: list[Graph] | None = None) -> HeuristicReport:
    """Aggregate the sweep records; `graphs` (the base dataset) additionally
    fills the eigenvalue bound table, which needs graph structure that the
    records do not carry."""
    good = [r for r in records if not r.error]
    if len({r.p for r in good}) < 2:
        raise InsufficientData("need records for at least two layer counts")
    rep = HeuristicReport()

    by_cell: dict[tuple[str, str], list[MetricsRecord]] = {}
    for r in good:
        by_cell.setdefault((r.graph_id, r.perturbation), []).append(r)
    for (gid, pert), rows in sorted(by_cell.items()):
        i_primes = sorted({r.p: r.i_prime for r in rows}.values())
        i_sym_primes = sorted({r.p: r.i_sym_prime for r in rows}.values())
        rep.flatness[f"{gid}|{pert}"] = {
            "i_prime_spread": max(i_primes) - min(i_primes),
            "i_sym_prime_spread": max(i_sym_primes) - min(i_sym_primes),
        }

    base_ar: dict[tuple[str, int, int], float] = {}
    for r in good:
        if r.perturbation == "base":
            base_ar[(r.graph_id, r.p, r.seed)] = r.ar
    for r in good:
        if r.perturbation in ("shadow1", "shadow2"):
            key = (r.graph_id, r.p, r.seed)
            if key in base_ar:
                deltas = rep.shadow_ar_deltas.setdefault(f"{r.graph_id}|{r.perturbation}", [])
                deltas.append(abs(r.ar - base_ar[key]))

    for (gid, pert), rows in sorted(by_cell.items()):
        if pert == "base":
            continue
        r0 = rows[0]
        ar_deltas = [
            abs(r.ar - base_ar[(r.graph_id, r.p, r.seed)])
            for r in rows
            if (r.graph_id, r.p, r.seed) in base_ar
        ]
        rep.symmetry_table[f"{gid}|{pert}"] = {
            "aut_base": r0.aut_order_base,
            "aut_pert": r0.aut_order_pert,
            "aut_ratio": r0.aut_order_pert / r0.aut_order_base,
            "mean_ar_delta": math.fsum(sorted(ar_deltas)) / len(ar_deltas) if ar_deltas else None,
        }

    if graphs is not None:
        for g in graphs:
            b: BoundsReport = maxcut_upper_bounds(g)
            rep.bounds[g.label()] = {
                "literal": b.literal,
                "sound": b.sound,
                "maxcut": b.maxcut,
                "literal_violated": b.literal_violated,
            }
    return rep
