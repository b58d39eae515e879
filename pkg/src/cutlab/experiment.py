"""Experiment runner: graphs x perturbations x layers x seeds.

Every cell's RNG stream is derived by hashing (master seed, graph, layer
count, seed index), so results are identical no matter how cells are
scheduled.  Perturbation variants of a graph share the same optimizer
starting angles, which keeps shadow cells on the exact same optimization
trajectory as their base cell.
"""

from __future__ import annotations

import hashlib
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .automorphisms import aut_order, predict_kn_deleted_edge_order, predict_kn_pendant_order, predict_shadow_order
from .errors import CutlabError
from .graphs import (
    DeleteEdge,
    Graph,
    PendantEdge,
    Shadow,
    apply_perturbation,
    enumerate_edge_deletions,
    gen_complete,
    gen_erdos_renyi,
    gen_full_rary_tree,
    gen_random_regular,
)
from .maxcut import brute_force_maxcut
from .metrics import MetricsRecord, approx_symmetry_index, mean_ar, quotient_i_prime, symmetry_index
from .qaoa import optimize

WORKERS_ENV = "CUTLAB_WORKERS"

PERTURBATION_KINDS = ("base", "shadow1", "shadow2", "pendant", "delete")


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 42
    families: tuple[str, ...] = ("complete", "erdos_renyi", "rary_tree", "regular")
    sizes: tuple[int, ...] = (4, 6, 8, 10)
    perturbations: tuple[str, ...] = PERTURBATION_KINDS
    p_values: tuple[int, ...] = (1, 2, 3, 4)
    seeds_per_cell: int = 3
    restarts: int = 2
    maxiter: int = 350
    q: float = 0.5
    degree: int = 3
    rary: int = 2
    aut_node_cap: int = 12
    workers: int | None = None


def parse_config(text: str) -> ExperimentConfig:
    """Parse the key = value config format (see README for the keys)."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected 'key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val

    kw: dict = {}
    int_keys = {"seed", "seeds_per_cell", "restarts", "maxiter", "degree", "rary", "workers", "aut_node_cap"}
    p_min, p_max = 1, 4
    for key, val in values.items():
        if key in int_keys:
            kw[key] = int(val)
        elif key == "q":
            kw[key] = float(val)
        elif key in ("families", "perturbations"):
            kw[key] = tuple(x.strip() for x in val.split(",") if x.strip())
        elif key == "sizes":
            kw[key] = tuple(int(x) for x in val.split(","))
        elif key == "p_min":
            p_min = int(val)
        elif key == "p_max":
            p_max = int(val)
        else:
            raise ValueError(f"unknown config key {key!r}")
    if "p_min" in values or "p_max" in values:
        kw["p_values"] = tuple(range(p_min, p_max + 1))
    return ExperimentConfig(**kw)


def derive_seed(*parts) -> int:
    """Stable 64-bit stream id from the joined parts (process-independent)."""
    digest = hashlib.sha256(":".join(map(str, parts)).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def build_dataset(cfg: ExperimentConfig) -> list[Graph]:
    graphs = []
    for family in cfg.families:
        for n in cfg.sizes:
            inst_seed = derive_seed(cfg.seed, family, n)
            if family == "complete":
                graphs.append(gen_complete(n))
            elif family == "erdos_renyi":
                graphs.append(gen_erdos_renyi(n, cfg.q, inst_seed))
            elif family == "rary_tree":
                graphs.append(gen_full_rary_tree(cfg.rary, n))
            elif family == "regular":
                graphs.append(gen_random_regular(cfg.degree, n, inst_seed))
            else:
                raise ValueError(f"unknown family {family!r}")
    return graphs


def make_perturbed(g: Graph, kind: str, pert_seed: int) -> Graph:
    if kind == "base":
        return g
    if kind == "shadow1":
        return apply_perturbation(g, Shadow(1))
    if kind == "shadow2":
        return apply_perturbation(g, Shadow(2))
    if kind == "pendant":
        return apply_perturbation(g, PendantEdge(seed=pert_seed))
    if kind == "delete":
        return apply_perturbation(g, DeleteEdge(seed=pert_seed))
    raise ValueError(f"unknown perturbation kind {kind!r}")


def _cross_check_predictors(g: Graph, kind: str, enumerated: int, base_order: int, base_g: Graph, cap: int) -> None:
    """Compare the enumerated order with the closed-form rule when one
    applies; a mismatch is an implementation fault."""
    predicted: int | None = None
    if kind in ("shadow1", "shadow2"):
        s = 1 if kind == "shadow1" else 2
        predicted = predict_shadow_order(base_order, s, bool(base_g.isolated_nodes()))
    elif base_g.meta.family == "complete":
        if kind == "delete":
            predicted = predict_kn_deleted_edge_order(base_g.n)
        elif kind == "pendant" and base_g.n >= 3:
            predicted = predict_kn_pendant_order(base_g.n)
    if predicted is not None and predicted != enumerated:
        raise AssertionError(
            f"{base_g.label()}+{kind}: predictor says {predicted}, enumeration says {enumerated}"
        )


def _run_cell(task):
    """One optimization run; executed in a worker process.  Failures are
    returned, not raised, so one bad cell cannot abort the sweep."""
    graph, p, opt_seed, restarts, maxiter = task
    t0 = time.perf_counter()
    try:
        run = optimize(graph, p=p, seed=opt_seed, restarts=restarts, maxiter=maxiter)
    except Exception as exc:  # noqa: BLE001 - recorded per row
        return exc
    runtime_ms = (time.perf_counter() - t0) * 1e3
    return run.f_star, run.ar, run.maxcut, runtime_ms


def run_experiment(cfg: ExperimentConfig) -> list[MetricsRecord]:
    """Produce one record per (graph, perturbation, p, seed index).

    Per-cell failures are captured in the record's error column; the sweep
    itself always completes.
    """
    graphs = build_dataset(cfg)
    records: list[MetricsRecord] = []

    # Per-(graph, kind) structural facts: the perturbed instance, its
    # enumerated group order (for deletions: the max across all single-edge
    # deletions), and its MaxCut value.
    variants: dict[tuple[str, str], tuple[Graph | None, int, int, str]] = {}
    for g in graphs:
        gid = g.label()
        base_order = aut_order(g, node_cap=cfg.aut_node_cap).order
        base_cut = brute_force_maxcut(g).value
        for kind in cfg.perturbations:
            try:
                pert_seed = derive_seed(cfg.seed, gid, kind)
                gp = make_perturbed(g, kind, pert_seed)
                if kind == "delete":
                    order = max(
                        aut_order(d, node_cap=cfg.aut_node_cap).order
                        for d in enumerate_edge_deletions(g)
                    )
                else:
                    order = aut_order(gp, node_cap=cfg.aut_node_cap).order
                _cross_check_predictors(gp, kind, order, base_order, g, cfg.aut_node_cap)
                cut = brute_force_maxcut(gp).value
                variants[(gid, kind)] = (gp, order, cut, "")
            except (CutlabError, AssertionError, ValueError) as exc:
                variants[(gid, kind)] = (None, 0, 0, f"{type(exc).__name__}: {exc}")
        variants[(gid, "_base_facts")] = (g, base_order, base_cut, "")

    tasks = []
    task_meta = []
    for g in graphs:
        gid = g.label()
        for kind in cfg.perturbations:
            gp, order, cut, err = variants[(gid, kind)]
            for p in cfg.p_values:
                for seed_index in range(cfg.seeds_per_cell):
                    # starting angles shared across perturbation variants of
                    # a cell: the derivation excludes `kind` on purpose
                    opt_seed = derive_seed(cfg.seed, gid, p, seed_index)
                    if gp is not None:
                        tasks.append((gp, p, opt_seed, cfg.restarts, cfg.maxiter))
                    else:
                        tasks.append(None)
                    task_meta.append((g, gid, kind, p, seed_index, err))

    workers = cfg.workers
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, 0)) or os.cpu_count() or 1
    results: list[tuple[float, float, int, float] | Exception] = [None] * len(tasks)  # type: ignore
    live = [(i, t) for i, t in enumerate(tasks) if t is not None]
    if workers > 1 and len(live) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (i, _), res in zip(live, pool.map(_run_cell, [t for _, t in live], chunksize=4)):
                results[i] = res
    else:
        for i, t in live:
            results[i] = _run_cell(t)

    for (g, gid, kind, p, seed_index, err), res in zip(task_meta, results):
        _, base_order, base_cut, _ = variants[(gid, "_base_facts")]
        gp, order, cut, var_err = variants[(gid, kind)]
        error = err or var_err
        f_star = ar = float("nan")
        runtime_ms = 0.0
        if not error:
            if isinstance(res, Exception):
                error = f"{type(res).__name__}: {res}"
            else:
                f_star, ar, cut_check, runtime_ms = res
                if ar is None:
                    error = "ZeroCut: approximation ratio undefined"
        records.append(
            MetricsRecord(
                graph_id=gid,
                family=g.meta.family,
                n=gp.n if gp is not None else g.n,
                perturbation=kind,
                p=p,
                seed=seed_index,
                restarts=cfg.restarts,
                f_star=f_star,
                maxcut=cut,
                ar=ar if ar is not None else float("nan"),
                aut_order_base=base_order,
                aut_order_pert=order,
                mu_base=float("nan"),
                mu_pert=float("nan"),
                i_prime=float("nan"),
                i_sym=float("nan"),
                i_sym_prime=float("nan"),
                runtime_ms=runtime_ms,
                error=error,
            )
        )

    _attach_cell_aggregates(records)
    records.sort(key=lambda r: (r.graph_id, PERTURBATION_KINDS.index(r.perturbation), r.p, r.seed))
    return records


def _attach_cell_aggregates(records: list[MetricsRecord]) -> None:
    by_cell: dict[tuple[str, str, int], list[MetricsRecord]] = {}
    base_cuts: dict[str, int] = {}
    for r in records:
        by_cell.setdefault((r.graph_id, r.perturbation, r.p), []).append(r)
        if r.perturbation == "base" and not r.error:
            base_cuts[r.graph_id] = r.maxcut
    mus: dict[tuple[str, str, int], float] = {}
    for key, rows in by_cell.items():
        clean = [r for r in rows if not r.error]
        if clean:
            mus[key], _ = mean_ar([r.ar for r in clean])
    for (gid, kind, p), rows in by_cell.items():
        mu_pert = mus.get((gid, kind, p))
        mu_base = mus.get((gid, "base", p))
        if mu_pert is None or mu_base is None or gid not in base_cuts:
            continue
        for r in rows:
            if r.error:
                continue
            r.mu_pert = mu_pert
            r.mu_base = mu_base
            r.i_prime = quotient_i_prime(mu_base, mu_pert)
            r.i_sym = symmetry_index(
                base_cuts[gid], r.maxcut, r.aut_order_base, r.aut_order_pert
            )
            r.i_sym_prime = approx_symmetry_index(
                mu_base, mu_pert, r.aut_order_base, r.aut_order_pert
            )
