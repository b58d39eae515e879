"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion
lines.  The end-to-end experiment criterion runs the full default sweep
twice (byte-identity), which dominates the suite's runtime.
"""

import time

import numpy as np
import pytest

from cutlab.automorphisms import aut_order, predict_tree_order
from cutlab.charpoly import char_poly, poly_mul
from cutlab.experiment import ExperimentConfig, run_experiment
from cutlab.graphs import (
    DeleteEdge,
    PendantEdge,
    Shadow,
    apply_perturbation,
    enumerate_edge_deletions,
    gen_complete,
    gen_full_binary_tree,
    gen_full_rary_tree,
    relabel,
)
from cutlab.maxcut import brute_force_maxcut
from cutlab.metrics import mean_ar
from cutlab.qaoa import AngleSet, expectation, optimize
from cutlab.reporting import records_to_csv_text, render_plots
from cutlab.spectral import (
    check_radius_preservation,
    complement_charpoly,
    maxcut_upper_bounds,
    predicted_charpoly_pendant,
    predicted_charpoly_shadow,
    tree_charpoly,
    verify_deleted_edge_identity,
    verify_two_node_deletion_identity,
)
from cutlab.qaoa import circuit_shape


def _pass(num, text):
    print(f"\n[acceptance] criterion {num:02d} PASS: {text}")


@pytest.fixture(scope="module")
def experiment_records():
    """One full default-config run, shared by the criteria that need it."""
    t0 = time.perf_counter()
    records = run_experiment(ExperimentConfig(workers=1))
    return records, time.perf_counter() - t0


def test_criterion_01_complete_graph_charpoly_exact():
    t0 = time.perf_counter()
    for n in range(2, 11):
        expected = [1 - n, 1]
        for _ in range(n - 1):
            expected = poly_mul(expected, [1, 1])
        assert char_poly(gen_complete(n)).coeffs == tuple(expected)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _pass(1, f"complete-graph char polys exact for n=2..10 in {elapsed:.3f}s")


def test_criterion_02_shadow_charpoly_exact(dataset):
    t0 = time.perf_counter()
    assert len(dataset) >= 16
    for g in dataset:
        phi = char_poly(g)
        for s in (1, 2):
            direct = char_poly(apply_perturbation(g, Shadow(s)))
            assert predicted_charpoly_shadow(phi, s).coeffs == direct.coeffs
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _pass(2, f"shadow charpoly prediction exact on {len(dataset)} graphs, s in {{1,2}}, {elapsed:.2f}s")


def test_criterion_03_deletion_identities(dataset):
    t0 = time.perf_counter()
    edges = pairs = nodes = 0
    for g in dataset:
        assert g.n <= 10
        for u, v in g.edges:
            rep = verify_deleted_edge_identity(g, u, v)
            assert rep.passed and rep.max_rel_discrepancy <= 1e-6
            edges += 1
        for u in range(g.n):
            for v in range(u + 1, g.n):
                rep = verify_two_node_deletion_identity(g, u, v)
                assert rep.passed and rep.max_rel_discrepancy <= 1e-6
                pairs += 1
        for u in range(g.n):
            direct = char_poly(apply_perturbation(g, PendantEdge(u=u)))
            assert predicted_charpoly_pendant(g, u).coeffs == direct.coeffs
            nodes += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _pass(3, f"deletion/pendant identities: {edges} edges, {pairs} pairs, {nodes} pendants in {elapsed:.1f}s")


def test_criterion_04_tree_recursion_and_complement(dataset):
    for h in range(5):
        g = gen_full_binary_tree(h)
        assert tree_charpoly(g).coeffs == char_poly(g).coeffs
    trees = regs = 0
    for g in dataset:
        if g.meta.family == "rary_tree":
            assert tree_charpoly(g).coeffs == char_poly(g).coeffs
            trees += 1
        if len(set(g.degrees())) == 1:
            from cutlab.graphs import complement_graph

            assert complement_charpoly(g).coeffs == char_poly(complement_graph(g)).coeffs
            regs += 1
    assert trees == 4 and regs >= 8
    _pass(4, f"tree recursion exact (h<=4 plus {trees} sweep trees); complement exact on {regs} regular graphs")


def test_criterion_05_automorphism_table_k_row():
    t0 = time.perf_counter()
    expected_base = {4: 24, 6: 720, 8: 40320, 10: 3628800}
    expected_pendant = {4: 6, 6: 120, 8: 5040, 10: 362880}
    expected_delete = {4: 4, 6: 48, 8: 1440, 10: 80640}
    for n in (4, 6, 8, 10):
        g = gen_complete(n)
        base = aut_order(g).order
        assert base == expected_base[n]
        pend = aut_order(apply_perturbation(g, PendantEdge(u=0)), node_cap=11).order
        assert pend == expected_pendant[n]
        dels = max(aut_order(d).order for d in enumerate_edge_deletions(g))
        assert dels == expected_delete[n]
        sh2 = aut_order(apply_perturbation(g, Shadow(2)), node_cap=12).order
        assert sh2 == 2 * base
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _pass(5, f"complete-family order table (base/pendant/delete/shadow2) exact in {elapsed:.1f}s")


def test_criterion_06_binary_tree_orders():
    for h, expected in ((1, 2), (2, 8), (3, 128)):
        g = gen_full_binary_tree(h)
        enum = aut_order(g, node_cap=15).order
        assert enum == expected == predict_tree_order(h)
    _pass(6, "binary-tree group orders 2, 8, 128 enumerated and predicted for h=1,2,3")


def test_criterion_07_maxcut_table(dataset):
    k_values = {4: 4, 6: 9, 8: 16, 10: 25}
    t_values = {4: 3, 6: 5, 8: 7, 10: 9}
    for n, expected in k_values.items():
        assert brute_force_maxcut(gen_complete(n)).value == expected
    for n, expected in t_values.items():
        assert brute_force_maxcut(gen_full_rary_tree(2, n)).value == expected
    for g in dataset:
        if g.meta.family == "rary_tree":
            assert brute_force_maxcut(g).value == g.num_edges
        if g.meta.family in ("erdos_renyi", "regular"):
            perm = list(reversed(range(g.n)))
            assert brute_force_maxcut(relabel(g, perm)).value == brute_force_maxcut(g).value
    _pass(7, "MaxCut table: complete (4,9,16,25), trees (3,5,7,9); tree=|E| and relabeling invariance")


def test_criterion_08_shadow_invariance(dataset, experiment_records):
    rng = np.random.default_rng(2024)
    worst = 0.0
    for g in dataset:
        for s in (1, 2):
            gp = apply_perturbation(g, Shadow(s))
            for _ in range(100):
                a = AngleSet((rng.uniform(0, 2 * np.pi),), (rng.uniform(0, np.pi),))
                delta = abs(expectation(g, a) - expectation(gp, a))
                worst = max(worst, delta)
                assert delta <= 1e-12
    mus = {}
    for r in experiment_records[0]:
        if not r.error:
            mus[(r.graph_id, r.perturbation, r.p)] = r.mu_pert
    worst_mu = 0.0
    for (gid, pert, p), mu in mus.items():
        if pert in ("shadow1", "shadow2"):
            d = abs(mus[(gid, "base", p)] - mu)
            worst_mu = max(worst_mu, d)
            assert d <= 0.02
    _pass(8, f"shadow invariance: max |dF| = {worst:.2e} over 3200 angle sets; max |d mu| = {worst_mu:.2e}")


def test_criterion_09_single_edge_optimum():
    t0 = time.perf_counter()
    k2 = gen_complete(2)
    # independent vectorized 2-qubit p=1 oracle over the 400x400 angle grid
    gammas = np.linspace(0, 2 * np.pi, 400, endpoint=False)
    betas = np.linspace(0, np.pi, 400, endpoint=False)
    gm, bt = np.meshgrid(gammas, betas, indexing="ij")
    psi0 = 0.5 * np.ones((4, 400, 400), dtype=complex)
    phase = np.exp(-1j * gm)
    amps = psi0 * np.stack([np.ones_like(phase), phase, phase, np.ones_like(phase)])
    c, s = np.cos(bt), -1j * np.sin(bt)
    for q in (0, 1):
        lo = [i for i in range(4) if not (i >> q) & 1]
        hi = [i | (1 << q) for i in lo]
        a, b = amps[lo].copy(), amps[hi].copy()
        amps[lo] = c * a + s * b
        amps[hi] = s * a + c * b
    grid_f = (np.abs(amps[1]) ** 2 + np.abs(amps[2]) ** 2).max()
    run = optimize(k2, p=1, seed=5, restarts=5)
    assert abs(run.f_star - 1.0) <= 1e-6
    assert run.f_star >= grid_f - 1e-9  # the optimizer at least matches the grid
    assert grid_f == pytest.approx(1.0, abs=5e-4)
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _pass(9, f"single-edge optimum 1.0 (grid oracle {grid_f:.6f}) in {elapsed:.2f}s")


def _best_ar_over_p(g, seed, p_max, restarts):
    best, warm = 0.0, None
    prev = None
    for p in range(1, p_max + 1):
        run = optimize(g, p=p, seed=seed, restarts=restarts, warm_start=warm, maxiter=400)
        if prev is not None:
            assert run.f_star >= prev - 1e-9
        prev = run.f_star
        warm = run.angles
        best = max(best, run.ar)
    return best


def test_criterion_10_k4_approximation_ratio():
    t0 = time.perf_counter()
    k4 = gen_complete(4)
    ars = [_best_ar_over_p(k4, seed, p_max=8, restarts=10) for seed in (0, 1, 2)]
    mu, _ = mean_ar(ars)
    elapsed = time.perf_counter() - t0
    assert mu >= 0.99
    assert elapsed < 60.0
    _pass(10, f"complete-4 mean best AR = {mu:.4f} over 3 seeds (p<=8, 10 restarts) in {elapsed:.0f}s")


def test_criterion_11_warm_start_monotonicity():
    for g in (gen_complete(4), gen_full_rary_tree(2, 6)):
        warm, prev = None, None
        for p in range(1, 9):
            run = optimize(g, p=p, seed=11, restarts=3, warm_start=warm, maxiter=400)
            if prev is not None:
                assert run.f_star >= prev - 1e-9
            prev, warm = run.f_star, run.angles
    _pass(11, "warm-started F* monotone in p (1..8) on complete-4 and tree-6")


def test_criterion_12_radius_and_bounds(dataset):
    for g in dataset:
        for s in (1, 2):
            rep = check_radius_preservation(g, Shadow(s))
            assert rep.delta <= 1e-9
    k4 = maxcut_upper_bounds(gen_complete(4))
    assert k4.literal == pytest.approx(2.0) and k4.maxcut == 4 and k4.literal_violated
    for g in dataset:
        rep = maxcut_upper_bounds(g)
        assert rep.sound >= rep.maxcut - 1e-9
    _pass(12, "shadow radius deltas 0 at 1e-9; literal bound violation flagged; sound bound valid")


def test_criterion_13_circuit_deltas(dataset):
    for g in dataset:
        for p in (1, 2, 3):
            base = circuit_shape(g, p)
            assert (base.hadamards, base.rx, base.zz) == (g.n, g.n * p, g.num_edges * p)
            for s in (1, 2):
                sh = circuit_shape(apply_perturbation(g, Shadow(s)), p)
                assert (sh.hadamards - base.hadamards, sh.rx - base.rx, sh.zz - base.zz) == (s, s * p, 0)
            pen = circuit_shape(apply_perturbation(g, PendantEdge(u=0)), p)
            assert (pen.hadamards - base.hadamards, pen.rx - base.rx, pen.zz - base.zz) == (1, p, p)
            if g.edges:
                dl = circuit_shape(apply_perturbation(g, DeleteEdge(seed=0)), p)
                assert (dl.hadamards - base.hadamards, dl.rx - base.rx, dl.zz - base.zz) == (0, 0, -p)
    _pass(13, "circuit gate deltas exact for all perturbations at p in {1,2,3}")


def test_criterion_14_end_to_end_experiment(experiment_records, tmp_path):
    records, first_elapsed = experiment_records
    assert first_elapsed < 1800.0
    assert len(records) == 960
    errors = [r for r in records if r.error]
    assert errors == []

    csv_text = records_to_csv_text(records)
    csv_path = tmp_path / "results.csv"
    csv_path.write_text(csv_text)
    svgs = render_plots(records, tmp_path / "plots1")
    assert len(svgs) == 4 and all(p.stat().st_size > 0 for p in svgs)

    # full rerun must reproduce the CSV and the figures byte for byte
    again = run_experiment(ExperimentConfig(workers=1))
    assert records_to_csv_text(again) == csv_text
    svgs2 = render_plots(again, tmp_path / "plots2")
    for a, b in zip(svgs, svgs2):
        assert a.read_bytes() == b.read_bytes()

    _pass(14, f"default sweep: 960 rows, 0 errors, CSV + 4 SVGs byte-stable; first run {first_elapsed:.0f}s")
