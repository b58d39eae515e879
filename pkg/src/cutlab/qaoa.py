"""Dense statevector QAOA simulator with seeded multi-start optimization.

Basis states are indexed little-endian: bit i of the index is the assignment
of node i.  The cost layer is a precomputed diagonal of cut values, the
mixing layer applies exp(-i*beta*X) to every qubit, and expectations are
computed exactly from the amplitudes (no shot sampling).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import TooLarge, ZeroCut
from .graphs import Graph
from .maxcut import CutSolution, brute_force_maxcut

MAX_QUBITS = 16
GAMMA_PERIOD = 2.0 * np.pi
BETA_PERIOD = np.pi


@dataclass(frozen=True)
class AngleSet:
    """Layered angle pairs, normalized into [0, 2*pi) x [0, pi) on
    construction (the expectation is exactly periodic in both)."""

    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self):
        if len(self.gamma) != len(self.beta):
            raise ValueError("gamma and beta must have equal length")
        if not self.gamma:
            raise ValueError("at least one layer required")
        object.__setattr__(
            self, "gamma", tuple(float(x) % GAMMA_PERIOD for x in self.gamma)
        )
        object.__setattr__(
            self, "beta", tuple(float(x) % BETA_PERIOD for x in self.beta)
        )

    @property
    def p(self) -> int:
        return len(self.gamma)

    def as_vector(self) -> np.ndarray:
        return np.array(self.gamma + self.beta)

    @staticmethod
    def from_vector(x) -> "AngleSet":
        x = np.asarray(x, dtype=float)
        p = len(x) // 2
        return AngleSet(tuple(x[:p]), tuple(x[p:]))


@dataclass
class OptimizerTrace:
    iterations: int
    evaluations: int
    converged: bool
    best_restart: int


@dataclass
class QaoaRun:
    graph_id: str
    p: int
    angles: AngleSet
    f_star: float
    ar: float | None
    maxcut: int
    seed: int
    restarts: int
    trace: OptimizerTrace


@dataclass(frozen=True)
class CircuitShape:
    """Structural gate accounting for the circuit the simulator stands in
    for: n Hadamards, then per layer one ZZ rotation per edge and one X
    rotation per qubit."""

    qubits: int
    hadamards: int
    rx: int
    zz: int
    layers: tuple[dict, ...] = field(compare=False, default=())


def build_cost_diagonal(g: Graph) -> np.ndarray:
    """d[x] = cut value of the bipartition encoded by basis index x."""
    if g.n > MAX_QUBITS:
        raise TooLarge(f"n={g.n} exceeds simulator cap {MAX_QUBITS}")
    idx = np.arange(1 << g.n, dtype=np.int64)
    d = np.zeros(1 << g.n, dtype=float)
    for u, v in g.edges:
        d += ((idx >> u) ^ (idx >> v)) & 1
    return d


def _evolve_diag(n: int, diag: np.ndarray, angles: AngleSet) -> np.ndarray:
    psi = np.full(1 << n, 1.0 / np.sqrt(1 << n), dtype=complex)
    for gamma, beta in zip(angles.gamma, angles.beta):
        psi *= np.exp(-1j * gamma * diag)
        c = np.cos(beta)
        s = -1j * np.sin(beta)
        for q in range(n):
            block = psi.reshape(-1, 2, 1 << q)
            a = block[:, 0, :].copy()
            b = block[:, 1, :]
            block[:, 0, :] = c * a + s * b
            block[:, 1, :] = s * a + c * b
    return psi


def evolve(g: Graph, angles: AngleSet) -> np.ndarray:
    """Statevector after p alternating cost/mixing layers applied to the
    uniform superposition."""
    return _evolve_diag(g.n, build_cost_diagonal(g), angles)


def expectation(g: Graph, angles: AngleSet) -> float:
    diag = build_cost_diagonal(g)
    psi = _evolve_diag(g.n, diag, angles)
    return float(np.real(np.vdot(psi, diag * psi)))


def circuit_shape(g: Graph, p: int) -> CircuitShape:
    if p < 1:
        raise ValueError("p must be >= 1")
    layers = tuple(
        {"zz": list(g.edges), "rx": list(range(g.n))} for _ in range(p)
    )
    return CircuitShape(
        qubits=g.n,
        hadamards=g.n,
        rx=g.n * p,
        zz=g.num_edges * p,
        layers=layers,
    )


def optimize(
    g: Graph,
    p: int,
    seed: int,
    restarts: int = 5,
    warm_start: AngleSet | None = None,
    maxiter: int = 2000,
    xatol: float = 1e-6,
) -> QaoaRun:
    """Best expectation over `restarts` Nelder-Mead descents from seeded
    uniform starting angles.  A warm start with p-1 layers is extended by a
    zero-angle layer and appended as one extra start, which preserves its
    expectation exactly and so guarantees monotone F* in p.

    Deterministic for fixed (graph, p, seed, restarts, optimizer settings).
    """
    if g.n > MAX_QUBITS:
        raise TooLarge(f"n={g.n} exceeds simulator cap {MAX_QUBITS}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    diag = build_cost_diagonal(g)
    n = g.n

    def objective(x: np.ndarray) -> float:
        angles = AngleSet.from_vector(x)
        psi = _evolve_diag(n, diag, angles)
        return -float(np.real(np.vdot(psi, diag * psi)))

    rng = np.random.default_rng(seed)
    starts = [
        np.concatenate(
            [rng.uniform(0.0, GAMMA_PERIOD, p), rng.uniform(0.0, BETA_PERIOD, p)]
        )
        for _ in range(restarts)
    ]
    if warm_start is not None:
        if warm_start.p != p - 1:
            raise ValueError(f"warm start has {warm_start.p} layers, expected {p - 1}")
        starts.append(
            np.concatenate([warm_start.gamma, (0.0,), warm_start.beta, (0.0,)])
        )

    best_val = np.inf
    best_x = starts[0]
    best_trace = OptimizerTrace(0, 0, False, 0)
    for i, x0 in enumerate(starts):
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": maxiter,
                "xatol": xatol,
                "fatol": 1e-9,
                "adaptive": True,
            },
        )
        # the returned vertex is never worse than the start, but guard anyway
        cand_val, cand_x = res.fun, res.x
        if objective(x0) < cand_val:
            cand_val, cand_x = objective(x0), x0
        if cand_val < best_val:
            best_val = cand_val
            best_x = cand_x
            best_trace = OptimizerTrace(res.nit, res.nfev, bool(res.success), i)

    angles = AngleSet.from_vector(best_x)
    f_star = -best_val
    opt = brute_force_maxcut(g)
    ar = None
    if opt.value > 0:
        ar = min(1.0, f_star / opt.value)
    return QaoaRun(
        graph_id=g.label(),
        p=p,
        angles=angles,
        f_star=f_star,
        ar=ar,
        maxcut=opt.value,
        seed=seed,
        restarts=restarts,
        trace=best_trace,
    )


def approximation_ratio(run: QaoaRun, opt: CutSolution) -> float:
    """F* over the true MaxCut value, clamped into (0, 1]."""
    if opt.value <= 0:
        raise ZeroCut("approximation ratio undefined for MaxCut value 0")
    ar = min(1.0, run.f_star / opt.value)
    run.ar = ar
    return ar


def transfer_parameters(source_run: QaoaRun, target: Graph) -> float:
    """Evaluate the source run's optimal angles on another graph and return
    the induced approximation ratio there."""
    f = expectation(target, source_run.angles)
    opt = brute_force_maxcut(target)
    if opt.value <= 0:
        raise ZeroCut("approximation ratio undefined for MaxCut value 0")
    return min(1.0, f / opt.value)
