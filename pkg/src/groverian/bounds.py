"""Lower bounds on P_max for qubit states and the checks built on them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .solver import SolverConfig, alternating_pmax
from .states import PAULI, PureState, StateError, reduced_state

INEQUALITY_SLACK = 1e-9


def lower_bound(n: int) -> float:
    """2^(1-n): no pure n-qubit state has a smaller P_max."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 ** (1 - n)


def _require_qubits(state: PureState):
    if any(d != 2 for d in state.dims):
        raise StateError("qubit states only")


class InequalityCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def check_reduced_inequality(
    state: PureState,
    subset: Sequence[int],
    config: SolverConfig | None = None,
    p_max: float | None = None,
) -> InequalityCheck:
    """P_max(psi) >= P_max(rho_S) / 2^(n-m-1) for the reduction onto ``subset``.

    The right side is the max product overlap of a mixed operator, which is
    only an intermediate quantity, not an entanglement measure.  Pass
    ``p_max`` to reuse an already computed left side.
    """
    _require_qubits(state)
    n = state.n
    subset = sorted(set(int(k) for k in subset))
    m = len(subset)
    if not 1 <= m <= n - 1 or subset[0] < 0 or subset[-1] >= n:
        raise StateError(f"invalid subset {subset} for {n} qubits")
    config = config or SolverConfig()
    lhs = alternating_pmax(state, config).p_max if p_max is None else p_max
    red = alternating_pmax(reduced_state(state, subset), config).p_max
    rhs = red / 2.0 ** (n - m - 1)
    return InequalityCheck(lhs, rhs, lhs >= rhs - INEQUALITY_SLACK)


@dataclass
class MixednessReport:
    order: int
    subsets: list[tuple[int, ...]]
    deviations: list[float]

    @property
    def max_deviation(self) -> float:
        return max(self.deviations)

    @property
    def worst_subset(self) -> tuple[int, ...]:
        return self.subsets[int(np.argmax(self.deviations))]


def mixedness_report(state: PureState, m: int) -> MixednessReport:
    """Frobenius distance of every m-qubit reduction from I / 2^m."""
    _require_qubits(state)
    if not 1 <= m <= state.n - 1:
        raise StateError(f"order m={m} must lie in [1, {state.n - 1}]")
    eye = np.eye(2**m) / 2**m
    subsets = list(itertools.combinations(range(state.n), m))
    devs = [float(np.linalg.norm(reduced_state(state, s).mat - eye)) for s in subsets]
    return MixednessReport(m, subsets, devs)


# --- three-qubit purity gap -------------------------------------------------

PURITY_NORM_SQ = 7.0  # tr rho^2 = (1 + |g|^2) / 8 = 1

_PAULI3 = np.array(
    [reduce(np.kron, (PAULI[a], PAULI[b], PAULI[c])) for a, b, c in itertools.product(range(3), repeat=3)]
)


def rho_from_g(g: np.ndarray) -> np.ndarray:
    """(I + g_abc sigma_a x sigma_b x sigma_c) / 8 for g of shape (..., 27)."""
    g = np.asarray(g, dtype=float)
    return (np.eye(8) + np.tensordot(g, _PAULI3, axes=([-1], [0]))) / 8.0


def purity_residual(g: np.ndarray) -> np.ndarray:
    """||rho^2 - rho||_F, vectorized over leading axes of g."""
    rho = rho_from_g(g)
    return np.linalg.norm(rho @ rho - rho, axis=(-2, -1))


@dataclass(frozen=True)
class PurityGapConfig:
    seed: int = 0
    restarts: int = 50
    steps: int = 500
    step_size: float = 0.5
    fd_step: float = 1e-6


@dataclass
class PurityGapResult:
    residual: float
    g: np.ndarray
    iterations: int
    seed: int
    histories: list[list[float]] = field(repr=False, default_factory=list)


def _project(g: np.ndarray) -> np.ndarray:
    return g * (math.sqrt(PURITY_NORM_SQ) / np.linalg.norm(g, axis=-1, keepdims=True))


def three_qubit_purity_gap(config: PurityGapConfig | None = None) -> PurityGapResult:
    """Search real g with |g|^2 = 7 for the smallest ||rho(g)^2 - rho(g)||_F.

    rho(g) has every one- and two-qubit reduction completely mixed by
    construction, so a zero residual would be a pure three-qubit state at the
    bound 1/4.  Restarts run as one batch; each takes projected central
    finite-difference descent steps on the sphere with a 1/(1 + t/100) step
    schedule, halving its own step multiplier whenever a step fails to lower
    the residual (the step is then discarded), so every history is
    non-increasing.
    """
    config = config or PurityGapConfig()
    R, dim = config.restarts, 27
    g = np.stack([np.random.default_rng([config.seed, r]).normal(size=dim) for r in range(R)])
    g = _project(g)
    res = purity_residual(g)
    hist = [[float(v)] for v in res]
    mult = np.ones(R)
    h = config.fd_step
    E = np.eye(dim) * h
    for t in range(config.steps):
        plus = purity_residual(g[:, None, :] + E[None])
        minus = purity_residual(g[:, None, :] - E[None])
        grad = (plus - minus) / (2 * h)
        # tangent component only; the radial part is removed by projection anyway
        grad -= np.sum(grad * g, axis=1, keepdims=True) * g / PURITY_NORM_SQ
        eta = config.step_size / (1 + t / 100) * mult
        trial = _project(g - eta[:, None] * grad)
        new = purity_residual(trial)
        ok = new < res
        g = np.where(ok[:, None], trial, g)
        res = np.where(ok, new, res)
        mult = np.where(ok, mult, mult * 0.5)
        for r in range(R):
            hist[r].append(float(res[r]))
    best = int(np.argmin(res))
    return PurityGapResult(float(res[best]), g[best].reshape(3, 3, 3), config.steps, config.seed, hist)
