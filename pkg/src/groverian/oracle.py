"""Brute-force grid maximization of |<q1 ... qn|psi>|^2 over qubit angles.

Local states are cos(t)|0> + e^{ip} sin(t)|1> with t in [0, pi), p in [0, 2pi).
Parties 1..n-1 are gridded; for the last party the best overlap given the
others is the norm of the remaining single-qubit vector (Cauchy-Schwarz), so
every value reported is attained by an actual product state and the result
never exceeds the true maximum.  Each refinement round regrids a window ten
times narrower around the incumbent.

This module deliberately shares no code with the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .states import PureState

MAX_CELLS = 20_000_000


class OracleUnsupported(ValueError):
    pass


@dataclass(frozen=True)
class GridConfig:
    theta_steps: int = 60
    phi_steps: int | None = None  # None: 1 for real states, 30 otherwise
    refine_rounds: int = 3

    def __post_init__(self):
        if self.theta_steps < 2:
            raise ValueError("theta_steps must be >= 2")
        if self.phi_steps is not None and self.phi_steps < 1:
            raise ValueError("phi_steps must be >= 1")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be >= 0")


@dataclass
class GridResult:
    p_max: float
    thetas: np.ndarray
    phis: np.ndarray
    round_values: list[float] = field(default_factory=list)


def _locals(thetas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """All (theta, phi) combinations as rows of qubit vectors, shape (T*P, 2)."""
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    t, p = t.ravel(), p.ravel()
    return np.stack([np.cos(t), np.exp(1j * p) * np.sin(t)], axis=1), t, p


def _evaluate(psi: np.ndarray, grids: list[np.ndarray]) -> np.ndarray:
    out = psi
    for g in grids:
        # contract the leading remaining qubit axis; batch axes accumulate at the end
        out = np.tensordot(out, g.conj(), axes=([0], [1]))
    # out axes: (last qubit, g_0, g_1, ..., g_{n-2})
    return np.sum(np.abs(out) ** 2, axis=0)


def grid_search(state: PureState, config: GridConfig | None = None) -> GridResult:
    config = config or GridConfig()
    if any(d != 2 for d in state.dims):
        raise OracleUnsupported("grid oracle handles qubits only")
    n = state.n
    if n > 4:
        raise OracleUnsupported("grid oracle handles at most 4 qubits")
    psi = state.tensor()
    real = state.is_real
    phi_steps = config.phi_steps if config.phi_steps is not None else (1 if real else 30)
    if n == 1:
        val = float(np.sum(np.abs(psi) ** 2))
        return GridResult(val, np.zeros(0), np.zeros(0), [val])

    m = n - 1
    cells = (config.theta_steps * phi_steps) ** m
    if cells > MAX_CELLS:
        raise OracleUnsupported(f"grid of {cells} cells is too large; lower the step counts")

    t_width, p_width = math.pi, 2 * math.pi
    t_axes = [np.linspace(0, math.pi, config.theta_steps, endpoint=False)] * m
    if phi_steps == 1:
        p_axes = [np.zeros(1)] * m
    else:
        p_axes = [np.linspace(0, 2 * math.pi, phi_steps, endpoint=False)] * m

    best = -1.0
    best_t = np.zeros(m)
    best_p = np.zeros(m)
    rounds = []
    for r in range(config.refine_rounds + 1):
        grids, tt, pp = [], [], []
        for j in range(m):
            g, t, p = _locals(t_axes[j], p_axes[j])
            grids.append(g)
            tt.append(t)
            pp.append(p)
        vals = _evaluate(psi, grids)
        flat = int(np.argmax(vals))
        if vals.flat[flat] > best:
            best = float(vals.flat[flat])
            cell = np.unravel_index(flat, vals.shape)
            best_t = np.array([tt[j][cell[j]] for j in range(m)])
            best_p = np.array([pp[j][cell[j]] for j in range(m)])
        rounds.append(best)
        if r == config.refine_rounds:
            break
        t_width /= 10
        p_width /= 10
        t_axes = [
            np.mod(np.linspace(c - t_width / 2, c + t_width / 2, config.theta_steps), math.pi)
            for c in best_t
        ]
        if phi_steps > 1:
            p_axes = [
                np.mod(np.linspace(c - p_width / 2, c + p_width / 2, phi_steps), 2 * math.pi)
                for c in best_p
            ]
    return GridResult(best, best_t, best_p, rounds)


def grid_pmax(state: PureState, config: GridConfig | None = None) -> float:
    return grid_search(state, config).p_max
