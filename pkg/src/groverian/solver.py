"""Maximal product-state overlap by alternating local eigen-updates.

Each sweep visits the parties in order and replaces the local state of party k
by the top eigenvector of the effective local matrix

    M_k = tr_{j != k}( rho  (x)_{j != k} |q_j><q_j|  (x) I_k ),

so that tr(M_k |q_k><q_k|) is the current overlap.  For a pure input
M_k = |chi><chi| with chi = <q_1 .. q^_k .. q_n|psi>, and the update is simply
chi / |chi|.  Every update maximizes over one party, so the overlap never
decreases along a run.

All starts are advanced together as one batch; the per-start arithmetic is
independent, so the result does not depend on batch composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .states import (
    DensityOperator,
    ProductAssignment,
    PureState,
    StateError,
    overlap_with_product,
    partial_trace,
    density_from_pure,
)

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    max_iter: int = 1000
    starts: int = 24
    seed: int = 0
    method: str = "auto"  # "direct", "auto" or "reduced:<k>" (k is 1-based)

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        parse_method(self.method)


def parse_method(method: str) -> tuple[str, int | None]:
    """Split ``"reduced:2"`` into ``("reduced", 1)`` (0-based site)."""
    if method in ("direct", "auto"):
        return method, None
    if method.startswith("reduced:"):
        try:
            k = int(method.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad method {method!r}") from None
        if k < 1:
            raise ValueError("reduced site index is 1-based")
        return "reduced", k - 1
    raise ValueError(f"unknown method {method!r}")


@dataclass
class PmaxReport:
    p_max: float
    groverian: float
    best_assignment: ProductAssignment
    converged: bool
    iterations_used: int
    per_start_values: list[float]
    trajectories: list[list[float]] = field(repr=False)
    per_start_converged: list[bool] = field(repr=False)
    best_start: int = 0
    method: str = "direct"
    # False when the input was a mixed operator: the max overlap is not a measure then.
    is_measure: bool = True


def groverian_measure(p_max: float) -> float:
    if not (0.0 < p_max <= 1.0 + 1e-12):
        raise ValueError(f"p_max must lie in (0, 1], got {p_max!r}")
    return math.sqrt(max(0.0, 1.0 - p_max))


def closed_form_top_eigenvalue_2x2(A: np.ndarray) -> float:
    """max over pure qubit states of tr(A rho) = (trA + sqrt(trA^2 - 4 detA)) / 2."""
    tr = np.trace(A).real
    det = np.linalg.det(A).real
    return 0.5 * (tr + math.sqrt(max(0.0, tr * tr - 4.0 * det)))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate each row so its first non-negligible component is real positive."""
    v = np.atleast_2d(v)
    mag = np.abs(v)
    first = np.argmax(mag > 1e-12 * mag.max(axis=1, keepdims=True), axis=1)
    lead = v[np.arange(v.shape[0]), first]
    phase = np.where(np.abs(lead) > 0, lead / np.where(lead == 0, 1, np.abs(lead)), 1.0)
    return v / phase[:, None]


def _top_eigen_batch(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Largest eigenpair of a stack of Hermitian matrices, shape (S, d, d)."""
    if M.shape[-1] == 2:
        a = M[:, 0, 0].real
        d = M[:, 1, 1].real
        b = M[:, 0, 1]
        lam = 0.5 * (a + d + np.sqrt((a - d) ** 2 + 4.0 * np.abs(b) ** 2))
        v1 = np.stack([b, lam - a], axis=1)
        v2 = np.stack([lam - d, b.conj()], axis=1)
        n1 = np.linalg.norm(v1, axis=1)
        n2 = np.linalg.norm(v2, axis=1)
        v = np.where((n1 >= n2)[:, None], v1, v2)
        nv = np.maximum(n1, n2)
        degenerate = nv <= 1e-14 * np.maximum(np.abs(lam), 1e-300)
        v = np.where(degenerate[:, None], np.array([1.0, 0.0], dtype=complex), v)
        v = v / np.where(degenerate, 1.0, nv)[:, None]
        return lam, _fix_phase(v)
    w, V = np.linalg.eigh(M)
    return w[:, -1], _fix_phase(V[:, :, -1])


def top_eigen_hermitian(A) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector of a Hermitian matrix.

    Qubit-sized inputs use the radical formula; larger ones go through
    ``numpy.linalg.eigh``.  The vector's first nonzero entry is real positive.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(A - A.conj().T)) > HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian")
    lam, v = _top_eigen_batch(A[None])
    return float(lam[0]), v[0]


# --- contractions -----------------------------------------------------------


def _chi_batch(T: np.ndarray, Q: list[np.ndarray], k: int) -> np.ndarray:
    """chi[s] = <q_1..q^_k..q_n|psi> for every start s; shape (S, d_k)."""
    n = T.ndim
    if n == 1:
        return np.broadcast_to(T, (Q[0].shape[0],) + T.shape).astype(complex)
    S = n  # batch label
    ops: list = [T, list(range(n))]
    for j in range(n):
        if j != k:
            ops += [Q[j].conj(), [S, j]]
    return np.einsum(*ops, [S, k])


def _local_matrix_batch(R: np.ndarray, Q: list[np.ndarray], k: int) -> np.ndarray:
    """Effective local matrices for a density tensor R of shape dims + dims."""
    n = R.ndim // 2
    if n == 1:
        M = np.broadcast_to(R, (Q[0].shape[0],) + R.shape).astype(complex)
        return 0.5 * (M + M.conj().transpose(0, 2, 1))
    S = 2 * n
    ops: list = [R, list(range(2 * n))]
    for j in range(n):
        if j != k:
            ops += [Q[j].conj(), [S, j], Q[j], [S, n + j]]
    M = np.einsum(*ops, [S, k, n + k])
    return 0.5 * (M + M.conj().transpose(0, 2, 1))


def effective_local_matrix(rho, assignment: ProductAssignment, k: int) -> np.ndarray:
    """d_k x d_k matrix M with tr(M |q><q|) = overlap when party k holds q."""
    rho = density_from_pure(rho) if isinstance(rho, PureState) else rho
    if tuple(assignment.dims) != tuple(rho.dims):
        raise StateError(f"assignment dims {assignment.dims} do not match {rho.dims}")
    if not 0 <= k < rho.n:
        raise StateError(f"site {k} out of range")
    Q = [v[None, :] for v in assignment.locals]
    return _local_matrix_batch(rho.tensor(), Q, k)[0]


def _overlap_batch(target, Q: list[np.ndarray], pure: bool) -> np.ndarray:
    if pure:
        return np.abs(np.einsum(*_chi_ops(target, Q))) ** 2
    M = _local_matrix_batch(target, Q, 0)
    return np.einsum("si,sij,sj->s", Q[0].conj(), M, Q[0]).real


def _chi_ops(T: np.ndarray, Q: list[np.ndarray]) -> list:
    n = T.ndim
    ops: list = [T, list(range(n))]
    for j in range(n):
        ops += [Q[j].conj(), [n, j]]
    return ops + [[n]]


# --- starts -----------------------------------------------------------------


def initial_assignments(dims: tuple[int, ...], weights: np.ndarray, starts: int, seed: int):
    """Starting product states, as a list of (starts, d_k) arrays.

    The first block are computational-basis product states in order of
    decreasing weight (ties by index); the rest are Haar-random local states
    drawn from ``default_rng([seed, start_index])``.
    """
    D = int(np.prod(dims))
    n_basis = min(D, max(1, starts // 2))
    order = np.argsort(-np.round(weights, 14), kind="stable")[:n_basis]
    Q = [np.zeros((starts, d), dtype=complex) for d in dims]
    for s, flat in enumerate(order):
        for k, i in enumerate(np.unravel_index(flat, dims)):
            Q[k][s, i] = 1.0
    for s in range(n_basis, starts):
        rng = np.random.default_rng([seed, s])
        for k, d in enumerate(dims):
            z = rng.normal(size=d) + 1j * rng.normal(size=d)
            Q[k][s] = z / np.linalg.norm(z)
    return [_fix_phase(q) for q in Q]


# --- solver -----------------------------------------------------------------


def _ascend(target: np.ndarray, dims, pure: bool, weights, config: SolverConfig):
    n = len(dims)
    S = config.starts
    Q = initial_assignments(dims, weights, S, config.seed)
    value = _overlap_batch(target, Q, pure)
    traj = [[float(v)] for v in value]
    active = np.ones(S, dtype=bool)
    converged = np.zeros(S, dtype=bool)
    iters = np.zeros(S, dtype=int)
    for _ in range(config.max_iter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        Qa = [q[idx] for q in Q]
        for k in range(n):
            if pure:
                chi = _chi_batch(target, Qa, k)
                norm = np.linalg.norm(chi, axis=1)
                ok = norm > 0
                new = np.where(ok[:, None], chi / np.where(ok, norm, 1.0)[:, None], Qa[k])
                lam = norm**2
            else:
                M = _local_matrix_batch(target, Qa, k)
                lam, new = _top_eigen_batch(M)
                # an already-optimal local vector is kept (degenerate eigenvalues)
                cur = np.einsum("si,sij,sj->s", Qa[k].conj(), M, Qa[k]).real
                keep = cur >= lam - 1e-15 * np.maximum(np.abs(lam), 1.0)
                new = np.where(keep[:, None], Qa[k], new)
                lam = np.where(keep, cur, lam)
            Qa[k] = _fix_phase(new)
        for j, q in zip(range(n), Qa):
            Q[j][idx] = q
        iters[idx] += 1
        done = np.abs(lam - value[idx]) < config.tol
        value[idx] = lam
        for s, v in zip(idx, lam):
            traj[s].append(float(v))
        converged[idx[done]] = True
        active[idx[done]] = False
    return Q, value, traj, converged, iters


def _report(input_obj, Q, value, traj, converged, iters, config, method, is_measure):
    best_val = value.max()
    best = int(np.flatnonzero(value >= best_val - config.tol)[0])
    assignment = ProductAssignment(tuple(q[best] / np.linalg.norm(q[best]) for q in Q))
    p = min(1.0, overlap_with_product(input_obj, assignment))
    return PmaxReport(
        p_max=p,
        groverian=groverian_measure(p),
        best_assignment=assignment,
        converged=bool(converged.any()),
        iterations_used=int(iters[best]),
        per_start_values=[float(v) for v in value],
        trajectories=traj,
        per_start_converged=[bool(c) for c in converged],
        best_start=best,
        method=method,
        is_measure=is_measure,
    )


def alternating_pmax(input_obj: PureState | DensityOperator, config: SolverConfig | None = None) -> PmaxReport:
    """Multi-start alternating ascent for max tr(rho q1 x ... x qn)."""
    config = config or SolverConfig()
    if isinstance(input_obj, PureState):
        if not input_obj.is_normalized():
            raise StateError("state is not normalized")
        target = input_obj.tensor()
        weights = np.abs(input_obj.amps) ** 2
        pure = True
    elif isinstance(input_obj, DensityOperator):
        target = input_obj.tensor()
        weights = np.diag(input_obj.mat).real
        pure = False
    else:
        raise TypeError(f"expected PureState or DensityOperator, got {type(input_obj).__name__}")
    out = _ascend(target, input_obj.dims, pure, weights, config)
    return _report(input_obj, *out, config, "direct", is_measure=pure)


def pmax_via_reduced(state: PureState, k: int, config: SolverConfig | None = None) -> PmaxReport:
    """P_max of a pure state from its reduction with party ``k`` (0-based) traced out."""
    config = config or SolverConfig()
    if state.n < 2:
        raise StateError("need at least two parties to trace one out")
    if not 0 <= k < state.n:
        raise StateError(f"site {k} out of range for {state.n} parties")
    red = partial_trace(density_from_pure(state), [k])
    report = alternating_pmax(red, config)
    report.method = f"reduced:{k + 1}"
    report.is_measure = True
    return report


def complete_assignment(state: PureState, partial: ProductAssignment, k: int) -> ProductAssignment:
    """Insert the optimal local state for party ``k`` given the others."""
    Q = [v[None, :] for v in partial.locals]
    Q.insert(k, np.zeros((1, state.dims[k]), dtype=complex))
    chi = _chi_batch(state.tensor(), Q, k)
    nrm = np.linalg.norm(chi)
    if nrm == 0:
        chi = np.eye(state.dims[k])[:1]
        nrm = 1.0
    Q[k] = _fix_phase(chi / nrm)
    return ProductAssignment(tuple(q[0] for q in Q))


def solve(state: PureState | DensityOperator, config: SolverConfig | None = None) -> PmaxReport:
    """Dispatch on ``config.method``; ``auto`` is the direct path."""
    config = config or SolverConfig()
    kind, k = parse_method(config.method)
    if kind == "reduced":
        if not isinstance(state, PureState):
            raise StateError("the reduced path needs a pure input")
        return pmax_via_reduced(state, k, config)
    return alternating_pmax(state, config)
