"""Dense pure states, density operators and product assignments.

Basis ordering is party-1-most-significant: the amplitude of |i1 i2 ... in>
sits at flat index i1*(d2*...*dn) + i2*(d3*...*dn) + ... + in, which is what
``numpy.reshape`` with C order gives for ``amps.reshape(dims)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

NORM_TOL = 1e-12
HERM_TOL = 1e-12
PSD_TOL = 1e-10

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


class StateError(ValueError):
    """Invalid state, density operator or assignment."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 1:
        raise StateError("need at least one party")
    if any(d < 2 for d in dims):
        raise StateError(f"local dimensions must be >= 2, got {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class PureState:
    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        amps = np.asarray(self.amps, dtype=complex).ravel()
        if amps.size != int(np.prod(dims)):
            raise StateError(f"{amps.size} amplitudes do not match dims {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amps", _frozen(amps))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm**2 - 1.0) <= tol

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.amps.imag) <= 1e-15))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    dims: tuple[int, ...]
    mat: np.ndarray

    def __post_init__(self):
        dims = _check_dims(self.dims)
        mat = np.asarray(self.mat, dtype=complex)
        D = int(np.prod(dims))
        if mat.shape != (D, D):
            raise StateError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > HERM_TOL:
            raise StateError("density operator is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > HERM_TOL:
            raise StateError(f"density operator has trace {np.trace(mat).real!r}")
        if np.linalg.eigvalsh(mat).min() < -PSD_TOL:
            raise StateError("density operator is not positive semidefinite")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mat", _frozen(mat))

    @property
    def n(self) -> int:
        return len(self.dims)

    def tensor(self) -> np.ndarray:
        """Matrix reshaped to ``dims + dims`` (row indices first)."""
        return self.mat.reshape(self.dims + self.dims)

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


@dataclass(frozen=True, eq=False)
class ProductAssignment:
    locals: tuple[np.ndarray, ...]

    def __post_init__(self):
        vecs = tuple(_frozen(np.asarray(v, dtype=complex).ravel()) for v in self.locals)
        for v in vecs:
            if v.size < 2:
                raise StateError("local vectors need dimension >= 2")
            if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
                raise StateError("local vectors must have unit norm")
        object.__setattr__(self, "locals", vecs)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(v.size for v in self.locals)

    def ket(self) -> np.ndarray:
        return reduce(np.kron, self.locals)


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Real Pauli correlations g[a1..am] = tr(rho sigma_a1 x ... x sigma_am)."""

    order: int
    g: np.ndarray


def normalize(state: PureState) -> PureState:
    norm = np.linalg.norm(state.amps)
    if norm == 0.0 or not np.isfinite(norm):
        raise StateError("null state")
    return PureState(state.dims, state.amps / norm)


def density_from_pure(state: PureState, auto_normalize: bool = False) -> DensityOperator:
    if not state.is_normalized():
        if not auto_normalize:
            raise StateError("state is not normalized")
        state = normalize(state)
    a = state.amps
    return DensityOperator(state.dims, np.outer(a, a.conj()))


def _as_density(rho: DensityOperator | PureState) -> DensityOperator:
    return density_from_pure(rho) if isinstance(rho, PureState) else rho


def partial_trace(rho: DensityOperator, traced: Iterable[int]) -> DensityOperator:
    """Trace out the parties in ``traced`` (0-based indices)."""
    rho = _as_density(rho)
    n = rho.n
    traced = sorted(set(int(k) for k in traced))
    if any(k < 0 or k >= n for k in traced):
        raise StateError(f"party index out of range for {n} parties: {traced}")
    if len(traced) == n:
        raise StateError("cannot trace out every party")
    keep = [k for k in range(n) if k not in traced]
    t = rho.tensor()
    # einsum labels: row index k -> k, column index k -> n+k (or k if traced)
    rows = list(range(n))
    cols = [k if k in traced else n + k for k in range(n)]
    out = [k for k in keep] + [n + k for k in keep]
    red = np.einsum(t, rows + cols, out)
    kd = tuple(rho.dims[k] for k in keep)
    D = int(np.prod(kd))
    m = red.reshape(D, D)
    return DensityOperator(kd, 0.5 * (m + m.conj().T))


def reduced_state(state: PureState, keep: Iterable[int]) -> DensityOperator:
    """Reduced density operator of ``state`` on the parties ``keep``."""
    keep = set(keep)
    return partial_trace(density_from_pure(state), [k for k in range(state.n) if k not in keep])


def overlap_with_product(rho: DensityOperator | PureState, assignment: ProductAssignment) -> float:
    """tr(rho |q1..qn><q1..qn|)."""
    if tuple(assignment.dims) != tuple(rho.dims):
        raise StateError(f"assignment dims {assignment.dims} do not match {rho.dims}")
    q = assignment.ket()
    if isinstance(rho, PureState):
        return float(abs(np.vdot(q, rho.amps)) ** 2)
    return float(np.real(np.vdot(q, rho.mat @ q)))


def correlation_tensor(rho: DensityOperator, order: int | None = None) -> CorrelationTensor:
    rho = _as_density(rho)
    m = rho.n if order is None else int(order)
    if m != rho.n:
        raise StateError(f"operator spans {rho.n} parties, not {m}")
    if any(d != 2 for d in rho.dims):
        raise StateError("correlation tensors are defined for qubits only")
    g = np.empty((3,) * m)
    for idx in product(range(3), repeat=m):
        op = reduce(np.kron, (PAULI[a] for a in idx))
        g[idx] = np.real(np.trace(rho.mat @ op))
    return CorrelationTensor(m, g)


# --- state generators -------------------------------------------------------


def basis_state(indices: Sequence[int], dims: Sequence[int] | None = None) -> PureState:
    dims = tuple(dims) if dims is not None else (2,) * len(indices)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[np.ravel_multi_index(tuple(indices), dims)] = 1.0
    return PureState(dims, amps)


def bell_state() -> PureState:
    return PureState((2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2))


def ghz_state(n: int = 3) -> PureState:
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return PureState((2,) * n, amps)


def wtype_state(a: float, b: float, c: float) -> PureState:
    """a|100> + b|010> + c|001>, normalized."""
    amps = np.zeros(8, dtype=complex)
    amps[[4, 2, 1]] = a, b, c
    return normalize(PureState((2, 2, 2), amps))


def w3_state(kappa: float) -> PureState:
    return wtype_state(1.0, kappa, kappa**2)


def w4_state(kappa: float) -> PureState:
    """|100> + k|010> + k^2|001> + k^3|111>, normalized."""
    amps = np.zeros(8, dtype=complex)
    amps[[4, 2, 1, 7]] = 1.0, kappa, kappa**2, kappa**3
    return normalize(PureState((2, 2, 2), amps))


def random_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    D = int(np.prod(dims))
    z = rng.normal(size=D) + 1j * rng.normal(size=D)
    return PureState(tuple(dims), z / np.linalg.norm(z))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar unitary from QR of a complex Ginibre matrix, phases fixed by diag(R)."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def apply_local(state: PureState, unitaries: Sequence[np.ndarray]) -> PureState:
    t = state.tensor()
    for k, u in enumerate(unitaries):
        t = np.moveaxis(np.tensordot(u, t, axes=(1, k)), 0, k)
    return PureState(state.dims, t.ravel())


# --- state file I/O ---------------------------------------------------------


def state_to_json(state: PureState) -> str:
    # + 0.0 turns -0.0 into 0.0
    amps = [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in state.amps]
    return json.dumps({"dims": list(state.dims), "amps": amps})


def state_from_json(text: str) -> PureState:
    try:
        doc = json.loads(text)
        dims = [int(d) for d in doc["dims"]]
        amps = np.array([complex(float(re), float(im)) for re, im in doc["amps"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise StateError(f"malformed state file: {exc}") from exc
    return PureState(tuple(dims), amps)


def load_state(path: str | Path) -> PureState:
    return state_from_json(Path(path).read_text())


def save_state(state: PureState, path: str | Path) -> None:
    Path(path).write_text(state_to_json(state) + "\n")
