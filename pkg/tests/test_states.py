import numpy as np
import pytest
from hypothesis import given, strategies as st

from groverian.states import (
    DensityOperator,
    ProductAssignment,
    PureState,
    StateError,
    basis_state,
    bell_state,
    correlation_tensor,
    density_from_pure,
    ghz_state,
    normalize,
    overlap_with_product,
    partial_trace,
    random_state,
    reduced_state,
    state_from_json,
    state_to_json,
    w3_state,
    PAULI,
)

ket0 = np.array([1, 0])
ket1 = np.array([0, 1])


def test_normalize_uniform():
    s = normalize(PureState((3,), [1, 1, 1]))
    assert np.allclose(s.amps, 1 / np.sqrt(3), atol=1e-15)


def test_normalize_w_kappa_one():
    assert np.allclose(w3_state(1.0).amps[[4, 2, 1]], 1 / np.sqrt(3))


def test_normalize_null_state():
    with pytest.raises(StateError, match="null state"):
        normalize(PureState((2, 2), np.zeros(4)))


@pytest.mark.parametrize("dims", [(1, 2), ()])
def test_bad_dims(dims):
    with pytest.raises(StateError):
        PureState(dims, np.ones(2))


def test_basis_order_party_one_most_significant():
    # |01> of a qubit-qutrit pair sits at 0*3 + 1
    s = basis_state([0, 1], dims=(2, 3))
    assert s.amps[1] == 1
    s = basis_state([1, 0, 0])
    assert s.amps[4] == 1


def test_density_of_basis_and_bell():
    assert np.allclose(density_from_pure(basis_state([0], (2,))).mat, [[1, 0], [0, 0]])
    m = density_from_pure(bell_state()).mat
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    assert np.allclose(m, expected, atol=1e-15)


def test_density_rejects_unnormalized_by_default():
    s = PureState((2,), [1, 1])
    with pytest.raises(StateError):
        density_from_pure(s)
    assert np.isclose(np.trace(density_from_pure(s, auto_normalize=True).mat), 1)


def test_partial_trace_examples():
    assert np.allclose(partial_trace(density_from_pure(bell_state()), [1]).mat, np.eye(2) / 2)
    red = partial_trace(density_from_pure(ghz_state(3)), [2]).mat
    assert np.allclose(red, np.diag([0.5, 0, 0, 0.5]))
    red = partial_trace(density_from_pure(basis_state([0, 1])), [0]).mat
    assert np.allclose(red, [[0, 0], [0, 1]])


def test_partial_trace_all_parties_is_error():
    with pytest.raises(StateError):
        partial_trace(density_from_pure(bell_state()), [0, 1])


def test_density_operator_validation():
    with pytest.raises(StateError):
        DensityOperator((2,), np.array([[1, 1], [0, 0]]))
    with pytest.raises(StateError):
        DensityOperator((2,), np.diag([1.5, -0.5]))
    with pytest.raises(StateError):
        DensityOperator((2,), np.eye(2))


def test_reductions_are_valid_density_operators(rng):
    for _ in range(200):
        n = int(rng.integers(2, 5))
        psi = random_state((2,) * n, rng)
        keep = sorted(rng.choice(n, size=int(rng.integers(1, n)), replace=False))
        red = reduced_state(psi, keep)
        assert abs(np.trace(red.mat).real - 1) < 1e-12
        assert np.max(np.abs(red.mat - red.mat.conj().T)) < 1e-12
        assert np.linalg.eigvalsh(red.mat).min() >= -1e-10


def test_partial_trace_consistent_with_observables(rng):
    for _ in range(20):
        psi = random_state((2, 3), rng)
        rho = density_from_pure(psi)
        X = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        X = X + X.conj().T
        lhs = np.trace(rho.mat @ np.kron(X, np.eye(3)))
        rhs = np.trace(partial_trace(rho, [1]).mat @ X)
        assert abs(lhs - rhs) < 1e-10


def test_sequential_equals_joint_tracing(rng):
    psi = random_state((2, 2, 2, 2), rng)
    rho = density_from_pure(psi)
    seq = partial_trace(partial_trace(rho, [0]), [0])  # party 2 is index 0 after the first trace
    joint = partial_trace(rho, [0, 1])
    assert np.max(np.abs(seq.mat - joint.mat)) < 1e-12


def test_overlap_examples():
    rho00 = density_from_pure(basis_state([0, 0]))
    bell = density_from_pure(bell_state())
    assert overlap_with_product(rho00, ProductAssignment((ket0, ket0))) == pytest.approx(1)
    assert overlap_with_product(bell, ProductAssignment((ket0, ket0))) == pytest.approx(0.5, abs=1e-15)
    assert overlap_with_product(bell, ProductAssignment((ket0, ket1))) == pytest.approx(0, abs=1e-15)
    with pytest.raises(StateError):
        overlap_with_product(bell, ProductAssignment((ket0,)))


def test_overlap_pure_and_density_agree(rng):
    psi = random_state((2, 3, 2), rng)
    q = ProductAssignment(tuple(random_state((d,), rng).amps for d in psi.dims))
    assert abs(overlap_with_product(psi, q) - overlap_with_product(density_from_pure(psi), q)) < 1e-14


def test_product_assignment_needs_unit_vectors():
    with pytest.raises(StateError):
        ProductAssignment((np.array([1, 1]),))


def test_correlation_tensor_examples():
    assert np.allclose(correlation_tensor(DensityOperator((2,), np.eye(2) / 2)).g, 0)
    g = correlation_tensor(density_from_pure(bell_state())).g
    # <XX> = 1, <YY> = -1, <ZZ> = 1 computed by hand for (|00> + |11>)/sqrt2
    assert np.allclose(g, np.diag([1, -1, 1]), atol=1e-15)
    ghz1 = reduced_state(ghz_state(3), [0])
    assert np.allclose(correlation_tensor(ghz1, 1).g, 0)


def test_correlation_tensor_rejects_qutrits():
    with pytest.raises(StateError):
        correlation_tensor(DensityOperator((3,), np.eye(3) / 3))


@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_single_qubit_bloch_reconstruction(xs):
    z = np.array(xs[:3]) + 1j * np.array(xs[3:])
    if np.linalg.norm(z[:2]) < 1e-3:
        return
    v = z[:2] / np.linalg.norm(z[:2])
    rho = DensityOperator((2,), 0.5 * np.outer(v, v.conj()) + 0.25 * np.eye(2))
    g = correlation_tensor(rho, 1).g
    rebuilt = 0.5 * (np.eye(2) + np.tensordot(g, PAULI, axes=1))
    assert np.allclose(rebuilt, rho.mat, atol=1e-12)
    assert np.all(np.abs(g) <= 1 + 1e-10)


def test_json_round_trip(rng):
    psi = random_state((2, 3), rng)
    back = state_from_json(state_to_json(psi))
    assert back.dims == psi.dims
    assert np.allclose(back.amps, psi.amps, rtol=1e-15, atol=0)


@pytest.mark.parametrize("text", ["{", '{"dims": [2]}', '{"dims": [2], "amps": [[1, 0]]}', '{"dims": [2], "amps": [1, 0]}'])
def test_json_malformed(text):
    with pytest.raises(StateError):
        state_from_json(text)
