import numpy as np
import pytest

from groverian.oracle import GridConfig, OracleUnsupported, grid_pmax, grid_search
from groverian.solver import alternating_pmax
from groverian.states import PureState, basis_state, bell_state, ghz_state, random_state, w3_state


def test_bell():
    assert grid_pmax(bell_state()) == pytest.approx(0.5, abs=1e-6)


def test_product():
    assert grid_pmax(basis_state([0, 0, 0])) == pytest.approx(1, abs=1e-9)


def test_w():
    assert grid_pmax(w3_state(1.0)) == pytest.approx(4 / 9, abs=1e-6)


def test_never_exceeds_solver(rng):
    for n in (2, 3, 4):
        for _ in range(4):
            psi = random_state((2,) * n, rng)
            cfg = GridConfig(theta_steps=20, phi_steps=10) if n == 4 else GridConfig()
            assert grid_pmax(psi, cfg) <= alternating_pmax(psi).p_max + 1e-9


def test_refinement_is_monotone(rng):
    res = grid_search(random_state((2, 2, 2), rng))
    assert all(b >= a for a, b in zip(res.round_values, res.round_values[1:]))
    assert len(res.round_values) == 4


def test_refined_complex_state_is_accurate(rng):
    psi = random_state((2, 2, 2), rng)
    assert abs(grid_pmax(psi) - alternating_pmax(psi).p_max) < 1e-6


def test_real_and_phase_paths_agree(rng):
    z = rng.normal(size=8)
    psi = PureState((2, 2, 2), z / np.linalg.norm(z))
    fast = grid_pmax(psi)
    full = grid_pmax(psi, GridConfig(phi_steps=30))
    assert abs(fast - full) < 1e-6


def test_angles_stay_in_domain(rng):
    res = grid_search(random_state((2, 2, 2), rng))
    assert np.all((res.thetas >= 0) & (res.thetas < np.pi))
    assert np.all((res.phis >= 0) & (res.phis < 2 * np.pi))


def test_unsupported_inputs():
    with pytest.raises(OracleUnsupported):
        grid_pmax(ghz_state(5))
    with pytest.raises(OracleUnsupported):
        grid_pmax(PureState((3, 3), np.eye(3).ravel() / np.sqrt(3)))


def test_config_validation():
    with pytest.raises(ValueError):
        GridConfig(theta_steps=1)
