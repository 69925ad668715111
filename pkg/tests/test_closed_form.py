from fractions import Fraction

import numpy as np
import pytest

from groverian.closed_form import (
    Regime,
    RegimeError,
    closed_form_for_state,
    cyclic_quadrilateral_circumdiameter_sq,
    triangle_circumdiameter_sq,
    w3_boundaries,
    w3_pmax,
    w4_boundaries,
    w4_pmax,
    wtype_general_pmax,
)
from groverian.oracle import grid_pmax
from groverian.solver import alternating_pmax
from groverian.states import PureState, apply_local, random_unitary, w3_state, w4_state, wtype_state

LOG_GRID = np.geomspace(0.05, 20, 80)


def _w3_middle_exact(k: Fraction) -> Fraction:
    n = 1 + k**2 + k**4
    return 4 * k**6 / (n**2 * (3 * k**2 - 1 - k**4))


def _w4_middle_exact(k: Fraction) -> Fraction:
    return 8 * k**6 / (-1 + 2 * k**2 + k**4 + 12 * k**6 + k**8 + 2 * k**10 - k**12)


def test_w3_examples():
    assert w3_pmax(0).p_max == 1
    assert w3_pmax(1).p_max == pytest.approx(float(_w3_middle_exact(Fraction(1))), abs=1e-15)
    assert float(_w3_middle_exact(Fraction(1))) == pytest.approx(4 / 9)
    assert w3_pmax(2).p_max == pytest.approx(16 / 21, abs=1e-15)
    assert w3_pmax(2).regime is Regime.LARGEST_LAST


def test_w3_boundaries():
    k1, k2 = w3_boundaries()
    assert k1**2 + k1**4 == pytest.approx(1, abs=1e-12)
    assert k2 == pytest.approx(1 / k1, abs=1e-12)
    assert k1 == pytest.approx(0.78615, abs=1e-5) and k2 == pytest.approx(1.27202, abs=1e-5)


@pytest.mark.parametrize("which", [0, 1])
def test_w3_boundary_value_is_one_half_from_both_sides(which):
    b = w3_boundaries()[which]
    inner = w3_pmax(b)
    outer = w3_pmax(np.nextafter(b, 0 if which == 0 else 10))
    assert inner.regime is Regime.CIRCUMCIRCLE and inner.on_boundary
    assert outer.regime is not Regime.CIRCUMCIRCLE
    assert abs(inner.p_max - 0.5) < 1e-10 and abs(outer.p_max - 0.5) < 1e-10


def test_w4_examples():
    assert w4_pmax(0).p_max == 1
    # kappa = 1 is the GHZ state in the X basis: (|+++> + |--->)/sqrt2
    assert w4_pmax(1).p_max == pytest.approx(float(_w4_middle_exact(Fraction(1))), abs=1e-15)
    assert float(_w4_middle_exact(Fraction(1))) == 0.5
    assert grid_pmax(w4_state(1.0)) == pytest.approx(0.5, abs=1e-9)
    assert w4_pmax(2).p_max == pytest.approx(64 / 85, abs=1e-15)


def test_w4_boundaries():
    b1, b2 = w4_boundaries()
    assert b1 == pytest.approx(0.685, abs=1e-3)
    assert b2 == pytest.approx(1.46, abs=1e-2)
    assert b2 == pytest.approx(1 / b1, abs=1e-10)


@pytest.mark.parametrize("family,bounds", [(w3_pmax, w3_boundaries), (w4_pmax, w4_boundaries)])
def test_branch_continuity(family, bounds):
    for b in bounds():
        left = family(np.nextafter(b, 0)).p_max
        right = family(np.nextafter(b, 10)).p_max
        assert abs(left - right) < 1e-10
        assert abs(family(b).p_max - left) < 1e-10


@pytest.mark.parametrize("family", [w3_pmax, w4_pmax])
def test_reciprocal_symmetry(family):
    for k in LOG_GRID:
        assert abs(family(k).p_max - family(1 / k).p_max) < 1e-12


@pytest.mark.parametrize("family", [w3_pmax, w4_pmax])
def test_never_below_quarter(family):
    assert min(family(k).p_max for k in LOG_GRID) >= 0.25


def test_large_kappa_limit():
    assert w3_pmax(1e9).p_max == pytest.approx(1)
    assert w4_pmax(1e9).p_max == pytest.approx(1)
    assert np.isfinite(w4_pmax(1e200).p_max)


@pytest.mark.parametrize("f", [w3_pmax, w4_pmax])
def test_negative_kappa(f):
    with pytest.raises(ValueError):
        f(-0.1)


def test_triangle_geometry_matches_w3_middle_branch():
    k1, k2 = w3_boundaries()
    for k in np.linspace(k1, k2, 41)[1:-1]:
        c = np.array([1, k, k * k]) / np.sqrt(1 + k * k + k**4)
        assert abs(triangle_circumdiameter_sq(*c) - w3_pmax(k).p_max) < 1e-12


def test_quadrilateral_geometry_matches_w4_middle_branch():
    b1, b2 = w4_boundaries()
    for k in np.linspace(b1, b2, 41):
        c = np.array([1, k, k**2, k**3]) / np.sqrt(1 + k**2 + k**4 + k**6)
        assert abs(cyclic_quadrilateral_circumdiameter_sq(*c) - w4_pmax(k).p_max) < 1e-12


def test_square_quadrilateral():
    assert cyclic_quadrilateral_circumdiameter_sq(0.5, 0.5, 0.5, 0.5) == pytest.approx(0.5)


def test_triangle_examples():
    s = 1 / np.sqrt(3)
    assert triangle_circumdiameter_sq(s, s, s) == pytest.approx(4 / 9, abs=1e-15)
    assert triangle_circumdiameter_sq(1, 1, 1) == pytest.approx(4 / 3)
    with pytest.raises(RegimeError, match="acute"):
        triangle_circumdiameter_sq(3, 4, 5)
    with pytest.raises(RegimeError):
        triangle_circumdiameter_sq(2, 1, 1)


def test_wtype_general_examples():
    assert wtype_general_pmax(1, 0, 0) == 1
    assert wtype_general_pmax(1, 1, 1) == pytest.approx(4 / 9)
    assert wtype_general_pmax(2, 1, 1) == pytest.approx(2 / 3)
    with pytest.raises(ValueError):
        wtype_general_pmax(-1, 1, 1)
    with pytest.raises(ValueError):
        wtype_general_pmax(0, 0, 0)


def test_wtype_general_against_solver(rng):
    for _ in range(25):
        a, b, c = rng.uniform(0, 1, size=3)
        assert abs(wtype_general_pmax(a, b, c) - alternating_pmax(wtype_state(a, b, c)).p_max) < 1e-8


def test_wtype_general_equals_w3_family():
    for k in LOG_GRID:
        assert abs(wtype_general_pmax(1, k, k * k) - w3_pmax(k).p_max) < 1e-12


def test_recognize_family_states(rng):
    p, label = closed_form_for_state(w3_state(1.0))
    assert p == pytest.approx(4 / 9) and label == "wtype-circumcircle"
    p, label = closed_form_for_state(w4_state(2.0))
    assert p == pytest.approx(64 / 85) and label == "w4-LargestLast"
    phased = apply_local(w4_state(0.9), [np.diag([1, np.exp(1j * t)]) for t in (0.3, 1.1, -2.0)])
    assert closed_form_for_state(phased)[0] == pytest.approx(w4_pmax(0.9).p_max)
    with pytest.raises(ValueError):
        closed_form_for_state(apply_local(w3_state(1.0), [random_unitary(2, rng)] * 3))
    with pytest.raises(ValueError):
        closed_form_for_state(PureState((2, 2), [1, 0, 0, 0]))
