"""Exact P_max for the W-type three-qubit families.

Two one-parameter families are covered,

    w3(k) ~ |100> + k|010> + k^2|001>
    w4(k) ~ |100> + k|010> + k^2|001> + k^3|111>

together with the general rule for a|100> + b|010> + c|001>: the answer is the
largest squared coefficient unless the coefficients form an acute triangle, in
which case it is the squared circumdiameter of that triangle.  The middle
branch of w4 is the squared circumdiameter of the cyclic quadrilateral with
the four coefficients as sides.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from numpy import cbrt

BOUNDARY_TOL = 1e-10


class Regime(str, enum.Enum):
    LARGEST_FIRST = "LargestFirst"
    CIRCUMCIRCLE = "Circumcircle"
    LARGEST_LAST = "LargestLast"


class RegimeError(ValueError):
    """Coefficients fall outside the circumcircle regime."""


@dataclass(frozen=True)
class FamilyCurvePoint:
    kappa: float
    p_max: float
    regime: Regime
    on_boundary: bool = False


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not kappa >= 0 or math.isnan(kappa):
        raise ValueError(f"kappa must be nonnegative, got {kappa!r}")
    return kappa


def w3_boundaries() -> tuple[float, float]:
    """Regime boundaries sqrt((sqrt5 -+ 1)/2) of the three-term family."""
    s5 = math.sqrt(5.0)
    return math.sqrt((s5 - 1) / 2), math.sqrt((s5 + 1) / 2)


def w4_boundaries() -> tuple[float, float]:
    """Regime boundaries (~0.685, ~1.460) of the four-term family."""
    r = math.sqrt(57.0)
    lo = math.sqrt(cbrt(18 * r + 134) - cbrt(18 * r - 134) - 1) / 3
    hi = math.sqrt(cbrt(46 + 6 * r) + cbrt(46 - 6 * r) + 1) / math.sqrt(3)
    return float(lo), float(hi)


def _point(kappa, p, lo, hi) -> FamilyCurvePoint:
    if kappa < lo:
        regime = Regime.LARGEST_FIRST
    elif kappa <= hi:
        regime = Regime.CIRCUMCIRCLE
    else:
        regime = Regime.LARGEST_LAST
    edge = abs(kappa - lo) <= BOUNDARY_TOL or abs(kappa - hi) <= BOUNDARY_TOL
    return FamilyCurvePoint(kappa, p, regime, edge)


def w3_pmax(kappa: float) -> FamilyCurvePoint:
    kappa = _check_kappa(kappa)
    lo, hi = w3_boundaries()
    k2 = kappa * kappa
    if kappa < lo:
        p = 1.0 / (1.0 + k2 + k2 * k2)
    elif kappa <= hi:
        n = 1.0 + k2 + k2 * k2
        p = 4.0 * k2**3 / (n * n * (3.0 * k2 - 1.0 - k2 * k2))
    else:
        u = 1.0 / k2
        p = 1.0 / (u * u + u + 1.0)
    return _point(kappa, p, lo, hi)


def w4_pmax(kappa: float) -> FamilyCurvePoint:
    kappa = _check_kappa(kappa)
    lo, hi = w4_boundaries()
    k2 = kappa * kappa
    if kappa < lo:
        p = 1.0 / (1.0 + k2 + k2**2 + k2**3)
    elif kappa <= hi:
        den = -1 + 2 * k2 + k2**2 + 12 * k2**3 + k2**4 + 2 * k2**5 - k2**6
        p = 8.0 * k2**3 / den
    else:
        u = 1.0 / k2
        p = 1.0 / (u**3 + u**2 + u + 1.0)
    return _point(kappa, p, lo, hi)


def _normalized(*coeffs: float) -> list[float]:
    if any(c < 0 or math.isnan(c) for c in coeffs):
        raise ValueError(f"coefficients must be nonnegative, got {coeffs}")
    norm = math.sqrt(sum(c * c for c in coeffs))
    if norm == 0:
        raise ValueError("coefficients are all zero")
    return [c / norm for c in coeffs]


def triangle_circumdiameter_sq(a: float, b: float, c: float) -> float:
    """(2R)^2 for the triangle with sides a, b, c; only acute triangles allowed."""
    s = sorted((a, b, c))
    if s[0] <= 0 or s[2] >= s[0] + s[1]:
        raise RegimeError(f"{(a, b, c)} is not a proper triangle; use the largest-coefficient rule")
    if s[2] ** 2 >= s[0] ** 2 + s[1] ** 2:
        raise RegimeError(f"{(a, b, c)} is not an acute triangle; use the largest-coefficient rule")
    a2, b2, c2 = a * a, b * b, c * c
    k16 = 2 * (a2 * b2 + b2 * c2 + c2 * a2) - (a2 * a2 + b2 * b2 + c2 * c2)
    return 4.0 * a2 * b2 * c2 / k16


def cyclic_quadrilateral_circumdiameter_sq(a: float, b: float, c: float, d: float) -> float:
    """(2R)^2 for the convex cyclic quadrilateral with sides a, b, c, d.

    Brahmagupta area plus Parameshvara's circumradius formula; the result does
    not depend on the order of the sides.
    """
    s = (a + b + c + d) / 2
    k2 = (s - a) * (s - b) * (s - c) * (s - d)
    if min(a, b, c, d) <= 0 or k2 <= 0:
        raise RegimeError(f"{(a, b, c, d)} does not close into a quadrilateral")
    return (a * b + c * d) * (a * c + b * d) * (a * d + b * c) / (4.0 * k2)


def wtype_general_pmax(a: float, b: float, c: float) -> float:
    """P_max of a|100> + b|010> + c|001> for nonnegative a, b, c."""
    a, b, c = _normalized(a, b, c)
    top = max(a, b, c) ** 2
    if top >= 0.5:
        return top
    return triangle_circumdiameter_sq(a, b, c)


def family_pmax(family: str, kappa: float) -> FamilyCurvePoint:
    if family == "w3":
        return w3_pmax(kappa)
    if family == "w4":
        return w4_pmax(kappa)
    raise ValueError(f"unknown family {family!r}")


_W_SUPPORT = (4, 2, 1)  # |100>, |010>, |001>
_W4_SUPPORT = (4, 2, 1, 7)  # ... plus |111>


def closed_form_for_state(state, tol: float = 1e-9) -> tuple[float, str]:
    """Exact P_max for a recognized three-qubit W-type input.

    Recognized are a|100> + b|010> + c|001> and the four-term family with
    magnitudes in ratio 1 : k : k^2 : k^3.  Relative phases on these supports
    are removable by local diagonal unitaries, so only magnitudes matter.
    Returns (p_max, label); raises ``ValueError`` for anything else.
    """
    if tuple(state.dims) != (2, 2, 2):
        raise ValueError("closed forms exist only for recognized three-qubit states")
    mag = np.abs(state.amps) / np.linalg.norm(state.amps)
    off = np.ones(8, dtype=bool)
    off[list(_W_SUPPORT)] = False
    if np.all(mag[off] <= tol):
        a, b, c = mag[list(_W_SUPPORT)]
        p = wtype_general_pmax(a, b, c)
        label = "wtype-largest" if max(a, b, c) ** 2 >= 0.5 else "wtype-circumcircle"
        return p, label
    off[7] = False
    if np.all(mag[off] <= tol) and mag[4] > tol:
        c0, c1, c2, c3 = mag[list(_W4_SUPPORT)]
        kappa = c1 / c0
        if abs(c2 - kappa**2 * c0) <= tol and abs(c3 - kappa**3 * c0) <= tol:
            point = w4_pmax(kappa)
            return point.p_max, f"w4-{point.regime.value}"
    raise ValueError("state is not a recognized W-type family member")
