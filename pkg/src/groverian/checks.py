"""Sampled invariant batteries run by ``groverian check``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import check_reduced_inequality, lower_bound
from .solver import SolverConfig, alternating_pmax, pmax_via_reduced
from .states import apply_local, random_state, random_unitary

PATH_TOL = 1e-8
LU_TOL = 1e-8
BOUND_SLACK = 1e-9
STRICT_MARGIN = 1e-6


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.detail} (worst {self.worst:.6g})"


def _rng(seed: int, tag: str) -> np.random.Generator:
    # one independent stream per battery, stable under adding batteries
    return np.random.default_rng([seed, sum(tag.encode())])


def lower_bound_battery(samples: int, seed: int, config: SolverConfig) -> list[CheckResult]:
    out = []
    for n in (2, 3, 4, 5):
        rng = _rng(seed, f"bound{n}")
        gaps = [
            alternating_pmax(random_state((2,) * n, rng), config).p_max - lower_bound(n)
            for _ in range(samples)
        ]
        worst = min(gaps)
        out.append(CheckResult(f"lower_bound[n={n}]", worst >= -BOUND_SLACK, worst,
                               f"min P_max - 2^(1-n) = {worst:.3e}"))
        if n >= 3:
            out.append(CheckResult(f"strict_bound[n={n}]", worst > STRICT_MARGIN, worst,
                                   f"every sample above the bound by > {STRICT_MARGIN:g}"))
    return out


def reduced_inequality_battery(samples: int, seed: int, config: SolverConfig) -> list[CheckResult]:
    out = []
    for n in (3, 4):
        rng = _rng(seed, f"pure-red{n}")
        worst = np.inf
        for _ in range(samples):
            psi = random_state((2,) * n, rng)
            p = alternating_pmax(psi, config).p_max
            for m in range(1, n):
                for subset in itertools.combinations(range(n), m):
                    chk = check_reduced_inequality(psi, subset, config, p_max=p)
                    worst = min(worst, chk.lhs - chk.rhs)
        out.append(CheckResult(f"reduced_inequality[n={n}]", worst >= -BOUND_SLACK, worst,
                               f"min lhs - rhs over all subsets = {worst:.3e}"))
    return out


def reduced_path_battery(samples: int, seed: int, config: SolverConfig) -> list[CheckResult]:
    out = []
    for n in (3, 4):
        rng = _rng(seed, f"reduced-path{n}")
        worst = 0.0
        for _ in range(samples):
            psi = random_state((2,) * n, rng)
            p = alternating_pmax(psi, config).p_max
            for k in range(n):
                worst = max(worst, abs(p - pmax_via_reduced(psi, k, config).p_max))
        out.append(CheckResult(f"reduced_path_agreement[n={n}]", worst < PATH_TOL, worst,
                               f"max |direct - reduced(k)| = {worst:.3e}"))
    return out


def lu_battery(samples: int, seed: int, config: SolverConfig) -> list[CheckResult]:
    rng = _rng(seed, "lu")
    worst = 0.0
    for _ in range(samples):
        psi = random_state((2, 2, 2), rng)
        us = [random_unitary(2, rng) for _ in range(3)]
        a = alternating_pmax(psi, config).p_max
        b = alternating_pmax(apply_local(psi, us), config).p_max
        worst = max(worst, abs(a - b))
    return [CheckResult("lu_invariance[n=3]", worst < LU_TOL, worst, f"max |dP_max| = {worst:.3e}")]


SUITES: dict[str, tuple[int, list[Callable]]] = {
    "bounds": (100, [lower_bound_battery, reduced_inequality_battery]),
    "lu": (25, [lu_battery]),
    "theorem1": (50, [reduced_path_battery]),
}


def run_suite(name: str, samples: int | None, seed: int, config: SolverConfig) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        default, batteries = SUITES[suite]
        for battery in batteries:
            results += battery(samples if samples is not None else default, seed, config)
    return results
