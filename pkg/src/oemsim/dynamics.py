"""Linearized fluctuation dynamics: drift and diffusion assembly, stability
gate, and the steady-state covariance via the continuous Lyapunov equation.

Quadrature ordering of the 10-dimensional fluctuation vector:
    (q, p, X_c, Y_c, X_w, Y_w, X_a1, Y_a1, X_a2, Y_a2)
i.e. resonator position/momentum, optical cavity, microwave cavity, then the
two atomic transition coherences.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SimulationError, StabilityError
from .model import SteadyState, SystemParameters, effective_atom_number, thermal_occupation

#: strict-negativity guard on the spectral abscissa, relative to the rate scale
STABILITY_TOL = 1e-12
#: condition-number estimate above which solve_lyapunov warns
CONDITION_WARN = 1e12
#: relative residual bound enforced on every Lyapunov solve
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    max_real_part: float  # spectral abscissa, in the units of the input matrix


def build_drift(params: SystemParameters, ss: SteadyState,
                dimensionless: bool = True) -> np.ndarray:
    """Assemble the 10x10 drift matrix of the linearized dynamics.

    The atomic rows couple to the optical quadratures through g times the
    intracavity atom number; with equal populations and coherence the two
    position-like couplings cancel exactly. With dimensionless=True (the
    default used by all solvers) every entry is divided by omega_m, which the
    covariance solution is provably invariant under.
    """
    om = params.omega_m
    g = params.g
    n_atoms = effective_atom_number(params)
    a = np.zeros((10, 10))
    a[0, 1] = om
    a[1, 0] = -om
    a[1, 1] = -params.gamma_m
    a[1, 2] = ss.g_c
    a[1, 4] = ss.g_w
    a[2, 2] = -params.kappa_c
    a[2, 3] = params.delta_c
    a[2, 7] = g
    a[2, 9] = g
    a[3, 0] = ss.g_c
    a[3, 2] = -params.delta_c
    a[3, 3] = -params.kappa_c
    a[3, 6] = -g
    a[3, 8] = -g
    a[4, 4] = -params.kappa_w
    a[4, 5] = params.delta_w
    a[5, 0] = ss.g_w
    a[5, 4] = -params.delta_w
    a[5, 5] = -params.kappa_w
    # upper transition quasi-mode
    a[6, 3] = g * n_atoms * (params.rho_ca0 - params.rho_aa0)
    a[6, 6] = -params.kappa_a
    a[6, 7] = params.delta_a1
    a[7, 2] = g * n_atoms * (params.rho_ca0 + params.rho_aa0)
    a[7, 6] = -params.delta_a1
    a[7, 7] = -params.kappa_a
    # lower transition quasi-mode (opposite rotation sense)
    a[8, 3] = g * n_atoms * (params.rho_cc0 - params.rho_ca0)
    a[8, 8] = -params.kappa_a
    a[8, 9] = -params.delta_a2
    a[9, 2] = -g * n_atoms * (params.rho_cc0 + params.rho_ca0)
    a[9, 8] = params.delta_a2
    a[9, 9] = -params.kappa_a
    if dimensionless:
        a /= om
    return a


def build_diffusion(params: SystemParameters, dimensionless: bool = True) -> np.ndarray:
    """Diagonal noise-correlation matrix matching the drift's quadrature order.

    The mechanical and microwave channels carry thermal factors 2n+1; the
    optical and atomic channels are taken at zero thermal occupation (optical
    and atomic frequencies put their thermal factors at ~1 for any cryogenic
    temperature), so those entries are the bare decay rates.
    """
    n_mech = thermal_occupation(params.omega_m, params.temperature)
    n_w = thermal_occupation(params.omega_w, params.temperature)
    diag = np.array([
        0.0,
        params.gamma_m * (2.0 * n_mech + 1.0),
        params.kappa_c,
        params.kappa_c,
        params.kappa_w * (2.0 * n_w + 1.0),
        params.kappa_w * (2.0 * n_w + 1.0),
        params.kappa_a,
        params.kappa_a,
        params.kappa_a,
        params.kappa_a,
    ])
    if dimensionless:
        diag = diag / params.omega_m
    return np.diag(diag)


def is_stable(a: np.ndarray, scale: float = 1.0) -> StabilityReport:
    """Hurwitz gate: stable iff the spectral abscissa clears a strict guard.

    Marginal spectra (abscissa within -STABILITY_TOL*scale of zero) are
    reported unstable: the steady-state covariance is meaningless there.
    """
    if not np.all(np.isfinite(a)):
        raise SimulationError("drift matrix contains non-finite entries")
    try:
        eigvals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SimulationError(f"eigensolver failed on drift matrix: {exc}") from exc
    abscissa = float(np.max(eigvals.real))
    return StabilityReport(stable=abscissa < -STABILITY_TOL * scale,
                           max_real_part=abscissa)


def _condition_estimate(a: np.ndarray) -> float:
    """Condition estimate of the vectorized Lyapunov operator.

    Its eigenvalues are all pairwise sums of drift eigenvalues, so the ratio
    of extreme pair-sum magnitudes estimates the condition number without
    forming the n^2 x n^2 operator.
    """
    eigvals = np.linalg.eigvals(a)
    sums = np.abs(eigvals[:, None] + eigvals[None, :])
    smallest = float(np.min(sums))
    if smallest == 0.0:
        return np.inf
    return float(np.max(sums)) / smallest


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Steady-state covariance V solving a V + V a^T = -d for Hurwitz-stable a.

    Solved by the Bartels-Stewart algorithm; the result is symmetrized and the
    residual is checked against RESIDUAL_TOL relative to the problem scale.
    """
    report = is_stable(a)
    if not report.stable:
        raise StabilityError(
            f"drift matrix is not Hurwitz stable (spectral abscissa "
            f"{report.max_real_part:.3e}); no steady-state covariance exists")
    cond = _condition_estimate(a)
    if cond > CONDITION_WARN:
        warnings.warn(
            f"Lyapunov system is ill-conditioned (estimate {cond:.2e}); "
            "covariance entries may lose precision", RuntimeWarning, stacklevel=2)
    v = scipy.linalg.solve_continuous_lyapunov(a, -d)
    v = 0.5 * (v + v.T)
    residual = np.max(np.abs(a @ v + v @ a.T + d))
    bound = RESIDUAL_TOL * max(
        np.max(np.abs(a)) * np.max(np.abs(v)), np.max(np.abs(d)))
    if residual > bound:
        raise SimulationError(
            f"Lyapunov residual {residual:.3e} exceeds bound {bound:.3e}")
    return v
