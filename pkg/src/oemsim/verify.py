"""Independent oracles used by the test suite.

Three routes to cross-check the production pipeline: a fixed-step time-domain
integration of the covariance flow, a brute-force vectorized Lyapunov solve,
and analytic two-mode Gaussian states with known entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, StabilityError
from .dynamics import is_stable


@dataclass(frozen=True)
class IntegrationConfig:
    """Fixed-step integration controls, in dimensionless time units."""

    dt: float = 1e-3      # time step
    t_max: float = 1000.0  # horizon (default 1e6 steps at the default dt)
    tol: float = 1e-12    # stationarity threshold on max|dV/dt|

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.t_max <= 0:
            raise ValueError("t_max must be positive")


def integrate_covariance(a: np.ndarray, d: np.ndarray,
                         cfg: IntegrationConfig | None = None) -> np.ndarray:
    """Integrate dV/dt = a V + V a^T + d from the vacuum until stationary.

    Classical fourth-order Runge-Kutta with a fixed step. The flow is linear
    in the stacked covariance, so one RK4 step is a fixed affine map; that map
    is precomputed once and each step costs two matrix-vector products. The
    stationary point of the exact flow is also the exact fixed point of the
    discrete map, so the step size only has to keep the iteration stable, not
    accurate. Raises ConvergenceError if max|dV/dt| has not dropped below
    cfg.tol by cfg.t_max.
    """
    cfg = cfg or IntegrationConfig()
    report = is_stable(a)
    if not report.stable:
        raise StabilityError(
            f"covariance flow requested for unstable drift (spectral abscissa "
            f"{report.max_real_part:.3e})")
    n = a.shape[0]
    lyap_op = np.kron(np.eye(n), a) + np.kron(a, np.eye(n))
    d_vec = d.reshape(-1)
    hk = cfg.dt * lyap_op
    hk2 = hk @ hk
    hk3 = hk2 @ hk
    # RK4 one-step map vec(V) -> step_op vec(V) + forcing
    eye = np.eye(n * n)
    step_op = eye + hk + hk2 / 2.0 + hk3 / 6.0 + (hk2 @ hk2) / 24.0
    forcing = cfg.dt * ((eye + hk / 2.0 + hk2 / 6.0 + hk3 / 24.0) @ d_vec)
    v = (0.5 * np.eye(n)).reshape(-1)
    steps = int(math.ceil(cfg.t_max / cfg.dt))
    for _ in range(steps):
        deriv = lyap_op @ v + d_vec
        if np.max(np.abs(deriv)) < cfg.tol:
            out = v.reshape(n, n)
            return 0.5 * (out + out.T)
        v = step_op @ v + forcing
    raise ConvergenceError(
        f"covariance flow not stationary within t_max = {cfg.t_max} "
        f"(tol = {cfg.tol})")


def make_tmsv(r: float, n_th: float = 0.0) -> np.ndarray:
    """4x4 covariance of a (symmetrically thermalized) two-mode squeezed state.

    Diagonal blocks (2 n_th + 1) cosh(2r)/2 I, off-diagonal block
    (2 n_th + 1) sinh(2r)/2 diag(1, -1). At n_th = 0 the smallest
    partially-transposed symplectic eigenvalue is exp(-2r)/2, so the
    logarithmic negativity is exactly 2r.
    """
    if r < 0:
        raise ValueError("squeezing parameter must be nonnegative")
    if n_th < 0:
        raise ValueError("thermal occupancy must be nonnegative")
    scale = 2.0 * n_th + 1.0
    ch = 0.5 * scale * math.cosh(2.0 * r)
    sh = 0.5 * scale * math.sinh(2.0 * r)
    cm = np.zeros((4, 4))
    cm[0, 0] = cm[1, 1] = cm[2, 2] = cm[3, 3] = ch
    cm[0, 2] = cm[2, 0] = sh
    cm[1, 3] = cm[3, 1] = -sh
    return cm


def lyapunov_bruteforce(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Reference Lyapunov solve by Kronecker vectorization.

    Stacks a V + V a^T = -d into an n^2 x n^2 dense linear system
    (I (x) a + a (x) I) vec(V) = -vec(d) and eliminates directly. Exact up to
    roundoff at this problem size; used as the independent reference against
    the production solver.
    """
    report = is_stable(a)
    if not report.stable:
        raise StabilityError(
            f"reference Lyapunov solve requires a stable drift (spectral "
            f"abscissa {report.max_real_part:.3e})")
    n = a.shape[0]
    eye = np.eye(n)
    op = np.kron(eye, a) + np.kron(a, eye)
    try:
        vec = np.linalg.solve(op, -d.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise StabilityError(
            f"vectorized Lyapunov system is singular (marginal stability): {exc}"
        ) from exc
    v = vec.reshape(n, n)
    return 0.5 * (v + v.T)
