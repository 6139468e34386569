"""Physical parameters, derived quantities, and the classical working point.

The system is a mechanical resonator coupled to a driven optical cavity
(radiation pressure) and a driven microwave LC cavity (capacitive coupling),
with a beam of degenerate three-level cascade atoms traversing the optical
cavity. The atoms enter at rate ``r_a`` and decay at rate ``kappa_a``; the
fluctuation dynamics sees them through the steady intracavity atom number
``r_a / kappa_a`` (a rate times a lifetime), which keeps every drift entry a
rate. Two atomic transition coherences act as additional quasi-modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .constants import C_LIGHT, HBAR, K_B
from .errors import ConvergenceError, ParameterError, SingularityError

# fields that may be exactly zero (undriven / atom-free configurations)
_NONNEGATIVE = ("power_c", "power_w", "g", "r_a")
# strictly positive structural scales
_POSITIVE = (
    "omega_m", "omega_w", "lambda_oc", "cavity_length", "plate_gap",
    "mu", "mass", "gamma_m", "kappa_c", "kappa_w", "kappa_a",
)
# may take any sign
_ANY_SIGN = ("delta_a1", "delta_a2", "delta_c", "delta_w")


@dataclass(frozen=True)
class SystemParameters:
    """All experimental knobs. Angular frequencies and rates in rad/s, SI otherwise.

    delta_c and delta_w are the EFFECTIVE cavity detunings (already including
    the static radiation-pressure shift); they are what the sweeps vary
    directly. Use solve_steady_state_bare to start from bare detunings instead.
    """

    omega_m: float          # mechanical angular frequency
    omega_w: float          # microwave cavity angular frequency
    lambda_oc: float        # optical drive wavelength, m
    cavity_length: float    # optical cavity length, m
    plate_gap: float        # capacitor plate spacing, m
    mu: float               # capacitance participation ratio
    mass: float             # effective mechanical mass, kg
    temperature: float      # bath temperature, K
    gamma_m: float          # mechanical damping rate
    kappa_c: float          # optical cavity decay rate
    kappa_w: float          # microwave cavity decay rate
    kappa_a: float          # atomic decay rate
    power_c: float          # optical drive power, W
    power_w: float          # microwave drive power, W
    g: float                # atom-cavity coupling rate
    r_a: float              # atom injection rate, 1/s
    rho_aa0: float          # initial top-level population
    rho_cc0: float          # initial bottom-level population
    rho_ca0: float          # initial two-photon coherence
    delta_a1: float         # upper-transition atomic detuning
    delta_a2: float         # lower-transition atomic detuning
    delta_c: float          # effective optical detuning
    delta_w: float          # effective microwave detuning

    def __post_init__(self) -> None:
        for name in _POSITIVE + _NONNEGATIVE + _ANY_SIGN + (
                "temperature", "rho_aa0", "rho_cc0", "rho_ca0"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")
        for name in _POSITIVE:
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be strictly positive")
        for name in _NONNEGATIVE:
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be nonnegative")
        if self.temperature < 0:
            raise ParameterError("temperature must be nonnegative")
        for name in ("rho_aa0", "rho_cc0"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ParameterError(f"{name} must lie in [0, 1]")
        # coherence bound; the common 0.5/0.5/0.5 operating point saturates it
        bound = math.sqrt(self.rho_aa0 * self.rho_cc0) + 1e-12
        if abs(self.rho_ca0) > bound:
            raise ParameterError(
                "rho_ca0 violates the coherence bound |rho_ca0| <= sqrt(rho_aa0*rho_cc0)")

    def replace(self, **changes) -> "SystemParameters":
        kw = {f.name: getattr(self, f.name) for f in fields(self)}
        kw.update(changes)
        return SystemParameters(**kw)


@dataclass(frozen=True)
class DerivedQuantities:
    omega_oc: float    # optical drive angular frequency, rad/s
    g_oc_bare: float   # bare optomechanical coupling per unit dimensionless position
    g_ow_bare: float   # bare electromechanical coupling per unit dimensionless position
    e_c: float         # optical drive amplitude
    e_w: float         # microwave drive amplitude
    n_mech: float      # mean thermal phonon number of the resonator
    n_w: float         # mean thermal microwave photon number


@dataclass(frozen=True)
class SteadyState:
    """Classical working point of the driven system."""

    q_s: float               # mean dimensionless resonator position
    p_s: float               # mean dimensionless resonator momentum (always 0)
    alpha_s: complex         # mean optical amplitude
    beta_s: complex          # mean microwave amplitude
    sigma_ba_s: complex      # mean upper-transition coherence
    sigma_cb_s: complex      # mean lower-transition coherence
    g_c: float               # effective drive-enhanced mechanics-optics coupling, >= 0
    g_w: float               # effective drive-enhanced mechanics-microwave coupling, >= 0


def thermal_occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation of a mode at angular frequency omega.

    Returns the exact zero-temperature limit 0.0 at temperature == 0 instead of
    dividing by infinity.
    """
    if omega <= 0:
        raise ParameterError("omega must be strictly positive")
    if temperature < 0:
        raise ParameterError("temperature must be nonnegative")
    if temperature == 0.0:
        return 0.0
    x = HBAR * omega / (K_B * temperature)
    if x > 40.0:
        # 1/(e^x - 1) = e^-x to double precision; also dodges exp overflow
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def effective_atom_number(params: SystemParameters) -> float:
    """Steady mean number of atoms inside the cavity: injection rate x lifetime."""
    return params.r_a / params.kappa_a


def drive_amplitudes(params: SystemParameters) -> tuple[float, float]:
    """Input-output drive amplitudes E_j = sqrt(2 P_j kappa_j / (hbar omega_drive_j)).

    The optical drive frequency is 2 pi c / lambda_oc; the microwave drive sits
    close enough to omega_w that omega_w is used inside the square root (the
    detuning correction is far below the other tolerances).
    """
    omega_oc = 2.0 * math.pi * C_LIGHT / params.lambda_oc
    e_c = math.sqrt(2.0 * params.power_c * params.kappa_c / (HBAR * omega_oc))
    e_w = math.sqrt(2.0 * params.power_w * params.kappa_w / (HBAR * params.omega_w))
    return e_c, e_w


def derive(params: SystemParameters) -> DerivedQuantities:
    omega_oc = 2.0 * math.pi * C_LIGHT / params.lambda_oc
    zpf = math.sqrt(HBAR / (params.mass * params.omega_m))
    e_c, e_w = drive_amplitudes(params)
    return DerivedQuantities(
        omega_oc=omega_oc,
        g_oc_bare=(omega_oc / params.cavity_length) * zpf,
        g_ow_bare=(params.mu * params.omega_w / (2.0 * params.plate_gap)) * zpf,
        e_c=e_c,
        e_w=e_w,
        n_mech=thermal_occupation(params.omega_m, params.temperature),
        n_w=thermal_occupation(params.omega_w, params.temperature),
    )


def _coherence_coefficients(params: SystemParameters) -> tuple[complex, complex]:
    """Linear-response coefficients of the two atomic coherences.

    sigma_ba_s = a_coef * alpha_s and sigma_cb_s = b_coef * alpha_s, with the
    atomic source strength given by the intracavity atom number.
    """
    n_atoms = effective_atom_number(params)
    a_coef = (1j * params.g * n_atoms * (params.rho_ca0 + params.rho_aa0)
              / (params.kappa_a + 1j * params.delta_a1))
    b_coef = (-1j * params.g * n_atoms * (params.rho_ca0 + params.rho_cc0)
              / (params.kappa_a - 1j * params.delta_a2))
    return a_coef, b_coef


def solve_steady_state(params: SystemParameters) -> SteadyState:
    """Closed-form working point at given effective detunings.

    The optical amplitude solves the linear self-consistency with the atomic
    coherences eliminated:
        alpha_s = e_c / (i delta_c + kappa_c + i g (a_coef + b_coef)).
    """
    der = derive(params)
    a_coef, b_coef = _coherence_coefficients(params)
    denom = 1j * params.delta_c + params.kappa_c + 1j * params.g * (a_coef + b_coef)
    if abs(denom) < 1e-30:
        raise SingularityError("optical response has a pole at these parameters")
    alpha_s = der.e_c / denom
    beta_s = der.e_w / (1j * params.delta_w + params.kappa_w)
    sigma_ba_s = a_coef * alpha_s
    sigma_cb_s = b_coef * alpha_s
    q_s = (der.g_oc_bare * abs(alpha_s) ** 2
           + der.g_ow_bare * abs(beta_s) ** 2) / params.omega_m
    return SteadyState(
        q_s=q_s,
        p_s=0.0,
        alpha_s=alpha_s,
        beta_s=beta_s,
        sigma_ba_s=sigma_ba_s,
        sigma_cb_s=sigma_cb_s,
        g_c=math.sqrt(2.0) * der.g_oc_bare * abs(alpha_s),
        g_w=math.sqrt(2.0) * der.g_ow_bare * abs(beta_s),
    )


def solve_steady_state_bare(
    params: SystemParameters,
    delta_oc: float,
    delta_ow: float,
    max_iter: int = 10_000,
    damping: float = 0.5,
) -> SteadyState:
    """Working point from BARE detunings via a damped fixed-point iteration.

    The effective detunings shift with the static displacement:
        delta_c = delta_oc - g_oc_bare * q_s,  delta_w = delta_ow - g_ow_bare * q_s,
    and q_s in turn depends on them. Iterates q until self-consistent.
    Raises ConvergenceError when the classical branch is bistable or runaway.
    """
    der = derive(params)
    q = 0.0
    for _ in range(max_iter):
        trial = params.replace(
            delta_c=delta_oc - der.g_oc_bare * q,
            delta_w=delta_ow - der.g_ow_bare * q,
        )
        ss = solve_steady_state(trial)
        if not math.isfinite(ss.q_s):
            raise ConvergenceError("classical branch diverged in bare-detuning mode")
        # converge two decades below the contract tolerance so that the
        # returned state is a fixed point of the effective-detuning solve
        if abs(ss.q_s - q) < 1e-12 * abs(ss.q_s) + 1e-14:
            return ss
        q = (1.0 - damping) * q + damping * ss.q_s
    raise ConvergenceError(
        f"bare-detuning fixed point did not converge in {max_iter} iterations "
        "(possible classical bistability)")
