"""Bipartite reduction of the covariance matrix and logarithmic negativity.

Conventions: vacuum quadrature variance 1/2 ([X, Y] = i), separability
threshold at smallest partially-transposed symplectic eigenvalue 1/2, and
natural-log entanglement units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalCovarianceError

#: discriminant of the symplectic eigenvalue may dip this far below zero
#: before it is treated as a broken state rather than roundoff
DISCRIMINANT_TOL = 1e-9


@dataclass(frozen=True)
class BipartitePair:
    """A pair of modes of the 10-mode system, as block offsets into the CM."""

    tag: str
    first: int   # row/col offset of the first mode's 2x2 block (0-based)
    second: int  # row/col offset of the second mode's 2x2 block


#: the five mode pairs the engine reports on: mechanics-optics,
#: mechanics-microwave, optics-microwave, and optics against each of the
#: two atomic transition quasi-modes
BIPARTITE_PAIRS: dict[str, BipartitePair] = {
    "mr_oc": BipartitePair("mr_oc", 0, 2),
    "mr_mc": BipartitePair("mr_mc", 0, 4),
    "oc_mc": BipartitePair("oc_mc", 2, 4),
    "oc_sba": BipartitePair("oc_sba", 2, 6),
    "oc_scb": BipartitePair("oc_scb", 2, 8),
}

#: pairs whose two members are genuine bosonic modes (present in the
#: atom-free reduction)
BOSONIC_PAIRS = ("mr_oc", "mr_mc", "oc_mc")


def normalize_pair_tag(tag: str) -> str:
    key = tag.strip().lower().replace("-", "_")
    if key not in BIPARTITE_PAIRS:
        raise KeyError(f"unknown mode pair {tag!r}; known: {', '.join(BIPARTITE_PAIRS)}")
    return key


def extract_bipartite(v: np.ndarray, pair: BipartitePair) -> np.ndarray:
    """4x4 covariance of one mode pair: drop the rows/columns of all others."""
    idx = [pair.first, pair.first + 1, pair.second, pair.second + 1]
    return v[np.ix_(idx, idx)].copy()


@dataclass(frozen=True)
class LogNegativity:
    e_n: float         # entanglement measure, >= 0
    eta_minus: float   # smallest symplectic eigenvalue of the partial transpose


def log_negativity(cm: np.ndarray) -> LogNegativity:
    """Logarithmic negativity of a two-mode Gaussian state.

    Uses the partial-transpose invariant sigma = det v1 + det v2 - 2 det vc,
    eta_minus = sqrt((sigma - sqrt(sigma^2 - 4 det cm)) / 2), and
    e_n = max(0, -ln(2 eta_minus)). A discriminant within -DISCRIMINANT_TOL of
    zero is clamped to zero (roundoff at degenerate symplectic spectra); beyond
    that the input is rejected as unphysical.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise UnphysicalCovarianceError(f"expected a 4x4 matrix, got {cm.shape}")
    v1 = cm[:2, :2]
    v2 = cm[2:, 2:]
    vc = cm[:2, 2:]
    sigma = np.linalg.det(v1) + np.linalg.det(v2) - 2.0 * np.linalg.det(vc)
    det_cm = np.linalg.det(cm)
    if det_cm < -DISCRIMINANT_TOL:
        raise UnphysicalCovarianceError(
            f"covariance determinant {det_cm:.3e} is negative; "
            "upstream state is unstable or corrupted")
    disc = sigma * sigma - 4.0 * det_cm
    if disc < 0.0:
        if disc < -DISCRIMINANT_TOL:
            raise UnphysicalCovarianceError(
                f"symplectic discriminant {disc:.3e} is strongly negative; "
                "upstream state is unstable or corrupted")
        disc = 0.0
    eta_sq = 0.5 * (sigma - math.sqrt(disc))
    if eta_sq <= 0.0:
        raise UnphysicalCovarianceError(
            f"partial transpose has non-positive symplectic eigenvalue "
            f"(eta^2 = {eta_sq:.3e})")
    eta_minus = math.sqrt(eta_sq)
    return LogNegativity(e_n=max(0.0, -math.log(2.0 * eta_minus)),
                         eta_minus=eta_minus)


def bosonic_block_determinants(v: np.ndarray) -> np.ndarray:
    """Determinants of the three bosonic single-mode reduced CMs.

    Each must be >= 1/4 for a physical state in the vacuum-variance-1/2
    convention. The atomic quasi-mode blocks are deliberately excluded: they
    are linearized transition coherences, not bosonic modes, so the bound does
    not apply to them.
    """
    return np.array([
        np.linalg.det(v[0:2, 0:2]),
        np.linalg.det(v[2:4, 2:4]),
        np.linalg.det(v[4:6, 4:6]),
    ])


def symmetry_defect(v: np.ndarray) -> float:
    """Largest absolute asymmetry of a covariance matrix."""
    return float(np.max(np.abs(v - v.T)))
