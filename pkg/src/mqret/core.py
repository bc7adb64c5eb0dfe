"""Physical constants and small vector/dyadic helpers (SI units throughout).

Lengths entered in units of the donor transition wavelength are converted to
meters at configuration load; everything below that layer is plain SI double
precision.
"""

import numpy as np
import scipy.constants as const

C = const.c
MU0 = const.mu_0
EPS0 = 1.0 / (MU0 * C**2)  # pinned so that EPS0 * MU0 * C**2 == 1 exactly
HBAR = const.hbar
DEBYE = 1e-21 / C  # 1 Debye in C*m

TINY = 1e-300

IDENTITY = np.eye(3)


class GeometryError(ValueError):
    """Degenerate or inadmissible body geometry."""


class QuadratureError(RuntimeError):
    """Quadrature failed to reach the requested tolerance.

    Carries the achieved relative error estimate in ``estimate``.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


def vec3(x, y, z):
    """Real position vector in meters."""
    v = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def cvec3(x, y, z):
    """Complex 3-vector (e.g. dipole moments in C*m)."""
    v = np.array([x, y, z], dtype=complex)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector components must be finite")
    return v


def outer(a, b):
    """Dyadic product (a ⊗ b)_ij = a_i b_j."""
    return np.outer(np.asarray(a), np.asarray(b))


def frobenius(a):
    return float(np.linalg.norm(np.asarray(a)))


def dyadic_reciprocity_defect(g_ab, g_ba):
    """Relative Frobenius defect of the reciprocity relation G_ab = G_ba^T."""
    return frobenius(np.asarray(g_ab) - np.asarray(g_ba).T) / max(
        frobenius(g_ab), TINY
    )


def wavelength(omega):
    if omega <= 0:
        raise ValueError("angular frequency must be positive")
    return 2.0 * np.pi * C / omega


def angular_frequency(lam):
    if lam <= 0:
        raise ValueError("wavelength must be positive")
    return 2.0 * np.pi * C / lam
