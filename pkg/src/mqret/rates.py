"""Resonance energy transfer rates.

Oriented matrix elements and the master three-body rate, the isotropically
averaged rate, the colinear near/far-zone closed form, and the two-body
reference formulas used for normalization and consistency checks.

The "limits" method assembles the coupling tensor from the quasi-static
(phase-free) near-zone tensor on the donor-acceptor leg and the far-zone
tensors on both mediator legs, matching the approximation scheme behind the
closed-form colinear rate. The "exact"/"auto" methods use the closed-form
bulk tensor plus the image or Sommerfeld scattering tensor.
"""

from dataclasses import dataclass

import numpy as np

from .core import C, HBAR, MU0, EPS0, TINY, GeometryError, wavelength
from .greens import (
    Environment,
    HalfSpace,
    PerfectMirror,
    Vacuum,
    green_bulk,
    green_scatter,
    limit_reflection,
)
from .media import polarizability

MIN_SEPARATION_WAVELENGTHS = 1e-4


@dataclass(frozen=True)
class Dipole:
    position: np.ndarray      # m
    moment: np.ndarray        # complex, C*m
    role: str | None = None   # "donor" | "acceptor"

    def __post_init__(self):
        if np.linalg.norm(self.moment) == 0.0:
            raise ValueError("dipole moment must be non-zero")


@dataclass(frozen=True)
class Mediator:
    position: np.ndarray
    polarizability: object    # media polarizability model


@dataclass(frozen=True)
class RateResult:
    gamma: float                       # 1/s
    gamma_normalized: float            # Gamma / Gamma_0
    matrix_element_direct: complex | None = None
    matrix_element_indirect: complex | None = None
    error_estimate: float = 0.0


def _check_geometry(positions, omega):
    lam = wavelength(omega)
    pos = [np.asarray(p, dtype=float) for p in positions]
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if np.linalg.norm(pos[i] - pos[j]) < MIN_SEPARATION_WAVELENGTHS * lam:
                raise GeometryError(
                    "pairwise separation below the dipole-approximation guard "
                    f"({MIN_SEPARATION_WAVELENGTHS} wavelengths)"
                )


def _check_heights(env, positions):
    if isinstance(env, (HalfSpace, PerfectMirror)):
        for p in positions:
            if np.asarray(p)[2] <= 0.0:
                raise GeometryError("all bodies must satisfy z > 0 near a surface")


def _green(env, r, r_prime, omega, method="auto", rtol=1e-9,
           include_phase=True):
    """Total tensor with a propagated quadrature error estimate."""
    gb = green_bulk(r, r_prime, omega, method=method, include_phase=include_phase)
    gs, err = green_scatter(env, r, r_prime, omega, method=method, rtol=rtol)
    return gb + gs, err


# --- oriented pipeline -------------------------------------------------------

def matrix_element_direct(donor, acceptor, env, omega, method="auto", rtol=1e-9):
    """Direct matrix element mu0 w^2 d_A* . G(r_A, r_D) . d_D (J)."""
    _check_geometry([donor.position, acceptor.position], omega)
    _check_heights(env, [donor.position, acceptor.position])
    g, _ = _green(env, acceptor.position, donor.position, omega,
                  method=method, rtol=rtol)
    return MU0 * omega**2 * (np.conj(acceptor.moment) @ g @ donor.moment)


def matrix_element_indirect(donor, acceptor, mediator, env, omega,
                            method="auto", rtol=1e-9):
    """Mediated matrix element -mu0^2 w^4 d_A* . G alpha G . d_D (J)."""
    _check_geometry([donor.position, acceptor.position, mediator.position], omega)
    _check_heights(env, [donor.position, acceptor.position, mediator.position])
    alpha = polarizability(mediator.polarizability, omega / C)
    g_am, _ = _green(env, acceptor.position, mediator.position, omega,
                     method=method, rtol=rtol)
    g_md, _ = _green(env, mediator.position, donor.position, omega,
                     method=method, rtol=rtol)
    return -(MU0**2) * omega**4 * alpha * (
        np.conj(acceptor.moment) @ (g_am @ g_md) @ donor.moment
    )


def rate_oriented(donor, acceptor, env, omega, mediator=None, method="auto",
                  rtol=1e-9, include_phase=True):
    """Oriented transfer rate from Fermi's golden rule.

    Gamma = (2 pi mu0^2 w^4 / hbar) |d_A* . [G_AD + mu0 w^2 alpha G_AM G_MD]
    . d_D|^2; with no mediator this is the two-body rate. Normalization is
    against the mediator-free rate computed through the same method.
    """
    positions = [donor.position, acceptor.position]
    if mediator is not None:
        positions.append(mediator.position)
    _check_geometry(positions, omega)
    _check_heights(env, positions)

    g_ad, e1 = _green(env, acceptor.position, donor.position, omega,
                      method=method, rtol=rtol, include_phase=include_phase)
    bracket = g_ad
    err = e1
    m_indirect = None
    if mediator is not None:
        alpha = polarizability(mediator.polarizability, omega / C)
        g_am, e2 = _green(env, acceptor.position, mediator.position, omega,
                          method=method, rtol=rtol)
        g_md, e3 = _green(env, mediator.position, donor.position, omega,
                          method=method, rtol=rtol)
        bracket = bracket + MU0 * omega**2 * alpha * (g_am @ g_md)
        err = err + e2 + e3
        m_indirect = -(MU0**2) * omega**4 * alpha * (
            np.conj(acceptor.moment) @ (g_am @ g_md) @ donor.moment
        )

    amp = np.conj(acceptor.moment) @ bracket @ donor.moment
    pref = 2.0 * np.pi * MU0**2 * omega**4 / HBAR
    gamma = pref * abs(amp) ** 2
    amp0 = np.conj(acceptor.moment) @ g_ad @ donor.moment
    gamma0_val = pref * abs(amp0) ** 2
    return RateResult(
        gamma=float(gamma),
        gamma_normalized=float(gamma / max(gamma0_val, TINY)),
        matrix_element_direct=complex(MU0 * omega**2 * amp0),
        matrix_element_indirect=m_indirect,
        error_estimate=float(err),
    )


# --- isotropic pipeline ------------------------------------------------------

def coupling_tensor_F(r_a, r_m, r_d, env, omega, alpha, method="auto",
                      rtol=1e-9):
    """Coupling tensor F = G(r_A, r_D) + mu0 alpha w^2 G(r_A, r_M) G(r_M, r_D).

    ``method`` "limits" uses the phase-free near-zone tensor for the direct
    leg and the far-zone tensors for both mediator legs; "exact"/"auto" uses
    the full tensors. Returns ``(F, error_estimate)``. Pass ``r_m=None`` or
    ``alpha=0`` for the mediator-free tensor.
    """
    if method == "limits":
        direct_method, leg_method, phase = "nr", "r", False
    elif method in ("auto", "exact", "nr", "r"):
        direct_method = leg_method = method
        phase = True
    else:
        raise ValueError(f"unknown method {method!r}")

    f, err = _green(env, r_a, r_d, omega, method=direct_method, rtol=rtol,
                    include_phase=phase)
    if r_m is not None and alpha != 0.0:
        g_am, e2 = _green(env, r_a, r_m, omega, method=leg_method, rtol=rtol)
        g_md, e3 = _green(env, r_m, r_d, omega, method=leg_method, rtol=rtol)
        f = f + MU0 * alpha * omega**2 * (g_am @ g_md)
        err = err + e2 + e3
    return f, err


def rate_isotropic(d_donor, d_acceptor, r_donor, r_acceptor, env, omega,
                   mediator=None, method="auto", rtol=1e-9):
    """Isotropically averaged transfer rate.

    ``d_donor`` and ``d_acceptor`` are dipole magnitudes (C*m); the averaging
    rule consumes |d|^2 only. Gamma = (2 pi mu0^2 w^4 / 9 hbar) |d_A|^2
    |d_D|^2 Tr[F(A,M,D) . F*(D,M,A)]; the trace is real by reciprocity, which
    is asserted before the real part is returned.
    """
    if d_donor <= 0.0 or d_acceptor <= 0.0:
        raise ValueError("dipole magnitudes must be positive")
    positions = [r_donor, r_acceptor]
    r_m, alpha = None, 0.0
    if mediator is not None:
        r_m = mediator.position
        alpha = polarizability(mediator.polarizability, omega / C)
        positions.append(r_m)
    _check_geometry(positions, omega)
    _check_heights(env, positions)

    def trace_ff(a):
        f1, e1 = coupling_tensor_F(r_acceptor, r_m, r_donor, env, omega, a,
                                   method=method, rtol=rtol)
        f2, e2 = coupling_tensor_F(r_donor, r_m, r_acceptor, env, omega, a,
                                   method=method, rtol=rtol)
        tr = np.trace(f1 @ np.conj(f2))
        if abs(tr.imag) > 1e-8 * max(abs(tr), TINY):
            raise RuntimeError(
                "trace Tr[F F*] acquired a non-negligible imaginary part; "
                "reciprocity violated beyond quadrature tolerance"
            )
        return tr.real, e1 + e2

    tr, err = trace_ff(alpha)
    tr0, _ = trace_ff(0.0)
    pref = (2.0 * np.pi * MU0**2 * omega**4 / (9.0 * HBAR)
            * d_donor**2 * d_acceptor**2)
    gamma = pref * tr
    gamma0_val = pref * tr0
    return RateResult(
        gamma=float(gamma),
        gamma_normalized=float(gamma / max(gamma0_val, TINY)),
        error_estimate=float(err),
    )


# --- colinear closed form ----------------------------------------------------

def _require_colinear_order(z_d, z_a, z_m=None):
    ok = 0.0 < z_d < z_a and (z_m is None or z_a < z_m)
    if not ok:
        raise GeometryError("colinear geometry requires 0 < z_D < z_A < z_M")


def rate_colinear_approx(z_d, z_a, z_m, env, alpha, omega, d_acceptor, d_donor):
    """Closed-form colinear rate: near-zone direct leg, far-zone mediator legs.

    ``env`` supplies the (r_NR, r_R) limit reflection coefficients; ``alpha``
    is the isotropic mediator polarizability in SI (C^2 m^2 / J).
    """
    _require_colinear_order(z_d, z_a, z_m)
    r_nr, r_r = limit_reflection(env, omega)
    k = omega / C
    zmns = z_a - z_d
    zpls = z_a + z_d

    direct = r_nr / zpls**3 + 1.0 / zmns**3
    c_expr = 4.0 * np.pi * C**2 * (1.0 / zmns**3 - r_nr / zpls**3)
    if alpha != 0.0:
        med = (
            MU0 * omega**4 * alpha
            * np.exp(-1j * k * (z_a + z_d - 2.0 * z_m))
            / ((z_a - z_m) * (z_a + z_m) * (z_m - z_d) * (z_d + z_m))
            * (r_r * (z_a - z_m) * np.exp(2j * k * z_a) - z_a - z_m)
            * (r_r * (z_m - z_d) * np.exp(2j * k * z_d) + z_d + z_m)
        )
        c_expr = c_expr - med

    pref = MU0**2 * C**4 * d_acceptor**2 * d_donor**2 / (18.0 * np.pi * HBAR)
    gamma = pref * (abs(direct) ** 2
                    + abs(c_expr) ** 2 / (32.0 * np.pi**2 * C**4))
    g0 = gamma0(z_d, z_a, r_nr, d_acceptor, d_donor)
    return RateResult(gamma=float(gamma),
                      gamma_normalized=float(gamma / max(g0, TINY)))


def gamma0(z_d, z_a, r_nr, d_acceptor, d_donor):
    """Mediator-free isotropic colinear rate near the interface."""
    _require_colinear_order(z_d, z_a)
    zmns = z_a - z_d
    zpls = z_a + z_d
    r_nr = complex(r_nr).real
    pref = C**4 * MU0**2 * d_acceptor**2 * d_donor**2 / (36.0 * np.pi * HBAR)
    return pref * (3.0 * r_nr**2 / zpls**6
                   + 2.0 * r_nr / (zmns**3 * zpls**3)
                   + 3.0 / zmns**6)


def gamma_xx_mirror(z_d, z_a, r_nr, d_ax, d_dx):
    """Two-body rate for x-aligned dipoles near the interface (quasi-static)."""
    _require_colinear_order(z_d, z_a)
    zmns = z_a - z_d
    zpls = z_a + z_d
    pref = d_ax**2 * d_dx**2 / (8.0 * np.pi * HBAR * EPS0**2)
    return pref * (1.0 / zmns**6
                   - 2.0 * r_nr / (zmns**3 * zpls**3)
                   + r_nr**2 / zpls**6)


def gamma_trans_qd(z_d, z_a, k, d_ax, d_dx):
    """Mirror-modified two-body rate for aligned transverse dipoles.

    Retains the cos(2 k z_D) standing-wave factor; its k -> 0 limit equals
    :func:`gamma_xx_mirror` with r_NR = 1.
    """
    _require_colinear_order(z_d, z_a)
    zmns = z_a - z_d
    zpls = z_a + z_d
    pref = d_ax**2 * d_dx**2 / (8.0 * np.pi * HBAR * EPS0**2)
    return pref * (1.0 / zmns**6
                   - 2.0 * np.cos(2.0 * k * z_d) / (zmns**3 * zpls**3)
                   + 1.0 / zpls**6)


def forster_vacuum(separation, d_acceptor, d_donor):
    """Two-body isotropic vacuum rate, c^4 mu0^2 |d_A|^2 |d_D|^2 / (12 pi hbar R^6)."""
    if separation <= 0.0:
        raise ValueError("separation must be positive")
    return (C**4 * MU0**2 * d_acceptor**2 * d_donor**2
            / (12.0 * np.pi * HBAR * separation**6))
