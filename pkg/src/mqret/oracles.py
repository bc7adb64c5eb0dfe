"""Independent verification machinery.

Contour-identity checks for the two frequency-integral identities behind the
pole-only rate result, a coarse-but-robust fixed-grid Sommerfeld reference
integrator, and asymptotic-limit scanners. These produce the derived
reference values consumed by the test suite and the ``verify`` CLI command.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, simpson

from .core import C, TINY
from .greens import _angular_components, _reflection_callable, mirror_scatter_exact
from .media import PerfectReflector


@dataclass(frozen=True)
class OracleReport:
    name: str
    inputs: dict = field(default_factory=dict)
    reference: complex = 0.0
    value: complex = 0.0
    rel_error: float = 0.0
    tolerance: float = 0.0
    passed: bool = False

    def to_dict(self):
        return {
            "name": self.name,
            "inputs": {k: repr(v) for k, v in self.inputs.items()},
            "reference": repr(self.reference),
            "value": repr(self.value),
            "rel_error": float(self.rel_error),
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
        }


def _rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), TINY)


def _tensor_rel(a, b):
    return float(np.abs(np.asarray(a) - np.asarray(b)).max()
                 / max(float(np.abs(b).max()), TINY))


# --- contour identities ------------------------------------------------------

def _g_xx(omega, rho):
    """Vacuum xx Green's component for transverse separation (rho along z).

    Valid for complex omega; on the imaginary axis the value is real.
    """
    x = omega * rho / C
    return -(C**2) * np.exp(1j * x) * (1.0 - 1j * x - x**2) / (
        4.0 * np.pi * omega**2 * rho**3
    )


def _quad_complex(f, a, b, **kw):
    re = quad(lambda x: f(x).real, a, b, **kw)[0]
    im = quad(lambda x: f(x).imag, a, b, **kw)[0]
    return re + 1j * im


def _oscillatory_lhs(rho, omega_d, sign, eps, omega_max):
    """Truncated frequency integral, accelerated by repeated averaging of the
    partial sums taken at the half-period zeros of the propagation phase.

    The integrand's amplitude grows linearly with frequency, so a plain
    truncation is useless; the alternating partial sums are Euler-summed
    instead, which converges to the Abel-regularised value the contour
    identity refers to.
    """
    half = np.pi * C / rho  # spacing of the zeros of sin(omega rho / c)
    n_half = max(int(np.ceil(omega_max / half)), 24)

    def integrand(w):
        return w**2 * _g_xx(w, rho).imag / (omega_d + sign * w + 1j * eps)

    pieces = []
    for n in range(n_half):
        a, b = n * half, (n + 1) * half
        kw = {"limit": 200}
        if sign < 0 and a - half <= omega_d <= b + half:
            # pole sits at/near an interval boundary; split there
            kw["points"] = [w for w in (omega_d,) if a < w < b]
            if not kw["points"]:
                del kw["points"]
        pieces.append(_quad_complex(integrand, a, b, **kw))
    partial = np.cumsum(pieces)
    # Euler-transform the oscillatory tail
    tail = partial[-20:]
    while len(tail) > 1:
        tail = 0.5 * (tail[:-1] + tail[1:])
    return complex(tail[0])


def contour_identity_check(rho, omega_d, which="plus", omega_max_factor=50.0,
                           eps_factors=(1e-3, 1e-4), tolerance=1e-3,
                           include_pole=True):
    """Verify one of the two frequency-integral contour identities for the
    vacuum xx component at separation ``rho``.

    ``which`` is "plus" or "minus"; the minus identity carries the extra pole
    term -pi w_D^2 G(w_D), which ``include_pole=False`` ablates (producing an
    order-one failure). The small imaginary pole shift is Richardson
    extrapolated to zero over ``eps_factors``.
    """
    if which not in ("plus", "minus"):
        raise ValueError("which must be 'plus' or 'minus'")
    sign = 1.0 if which == "plus" else -1.0
    omega_max = omega_max_factor * omega_d

    e1, e2 = (f * omega_d for f in eps_factors)
    f1 = _oscillatory_lhs(rho, omega_d, sign, e1, omega_max)
    f2 = _oscillatory_lhs(rho, omega_d, sign, e2, omega_max)
    lhs = f2 + (f2 - f1) * e2 / (e1 - e2)

    def xi_integrand(u):
        # dimensionless xi = omega_d * u keeps the structure at u ~ 1
        xi = omega_d * u
        return (_g_xx(1j * xi, rho).real * xi**2 * omega_d
                / (omega_d**2 + xi**2) * omega_d)

    rhs = -quad(xi_integrand, 0.0, np.inf, limit=200)[0] + 0j
    if which == "minus" and include_pole:
        rhs = rhs - np.pi * omega_d**2 * _g_xx(omega_d, rho)

    err = _rel(lhs, rhs)
    return OracleReport(
        name=f"contour-identity-{which}" + ("" if include_pole else "-no-pole"),
        inputs={"rho": rho, "omega_d": omega_d, "omega_max": omega_max},
        reference=complex(rhs),
        value=complex(lhs),
        rel_error=err,
        tolerance=tolerance,
        passed=err < tolerance,
    )


# --- fixed-grid Sommerfeld reference -----------------------------------------

def sommerfeld_reference(r, r_prime, omega, material, n_base=3001):
    """Half-space scattering tensor by a fixed-order composite Simpson rule.

    Independent of the adaptive evaluator: the contour is parametrised by
    k_z directly (propagating segment) and by kappa = -i k_z (evanescent
    segment), both singularity-free, on uniform grids with no adaptivity.
    Returns ``(tensor, conservative_error_estimate)``; used only in tests.
    """
    r = np.asarray(r, dtype=float)
    rp = np.asarray(r_prime, dtype=float)
    z, zp = float(r[2]), float(rp[2])
    if z <= 0.0 or zp <= 0.0:
        raise ValueError("both points must lie above the interface")
    big_z = z + zp
    dx, dy = r[0] - rp[0], r[1] - rp[1]
    lateral = float(np.hypot(dx, dy))
    phi0 = float(np.arctan2(dy, dx)) if lateral > 0.0 else 0.0
    k1 = omega / C
    refl = _reflection_callable(material, omega)
    pref = 1j / (8.0 * np.pi**2)

    def propagating(n):
        u = np.linspace(0.0, k1, n)
        k_par = np.sqrt(np.maximum(k1**2 - u**2, 0.0))
        comps = _angular_components(k_par, u, k1, big_z, lateral, refl)
        return simpson(pref * comps, x=u, axis=0)

    def evanescent(n):
        kappa = np.linspace(0.0, 40.0 / big_z, n)
        k_par = np.sqrt(k1**2 + kappa**2)
        comps = _angular_components(k_par, 1j * kappa, k1, big_z, lateral, refl)
        return simpson(pref * (-1j) * comps, x=kappa, axis=0)

    coarse = propagating(n_base // 2 | 1) + evanescent(n_base | 1)
    fine = propagating(n_base | 1) + evanescent(2 * n_base + 1)
    err = 4.0 * float(np.abs(fine - coarse).max()) / max(
        float(np.abs(fine).max()), TINY
    )

    g = np.array(
        [
            [fine[0], 0.0, fine[3]],
            [0.0, fine[1], 0.0],
            [fine[4], 0.0, fine[2]],
        ],
        dtype=complex,
    )
    if phi0 != 0.0:
        cp, sp = np.cos(phi0), np.sin(phi0)
        rot = np.array([[cp, -sp, 0.0], [sp, cp, 0.0], [0.0, 0.0, 1.0]])
        g = rot @ g @ rot.T
    return g, err


# --- limit scans -------------------------------------------------------------

def limit_scan(evaluator, limit, scales, name="limit-scan", tolerance=0.0):
    """Relative deviation of ``evaluator`` from ``limit`` across scales.

    ``scales`` must be ordered from far-from-limit to close-to-limit; the
    scan passes when the deviation decreases monotonically.
    """
    errs = [_tensor_rel(evaluator(s), limit(s)) for s in scales]
    monotone = all(b < a or b < 1e-14 for a, b in zip(errs, errs[1:]))
    return OracleReport(
        name=name,
        inputs={"scales": list(scales), "errors": errs},
        reference=errs[0],
        value=errs[-1],
        rel_error=errs[-1],
        tolerance=tolerance,
        passed=monotone and (tolerance == 0.0 or errs[-1] < tolerance),
    )


# --- full verification battery ----------------------------------------------

def run_verification(omega=None):
    """Run the oracle suite; returns a list of OracleReports."""
    from .greens import halfspace_scatter_full, halfspace_scatter_nr, \
        halfspace_scatter_r, vacuum_bulk_exact, vacuum_bulk_nr, vacuum_bulk_r
    from .media import Constant

    if omega is None:
        omega = 2.0 * np.pi * C / 1e-6
    lam = 2.0 * np.pi * C / omega
    reports = []

    reports.append(contour_identity_check(lam, omega, "plus"))
    reports.append(contour_identity_check(lam, omega, "minus"))
    ablated = contour_identity_check(lam, omega, "minus", include_pole=False)
    reports.append(OracleReport(
        name="contour-identity-minus-ablation",
        inputs=ablated.inputs,
        reference=ablated.reference,
        value=ablated.value,
        rel_error=ablated.rel_error,
        tolerance=0.5,
        passed=ablated.rel_error > 0.5,  # omitting the pole must fail by O(1)
    ))

    # mirror oracle vs full Sommerfeld with perfect-reflector constants
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        r = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(0.2, 2.0)]) * lam
        rp = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(0.2, 2.0)]) * lam
        g_full, _ = halfspace_scatter_full(r, rp, omega, PerfectReflector())
        worst = max(worst, _tensor_rel(g_full, mirror_scatter_exact(r, rp, omega)))
    reports.append(OracleReport(
        name="mirror-vs-sommerfeld",
        inputs={"points": 5},
        reference=0.0, value=worst, rel_error=worst,
        tolerance=1e-6, passed=worst < 1e-6,
    ))

    # adaptive evaluator vs fixed-grid reference
    worst = 0.0
    for _ in range(5):
        r = np.array([rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                      rng.uniform(0.3, 1.5)]) * lam
        rp = np.array([rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                       rng.uniform(0.3, 1.5)]) * lam
        g_full, e_full = halfspace_scatter_full(r, rp, omega, Constant(2.0))
        g_ref, e_ref = sommerfeld_reference(r, rp, omega, Constant(2.0))
        d = _tensor_rel(g_full, g_ref)
        worst = max(worst, d / max(e_full + e_ref, 1e-12))
    reports.append(OracleReport(
        name="dual-integrator-agreement",
        inputs={"points": 5},
        reference=0.0, value=worst, rel_error=worst,
        tolerance=1.0, passed=worst < 1.0,  # within combined error bars
    ))

    # near-zone scan of the vacuum bulk tensor
    axis = np.array([0.0, 0.0, 1.0])
    reports.append(limit_scan(
        lambda s: vacuum_bulk_exact(s * axis, 0 * axis, omega),
        lambda s: vacuum_bulk_nr(s * axis, 0 * axis, omega),
        [10**e * lam / (2 * np.pi) for e in (-1, -2, -3, -4)],
        name="vacuum-near-zone-scan",
    ))
    reports.append(limit_scan(
        lambda s: vacuum_bulk_exact(s * axis, 0 * axis, omega),
        lambda s: vacuum_bulk_r(s * axis, 0 * axis, omega),
        [10**e * lam for e in (0.5, 1.5, 2.5)],
        name="vacuum-far-zone-scan",
    ))
    mat = Constant(2.0)
    reports.append(limit_scan(
        lambda s: halfspace_scatter_full(s * axis, s * axis, omega, mat)[0],
        lambda s: halfspace_scatter_nr(s * axis, s * axis, omega, mat),
        [0.05 * lam / 2, 0.01 * lam / 2, 0.002 * lam / 2],
        name="halfspace-near-zone-scan",
    ))
    reports.append(limit_scan(
        lambda s: halfspace_scatter_full(s * axis, s * axis, omega, mat)[0],
        lambda s: halfspace_scatter_r(s * axis, s * axis, omega, mat),
        [2.5 * lam, 10 * lam, 40 * lam],
        name="halfspace-far-zone-scan",
    ))
    return reports
