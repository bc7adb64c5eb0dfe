"""Adaptive panel quadrature for vector-valued complex integrands.

Nested Gauss-Legendre pair (10/21 nodes) per panel; the difference between
the two orders is the per-panel error estimate. Panels are refined worst
first until every component meets an absolute-plus-relative tolerance, and
the achieved error estimate is returned alongside the integral so callers
(and tests) can consume it.
"""

import heapq
import itertools

import numpy as np

from .core import QuadratureError

_XLO, _WLO = np.polynomial.legendre.leggauss(10)
_XHI, _WHI = np.polynomial.legendre.leggauss(21)


def _panel(f, a, b):
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    hi = h * np.tensordot(_WHI, f(c + h * _XHI), axes=1)
    lo = h * np.tensordot(_WLO, f(c + h * _XLO), axes=1)
    return hi, np.abs(hi - lo)


def adaptive_quad_vec(f, a, b, rtol=1e-9, atol=0.0, max_panels=4000):
    """Integrate ``f`` (mapping an array of abscissae to shape ``(n, m)``
    complex values) over [a, b].

    Returns ``(integral, error)`` with per-component error estimates. The
    per-component tolerance is ``atol + rtol * max|integral|``. Raises
    :class:`QuadratureError` if the panel budget is exhausted first.
    """
    if b <= a:
        raise ValueError("integration interval must have b > a")
    counter = itertools.count()
    val, err = _panel(f, a, b)
    heap = [(-float(err.max()), next(counter), a, b, val, err)]
    total = val.copy()
    toterr = err.copy()
    while len(heap) < max_panels:
        tol = atol + rtol * float(np.abs(total).max())
        if float(toterr.max()) <= tol:
            break
        _, _, pa, pb, pval, perr = heapq.heappop(heap)
        mid = 0.5 * (pa + pb)
        total -= pval
        toterr -= perr
        for qa, qb in ((pa, mid), (mid, pb)):
            qval, qerr = _panel(f, qa, qb)
            total += qval
            toterr += qerr
            heapq.heappush(heap, (-float(qerr.max()), next(counter), qa, qb, qval, qerr))
    else:
        tol = atol + rtol * float(np.abs(total).max())
        if float(toterr.max()) > tol:
            scale = max(float(np.abs(total).max()), 1e-300)
            raise QuadratureError(
                f"adaptive quadrature did not converge: error estimate "
                f"{float(toterr.max()) / scale:.3e} (relative) after "
                f"{max_panels} panels",
                estimate=float(toterr.max()) / scale,
            )
    return total, toterr
