"""Adaptive quadrature used by the baseline-rate and structure-factor integrals.

Both routines expect a vectorized integrand: ``f(x)`` must accept a 1-D array
of abscissae and return an array of the same shape.
"""

from __future__ import annotations

import heapq
from typing import NamedTuple

import numpy as np

from .errors import FitError


class QuadResult(NamedTuple):
    value: float
    abserr: float
    n_eval: int


def adaptive_simpson(f, breakpoints, rel_tol=1e-6, abs_tol=0.0, max_levels=60):
    """Integrate ``f`` over consecutive panels given by ``breakpoints``.

    Panels are refined level by level: every unconverged interval is halved
    and its two halves evaluated in one batched call. An interval is accepted
    when the Richardson difference ``|S2 - S1| / 15`` is below its share
    (proportional to width) of the global tolerance
    ``max(abs_tol, rel_tol * |I|)``, where ``|I|`` is refreshed from the
    current estimate of the integral of ``|f|`` at every level.
    """
    x = np.asarray(breakpoints, dtype=float)
    if x.ndim != 1 or x.size < 2 or np.any(np.diff(x) <= 0):
        raise ValueError("breakpoints must be an increasing sequence of length >= 2")
    total_width = x[-1] - x[0]

    a, b = x[:-1], x[1:]
    m = 0.5 * (a + b)
    fa, fm, fb = np.split(f(np.concatenate([a, m, b])), 3)
    whole = (b - a) / 6 * (fa + 4 * fm + fb)
    n_eval = 3 * a.size

    accepted = 0.0
    accepted_abs = 0.0
    err_sum = 0.0
    for _ in range(max_levels):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = np.split(f(np.concatenate([lm, rm])), 2)
        n_eval += 2 * a.size
        left = (m - a) / 6 * (fa + 4 * flm + fm)
        right = (b - m) / 6 * (fm + 4 * frm + fb)
        refined = left + right
        delta = (refined - whole) / 15

        scale = accepted_abs + np.sum(np.abs(refined))
        tol = max(abs_tol, rel_tol * scale)
        share = tol * (b - a) / total_width
        done = np.abs(delta) <= share
        if np.any(done):
            accepted += float(np.sum(refined[done] + delta[done]))
            accepted_abs += float(np.sum(np.abs(refined[done])))
            err_sum += float(np.sum(np.abs(delta[done])))
        keep = ~done
        if not np.any(keep):
            return QuadResult(accepted, err_sum, n_eval)
        a, m, b = a[keep], m[keep], b[keep]
        fa, fm, fb = fa[keep], fm[keep], fb[keep]
        lm, rm, flm, frm = lm[keep], rm[keep], flm[keep], frm[keep]
        left, right = left[keep], right[keep]
        # halves become the new intervals
        a, m, b = np.concatenate([a, m]), np.concatenate([lm, rm]), np.concatenate([m, b])
        fa, fm, fb = np.concatenate([fa, fm]), np.concatenate([flm, frm]), np.concatenate([fm, fb])
        whole = np.concatenate([left, right])
    raise FitError("adaptive Simpson did not converge", residual=err_sum)


# 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes sit at the odd positions of the Kronrod node list
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1::2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = f(c + h * KRONROD_NODES)
    k = h * float(np.dot(KRONROD_WEIGHTS, fx))
    g = h * float(np.dot(GAUSS_WEIGHTS, fx))
    return k, abs(k - g)


def gauss_kronrod(f, a, b, rel_tol=1e-10, abs_tol=0.0, max_intervals=2000):
    """Globally adaptive G7-K15 quadrature of ``f`` on ``[a, b]``.

    The interval with the largest error estimate is bisected until the summed
    estimate falls below ``max(abs_tol, rel_tol * |I|)``. The reported error
    is the conservative ``|K15 - G7|`` sum.
    """
    value, err = _gk15(f, a, b)
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    n = 1
    while total_err > max(abs_tol, rel_tol * abs(total)):
        if n >= max_intervals:
            raise FitError("Gauss-Kronrod subdivision limit reached", residual=total_err)
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
        n += 1
    # re-sum to shed accumulated rounding from the running updates
    total = sum(item[3] for item in heap)
    total_err = sum(-item[0] for item in heap)
    return QuadResult(total, total_err, 15 * (2 * n - 1))
