"""Small shared numerical helpers: composite Gauss-Legendre rules,
log-log tail fitting, and running envelopes.

Everything here is plain plumbing; the mathematically interesting code
lives in the public modules.
"""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _gl_cache(npts: int):
    x, w = np.polynomial.legendre.leggauss(npts)
    return x, w


def gauss_panels(breakpoints, npts=12):
    """Composite Gauss-Legendre nodes/weights over consecutive panels.

    breakpoints: increasing 1-D array of panel edges.
    Returns (nodes, weights) flattened over all panels.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2 or np.any(np.diff(bp) <= 0):
        raise ValueError("breakpoints must be strictly increasing, >= 2 entries")
    x, w = _gl_cache(npts)
    a = bp[:-1][:, None]
    h = np.diff(bp)[:, None]
    nodes = (a + 0.5 * h * (x[None, :] + 1.0)).ravel()
    weights = (0.5 * h * w[None, :]).ravel()
    return nodes, weights


def geometric_breakpoints(lo, hi, max_log_step):
    """Panel edges geometric between lo and hi with ln-spacing <= max_log_step."""
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    n = max(1, int(np.ceil(np.log(hi / lo) / max_log_step)))
    return lo * (hi / lo) ** (np.arange(n + 1) / n)


def linear_breakpoints(lo, hi, max_step):
    n = max(1, int(np.ceil((hi - lo) / max_step)))
    return np.linspace(lo, hi, n + 1)


def fit_power_tail(xs, values, nwindow):
    """Least-squares power-law fit c*(x/x_anchor)**p on a window of samples.

    xs must be positive increasing; `nwindow > 0` fits the first nwindow
    samples (anchor = first sample), `nwindow < 0` the last |nwindow|
    (anchor = last sample).  Works for complex values (the exponent is fit
    on magnitudes, the coefficient is the anchor sample itself).

    Returns (coef, p, ln_residual) or None when the window has sign
    changes / vanishing values that make a power model meaningless.
    """
    xs = np.asarray(xs, dtype=float)
    vals = np.asarray(values)
    if nwindow > 0:
        xw, vw = xs[:nwindow], vals[:nwindow]
        anchor = 0
    else:
        xw, vw = xs[nwindow:], vals[nwindow:]
        anchor = -1
    mag = np.abs(vw)
    peak = np.max(np.abs(vals))
    if peak == 0.0 or np.any(mag < 1e-290) or np.min(mag) < 1e-13 * np.max(mag):
        return None
    if not np.iscomplexobj(vw) and np.any(np.sign(vw) != np.sign(vw[anchor])):
        return None
    lx = np.log(xw)
    ly = np.log(mag)
    p, b = np.polyfit(lx, ly, 1)
    resid = float(np.max(np.abs(ly - (p * lx + b))))
    coef = vw[anchor]
    return coef, float(p), resid


def running_max(values, halfwidth):
    """Running maximum of |values| over +-halfwidth samples (local envelope)."""
    a = np.abs(np.asarray(values, dtype=float))
    n = a.size
    out = np.empty(n)
    for i in range(n):
        lo = max(0, i - halfwidth)
        hi = min(n, i + halfwidth + 1)
        out[i] = a[lo:hi].max()
    return out


def rel_l2(approx, truth):
    """Relative l2 error with a zero-truth guard."""
    approx = np.asarray(approx, dtype=float).ravel()
    truth = np.asarray(truth, dtype=float).ravel()
    denom = float(np.linalg.norm(truth))
    if denom == 0.0:
        return float(np.linalg.norm(approx))
    return float(np.linalg.norm(approx - truth) / denom)
