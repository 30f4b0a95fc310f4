"""Independent brute-force oracles used by the test suite only.

These deliberately avoid the package's fast paths: high-precision mpmath
series with enough working digits to absorb the worst cancellation, a
product-limit gamma, and plain quadratures.
"""

import math

import mpmath as mp
import numpy as np


def gamma_product_oracle(z, levels=7, n0=256):
    """Gamma via Euler's product limit n! n^z / (z (z+1) ... (z+n)),
    Richardson-extrapolated over n = n0 * 2^j.  Independent of any
    Lanczos machinery."""
    mp.mp.dps = 60
    z = mp.mpc(z)

    def partial(n):
        acc = mp.log(mp.factorial(n)) + z * mp.log(n)
        s = mp.mpc(0)
        for k in range(n + 1):
            s += mp.log(z + k)
        return mp.e ** (acc - s)

    vals = [partial(n0 * 2 ** j) for j in range(levels)]
    # error expands in powers of 1/n -> standard Richardson table
    for order in range(1, levels):
        fac = mp.mpf(2) ** order
        vals = [(fac * vals[j + 1] - vals[j]) / (fac - 1) for j in range(len(vals) - 1)]
    return complex(vals[0])


def bessel_series_oracle(nu, x):
    """J_nu(x) by the ascending power series in adaptive-precision mpmath."""
    mp.mp.dps = max(50, int(1.2 * x) + 30)
    nu = mp.mpf(nu)
    x = mp.mpf(x)
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    q = x * x / 4
    term = (x / 2) ** nu / mp.gamma(nu + 1)
    acc = term
    for k in range(1, 5000):
        term = term * (-q) / (k * (nu + k))
        acc += term
        if k > 3 and abs(term) < mp.mpf(10) ** (-mp.mp.dps + 10) * max(abs(acc), mp.mpf(1)):
            break
    return float(acc)


def mittag_leffler_series_oracle(alpha, x):
    """E_alpha(x) by the defining series; working precision grows with
    |x|^(1/alpha), which bounds the largest term."""
    mp.mp.dps = max(50, int(abs(x) ** (1.0 / alpha)) + 40)
    a = mp.mpf(alpha)
    xm = mp.mpf(x)
    acc = mp.mpf(0)
    for k in range(0, 8000):
        t = xm ** k / mp.gamma(1 + a * k)
        acc += t
        if k > 5 and abs(t) < mp.mpf(10) ** (-mp.mp.dps + 10) * max(abs(acc), mp.mpf(1)):
            break
    return float(acc)


def mellin_quadrature_oracle(f, s, upper=80.0):
    """Mellin transform of a python callable by mpmath quadrature."""
    mp.mp.dps = 30
    g = lambda x: f(x) * mp.mpf(x) ** (s - 1)
    return complex(mp.quad(g, [0, 0.5, 2, 10, upper]))


def funk_hecke_quadrature(n, l, k, lam, theta, eval_harmonic):
    """Direct surface quadrature of the plane-wave/harmonic integral."""
    if n == 2:
        phis = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
        omegas = np.stack([np.cos(phis), np.sin(phis)], axis=1)
        w = 2 * np.pi / phis.size
        vals = np.array([eval_harmonic(n, l, k, om) for om in omegas])
        return np.sum(np.exp(1j * lam * omegas @ theta) * vals) * w
    xs, ws = np.polynomial.legendre.leggauss(200)
    phis = np.linspace(0.0, 2 * np.pi, 256, endpoint=False)
    acc = 0j
    for xi, wi in zip(xs, ws):
        st = math.sqrt(1.0 - xi * xi)
        omegas = np.stack([st * np.cos(phis), st * np.sin(phis), np.full(phis.size, xi)], axis=1)
        vals = np.array([eval_harmonic(n, l, k, om) for om in omegas])
        acc += wi * np.sum(np.exp(1j * lam * omegas @ theta) * vals) * (2 * np.pi / phis.size)
    return acc


def fractional_integral_power_rule(p, order, t):
    """Closed form I^a t^p = Gamma(p+1)/Gamma(p+1+a) t^(p+a)."""
    mp.mp.dps = 30
    return float(mp.gamma(p + 1) / mp.gamma(p + 1 + order) * mp.mpf(t) ** (p + order))


def caputo_power_rule(p, alpha, t):
    """Closed form D^alpha t^p = Gamma(p+1)/Gamma(p+1-alpha) t^(p-alpha), p > 1."""
    mp.mp.dps = 30
    return float(mp.gamma(p + 1) / mp.gamma(p + 1 - alpha) * mp.mpf(t) ** (p - alpha))
