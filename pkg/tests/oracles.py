"""Reference computations that share no code path with the package."""
import math
import warnings

import mpmath
import numpy as np
from scipy import integrate


def aperture_quad(p, L, q):
    """int_0^L exp(-i q s) sin(p pi s / L) ds by oscillatory quadrature (QAWO).

    Evaluated on the unit interval, s = L t, with the exp(-i Q t) factor
    supplied as a cos/sin quadrature weight, Q = q L.
    """
    Q = q * L

    def f(t):
        return math.sin(p * math.pi * t)

    opts = dict(epsabs=1e-15, epsrel=1e-13, limit=500)
    with warnings.catch_warnings():
        # QAWO flags roundoff once it is at machine precision
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        return L * _quad_parts(f, Q, opts)


def _quad_parts(f, Q, opts):
    if Q == 0:
        re, _ = integrate.quad(f, 0.0, 1.0, **opts)
        im = 0.0
    else:
        re, _ = integrate.quad(f, 0.0, 1.0, weight="cos", wvar=Q, **opts)
        im, _ = integrate.quad(f, 0.0, 1.0, weight="sin", wvar=Q, **opts)
        im = -im
    return complex(re, im)


def radicand_mp(p_m, p_n, a, b, wavelength, dps=50):
    """k^2 - (p_n pi/b)^2 - (p_m pi/a)^2 in 50-digit arithmetic."""
    with mpmath.workdps(dps):
        a, wl = mpmath.mpf(a), mpmath.mpf(wavelength)
        r = (2 * mpmath.pi / wl) ** 2 - (p_m * mpmath.pi / a) ** 2
        if b is not None and not math.isinf(b):
            r -= (p_n * mpmath.pi / mpmath.mpf(b)) ** 2
        return r


def sine_coefficient_quad(harmonic_m, harmonic_n, a, b, A=1.0):
    """(4/ab) * double integral of A sin(n pi xi/b) sin(m pi eta/a)."""
    val, _ = integrate.dblquad(
        lambda eta, xi: math.sin(harmonic_n * math.pi * xi / b) * math.sin(harmonic_m * math.pi * eta / a),
        0.0, b, 0.0, a, epsabs=1e-13, epsrel=1e-12)
    return 4.0 * A * val / (a * b)


def shifted_aperture(p, a, offset, q):
    """int_{offset}^{offset+a} exp(-i q y) sin(p pi (y - offset)/a) dy, literal.

    Sine written as two exponentials and each integrated exactly.
    """
    mu = p * math.pi / a
    total = 0j
    for sign in (1.0, -1.0):
        kappa = sign * mu - q
        phase = np.exp(-1j * sign * mu * offset)
        upper = np.exp(1j * kappa * (offset + a))
        lower = np.exp(1j * kappa * offset)
        total += sign * phase * (upper - lower) / (1j * kappa)
    return total / 2j


def literal_multi_slit_scalar(alpha, beta, g, w, R, modes):
    """N-slit amplitude as an explicit sum of per-slit, per-mode terms.

    Every slit's y-integral is done over its own translated interval; no
    grating-factor factorisation is used.
    """
    k = w.k
    qx, qy = k * math.sin(alpha), k * math.sin(beta)
    cosine = complex(np.sqrt(complex(math.cos(alpha) ** 2 - math.sin(beta) ** 2)))
    pref = -np.exp(1j * k * R) / (4 * math.pi * R)
    total = 0j
    for idx in range(len(modes)):
        p_m = int(modes.p_m[idx])
        kz = modes.kz[idx]
        term = modes.coefficient[idx] * modes.transmission[idx]
        term *= 1j * kz + (1j * k - 1 / R) * cosine
        if modes.n is not None:
            term *= shifted_aperture(int(modes.p_n[idx]), g.b, 0.0, qx)
        y_sum = sum(shifted_aperture(p_m, g.a, q * g.pitch, qy) for q in range(g.n_slits))
        total += term * y_sum
    return pref * total
