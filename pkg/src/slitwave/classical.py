"""Classical Fraunhofer intensity of N slits, used as the reference curve.

    I = I0 (sin(b)/b)^2 (sin(N g)/sin(g))^2
    b = a pi sin(theta)/lambda,  g = (a + d) pi sin(theta)/lambda
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ValidationError


@dataclass(frozen=True)
class ClassicalParams:
    beta_cl: float
    gamma_cl: float
    I0: float = 1.0


def classical_params(theta: float, a: float, d: float, wavelength: float,
                     I0: float = 1.0) -> ClassicalParams:
    s = math.sin(theta)
    return ClassicalParams(a * math.pi * s / wavelength,
                           (a + d) * math.pi * s / wavelength, I0)


def _check(a, d, n_slits, wavelength):
    if not a > 0:
        raise ValidationError("a", "width must be positive")
    if d < 0:
        raise ValidationError("d", "gap must be non-negative")
    if int(n_slits) != n_slits or n_slits < 1:
        raise ValidationError("n_slits", "slit count must be at least 1")
    if not wavelength > 0:
        raise ValidationError("wavelength", "wavelength must be positive")


def envelope(sin_theta, a: float, wavelength: float):
    """(sin b / b)^2, equal to 1 at b = 0."""
    beta_cl = a * math.pi * np.asarray(sin_theta, dtype=float) / wavelength
    return np.sinc(beta_cl / math.pi) ** 2


def grating_ratio(sin_theta, pitch: float, n_slits: int, wavelength: float):
    """sin(N g)/sin(g), with the limits +-N at g = j pi.

    g is reduced to g = j pi + delta with |delta| <= pi/2, where
    sin(N g)/sin(g) = (-1)^(j (N-1)) sin(N delta)/sin(delta) and the latter
    is N sinc(N delta)/sinc(delta) -- finite and smooth through delta = 0.
    """
    gamma = pitch * math.pi * np.asarray(sin_theta, dtype=float) / wavelength
    j = np.round(gamma / math.pi)
    delta = gamma - j * math.pi
    sign = np.where((j * (n_slits - 1)) % 2 == 0, 1.0, -1.0)
    return sign * n_slits * np.sinc(n_slits * delta / math.pi) / np.sinc(delta / math.pi)


def classical_intensity(theta, a: float, d: float, n_slits: int, wavelength: float,
                        I0: float = 1.0):
    """Classical N-slit intensity at diffraction angle(s) ``theta``."""
    _check(a, d, n_slits, wavelength)
    s = np.sin(np.asarray(theta, dtype=float))
    out = I0 * envelope(s, a, wavelength) * grating_ratio(s, a + d, n_slits, wavelength) ** 2
    return float(out) if out.ndim == 0 else out
