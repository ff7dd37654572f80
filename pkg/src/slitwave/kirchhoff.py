"""Far-field diffraction amplitude from the slit-exit field.

The Kirchhoff integral over the exit face z = c' is evaluated mode by
mode. Each mode contributes

    D_mn exp(i kz c') [i kz + (i k - 1/R) sqrt(cos^2 alpha - sin^2 beta)]
        * X_n(k sin alpha) * Y_m(k sin beta)

where X_n, Y_m are the closed-form aperture integrals below, and the
whole sum carries the prefactor -exp(i k R) / (4 pi R). N identical slits
at pitch a + d multiply the single-slit amplitude by the grating factor
sum_q exp(-i k sin(beta) q (a + d)).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DEFAULT_POLARIZATION,
    DEFAULT_TRUNCATION,
    ObservationDirection,
    SlitGeometry,
    TruncationPolicy,
    ValidationError,
    WaveSpec,
)
from .slitmodes import AxialWavenumber, ModeSet, _as_polarization, enumerate_modes

#: betas evaluated per work item; fixed so results do not depend on thread count
CHUNK = 256


def aperture_integral(p, L, q):
    """Integral of exp(-i q s) sin(p pi s / L) over 0 <= s <= L, p odd.

    Closed form ``mu (1 + exp(-i q L)) / (mu^2 - q^2)`` with mu = p pi/L,
    rewritten around the nearer resonance q = +-mu as

        2 mu s (-1)^((p-1)/2) (L/2) sinc(eps L/2) exp(-i q L/2) / (q + s mu)

    with s = sign(q), eps = q - s mu. The removable singularity is then an
    ordinary sinc evaluation, so no digits are lost near resonance.
    Vectorised over all arguments.
    """
    p_arr = np.asarray(p)
    if np.any(p_arr < 1) or np.any(p_arr % 2 != 1):
        raise ValidationError("p", "harmonic must be a positive odd integer")
    L_arr = np.asarray(L, dtype=float)
    if np.any(~(L_arr > 0)):
        raise ValidationError("L", "aperture length must be positive")
    p_f = p_arr.astype(float)
    q = np.asarray(q, dtype=float)
    mu = p_f * math.pi / L_arr
    s = np.where(q >= 0, 1.0, -1.0)
    eps = q - s * mu
    parity = np.where(p_arr % 4 == 1, 1.0, -1.0)
    half = 0.5 * L_arr
    # np.sinc(x) = sin(pi x) / (pi x)
    mag = 2.0 * mu * s * parity * half * np.sinc(eps * half / math.pi) / (q + s * mu)
    out = mag * np.exp(-1j * q * half)
    return out[()] if out.ndim == 0 else out


def direction_cosine(alpha, beta):
    """Principal square root of cos^2(alpha) - sin^2(beta), as complex."""
    radicand = np.cos(alpha) ** 2 - np.sin(beta) ** 2
    return np.sqrt(np.asarray(radicand, dtype=complex))


def obliquity_bracket(kz, direction: ObservationDirection, w: WaveSpec, R: float) -> complex:
    """i kz + (i k - 1/R) sqrt(cos^2 alpha - sin^2 beta)."""
    if isinstance(kz, AxialWavenumber):
        kz = kz.kz
    cosine = complex(direction_cosine(direction.alpha, direction.beta))
    return 1j * complex(kz) + (1j * w.k - 1.0 / R) * cosine


def grating_factor(sin_beta, pitch: float, n_slits: int, k: float):
    """sum_{q=0}^{N-1} exp(-i k sin(beta) q pitch), vectorised over sin_beta."""
    sin_beta = np.asarray(sin_beta, dtype=float)
    total = np.zeros(sin_beta.shape, dtype=complex)
    for q in range(n_slits):
        total += np.exp(-1j * k * sin_beta * (q * pitch))
    return total


@dataclass(frozen=True)
class DiffractionAmplitude:
    """Far-field amplitude vector Phi at one direction, with its inputs.

    ``negative_radicand`` flags a direction where cos^2 alpha < sin^2 beta
    and the obliquity root went imaginary.
    """

    phi: np.ndarray
    direction: ObservationDirection
    geometry: SlitGeometry
    wave: WaveSpec
    R: float
    n_modes: int
    negative_radicand: bool = False


def _thread_count() -> int:
    env = os.environ.get("SLITWAVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


class ModeSums:
    """Per-y-mode sums over x modes for one fixed alpha.

    For each y harmonic p_m this holds

        s0_m = sum_n D_mn T_mn X_n        s1_m = sum_n D_mn T_mn i kz_mn X_n

    so the amplitude at any beta is a single contraction against the y
    aperture integrals.
    """

    def __init__(self, modes: ModeSet, g: SlitGeometry, w: WaveSpec, alpha: float):
        self.geometry = g
        self.wave = w
        self.alpha = float(alpha)
        self.n_modes = len(modes)
        weight = modes.coefficient * modes.transmission
        if modes.n is not None:
            qx = w.k * math.sin(alpha)
            n_unique, n_inverse = np.unique(modes.n, return_inverse=True)
            x_int = aperture_integral(2 * n_unique + 1, g.b, qx)
            weight = weight * x_int[n_inverse]
        self.m, inverse = np.unique(modes.m, return_inverse=True)
        self.s0 = _complex_bincount(inverse, weight, len(self.m))
        self.s1 = _complex_bincount(inverse, weight * 1j * modes.kz, len(self.m))

    def scalar(self, betas: np.ndarray, R: float) -> np.ndarray:
        """Single-slit amplitude per unit polarization at each beta."""
        betas = np.asarray(betas, dtype=float)
        out = np.zeros(betas.shape, dtype=complex)
        if len(self.m) == 0:
            return out
        g, w = self.geometry, self.wave
        p_m = 2 * self.m + 1
        qy = w.k * np.sin(betas)
        y_int = aperture_integral(p_m[None, :], g.a, qy[:, None])
        obliq = (1j * w.k - 1.0 / R) * direction_cosine(self.alpha, betas)
        pref = -np.exp(1j * w.k * R) / (4.0 * math.pi * R)
        return pref * (y_int @ self.s1 + obliq * (y_int @ self.s0))


def _complex_bincount(index, values, size):
    re = np.bincount(index, weights=values.real, minlength=size)
    im = np.bincount(index, weights=values.imag, minlength=size)
    return re + 1j * im


def _check_distance(R: float) -> float:
    R = float(R)
    if not R > 0 or math.isinf(R):
        raise ValidationError("R", "screen distance must be positive")
    return R


def scalar_pattern(alpha: float, betas, g: SlitGeometry, w: WaveSpec, R: float = 4.572,
                   trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                   modes: Optional[ModeSet] = None,
                   include_grating: bool = True) -> np.ndarray:
    """Polarization-free amplitude over a sweep of beta at fixed alpha.

    The full amplitude is ``A * scalar_pattern(...)``. Work is split into
    fixed-size chunks and mapped over a thread pool capped by
    ``SLITWAVE_THREADS``; chunking is independent of the pool size, so the
    output is reproducible bit for bit.
    """
    R = _check_distance(R)
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    if modes is None:
        modes = enumerate_modes(g, w, trunc)
    sums = ModeSums(modes, g, w, alpha)
    chunks = [betas[i:i + CHUNK] for i in range(0, len(betas), CHUNK)]
    workers = min(_thread_count(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: sums.scalar(c, R), chunks))
    else:
        parts = [sums.scalar(c, R) for c in chunks]
    out = np.concatenate(parts) if parts else np.zeros(0, dtype=complex)
    if include_grating and g.n_slits > 1:
        out = out * grating_factor(np.sin(betas), g.pitch, g.n_slits, w.k)
    return out


def intensity_pattern(alpha: float, betas, g: SlitGeometry, w: WaveSpec,
                      A=DEFAULT_POLARIZATION, R: float = 4.572,
                      trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> np.ndarray:
    """|Phi|^2 over a beta sweep, N-slit grating factor included."""
    A = _as_polarization(A)
    amp = scalar_pattern(alpha, betas, g, w, R, trunc)
    return A.norm_squared * np.abs(amp) ** 2


def _amplitude(direction, g, w, A, R, trunc, include_grating):
    A = _as_polarization(A)
    R = _check_distance(R)
    modes = enumerate_modes(g, w, trunc)
    scalar = scalar_pattern(direction.alpha, [direction.beta], g, w, R, trunc,
                            modes=modes, include_grating=include_grating)[0]
    negative = math.cos(direction.alpha) ** 2 < math.sin(direction.beta) ** 2
    return DiffractionAmplitude(scalar * A.vector, direction, g, w, R, len(modes), negative)


def single_slit_amplitude(direction: ObservationDirection, g: SlitGeometry, w: WaveSpec,
                          A=DEFAULT_POLARIZATION, R: float = 4.572,
                          trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> DiffractionAmplitude:
    """Amplitude of a single slit; ``g.n_slits`` is ignored."""
    return _amplitude(direction, g, w, A, R, trunc, include_grating=False)


def multi_slit_amplitude(direction: ObservationDirection, g: SlitGeometry, w: WaveSpec,
                         A=DEFAULT_POLARIZATION, R: float = 4.572,
                         trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> DiffractionAmplitude:
    """Sum of the amplitudes of ``g.n_slits`` slits at pitch ``a + d``.

    Slit q is the first slit translated by (q-1)(a+d) along y; the
    translation only multiplies its amplitude by exp(-i k sin(beta) (q-1)(a+d)).
    """
    return _amplitude(direction, g, w, A, R, trunc, include_grating=True)


def infinite_length_amplitude(direction: ObservationDirection, g: SlitGeometry, w: WaveSpec,
                              A=DEFAULT_POLARIZATION, R: float = 4.572,
                              trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> DiffractionAmplitude:
    """Single-slit amplitude for b = INFINITE (single mode sum over m)."""
    if not g.infinite_length:
        raise ValidationError("b", "infinite_length_amplitude needs b = INFINITE")
    return _amplitude(direction, g, w, A, R, trunc, include_grating=False)


def intensity(amp) -> float:
    """|Phi_x|^2 + |Phi_y|^2 + |Phi_z|^2."""
    phi = amp.phi if isinstance(amp, DiffractionAmplitude) else np.asarray(amp, dtype=complex)
    return float(np.sum(np.abs(phi) ** 2))
