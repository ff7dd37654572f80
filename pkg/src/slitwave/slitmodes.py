"""Field inside a perfectly confining rectangular slit.

Inside the box 0 <= x <= b, 0 <= y <= a, 0 <= z <= c' each field
component is expanded in the sine modes that vanish on the walls::

    psi_j = sum_{m,n} D_mnj sin(p_n pi x / b) sin(p_m pi y / a) exp(i kz_mn z)

with odd harmonics p_m = 2m + 1, p_n = 2n + 1 and
kz_mn^2 = k^2 - (p_n pi / b)^2 - (p_m pi / a)^2. Matching the incident
plane wave at z = 0 fixes D_mnj = 16 A_j / (p_m p_n pi^2). For an
infinitely long slit the x factor disappears and the coefficient becomes
4 A_j / (p_m pi).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import (
    DEFAULT_POLARIZATION,
    DEFAULT_TRUNCATION,
    PolarizationAmplitude,
    SlitGeometry,
    TruncationPolicy,
    ValidationError,
    WaveSpec,
)

#: |D * transmission| at or below this is treated as exactly zero
ABSOLUTE_FLOOR = 1e-300


class ModeKind(enum.Enum):
    PROPAGATING = "propagating"
    EVANESCENT = "evanescent"
    CUTOFF = "cutoff"


@dataclass(frozen=True)
class ModeIndex:
    """Reindexed odd mode: harmonics 2m+1 along y and 2n+1 along x.

    ``n`` is ``None`` for an infinitely long slit.
    """

    m: int
    n: Optional[int] = 0

    def __post_init__(self):
        if self.m < 0 or (self.n is not None and self.n < 0):
            raise ValidationError("mode", "mode indices must be non-negative")

    @property
    def p_m(self) -> int:
        return 2 * self.m + 1

    @property
    def p_n(self) -> Optional[int]:
        return None if self.n is None else 2 * self.n + 1


@dataclass(frozen=True)
class AxialWavenumber:
    kz: complex
    kind: ModeKind


@dataclass(frozen=True)
class ModeCoefficient:
    D: tuple


def axial_radicand(p_m, p_n, g: SlitGeometry, w: WaveSpec):
    """k^2 - (p_n pi/b)^2 - (p_m pi/a)^2, vectorised over harmonics.

    ``p_n`` is ignored for an infinitely long slit.
    """
    r = w.k ** 2 - (np.asarray(p_m, dtype=float) * math.pi / g.a) ** 2
    if not g.infinite_length:
        r = r - (np.asarray(p_n, dtype=float) * math.pi / g.b) ** 2
    return r


def kz_from_radicand(radicand):
    """Square root on the decaying branch: real >= 0 or i*kappa, kappa > 0."""
    r = np.asarray(radicand, dtype=float)
    root = np.sqrt(np.abs(r))
    return np.where(r >= 0, root + 0j, 1j * root)


def _classify(radicand: float) -> ModeKind:
    if radicand > 0:
        return ModeKind.PROPAGATING
    if radicand < 0:
        return ModeKind.EVANESCENT
    return ModeKind.CUTOFF


def axial_wavenumber(mode: ModeIndex, g: SlitGeometry, w: WaveSpec) -> AxialWavenumber:
    r = float(axial_radicand(mode.p_m, mode.p_n or 0, g, w))
    return AxialWavenumber(complex(kz_from_radicand(r)), _classify(r))


def sine_coefficient(harmonic_m: int, harmonic_n: int, A=DEFAULT_POLARIZATION) -> ModeCoefficient:
    """Fourier sine coefficient of a constant, in raw harmonic numbers.

    Even harmonics have a zero coefficient.
    """
    A = _as_polarization(A)
    if harmonic_m < 1 or harmonic_n < 1:
        raise ValidationError("mode", "harmonic numbers start at 1")
    if harmonic_m % 2 == 0 or harmonic_n % 2 == 0:
        return ModeCoefficient((0j, 0j, 0j))
    scale = 16.0 / (harmonic_m * harmonic_n * math.pi ** 2)
    return ModeCoefficient(tuple(scale * v for v in A.A))


def mode_coefficient(mode: ModeIndex, A=DEFAULT_POLARIZATION) -> ModeCoefficient:
    A = _as_polarization(A)
    if mode.n is None:
        scale = 4.0 / (mode.p_m * math.pi)
        return ModeCoefficient(tuple(scale * v for v in A.A))
    return sine_coefficient(mode.p_m, mode.p_n, A)


def coefficient_scale(p_m, p_n=None):
    """Polarization-free part of the coefficient, vectorised."""
    p_m = np.asarray(p_m, dtype=float)
    if p_n is None:
        return 4.0 / (p_m * math.pi)
    return 16.0 / (p_m * np.asarray(p_n, dtype=float) * math.pi ** 2)


def transmission_factor(mode: ModeIndex, g: SlitGeometry, w: WaveSpec) -> complex:
    """exp(i kz c'): a phase for propagating modes, a decay for evanescent ones."""
    if g.c_prime == 0:
        return 1.0 + 0j
    kz = axial_wavenumber(mode, g, w).kz
    return complex(np.exp(1j * kz * g.c_prime))


@dataclass(frozen=True)
class ModeSet:
    """Modes retained by :func:`enumerate_modes`, as parallel arrays.

    Sorted lexicographically by (m, n). ``n`` is ``None`` for an
    infinitely long slit. ``coefficient`` is the polarization-free
    coefficient and ``transmission`` is exp(i kz depth).
    """

    m: np.ndarray
    n: Optional[np.ndarray]
    kz: np.ndarray
    radicand: np.ndarray
    coefficient: np.ndarray
    transmission: np.ndarray

    def __len__(self) -> int:
        return len(self.m)

    def __iter__(self) -> Iterator[tuple]:
        for i in range(len(self.m)):
            n = None if self.n is None else int(self.n[i])
            kind = _classify(float(self.radicand[i]))
            yield ModeIndex(int(self.m[i]), n), AxialWavenumber(complex(self.kz[i]), kind)

    @property
    def p_m(self) -> np.ndarray:
        return 2 * self.m + 1

    @property
    def p_n(self) -> Optional[np.ndarray]:
        return None if self.n is None else 2 * self.n + 1


def enumerate_modes(g: SlitGeometry, w: WaveSpec,
                    trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                    depth: Optional[float] = None) -> ModeSet:
    """Modes worth summing for a slit of the given thickness.

    A mode is kept when |coefficient * exp(i kz depth)| exceeds
    ``trunc.tail_tolerance`` times the fundamental coefficient and the
    absolute floor. Propagating modes below the index cap are always kept.
    ``depth`` defaults to the slit thickness.
    """
    depth = g.c_prime if depth is None else float(depth)
    idx = np.arange(trunc.max_mode_index + 1)
    if g.infinite_length:
        m, n = idx, None
        p_m, p_n = 2 * m + 1, None
        reference = float(coefficient_scale(1))
    else:
        mm, nn = np.meshgrid(idx, idx, indexing="ij")
        m, n = mm.ravel(), nn.ravel()
        p_m, p_n = 2 * m + 1, 2 * n + 1
        reference = float(coefficient_scale(1, 1))

    radicand = axial_radicand(p_m, p_n, g, w)
    kz = kz_from_radicand(radicand)
    coeff = coefficient_scale(p_m, p_n)
    if depth == 0:
        transmission = np.ones_like(kz)
    else:
        transmission = np.exp(1j * kz * depth)
    weight = coeff * np.abs(transmission)
    keep = (radicand > 0) | (
        (weight > trunc.tail_tolerance * reference) & (weight > ABSOLUTE_FLOOR))

    return ModeSet(
        m=m[keep],
        n=None if n is None else n[keep],
        kz=kz[keep],
        radicand=radicand[keep],
        coefficient=coeff[keep],
        transmission=transmission[keep],
    )


def _as_polarization(A) -> PolarizationAmplitude:
    if isinstance(A, PolarizationAmplitude):
        return A
    return PolarizationAmplitude(tuple(A))


def slit_wavefunction(x, y, z, t, g: SlitGeometry, w: WaveSpec,
                      A=DEFAULT_POLARIZATION,
                      trunc: TruncationPolicy = DEFAULT_TRUNCATION) -> np.ndarray:
    """Truncated mode sum for the field at one point inside the slit.

    Returns the complex 3-vector (psi_x, psi_y, psi_z). ``x`` is ignored
    (and may be ``None``) for an infinitely long slit.
    """
    A = _as_polarization(A)
    y, z, t = float(y), float(z), float(t)
    if not 0 <= y <= g.a:
        raise ValidationError("y", "point lies outside the slit (y)")
    if not 0 <= z <= g.c_prime:
        raise ValidationError("z", "point lies outside the slit (z)")
    if not g.infinite_length:
        x = float(x)
        if not 0 <= x <= g.b:
            raise ValidationError("x", "point lies outside the slit (x)")

    modes = enumerate_modes(g, w, trunc, depth=z)
    terms = modes.coefficient * np.sin(math.pi * modes.p_m * (y / g.a)) * modes.transmission
    if modes.n is not None:
        terms = terms * np.sin(math.pi * modes.p_n * (x / g.b))
    scalar = terms.sum() * np.exp(-1j * w.omega * t)
    return scalar * A.vector
