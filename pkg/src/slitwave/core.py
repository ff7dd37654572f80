"""Domain types, constants and parameter validation.

All lengths are in metres, angles in radians, times in seconds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

#: speed of light in vacuum [m/s]
C_LIGHT = 299_792_458.0

#: sentinel slit length selecting the infinitely long slit formulas
INFINITE = math.inf


class ValidationError(ValueError):
    """Invalid physical parameter.

    ``field`` names the offending parameter so callers (the CLI in
    particular) can report it without parsing the message.
    """

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field
        self.message = message


def _finite(name: str, value: float) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(name, f"{name} must be a real number") from None
    if math.isnan(value):
        raise ValidationError(name, f"{name} must not be NaN")
    return value


def is_infinite(length: float) -> bool:
    return math.isinf(length) and length > 0


@dataclass(frozen=True)
class WaveSpec:
    """Monochromatic incident light, specified by its vacuum wavelength."""

    wavelength: float

    def __post_init__(self):
        lam = _finite("wavelength", self.wavelength)
        if not lam > 0 or math.isinf(lam):
            raise ValidationError("wavelength", "wavelength must be positive")
        object.__setattr__(self, "wavelength", lam)

    @property
    def k(self) -> float:
        """Wavenumber 2*pi/lambda [1/m]."""
        return 2.0 * math.pi / self.wavelength

    @property
    def omega(self) -> float:
        """Angular frequency c*k [rad/s]."""
        return C_LIGHT * self.k


@dataclass(frozen=True)
class SlitGeometry:
    """One or more identical rectangular slits in an opaque screen.

    ``a`` is the width (y), ``b`` the length (x, may be ``INFINITE``),
    ``c_prime`` the thickness (z), ``d`` the edge-to-edge gap between
    neighbouring slits, so the slit pitch is ``a + d``.
    """

    a: float
    b: float
    c_prime: float
    d: float = 0.0
    n_slits: int = 1

    def __post_init__(self):
        a = _finite("a", self.a)
        b = _finite("b", self.b)
        c = _finite("c_prime", self.c_prime)
        d = _finite("d", self.d)
        if not a > 0 or math.isinf(a):
            raise ValidationError("a", "width must be positive")
        if not b > 0:
            raise ValidationError("b", "length must be positive")
        if c < 0 or math.isinf(c):
            raise ValidationError("c_prime", "thickness must be non-negative")
        if d < 0 or math.isinf(d):
            raise ValidationError("d", "gap must be non-negative")
        if isinstance(self.n_slits, bool) or int(self.n_slits) != self.n_slits:
            raise ValidationError("n_slits", "slit count must be an integer")
        if self.n_slits < 1:
            raise ValidationError("n_slits", "slit count must be at least 1")
        for name, value in (("a", a), ("b", b), ("c_prime", c), ("d", d)):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "n_slits", int(self.n_slits))

    @property
    def pitch(self) -> float:
        return self.a + self.d

    @property
    def infinite_length(self) -> bool:
        return is_infinite(self.b)


@dataclass(frozen=True)
class PolarizationAmplitude:
    """Constant complex amplitude vector (A_x, A_y, A_z) of the incident wave."""

    A: tuple = (1.0 + 0j, 0j, 0j)

    def __post_init__(self):
        vec = tuple(complex(v) for v in self.A)
        if len(vec) != 3:
            raise ValidationError("A", "polarization amplitude needs 3 components")
        if any(math.isnan(v.real) or math.isnan(v.imag) for v in vec):
            raise ValidationError("A", "polarization amplitude must be finite")
        object.__setattr__(self, "A", vec)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.A, dtype=complex)

    @property
    def norm_squared(self) -> float:
        return float(sum(abs(v) ** 2 for v in self.A))


DEFAULT_POLARIZATION = PolarizationAmplitude()


@dataclass(frozen=True)
class ObservationDirection:
    """Far-field direction given by its angles to the yz and xz planes.

    The propagation vector has components k*sin(alpha) along x and
    k*sin(beta) along y.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        alpha = _finite("alpha", self.alpha)
        beta = _finite("beta", self.beta)
        if math.isinf(alpha) or math.isinf(beta):
            raise ValidationError("direction", "direction angles must be finite")
        if math.sin(alpha) ** 2 + math.sin(beta) ** 2 > 1.0:
            raise ValidationError(
                "direction", "sin^2(alpha) + sin^2(beta) must not exceed 1")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def cos_theta(self) -> float:
        s = 1.0 - math.sin(self.alpha) ** 2 - math.sin(self.beta) ** 2
        return math.sqrt(max(s, 0.0))


MODEL_CHOICES = ("quantum", "classical", "both")


@dataclass(frozen=True)
class ScreenScan:
    """A 1-D cut across the screen: beta sweeps at fixed alpha."""

    R: float = 4.572
    alpha_fixed: float = 0.001
    beta_min: float = -0.01
    beta_max: float = 0.01
    n_samples: int = 4001
    model: str = "both"

    def __post_init__(self):
        R = _finite("R", self.R)
        if not R > 0 or math.isinf(R):
            raise ValidationError("R", "screen distance must be positive")
        lo = _finite("beta_min", self.beta_min)
        hi = _finite("beta_max", self.beta_max)
        if not lo < hi:
            raise ValidationError("beta_min", "beta_min must be below beta_max")
        if int(self.n_samples) != self.n_samples or self.n_samples < 2:
            raise ValidationError("n_samples", "need at least 2 samples")
        if self.model not in MODEL_CHOICES:
            raise ValidationError("model", f"unknown model {self.model!r}")
        # direction validity at both ends of the sweep
        ObservationDirection(self.alpha_fixed, lo)
        ObservationDirection(self.alpha_fixed, hi)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "n_samples", int(self.n_samples))

    def betas(self) -> np.ndarray:
        return np.linspace(self.beta_min, self.beta_max, self.n_samples)

    @property
    def step(self) -> float:
        return (self.beta_max - self.beta_min) / (self.n_samples - 1)


@dataclass(frozen=True)
class TruncationPolicy:
    """Where to cut the infinite mode sums.

    Modes with index above ``max_mode_index`` are never used. Below the
    cap, evanescent modes whose weight falls under ``tail_tolerance``
    times the fundamental coefficient are dropped.
    """

    max_mode_index: int = 2000
    tail_tolerance: float = 1e-9

    def __post_init__(self):
        if int(self.max_mode_index) != self.max_mode_index or self.max_mode_index < 1:
            raise ValidationError("max_mode_index", "max_mode_index must be >= 1")
        tol = _finite("tail_tolerance", self.tail_tolerance)
        if not 0 < tol < 1:
            raise ValidationError("tail_tolerance", "tail_tolerance must lie in (0, 1)")
        object.__setattr__(self, "max_mode_index", int(self.max_mode_index))


DEFAULT_TRUNCATION = TruncationPolicy()


@dataclass(frozen=True)
class GeometryReport:
    """Result of :func:`validate_geometry`."""

    geometry: SlitGeometry
    wave: WaveSpec
    pitch: float
    has_propagating_modes: bool
    notes: tuple = field(default=())


def validate_geometry(g: SlitGeometry, w: WaveSpec) -> GeometryReport:
    """Check a geometry against a wave and annotate it.

    The lowest (m = n = 0) mode propagates iff
    (2 pi/lambda)^2 - (pi/a)^2 - (pi/b)^2 > 0; if it does not, no mode does.
    """
    # re-run construction checks so duck-typed inputs get the same errors
    g = SlitGeometry(g.a, g.b, g.c_prime, g.d, g.n_slits)
    w = WaveSpec(w.wavelength)
    radicand = w.k ** 2 - (math.pi / g.a) ** 2
    if not g.infinite_length:
        radicand -= (math.pi / g.b) ** 2
    propagating = radicand > 0
    notes = () if propagating else ("no propagating modes",)
    return GeometryReport(g, w, g.pitch, propagating, notes)
