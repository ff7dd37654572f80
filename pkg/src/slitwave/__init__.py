"""Diffraction of light by thick rectangular slits via waveguide-mode expansion."""

__version__ = "0.1.0"

from .core import (
    C_LIGHT,
    INFINITE,
    ObservationDirection,
    PolarizationAmplitude,
    ScreenScan,
    SlitGeometry,
    TruncationPolicy,
    ValidationError,
    WaveSpec,
    validate_geometry,
)
from .slitmodes import (
    ModeIndex,
    ModeKind,
    axial_wavenumber,
    enumerate_modes,
    mode_coefficient,
    slit_wavefunction,
    transmission_factor,
)
from .kirchhoff import (
    aperture_integral,
    infinite_length_amplitude,
    intensity,
    intensity_pattern,
    multi_slit_amplitude,
    obliquity_bracket,
    single_slit_amplitude,
)
from .classical import classical_intensity
from .analysis import (
    PatternSeries,
    compare_patterns,
    find_extrema,
    missing_orders,
    scan_pattern,
)
