"""Preset parameter sets for the published figures."""
from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    DEFAULT_POLARIZATION,
    DEFAULT_TRUNCATION,
    INFINITE,
    PolarizationAmplitude,
    ScreenScan,
    SlitGeometry,
    TruncationPolicy,
    WaveSpec,
)

LAMBDA = 6.328e-7
R_SCREEN = 4.572
ALPHA = 0.001

# two-to-seven slit gratings
A_GRATING = 0.88e-4
PITCH_GRATING = 3.52e-4
D_GRATING = 2.64e-4
B_GRATING = 3.52e-4
C_GRATING = 0.88e-4

# single slit
A_SINGLE = 1.76e-4
B_SINGLE = 4.0e-4
C_SINGLE = 1.1e-6


@dataclass(frozen=True)
class Scenario:
    name: str
    description: str
    wave: WaveSpec
    geometry: SlitGeometry
    scan: ScreenScan = ScreenScan()
    trunc: TruncationPolicy = DEFAULT_TRUNCATION
    polarization: PolarizationAmplitude = DEFAULT_POLARIZATION


def _single(name, description, *, wavelength=LAMBDA, a=A_SINGLE, b=B_SINGLE,
            c_prime=C_SINGLE, beta_max=0.01):
    scan = ScreenScan(R=R_SCREEN, alpha_fixed=ALPHA, beta_min=-beta_max, beta_max=beta_max)
    return Scenario(name, description, WaveSpec(wavelength),
                    SlitGeometry(a, b, c_prime, 0.0, 1), scan)


def _build() -> dict:
    presets = []
    for n_slits, letter in zip(range(2, 8), "abcdef"):
        presets.append(Scenario(
            f"fig4{letter}", f"{n_slits}-slit grating, (a+d)/a = 4",
            WaveSpec(LAMBDA),
            SlitGeometry(A_GRATING, B_GRATING, C_GRATING, D_GRATING, n_slits),
            ScreenScan(R=R_SCREEN, alpha_fixed=ALPHA)))
    presets.append(_single("fig5", "single slit compared with the classical curve"))
    for factor in (5, 10, 20):
        presets.append(_single(f"fig6-{factor}a", f"single slit, width {factor}a",
                               a=factor * A_SINGLE))
    for factor in (1, 3, 5):
        presets.append(_single(f"fig7-{factor}lambda", f"square slit a = b = {factor} lambda",
                               a=factor * LAMBDA, b=factor * LAMBDA, beta_max=0.5))
    presets.append(_single("fig8", "square hole a = b = 0.1 lambda",
                           a=0.1 * LAMBDA, b=0.1 * LAMBDA))
    for label, length in (("50b", 50 * B_SINGLE), ("70b", 70 * B_SINGLE), ("inf", INFINITE)):
        presets.append(_single(f"fig9-{label}", f"single slit, length {label}", b=length))
    for factor in (100, 1000, 2000, 3000):
        presets.append(_single(f"fig10-{factor}c", f"single slit, thickness {factor}c'",
                               c_prime=factor * C_SINGLE))
    for factor in (10, 20, 50):
        presets.append(_single(f"fig11-{factor}lambda", f"single slit, wavelength {factor} lambda",
                               wavelength=factor * LAMBDA, beta_max=0.2))
    for factor in (1, 10, 50):
        presets.append(Scenario(
            f"fig12-{factor}c", f"double slit, thickness {factor}c'",
            WaveSpec(LAMBDA),
            SlitGeometry(A_GRATING, 4 * A_GRATING, factor * C_GRATING, D_GRATING, 2),
            ScreenScan(R=R_SCREEN, alpha_fixed=ALPHA)))
    return {s.name: s for s in presets}


SCENARIOS = _build()


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        known = ", ".join(SCENARIOS)
        raise KeyError(f"unknown scenario {name!r} (known: {known})") from None


def with_scan(s: Scenario, **changes) -> Scenario:
    """Copy of a scenario with some ScreenScan fields replaced."""
    return replace(s, scan=replace(s.scan, **changes))
