"""Sampled patterns and the structural measurements made on them."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.signal import find_peaks

from .classical import classical_intensity, envelope
from .core import (
    DEFAULT_POLARIZATION,
    DEFAULT_TRUNCATION,
    ScreenScan,
    SlitGeometry,
    TruncationPolicy,
    ValidationError,
    WaveSpec,
)
from .kirchhoff import intensity_pattern
from .slitmodes import _as_polarization


@dataclass(frozen=True)
class PatternSeries:
    """Intensity sampled on a strictly increasing grid of beta."""

    beta: np.ndarray
    intensity: np.ndarray
    model: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=float)
        inten = np.asarray(self.intensity, dtype=float)
        if beta.ndim != 1 or len(beta) < 2:
            raise ValidationError("series", "series needs at least 2 samples")
        if inten.shape != beta.shape:
            raise ValidationError("series", "beta and intensity lengths differ")
        if np.any(np.diff(beta) <= 0):
            raise ValidationError("series", "beta must be strictly increasing")
        if np.any(inten < 0) or not np.all(np.isfinite(inten)):
            raise ValidationError("series", "intensities must be finite and non-negative")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "intensity", inten)

    @property
    def sin_beta(self) -> np.ndarray:
        return np.sin(self.beta)

    @property
    def step(self) -> float:
        return float(np.mean(np.diff(self.beta)))

    def screen_y(self) -> np.ndarray:
        return self.params.get("R", 4.572) * np.tan(self.beta)

    def scaled(self, factor: float) -> "PatternSeries":
        return PatternSeries(self.beta, self.intensity * factor, self.model, dict(self.params))


def _series_params(g: SlitGeometry, w: WaveSpec, scan: ScreenScan) -> dict:
    return {
        "wavelength": w.wavelength,
        "a": g.a,
        "b": g.b,
        "c_prime": g.c_prime,
        "d": g.d,
        "n_slits": g.n_slits,
        "R": scan.R,
        "alpha": scan.alpha_fixed,
    }


def scan_pattern(model: str, g: SlitGeometry, w: WaveSpec, A=DEFAULT_POLARIZATION,
                 scan: Optional[ScreenScan] = None,
                 trunc: TruncationPolicy = DEFAULT_TRUNCATION,
                 I0: float = 1.0) -> PatternSeries:
    """Evaluate one model on the scan's uniform beta grid.

    The classical model uses theta = beta.
    """
    scan = ScreenScan() if scan is None else scan
    betas = scan.betas()
    if model == "quantum":
        values = intensity_pattern(scan.alpha_fixed, betas, g, w, _as_polarization(A),
                                   scan.R, trunc)
    elif model == "classical":
        values = classical_intensity(betas, g.a, g.d, g.n_slits, w.wavelength, I0)
    else:
        raise ValidationError("model", f"unknown model {model!r}")
    return PatternSeries(betas, values, model, _series_params(g, w, scan))


@dataclass(frozen=True)
class GapCount:
    left_order: int
    right_order: int
    secondary_maxima: int
    minima: int


@dataclass(frozen=True)
class ExtremaReport:
    """Extrema of a series. Maxima/minima are (index, beta, intensity[, order])."""

    principal_maxima: list
    secondary_maxima: list
    minima: list
    gaps: list

    @property
    def secondary_maxima_per_gap(self) -> Optional[int]:
        """The common secondary-maximum count if all gaps agree, else None."""
        counts = {g.secondary_maxima for g in self.gaps}
        return counts.pop() if len(counts) == 1 else None

    @property
    def minima_per_gap(self) -> Optional[int]:
        counts = {g.minima for g in self.gaps}
        return counts.pop() if len(counts) == 1 else None


def _strict_peaks(values: np.ndarray, prominence: float) -> np.ndarray:
    idx, _ = find_peaks(values, prominence=prominence)
    keep = [i for i in idx if values[i] > values[i - 1] and values[i] > values[i + 1]]
    return np.asarray(keep, dtype=int)


def _grating(series: PatternSeries):
    p = series.params
    try:
        return p["a"], p["a"] + p["d"], int(p["n_slits"]), p["wavelength"]
    except KeyError:
        raise ValidationError("series", "series lacks geometry parameters") from None


def find_extrema(series: PatternSeries, prominence_floor: float = 1e-9) -> ExtremaReport:
    """Locate maxima and minima and sort maxima into principal/secondary.

    A maximum is principal for order j when it is the strongest maximum
    within a half-lobe (spacing / 2N in sin beta) of sin beta = j lambda/(a+d)
    and reaches at least half of ``peak * envelope(sin beta)``, the
    grating prediction scaled to the series peak. For one slit only the
    central maximum is principal. Extrema whose prominence is below
    ``prominence_floor`` times the global maximum are ignored.
    """
    if len(series.beta) < 3:
        raise ValidationError("series", "series too short for extrema")
    a, pitch, n_slits, lam = _grating(series)
    values = series.intensity
    peak = float(values.max())
    if peak <= 0:
        return ExtremaReport([], [], [], [])
    floor = prominence_floor * peak
    max_idx = _strict_peaks(values, floor)
    # minima as peaks of the reflected series; shift keeps it non-negative
    min_idx = _strict_peaks(peak - values, floor)
    s = series.sin_beta

    candidates = {}
    if n_slits == 1:
        if len(max_idx):
            best = max_idx[np.argmax(values[max_idx])]
            candidates[0] = best
    else:
        spacing = lam / pitch
        for i in max_idx:
            j = int(round(s[i] / spacing))
            if abs(s[i] - j * spacing) > spacing / (2 * n_slits):
                continue
            if values[i] < 0.5 * peak * float(envelope(s[i], a, lam)):
                continue
            if j not in candidates or values[i] > values[candidates[j]]:
                candidates[j] = i

    principal_set = set(candidates.values())
    principal = [(int(i), float(series.beta[i]), float(values[i]), j)
                 for j, i in sorted(candidates.items(), key=lambda kv: kv[1])]
    secondary = [(int(i), float(series.beta[i]), float(values[i]))
                 for i in max_idx if i not in principal_set]
    minima = [(int(i), float(series.beta[i]), float(values[i])) for i in min_idx]

    gaps = []
    for left, right in zip(principal, principal[1:]):
        if right[3] != left[3] + 1:
            continue
        lo, hi = left[0], right[0]
        gaps.append(GapCount(
            left[3], right[3],
            sum(1 for e in secondary if lo < e[0] < hi),
            sum(1 for e in minima if lo < e[0] < hi),
        ))
    return ExtremaReport(principal, secondary, minima, gaps)


def missing_orders(series: PatternSeries, g: Optional[SlitGeometry] = None,
                   w: Optional[WaveSpec] = None, threshold: float = 1e-3) -> list:
    """Grating orders j >= 1 whose intensity is suppressed.

    Order j is missing when the sample nearest sin beta = +-j lambda/(a+d)
    (every such position inside the scan) is below ``threshold`` times the
    strongest principal maximum.
    """
    if g is not None:
        pitch, n_slits = g.pitch, g.n_slits
    else:
        _, pitch, n_slits, _ = _grating(series)
    lam = w.wavelength if w is not None else series.params["wavelength"]
    if n_slits < 2:
        raise ValidationError("n_slits", "missing orders need at least 2 slits")
    s = series.sin_beta
    spacing = lam / pitch
    j_max = int(math.floor(max(abs(s[0]), abs(s[-1])) / spacing))
    report = find_extrema(series)
    if report.principal_maxima:
        ref = max(p[2] for p in report.principal_maxima)
    else:
        ref = float(series.intensity.max())

    missing = []
    covered = False
    for j in range(1, j_max + 1):
        hits = []
        for target in (j * spacing, -j * spacing):
            if s[0] <= target <= s[-1]:
                hits.append(series.intensity[int(np.argmin(np.abs(s - target)))])
        if not hits:
            continue
        covered = True
        if all(v < threshold * ref for v in hits):
            missing.append(j)
    if not covered:
        raise ValidationError("series", "scan range covers no grating orders")
    return missing


@dataclass(frozen=True)
class AgreementMetrics:
    rms: float
    max_peak_offset: float
    secondary_ratio: float


def _peak_normalized(values: np.ndarray) -> np.ndarray:
    peak = values.max()
    return values / peak if peak > 0 else np.zeros_like(values)


def normalized_rms(q: PatternSeries, c: PatternSeries) -> float:
    diff = _peak_normalized(q.intensity) - _peak_normalized(c.intensity)
    return float(np.sqrt(np.mean(diff ** 2)))


def compare_patterns(q: PatternSeries, c: PatternSeries) -> AgreementMetrics:
    """Agreement between two series on the same grid.

    Returns the RMS difference of the peak-normalized curves, the largest
    principal-peak offset in grid steps over orders present in both, and
    the ratio of secondary-maximum counts (q over c).
    """
    if q.beta.shape != c.beta.shape or not np.array_equal(q.beta, c.beta):
        raise ValidationError("series", "series are on different beta grids")
    rq, rc = find_extrema(q), find_extrema(c)
    pos_q = {p[3]: p[0] for p in rq.principal_maxima}
    pos_c = {p[3]: p[0] for p in rc.principal_maxima}
    common = sorted(set(pos_q) & set(pos_c))
    offset = max((abs(pos_q[j] - pos_c[j]) for j in common), default=math.nan)
    nq, nc = len(rq.secondary_maxima), len(rc.secondary_maxima)
    if nc == 0:
        ratio = 1.0 if nq == 0 else math.inf
    else:
        ratio = nq / nc
    return AgreementMetrics(normalized_rms(q, c), float(offset), ratio)


def integrated_intensity(series: PatternSeries) -> float:
    """Trapezoid integral of intensity over beta."""
    return float(np.trapezoid(series.intensity, series.beta))


def first_nulls(series: PatternSeries) -> tuple:
    """sin(beta) of the first local minimum on each side of the global maximum."""
    values = series.intensity
    centre = int(np.argmax(values))
    lows = _strict_peaks(values.max() - values, 0.0)
    left = [i for i in lows if i < centre]
    right = [i for i in lows if i > centre]
    if not left or not right:
        raise ValidationError("series", "no minimum on one side of the central peak")
    s = series.sin_beta
    return float(s[left[-1]]), float(s[right[0]])
