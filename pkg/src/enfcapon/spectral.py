"""Periodogram-based per-frame frequency estimation.

Zero-padded periodogram, in-band peak search, and sub-bin refinement by
fitting a parabola to three log-spectrum samples around the maximum.
The refinement and peak search are shared with the Capon estimator,
which produces the same PsdEstimate type.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

DEFAULT_PAD_FACTOR = 4


@dataclass(frozen=True)
class PsdEstimate:
    """Power values on the dense grid omega_q = 2*pi*q/Q, q = 0..Q-1."""

    values: np.ndarray
    sample_rate_hz: float

    @property
    def grid_size(self):
        return self.values.size

    @property
    def grid_hz(self):
        q = self.values.size
        return np.arange(q) * (self.sample_rate_hz / q)

    def bin_hz(self, q):
        return q * self.sample_rate_hz / self.values.size


class RefinedPeak(NamedTuple):
    freq_hz: float
    refined: bool


def periodogram(frame, sample_rate_hz, pad_factor=DEFAULT_PAD_FACTOR):
    """|DFT|^2 / N of the frame zero-padded to Q = pad_factor * N."""
    frame = np.asarray(frame, dtype=np.float64)
    if frame.size == 0:
        raise ValueError("empty frame")
    if pad_factor < 1:
        raise ValueError("pad_factor must be at least 1")
    n = frame.size
    grid = pad_factor * n
    spectrum = np.abs(np.fft.fft(frame, grid)) ** 2 / n
    return PsdEstimate(spectrum, sample_rate_hz)


def peak_search(psd, band):
    """Index of the largest PSD value whose grid frequency lies in band.

    Ties resolve to the lowest index.  The band must contain at least
    three grid points so quadratic refinement has a neighborhood.
    """
    f_lo, f_hi = band
    nyquist = psd.sample_rate_hz / 2.0
    if not (0.0 < f_lo < f_hi < nyquist):
        raise ValueError(f"band ({f_lo:g}, {f_hi:g}) Hz outside (0, {nyquist:g}) Hz")
    grid = psd.grid_hz
    half = psd.grid_size // 2
    in_band = np.flatnonzero((grid[:half] >= f_lo) & (grid[:half] <= f_hi))
    if in_band.size < 3:
        raise ValueError("band contains fewer than 3 grid points")
    return int(in_band[np.argmax(psd.values[in_band])])


def refine_quadratic(psd, q_max):
    """Sub-bin peak frequency from a parabola fit on the log spectrum.

    With alpha, beta, gamma the log power at bins q_max-1..q_max+1, the
    vertex offset is 0.5*(alpha - gamma)/(alpha - 2*beta + gamma),
    clamped to [-0.5, 0.5].  Falls back to the raw bin frequency (with
    refined=False) when a fit point has zero power or the peak sits at
    the grid boundary.
    """
    grid = psd.grid_size
    if not 1 <= q_max <= grid // 2 - 2:
        return RefinedPeak(psd.bin_hz(q_max), False)
    triple = psd.values[q_max - 1 : q_max + 2]
    if np.any(triple <= 0.0):
        return RefinedPeak(psd.bin_hz(q_max), False)
    log_a, log_b, log_c = np.log(triple)
    denom = log_a - 2.0 * log_b + log_c
    if denom == 0.0:
        offset = 0.0
    else:
        offset = float(np.clip(0.5 * (log_a - log_c) / denom, -0.5, 0.5))
    return RefinedPeak((q_max + offset) * psd.sample_rate_hz / grid, True)


def estimate_frame_stft(frame, sample_rate_hz, band, pad_factor=DEFAULT_PAD_FACTOR,
                        interpolate=True):
    """Full per-frame STFT estimate: periodogram -> peak -> refinement."""
    psd = periodogram(frame, sample_rate_hz, pad_factor)
    q_max = peak_search(psd, band)
    if not interpolate:
        return psd.bin_hz(q_max)
    return refine_quadratic(psd, q_max).freq_hz
