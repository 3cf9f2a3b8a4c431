"""End-to-end ENF extraction: decimate, band-pass, frame, estimate, map.

The estimation band handed to the per-frame estimator is the filter
passband widened by two transition bandwidths, so numerical peaks in the
deep stopband can never win the argmax.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import capon, spectral
from .bandpass import apply_zero_phase, design_bandpass
from .errors import DegenerateInputError
from .framing import plan_frames, windowed_frame
from .signal_io import decimate
from .track import EnfTrack
from .windowing import DEFAULT_KAISER_BETA, make_window

# Sanity envelope: a mapped-to-fundamental estimate farther than this
# from nominal is recorded as invalid.
VALID_ENVELOPE_HZ = 1.0

ESTIMATORS = ("capon", "stft")


@dataclass(frozen=True)
class PipelineConfig:
    nominal_hz: float = 60.0
    harmonic: int = 3
    frame_len_s: float = 1.0
    shift_s: float = 1.0
    window: str = "parzen"
    kaiser_beta: float = DEFAULT_KAISER_BETA
    estimator: str = "capon"
    taps: int = 1001
    passband_hz: float = 0.1
    capon_order: int = 10
    pad_factor: int = 4
    working_rate_hz: float = 441.0
    interpolate: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}")
        if self.harmonic < 1:
            raise ValueError("harmonic must be a positive integer")
        if self.harmonic * self.nominal_hz >= self.working_rate_hz / 2.0:
            raise ValueError(
                f"harmonic band {self.harmonic * self.nominal_hz:g} Hz is not "
                f"below the working Nyquist {self.working_rate_hz / 2.0:g} Hz"
            )

    @property
    def center_hz(self):
        return self.harmonic * self.nominal_hz


def power_config(**overrides):
    """Power-mains preset: 3rd harmonic, 1001-tap filter."""
    return replace(PipelineConfig(), **overrides)


def speech_config(**overrides):
    """Speech preset: 2nd harmonic, 4801-tap filter."""
    return replace(PipelineConfig(harmonic=2, taps=4801), **overrides)


def _decimation_factor(sample_rate_hz, working_rate_hz):
    ratio = sample_rate_hz / working_rate_hz
    factor = int(round(ratio))
    if factor < 1 or abs(ratio - factor) > 1e-9:
        raise ValueError(
            f"sample rate {sample_rate_hz:g} Hz is not an integer multiple of "
            f"the working rate {working_rate_hz:g} Hz"
        )
    return factor


def estimation_band(flt):
    """Filter passband widened by two transition bandwidths, clipped to
    the open Nyquist interval."""
    margin = flt.passband_hz / 2.0 + 2.0 * flt.transition_hz
    nyquist = flt.sample_rate_hz / 2.0
    return (
        max(flt.center_hz - margin, 1e-9),
        min(flt.center_hz + margin, nyquist * (1.0 - 1e-9)),
    )


def extract_enf(signal, config):
    """Extract the per-frame ENF track, mapped to the fundamental.

    Frames whose estimate is degenerate or falls outside the sanity
    envelope around nominal are recorded as NaN entries.
    """
    factor = _decimation_factor(signal.sample_rate_hz, config.working_rate_hz)
    working = decimate(signal, factor)
    flt = design_bandpass(
        working.sample_rate_hz, config.center_hz, config.passband_hz, config.taps
    )
    if len(working) < config.taps:
        raise DegenerateInputError(
            f"signal of {len(working)} samples at the working rate is shorter "
            f"than the {config.taps}-tap filter"
        )
    filtered = apply_zero_phase(flt, working)
    plan = plan_frames(
        len(filtered), config.frame_len_s, config.shift_s, filtered.sample_rate_hz
    )
    if plan.frame_count == 0:
        raise DegenerateInputError(
            f"filtered signal of {len(filtered)} samples is shorter than one "
            f"{plan.frame_len}-sample frame"
        )
    window = make_window(config.window, plan.frame_len, config.kaiser_beta)
    band = estimation_band(flt)
    rate = filtered.sample_rate_hz

    def estimate(k):
        frame = windowed_frame(filtered, plan, k, window)
        try:
            if config.estimator == "capon":
                return capon.capon_estimate_frame(
                    frame, rate, band,
                    order=config.capon_order,
                    pad_factor=config.pad_factor,
                    interpolate=config.interpolate,
                )
            return spectral.estimate_frame_stft(
                frame, rate, band,
                pad_factor=config.pad_factor,
                interpolate=config.interpolate,
            )
        except DegenerateInputError:
            return np.nan

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            freqs = np.fromiter(
                pool.map(estimate, range(plan.frame_count)),
                dtype=np.float64,
                count=plan.frame_count,
            )
    else:
        freqs = np.fromiter(
            (estimate(k) for k in range(plan.frame_count)),
            dtype=np.float64,
            count=plan.frame_count,
        )

    indices = np.arange(plan.frame_count, dtype=np.int64)
    times = filtered.origin_offset_s + indices * plan.shift_s
    raw = EnfTrack(
        indices, times, freqs,
        frame_len_s=plan.frame_len_s,
        shift_s=plan.shift_s,
        harmonic=config.harmonic,
        nominal_hz=config.nominal_hz,
    )
    track = to_fundamental(raw)
    out_of_envelope = np.abs(track.freq_hz - config.nominal_hz) > VALID_ENVELOPE_HZ
    if np.any(out_of_envelope & track.valid):
        freqs = track.freq_hz.copy()
        freqs[out_of_envelope] = np.nan
        track = replace(track, freq_hz=freqs)
    return track


def to_fundamental(track):
    """Divide a harmonic-band track down to the fundamental."""
    return track.to_fundamental()
