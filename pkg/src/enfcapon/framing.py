"""Overlapping frame extraction at a fixed shift cadence."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FramePlan:
    frame_len: int
    shift: int
    frame_count: int
    sample_rate_hz: float

    @property
    def frame_len_s(self):
        return self.frame_len / self.sample_rate_hz

    @property
    def shift_s(self):
        return self.shift / self.sample_rate_hz


def plan_frames(signal_len, frame_len_s, shift_s, sample_rate_hz):
    """Frame layout: N = round(L*Fs), shift = round(shift_s*Fs).

    A trailing partial frame is dropped; a signal shorter than one frame
    yields frame_count 0 (downstream decides whether that is an error).
    """
    if frame_len_s <= 0 or shift_s <= 0:
        raise ValueError("frame length and shift must be positive")
    frame_len = int(round(frame_len_s * sample_rate_hz))
    shift = int(round(shift_s * sample_rate_hz))
    if frame_len < 1 or shift < 1:
        raise ValueError("frame length and shift must round to at least 1 sample")
    if signal_len >= frame_len:
        count = (signal_len - frame_len) // shift + 1
    else:
        count = 0
    return FramePlan(frame_len, shift, count, sample_rate_hz)


def frame_slice(signal, plan, k):
    """Raw samples of frame k: indices [k*shift, k*shift + N)."""
    if not 0 <= k < plan.frame_count:
        raise IndexError(f"frame {k} out of range [0, {plan.frame_count})")
    start = k * plan.shift
    return signal.samples[start : start + plan.frame_len]


def windowed_frame(signal, plan, k, window):
    """Elementwise product of frame k with the window taps."""
    if len(window) != plan.frame_len:
        raise ValueError(
            f"window length {len(window)} does not match frame length {plan.frame_len}"
        )
    return frame_slice(signal, plan, k) * window.taps


def iter_windowed_frames(signal, plan, window):
    for k in range(plan.frame_count):
        yield k, windowed_frame(signal, plan, k, window)
