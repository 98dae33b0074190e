"""Time-frequency waterfall diagrams by envelope demodulation.

Every row of the diagram is the envelope of the signal after a band-pass
centred on one analysis frequency. The whole record enters each row, and the
band widens with frequency following an empirical schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._fft import fft
from .core import Signal, _freeze, dft_forward, frequency_grid
from .filtering import bandpass_weight

__all__ = [
    "WaterfallDiagram",
    "bandwidth_schedule",
    "envelope_sign",
    "fast_envelope",
    "waterfall",
    "period_axis",
    "to_period_axis",
    "to_frequency_axis",
]


@dataclass(frozen=True, eq=False)
class WaterfallDiagram:
    """Amplitude map with ``amplitudes[row, col]`` at ``(axis[row], times[col])``.

    ``axis`` holds frequencies when ``axis_mode == "frequency"`` and periods
    when ``axis_mode == "period"``.
    """

    times: np.ndarray
    axis: np.ndarray
    amplitudes: np.ndarray
    axis_mode: str = "frequency"

    def __post_init__(self):
        if self.axis_mode not in ("frequency", "period"):
            raise ValueError(f"unknown axis mode {self.axis_mode!r}")
        t = np.asarray(self.times, dtype=float)
        ax = np.asarray(self.axis, dtype=float)
        amp = np.asarray(self.amplitudes, dtype=float)
        if amp.shape != (ax.size, t.size):
            raise ValueError(
                f"amplitude matrix {amp.shape} does not match axes "
                f"({ax.size}, {t.size})")
        object.__setattr__(self, "times", _freeze(t))
        object.__setattr__(self, "axis", _freeze(ax))
        object.__setattr__(self, "amplitudes", _freeze(amp))

    @property
    def frequencies(self) -> np.ndarray:
        if self.axis_mode != "frequency":
            raise ValueError("diagram is on the period axis")
        return self.axis

    @property
    def periods(self) -> np.ndarray:
        if self.axis_mode != "period":
            raise ValueError("diagram is on the frequency axis")
        return self.axis


def bandwidth_schedule(fc: float, delta_f: float, wd: float) -> float:
    """Band-pass width used at analysis frequency ``fc``.

    ``4*delta_f`` for low frequencies, ``fc/4`` above ``16*delta_f``, capped
    at ``wd*delta_f``. Written as ``min(max(4 df, fc/4), wd df)``, which is
    continuous and nondecreasing in ``fc``.
    """
    if not delta_f > 0:
        raise ValueError("delta_f must be positive")
    if not wd > 0:
        raise ValueError("wd must be positive")
    if fc < 0:
        raise ValueError("fc must be nonnegative")
    return min(max(4.0 * delta_f, fc / 4.0), wd * delta_f)


def envelope_sign(n: int) -> np.ndarray:
    # 1 - sign(f - mean(f)) on the bin grid, first bin forced to 1
    m = np.arange(n, dtype=float)
    s = 1.0 - np.sign(m - m.mean())
    s[0] = 1.0
    return s


def _envelope_rows(X: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Envelopes for each row of ``weights`` applied to spectrum ``X``."""
    Y = weights * (X * envelope_sign(X.size))
    return np.abs(fft(Y + 1j * Y, inverse=True) / np.sqrt(2.0))


def fast_envelope(signal: Signal, fc: float, bw: float, n: int = 3) -> np.ndarray:
    """Envelope of ``signal`` after the band-pass ``(fc, bw, n)``.

    Filtering and the Hilbert step share one spectrum and one back
    transform.
    """
    ts = signal.require_uniform("fast_envelope")
    if signal.is_complex:
        raise ValueError("fast_envelope needs a real-valued signal")
    if not bw > 0:
        raise ValueError("bw must be positive")
    X = dft_forward(signal.values)
    f = frequency_grid(X.size, ts)
    w = bandpass_weight(f, fc, bw, n)
    return _envelope_rows(X, w[np.newaxis, :])[0]


def waterfall(signal: Signal, nf: int = 3, wd: float = 64.0) -> WaterfallDiagram:
    """Waterfall diagram on the DFT frequency grid from 0 to ``fs/2``.

    Row ``r`` equals ``fast_envelope(signal, f_r, bandwidth_schedule(f_r,
    df, wd), nf)``. Rows are independent and evaluated as one batch.
    """
    ts = signal.require_uniform("waterfall")
    if len(signal) < 8:
        raise ValueError("waterfall needs at least 8 samples")
    if signal.is_complex:
        raise ValueError("waterfall needs a real-valued signal")
    n = len(signal)
    df = 1.0 / (n * ts)
    grid = frequency_grid(n, ts)
    fcs = grid[: n // 2 + 1]
    W = np.empty((fcs.size, n))
    for r, fc in enumerate(fcs):
        W[r] = bandpass_weight(grid, fc, bandwidth_schedule(fc, df, wd), nf)
    X = dft_forward(signal.values)
    return WaterfallDiagram(signal.positions, fcs, _envelope_rows(X, W))


def period_axis(frequencies) -> np.ndarray:
    """Reciprocal of ``frequencies`` with ``f = 0`` mapped to twice the
    largest finite period."""
    f = np.asarray(frequencies, dtype=float)
    with np.errstate(divide="ignore"):
        p = 1.0 / f
    finite = np.isfinite(p)
    if not finite.any():
        raise ValueError("no nonzero frequency to derive periods from")
    p[~finite] = 2.0 * p[finite].max()
    return p


def to_period_axis(wf: WaterfallDiagram, n_periods: int | None = None) -> WaterfallDiagram:
    """Re-map a frequency-axis diagram onto a uniform period grid.

    Periods ``1/f`` are unequally spaced, so every time column is linearly
    interpolated onto ``n_periods`` equally spaced periods (default: one per
    frequency row) spanning the same range.
    """
    if wf.axis_mode != "frequency":
        raise ValueError("diagram is already on the period axis")
    p = period_axis(wf.axis)
    order = np.argsort(p, kind="stable")
    p, amp = p[order], wf.amplitudes[order]
    count = wf.axis.size if n_periods is None else int(n_periods)
    if count < 2:
        raise ValueError("n_periods must be >= 2")
    grid = np.linspace(p[0], p[-1], count)
    out = np.empty((count, wf.times.size))
    for col in range(wf.times.size):
        out[:, col] = np.interp(grid, p, amp[:, col])
    return WaterfallDiagram(wf.times, grid, out, axis_mode="period")


def to_frequency_axis(wf: WaterfallDiagram, frequencies) -> WaterfallDiagram:
    """Inverse of :func:`to_period_axis` onto the given frequency grid.

    ``f = 0`` is looked up at the substituted period, matching the rule of
    :func:`period_axis`.
    """
    if wf.axis_mode != "period":
        raise ValueError("diagram is already on the frequency axis")
    f = np.asarray(frequencies, dtype=float)
    target = period_axis(f)
    out = np.empty((f.size, wf.times.size))
    for col in range(wf.times.size):
        out[:, col] = np.interp(target, wf.axis, wf.amplitudes[:, col])
    return WaterfallDiagram(wf.times, f, out, axis_mode="frequency")
