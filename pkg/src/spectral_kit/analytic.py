"""Hilbert transform, analytic signal and envelope demodulation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Signal, _freeze, dft_forward, dft_inverse

__all__ = [
    "AnalyticSignal",
    "hilbert",
    "hilbert_multiplier",
    "analytic_weights",
    "analytic_spectrum",
    "analytic_signal",
    "envelope",
]


@dataclass(frozen=True, eq=False)
class AnalyticSignal:
    """Complex signal ``s + i H(s)`` sampled at ``positions``."""

    positions: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "positions",
                           _freeze(np.asarray(self.positions, dtype=float)))
        object.__setattr__(self, "values",
                           _freeze(np.asarray(self.values, dtype=complex)))

    @property
    def real(self) -> Signal:
        return Signal(self.positions, self.values.real)

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


def _require_real_uniform(signal: Signal, what: str) -> None:
    signal.require_uniform(what)
    if len(signal) < 2:
        raise ValueError(f"{what} needs at least 2 samples")
    if signal.is_complex:
        raise ValueError(f"{what} needs a real-valued signal")


def hilbert_multiplier(n: int) -> np.ndarray:
    """Spectral factor ``-i*sign(f)`` laid out on the uncentered DFT grid.

    The mean bin and, for even ``n``, the Nyquist bin map to zero: the
    Nyquist bin is its own mirror, so any other choice breaks either the
    realness of the output or ``H(H(s)) = -s``.
    """
    m = np.arange(n)
    h = np.zeros(n, dtype=complex)
    h[(m > 0) & (2 * m < n)] = -1j
    h[2 * m > n] = 1j
    return h


def hilbert(signal: Signal) -> Signal:
    """Discrete Hilbert transform of a real uniform signal."""
    _require_real_uniform(signal, "hilbert")
    X = dft_forward(signal.values)
    h = dft_inverse(X * hilbert_multiplier(len(signal)))
    return signal.with_values(h.real)


def analytic_weights(n: int) -> np.ndarray:
    """One-sided spectral weights ``1 - sign(f - 0.5)`` with the mean halved.

    ``f`` is the bin index shifted so that its mean is zero. Bins below
    ``n/2`` get 2, bins above get 0, and an even-length Nyquist bin keeps 1.
    The mean bin ends up with weight 1.
    """
    f = np.arange(n) - (n - 1) / 2.0
    w = 1.0 - np.sign(f - 0.5)
    w[0] *= 0.5
    return w


def analytic_spectrum(signal: Signal) -> np.ndarray:
    """Normalized one-sided spectrum of the analytic signal."""
    _require_real_uniform(signal, "analytic_signal")
    return dft_forward(signal.values) * analytic_weights(len(signal))


def analytic_signal(signal: Signal) -> AnalyticSignal:
    """Analytic representation with a one-sided spectrum.

    Built directly in the spectral domain: the lower half of the spectrum is
    doubled, the upper half cleared, and the mean kept as is. The real part
    reproduces the input.
    """
    a = dft_inverse(analytic_spectrum(signal))
    return AnalyticSignal(signal.positions, a)


def envelope(signal: Signal) -> Signal:
    """Amplitude envelope ``|s + i H(s)|``.

    Only meaningful for signals whose modulation is band-limited well below
    the carrier.
    """
    return signal.with_values(np.abs(analytic_signal(signal).values))
