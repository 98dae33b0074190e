"""Spectral-domain convolution, windows and filters.

All filtering here is circular: the data are treated as one period of a
periodic sequence, so kernels wrap around the ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import analytic_spectrum, _require_real_uniform
from .core import (Signal, _as_finite_1d, dft_forward, dft_inverse,
                   frequency_grid, spec_fft, spec_ifft)

__all__ = [
    "FilterSpec",
    "Kernel",
    "convolve_fft",
    "poly_multiply",
    "fft_cost",
    "expansion_cost",
    "window_tukey",
    "window_hamming",
    "window_blackman",
    "spectral_derivative",
    "moving_average",
    "bandpass_weight",
    "filter_fft",
    "acf_denoise",
    "acf_retained_bins",
]


@dataclass(frozen=True)
class FilterSpec:
    """Band-pass description for :func:`filter_fft`.

    The pass band is ``|f - fc| <= bw`` (weight 1). Outside it the weight
    falls off as ``(1 - (|f - fc| - bw)/bw)**n`` and reaches zero at
    ``|f - fc| = 2*bw``. Larger ``n`` approaches a brick wall.
    """

    fc: float = 0.0
    bw: float = 1.0
    n: int = 3

    def __post_init__(self):
        if not (math.isfinite(self.bw) and self.bw > 0):
            raise ValueError("bw must be positive")
        if not math.isfinite(self.fc):
            raise ValueError("fc must be finite")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError("n must be an integer >= 1")


@dataclass(frozen=True, eq=False)
class Kernel:
    taps: np.ndarray

    def __post_init__(self):
        taps = _as_finite_1d(self.taps, "kernel taps").astype(float)
        object.__setattr__(self, "taps", taps)

    @classmethod
    def boxcar(cls, length: int) -> "Kernel":
        if length < 1:
            raise ValueError("kernel length must be >= 1")
        return cls(np.full(length, 1.0 / length))

    def __len__(self) -> int:
        return self.taps.size


def _real_if_real(result: np.ndarray, *inputs) -> np.ndarray:
    if any(np.iscomplexobj(a) for a in inputs):
        return result
    return result.real


def convolve_fft(a, b) -> np.ndarray:
    """Circular convolution via the convolution theorem.

    Under the 1/N-forward convention ``DFT(a (*) b) = N * DFT(a) * DFT(b)``,
    hence the factor ``N`` below.
    """
    a = _as_finite_1d(a, "a")
    b = _as_finite_1d(b, "b")
    if a.size != b.size:
        raise ValueError(
            f"length mismatch ({a.size} != {b.size}); pad to equal length")
    c = a.size * dft_inverse(dft_forward(a) * dft_forward(b))
    return _real_if_real(c, a, b)


def poly_multiply(a_coeffs, b_coeffs) -> np.ndarray:
    """Product of two polynomials given lowest-order coefficient first."""
    a = _as_finite_1d(a_coeffs, "a_coeffs")
    b = _as_finite_1d(b_coeffs, "b_coeffs")
    size = a.size + b.size - 1
    pa = np.zeros(size, dtype=a.dtype)
    pb = np.zeros(size, dtype=b.dtype)
    pa[:a.size] = a
    pb[:b.size] = b
    return convolve_fft(pa, pb)


def fft_cost(degree: int) -> int:
    """Flop estimate ``3 (2n+1) log2(2n+1)`` for an FFT polynomial product.

    Rounded up, which is how the commonly quoted table (209, 500, 1175, 2714
    for degrees 8 to 64) was produced.
    """
    m = 2 * degree + 1
    return math.ceil(3 * m * math.log2(m))


def expansion_cost(degree: int) -> int:
    """Multiplications of the schoolbook expansion, counted as ``n**2``."""
    return degree * degree


def window_tukey(positions, alpha: float = 0.2) -> np.ndarray:
    """Tukey (tapered cosine) window evaluated at ``positions``.

    Positions are mapped linearly onto ``[0, 1]``. A fraction ``alpha`` of
    that range at each end follows a raised cosine from 0 up to 1; the
    middle is flat at 1.
    """
    if not (0 < alpha <= 1):
        raise ValueError("alpha must lie in (0, 1]")
    x = _as_finite_1d(positions, "positions").astype(float)
    if x.size == 1:
        return np.ones(1)
    span = x.max() - x.min()
    if span == 0:
        return np.ones_like(x)
    u = (x - x.min()) / span
    edge = np.minimum(u, 1.0 - u)
    w = np.ones_like(u)
    taper = edge < alpha
    w[taper] = 0.5 * (1.0 - np.cos(np.pi * edge[taper] / alpha))
    return w


def _cosine_sum_window(n: int, coeffs) -> np.ndarray:
    if n < 1:
        raise ValueError("window length must be >= 1")
    if n == 1:
        return np.ones(1)
    phase = 2.0 * np.pi * np.arange(n) / (n - 1)
    w = np.zeros(n)
    for k, a in enumerate(coeffs):
        w += (-1) ** k * a * np.cos(k * phase)
    return w


def window_hamming(n: int) -> np.ndarray:
    """Symmetric Hamming window ``0.54 - 0.46 cos(2 pi k/(n-1))``."""
    return _cosine_sum_window(n, (0.54, 0.46))


def window_blackman(n: int) -> np.ndarray:
    """Symmetric Blackman window ``0.42 - 0.5 cos(.) + 0.08 cos(2 .)``."""
    w = _cosine_sum_window(n, (0.42, 0.5, 0.08))
    # the end points evaluate to ~-1e-17
    return np.clip(w, 0.0, None)


def spectral_derivative(signal: Signal) -> Signal:
    """Derivative by multiplication with ``i 2 pi f`` on the centered spectrum.

    Non-periodic data must be windowed first (for instance with
    :func:`window_tukey`), otherwise the edge discontinuity ruins the result.
    """
    _require_real_uniform(signal, "spectral_derivative")
    Y = spec_fft(signal, center=True)
    dY = Y.with_amplitudes(2j * np.pi * Y.frequencies * Y.amplitudes)
    return signal.with_values(np.real(spec_ifft(dY).values))


def _signed_bins(n: int) -> np.ndarray:
    m = np.arange(n, dtype=float)
    m[m > n / 2] -= n
    return m


def moving_average(signal: Signal, kernel: Kernel,
                   phase_correct: bool = False) -> Signal:
    """Circular FIR filtering ``y[n] = sum_j k[j] s[n - j]`` in the spectrum.

    The kernel is zero padded to the signal length. A causal kernel delays
    the output by ``(len(k) - 1)/2`` samples; ``phase_correct`` multiplies by
    the opposite linear phase so a symmetric kernel introduces no shift.
    """
    _require_real_uniform(signal, "moving_average")
    n = len(signal)
    nk = len(kernel)
    if nk > n:
        raise ValueError("kernel longer than signal")
    padded = np.zeros(n)
    padded[:nk] = kernel.taps
    K = n * dft_forward(padded)
    S = dft_forward(signal.values) * K
    if phase_correct:
        shift = np.exp(2j * np.pi * _signed_bins(n) * (nk - 1) / (2.0 * n))
        if n % 2 == 0:
            # Nyquist bin is its own mirror; keep it real
            shift[n // 2] = shift[n // 2].real
        S = S * shift
    return signal.with_values(dft_inverse(S).real)


def bandpass_weight(f, fc: float, bw: float, n: int) -> np.ndarray:
    """Weight of :class:`FilterSpec` evaluated at frequencies ``f``."""
    d = np.abs(np.asarray(f, dtype=float) - fc)
    outside = np.clip(1.0 - (d - bw) / bw, 0.0, 1.0) ** n
    return np.where(d <= bw, 1.0, outside)


def filter_fft(signal: Signal, spec: FilterSpec) -> Signal:
    """Band-pass filter applied to the one-sided analytic spectrum.

    Returns the real part of the back transform, i.e. the filtered real
    signal.
    """
    A = analytic_spectrum(signal)
    f = frequency_grid(len(signal), signal.ts)
    w = bandpass_weight(f, spec.fc, spec.bw, spec.n)
    return signal.with_values(dft_inverse(A * w).real)


def _acf_mask(signal: Signal):
    _require_real_uniform(signal, "acf_denoise")
    if len(signal) < 3:
        raise ValueError("acf_denoise needs at least 3 samples")
    Y = analytic_spectrum(signal)
    power = np.abs(Y * np.conj(Y))
    return Y, power >= np.std(power, ddof=1)


def acf_denoise(signal: Signal) -> Signal:
    """Keep only spectral bins whose autocorrelation power is significant.

    The power ``|Y_m|**2`` of the analytic spectrum is compared with its
    sample standard deviation; bins below it are cleared, the rest keep
    their complex value (and therefore their phase).
    """
    Y, keep = _acf_mask(signal)
    return signal.with_values(dft_inverse(np.where(keep, Y, 0.0)).real)


def acf_retained_bins(signal: Signal) -> np.ndarray:
    """Indices of the bins :func:`acf_denoise` keeps."""
    return np.flatnonzero(_acf_mask(signal)[1])
