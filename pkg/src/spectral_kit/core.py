"""Signal/Spectrum data model, normalized DFT, frequency grids and QDT.

Normalization convention
------------------------
The forward transform carries the 1/N factor and the inverse is a plain sum::

    S[m] = 1/N * sum_n s[n] * exp(-i 2 pi m n / N)
    s[n] =       sum_m S[m] * exp(+i 2 pi m n / N)

so ``S[0]`` is the arithmetic mean and a real tone ``A cos(2 pi f t)`` on the
grid shows up as ``A/2`` in each of its two mirror bins. This differs from the
unnormalized convention of most FFT libraries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._fft import fft

__all__ = [
    "Signal",
    "Spectrum",
    "dft_forward",
    "dft_inverse",
    "frequency_grid",
    "spec_fft",
    "spec_ifft",
    "qdt_demodulate",
    "centering_modulation",
]

UNIFORM_RTOL = 1e-9


def _as_finite_1d(values, name: str) -> np.ndarray:
    a = np.asarray(values)
    if a.ndim != 1:
        a = a.ravel()
    if a.size == 0:
        raise ValueError("empty signal")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"non-finite sample in {name}")
    return a


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Signal:
    """Ordered samples ``values`` taken at ``positions``.

    ``uniform`` and ``ts`` are derived on construction: the signal is uniform
    when every step deviates from the mean step by at most ``1e-9 * ts``.
    A single sample is uniform with ``ts`` taken from the ``ts`` argument
    (default 1).
    """

    positions: np.ndarray
    values: np.ndarray
    ts: float | None = None
    uniform: bool = field(init=False)

    def __post_init__(self):
        x = _as_finite_1d(self.positions, "positions").astype(float)
        y = _as_finite_1d(self.values, "values")
        if np.iscomplexobj(y):
            y = y.astype(complex)
        else:
            y = y.astype(float)
        if x.size != y.size:
            raise ValueError(
                f"positions and values differ in length ({x.size} != {y.size})")
        steps = np.diff(x)
        if np.any(steps <= 0):
            raise ValueError("positions must be strictly increasing")
        if x.size == 1:
            ts = 1.0 if self.ts is None else float(self.ts)
            if not ts > 0:
                raise ValueError("ts must be positive")
            uniform = True
        else:
            ts = (x[-1] - x[0]) / (x.size - 1)
            uniform = bool(np.max(np.abs(steps - ts)) <= UNIFORM_RTOL * ts)
            if not uniform:
                ts = None
        object.__setattr__(self, "positions", _freeze(x))
        object.__setattr__(self, "values", _freeze(y))
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "uniform", uniform)

    @classmethod
    def sampled(cls, values, ts: float, t0: float = 0.0) -> "Signal":
        """Uniformly sampled signal starting at ``t0`` with step ``ts``."""
        if not ts > 0:
            raise ValueError("ts must be positive")
        y = np.asarray(values)
        return cls(t0 + ts * np.arange(y.size), y, ts=ts)

    def __len__(self) -> int:
        return self.values.size

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def with_values(self, values) -> "Signal":
        return Signal(self.positions, values, ts=self.ts)

    def require_uniform(self, what: str = "operation") -> float:
        if not self.uniform:
            raise ValueError(
                f"{what} requires uniform sampling; use lomb module")
        return self.ts


@dataclass(frozen=True, eq=False)
class Spectrum:
    """DFT coefficients with their frequency grid.

    ``amplitudes`` follow the 1/N-forward convention. ``ts`` and ``t0`` record
    the sampling of the originating signal so that :func:`spec_ifft` can
    rebuild its positions.
    """

    frequencies: np.ndarray
    amplitudes: np.ndarray
    centered: bool
    n_samples: int
    ts: float
    t0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "frequencies",
                           _freeze(np.asarray(self.frequencies, dtype=float)))
        object.__setattr__(self, "amplitudes",
                           _freeze(np.asarray(self.amplitudes, dtype=complex)))

    @property
    def abs(self) -> np.ndarray:
        return np.abs(self.amplitudes)

    def with_amplitudes(self, amplitudes) -> "Spectrum":
        return Spectrum(self.frequencies, amplitudes, self.centered,
                        self.n_samples, self.ts, self.t0)


def dft_forward(values) -> np.ndarray:
    """Forward DFT with 1/N normalization; element 0 is the mean."""
    x = _as_finite_1d(values, "values")
    return fft(x) / x.size


def dft_inverse(coeffs) -> np.ndarray:
    """Inverse of :func:`dft_forward` (plain sum, no scaling)."""
    X = _as_finite_1d(coeffs, "coefficients")
    return fft(X, inverse=True)


def frequency_grid(n: int, ts: float, centered: bool = False) -> np.ndarray:
    """DFT frequencies ``m/(ts*n)``; centered grids start at ``-(n//2)`` bins."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not ts > 0:
        raise ValueError("ts must be positive")
    m = np.arange(n, dtype=float)
    if centered:
        m -= n // 2
    return m / (ts * n)


def centering_modulation(n: int) -> np.ndarray:
    """Per-sample factor that rotates the DFT by ``n//2`` bins.

    For even ``n`` this is exactly the alternating series ``(-1)**k``. For odd
    ``n`` the alternating series would shift by a half bin, so the exact
    ``exp(i 2 pi k (n//2) / n)`` is used instead.
    """
    k = np.arange(n, dtype=np.int64)
    if n % 2 == 0:
        return np.where(k % 2 == 0, 1.0, -1.0).astype(complex)
    angle = 2.0 * np.pi * ((k * (n // 2)) % n) / n
    return np.cos(angle) + 1j * np.sin(angle)


def spec_fft(signal: Signal, center: bool = False) -> Spectrum:
    """Spectrum of a uniform signal, optionally centered on f = 0."""
    ts = signal.require_uniform("spec_fft")
    n = len(signal)
    y = signal.values
    if center:
        y = y * centering_modulation(n)
    return Spectrum(frequency_grid(n, ts, center), dft_forward(y), center,
                    n, ts, float(signal.positions[0]))


def spec_ifft(spectrum: Spectrum) -> Signal:
    """Back transform of :func:`spec_fft`, undoing the centering modulation.

    Values come back real when the imaginary residue is at most
    ``1e-9 * max|values|``.
    """
    n = spectrum.n_samples
    if spectrum.amplitudes.size != n or spectrum.frequencies.size != n:
        raise ValueError(
            "frequency grid inconsistent with n_samples")
    expected = frequency_grid(n, spectrum.ts, spectrum.centered)
    scale = 1.0 / (spectrum.ts * n)
    if np.max(np.abs(spectrum.frequencies - expected)) > 1e-9 * scale * max(n, 1):
        raise ValueError("frequency grid inconsistent with n_samples")
    y = dft_inverse(spectrum.amplitudes)
    if spectrum.centered:
        y = y * np.conj(centering_modulation(n))
    peak = np.max(np.abs(y))
    if np.max(np.abs(y.imag)) <= 1e-9 * peak:
        y = y.real
    return Signal.sampled(y, spectrum.ts, spectrum.t0)


def qdt_demodulate(signal: Signal, omega0: float) -> tuple[float, float]:
    """Quadrature demodulation at angular frequency ``omega0``.

    Computes the in-phase and quadrature means::

        R = mean(s * cos(omega0 * t))
        I = mean(s * sin(omega0 * t))

    and returns ``(A, phi) = (2*hypot(R, I), arctan2(I, R))``. With this sign
    convention the input is approximated by ``A * cos(omega0*t - phi)``.
    The estimate is exact when ``omega0`` sits on the DFT grid; off-grid
    frequencies pick up the truncation residue of the incomplete last period.
    """
    signal.require_uniform("qdt_demodulate")
    if len(signal) < 2:
        raise ValueError("qdt_demodulate needs at least 2 samples")
    if np.iscomplexobj(signal.values):
        raise ValueError("qdt_demodulate needs a real-valued signal")
    arg = omega0 * signal.positions
    R = np.mean(signal.values * np.cos(arg))
    I = np.mean(signal.values * np.sin(arg))
    return 2.0 * float(np.hypot(R, I)), float(np.arctan2(I, R))
