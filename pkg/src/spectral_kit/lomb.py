"""Lomb-Scargle periodogram for gapped and irregularly sampled data.

For each analysis frequency a sinusoid is fitted by least squares around the
time offset ``tau`` that makes the sine and cosine regressors orthogonal.
From the fit::

    P   = (R**2/C + I**2/S) / (2 sigma**2)
    A   = sqrt(2/N * (R**2/C + I**2/S))
    phi = -(arctan2(I, R) + omega*tau)

so that the data are approximated by ``mean + A cos(omega t + phi)``. The
normalized power and the amplitude are tied by ``P = N A**2 / (4 sigma**2)``
with ``sigma`` the sample standard deviation (divisor ``N - 1``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Signal, _as_finite_1d, _freeze

__all__ = [
    "LombPeriodogram",
    "Peak",
    "lomb_scargle",
    "lomb_scargle_fast",
    "false_alarm_probability",
    "find_peaks",
    "select_peaks",
    "filter_lomb",
    "orthogonality_residue",
]


@dataclass(frozen=True, eq=False)
class LombPeriodogram:
    frequencies: np.ndarray
    amplitude: np.ndarray
    phase: np.ndarray
    power: np.ndarray
    fap: np.ndarray
    n_samples: int
    sigma: float
    mean: float
    m_indep: int
    positions: np.ndarray | None = None
    values: np.ndarray | None = None

    def __post_init__(self):
        for name in ("frequencies", "amplitude", "phase", "power", "fap"):
            object.__setattr__(self, name, _freeze(
                np.asarray(getattr(self, name), dtype=float)))
        size = self.frequencies.size
        if any(getattr(self, k).size != size
               for k in ("amplitude", "phase", "power", "fap")):
            raise ValueError("periodogram columns differ in length")
        for name in ("positions", "values"):
            if getattr(self, name) is not None:
                object.__setattr__(self, name, _freeze(
                    np.asarray(getattr(self, name), dtype=float)))


@dataclass(frozen=True)
class Peak:
    frequency: float
    amplitude: float
    phase: float
    fap: float


def _wrap(phase: np.ndarray) -> np.ndarray:
    # onto (-pi, pi]
    return np.pi - np.mod(np.pi - phase, 2.0 * np.pi)


def _prepare(signal: Signal, freqs):
    if len(signal) < 3:
        raise ValueError("Lomb-Scargle needs at least 3 samples")
    if signal.is_complex:
        raise ValueError("Lomb-Scargle needs real-valued data")
    f = _as_finite_1d(freqs, "frequencies").astype(float)
    if np.any(f < 0):
        raise ValueError("frequencies must be nonnegative")
    y = signal.values
    mean = float(np.mean(y))
    y0 = y - mean
    sigma = float(np.std(y0, ddof=1))
    if sigma == 0.0:
        raise ValueError("zero variance")
    return f, signal.positions, y0, mean, sigma


def _data(signal: Signal) -> tuple[np.ndarray, np.ndarray]:
    return signal.positions, signal.values


def false_alarm_probability(power, m_indep: int):
    """``p = 1 - (1 - exp(-P))**M``, evaluated without cancellation.

    Uses ``-expm1(M * log1p(-exp(-P)))``, which keeps full relative precision
    in the tail where ``p ~ M exp(-P)``.
    """
    P = np.asarray(power, dtype=float)
    if np.any(np.isnan(P)) or np.any(P < 0):
        raise ValueError("power must be nonnegative")
    if int(m_indep) != m_indep or m_indep < 1:
        raise ValueError("m_indep must be an integer >= 1")
    with np.errstate(divide="ignore"):
        p = -np.expm1(m_indep * np.log1p(-np.exp(-P)))
    p = np.clip(p, 0.0, 1.0)
    return float(p) if p.ndim == 0 else p


def _finish(f, R, I, C, S, tau, n, mean, sigma, m_indep, data):
    zero = f == 0
    # a basis whose energy cancels to rounding level (omega * span ~ 0)
    # carries no resolvable component
    tiny = 1e-12 * n
    with np.errstate(divide="ignore", invalid="ignore"):
        q = (np.where(C > tiny, R**2 / C, 0.0)
             + np.where(S > tiny, I**2 / S, 0.0))
        phase = -(np.arctan2(I, R) + 2.0 * np.pi * f * tau)
    q = np.where(zero, 0.0, q)
    phase = np.where(zero, 0.0, _wrap(phase))
    amplitude = np.sqrt(2.0 / n * q)
    power = q / (2.0 * sigma**2)
    m = max(1, n // 2) if m_indep is None else m_indep
    return LombPeriodogram(f, amplitude, phase, power,
                           false_alarm_probability(power, m),
                           n, sigma, mean, m, *data)


def lomb_scargle(signal: Signal, freqs, m_indep: int | None = None) -> LombPeriodogram:
    """Two-pass Lomb-Scargle estimator.

    The first pass over the data finds ``tau`` from
    ``tan(2 omega tau) = sum sin(2 omega t) / sum cos(2 omega t)``; the
    second accumulates ``R, I, C, S`` around it. A zero frequency yields
    zero amplitude and power (the mean is removed beforehand).
    """
    f, t, y, mean, sigma = _prepare(signal, freqs)
    omega = 2.0 * np.pi * f
    n = t.size
    R = np.empty(f.size)
    I = np.empty(f.size)
    C = np.empty(f.size)
    S = np.empty(f.size)
    tau = np.zeros(f.size)
    for i, w in enumerate(omega):
        if w == 0.0:
            R[i] = I[i] = 0.0
            C[i] = S[i] = 1.0
            continue
        tau[i] = np.arctan2(np.sum(np.sin(2 * w * t)),
                            np.sum(np.cos(2 * w * t))) / (2 * w)
        arg = w * (t - tau[i])
        c, s = np.cos(arg), np.sin(arg)
        R[i] = np.sum(y * c)
        I[i] = np.sum(y * s)
        C[i] = np.sum(c * c)
        S[i] = np.sum(s * s)
    return _finish(f, R, I, C, S, tau, n, mean, sigma, m_indep, _data(signal))


def lomb_scargle_fast(signal: Signal, freqs, m_indep: int | None = None,
                      block: int = 256) -> LombPeriodogram:
    """Single-pass Lomb-Scargle estimator.

    One sweep over the data collects ``XC, XS, CC, SS, CS`` for a block of
    frequencies; ``tau`` and the shifted sums follow algebraically::

        tau = arctan2(2 CS, CC - SS) / (2 omega)
        R   = c XC + s XS            I = c XS - s XC
        C   = c^2 CC + 2cs CS + s^2 SS
        S   = c^2 SS - 2cs CS + s^2 CC

    with ``c, s = cos(omega tau), sin(omega tau)``.
    """
    f, t, y, mean, sigma = _prepare(signal, freqs)
    n = t.size
    R = np.zeros(f.size)
    I = np.zeros(f.size)
    C = np.ones(f.size)
    S = np.ones(f.size)
    tau = np.zeros(f.size)
    for lo in range(0, f.size, block):
        sl = slice(lo, lo + block)
        omega = 2.0 * np.pi * f[sl]
        arg = np.outer(t, omega)
        co, si = np.cos(arg), np.sin(arg)
        XC = y @ co
        XS = y @ si
        CC = np.sum(co * co, axis=0)
        SS = np.sum(si * si, axis=0)
        CS = np.sum(co * si, axis=0)
        nz = omega != 0.0
        wt = np.where(nz, np.arctan2(2.0 * CS, CC - SS) / 2.0, 0.0)
        ct, st = np.cos(wt), np.sin(wt)
        tau[sl] = np.where(nz, wt / np.where(nz, omega, 1.0), 0.0)
        R[sl] = np.where(nz, ct * XC + st * XS, 0.0)
        I[sl] = np.where(nz, ct * XS - st * XC, 0.0)
        cross = 2.0 * ct * st * CS
        C[sl] = np.where(nz, ct**2 * CC + cross + st**2 * SS, 1.0)
        S[sl] = np.where(nz, ct**2 * SS - cross + st**2 * CC, 1.0)
    return _finish(f, R, I, C, S, tau, n, mean, sigma, m_indep, _data(signal))


def orthogonality_residue(positions, frequency: float) -> float:
    """``sum cos(w(t - tau)) sin(w(t - tau))`` at the optimal ``tau``."""
    t = _as_finite_1d(positions, "positions").astype(float)
    w = 2.0 * np.pi * frequency
    tau = np.arctan2(np.sum(np.sin(2 * w * t)), np.sum(np.cos(2 * w * t))) / (2 * w)
    arg = w * (t - tau)
    return float(np.sum(np.cos(arg) * np.sin(arg)))


def find_peaks(values) -> np.ndarray:
    """Indices of strict local maxima; plateaus report their first index.

    A run of equal values counts as a maximum when both neighbouring runs
    are lower. Grid endpoints are eligible.
    """
    a = np.asarray(values, dtype=float)
    n = a.size
    peaks = []
    i = 0
    while i < n:
        j = i
        while j + 1 < n and a[j + 1] == a[i]:
            j += 1
        left_ok = i == 0 or a[i - 1] < a[i]
        right_ok = j == n - 1 or a[j + 1] < a[i]
        if left_ok and right_ok and n > 1:
            peaks.append(i)
        i = j + 1
    return np.asarray(peaks, dtype=int)


def select_peaks(pg: LombPeriodogram, threshold: float = 3.0) -> list[Peak]:
    """Local amplitude maxima with ``fap <= 10**-threshold``."""
    limit = 10.0 ** (-threshold)
    return [Peak(float(pg.frequencies[i]), float(pg.amplitude[i]),
                 float(pg.phase[i]), float(pg.fap[i]))
            for i in find_peaks(pg.amplitude)
            if pg.fap[i] <= limit and pg.amplitude[i] > 0]


def _joint_fit(pg: LombPeriodogram, freqs: np.ndarray):
    """Least-squares mean, amplitudes and phases of all ``freqs`` at once."""
    t, y = pg.positions, pg.values
    arg = 2.0 * np.pi * np.outer(t, freqs)
    design = np.column_stack([np.ones_like(t), np.cos(arg), np.sin(arg)])
    coef = np.linalg.lstsq(design, y, rcond=None)[0]
    a, b = coef[1:1 + freqs.size], coef[1 + freqs.size:]
    # a cos + b sin = A cos(w t + phi)
    return float(coef[0]), np.hypot(a, b), np.arctan2(-b, a)


def filter_lomb(pg: LombPeriodogram, new_positions, threshold: float = 3.0,
                phase_mode: str = "lin", refit: bool = True) -> Signal:
    """Rebuild the signal at ``new_positions`` from its significant peaks.

    Peaks are the local amplitude maxima with ``fap <= 10**-threshold``. The
    reconstruction is ``mean + sum A cos(2 pi f x + phi)`` over those peaks.

    Each periodogram column is a separate single-sinusoid fit, so on gapped
    data the sidelobes of a strong line are themselves significant and
    summing them would double count. With ``refit`` (the default) the mean,
    amplitudes and phases of the selected frequencies are therefore fitted
    jointly by least squares to the data stored in ``pg``; sidelobes then
    receive (near) zero weight. ``refit=False`` sums the periodogram values
    as they are.

    ``phase_mode="lin"`` uses the fitted phases; ``"none"`` sets them to 0.
    """
    if pg.frequencies.size == 0:
        raise ValueError("empty periodogram")
    if phase_mode not in ("lin", "none"):
        raise ValueError(f"unknown phase mode {phase_mode!r}")
    x = _as_finite_1d(new_positions, "new_positions").astype(float)
    peaks = select_peaks(pg, threshold)
    if not peaks:
        raise ValueError("no significant component")
    freqs = np.array([p.frequency for p in peaks])
    if refit and pg.positions is not None:
        mean, amp, phase = _joint_fit(pg, freqs)
    else:
        mean = pg.mean
        amp = np.array([p.amplitude for p in peaks])
        phase = np.array([p.phase for p in peaks])
    if phase_mode == "none":
        phase = np.zeros_like(phase)
    y = np.full(x.size, mean)
    for f, a, phi in zip(freqs, amp, phase):
        y += a * np.cos(2.0 * np.pi * f * x + phi)
    return Signal(x, y)
