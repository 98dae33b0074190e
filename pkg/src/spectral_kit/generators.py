"""Synthetic example signals.

Every generator returns ``(positions, values)`` as float arrays. Stochastic
generators draw Gaussian noise from ``numpy.random.default_rng(seed)``
(PCG64 bit generator, ``Generator.normal``) and refuse to run without an
explicit integer seed.

Where a periodic signal is sampled on a closed interval the duplicate
endpoint is dropped, so that the record holds exactly whole periods.
"""

from __future__ import annotations

import inspect

import numpy as np

__all__ = ["GENERATORS", "generate", "available"]


def _periodic_grid(ts: float, length: float = 1.0) -> np.ndarray:
    if not ts > 0:
        raise ValueError("ts must be positive")
    n = int(round(length / ts))
    if n < 1 or abs(n * ts - length) > 1e-9 * length:
        raise ValueError(f"ts={ts!r} does not divide the interval {length!r}")
    return np.arange(n) * ts


def _rng(seed):
    if seed is None:
        raise ValueError("this generator is stochastic and requires --seed")
    return np.random.default_rng(int(seed))


def simple_signal(ts: float = 0.05, seed=None, sigma: float = 0.02,
                  length: float = 2.0):
    """``0.4 cos(2 pi 1.5t - pi/2) + 0.5`` plus noise of std ``sigma``,
    observed on ``[0, length)``."""
    t = _periodic_grid(ts, length)
    noise = _rng(seed).normal(0.0, sigma, t.size)
    return t, 0.4 * np.cos(2 * np.pi * 1.5 * t - np.pi / 2) + 0.5 + noise


def eq2_1(ts: float = 0.05):
    """``sin(2 pi 4t) + 0.5 cos(2 pi 2t) + 1.5`` on ``[0, 1)``."""
    t = _periodic_grid(ts)
    return t, np.sin(2 * np.pi * 4 * t) + 0.5 * np.cos(2 * np.pi * 2 * t) + 1.5


def undersampled(ts: float = 0.05):
    """``cos(2 pi 25t) + 0.5 sin(2 pi 27t) + 1.5`` sampled at 20 Hz."""
    t = _periodic_grid(ts)
    return t, (np.cos(2 * np.pi * 25 * t) + 0.5 * np.sin(2 * np.pi * 27 * t)
               + 1.5)


def cubic(n: int = 40):
    """``-x**3 + 3x`` on ``n`` points spanning ``[-2.5, 2.5]``."""
    x = np.linspace(-2.5, 2.5, int(n))
    return x, -x**3 + 3 * x


def window_demo(ts: float = 0.05):
    """``0.8 cos(2 pi 2t)``, exactly two periods of the window ``[0, 1)``."""
    t = _periodic_grid(ts)
    return t, 0.8 * np.cos(2 * np.pi * 2 * t)


def envelope_demo(ts: float = 0.005, fc: float = 20.0, width: float = 0.1):
    """Carrier ``cos(2 pi fc t)`` under the Gaussian envelope
    ``exp(-(t - 0.5)**2 / (2 width**2))``."""
    t = _periodic_grid(ts)
    return t, (np.exp(-(t - 0.5) ** 2 / (2 * width**2))
               * np.cos(2 * np.pi * fc * t))


def lowpass_demo(ts: float = 0.01, seed=None, sigma: float = 0.5):
    """``cos(4 pi t) + sin(20 pi t)`` plus white noise of std ``sigma``."""
    t = _periodic_grid(ts)
    noise = _rng(seed).normal(0.0, sigma, t.size)
    return t, np.cos(4 * np.pi * t) + np.sin(20 * np.pi * t) + noise


def acf_demo(ts: float = 0.01, seed=None, sigma: float = 1.0):
    """``cos(2 pi 2t) + sin(2 pi 10t)`` plus white noise of std ``sigma``."""
    t = _periodic_grid(ts)
    noise = _rng(seed).normal(0.0, sigma, t.size)
    return t, np.cos(2 * np.pi * 2 * t) + np.sin(2 * np.pi * 10 * t) + noise


def _gauss(t, centre, width):
    return (np.exp(-(t - centre) ** 2 / (2 * width**2))
            / np.sqrt(2 * np.pi * width))


def two_burst(ts: float = 0.001):
    """Gaussian bursts of 20 Hz at t=0.2 (sigma 0.05) and 40 Hz at t=0.7
    (sigma 0.1)."""
    t = _periodic_grid(ts)
    return t, (_gauss(t, 0.2, 0.05) * np.sin(2 * np.pi * 20 * t)
               + _gauss(t, 0.7, 0.1) * np.sin(2 * np.pi * 40 * t))


def chirp_mix(ts: float = 0.001):
    """``|2t - 1| sin(2 pi 10t)`` plus the chirp ``sin(2 pi 20 t**2)`` for
    ``t > 0.5``."""
    t = _periodic_grid(ts)
    chirp = np.where(t > 0.5, np.sin(2 * np.pi * 20 * t**2), 0.0)
    return t, np.abs(2 * t - 1) * np.sin(2 * np.pi * 10 * t) + chirp


def lomb_gap(f0: float = 7.0):
    """``sin(2 pi f0 x)`` on ``x = 0, 0.01, ..., 1`` without ``0.4 < x < 0.7``."""
    x = np.arange(101) * 0.01
    x = x[~((x > 0.4) & (x < 0.7))]
    return x, np.sin(2 * np.pi * f0 * x)


def lomb_jitter(seed=None, n: int = 101):
    """Two tones (1 and 20) with jittered sampling instants and unit noise.

    The recorded positions are the nominal grid ``x`` with step ``dx``; the
    tones are evaluated at ``x + N(0, dx/4)`` and ``N(0, 1)`` is added.
    """
    rng = _rng(seed)
    x = np.linspace(0.0, 1.0, int(n))
    dx = x[1] - x[0]
    j1 = rng.normal(0.0, dx / 4, x.size)
    j2 = rng.normal(0.0, dx / 4, x.size)
    noise = rng.normal(0.0, 1.0, x.size)
    return x, (np.sin(2 * np.pi * (x + j1)) + np.sin(2 * np.pi * 20 * (x + j2))
               + noise)


GENERATORS = {
    "simple-signal": simple_signal,
    "eq2-1": eq2_1,
    "undersampled": undersampled,
    "cubic": cubic,
    "window-demo": window_demo,
    "envelope-demo": envelope_demo,
    "lowpass-demo": lowpass_demo,
    "acf-demo": acf_demo,
    "two-burst": two_burst,
    "chirp-mix": chirp_mix,
    "lomb-gap": lomb_gap,
    "lomb-jitter": lomb_jitter,
}

STOCHASTIC = frozenset({"simple-signal", "lowpass-demo", "acf-demo", "lomb-jitter"})


def available() -> list[str]:
    return sorted(GENERATORS)


def generate(signal_id: str, **params) -> tuple[np.ndarray, np.ndarray]:
    """Positions and values of the example ``signal_id``.

    ``params`` are forwarded to the generator. ``None`` values and settings
    the generator does not take are dropped, so callers can pass common
    options (``ts``, ``seed``) unconditionally.
    """
    try:
        fn = GENERATORS[signal_id]
    except KeyError:
        raise ValueError(f"unknown generator {signal_id!r}; available: "
                         + ", ".join(available())) from None
    accepted = inspect.signature(fn).parameters
    params = {k: v for k, v in params.items()
              if v is not None and k in accepted}
    if signal_id in STOCHASTIC and "seed" not in params:
        raise ValueError(f"generator {signal_id!r} is stochastic and requires a seed")
    return fn(**params)
