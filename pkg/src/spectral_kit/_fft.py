"""Unnormalized FFT kernels for arbitrary lengths.

Power-of-two lengths use an iterative radix-2 scheme that is vectorized over
leading batch axes. Every other length goes through Bluestein's chirp-z
re-expression, which turns the length-N transform into a power-of-two circular
convolution. The O(N^2) :func:`dft_direct` is kept as the reference oracle.

All routines transform along the last axis and never scale the result.
Twiddle and chirp tables are cached as read-only arrays, so they are safe to
share between threads.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["fft", "ifft", "dft_direct", "is_power_of_two"]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=64)
def _twiddle(half: int) -> np.ndarray:
    # exp(-i*pi*k/half), k = 0..half-1
    angle = np.pi * np.arange(half) / half
    w = np.cos(angle) - 1j * np.sin(angle)
    w.setflags(write=False)
    return w


@lru_cache(maxsize=64)
def _chirp(n: int) -> np.ndarray:
    # exp(-i*pi*k^2/n); k^2 reduced mod 2n keeps the angle small and exact
    k = np.arange(n, dtype=np.int64)
    angle = np.pi * ((k * k) % (2 * n)) / n
    c = np.cos(angle) - 1j * np.sin(angle)
    c.setflags(write=False)
    return c


@lru_cache(maxsize=64)
def _bluestein_kernel(n: int, m: int) -> np.ndarray:
    c = _chirp(n)
    b = np.zeros(m, dtype=complex)
    b[:n] = np.conj(c)
    b[m - n + 1:] = np.conj(c[1:])[::-1]
    out = _fft_pow2(b[np.newaxis, :])[0]
    out.setflags(write=False)
    return out


def _fft_pow2(x: np.ndarray) -> np.ndarray:
    """Radix-2 decimation-in-time FFT of a 2-D array along axis 1."""
    batch, n = x.shape
    # column c of a (rows x cols) block holds the DFT of x[c::cols]
    X = x.reshape(batch, 1, n)
    while X.shape[1] < n:
        rows = X.shape[1]
        half_cols = X.shape[2] // 2
        even = X[:, :, :half_cols]
        odd = X[:, :, half_cols:] * _twiddle(rows)[np.newaxis, :, np.newaxis]
        X = np.concatenate((even + odd, even - odd), axis=1)
    return X.reshape(batch, n)


def _fft_bluestein(x: np.ndarray) -> np.ndarray:
    batch, n = x.shape
    m = 1
    while m < 2 * n - 1:
        m *= 2
    c = _chirp(n)
    a = np.zeros((batch, m), dtype=complex)
    a[:, :n] = x * c
    conv = _ifft_pow2(_fft_pow2(a) * _bluestein_kernel(n, m)) / m
    return conv[:, :n] * c


def _ifft_pow2(x: np.ndarray) -> np.ndarray:
    return np.conj(_fft_pow2(np.conj(x)))


def fft(x, inverse: bool = False) -> np.ndarray:
    """Unnormalized DFT along the last axis.

    Forward uses ``exp(-i 2 pi m n / N)``; ``inverse=True`` flips the sign of
    the exponent. Neither direction divides by N.
    """
    a = np.asarray(x, dtype=complex)
    if a.ndim == 0:
        raise ValueError("fft needs at least one axis")
    n = a.shape[-1]
    if n == 0:
        raise ValueError("empty signal")
    lead = a.shape[:-1]
    flat = a.reshape(-1, n)
    if inverse:
        flat = np.conj(flat)
    if n == 1:
        out = flat.copy()
    elif is_power_of_two(n):
        out = _fft_pow2(flat)
    else:
        out = _fft_bluestein(flat)
    if inverse:
        out = np.conj(out)
    return out.reshape(*lead, n)


def ifft(x) -> np.ndarray:
    return fft(x, inverse=True)


def dft_direct(x, inverse: bool = False) -> np.ndarray:
    """Reference O(N^2) DFT of a 1-D sequence (unnormalized).

    The index product m*n is reduced modulo N before forming the angle, so
    the phase error does not grow with N.
    """
    a = np.asarray(x, dtype=complex).ravel()
    n = a.size
    if n == 0:
        raise ValueError("empty signal")
    idx = np.arange(n, dtype=np.int64)
    k = np.outer(idx, idx) % n
    sign = 1.0 if inverse else -1.0
    angle = 2.0 * np.pi * k / n
    return (np.cos(angle) + sign * 1j * np.sin(angle)) @ a
