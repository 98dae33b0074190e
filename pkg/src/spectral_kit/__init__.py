"""One-dimensional spectral analysis.

Normalized DFT and centered spectra, Hilbert transform and analytic signal,
spectral filtering, waterfall time-frequency diagrams and the Lomb-Scargle
periodogram for gapped or irregular samples.
"""

from .analytic import (AnalyticSignal, analytic_signal, analytic_spectrum,
                       envelope, hilbert)
from .core import (Signal, Spectrum, dft_forward, dft_inverse, frequency_grid,
                   qdt_demodulate, spec_fft, spec_ifft)
from .filtering import (FilterSpec, Kernel, acf_denoise, convolve_fft,
                        filter_fft, moving_average, poly_multiply,
                        spectral_derivative, window_blackman, window_hamming,
                        window_tukey)
from .generators import generate
from .lomb import (LombPeriodogram, Peak, false_alarm_probability, filter_lomb,
                   lomb_scargle, lomb_scargle_fast, select_peaks)
from .waterfall import (WaterfallDiagram, bandwidth_schedule, fast_envelope,
                        to_frequency_axis, to_period_axis, waterfall)

__version__ = "0.1.0"

__all__ = [
    "AnalyticSignal", "FilterSpec", "Kernel", "LombPeriodogram", "Peak",
    "Signal", "Spectrum", "WaterfallDiagram",
    "acf_denoise", "analytic_signal", "analytic_spectrum", "bandwidth_schedule",
    "convolve_fft", "dft_forward", "dft_inverse", "envelope",
    "false_alarm_probability", "fast_envelope", "filter_fft", "filter_lomb",
    "frequency_grid", "generate", "hilbert", "lomb_scargle",
    "lomb_scargle_fast", "moving_average", "poly_multiply", "qdt_demodulate",
    "select_peaks", "spec_fft", "spec_ifft", "spectral_derivative",
    "to_frequency_axis", "to_period_axis", "waterfall", "window_blackman",
    "window_hamming", "window_tukey",
]
