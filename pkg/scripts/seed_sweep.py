#!/usr/bin/env python3
"""How robust are the noisy examples to the noise realisation?

The acceptance checks pin one seed per stochastic example. This sweep
reruns each check over many seeds and reports the pass rate, so the
pinned seed can be judged against the typical behaviour.

usage: python3 scripts/seed_sweep.py [--seeds N]
"""

import argparse

import numpy as np

from spectral_kit import (FilterSpec, Signal, filter_fft, filter_lomb,
                          generate, lomb_scargle_fast, select_peaks)
from spectral_kit.filtering import acf_retained_bins


def lowpass(seed):
    s = Signal(*generate("lowpass-demo", seed=seed))
    y = filter_fft(s, FilterSpec(0, 3, 10)).values
    r = np.corrcoef(y, np.cos(4 * np.pi * s.positions))[0, 1]
    return r >= 0.95, r


def acf(seed):
    s = Signal(*generate("acf-demo", seed=seed))
    bins = set(acf_retained_bins(s).tolist()) - {0}
    return bins == {2, 10}, len(bins)


def jitter(seed):
    s = Signal(*generate("lomb-jitter", seed=seed))
    pg = lomb_scargle_fast(s, np.arange(501) * 0.1)
    freqs = [p.frequency for p in select_peaks(pg, 3)]
    both = any(abs(f - 1) <= 0.5 for f in freqs) and any(abs(f - 20) <= 0.5 for f in freqs)
    if not freqs:
        return False, float("nan")
    x = np.linspace(0, 1, 1001)
    rec = filter_lomb(pg, x, threshold=3).values
    r = np.corrcoef(rec, np.sin(2 * np.pi * x) + np.sin(2 * np.pi * 20 * x))[0, 1]
    return both and r >= 0.8, r


CASES = {
    "lowpass-demo: corr >= 0.95": (lowpass, "corr"),
    "acf-demo: keeps exactly {2, 10} Hz": (acf, "bins kept"),
    "lomb-jitter: both tones, corr >= 0.8": (jitter, "corr"),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=200)
    args = ap.parse_args(argv)
    for label, (fn, what) in CASES.items():
        results = [fn(seed) for seed in range(args.seeds)]
        ok = np.array([r[0] for r in results])
        vals = np.array([r[1] for r in results], dtype=float)
        print(f"{label:40s} pass {ok.mean():6.1%} of {args.seeds} seeds; "
              f"{what} median {np.nanmedian(vals):.3g}, "
              f"range [{np.nanmin(vals):.3g}, {np.nanmax(vals):.3g}]; seed 1: "
              f"{'pass' if results[1][0] else 'fail'}")


if __name__ == "__main__":
    main()
