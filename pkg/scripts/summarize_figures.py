#!/usr/bin/env python3
"""Print the key numbers of the tables written by reproduce_figures.sh.

usage: python3 scripts/summarize_figures.py [DIR] [--plot]

With ``--plot`` every table is also drawn to DIR/<name>.png (requires
matplotlib, which is not a dependency of the package).
"""

import argparse
import csv
import sys
from pathlib import Path

import numpy as np


def load(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    if header[0] in ("t/f", "t/period"):
        axis = np.array(header[1:], dtype=float)
        body = np.array(rows[1:], dtype=float)
        return {"kind": "waterfall", "mode": header[0][2:], "axis": axis,
                "t": body[:, 0], "A": body[:, 1:].T}
    data = np.array(rows[1:], dtype=float)
    return {"kind": ",".join(header), **{h: data[:, i] for i, h in enumerate(header)}}


def peaks(f, a, k=8):
    """The ``k`` largest entries, skipping rounding-level ones."""
    idx = [i for i in np.argsort(a)[::-1][:k] if a[i] > 1e-9 * a.max()]
    return ", ".join(f"{f[i]:g}:{a[i]:.3g}" for i in sorted(idx))


def describe(name, tab):
    kind = tab["kind"]
    if kind == "f,re,im,abs":
        return f"{len(tab['f'])} bins; largest |S| at f: {peaks(tab['f'], tab['abs'])}"
    if kind == "x,y":
        y = tab["y"]
        return (f"{len(y)} samples on [{tab['x'][0]:g}, {tab['x'][-1]:g}], "
                f"mean {y.mean():.4g}, range [{y.min():.4g}, {y.max():.4g}]")
    if kind == "f,A,phi,P,p":
        sig = tab["p"] <= 1e-3
        return (f"{len(tab['f'])} frequencies; argmax A at f={tab['f'][np.argmax(tab['A'])]:g} "
                f"(A={tab['A'].max():.4g}, p={tab['p'][np.argmax(tab['A'])]:.2g}); "
                f"{int(sig.sum())} bins with p <= 1e-3")
    if kind == "waterfall":
        A = tab["A"]
        r, c = np.unravel_index(np.argmax(A), A.shape)
        return (f"{A.shape[0]} {tab['mode']} rows x {A.shape[1]} times; maximum "
                f"{A[r, c]:.4g} at {tab['mode']}={tab['axis'][r]:g}, t={tab['t'][c]:g}")
    return kind


def plot(name, tab, out):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3.5))
    kind = tab["kind"]
    if kind == "f,re,im,abs":
        ax.stem(tab["f"], tab["abs"])
        ax.set_xlabel("f")
        ax.set_ylabel("|S|")
    elif kind == "x,y":
        ax.plot(tab["x"], tab["y"], ".-", ms=3)
        ax.set_xlabel("x")
    elif kind == "f,A,phi,P,p":
        ax.plot(tab["f"], tab["A"], "k-")
        ax.set_xlabel("f")
        ax.set_ylabel("A")
        ax2 = ax.twinx()
        ax2.plot(tab["f"], tab["p"], "k--")
        ax2.set_yscale("log")
        ax2.invert_yaxis()
        ax2.set_ylabel("p")
    else:
        mesh = ax.pcolormesh(tab["t"], tab["axis"], tab["A"], shading="auto")
        fig.colorbar(mesh, ax=ax)
        ax.set_xlabel("t")
        ax.set_ylabel(tab["mode"])
    ax.set_title(name)
    fig.tight_layout()
    fig.savefig(out, dpi=120)
    plt.close(fig)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", nargs="?", default="figures")
    ap.add_argument("--plot", action="store_true", help="also write PNG plots")
    args = ap.parse_args(argv)
    files = sorted(Path(args.directory).glob("*.csv"))
    if not files:
        print(f"no tables in {args.directory}/; run scripts/reproduce_figures.sh first",
              file=sys.stderr)
        return 1
    for path in files:
        tab = load(path)
        print(f"{path.stem:28s} {describe(path.stem, tab)}")
        if args.plot:
            plot(path.stem, tab, path.with_suffix(".png"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
