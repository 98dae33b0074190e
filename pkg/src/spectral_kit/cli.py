"""Command-line front end ``spectral-kit``.

Usage::

    spectral-kit <subcommand> [--input PATH | --gen ID] [--output PATH]
                 [--format csv|json] [--seed N] [--ts T] [flags...]

Input CSV has the columns ``x,y`` (or a single ``y`` column together with
``--ts``), an optional header line, comma separators and ``.`` decimals.
Rows are sorted by ``x`` (stable); duplicate positions are rejected.

Exit codes: 0 success, 2 invalid input or parameters, 1 failure during the
computation. Diagnostics are a single line on standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import generators
from .analytic import analytic_signal, envelope, hilbert
from .core import Signal, Spectrum, qdt_demodulate, spec_fft
from .filtering import (FilterSpec, Kernel, acf_denoise, filter_fft,
                        moving_average, spectral_derivative, window_tukey)
from .lomb import LombPeriodogram, filter_lomb, lomb_scargle, lomb_scargle_fast
from .waterfall import WaterfallDiagram, to_period_axis, waterfall

__all__ = ["main", "build_parser", "read_dataset", "emit", "ValidationError"]


class ValidationError(Exception):
    """Bad input data or parameters (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


# ----------------------------------------------------------------- input --

def _parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(text)
    return value


def read_dataset(text: str, ts: float | None = None):
    """Parse CSV ``text`` into sorted ``(x, y)`` arrays.

    The first non-blank line is treated as a header when it is not numeric.
    A waterfall table (corner cell ``t/f`` or ``t/period``) is returned as a
    :class:`WaterfallDiagram` instead.
    """
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise ValidationError("input is empty")
    if rows[0] and rows[0][0].strip() in ("t/f", "t/period"):
        return _read_waterfall(rows)
    try:
        [_parse_float(c) for c in rows[0]]
    except ValueError:
        rows = rows[1:]
    if not rows:
        raise ValidationError("input has a header but no data")
    width = len(rows[0])
    if width not in (1, 2):
        raise ValidationError(f"expected 1 or 2 columns, found {width}")
    data = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValidationError(f"malformed CSV: row {i + 1} has {len(row)} "
                                  f"fields, expected {width}")
        try:
            data[i] = [_parse_float(c) for c in row]
        except ValueError:
            raise ValidationError(
                f"malformed CSV: non-numeric or non-finite value in row {i + 1}") from None
    if width == 1:
        if ts is None:
            raise ValidationError("single-column input needs --ts")
        return np.arange(len(rows)) * ts, data[:, 0]
    order = np.argsort(data[:, 0], kind="stable")
    x, y = data[order, 0], data[order, 1]
    dup = np.flatnonzero(np.diff(x) == 0)
    if dup.size:
        raise ValidationError(f"duplicate position x={x[dup[0]]!r}")
    return x, y


def _read_waterfall(rows) -> WaterfallDiagram:
    mode = "frequency" if rows[0][0].strip() == "t/f" else "period"
    try:
        axis = np.array([_parse_float(c) for c in rows[0][1:]])
        body = np.array([[_parse_float(c) for c in r] for r in rows[1:]])
    except ValueError:
        raise ValidationError("malformed waterfall table") from None
    if body.ndim != 2 or body.shape[1] != axis.size + 1:
        raise ValidationError("malformed waterfall table")
    return WaterfallDiagram(body[:, 0], axis, body[:, 1:].T, axis_mode=mode)


# ---------------------------------------------------------------- output --

def _fmt(v) -> str:
    return "%.15g" % v


def _table(kind, axis: dict, data: dict):
    return {"kind": kind, "axis": axis, "data": data}


def _signal_table(s: Signal):
    return _table("signal", {"x": s.positions}, {"y": np.real(s.values)})


def _spectrum_table(sp: Spectrum):
    a = sp.amplitudes
    return _table("spectrum", {"f": sp.frequencies},
                  {"re": a.real, "im": a.imag, "abs": np.abs(a)})


def _periodogram_table(pg: LombPeriodogram):
    return _table("periodogram", {"f": pg.frequencies},
                  {"A": pg.amplitude, "phi": pg.phase, "P": pg.power,
                   "p": pg.fap})


def _waterfall_table(wf: WaterfallDiagram):
    name = "f" if wf.axis_mode == "frequency" else "period"
    return _table("waterfall", {"t": wf.times, name: wf.axis},
                  {"amplitude": wf.amplitudes})


def emit(table: dict, fmt: str = "csv") -> str:
    """Render a result table as CSV or JSON text (LF line endings)."""
    if fmt == "json":
        def plain(d):
            return {k: np.asarray(v).tolist() for k, v in d.items()}
        return json.dumps({"kind": table["kind"], "axis": plain(table["axis"]),
                           "data": plain(table["data"])}) + "\n"
    lines = []
    if table["kind"] == "waterfall":
        (_, t), (name, ax) = table["axis"].items()
        amp = table["data"]["amplitude"]
        lines.append(",".join([f"t/{name}"] + [_fmt(v) for v in ax]))
        for j, tj in enumerate(t):
            lines.append(",".join([_fmt(tj)] + [_fmt(v) for v in amp[:, j]]))
    else:
        cols = {**table["axis"], **table["data"]}
        lines.append(",".join(cols))
        arrays = [np.atleast_1d(np.asarray(v)) for v in cols.values()]
        for i in range(arrays[0].size):
            lines.append(",".join(_fmt(a[i]) for a in arrays))
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- commands --

def _positive(name, value):
    if value is not None and not (math.isfinite(value) and value > 0):
        raise ValidationError(f"{name} must be positive (got {value!r})")


def _load(args):
    if (args.input is None) == (args.gen is None):
        raise ValidationError("give exactly one of --input or --gen")
    if args.gen is not None:
        try:
            return generators.generate(args.gen, ts=args.ts, seed=args.seed)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ValidationError(f"cannot read input {args.input!r}: "
                              f"{getattr(exc, 'strerror', None) or exc}") from None
    return read_dataset(text, args.ts)


def _signal(args) -> Signal:
    data = _load(args)
    if isinstance(data, WaterfallDiagram):
        raise ValidationError(f"{args.command} expects x,y input, got a waterfall table")
    try:
        return Signal(*data)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def _freq_grid(args, signal: Signal) -> np.ndarray:
    span = signal.positions[-1] - signal.positions[0]
    if span <= 0:
        raise ValidationError("need at least two distinct positions")
    fmin = 0.0 if args.fmin is None else args.fmin
    fmax = args.fmax if args.fmax is not None else 0.5 * (len(signal) - 1) / span
    df = args.df if args.df is not None else 1.0 / (4.0 * span)
    _positive("--df", df)
    if fmin < 0:
        raise ValidationError("--fmin must be >= 0")
    if not fmax > fmin:
        raise ValidationError("--fmax must exceed --fmin")
    count = int(math.floor((fmax - fmin) / df * (1 + 1e-12))) + 1
    return fmin + df * np.arange(count)


def cmd_gen(args):
    if args.gen is None or args.input is not None:
        raise ValidationError("gen needs --gen ID")
    return _signal_table(_signal(args))


def cmd_fft(args):
    s = _signal(args)
    if args.analytic:
        s = s.with_values(analytic_signal(s).values)
    return _spectrum_table(spec_fft(s, center=args.center))


def cmd_envelope(args):
    return _signal_table(envelope(_signal(args)))


def cmd_hilbert(args):
    return _signal_table(hilbert(_signal(args)))


def cmd_derivative(args):
    s = _signal(args)
    if args.window_alpha is not None:
        if not 0 < args.window_alpha <= 1:
            raise ValidationError("--window-alpha must lie in (0, 1]")
        s = s.with_values(s.values * window_tukey(s.positions, args.window_alpha))
    return _signal_table(spectral_derivative(s))


def cmd_filter(args):
    _positive("--bw", args.bw)
    if args.n < 1:
        raise ValidationError("--n must be >= 1")
    spec = FilterSpec(args.fc, args.bw, args.n)
    return _signal_table(filter_fft(_signal(args), spec))


def cmd_mavg(args):
    if args.kernel_length < 1:
        raise ValidationError("--kernel-length must be >= 1")
    s = _signal(args)
    if args.kernel_length > len(s):
        raise ValidationError("--kernel-length exceeds the signal length")
    return _signal_table(moving_average(s, Kernel.boxcar(args.kernel_length),
                                        args.phase_correct))


def cmd_acf_denoise(args):
    return _signal_table(acf_denoise(_signal(args)))


def cmd_waterfall(args):
    _positive("--wd", args.wd)
    _positive("--nf", args.nf)
    data = _load(args)
    if isinstance(data, WaterfallDiagram):
        wf = data
    else:
        try:
            s = Signal(*data)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        wf = waterfall(s, nf=args.nf, wd=args.wd)
    if args.axis == "period" and wf.axis_mode == "frequency":
        wf = to_period_axis(wf, args.n_periods)
    elif args.axis == "frequency" and wf.axis_mode == "period":
        raise ValidationError("input is already on the period axis")
    return _waterfall_table(wf)


def _periodogram(args, s: Signal) -> LombPeriodogram:
    freqs = _freq_grid(args, s)
    if args.m_indep is not None and args.m_indep < 1:
        raise ValidationError("--m-indep must be >= 1")
    fn = lomb_scargle if args.naive else lomb_scargle_fast
    return fn(s, freqs, args.m_indep)


def cmd_lomb(args):
    return _periodogram_table(_periodogram(args, _signal(args)))


def cmd_lomb_filter(args):
    s = _signal(args)
    x0, x1 = s.positions[0], s.positions[-1]
    step = args.new_step if args.new_step is not None else (x1 - x0) / 1000.0
    _positive("--new-step", step)
    pg = _periodogram(args, s)
    count = int(math.floor((x1 - x0) / step * (1 + 1e-12))) + 1
    new_x = x0 + step * np.arange(count)
    return _signal_table(filter_lomb(pg, new_x, args.threshold, args.phase,
                                     refit=not args.no_refit))


def cmd_qdt(args):
    if not math.isfinite(args.f0):
        raise ValidationError("--f0 must be finite")
    amp, phi = qdt_demodulate(_signal(args), 2.0 * math.pi * args.f0)
    return _table("qdt", {"f0": [args.f0]}, {"A": [amp], "phi": [phi]})


# ----------------------------------------------------------------- parser --

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", metavar="PATH",
                        help="CSV file with x,y columns ('-' for stdin)")
    common.add_argument("--gen", metavar="ID",
                        help="use a built-in example: " + ", ".join(generators.available()))
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, help="seed for stochastic generators")
    common.add_argument("--ts", type=float,
                        help="sampling interval (generators, single-column input)")

    parser = _Parser(prog="spectral-kit", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    add("gen", cmd_gen, "emit a built-in example signal")
    p = add("fft", cmd_fft, "normalized DFT spectrum (f,re,im,abs)")
    p.add_argument("--center", action="store_true", help="center f=0")
    p.add_argument("--analytic", action="store_true",
                   help="spectrum of the analytic signal s + iH(s) (one-sided)")
    add("envelope", cmd_envelope, "amplitude envelope |s + iH(s)|")
    add("hilbert", cmd_hilbert, "discrete Hilbert transform")
    p = add("derivative", cmd_derivative, "spectral derivative")
    p.add_argument("--window-alpha", type=float,
                   help="apply a Tukey window with this taper fraction first")
    p = add("filter", cmd_filter, "polynomial band-pass on the analytic spectrum")
    p.add_argument("--fc", type=float, default=0.0)
    p.add_argument("--bw", type=float, required=True)
    p.add_argument("--n", type=int, default=3)
    p = add("mavg", cmd_mavg, "circular moving average")
    p.add_argument("--kernel-length", type=int, required=True)
    p.add_argument("--phase-correct", action="store_true")
    add("acf-denoise", cmd_acf_denoise, "autocorrelation-threshold denoising")
    p = add("waterfall", cmd_waterfall, "time-frequency waterfall diagram")
    p.add_argument("--wd", type=float, default=64.0)
    p.add_argument("--nf", type=int, default=3)
    p.add_argument("--axis", choices=("frequency", "period"), default="frequency")
    p.add_argument("--n-periods", type=int, help="rows of the period grid")
    for name, fn, help_ in (("lomb", cmd_lomb, "Lomb-Scargle periodogram"),
                            ("lomb-filter", cmd_lomb_filter,
                             "reconstruction from significant periodogram peaks")):
        p = add(name, fn, help_)
        p.add_argument("--fmin", type=float)
        p.add_argument("--fmax", type=float)
        p.add_argument("--df", type=float)
        p.add_argument("--m-indep", type=int, help="independent frequencies M")
        p.add_argument("--naive", action="store_true",
                       help="use the two-pass estimator")
    p.add_argument("--threshold", type=float, default=3.0,
                   help="keep peaks with fap <= 10**-threshold")
    p.add_argument("--phase", choices=("lin", "none"), default="lin")
    p.add_argument("--new-step", type=float, help="step of the output grid")
    p.add_argument("--no-refit", action="store_true",
                   help="sum periodogram peaks without the joint refit")
    p = add("qdt", cmd_qdt, "quadrature demodulation at one frequency")
    p.add_argument("--f0", type=float, required=True)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.ts is not None:
            _positive("--ts", args.ts)
        table = args.func(args)
        text = emit(table, args.format)
    except ValidationError as exc:
        print(f"spectral-kit: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - reported as a runtime failure
        print(f"spectral-kit: error: {exc}".replace("\n", " "), file=sys.stderr)
        return 1
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        target = repr(args.output) if args.output else "stdout"
        print(f"spectral-kit: error: cannot write {target}: {exc.strerror}",
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
