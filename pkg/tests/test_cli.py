"""Command-line interface: schemas, round trips and exit codes."""

import csv
import io
import json
import shutil
import subprocess

import numpy as np
import pytest

from spectral_kit.cli import main, read_dataset


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    table = list(csv.reader(io.StringIO(text)))
    return table[0], np.array(table[1:], dtype=float)


def assert_single_line_error(err):
    assert err.startswith("spectral-kit: error: ")
    assert err.count("\n") == 1


# ------------------------------------------------------------ commands --

def test_fft_center_shows_mean_at_zero(capsys):
    code, out, _ = run(capsys, "fft", "--gen", "eq2-1", "--center")
    assert code == 0
    header, data = rows(out)
    assert header == ["f", "re", "im", "abs"]
    f0 = np.flatnonzero(data[:, 0] == 0)
    assert f0.size == 1
    assert data[f0[0], 3] == pytest.approx(1.5, abs=1e-12)
    assert np.all(np.diff(data[:, 0]) > 0)


def test_fft_analytic_is_one_sided(capsys):
    code, out, _ = run(capsys, "fft", "--gen", "eq2-1", "--analytic")
    assert code == 0
    _, data = rows(out)
    amp = dict(zip(data[:, 0], data[:, 3]))
    assert amp[0] == pytest.approx(1.5) and amp[2] == pytest.approx(0.5)
    assert amp[4] == pytest.approx(1.0)
    assert np.max(data[11:, 3]) <= 1e-12


def test_lomb_on_gapped_tone(capsys):
    code, out, _ = run(capsys, "lomb", "--gen", "lomb-gap", "--fmin", "0",
                       "--fmax", "25", "--df", "0.1")
    assert code == 0
    header, data = rows(out)
    assert header == ["f", "A", "phi", "P", "p"]
    assert data.shape == (251, 5)
    assert data[np.argmax(data[:, 1]), 0] == pytest.approx(7.0)


def test_lomb_fast_and_naive_agree(capsys):
    _, fast, _ = run(capsys, "lomb", "--gen", "lomb-gap")
    _, naive, _ = run(capsys, "lomb", "--gen", "lomb-gap", "--naive")
    a, b = rows(fast)[1], rows(naive)[1]
    assert a.shape == b.shape
    assert np.allclose(a[:, 1], b[:, 1], atol=1e-9)


def test_lomb_filter_fills_gap(capsys):
    code, out, _ = run(capsys, "lomb-filter", "--gen", "lomb-gap", "--fmin", "0",
                       "--fmax", "25", "--df", "0.1", "--new-step", "0.001")
    assert code == 0
    header, data = rows(out)
    assert header == ["x", "y"]
    x, y = data.T
    gap = (x > 0.4) & (x < 0.7)
    assert np.max(np.abs(y[gap] - np.sin(2 * np.pi * 7 * x[gap]))) <= 0.1


@pytest.mark.parametrize("argv", [
    ["envelope", "--gen", "two-burst"],
    ["hilbert", "--gen", "eq2-1"],
    ["derivative", "--gen", "cubic"],
    ["derivative", "--gen", "cubic", "--window-alpha", "0.5"],
    ["filter", "--gen", "lowpass-demo", "--seed", "1", "--bw", "5"],
    ["mavg", "--gen", "eq2-1", "--kernel-length", "5", "--phase-correct"],
    ["acf-denoise", "--gen", "acf-demo", "--seed", "1"],
])
def test_signal_commands_emit_xy(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    header, data = rows(out)
    assert header == ["x", "y"]
    assert data.shape[1] == 2 and np.all(np.isfinite(data))


def test_qdt(capsys):
    code, out, _ = run(capsys, "qdt", "--gen", "eq2-1", "--f0", "4")
    assert code == 0
    header, data = rows(out)
    assert header == ["f0", "A", "phi"]
    assert data[0, 1] == pytest.approx(1.0, abs=1e-9)


def test_waterfall_frequency_and_period_axes(capsys, tmp_path):
    code, out, _ = run(capsys, "waterfall", "--gen", "two-burst", "--ts", "0.004")
    assert code == 0
    table = list(csv.reader(io.StringIO(out)))
    assert table[0][0] == "t/f"
    assert len(table) == 251 and len(table[0]) == 1 + 126
    path = tmp_path / "wf.csv"
    path.write_text(out)
    code, via_file, _ = run(capsys, "waterfall", "--input", str(path), "--axis", "period")
    assert code == 0
    code, direct, _ = run(capsys, "waterfall", "--gen", "two-burst", "--ts", "0.004",
                          "--axis", "period")
    # the CSV keeps 15 significant digits, so compare numerically
    assert via_file.splitlines()[0] == direct.splitlines()[0]
    assert np.allclose(rows(via_file)[1], rows(direct)[1], rtol=1e-12, atol=1e-14)
    periods = np.array(direct.splitlines()[0].split(",")[1:], dtype=float)
    assert direct.startswith("t/period,")
    assert np.allclose(np.diff(periods), np.diff(periods)[0])
    code, _, err = run(capsys, "waterfall", "--input", str(tmp_path / "p.csv"))
    assert code == 2


def test_period_table_cannot_be_converted_again(capsys, tmp_path):
    _, out, _ = run(capsys, "waterfall", "--gen", "two-burst", "--ts", "0.004",
                    "--axis", "period", "--n-periods", "20")
    assert len(out.splitlines()[0].split(",")) == 21
    path = tmp_path / "p.csv"
    path.write_text(out)
    # a period table passes through unchanged; going back is refused
    code, again, _ = run(capsys, "waterfall", "--input", str(path), "--axis", "period")
    assert code == 0 and again.splitlines()[0] == out.splitlines()[0]
    code, _, err = run(capsys, "waterfall", "--input", str(path))
    assert code == 2
    assert_single_line_error(err)
    assert "already" in err


def test_json_format(capsys):
    code, out, _ = run(capsys, "fft", "--gen", "eq2-1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "spectrum"
    assert set(obj["data"]) == {"re", "im", "abs"}
    assert len(obj["axis"]["f"]) == 20


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "gen", "--gen", "eq2-1", "--output", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("x,y\n")


# ------------------------------------------------------------ datasets --

def test_gen_is_deterministic(capsys):
    outputs = [run(capsys, "gen", "--gen", "lomb-jitter", "--seed", "7")[1] for _ in range(2)]
    assert outputs[0] == outputs[1]
    other = run(capsys, "gen", "--gen", "lomb-jitter", "--seed", "8")[1]
    assert other != outputs[0]


def test_stochastic_generator_needs_seed(capsys):
    code, _, err = run(capsys, "gen", "--gen", "acf-demo")
    assert code == 2
    assert_single_line_error(err)


def test_unknown_generator_lists_ids(capsys):
    code, _, err = run(capsys, "gen", "--gen", "nope")
    assert code == 2
    assert_single_line_error(err)
    assert "eq2-1" in err


def test_csv_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--gen", "chirp-mix")
    path = tmp_path / "s.csv"
    path.write_text(out)
    _, again, _ = run(capsys, "gen", "--gen", "chirp-mix")
    _, via_file, _ = run(capsys, "envelope", "--input", str(path))
    _, direct, _ = run(capsys, "envelope", "--gen", "chirp-mix")
    assert np.allclose(rows(via_file)[1], rows(direct)[1], rtol=1e-12, atol=1e-14)
    x, y = read_dataset(out)
    assert np.array_equal(rows(again)[1], np.column_stack([x, y]))


def test_gen_rejects_input(capsys, monkeypatch):
    code, _, err = run(capsys, "gen", "--input", "-", stdin="x,y\n0,1\n1,2\n",
                       monkeypatch=monkeypatch)
    assert code == 2
    assert_single_line_error(err)


def test_stdin_single_column(capsys, monkeypatch):
    code, out, _ = run(capsys, "fft", "--input", "-", "--ts", "0.5",
                       stdin="1\n2\n3\n4\n", monkeypatch=monkeypatch)
    assert code == 0
    header, data = rows(out)
    assert data[0, 3] == pytest.approx(2.5)


@pytest.mark.parametrize("text, expected_x", [
    ("x,y\n0,1\n1,2\n2,3\n", [0, 1, 2]),
    ("0,1\n1,2\n2,3\n", [0, 1, 2]),
    ("x,y\n2,3\n\n0,1\n1,2\n", [0, 1, 2]),
])
def test_read_dataset_headers_blanks_and_sorting(text, expected_x):
    x, y = read_dataset(text)
    assert list(x) == expected_x
    assert list(y) == [1, 2, 3]


def test_read_dataset_single_column():
    x, y = read_dataset("y\n5\n6\n7\n", ts=0.25)
    assert np.allclose(x, [0, 0.25, 0.5]) and list(y) == [5, 6, 7]


@pytest.mark.parametrize("text, ts, match", [
    ("", None, "empty"),
    ("x,y\n", None, "no data"),
    ("x,y\n0,1\n0,2\n", None, "duplicate"),
    ("1\n2\n", None, "--ts"),
    ("0,1,2\n", None, "columns"),
    ("0,1\n1\n", None, "malformed"),
    ("0,1\n1,abc\n", None, "non-numeric"),
])
def test_read_dataset_errors(text, ts, match):
    from spectral_kit.cli import ValidationError
    with pytest.raises(ValidationError, match=match):
        read_dataset(text, ts)


# --------------------------------------------------------- exit codes --

@pytest.mark.parametrize("argv, fragment", [
    (["gen", "--gen", "eq2-1", "--ts", "0"], "--ts"),
    (["gen", "--gen", "eq2-1", "--ts", "-1"], "--ts"),
    (["filter", "--gen", "eq2-1", "--bw", "0"], "--bw"),
    (["filter", "--gen", "eq2-1", "--bw", "-2"], "--bw"),
    (["lomb", "--gen", "lomb-gap", "--fmin", "5", "--fmax", "5"], "--fmax"),
    (["lomb", "--gen", "lomb-gap", "--fmin", "5", "--fmax", "2"], "--fmax"),
    (["lomb", "--gen", "lomb-gap", "--df", "0"], "--df"),
    (["lomb", "--gen", "lomb-gap", "--df", "-0.1"], "--df"),
    (["filter", "--gen", "eq2-1"], "--bw"),
    (["fft"], "--input or --gen"),
    (["fft", "--gen", "eq2-1", "--input", "x.csv"], "--input or --gen"),
    (["fft", "--input", "/nonexistent/file.csv"], "cannot read"),
    (["nonsense"], "invalid choice"),
])
def test_validation_errors_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert_single_line_error(err)
    assert fragment in err


def test_runtime_failure_exits_1(capsys):
    # white noise has no component at a one-in-a-million false-alarm level
    code, out, err = run(capsys, "lomb-filter", "--gen", "acf-demo", "--seed", "3",
                         "--threshold", "40")
    assert code == 1
    assert out == ""
    assert_single_line_error(err)
    assert "no significant component" in err


def test_unwritable_output_exits_1(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "--gen", "eq2-1",
                       "--output", str(tmp_path / "missing" / "out.csv"))
    assert code == 1
    assert_single_line_error(err)


def test_console_script_is_installed():
    exe = shutil.which("spectral-kit")
    assert exe is not None
    done = subprocess.run([exe, "fft", "--gen", "eq2-1"], capture_output=True, text=True)
    assert done.returncode == 0
    assert done.stdout.startswith("f,re,im,abs\n")
    bad = subprocess.run([exe, "fft", "--gen", "eq2-1", "--ts", "0"],
                         capture_output=True, text=True)
    assert bad.returncode == 2 and bad.stdout == ""
