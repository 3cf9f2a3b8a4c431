"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 degenerate input.
"""

import dataclasses
import hashlib
import json
import os
import sys
import time

import click
import numpy as np

from . import __version__
from .bench import run_bench
from .errors import DegenerateInputError, EnfError
from .matching import best_lag, fisher_test
from .pipeline import ESTIMATORS, PipelineConfig, extract_enf
from .signal_io import SampledSignal, read_wav, write_wav
from .synthetic import make_power_fixture
from .track import EnfTrack, read_track, write_track
from .windowing import WINDOW_KINDS

MANIFEST_SCHEMA = 1

WINDOW_CHOICES = ("parzen", "hamming", "kaiser", "rect")

EXIT_DEGENERATE = 3


def _window_kind(name):
    return "rectangular" if name == "rect" else name


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_manifest(out_path, command, config, inputs, timings, outputs):
    manifest = {
        "schema_version": MANIFEST_SCHEMA,
        "tool_version": __version__,
        "command": command,
        "config": dataclasses.asdict(config) if config is not None else None,
        "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in inputs],
        "timings_s": timings,
        "outputs": [str(p) for p in outputs],
    }
    path = f"{out_path}.manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1)
        fh.write("\n")
    return path


def _config_from_options(mode, **kw):
    base = {"harmonic": 3, "taps": 1001} if mode == "power" else {"harmonic": 2, "taps": 4801}
    overrides = {k: v for k, v in kw.items() if v is not None}
    base.update(overrides)
    try:
        return PipelineConfig(**base)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def pipeline_options(fn):
    opts = [
        click.option("--mode", type=click.Choice(["power", "speech"]), default="power",
                     show_default=True, help="Parameter preset."),
        click.option("--nominal-hz", type=click.Choice(["50", "60"]), default=None,
                     help="Nominal grid frequency.  [default: 60]"),
        click.option("--harmonic", type=int, default=None,
                     help="Harmonic to analyze.  [default: per mode]"),
        click.option("--frame-seconds", "frame_len_s", type=float, default=None,
                     help="Frame length in seconds.  [default: 1]"),
        click.option("--shift-seconds", "shift_s", type=float, default=None,
                     help="Frame shift in seconds.  [default: 1]"),
        click.option("--window", type=click.Choice(WINDOW_CHOICES), default=None,
                     help="Temporal window.  [default: parzen]"),
        click.option("--kaiser-beta", type=float, default=None,
                     help="Kaiser window shape parameter.  [default: 8.6]"),
        click.option("--estimator", type=click.Choice(ESTIMATORS), default=None,
                     help="Per-frame estimator.  [default: capon]"),
        click.option("--taps", type=int, default=None,
                     help="Band-pass FIR length.  [default: per mode]"),
        click.option("--passband-hz", type=float, default=None,
                     help="Band-pass total width.  [default: 0.1]"),
        click.option("--capon-order", "capon_order", type=int, default=None,
                     help="Capon covariance order m.  [default: 10]"),
        click.option("--pad-factor", "pad_factor", type=int, default=None,
                     help="Grid density Q = pad * N.  [default: 4]"),
        click.option("--no-interpolate", "interpolate", flag_value=False, default=None,
                     help="Disable sub-bin quadratic interpolation."),
        click.option("--threads", type=int, default=None,
                     help="Frame-level worker threads (env ENF_THREADS)."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _gather_config(mode, nominal_hz, window, threads, **kw):
    if nominal_hz is not None:
        nominal_hz = float(nominal_hz)
    if window is not None:
        window = _window_kind(window)
    if threads is None:
        env = os.environ.get("ENF_THREADS")
        threads = int(env) if env else None
    return _config_from_options(
        mode, nominal_hz=nominal_hz, window=window, threads=threads, **kw
    )


@click.group()
@click.version_option(__version__, prog_name="enf")
def main():
    """ENF track extraction and matching."""


@main.command()
@click.argument("wav", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="Output track file.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--skip-seconds", type=float, default=0.0, show_default=True,
              help="Seconds to drop from the head of the recording.")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON summary.")
@pipeline_options
def extract(wav, output, fmt, skip_seconds, as_json, **kw):
    """Extract an ENF track from a WAV recording."""
    config = _gather_config(**kw)
    timings = {}
    try:
        t0 = time.perf_counter()
        signal = read_wav(wav)
        if skip_seconds > 0:
            signal = signal.skip_head(skip_seconds)
        timings["load"] = time.perf_counter() - t0

        t0 = time.perf_counter()
        track = extract_enf(signal, config)
        timings["extract"] = time.perf_counter() - t0
    except DegenerateInputError as exc:
        click.echo(f"error: degenerate input: {exc}", err=True)
        sys.exit(EXIT_DEGENERATE)
    except EnfError as exc:
        raise click.UsageError(str(exc))

    t0 = time.perf_counter()
    write_track(track, output, fmt)
    timings["write"] = time.perf_counter() - t0
    manifest = _write_manifest(output, "extract", config, [wav], timings, [output])

    summary = {
        "frames": len(track),
        "valid": int(track.valid.sum()),
        "output": output,
        "manifest": manifest,
    }
    if as_json:
        click.echo(json.dumps(summary))
    else:
        click.echo(
            f"wrote {summary['frames']} frames ({summary['valid']} valid) to {output}"
        )


@main.command()
@click.argument("extracted", type=click.Path(exists=True, dir_okay=False))
@click.argument("reference", type=click.Path(exists=True, dir_okay=False))
@click.option("--centered", is_flag=True,
              help="Pearson correlation instead of the uncentered form.")
def match(extracted, reference, centered):
    """Best-lag correlation of an extracted track against a reference."""
    try:
        f = read_track(extracted)
        g = read_track(reference)
        result = best_lag(f.freq_hz, g.freq_hz, centered=centered)
    except EnfError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DEGENERATE)
    click.echo(json.dumps({
        "lag": result.lag_one_based,
        "lag_seconds": float(result.best_lag * (g.shift_s or 1.0)),
        "correlation": result.correlation,
        "centered": result.centered,
        "n_used": result.n_used,
    }))


@main.command()
@click.argument("c1", type=float)
@click.argument("c2", type=float)
@click.argument("n", type=int)
@click.option("--alpha", type=float, default=0.05, show_default=True)
def fisher(c1, c2, n, alpha):
    """Fisher-z significance test between two correlation coefficients."""
    try:
        result = fisher_test(c1, c2, n, alpha)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(dataclasses.asdict(result)))


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--duration-seconds", type=float, default=1800.0, show_default=True)
@click.option("--snr-db", type=float, default=10.0, show_default=True)
@click.option("--wav", "wav_out", required=True, type=click.Path(dir_okay=False),
              help="Output WAV path for the synthetic recording.")
@click.option("--reference", "ref_out", required=True, type=click.Path(dir_okay=False),
              help="Output CSV path for the ground-truth track.")
def synth(seed, duration_seconds, snr_db, wav_out, ref_out):
    """Generate a seeded synthetic power-mains fixture plus ground truth."""
    fixture = make_power_fixture(seed, duration_s=duration_seconds, snr_db=snr_db)
    signal = fixture.signal
    peak = np.max(np.abs(signal.samples))
    write_wav(
        SampledSignal(signal.samples / peak * 0.99, signal.sample_rate_hz),
        wav_out,
    )
    rate = signal.sample_rate_hz
    seconds = np.arange(int(duration_seconds), dtype=np.int64)
    truth = EnfTrack(
        seconds,
        seconds.astype(np.float64),
        fixture.enf_hz[(seconds * int(rate)).clip(max=len(signal) - 1)],
        shift_s=1.0,
        nominal_hz=fixture.nominal_hz,
    )
    write_track(truth, ref_out, "csv")
    _write_manifest(ref_out, "synth", None, [], {}, [wav_out, ref_out])
    click.echo(f"wrote {wav_out} and {ref_out} (seed {seed})")


@main.command("compare-windows")
@click.argument("wav", type=click.Path(exists=True, dir_okay=False))
@click.option("--reference", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Reference track CSV.")
@click.option("--windows", default="parzen,hamming,kaiser,rect", show_default=True,
              help="Comma-separated window kinds.")
@click.option("--frame-lengths", default="1,5,10,20", show_default=True,
              help="Comma-separated frame lengths in seconds.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False),
              help="Output correlation matrix CSV.")
@click.option("--plot-data", type=click.Path(dir_okay=False), default=None,
              help="Optional long-format plot data CSV.")
@click.option("--centered/--uncentered", default=True, show_default=True,
              help="Correlation mode used against the reference.")
@pipeline_options
def compare_windows(wav, reference, windows, frame_lengths, output, plot_data,
                    centered, **kw):
    """Correlation matrix over window kinds and frame lengths."""
    if kw.get("estimator") is None:
        kw["estimator"] = "stft"  # the window study is STFT-based by default
    window_list = [w.strip() for w in windows.split(",") if w.strip()]
    for w in window_list:
        if w not in WINDOW_CHOICES:
            raise click.UsageError(f"unknown window {w!r}")
    try:
        lengths = [float(x) for x in frame_lengths.split(",") if x.strip()]
    except ValueError as exc:
        raise click.UsageError(f"bad frame length: {exc}")
    if not window_list or not lengths:
        raise click.UsageError("need at least one window and one frame length")

    base_window = kw.pop("window", None)  # superseded by --windows
    base_frame = kw.pop("frame_len_s", None)
    del base_window, base_frame
    signal = read_wav(wav)
    ref = read_track(reference)

    rows = []
    try:
        for win in window_list:
            cells = []
            for length in lengths:
                config = _gather_config(window=win, frame_len_s=length, **kw)
                track = extract_enf(signal, config)
                result = best_lag(track.freq_hz, ref.freq_hz, centered=centered)
                cells.append(result.correlation)
            rows.append((win, cells))
    except DegenerateInputError as exc:
        click.echo(f"error: degenerate input: {exc}", err=True)
        sys.exit(EXIT_DEGENERATE)

    header = "window," + ",".join(f"{length:g}" for length in lengths)
    lines = [header]
    for win, cells in rows:
        lines.append(win + "," + ",".join(f"{c!r}" for c in cells))
    with open(output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    if plot_data:
        with open(plot_data, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("window,frame_len_s,correlation\n")
            for win, cells in rows:
                for length, c in zip(lengths, cells):
                    fh.write(f"{win},{length:g},{c!r}\n")
    _write_manifest(output, "compare-windows", None, [wav, reference], {},
                    [output] + ([plot_data] if plot_data else []))
    click.echo(f"wrote {output}")


@main.command()
@click.option("--order", type=int, default=10, show_default=True,
              help="Capon covariance order m.")
@click.option("--grid", "grids", type=int, multiple=True, default=(1764,),
              show_default=True, help="Grid sizes Q (repeatable).")
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def bench(order, grids, trials, seed):
    """Time the fast Capon path against the dense per-bin path."""
    try:
        report = run_bench(order=order, grid_sizes=grids, trials=trials, seed=seed)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(json.dumps(report, indent=1))


if __name__ == "__main__":
    main()
