"""Non-intrusive adapter around an external solver executable.

Per-sample file protocol under ``<root>/samples/<index>/``:

* ``params.txt``  one ASCII line, D space-separated decimals, 17
  significant digits;
* ``qoi.bin``     little-endian u64 count M followed by M little-endian
  f64 values, written by the solver;
* ``done``        empty marker created here only after a successful parse.

The command template is split into tokens first and the placeholders
``{params}``, ``{dir}``, ``{index}`` are substituted per token, so paths
containing spaces stay single arguments.  A sample whose directory holds
a ``done`` marker is never launched again.
"""
from __future__ import annotations

import shlex
import struct
import subprocess
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grid import GridField, GridSpec


class ExternalError(RuntimeError):
    """Base class for solver-adapter failures; carries the sample index."""

    def __init__(self, sample_index: int, message: str):
        super().__init__(f"sample {sample_index}: {message}")
        self.sample_index = sample_index


class ExternalCommandError(ExternalError):
    """Solver exited with nonzero status."""


class ExternalTimeoutError(ExternalError):
    """Solver exceeded the configured timeout."""


class OutputFormatError(ExternalError):
    """Output file missing, truncated, or of unexpected length."""


class OutputValueError(ExternalError):
    """Output parsed but contains non-finite values."""


@dataclass(frozen=True)
class External:
    """External-solver model: command template plus working-dir root.

    ``expected_m`` of None accepts whatever length the solver writes.
    """

    command: str
    root: str
    timeout: float = 60.0
    expected_m: int | None = None

    @property
    def samples_dir(self) -> Path:
        return Path(self.root) / "samples"


def write_qoi(path, values) -> None:
    """Write a count-prefixed little-endian f64 vector."""
    values = np.asarray(values, dtype="<f8").ravel()
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", values.size))
        fh.write(values.tobytes())


def read_qoi(path) -> np.ndarray:
    """Read a count-prefixed vector; raises ValueError on truncation."""
    raw = Path(path).read_bytes()
    if len(raw) < 8:
        raise ValueError(f"{path}: too short for a count header")
    (m,) = struct.unpack("<Q", raw[:8])
    if len(raw) < 8 + 8 * m:
        raise ValueError(f"{path}: header promises {m} values, file is short")
    return np.frombuffer(raw[8 : 8 + 8 * m], dtype="<f8").astype(float)


def _parse_output(spec: External, index: int, sample_dir: Path) -> np.ndarray:
    qoi = sample_dir / "qoi.bin"
    if not qoi.exists():
        raise OutputFormatError(index, f"no output file {qoi}")
    try:
        values = read_qoi(qoi)
    except ValueError as exc:
        raise OutputFormatError(index, str(exc)) from exc
    if spec.expected_m is not None and values.size != spec.expected_m:
        raise OutputFormatError(
            index, f"expected {spec.expected_m} values, got {values.size}"
        )
    if not np.all(np.isfinite(values)):
        raise OutputValueError(index, "non-finite values in output")
    return values


def _launch(spec: External, y, index: int, sample_dir: Path) -> None:
    params = sample_dir / "params.txt"
    line = " ".join(format(float(v), ".17g") for v in np.asarray(y).ravel())
    params.write_text(line + "\n")
    fields = {"params": str(params), "dir": str(sample_dir), "index": str(index)}
    argv = [token.format(**fields) for token in shlex.split(spec.command)]
    try:
        proc = subprocess.run(
            argv, capture_output=True, text=True, timeout=spec.timeout
        )
    except subprocess.TimeoutExpired as exc:
        raise ExternalTimeoutError(index, f"timed out after {spec.timeout}s") from exc
    except OSError as exc:
        raise ExternalCommandError(index, f"could not launch {argv[0]}: {exc}") from exc
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-3:]
        raise ExternalCommandError(
            index,
            f"exit status {proc.returncode}" + (": " + " | ".join(tail) if tail else ""),
        )


def _evaluate_values(spec: External, y, index: int) -> tuple:
    """Returns (values, launched); cached samples never launch."""
    sample_dir = spec.samples_dir / str(index)
    sample_dir.mkdir(parents=True, exist_ok=True)
    if (sample_dir / "done").exists():
        return _parse_output(spec, index, sample_dir), False
    _launch(spec, y, index, sample_dir)
    values = _parse_output(spec, index, sample_dir)
    (sample_dir / "done").touch()
    return values, True


def external_evaluate(spec: External, y, sample_index: int) -> GridField:
    """Evaluate one sample through the file protocol (cache-aware)."""
    values, _ = _evaluate_values(spec, y, sample_index)
    return GridField(grid=GridSpec.index_line(values.size), values=values)


@dataclass(frozen=True)
class CampaignResult:
    """Sample table plus launch accounting for cache verification."""

    table: np.ndarray
    launched: int
    cached: int


def run_campaign(spec: External, points, jobs: int = 1) -> CampaignResult:
    """Evaluate all rows of ``points``, at most ``jobs`` solvers at a time.

    Sample directories are index-disjoint, so workers never share files;
    rows of the result table follow the sample order regardless of
    completion order.  The first failure cancels the remaining work.
    """
    pts = np.atleast_2d(np.asarray(points.points if hasattr(points, "points") else points))
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    results = [None] * len(pts)
    launched = 0
    cached = 0
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = {
            pool.submit(_evaluate_values, spec, row, i): i
            for i, row in enumerate(pts)
        }
        try:
            for future, i in futures.items():
                results[i], ran = future.result()
                launched += int(ran)
                cached += int(not ran)
        except ExternalError:
            for other in futures:
                other.cancel()
            raise
    m = results[0].size
    for i, row in enumerate(results):
        if row.size != m:
            raise OutputFormatError(i, f"sample has {row.size} values, sample 0 has {m}")
    return CampaignResult(table=np.vstack(results), launched=launched, cached=cached)
