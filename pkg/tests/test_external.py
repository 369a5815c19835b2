import struct
import sys

import numpy as np
import pytest

from rbfuq import (
    External,
    ExternalCommandError,
    ExternalError,
    ExternalTimeoutError,
    OutputFormatError,
    OutputValueError,
    external_evaluate,
    read_qoi,
    run_campaign,
    write_qoi,
)

PY = sys.executable

ECHO_STUB = """\
import pathlib, struct, sys
params, out_dir = sys.argv[1], pathlib.Path(sys.argv[2])
vals = [float(t) for t in pathlib.Path(params).read_text().split()]
with open(out_dir / "qoi.bin", "wb") as fh:
    fh.write(struct.pack("<Q", len(vals)))
    for v in vals:
        fh.write(struct.pack("<d", v))
"""


def make_stub(tmp_path, body, name="stub.py"):
    path = tmp_path / name
    path.write_text(body)
    return path


def echo_spec(tmp_path, **kw):
    stub = make_stub(tmp_path, ECHO_STUB)
    return External(
        command=f"{PY} {stub} {{params}} {{dir}}",
        root=str(tmp_path / "runs"),
        **kw,
    )


class TestQoiFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "qoi.bin"
        values = np.array([1.5, -2.25, 1e-300, 7.0])
        write_qoi(path, values)
        assert np.array_equal(read_qoi(path), values)

    def test_empty_vector(self, tmp_path):
        path = tmp_path / "qoi.bin"
        write_qoi(path, [])
        assert read_qoi(path).size == 0

    def test_truncated_header(self, tmp_path):
        path = tmp_path / "qoi.bin"
        path.write_bytes(b"\x01\x02")
        with pytest.raises(ValueError, match="too short"):
            read_qoi(path)

    def test_truncated_payload(self, tmp_path):
        path = tmp_path / "qoi.bin"
        path.write_bytes(struct.pack("<Q", 3) + struct.pack("<d", 1.0))
        with pytest.raises(ValueError, match="short"):
            read_qoi(path)


class TestSingleSample:
    def test_echo_roundtrip_17_digits(self, tmp_path):
        spec = echo_spec(tmp_path)
        y = np.array([1.0 / 3.0, 0.1, -2.0 / 7.0])
        field = external_evaluate(spec, y, 0)
        assert np.array_equal(field.values, y)

    def test_files_laid_out_per_sample(self, tmp_path):
        spec = echo_spec(tmp_path)
        external_evaluate(spec, [0.5], 3)
        sample_dir = spec.samples_dir / "3"
        assert (sample_dir / "params.txt").exists()
        assert (sample_dir / "qoi.bin").exists()
        assert (sample_dir / "done").exists()

    def test_index_placeholder(self, tmp_path):
        body = ECHO_STUB + "\n(out_dir / ('tag' + sys.argv[3])).touch()\n"
        stub = make_stub(tmp_path, body)
        spec = External(
            command=f"{PY} {stub} {{params}} {{dir}} {{index}}",
            root=str(tmp_path / "runs"),
        )
        external_evaluate(spec, [0.5], 7)
        assert (spec.samples_dir / "7" / "tag7").exists()

    def test_expected_m_mismatch(self, tmp_path):
        spec = echo_spec(tmp_path, expected_m=5)
        with pytest.raises(OutputFormatError, match="expected 5"):
            external_evaluate(spec, [0.5, 0.5], 0)


class TestFailureModes:
    def test_nonzero_exit(self, tmp_path):
        stub = make_stub(tmp_path, "import sys; print('boom', file=sys.stderr); sys.exit(3)")
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(ExternalCommandError, match="sample 4.*exit status 3.*boom"):
            external_evaluate(spec, [0.5], 4)

    def test_unlaunchable_command(self, tmp_path):
        spec = External(command="/no/such/binary {params}", root=str(tmp_path / "runs"))
        with pytest.raises(ExternalCommandError, match="could not launch"):
            external_evaluate(spec, [0.5], 0)

    def test_timeout(self, tmp_path):
        stub = make_stub(tmp_path, "import time; time.sleep(30)")
        spec = External(
            command=f"{PY} {stub} {{params}} {{dir}}",
            root=str(tmp_path / "runs"),
            timeout=0.5,
        )
        with pytest.raises(ExternalTimeoutError, match="timed out"):
            external_evaluate(spec, [0.5], 0)

    def test_missing_output(self, tmp_path):
        stub = make_stub(tmp_path, "pass")
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(OutputFormatError, match="no output file"):
            external_evaluate(spec, [0.5], 0)

    def test_short_output(self, tmp_path):
        body = (
            "import pathlib, struct, sys\n"
            "pathlib.Path(sys.argv[2], 'qoi.bin').write_bytes(struct.pack('<Q', 9))\n"
        )
        stub = make_stub(tmp_path, body)
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(OutputFormatError, match="short"):
            external_evaluate(spec, [0.5], 0)

    def test_nan_output(self, tmp_path):
        body = (
            "import pathlib, struct, sys\n"
            "with open(pathlib.Path(sys.argv[2]) / 'qoi.bin', 'wb') as fh:\n"
            "    fh.write(struct.pack('<Q', 1) + struct.pack('<d', float('nan')))\n"
        )
        stub = make_stub(tmp_path, body)
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(OutputValueError, match="non-finite"):
            external_evaluate(spec, [0.5], 0)

    def test_errors_carry_sample_index(self, tmp_path):
        stub = make_stub(tmp_path, "import sys; sys.exit(1)")
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(ExternalError) as info:
            external_evaluate(spec, [0.5], 11)
        assert info.value.sample_index == 11

    def test_failed_sample_not_marked_done(self, tmp_path):
        stub = make_stub(tmp_path, "import sys; sys.exit(1)")
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(ExternalCommandError):
            external_evaluate(spec, [0.5], 0)
        assert not (spec.samples_dir / "0" / "done").exists()


class TestCampaign:
    def test_table_rows_follow_point_order(self, tmp_path):
        spec = echo_spec(tmp_path)
        pts = np.array([[0.1, 0.2], [0.3, 0.4], [0.5, 0.6]])
        result = run_campaign(spec, pts)
        assert np.array_equal(result.table, pts)
        assert result.launched == 3
        assert result.cached == 0

    def test_rerun_hits_cache(self, tmp_path):
        spec = echo_spec(tmp_path)
        pts = np.array([[0.1], [0.2], [0.3]])
        run_campaign(spec, pts)
        again = run_campaign(spec, pts)
        assert again.launched == 0
        assert again.cached == 3
        assert np.array_equal(again.table, pts)

    def test_parallel_matches_serial(self, tmp_path):
        spec = echo_spec(tmp_path)
        pts = np.linspace(0.0, 1.0, 8).reshape(-1, 1)
        serial = run_campaign(spec, pts).table
        spec2 = External(command=spec.command, root=str(tmp_path / "runs2"))
        parallel = run_campaign(spec2, pts, jobs=4).table
        assert np.array_equal(serial, parallel)

    def test_ragged_outputs_rejected(self, tmp_path):
        body = (
            "import pathlib, struct, sys\n"
            "params, out = sys.argv[1], pathlib.Path(sys.argv[2])\n"
            "n = 1 if out.name == '0' else 2\n"
            "with open(out / 'qoi.bin', 'wb') as fh:\n"
            "    fh.write(struct.pack('<Q', n) + b'\\x00' * (8 * n))\n"
        )
        stub = make_stub(tmp_path, body)
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(OutputFormatError, match="values"):
            run_campaign(spec, np.array([[0.1], [0.2]]))

    def test_bad_jobs_rejected(self, tmp_path):
        spec = echo_spec(tmp_path)
        with pytest.raises(ValueError, match="jobs"):
            run_campaign(spec, np.array([[0.1]]), jobs=0)

    def test_failure_propagates(self, tmp_path):
        stub = make_stub(tmp_path, "import sys; sys.exit(2)")
        spec = External(command=f"{PY} {stub} {{params}} {{dir}}", root=str(tmp_path / "runs"))
        with pytest.raises(ExternalCommandError):
            run_campaign(spec, np.array([[0.1], [0.2]]), jobs=2)
