"""Cache determinism/resume semantics and the CLI front end."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

import gramlab as gl
from gramlab.cache import ZeroCache
from gramlab.cli import main
from gramlab.errors import CacheError


def _tree_bytes(root):
    out = {}
    for dirpath, _dirs, files in os.walk(root):
        for name in files:
            p = os.path.join(dirpath, name)
            out[os.path.relpath(p, root)] = open(p, "rb").read()
    return out


class TestCache:
    def test_round_trip_and_idempotence(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"))
        built = c.ensure_range(10.0, 120.0)
        assert built == [0]
        before = _tree_bytes(str(tmp_path / "cache"))
        again = ZeroCache(str(tmp_path / "cache")).ensure_range(10.0, 120.0)
        assert again == []
        assert _tree_bytes(str(tmp_path / "cache")) == before

    def test_census_matches_direct_scan(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"))
        c.ensure_range(10.0, 300.0)
        cached = c.census(10.0, 300.0)
        direct = gl.scan_zeros(10.0, 300.0)
        assert cached.count == direct.count
        np.testing.assert_allclose(cached.zeros, direct.zeros, atol=1e-8)
        assert cached.audit_passed

    def test_resume_equivalence(self, tmp_path):
        a = ZeroCache(str(tmp_path / "a"))
        a.ensure_range(10.0, 1200.0)
        a.ensure_range(1200.0, 2400.0)
        b = ZeroCache(str(tmp_path / "b"))
        b.ensure_range(10.0, 2400.0)
        assert _tree_bytes(str(tmp_path / "a")) == _tree_bytes(str(tmp_path / "b"))

    def test_thread_count_invariance(self, tmp_path):
        a = ZeroCache(str(tmp_path / "t1"))
        a.ensure_range(10.0, 2400.0, threads=1)
        b = ZeroCache(str(tmp_path / "t8"))
        b.ensure_range(10.0, 2400.0, threads=8)
        assert _tree_bytes(str(tmp_path / "t1")) == _tree_bytes(str(tmp_path / "t8"))

    def test_uncovered_range_refused(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"))
        c.ensure_range(10.0, 120.0)
        with pytest.raises(CacheError, match="run zeros first"):
            c.census(2000.0, 3000.0)

    def test_corrupt_block_rejected(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"))
        c.ensure_range(10.0, 120.0)
        block = tmp_path / "cache" / "blocks" / "block-00000000.csv"
        data = block.read_text().splitlines()
        data[0] = "# wrong header"
        block.write_text("\n".join(data) + "\n")
        with pytest.raises(CacheError):
            c.census(10.0, 100.0)

    def test_corrupt_manifest_rejected(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"))
        c.ensure_range(10.0, 120.0)
        (tmp_path / "cache" / "manifest.json").write_text("{broken")
        with pytest.raises(CacheError):
            ZeroCache(str(tmp_path / "cache")).census(10.0, 100.0)

    def test_step_policy_recorded_and_enforced(self, tmp_path):
        c = ZeroCache(str(tmp_path / "cache"), step=0.05)
        c.ensure_range(10.0, 120.0)
        m = json.loads((tmp_path / "cache" / "manifest.json").read_text())
        assert m["step_policy"] == "0.05"
        other = ZeroCache(str(tmp_path / "cache"), step=0.01)
        with pytest.raises(CacheError):
            other.ensure_range(10.0, 120.0)


class TestCli:
    def _run(self, tmp_path, *argv):
        return main(list(argv))

    def test_zeros_then_classify(self, tmp_path, capsys):
        cache = str(tmp_path / "cache")
        rc = self._run(tmp_path, "zeros", "--t-lo", "10", "--t-hi", "120",
                       "--cache", cache)
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["audit_passed"] is True
        assert payload["zeros"] == 38  # reference zero count in (10, 120]

        rc = self._run(tmp_path, "classify", "--t-lo", "18", "--t-hi", "100",
                       "--cache", cache)
        assert rc == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["n_g"] == sum(c for _k, c in rep["histogram"])
        assert rep["flagged_count"] == 0

    def test_gram_csv(self, capsys, tmp_path):
        rc = self._run(tmp_path, "gram", "--t-lo", "17", "--t-hi", "60",
                       "--format", "csv")
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,t,residual"
        assert lines[1].startswith("0,17.845599540")

    def test_default_range_doubles(self, capsys, tmp_path):
        rc = self._run(tmp_path, "gram", "--t-lo", "20", "--format", "json")
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["t_hi"] == 40.0

    def test_moments_csv(self, tmp_path, capsys):
        cache = str(tmp_path / "cache")
        assert self._run(tmp_path, "zeros", "--t-lo", "10", "--t-hi", "130",
                         "--cache", cache) == 0
        capsys.readouterr()
        rc = self._run(tmp_path, "moments", "--t-lo", "20", "--t-hi", "60",
                       "--cache", cache, "--h", "0.5", "--m", "2")
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "T,H,h,m,value,quad_error,leading_term,ratio"
        assert len(lines) == 3

    def test_report_json(self, tmp_path, capsys):
        cache = str(tmp_path / "cache")
        assert self._run(tmp_path, "zeros", "--t-lo", "10", "--t-hi", "130",
                         "--cache", cache) == 0
        capsys.readouterr()
        rc = self._run(tmp_path, "report", "--t-lo", "20", "--t-hi", "60",
                       "--cache", cache, "--c0", "2.0")
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["failure_proportion"] == 0.0
        assert payload["moments"]["ratio"] > 0

    def test_missing_cache_exit_code(self, tmp_path, capsys):
        rc = self._run(tmp_path, "classify", "--t-lo", "20", "--t-hi", "60",
                       "--cache", str(tmp_path / "nowhere"))
        assert rc == 4

    def test_bad_arguments_exit_code(self, tmp_path, capsys):
        rc = self._run(tmp_path, "gram", "--t-lo", "60", "--t-hi", "20")
        assert rc == 2
        rc = self._run(tmp_path, "gram", "--t-lo", "1", "--t-hi", "5")
        assert rc == 2

    def test_out_file_written_atomically(self, tmp_path, capsys):
        out = tmp_path / "gram.csv"
        rc = self._run(tmp_path, "gram", "--t-lo", "18", "--t-hi", "60",
                       "--format", "csv", "--out", str(out))
        assert rc == 0
        assert out.read_text().splitlines()[0] == "n,t,residual"
        again = tmp_path / "gram2.csv"
        self._run(tmp_path, "gram", "--t-lo", "18", "--t-hi", "60",
                  "--format", "csv", "--out", str(again))
        assert out.read_bytes() == again.read_bytes()

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "gramlab.cli", "gram", "--t-lo", "18",
             "--t-hi", "40", "--format", "csv"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "n,t,residual"
