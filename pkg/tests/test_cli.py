import contextlib
import io
import json
import math
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgkink import cli
from sgkink.cli import format_complex, main, parse_complex, write_output

finite = st.floats(allow_nan=False, allow_infinity=False)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(["--quiet", *argv])
    return code, out.getvalue(), err.getvalue()


class TestComplexParsing:
    @pytest.mark.parametrize(
        "text,value",
        [("1", 1), ("2.5i", 2.5j), ("-i", -1j), ("j", 1j), ("1+2i", 1 + 2j), ("1-2j", 1 - 2j),
         ("-0.5-1e-3i", -0.5 - 1e-3j), (" 3+i ", 3 + 1j)],
    )
    def test_forms(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "abc", "1+", "1+2", "i2", "1++2i"])
    def test_rejected(self, text):
        with pytest.raises(ValueError):
            parse_complex(text)

    @given(finite, finite)
    def test_roundtrip(self, a, b):
        z = complex(a, b)
        back = parse_complex(format_complex(z))
        assert abs(back - z) <= 1e-15 * max(1.0, abs(z))


class TestSubcommands:
    def test_profile_csv(self):
        code, out, _ = run("profile", "--c", "0.5", "--samples", "5")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "z,v,v_z" and len(lines) == 6
        assert float(lines[3].split(",")[1]) == 0.0

    def test_profile_json(self):
        code, out, _ = run("profile", "--c", "0.5", "--samples", "3", "--format", "json")
        assert code == 0 and len(json.loads(out)["v"]) == 3

    def test_exponents_single(self):
        code, out, _ = run("exponents", "--c", "2", "--lambda", "1+1i")
        assert code == 0
        header, row = out.strip().splitlines()
        rec = dict(zip(header.split(","), row.split(",")))
        assert rec["sign_re_r1"] == rec["sign_re_r2"] == "-1"

    def test_exponents_random_seeded(self):
        a = run("--seed", "7", "exponents", "--c", "1.5", "--random", "5")
        b = run("exponents", "--c", "1.5", "--random", "5", "--seed", "7")
        c = run("exponents", "--c", "1.5", "--random", "5", "--seed", "8")
        assert a[0] == 0 and a[1] == b[1] and a[1] != c[1]
        assert len(a[1].strip().splitlines()) == 6

    def test_exponents_scan_json(self):
        code, out, _ = run("exponents", "--scan", "1.1:2:3,0.5:1:2,0.5:1:2", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["all_signs_agree"] and len(data["samples"]) == 12

    def test_flow(self):
        code, out, _ = run("flow", "--c", "0.5", "--lambda", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "tau,z,theta,w1,w2" and len(lines) > 10

    def test_maslov(self):
        code, out, _ = run("maslov", "--c", "0.5", "--lambda-min", "0", "--lambda-max", "2", "--steps", "3")
        assert code == 0
        data = json.loads(out)
        assert [r["count"] for r in data["results"]] == [0, 0, 0]
        code, out, _ = run("maslov", "--c", "0.5", "--steps", "3", "--format", "csv")
        assert out.splitlines()[0] == "lambda,count,index,endpoint_crossings"

    def test_riccati_single(self):
        code, out, _ = run("riccati", "--c", "0.5", "--lambda", "0.5+0.5i")
        assert code == 0
        data = json.loads(out)
        assert (data["eta_sign"], data["zeta_sign"]) == (1, -1)
        assert data["witness"]["verdict"] == "no eigenvalue"

    def test_riccati_scan(self):
        code, out, _ = run("--jobs", "2", "riccati", "--c", "0.5", "--scan-re", "0.5:1:2", "--scan-im", "0.5:1:2")
        assert code == 0 and len(json.loads(out)["results"]) == 4

    def test_report_with_config(self, tmp_path):
        cfg = tmp_path / "a.cfg"
        cfg.write_text("lambda_steps = 11\ncomplex_steps = 3\n")
        target = tmp_path / "r.json"
        code, out, _ = run("report", "--c", "0.5", "--config", str(cfg), "--out", str(target))
        assert code == 0 and out == ""
        data = json.loads(target.read_text())
        assert data["verdict"] == "SpectrallyStable" and len(data["real_axis"]) == 11


class TestExitCodes:
    @pytest.mark.parametrize(
        "argv",
        [
            ["maslov", "--c", "oops"],
            ["riccati", "--c", "0.5", "--lambda", "1+"],
            ["profile", "--c", "0.5", "--samples", "1"],
            ["--jobs", "0", "maslov", "--c", "0.5"],
            ["riccati", "--c", "0.5"],
            ["riccati", "--c", "0.5", "--scan-re", "0:1:2"],
            ["exponents", "--c", "2"],
            ["maslov", "--c", "0.5", "--lambda-min", "1", "--lambda-max", "0"],
            ["nosuch"],
        ],
    )
    def test_usage_errors(self, argv):
        code, _, err = run(*argv)
        assert code == 2 and "error" in err

    def test_luminal_speed(self):
        code, out, err = run("report", "--c", "1.0")
        assert code == 1 and out == "" and "DegenerateSpeed" in err

    def test_profile_superluminal(self):
        code, _, err = run("profile", "--c", "2")
        assert code == 1 and "error" in err

    def test_bad_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("nonsense = 1\n")
        code, _, err = run("report", "--c", "0.5", "--config", str(cfg))
        assert code == 1 and "ConfigError" in err


class TestAtomicWrite:
    def test_no_partial_file(self, tmp_path, monkeypatch):
        target = tmp_path / "out.csv"
        target.write_text("old\n")

        def fail(src, dst):
            raise OSError("disk full")

        monkeypatch.setattr(cli.os, "replace", fail)
        with pytest.raises(OSError):
            write_output("new\n", str(target))
        assert target.read_text() == "old\n"
        assert os.listdir(tmp_path) == ["out.csv"]

    def test_failed_command_leaves_no_file(self, tmp_path):
        target = tmp_path / "r.json"
        code, _, _ = run("report", "--c", "1.0", "--out", str(target))
        assert code == 1 and not target.exists()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sgkink", "--quiet", "profile", "--c", "0", "--samples", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "z,v,v_z"
    assert math.isclose(float(proc.stdout.splitlines()[2].split(",")[2]), 2.0)
