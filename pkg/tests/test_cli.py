"""Command-line interface: exit codes, formats, and round trips."""

import json
import os

import numpy as np
import pytest

from sphdesign import polytopes
from sphdesign.cli import main
from sphdesign.pointset import read_pointset, write_pointset


@pytest.fixture
def octa_file(tmp_path):
    path = tmp_path / "octa.txt"
    write_pointset(polytopes.octahedron(), path, t=3)
    return str(path)


class TestBounds:
    def test_csv_shape(self, capsys):
        assert main(["bounds", "--d", "2", "--t-max", "5"]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0] == "t,N_star,N_plus,N_hat,N_bar,dim_poly"
        assert len(out) == 6
        row = out[3].split(",")
        assert row[0] == "3" and row[1] == "6"

    def test_even_t_has_blank_symmetric_count(self, capsys):
        main(["bounds", "--d", "2", "--t-max", "2"])
        out = capsys.readouterr().out.strip().splitlines()
        assert out[2].split(",")[4] == ""

    def test_symmetric_filter(self, capsys):
        main(["bounds", "--d", "2", "--t-max", "6", "--symmetric"])
        out = capsys.readouterr().out.strip().splitlines()
        assert [r.split(",")[0] for r in out[1:]] == ["1", "3", "5"]

    def test_bad_range_is_usage_error(self):
        assert main(["bounds", "--d", "2", "--t-min", "5", "--t-max", "4"]) == 2


class TestVerify:
    def test_pass_and_fail_exit_codes(self, octa_file, capsys):
        assert main(["verify", octa_file, "--t", "3"]) == 0
        assert "PASS" in capsys.readouterr().out
        assert main(["verify", octa_file, "--t", "4"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_json_round_trip(self, octa_file, capsys):
        assert main(["verify", octa_file, "--t", "3", "--json"]) == 0
        blob = json.loads(capsys.readouterr().out)
        assert blob["is_design"] is True
        assert blob["t_claimed"] == 3
        assert blob["exactness_degree"] == 3
        assert blob["max_abs_weyl"] <= 1e-13

    def test_missing_file(self, tmp_path):
        assert main(["verify", str(tmp_path / "nope.txt"), "--t", "3"]) == 2

    def test_malformed_file(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("not numbers at all\n")
        assert main(["verify", str(bad), "--t", "3"]) == 2


class TestGeom:
    def test_report_line(self, octa_file, capsys):
        assert main(["geom", octa_file]) == 0
        out = capsys.readouterr().out
        assert "delta=1.5708" in out
        assert "h=0.9553" in out
        assert "rho=1.22" in out


class TestGen:
    def test_generates_and_verifies(self, tmp_path, capsys):
        out_file = str(tmp_path / "d2_t3.txt")
        code = main(["gen", "--d", "2", "--t", "3", "-o", out_file,
                     "--seed", "0"])
        assert code == 0
        line = capsys.readouterr().out
        assert "converged=True" in line
        X = read_pointset(out_file)
        assert X.N == 8
        assert main(["verify", out_file, "--t", "3"]) == 0

    def test_seed_reproducible(self, tmp_path, capsys):
        a = str(tmp_path / "a.txt")
        b = str(tmp_path / "b.txt")
        main(["gen", "--d", "2", "--t", "2", "-o", a, "--seed", "7"])
        main(["gen", "--d", "2", "--t", "2", "-o", b, "--seed", "7"])
        assert open(a).read() == open(b).read()

    def test_symmetric_gen(self, tmp_path, capsys):
        out_file = str(tmp_path / "sym.txt")
        code = main(["gen", "--d", "2", "--t", "3", "--symmetric",
                     "-o", out_file])
        assert code == 0
        X = read_pointset(out_file)
        assert X.symmetric and X.N == 6


class TestTable:
    def test_table_over_fixtures(self, tmp_path, capsys):
        d = tmp_path / "designs"
        d.mkdir()
        write_pointset(polytopes.octahedron(), d / "d2_t3.txt", t=3)
        code = main(["table", "--d", "2", "--t-min", "3", "--t-max", "4",
                     "--designs-dir", str(d)])
        assert code == 0
        captured = capsys.readouterr()
        lines = captured.out.strip().splitlines()
        assert lines[0] == ("t,N_star,N_plus,N,n,m,V_psi1,V_psi2,V_psi3,"
                            "rTr,delta,h,rho")
        row3 = lines[1].split(",")
        assert row3[0] == "3" and row3[3] == "6"
        assert row3[10] == "1.5708" and row3[12] == "1.22"
        # missing t=4 file: blank V columns and a warning on stderr
        row4 = lines[2].split(",")
        assert row4[6] == "" and "missing design file" in captured.err

    def test_usage_error(self, tmp_path):
        assert main(["table", "--d", "2", "--t-min", "3", "--t-max", "2",
                     "--designs-dir", str(tmp_path)]) == 2


class TestParsing:
    def test_no_command(self):
        assert main([]) == 2

    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0
