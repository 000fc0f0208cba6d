"""Tests for the command-line interface."""

import csv
import io

import numpy as np
import pytest

from tet10mass.cli import EXIT_DATA, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main
from tet10mass.meshfile import MeshElement, serialize_mesh
from tet10mass.study import make_element


@pytest.fixture
def reference_mesh(tmp_path):
    path = tmp_path / "ref.mesh"
    elem = MeshElement("ref", make_element(np.zeros(18)), 2520.0)
    path.write_text(serialize_mesh([elem]))
    return path


def read_csv_body(text):
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(lines))))
    return rows[0], rows[1:]


class TestTables:
    def test_cm_text_first_row(self, capsys):
        assert main(["tables", "--scheme", "cm"]) == EXIT_OK
        out = capsys.readouterr().out
        first_data_row = [l for l in out.splitlines() if not l.startswith("#")][0]
        assert first_data_row.split() == "6 1 1 1 -4 -6 -4 -4 -6 -6".split()

    def test_qm_csv_last_entry(self, capsys):
        assert main(["tables", "--scheme", "qm", "--format", "csv"]) == EXIT_OK
        header, rows = read_csv_body(capsys.readouterr().out)
        assert header == ["table", "i", "j", "value"]
        lookup = {(r[0], r[1], r[2]): r[3] for r in rows}
        assert lookup[("m10", "10", "10")] == "288"
        assert lookup[("m1", "1", "1")] == "18"

    def test_lm_tables_sum_identity_from_csv(self, capsys):
        main(["tables", "--scheme", "lm", "--format", "csv"])
        _, rows = read_csv_body(capsys.readouterr().out)
        total = {}
        for table, i, j, value in rows:
            total[(i, j)] = total.get((i, j), 0) + int(value)
        main(["tables", "--scheme", "cm", "--format", "csv"])
        _, m0_rows = read_csv_body(capsys.readouterr().out)
        for _, i, j, value in m0_rows:
            assert total[(i, j)] == 2 * int(value)

    def test_exact_tables_contain_row55(self, capsys):
        assert main(["tables", "--scheme", "exact"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "(5,5) 4/315 1/210" in out

    def test_unknown_scheme_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["tables", "--scheme", "m0"])
        assert excinfo.value.code == EXIT_USAGE

    def test_out_file(self, tmp_path, capsys):
        out = tmp_path / "tables.csv"
        main(["tables", "--scheme", "cm", "--format", "csv", "--out", str(out)])
        assert out.read_text().splitlines()[0] == "table,i,j,value"
        assert capsys.readouterr().out == ""


class TestMass:
    def test_exact_on_reference_reproduces_integers(self, reference_mesh, capsys):
        assert main(["mass", "--mesh", str(reference_mesh), "--scheme", "exact"]) == EXIT_OK
        _, rows = read_csv_body(capsys.readouterr().out)
        assert len(rows) == 100
        from tet10mass.validate import REFERENCE_M0

        for elem_id, scheme, i, j, value in rows:
            assert elem_id == "ref" and scheme == "exact"
            expected = REFERENCE_M0[int(i) - 1, int(j) - 1]
            assert float(value) == pytest.approx(expected, abs=1e-11)

    def test_cm_matches_exact_on_straight_element(self, reference_mesh, capsys):
        main(["mass", "--mesh", str(reference_mesh), "--scheme", "exact"])
        exact_out = capsys.readouterr().out
        main(["mass", "--mesh", str(reference_mesh), "--scheme", "cm"])
        cm_out = capsys.readouterr().out
        _, exact_rows = read_csv_body(exact_out)
        _, cm_rows = read_csv_body(cm_out)
        for e_row, c_row in zip(exact_rows, cm_rows):
            assert float(c_row[4]) == pytest.approx(float(e_row[4]), abs=1e-11)

    def test_density_override(self, reference_mesh, capsys):
        main(["mass", "--mesh", str(reference_mesh), "--scheme", "exact",
              "--density", "5040"])
        _, rows = read_csv_body(capsys.readouterr().out)
        assert float(rows[0][4]) == pytest.approx(12.0, rel=1e-12)

    def test_degenerate_element_reports_and_exits_nonzero(self, tmp_path, capsys):
        path = tmp_path / "bad.mesh"
        good = MeshElement("good", make_element(np.zeros(18)), None)
        bad = MeshElement("bad", np.zeros((10, 3)), None)
        path.write_text(serialize_mesh([good, bad]))
        code = main(["mass", "--mesh", str(path)])
        captured = capsys.readouterr()
        assert code == EXIT_FAILURE
        assert "non-positive metric" in captured.err and "bad" in captured.err
        _, rows = read_csv_body(captured.out)
        assert len(rows) == 100  # the valid element still serializes

    def test_missing_mesh_file_is_data_error(self, tmp_path, capsys):
        code = main(["mass", "--mesh", str(tmp_path / "nope.mesh")])
        assert code == EXIT_DATA

    def test_parse_error_is_data_error(self, tmp_path, capsys):
        path = tmp_path / "broken.mesh"
        path.write_text("tet10 v1\nelem e1\n0 0\n")
        code = main(["mass", "--mesh", str(path)])
        captured = capsys.readouterr()
        assert code == EXIT_DATA
        assert "line 3" in captured.err


class TestStudy:
    ARGS = ["study", "--deltas", "0,0.05", "--elements", "6",
            "--schemes", "cm,lm,qm,g15", "--seed", "9"]

    def test_zero_delta_closed_forms_exact(self, capsys):
        assert main(self.ARGS + ["--no-figures"]) == EXIT_OK
        _, rows = read_csv_body(capsys.readouterr().out)
        for delta, scheme, mean_error, *_ in rows:
            if float(delta) == 0.0 and scheme in ("cm", "lm", "qm"):
                assert float(mean_error) <= 1e-12

    def test_same_seed_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(self.ARGS + ["--out", str(out1), "--no-figures"])
        main(self.ARGS + ["--out", str(out2), "--no-figures"])
        assert out1.read_bytes() == out2.read_bytes()

    def test_parallel_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "serial.csv", tmp_path / "threads.csv"
        main(self.ARGS + ["--out", str(out1), "--no-figures"])
        main(self.ARGS + ["--out", str(out2), "--no-figures", "--workers", "4"])
        assert out1.read_bytes() == out2.read_bytes()

    def test_metadata_mentions_seed_and_generator(self, capsys):
        main(self.ARGS + ["--no-figures"])
        out = capsys.readouterr().out
        assert "# seed=9" in out
        assert "# rng=numpy-pcg64-seedsequence" in out
        assert "# version=" in out

    def test_figures_written_alongside_csv(self, tmp_path, capsys):
        out = tmp_path / "study.csv"
        assert main(self.ARGS + ["--out", str(out)]) == EXIT_OK
        pngs = sorted(p.name for p in tmp_path.glob("*.png"))
        assert pngs == ["cm_vs_low_order_gauss.png", "qm_vs_g15.png",
                        "semianalytic_schemes.png"]

    def test_figures_directory_flag(self, tmp_path, capsys):
        figdir = tmp_path / "figs"
        assert main(self.ARGS + ["--figures", str(figdir)]) == EXIT_OK
        assert (figdir / "semianalytic_schemes.png").exists()

    def test_bad_delta_list_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["study", "--deltas", "0,abc"])
        assert excinfo.value.code == EXIT_USAGE

    def test_unknown_scheme_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["study", "--schemes", "cm,bogus"])
        assert excinfo.value.code == EXIT_USAGE


class TestValidate:
    def test_passes_and_prints_one_line_per_check(self, capsys):
        assert main(["validate"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) >= 15
        assert all(l.startswith("PASS") for l in lines)


class TestUsage:
    def test_no_command_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == EXIT_USAGE

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "tet10mass" in capsys.readouterr().out
