"""Command-line surface: outputs, exit codes, and determinism."""

import json

import pytest

import prefixcircuits as pc
from prefixcircuits.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestGenerate:
    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "generate", "kronecker", "-n", "27", "-s", "3",
                           "--format", "dot", "--validate")
        assert code == 0
        assert out.count("shape=circle") == pc.kronecker_circuit(27, 3).size

    def test_serial_1_has_no_gates(self, capsys):
        code, out, _ = run(capsys, "generate", "serial", "-n", "1")
        assert code == 0
        assert json.loads(out)["gates"] == []

    def test_bad_block_size_is_usage_error(self, capsys):
        code, _, err = run(capsys, "generate", "kronecker", "-n", "8", "-s", "1")
        assert code == 2
        assert "error" in err

    def test_unknown_generator_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "mystery", "-n", "4"])
        assert exc.value.code == 2

    def test_json_round_trips(self, capsys, tmp_path):
        path = tmp_path / "c.json"
        code, _, _ = run(capsys, "generate", "brent-kung", "-n", "12",
                         "-o", str(path))
        assert code == 0
        assert pc.import_json(path.read_text()) == pc.brent_kung(12)


class TestTable:
    def test_golden_rows_n8(self, capsys):
        code, out, _ = run(capsys, "table", "--n-list", "8", "--csv")
        assert code == 0
        rows = {r.split(",")[0]: r.split(",") for r in out.strip().splitlines()[1:]}
        assert rows["sklansky"][2:4] == ["12", "3"]
        assert rows["kogge-stone"][2:4] == ["17", "3"]
        assert rows["brent-kung"][2:4] == ["11", "5"]

    def test_check_formulas_powers_of_two(self, capsys):
        code, out, _ = run(capsys, "table", "--n-list", "2:512:*2",
                           "--check-formulas")
        assert code == 0
        assert "all formula checks passed" in out
        assert "MISMATCH" not in out

    def test_n2_all_generators_one_gate(self, capsys):
        code, out, _ = run(capsys, "table", "--n-list", "2", "--csv")
        assert code == 0
        for row in out.strip().splitlines()[1:]:
            cells = row.split(",")
            assert cells[2] == "1" and cells[3] == "1", row

    def test_parallel_merge_deterministic(self, capsys):
        _, seq, _ = run(capsys, "table", "--n-list", "2:64:*2", "--csv")
        _, par, _ = run(capsys, "table", "--n-list", "2:64:*2", "--csv",
                        "--jobs", "2")
        assert seq == par


class TestMindepth:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "mindepth", "--max-n", "6")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,min_depth,best_s"
        assert lines[2] == "2,1,2"


class TestAdder:
    def test_resources_bounds_shown(self, capsys):
        code, out, _ = run(capsys, "adder", "resources", "-n", "8", "-s", "2")
        assert code == 0
        assert "measured=" in out and "bound" in out

    def test_resources_json(self, capsys):
        code, out, _ = run(capsys, "adder", "resources", "-n", "8", "-s", "2",
                           "--json")
        assert code == 0
        rep = json.loads(out)
        assert rep["toffoli_depth"] <= 8  # 2*ceil(log2 8) + 2

    def test_verify_exhaustive_pass(self, capsys):
        code, out, _ = run(capsys, "adder", "verify", "-n", "4", "-s", "2",
                           "--exhaustive")
        assert code == 0 and "PASS" in out

    def test_verify_exhaustive_cap(self, capsys):
        code, _, err = run(capsys, "adder", "verify", "-n", "11", "-s", "2",
                           "--exhaustive")
        assert code == 2

    def test_zero_n_usage_error(self, capsys):
        code, _, _ = run(capsys, "adder", "verify", "-n", "0", "-s", "2")
        assert code == 2

    def test_build_netlist(self, capsys):
        code, out, _ = run(capsys, "adder", "build", "-n", "2", "-s", "2")
        assert code == 0
        assert out.splitlines()[1] == "T 0 2 4"


class TestCheckKron:
    def test_grid_passes(self, capsys):
        code, out, _ = run(capsys, "check-kron", "--max-dim", "6")
        assert code == 0 and "PASS" in out

    def test_trivial_grid(self, capsys):
        code, out, _ = run(capsys, "check-kron", "--max-dim", "1")
        assert code == 0 and "trivially" in out


class TestRatio:
    def test_report(self, capsys):
        code, out, _ = run(capsys, "ratio", "--n-list", "9,27,81", "-s", "3")
        assert code == 0
        assert out.splitlines()[0] == "n,recursion_depth,depth/log2(n),built_depth"
        assert len(out.strip().splitlines()) == 4
