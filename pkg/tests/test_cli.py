import json

import pytest

from bsdecomp import (
    BettiTable,
    Window,
    decomposition_from_json,
    enumerate_maximal_chains,
    greedy_decompose,
    table_from_json,
    to_btt_text,
    verify,
)
from bsdecomp.cli import main
from reference_values import EDGE_GENERATORS, NUM_VARS, SMALL_TABLES

PATH_IDEAL = {"variables": NUM_VARS, "generators": list(EDGE_GENERATORS)}
MAXIMAL_2VARS = {"variables": 2, "generators": [[1, 0], [0, 1]]}


@pytest.fixture
def ideal_file(tmp_path):
    def write(obj, name="ideal.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def table_file(tmp_path):
    def write(entries, name="table.btt"):
        path = tmp_path / name
        path.write_text(to_btt_text(BettiTable.from_entries(entries)), encoding="utf-8")
        return str(path)

    return write


class TestBetti:
    def test_pretty_output(self, ideal_file, capsys):
        assert main(["betti", "--ideal", ideal_file(PATH_IDEAL)]) == 0
        out = capsys.readouterr().out
        assert "2: 4 3 -" in out
        assert "3: - 1 1" in out

    def test_btt_single_variable_power(self, ideal_file, capsys):
        path = ideal_file({"variables": 1, "generators": [[1]]})
        assert main(["betti", "--ideal", path, "-k", "7", "--format", "btt"]) == 0
        assert capsys.readouterr().out == "7 7 0\n1\n"

    def test_json_output_round_trips(self, ideal_file, capsys):
        assert main(["betti", "--ideal", ideal_file(PATH_IDEAL), "--format", "json"]) == 0
        table = table_from_json(json.loads(capsys.readouterr().out))
        assert table == BettiTable.from_entries(SMALL_TABLES[1])

    def test_out_file(self, ideal_file, tmp_path, capsys):
        out = tmp_path / "t.btt"
        assert main(["betti", "--ideal", ideal_file(PATH_IDEAL), "--format", "btt", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        assert out.read_text(encoding="utf-8").splitlines()[0] == "2 3 2"

    def test_power_must_be_positive(self, ideal_file, capsys):
        path = ideal_file(PATH_IDEAL)
        assert main(["betti", "--ideal", path, "-k", "0"]) == 2
        assert main(["betti", "--ideal", path, "-k", "-3"]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["betti", "--ideal", str(tmp_path / "nope.json")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        assert main(["betti", "--ideal", str(path)]) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_zero_ideal_is_domain_error(self, ideal_file, capsys):
        assert main(["betti", "--ideal", ideal_file({"variables": 2, "generators": []})]) == 3
        assert "zero ideal" in capsys.readouterr().err

    def test_thread_env_does_not_change_output(self, ideal_file, capsys, monkeypatch):
        path = ideal_file(PATH_IDEAL)
        assert main(["betti", "--ideal", path, "-k", "2", "--format", "btt"]) == 0
        serial = capsys.readouterr().out
        monkeypatch.setenv("BSDECOMP_THREADS", "3")
        assert main(["betti", "--ideal", path, "-k", "2", "--format", "btt"]) == 0
        assert capsys.readouterr().out == serial


class TestDecompose:
    def test_greedy(self, table_file, capsys):
        path = table_file(SMALL_TABLES[1])
        assert main(["decompose", "--table", path]) == 0
        decomposition = decomposition_from_json(json.loads(capsys.readouterr().out))
        assert decomposition == greedy_decompose(BettiTable.from_entries(SMALL_TABLES[1]))

    def test_chain(self, table_file, tmp_path, capsys):
        table = BettiTable.from_entries(SMALL_TABLES[1])
        chain = next(enumerate_maximal_chains(table.window))
        chain_path = tmp_path / "chain.json"
        chain_path.write_text(json.dumps([list(s.degrees) for s in chain.elements]), encoding="utf-8")
        assert main(["decompose", "--table", table_file(SMALL_TABLES[1]), "--chain", str(chain_path)]) == 0
        decomposition = decomposition_from_json(json.loads(capsys.readouterr().out))
        assert len(decomposition.terms) == table.window.dimension
        assert verify(decomposition, table)

    def test_malformed_chain(self, table_file, tmp_path, capsys):
        chain_path = tmp_path / "chain.json"
        chain_path.write_text(json.dumps({"not": "a list"}), encoding="utf-8")
        assert main(["decompose", "--table", table_file(SMALL_TABLES[1]), "--chain", str(chain_path)]) == 2
        assert "must be a list" in capsys.readouterr().err

    def test_non_maximal_chain(self, table_file, tmp_path, capsys):
        chain_path = tmp_path / "chain.json"
        chain_path.write_text(json.dumps([[2, 3], [3]]), encoding="utf-8")
        assert main(["decompose", "--table", table_file(SMALL_TABLES[1]), "--chain", str(chain_path)]) == 2
        assert "not maximal" in capsys.readouterr().err

    def test_chain_window_must_contain_table(self, table_file, tmp_path, capsys):
        chain = next(enumerate_maximal_chains(Window(0, 1, 1)))
        chain_path = tmp_path / "chain.json"
        chain_path.write_text(json.dumps([list(s.degrees) for s in chain.elements]), encoding="utf-8")
        assert main(["decompose", "--table", table_file(SMALL_TABLES[1]), "--chain", str(chain_path)]) == 2

    def test_negative_table_is_domain_error(self, table_file, capsys):
        path = table_file({(0, 0): 1, (1, 1): -2})
        assert main(["decompose", "--table", path]) == 3
        assert "negative" in capsys.readouterr().err

    def test_bad_btt_names_file(self, tmp_path, capsys):
        path = tmp_path / "bad.btt"
        path.write_text("0 0\n", encoding="utf-8")
        assert main(["decompose", "--table", str(path)]) == 2
        assert "bad.btt" in capsys.readouterr().err


class TestChains:
    def test_streams_one_chain_per_line(self, capsys):
        assert main(["chains", "0", "1", "1"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == [
            "[[0,1],[0,2],[1,2],[1]]",
            "[[0,1],[0,2],[0],[1]]",
        ]

    def test_count_only(self, capsys):
        assert main(["chains", "0", "1", "3", "--count-only"]) == 0
        assert capsys.readouterr().out == "14\n"

    def test_count_single_row_window(self, capsys):
        assert main(["chains", "0", "0", "3", "--count-only"]) == 0
        assert capsys.readouterr().out == "1\n"

    def test_bad_window(self, capsys):
        assert main(["chains", "3", "1", "2"]) == 2
        assert main(["chains", "0", "1", "-2"]) == 2


class TestStabilize:
    def test_small_family_stdout(self, ideal_file, capsys):
        assert main(["stabilize", "--ideal", ideal_file(MAXIMAL_2VARS), "--kmin", "1", "--kmax", "4"]) == 0
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert report["r"] == 1
        assert report["k0_observed"] == 1
        assert report["certified_from"] == 1
        assert report["verified_k"] == [1, 2, 3, 4]
        assert "positive decomposition: 2 summands" in captured.err

    def test_out_file_swaps_streams(self, ideal_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        rc = main(
            ["stabilize", "--ideal", ideal_file(MAXIMAL_2VARS), "--kmin", "1", "--kmax", "4", "--out", str(out)]
        )
        assert rc == 0
        captured = capsys.readouterr()
        assert "positive decomposition" in captured.out
        assert json.loads(out.read_text(encoding="utf-8"))["verified_k"] == [1, 2, 3, 4]

    def test_degree_bound_flag(self, ideal_file, capsys):
        rc = main(
            ["stabilize", "--ideal", ideal_file(MAXIMAL_2VARS), "--kmin", "1", "--kmax", "4", "--degree-bound", "2"]
        )
        assert rc == 0
        assert json.loads(capsys.readouterr().out)["fit"]["(0,0)"]["text"] == "1 + k"

    def test_non_equigenerated(self, ideal_file, capsys):
        path = ideal_file({"variables": 2, "generators": [[2, 0], [0, 3]]})
        assert main(["stabilize", "--ideal", path, "--kmin", "1", "--kmax", "4"]) == 3
        assert "equigenerated" in capsys.readouterr().err

    def test_short_range_is_not_stabilized(self, ideal_file, capsys):
        assert main(["stabilize", "--ideal", ideal_file(PATH_IDEAL), "--kmin", "1", "--kmax", "4"]) == 4
        assert "not stabilized" in capsys.readouterr().err

    def test_empty_range(self, ideal_file, capsys):
        assert main(["stabilize", "--ideal", ideal_file(PATH_IDEAL), "--kmin", "3", "--kmax", "2"]) == 2

    def test_bad_kmin(self, ideal_file):
        assert main(["stabilize", "--ideal", ideal_file(PATH_IDEAL), "--kmin", "0", "--kmax", "4"]) == 2


class TestVerify:
    @pytest.fixture
    def decomposition_file(self, tmp_path, table_file):
        from bsdecomp import decomposition_to_json

        table = BettiTable.from_entries(SMALL_TABLES[2])
        path = tmp_path / "decomposition.json"
        path.write_text(
            json.dumps(decomposition_to_json(greedy_decompose(table))), encoding="utf-8"
        )
        return str(path)

    def test_ok(self, table_file, decomposition_file, capsys):
        assert main(["verify", "--table", table_file(SMALL_TABLES[2]), "--decomposition", decomposition_file]) == 0
        assert capsys.readouterr().out.startswith("ok:")

    def test_mismatch(self, table_file, decomposition_file, capsys):
        perturbed = dict(SMALL_TABLES[2])
        perturbed[(1, 5)] += 1
        assert main(["verify", "--table", table_file(perturbed), "--decomposition", decomposition_file]) == 5
        out = capsys.readouterr().out
        assert "mismatch at column 1, degree 5" in out

    def test_malformed_decomposition(self, table_file, tmp_path, capsys):
        path = tmp_path / "d.json"
        path.write_text("[]", encoding="utf-8")
        assert main(["verify", "--table", table_file(SMALL_TABLES[2]), "--decomposition", str(path)]) == 2


class TestParser:
    def test_no_arguments(self, capsys):
        assert main([]) == 2

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "betti" in capsys.readouterr().out
