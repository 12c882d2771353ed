import json

from permind.cli import main


def run_cli(*args):
    return main(list(args))


class TestSearchOptimal:
    def test_n2_value(self, capsys):
        assert run_cli("search-optimal", "--n", "2", "--locality", "ell:2") == 0
        assert "optimal_guesses: 2" in capsys.readouterr().out

    def test_capacity_error(self, capsys):
        assert run_cli("search-optimal", "--n", "6", "--locality", "ell:2") == 2
        assert "error" in capsys.readouterr().err

    def test_tree_output(self, tmp_path, capsys):
        out = tmp_path / "tree.json"
        assert run_cli("search-optimal", "--n", "3", "--tree-out", str(out)) == 0
        tree = json.loads(out.read_text())
        assert tree["guess"] == [1, 2, 3]
        assert "children" in tree


class TestReduceAndSolve:
    def test_pm_sat_pipeline(self, tmp_path, capsys):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p mcnf 3 1\n1 2 3\n")
        out = tmp_path / "inst.json"
        assert run_cli("reduce", "--cnf", str(cnf), "--target", "pm-sat", "--out", str(out)) == 0
        text = capsys.readouterr().out
        assert "guesses: 20" in text
        assert run_cli("solve-sat", "--instance", str(out), "--mode", "brute") == 0
        assert "SAT" in capsys.readouterr().out

    def test_3local_pipeline_certifies_locality(self, tmp_path, capsys):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p mcnf 3 1\n1 2 3\n")
        out = tmp_path / "inst.json"
        assert run_cli("reduce", "--cnf", str(cnf), "--target", "3local", "--out", str(out)) == 0
        assert "certified" in capsys.readouterr().out
        assert run_cli("solve-sat", "--instance", str(out), "--mode", "brute") == 0

    def test_unsat_exit_code(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"n": 3, "guesses": [[1, 2, 3], [1, 2, 3]], "scores": [3, 0]}))
        assert run_cli("solve-sat", "--instance", str(inst), "--mode", "brute") == 1
        assert "UNSAT" in capsys.readouterr().out

    def test_parity_mode_needs_2local(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"n": 4, "guesses": [[1, 2, 3, 4], [2, 3, 1, 4]], "scores": [0, 0]}))
        assert run_cli("solve-sat", "--instance", str(inst), "--mode", "parity") == 2
        assert "parity mode requires" in capsys.readouterr().err

    def test_parity_mode_solves_2local(self, tmp_path, capsys):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({"n": 4, "guesses": [[1, 2, 3, 4], [2, 1, 3, 4]], "scores": [0, 2]}))
        assert run_cli("solve-sat", "--instance", str(inst), "--mode", "parity") == 0
        out = capsys.readouterr().out
        assert "SAT" in out

    def test_malformed_cnf(self, tmp_path, capsys):
        cnf = tmp_path / "bad.cnf"
        cnf.write_text("p wrong 1 2\n")
        out = tmp_path / "inst.json"
        assert run_cli("reduce", "--cnf", str(cnf), "--target", "pm-sat", "--out", str(out)) == 2
        assert "parse error" in capsys.readouterr().err


class TestAnalyze:
    def test_single_identity_guess(self, tmp_path, capsys):
        doc = tmp_path / "guesses.json"
        doc.write_text(json.dumps({"n": 4, "guesses": [[1, 2, 3, 4]]}))
        assert run_cli("--format", "json", "analyze", "--guesses", str(doc)) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["sufficient"] is False
        assert report["k22"] != "none"
        assert report["untested_edges"] == 12

    def test_full_s3_sufficient(self, tmp_path, capsys):
        import itertools

        doc = tmp_path / "guesses.json"
        guesses = [list(p) for p in itertools.permutations((1, 2, 3))]
        doc.write_text(json.dumps({"n": 3, "guesses": guesses}))
        assert run_cli("--format", "json", "analyze", "--guesses", str(doc)) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["sufficient"] is True
        assert report["k22"] == "none"

    def test_graph_mode(self, tmp_path, capsys):
        g = tmp_path / "g.txt"
        g.write_text("2\n1 1\n1 2\n2 1\n2 2\n")
        assert run_cli("--format", "json", "analyze", "--graph", str(g)) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["k22"] == {"positions": [1, 2], "symbols": [1, 2]}

    def test_export_graph(self, tmp_path, capsys):
        doc = tmp_path / "guesses.json"
        doc.write_text(json.dumps({"n": 3, "guesses": [[1, 2, 3]]}))
        out = tmp_path / "untested.txt"
        assert run_cli("analyze", "--guesses", str(doc), "--export-graph", str(out)) == 0
        assert out.read_text().startswith("3\n")


class TestSimulate:
    def test_conveyor_all_secrets(self, capsys):
        assert (
            run_cli(
                "simulate",
                "--strategy",
                "conveyor-hexagon",
                "--n",
                "4",
                "--locality",
                "window:2",
                "--trials",
                "all",
            )
            == 0
        )
        out = capsys.readouterr().out
        assert "worst" in out

    def test_localized_compatible(self, capsys):
        assert (
            run_cli(
                "simulate",
                "--strategy",
                "localized-compatible",
                "--n",
                "4",
                "--locality",
                "ell:2",
                "--trials",
                "all",
            )
            == 0
        )
        out = capsys.readouterr().out
        assert "bound_adaptive_ell_lower" in out

    def test_unknown_strategy(self, capsys):
        assert run_cli("simulate", "--strategy", "nope", "--n", "3", "--trials", "2") == 2
        assert "unknown strategy" in capsys.readouterr().err
