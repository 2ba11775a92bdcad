import json

import pytest

import flowalg.cli as cli
from flowalg.cli import main, parse_graph
from flowalg.errors import InputError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_parse_graph_basic(tmp_path):
    path = tmp_path / "g.g"
    path.write_text("vertex 1\nvertex 2\nedge 1 1 2\n")
    g = parse_graph(str(path))
    assert g.num_vertices == 2
    assert g.edges == ((1, 1, 2),)


def test_parse_graph_loop(tmp_path):
    path = tmp_path / "g.g"
    path.write_text("vertex 1\nedge 1 1 1\n")
    assert parse_graph(str(path)).is_loop(1)


def test_parse_graph_duplicate_edge_id(tmp_path):
    path = tmp_path / "g.g"
    path.write_text("vertex 1\nvertex 2\nedge 1 1 2\nedge 1 2 1\n")
    with pytest.raises(InputError, match="4"):
        parse_graph(str(path))


def test_parse_graph_unknown_vertex(tmp_path):
    path = tmp_path / "g.g"
    path.write_text("vertex 1\nedge 1 1 5\n")
    with pytest.raises(InputError, match="2"):
        parse_graph(str(path))


def test_parse_graph_malformed_line(tmp_path):
    path = tmp_path / "g.g"
    path.write_text("vertex 1\nwhat 3 4\n")
    with pytest.raises(InputError, match="2"):
        parse_graph(str(path))


def test_poincare_k4(capsys, graph_dir):
    code, doc = run_cli(capsys, "poincare", str(graph_dir / "k4.g"))
    assert code == 0
    assert doc["results"]["poincare"] == [1, 3, 6, 10, 11, 6, 1]


def test_ranks_forest_all_oracles(capsys, graph_dir):
    code, doc = run_cli(capsys, "ranks", str(graph_dir / "path3.g"),
                        "--oracle", "all")
    assert code == 0
    assert doc["results"]["tutte"] == [1]
    assert doc["results"]["relations"] == [1]
    assert doc["results"]["monomials"] == [1]
    assert doc["checks"][0]["status"] == "pass"


def test_ranks_disagreement_exits_one(capsys, graph_dir, monkeypatch):
    monkeypatch.setattr(cli, "rank_sequence", lambda g: (1, 9, 9, 9))
    code, doc = run_cli(capsys, "ranks", str(graph_dir / "c3.g"),
                        "--oracle", "all")
    assert code == 1
    assert doc["checks"][0]["status"] == "fail"


def test_theta_both_methods(capsys, graph_dir):
    code, doc = run_cli(capsys, "theta", str(graph_dir / "c3.g"),
                        "--max-norm", "12", "--method", "both")
    assert code == 0
    assert doc["results"]["product"] == [["0", 1], ["3", 2], ["12", 2]]
    assert doc["results"]["product"] == doc["results"]["enumerate"]
    assert doc["checks"][0]["status"] == "pass"


def test_char_flow(capsys, graph_dir):
    code, doc = run_cli(capsys, "char-flow", str(graph_dir / "k4.g"),
                        "--edge", "1")
    assert code == 0
    assert doc["results"]["norm"] == "2"
    assert doc["checks"][0]["status"] == "pass"


def test_flows_of_norm(capsys, graph_dir):
    code, doc = run_cli(capsys, "flows-of-norm", str(graph_dir / "fig1_left.g"),
                        "--norm", "7")
    assert code == 0
    assert doc["results"]["count"] == 20


def test_compare_figure_pair(capsys, graph_dir):
    code, doc = run_cli(capsys, "compare", str(graph_dir / "fig1_left.g"),
                        str(graph_dir / "fig1_right.g"), "--max-norm", "12")
    assert code == 0
    assert doc["results"]["tutte-equal"] is True
    assert doc["results"]["theta-first-difference"] is not None


def test_torsion_command(capsys, graph_dir):
    code, doc = run_cli(capsys, "torsion", str(graph_dir / "c4.g"),
                        "--degrees", "1,2")
    assert code == 0
    assert doc["results"]["invariant-factors"] == [3]
    assert doc["results"]["group"] == "Z/3"


def test_verify_command(capsys, graph_dir):
    code, doc = run_cli(capsys, "verify", str(graph_dir / "c3.g"),
                        "--trials", "3")
    assert code == 0
    statuses = {c["check"]: c["status"] for c in doc["checks"]}
    assert statuses["oracle-tutte-vs-relations"] == "pass"
    assert statuses["orientation-invariance"] == "pass"


def test_corpus_command_small(capsys):
    code, doc = run_cli(capsys, "corpus", "--max-edges", "3")
    assert code == 0
    assert doc["results"]["graphs"] == 18
    assert doc["results"]["failures"] == []


def test_input_error_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.g"
    path.write_text("nonsense\n")
    code = main(["poincare", str(path)])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["kind"] == "input"


def test_capacity_exit_code(capsys, tmp_path):
    path = tmp_path / "big.g"
    lines = ["vertex 1", "vertex 2"]
    lines += [f"edge {i} 1 2" for i in range(1, 23)]
    path.write_text("\n".join(lines) + "\n")
    code = main(["ranks", str(path), "--oracle", "relations"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 3
    assert doc["kind"] == "capacity"


def test_report_determinism(capsys, graph_dir):
    _, doc1 = run_cli(capsys, "lattice", str(graph_dir / "k4.g"))
    _, doc2 = run_cli(capsys, "lattice", str(graph_dir / "k4.g"))
    doc1.pop("elapsed_ms")
    doc2.pop("elapsed_ms")
    assert json.dumps(doc1, sort_keys=False) == json.dumps(doc2, sort_keys=False)
