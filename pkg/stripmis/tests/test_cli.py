import json

import pytest

from stripmis.cli import main
from stripmis.esd import write_esd
from stripmis.graph import read_graph, write_graph
from stripmis.testkit import canonical_path_esd, named_graph
from stripmis.utils import compute_digest, file_digest


def run(*argv):
    lines = []
    status = main(["--no-timing", *argv], out=lines.append)
    assert len(lines) == 1
    return status, lines[0]


def run_json(*argv):
    status, text = run("--json", *argv)
    data = json.loads(text)
    assert data["status"] == status
    return status, data


@pytest.fixture
def path5(tmp_path):
    path = tmp_path / "p5.txt"
    write_graph(named_graph("path", 5), path)
    return path


@pytest.fixture
def p4_files(tmp_path):
    esd = canonical_path_esd()
    graph_path, esd_path = tmp_path / "p4.txt", tmp_path / "p4.json"
    write_graph(esd.host, graph_path)
    write_esd(esd, esd_path)
    return graph_path, esd_path


def test_solve_text(path5):
    status, text = run("solve", str(path5))
    assert status == 0
    assert text.startswith("solve: ok")
    assert "weight: 3" in text
    assert "vertices: [0, 2, 4]" in text


def test_solve_json(path5):
    status, data = run_json("solve", str(path5), "--c", "1/2")
    assert status == 0
    assert data["result"]["weight"] == 3
    assert data["result"]["vertices"] == [0, 2, 4]
    assert data["result"]["config"]["c"] == "1/2"
    assert data["result"]["config"]["delta"] == 2
    assert data["arguments"]["c"] == "1/2"
    assert data["inputs"]["graph"] == compute_digest(path5.read_text())
    assert "timing" not in data
    assert "trace" not in data


def test_solve_with_trace(path5):
    _, data = run_json("solve", str(path5), "--trace")
    assert data["trace"]["size"] == 5
    _, text = run("solve", str(path5), "--trace")
    assert "\ntrace:\n" in text


def test_solve_reports_claw_freeness(path5):
    _, data = run_json("solve", str(path5), "--check-free")
    assert data["result"]["sttt_free"] is True


def test_timing_is_reported_by_default(path5):
    lines = []
    main(["--json", "solve", str(path5)], out=lines.append)
    assert json.loads(lines[0])["timing"]["solve"] >= 0


@pytest.mark.parametrize("text", ["p 2 1\nv 0 x\n", "e 0 1\n", "p 2\n"])
def test_unparsable_graph(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    status, data = run_json("solve", str(path))
    assert status == 2
    assert str(path) in data["result"]["error"]


def test_missing_graph(tmp_path):
    status, _ = run("oracle", str(tmp_path / "nowhere.txt"))
    assert status == 2


@pytest.mark.parametrize(
    "flags",
    [["--delta", "1"], ["--provider", "nope"], ["--provider", "exhaustive:bogus=1"], ["--provider", "a:b"]],
)
def test_configuration_errors(path5, flags):
    status, data = run_json("solve", str(path5), *flags)
    assert status == 4
    assert data["result"]["error"]


def test_bad_balance_parameter_is_a_usage_error(path5):
    with pytest.raises(SystemExit):
        main(["solve", str(path5), "--c", "half"], out=lambda _: None)


def test_solve_with_decomposition_file(p4_files):
    graph_path, esd_path = p4_files
    status, data = run_json("solve", str(graph_path), "--esd", str(esd_path), "--d-max", "0", "--base-case-n", "2")
    assert status == 0
    assert data["result"]["weight"] == 2
    assert data["result"]["fallbacks"] == 0
    assert data["inputs"]["esd"] == file_digest(esd_path)
    assert data["result"]["config"]["providers"][0] == f"file:path={esd_path}"


def test_solve_rejects_a_decomposition_of_another_graph(p4_files, tmp_path):
    _, esd_path = p4_files
    other = tmp_path / "p3.txt"
    write_graph(named_graph("path", 3), other)
    status, _ = run("solve", str(other), "--esd", str(esd_path))
    assert status == 3


def test_solve_rejects_an_unreadable_decomposition(path5, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    status, _ = run("solve", str(path5), "--esd", str(broken))
    assert status == 3


def test_validate_esd(p4_files):
    graph_path, esd_path = p4_files
    status, data = run_json("validate-esd", str(graph_path), str(esd_path))
    assert status == 0
    assert data["result"] == {"valid": True, "deleted": [], "violations": []}
    assert set(data["inputs"]) == {"graph", "esd"}


def test_validate_esd_tameness(p4_files):
    graph_path, esd_path = p4_files
    _, data = run_json("validate-esd", str(graph_path), str(esd_path), "--tame", "semi-tame")
    assert data["result"]["semi-tame"] is False
    rules = {v["rule"] for v in data["result"]["tameness_violations"]}
    assert {"degree-two", "frame"} <= rules
    _, data = run_json("validate-esd", str(graph_path), str(esd_path), "--tame", "tame", "--budget", "0")
    assert data["result"]["tame"] == "indeterminate"


def test_validate_esd_reports_violations(p4_files, tmp_path):
    _, esd_path = p4_files
    c4 = tmp_path / "c4.txt"
    write_graph(named_graph("cycle", 4), c4)
    status, data = run_json("validate-esd", str(c4), str(esd_path))
    assert status == 1
    assert data["result"]["valid"] is False
    assert data["result"]["violations"]


def test_validate_esd_malformed(p4_files, tmp_path):
    graph_path, _ = p4_files
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"pattern": "nope"}))
    status, text = run("validate-esd", str(graph_path), str(broken))
    assert status == 3
    assert text.startswith("validate-esd: invalid decomposition file")


def test_detect(tmp_path):
    star = tmp_path / "star.txt"
    write_graph(named_graph("star", 3), star)
    status, data = run_json("detect", str(star), "1", "1", "1")
    assert status == 0
    assert data["result"]["root"] == 0
    assert sorted(leaf for leg in data["result"]["legs"] for leaf in leg) == [1, 2, 3]

    path6 = tmp_path / "p6.txt"
    write_graph(named_graph("path", 6), path6)
    status, data = run_json("detect", str(path6), "1", "1", "1")
    assert status == 1
    assert data["result"] == {"found": False}

    status, _ = run("detect", str(path6), "1", "0", "1")
    assert status == 4


def test_oracle(tmp_path):
    path = tmp_path / "petersen.txt"
    write_graph(named_graph("petersen"), path)
    status, data = run_json("oracle", str(path))
    assert status == 0
    assert data["result"]["weight"] == 4
    status, _ = run("oracle", str(path), "--cap", "5")
    assert status == 4


def test_gen_random_to_file(tmp_path):
    out = tmp_path / "g.txt"
    status, data = run_json("gen", "random", "--n", "12", "--delta", "3", "--weights", "1", "9", "--seed", "4", "--out", str(out))
    assert status == 0
    graph = read_graph(out)
    assert graph.n == data["result"]["n"] == 12
    assert graph.max_degree <= 3
    assert all(1 <= w <= 9 for w in graph.weights)
    assert data["result"]["digest"] == file_digest(out)
    _, again = run_json("gen", "random", "--n", "12", "--delta", "3", "--weights", "1", "9", "--seed", "4")
    assert again["result"]["graph"] == out.read_text()


def test_gen_named_and_claw():
    _, data = run_json("gen", "named", "--name", "cycle", "--size", "5")
    assert data["result"]["graph"].startswith("p 5 5\n")
    _, data = run_json("gen", "claw", "--legs", "1", "2", "3")
    assert (data["result"]["n"], data["result"]["m"]) == (7, 6)
    status, _ = run("gen", "named", "--name", "nope")
    assert status == 4


def test_gen_from_a_base_graph(tmp_path):
    base = tmp_path / "k3.txt"
    write_graph(named_graph("complete", 3), base)
    _, data = run_json("gen", "poljak", "--base", str(base), "-p", "1")
    assert data["result"]["n"] == 9
    assert "base" in data["inputs"]
    _, data = run_json("gen", "line", "--base", str(base))
    assert (data["result"]["n"], data["result"]["m"]) == (3, 3)
    with pytest.raises(SystemExit):
        main(["gen", "poljak"], out=lambda _: None)


def test_bench():
    status, data = run_json("bench", "--max-p", "2")
    assert status == 0
    table = data["result"]["table"]
    assert [row["n"] for row in table] == [9, 15]
    assert all(row["weight"] == row["expected"] for row in table)
    assert isinstance(data["result"]["exponent"], float)

