import csv
import json

import pytest

from brauer_cli.errors import FileOperationError, ParseError, ValidationError
from brauer_cli.file_handler import FileHandler, to_dot
from brauer_cli.fixtures import FixtureCatalog
from brauer_cli.invariants import signature
from brauer_cli.parser import ComplexDocument, DocumentKind, DocumentParser, serialize
from brauer_cli.ribbon_core import canonical_form, random_complex
from main import main


def fixture(name):
    return str(FixtureCatalog.path(name))


def run(capsys, *argv):
    code = main(["--plain", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "invariants", fixture("e2"))
    assert code == 0
    data = json.loads(out)
    assert data["perimeters"] == [6]
    assert data["bipartite"] is True
    assert data["center_dim"] == 4


def test_transform_single_edge_fails(capsys):
    code, out, err = run(capsys, "transform", fixture("e1"), "--edge", "0")
    assert code == 2
    assert out == ""
    assert "single-edge-complex" in err


def test_transform_unknown_edge(capsys):
    code, _, err = run(capsys, "transform", fixture("e2"), "--edge", "1")
    assert code == 2
    assert "unknown-edge" in err


def test_transform_prints_the_moved_complex(capsys, load):
    code, out, _ = run(capsys, "transform", fixture("e5"), "--edge", "0")
    assert code == 0
    moved = DocumentParser.parse(out)
    assert signature(moved) == signature(load("e5"))
    assert canonical_form(moved).digest != canonical_form(load("e5")).digest


def test_transform_writes_out_file(capsys, tmp_path, load):
    target = tmp_path / "moved.json"
    code, out, _ = run(capsys, "transform", fixture("e5"), "--edge", "0", "--out", str(target))
    assert code == 0
    assert json.loads(out)["type"] == 1
    moved = DocumentParser.parse(target.read_text(encoding="utf-8"))
    assert sorted(moved.complex.degree(v) for v in moved.vertices()) == [1, 1, 2, 2]


def test_transform_reports_write_failures(capsys, tmp_path):
    target = tmp_path / "missing" / "moved.json"
    code, _, err = run(capsys, "transform", fixture("e5"), "--edge", "0", "--out", str(target))
    assert code == 1
    assert "Cannot write file" in err
    diagnostic = next(json.loads(line) for line in err.splitlines() if line.startswith("{"))
    assert diagnostic["error"] == "file-error"
    assert any("No such file or directory" in detail for detail in diagnostic["details"])


def test_write_errors_carry_the_operation(tmp_path, config):
    handler = FileHandler(config)
    with pytest.raises(FileOperationError) as info:
        handler.write_csv(str(tmp_path / "missing" / "rows.csv"), [], ["a"])
    assert info.value.operation == "write"
    with pytest.raises(FileOperationError) as info:
        handler.read_text(str(tmp_path / "absent.json"))
    assert info.value.operation == "read"


def test_tilting_command(capsys):
    code, out, _ = run(capsys, "tilting", fixture("e2"), "--edge", "0")
    assert code == 0
    data = json.loads(out)
    assert data["hom_nonzero"] == []
    assert data["endomorphism"]["ok"] is True
    assert data["type"] == 3


def test_equiv_stars(capsys):
    code, out, _ = run(capsys, "equiv", fixture("star_a"), fixture("star_b"), "--witness")
    assert code == 0
    data = json.loads(out)
    assert data["equivalent"] is True
    witness = data["witness"]
    assert witness["first"]["steps"] or witness["second"]["steps"]


def test_equiv_reports_the_separating_invariant(capsys):
    code, out, _ = run(capsys, "equiv", fixture("e5"), fixture("star_a"))
    assert code == 0
    assert json.loads(out) == {"distinguished_by": ["mults"], "equivalent": False}


def test_equiv_needs_genus0(capsys):
    code, out, err = run(capsys, "equiv", fixture("e2"), fixture("e3"))
    assert code == 3
    assert out == ""
    assert "nonzero-genus" in err


def test_bad_json_and_missing_file(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    code, _, err = run(capsys, "invariants", str(broken))
    assert code == 1
    assert "bad-json" in err
    code, _, err = run(capsys, "invariants", str(tmp_path / "missing.json"))
    assert code == 1
    assert "file-error" in err


def test_invalid_document_exits_1(capsys, tmp_path):
    doc = tmp_path / "bad.json"
    doc.write_text(json.dumps({"darts": 4, "alpha": [[0, 1], [2, 3]], "sigma": [[0, 1], [2, 3]]}), encoding="utf-8")
    code, _, err = run(capsys, "invariants", str(doc))
    assert code == 1
    assert "disconnected" in err


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", fixture("e5"))
    assert code == 0
    data = json.loads(out)
    assert data["size"] == 2 and data["symmetric"] is True
    code, out, _ = run(capsys, "orbit", fixture("e5"), "--budget", "1")
    assert json.loads(out)["budget_exhausted"] is True
    code, _, err = run(capsys, "orbit", fixture("e5"), "--budget", "0")
    assert code == 1
    assert "bad-option" in err


def test_census_command_writes_csv(capsys, tmp_path):
    table = tmp_path / "census.csv"
    code, out, _ = run(capsys, "census", "--edges", "2", "--csv", str(table))
    assert code == 0
    rows = json.loads(out)
    with open(table, newline="", encoding="utf-8") as f:
        written = list(csv.DictReader(f))
    assert len(written) == len(rows)
    assert sum(int(r["classes"]) for r in written) == 7


def test_census_size_limit(capsys):
    code, _, err = run(capsys, "census", "--edges", "9")
    assert code == 4
    assert "size-limit" in err


def test_center_command(capsys):
    code, out, _ = run(capsys, "center", fixture("e2"))
    assert code == 0
    data = json.loads(out)
    assert data["agree"] is True
    assert data["oracle_dim"] == 4
    assert data["algebra_dim"] == 18


def test_quiver_command(capsys):
    code, out, _ = run(capsys, "quiver", fixture("e2"))
    assert code == 0
    data = json.loads(out)
    assert len(data["arrows"]) == 6
    assert len(data["vertices"]) == 3


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", fixture("e5"))
    assert code == 0
    assert out.startswith("graph brauer {")
    assert out.count(" -- ") == 3


def test_to_dot_labels_multiplicities(load):
    text = to_dot(load("star_a"), name="star")
    assert text.splitlines()[0] == "graph star {"
    assert "(f=2)" in text
    assert 'label=a' in text


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    listed = json.loads(out)
    assert {"e1", "e2", "e5", "q1", "star_a"} <= set(listed)
    code, out, _ = run(capsys, "fixtures", "e2")
    assert json.loads(out)["darts"] == 6
    code, _, _ = run(capsys, "fixtures", "nope")
    assert code == 1


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as info:
        main(["transform", fixture("e2")])
    assert info.value.code == 1
    assert "bad-arguments" in capsys.readouterr().err


@pytest.mark.parametrize("name", FixtureCatalog.list_fixtures())
def test_serialize_is_stable_on_fixtures(name, load):
    b = load(name)
    text = serialize(b)
    again = DocumentParser.parse(text)
    assert again == b
    assert serialize(again) == text


def test_serialize_is_stable_on_random_complexes(rng):
    for _ in range(200):
        b = random_complex(rng, rng.randint(1, 7), 3)
        assert DocumentParser.parse(serialize(b, indent=None)) == b


def test_document_kinds():
    assert DocumentParser.detect_kind({"darts": 2}) is DocumentKind.COMPLEX
    assert DocumentParser.detect_kind({"vertices": []}) is DocumentKind.GRAPH
    assert DocumentParser.detect_kind({"arrows": {}}) is DocumentKind.QUIVER
    for data in ({}, [], "e2"):
        with pytest.raises(ParseError):
            DocumentParser.detect_kind(data)


def test_graph_document_errors():
    with pytest.raises(ParseError):
        DocumentParser.parse_data({"vertices": [{"mult": 1}]})
    with pytest.raises(ValidationError) as info:
        DocumentParser.parse_data({"vertices": [{"rotation": ["a", "a", "a"]}, {"rotation": ["a"]}]})
    assert info.value.code == "inconsistent-rotation"


def test_complex_document_errors():
    with pytest.raises(ParseError):
        DocumentParser.parse_data({"darts": 2, "alpha": [[0, 1, 1]], "sigma": [[0, 1]]})
    with pytest.raises(ParseError):
        DocumentParser.parse_data({"darts": 2, "alpha": [[0, 5]], "sigma": [[0, 1]]})
    with pytest.raises(ParseError):
        DocumentParser.parse_data({"darts": "two", "alpha": [[0, 1]], "sigma": [[0, 1]]})


def test_complex_document_keeps_edge_labels(load):
    data = ComplexDocument.from_complex(load("e3")).to_dict()
    assert sorted(data["edge_labels"].values()) == ["a", "b", "l"]
    assert list(data) == ["darts", "alpha", "sigma", "mult", "edge_labels"]


def test_environment_overrides_budget(capsys, monkeypatch):
    monkeypatch.setenv("BRAUER_ORBIT_BUDGET", "1")
    code, out, _ = run(capsys, "orbit", fixture("e5"))
    assert code == 0
    assert json.loads(out)["budget_exhausted"] is True
