import pytest

from cogmap.algebra import NeutroValue, ZERO
from cogmap.io_formats import (
    MapDocumentError,
    Scenario,
    UnknownLabelError,
    bundled_map_ids,
    data_dir,
    export_dot,
    import_csv,
    load_bundled,
    load_map,
    load_map_file,
    load_scenario,
    resolve_initial,
    resolve_map_argument,
    save_map,
    write_map_file,
)
from cogmap.model import CognitiveMap, RelationalMap, validate

BUNDLED = [
    "example-1-2-1",
    "sec-1-6-NR",
    "sec-2-1-P",
    "sec-2-1-P-ncm",
    "sec-2-1-R",
    "sec-2-2-E",
    "sec-2-2-E-ncm",
    "sec-2-4-Q",
    "sec-2-4-V",
    "sec-2-5-N",
    "sec-2-5-S",
    "sec-2-5-S-ncm",
    "sec-2-5-W",
    "sec-2-6-M",
]


def minimal_doc(**overrides):
    doc = {
        "format_version": "1",
        "kind": "cognitive",
        "nodes": ["A", "B"],
        "edges": [["A", "B", "1"]],
        "metadata": {},
    }
    doc.update(overrides)
    return doc


def test_bundled_ids_are_exactly_the_expected_set():
    assert bundled_map_ids() == BUNDLED


def test_bundled_example_matrix_matches_transcription():
    m, _ = load_bundled("example-1-2-1")
    expected = [
        [0, 0, -1, 0, 1],
        [0, 0, 0, -1, 0],
        [0, -1, 0, 0, -1],
        [-1, 1, 0, 0, 0],
        [0, 0, 0, 1, 0],
    ]
    assert [[w.real for w in row] for row in m.weights] == expected
    assert all(w.indet == 0 for row in m.weights for w in row)


def test_every_bundled_dataset_validates_clean():
    for map_id in bundled_map_ids():
        mapping, doc = load_bundled(map_id)
        assert validate(mapping) == [], map_id
        assert doc["format_version"] == "1"


def test_bundled_round_trip_is_identity():
    for map_id in bundled_map_ids():
        mapping, doc = load_bundled(map_id)
        saved = save_map(mapping, doc.get("metadata"))
        assert saved == doc, map_id


def test_absent_edges_are_zero():
    m = load_map(minimal_doc())
    assert m.weight("B", "A") == ZERO
    assert m.weight("A", "B") == NeutroValue(1)


def test_self_loop_rejected():
    with pytest.raises(MapDocumentError) as err:
        load_map(minimal_doc(edges=[["A", "A", "1"]]))
    assert any("self-loop" in f for f in err.value.findings)
    assert any("edges[0]" in f for f in err.value.findings)


def test_unknown_label_duplicate_edge_and_bad_weight_reported_with_location():
    doc = minimal_doc(
        edges=[["A", "Z", "1"], ["A", "B", "1"], ["A", "B", "-1"], ["B", "A", "oops"]]
    )
    with pytest.raises(MapDocumentError) as err:
        load_map(doc)
    findings = err.value.findings
    assert any("edges[0]" in f and "'Z'" in f for f in findings)
    assert any("edges[2]" in f and "duplicate" in f for f in findings)
    assert any("edges[3]" in f and "oops" in f for f in findings)


def test_unknown_major_version_rejected():
    with pytest.raises(MapDocumentError) as err:
        load_map(minimal_doc(format_version="2"))
    assert any("format_version" in f for f in err.value.findings)
    load_map(minimal_doc(format_version="1.3"))  # minor versions are fine


def test_relational_document_round_trip():
    doc = {
        "format_version": "1",
        "kind": "relational",
        "domain_nodes": [{"label": "D1"}, {"label": "D2", "description": "second"}],
        "range_nodes": [{"label": "R1"}],
        "edges": [["D1", "R1", "I"], ["D2", "R1", "-1"]],
        "metadata": {"source": "test"},
    }
    m = load_map(doc)
    assert isinstance(m, RelationalMap)
    assert m.kind == "nrm"
    assert save_map(m, doc["metadata"]) == doc


def test_save_then_load_file(tmp_path):
    m, doc = load_bundled("sec-2-1-P")
    path = tmp_path / "p.cogmap.json"
    write_map_file(path, m, doc["metadata"])
    again = load_map_file(path)
    assert again.weights == m.weights
    assert again.labels == m.labels


def test_csv_import_two_node_fcm():
    text = ",A,B\nA,0,1\nB,-1,0\n"
    m = import_csv(text)
    assert isinstance(m, CognitiveMap)
    assert m.weight("A", "B") == NeutroValue(1)
    assert m.weight("B", "A") == NeutroValue(-1)
    assert m.kind == "fcm"


def test_csv_import_relational_matches_bundled_nrm():
    bundled, _ = load_bundled("sec-1-6-NR")
    header = "," + ",".join(bundled.range_labels)
    lines = [header]
    for i, label in enumerate(bundled.domain_labels):
        lines.append(label + "," + ",".join(str(w) for w in bundled.weights[i]))
    m = import_csv("\n".join(lines), kind="relational")
    assert isinstance(m, RelationalMap)
    assert m.weights == bundled.weights


def test_csv_indeterminate_cell_yields_ncm():
    m = import_csv(",A,B\nA,0,1+I\nB,0,0\n")
    assert m.kind == "ncm"


def test_csv_ragged_rows_and_bad_cells_reported():
    with pytest.raises(MapDocumentError) as err:
        import_csv(",A,B\nA,0,1\nB,0\n")
    assert any("row 3" in f and "cells" in f for f in err.value.findings)
    with pytest.raises(MapDocumentError) as err:
        import_csv(",A,B\nA,0,x\nB,0,0\n")
    assert any("'x'" in f for f in err.value.findings)


def test_csv_cognitive_requires_matching_labels():
    with pytest.raises(MapDocumentError):
        import_csv(",A,B\nA,0,1\nC,0,0\n")


def test_questionable_tables_fail_to_import():
    qdir = data_dir() / "questionable"
    csvs = sorted(qdir.glob("*.csv"))
    assert len(csvs) == 3
    for path in csvs:
        with pytest.raises(MapDocumentError) as err:
            import_csv(path.read_text(encoding="utf-8"))
        assert err.value.findings, path.name
    assert (qdir / "README.md").is_file()


def test_export_dot_styles_and_determinism():
    m = CognitiveMap.from_matrix(["A", "B", "C"], [["0", "I", "-1"], ["0", "0", "0"], ["1", "0", "0"]])
    dot = export_dot(m)
    assert dot == export_dot(m)
    assert 'n0 -> n1 [label="I", style=dashed];' in dot
    assert 'color=red' in dot and 'arrowhead=tee' in dot
    assert dot.startswith("digraph")


def test_export_dot_empty_map_is_header_only():
    m = CognitiveMap.from_matrix(["A"], [[0]])
    dot = export_dot(m)
    assert "->" not in dot


def test_export_dot_edge_count_matches_nonzeros():
    m, _ = load_bundled("example-1-2-1")
    dot = export_dot(m)
    assert dot.count("->") == 8


def test_export_dot_relational_is_bipartite():
    m, _ = load_bundled("sec-1-6-NR")
    dot = export_dot(m)
    assert "d0" in dot and "r0" in dot
    assert dot.count("->") == sum(1 for row in m.weights for w in row if w != ZERO)


def test_scenario_defaults_and_validation():
    s = load_scenario({"on": ["Population"]})
    assert s.clamp == "auto" and s.side == "domain"
    assert s.threshold == 1 and s.max_iters == 1000
    with pytest.raises(MapDocumentError):
        load_scenario({"on": ["A"], "threshold": 0})
    with pytest.raises(MapDocumentError):
        load_scenario({"on": ["A"], "side": "middle"})
    with pytest.raises(MapDocumentError):
        load_scenario({"on": "Population"})


def test_resolve_initial_clamping_modes():
    m, _ = load_bundled("example-1-2-1")
    s = Scenario(on=["Population"])
    initial = resolve_initial(m, s)
    assert initial.clamped == frozenset([0])
    s = Scenario(on=["Population"], clamp="none")
    assert resolve_initial(m, s).clamped == frozenset()
    s = Scenario(on=["Population"], clamp=["Crime"])
    initial = resolve_initial(m, s)
    assert initial.clamped == frozenset([1])
    assert initial.values[1].real == 1


def test_resolve_initial_unknown_label():
    m, _ = load_bundled("example-1-2-1")
    with pytest.raises(UnknownLabelError) as err:
        resolve_initial(m, Scenario(on=["Nope"]))
    assert "Nope" in str(err.value)


def test_resolve_initial_relational_sides():
    m, _ = load_bundled("sec-1-6-NR")
    initial = resolve_initial(m, Scenario(on=["R2"], side="range"))
    assert len(initial) == 5
    with pytest.raises(UnknownLabelError):
        resolve_initial(m, Scenario(on=["R2"], side="domain"))


def test_data_dir_override(tmp_path, monkeypatch):
    m, doc = load_bundled("example-1-2-1")
    write_map_file(tmp_path / "only-one.cogmap.json", m, doc["metadata"])
    monkeypatch.setenv("COGMAP_DATA_DIR", str(tmp_path))
    assert bundled_map_ids() == ["only-one"]
    again, _ = load_bundled("only-one")
    assert again.weights == m.weights


def test_resolve_map_argument(tmp_path):
    assert isinstance(resolve_map_argument("sec-2-6-M"), RelationalMap)
    with pytest.raises(MapDocumentError):
        resolve_map_argument("no-such-map")
    csv_path = tmp_path / "m.csv"
    csv_path.write_text(",A,B\nA,0,1\nB,0,0\n", encoding="utf-8")
    assert isinstance(resolve_map_argument(str(csv_path)), CognitiveMap)
