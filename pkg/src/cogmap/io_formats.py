"""File formats: map documents, scenarios, CSV import, DOT export,
and access to the bundled datasets.

A map document is a single JSON object; weights are always strings in
the weight grammar so that "1", "I" and "1+2I" share one representation.
Absent edges mean weight 0.  Scenario documents describe a start state
(ON labels, clamp mode, side, threshold, iteration cap) against a map.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from cogmap.algebra import WeightParseError, ZERO, format_weight, parse_weight, _coerce
from cogmap.inference import StateVector
from cogmap.model import CognitiveMap, ConceptNode, RelationalMap

FORMAT_VERSION = "1"
MAP_SUFFIX = ".cogmap.json"
SCENARIO_SUFFIX = ".scenario.json"
DATA_DIR_ENV = "COGMAP_DATA_DIR"


class MapDocumentError(ValueError):
    """A document failed to load; ``findings`` lists every defect with its location."""

    def __init__(self, findings):
        self.findings = list(findings)
        super().__init__("; ".join(self.findings))


class UnknownLabelError(KeyError):
    """A scenario or CLI argument names a label the map does not declare."""

    def __init__(self, label, where=""):
        self.label = label
        suffix = f" in {where}" if where else ""
        super().__init__(f"unknown label {label!r}{suffix}")

    def __str__(self):
        return self.args[0]


def _check_version(doc, findings):
    version = doc.get("format_version")
    if version is None:
        findings.append("missing format_version")
        return
    major = str(version).split(".", 1)[0]
    if major != FORMAT_VERSION:
        findings.append(f"unsupported format_version {version!r} (expected major {FORMAT_VERSION})")


def _parse_nodes(raw, findings, where):
    nodes = []
    seen = set()
    if not isinstance(raw, list) or not raw:
        findings.append(f"{where} must be a non-empty list")
        return nodes
    for i, item in enumerate(raw):
        if isinstance(item, str):
            label, desc = item, None
        elif isinstance(item, dict) and isinstance(item.get("label"), str):
            label, desc = item["label"], item.get("description")
        else:
            findings.append(f"{where}[{i}] must be a label string or an object with a label")
            continue
        if not label:
            findings.append(f"{where}[{i}] has an empty label")
        if label in seen:
            findings.append(f"duplicate label {label!r} in {where}")
        seen.add(label)
        nodes.append(ConceptNode(len(nodes), label, desc))
    return nodes


def _parse_edge(entry, i, findings):
    if isinstance(entry, dict):
        src, dst, weight = entry.get("from"), entry.get("to"), entry.get("weight")
    elif isinstance(entry, (list, tuple)) and len(entry) == 3:
        src, dst, weight = entry
    else:
        findings.append(f"edges[{i}] must be [from, to, weight]")
        return None
    if not isinstance(src, str) or not isinstance(dst, str) or not isinstance(weight, str):
        findings.append(f"edges[{i}] entries must be strings")
        return None
    return src, dst, weight


def load_map(doc: dict) -> Union[CognitiveMap, RelationalMap]:
    """Build a map from a document, gathering every defect before failing."""
    if not isinstance(doc, dict):
        raise MapDocumentError(["document must be a JSON object"])
    findings = []
    _check_version(doc, findings)
    kind = doc.get("kind")
    if kind not in ("cognitive", "relational"):
        findings.append(f"kind must be 'cognitive' or 'relational', got {kind!r}")
        raise MapDocumentError(findings)

    if kind == "cognitive":
        nodes = _parse_nodes(doc.get("nodes"), findings, "nodes")
        index = {n.label: n.id for n in nodes}
        n = len(nodes)
        rows = [[ZERO] * n for _ in range(n)]
        seen_edges = set()
        for i, entry in enumerate(doc.get("edges", [])):
            parsed = _parse_edge(entry, i, findings)
            if parsed is None:
                continue
            src, dst, weight = parsed
            if src not in index:
                findings.append(f"edges[{i}]: unknown label {src!r}")
                continue
            if dst not in index:
                findings.append(f"edges[{i}]: unknown label {dst!r}")
                continue
            if src == dst:
                findings.append(f"edges[{i}]: self-loop on {src!r}")
                continue
            if (src, dst) in seen_edges:
                findings.append(f"edges[{i}]: duplicate edge {src!r} -> {dst!r}")
                continue
            seen_edges.add((src, dst))
            try:
                rows[index[src]][index[dst]] = parse_weight(weight)
            except WeightParseError as exc:
                findings.append(f"edges[{i}]: {exc}")
        if findings:
            raise MapDocumentError(findings)
        return CognitiveMap(nodes, rows)

    domain = _parse_nodes(doc.get("domain_nodes"), findings, "domain_nodes")
    range_ = _parse_nodes(doc.get("range_nodes"), findings, "range_nodes")
    overlap = {n.label for n in domain} & {n.label for n in range_}
    for label in sorted(overlap):
        findings.append(f"label {label!r} appears in both domain_nodes and range_nodes")
    dindex = {n.label: n.id for n in domain}
    rindex = {n.label: n.id for n in range_}
    rows = [[ZERO] * len(range_) for _ in range(len(domain))]
    seen_edges = set()
    for i, entry in enumerate(doc.get("edges", [])):
        parsed = _parse_edge(entry, i, findings)
        if parsed is None:
            continue
        src, dst, weight = parsed
        if src not in dindex:
            findings.append(f"edges[{i}]: unknown domain label {src!r}")
            continue
        if dst not in rindex:
            findings.append(f"edges[{i}]: unknown range label {dst!r}")
            continue
        if (src, dst) in seen_edges:
            findings.append(f"edges[{i}]: duplicate edge {src!r} -> {dst!r}")
            continue
        seen_edges.add((src, dst))
        try:
            rows[dindex[src]][rindex[dst]] = parse_weight(weight)
        except WeightParseError as exc:
            findings.append(f"edges[{i}]: {exc}")
    if findings:
        raise MapDocumentError(findings)
    return RelationalMap(domain, range_, rows)


def _node_entry(node: ConceptNode):
    if node.description is None:
        return {"label": node.label}
    return {"label": node.label, "description": node.description}


def save_map(mapping, metadata: Optional[dict] = None) -> dict:
    """Canonical document for a map: nodes in id order, edges sorted by
    (source id, target id), weights in canonical text form."""
    doc = {"format_version": FORMAT_VERSION}
    if isinstance(mapping, CognitiveMap):
        doc["kind"] = "cognitive"
        doc["nodes"] = [_node_entry(n) for n in mapping.nodes]
        edges = []
        for i, row in enumerate(mapping.weights):
            for j, w in enumerate(row):
                if w != ZERO:
                    edges.append([mapping.nodes[i].label, mapping.nodes[j].label, format_weight(w)])
        doc["edges"] = edges
    elif isinstance(mapping, RelationalMap):
        doc["kind"] = "relational"
        doc["domain_nodes"] = [_node_entry(n) for n in mapping.domain_nodes]
        doc["range_nodes"] = [_node_entry(n) for n in mapping.range_nodes]
        edges = []
        for i, row in enumerate(mapping.weights):
            for j, w in enumerate(row):
                if w != ZERO:
                    edges.append(
                        [mapping.domain_nodes[i].label, mapping.range_nodes[j].label, format_weight(w)]
                    )
        doc["edges"] = edges
    else:
        raise TypeError(f"cannot save {type(mapping).__name__}")
    doc["metadata"] = dict(metadata) if metadata else {}
    return doc


def load_map_file(path) -> Union[CognitiveMap, RelationalMap]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MapDocumentError([f"cannot read {path}: {exc}"]) from exc
    if path.suffix == ".csv":
        return import_csv(text)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapDocumentError([f"{path} is not valid JSON: {exc}"]) from exc
    return load_map(doc)


def write_map_file(path, mapping, metadata: Optional[dict] = None):
    doc = save_map(mapping, metadata)
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


@dataclass
class Scenario:
    """A start state against a map: what is ON, what stays clamped, and
    the iteration parameters."""

    on: list = field(default_factory=list)
    clamp: Union[str, list] = "auto"
    side: str = "domain"
    threshold: object = 1
    max_iters: int = 1000
    map_ref: Optional[str] = None

    def __post_init__(self):
        self.threshold = _coerce(self.threshold)
        if self.threshold <= 0:
            raise MapDocumentError([f"threshold must be positive, got {self.threshold}"])
        if self.max_iters < 1:
            raise MapDocumentError([f"max_iters must be at least 1, got {self.max_iters}"])
        if self.side not in ("domain", "range"):
            raise MapDocumentError([f"side must be 'domain' or 'range', got {self.side!r}"])
        if not (self.clamp in ("auto", "none") or isinstance(self.clamp, list)):
            raise MapDocumentError(["clamp must be 'auto', 'none' or a list of labels"])


def load_scenario(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise MapDocumentError(["scenario must be a JSON object"])
    on = doc.get("on", [])
    if not isinstance(on, list) or not all(isinstance(x, str) for x in on):
        raise MapDocumentError(["'on' must be a list of labels"])
    clamp = doc.get("clamp", "auto")
    if isinstance(clamp, list) and not all(isinstance(x, str) for x in clamp):
        raise MapDocumentError(["'clamp' labels must be strings"])
    try:
        return Scenario(
            on=on,
            clamp=clamp,
            side=doc.get("side", "domain"),
            threshold=doc.get("threshold", 1),
            max_iters=doc.get("max_iters", 1000),
            map_ref=doc.get("map"),
        )
    except TypeError as exc:
        raise MapDocumentError([f"bad scenario field: {exc}"]) from exc


def resolve_initial(mapping, scenario: Scenario) -> StateVector:
    """Turn scenario labels into a clamped StateVector on the right side."""
    if isinstance(mapping, CognitiveMap):
        labels = mapping.labels
    else:
        labels = mapping.domain_labels if scenario.side == "domain" else mapping.range_labels
    index = {label: i for i, label in enumerate(labels)}

    def lookup(label, where):
        if label not in index:
            raise UnknownLabelError(label, where)
        return index[label]

    on = [lookup(label, "'on'") for label in scenario.on]
    if scenario.clamp == "auto":
        clamp = "auto"
    elif scenario.clamp == "none":
        clamp = "none"
    else:
        clamp = [lookup(label, "'clamp'") for label in scenario.clamp]
    return StateVector.from_on(len(labels), on, clamp)


def import_csv(text: str, kind: str = "cognitive") -> Union[CognitiveMap, RelationalMap]:
    """Read a weight matrix whose header row and header column carry labels.

    Cell (i, j) becomes the directed weight row-label -> column-label.
    """
    if kind not in ("cognitive", "relational"):
        raise MapDocumentError([f"kind must be 'cognitive' or 'relational', got {kind!r}"])
    findings = []
    rows = list(csv.reader(io.StringIO(text)))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if len(rows) < 2:
        raise MapDocumentError(["matrix needs a header row and at least one data row"])
    col_labels = [cell.strip() for cell in rows[0][1:]]
    width = len(col_labels)
    row_labels = []
    matrix = []
    for r, row in enumerate(rows[1:], start=2):
        label = row[0].strip()
        row_labels.append(label)
        cells = row[1:]
        if len(cells) != width:
            findings.append(f"row {r} ({label!r}) has {len(cells)} cells, header has {width}")
            continue
        parsed_row = []
        for c, cell in enumerate(cells):
            try:
                parsed_row.append(parse_weight(cell.strip()))
            except WeightParseError as exc:
                findings.append(f"row {r} ({label!r}), column {col_labels[c]!r}: {exc}")
                parsed_row.append(ZERO)
        matrix.append(parsed_row)
    if findings:
        raise MapDocumentError(findings)
    if kind == "cognitive":
        if row_labels != col_labels:
            raise MapDocumentError(
                ["cognitive matrix must have identical row and column labels in order"]
            )
        return CognitiveMap.from_matrix(row_labels, matrix)
    return RelationalMap.from_matrix(row_labels, col_labels, matrix)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_edge_attrs(weight) -> str:
    attrs = [f"label={_dot_quote(format_weight(weight))}"]
    if weight.indet != 0:
        attrs.append("style=dashed")
    if weight.real < 0:
        attrs.append("color=red")
        attrs.append("arrowhead=tee")
    return " [" + ", ".join(attrs) + "]"


def export_dot(mapping) -> str:
    """DOT digraph: one edge per nonzero weight, dashed when the weight
    carries indeterminacy, tee-arrowed red when the real part is negative.
    Output is deterministic (nodes by id, edges by source then target)."""
    lines = ["digraph cogmap {"]
    if isinstance(mapping, CognitiveMap):
        for node in mapping.nodes:
            lines.append(f"  n{node.id} [label={_dot_quote(node.label)}];")
        for i, row in enumerate(mapping.weights):
            for j, w in enumerate(row):
                if w != ZERO:
                    lines.append(f"  n{i} -> n{j}{_dot_edge_attrs(w)};")
    elif isinstance(mapping, RelationalMap):
        lines.append("  rankdir=LR;")
        for node in mapping.domain_nodes:
            lines.append(f"  d{node.id} [label={_dot_quote(node.label)}, shape=box];")
        for node in mapping.range_nodes:
            lines.append(f"  r{node.id} [label={_dot_quote(node.label)}];")
        for i, row in enumerate(mapping.weights):
            for j, w in enumerate(row):
                if w != ZERO:
                    lines.append(f"  d{i} -> r{j}{_dot_edge_attrs(w)};")
    else:
        raise TypeError(f"cannot export {type(mapping).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def data_dir() -> Path:
    """Bundled dataset directory, overridable via COGMAP_DATA_DIR."""
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(resources.files("cogmap") / "data")


def bundled_map_ids() -> list:
    directory = data_dir()
    if not directory.is_dir():
        return []
    return sorted(p.name[: -len(MAP_SUFFIX)] for p in directory.glob(f"*{MAP_SUFFIX}"))


def bundled_map_path(map_id: str) -> Path:
    return data_dir() / f"{map_id}{MAP_SUFFIX}"


def load_bundled(map_id: str):
    """Load a bundled map, returning (map, document)."""
    path = bundled_map_path(map_id)
    if not path.is_file():
        raise MapDocumentError([f"no bundled map {map_id!r} in {data_dir()}"])
    doc = json.loads(path.read_text(encoding="utf-8"))
    return load_map(doc), doc


def resolve_map_argument(ref: str, kind: str = "cognitive"):
    """CLI/--map resolution: a bundled id, a document path or a CSV path."""
    path = Path(ref)
    if path.suffix == ".csv":
        if not path.is_file():
            raise MapDocumentError([f"cannot read {path}: no such file"])
        return import_csv(path.read_text(encoding="utf-8"), kind)
    if path.is_file():
        return load_map_file(path)
    if ref in bundled_map_ids():
        return load_bundled(ref)[0]
    raise MapDocumentError([f"{ref!r} is neither a readable file nor a bundled map id"])
