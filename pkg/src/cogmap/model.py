"""Node-labelled cognitive and relational map structures.

A cognitive map is a square weight matrix over one set of concept nodes
(zero diagonal, edges in the ring of a + bI).  A relational map links a
domain node set to a disjoint range node set through a rectangular
matrix.  Maps are immutable after construction; ``validate`` reports
every violated structural invariant instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from cogmap.algebra import NeutroValue, ZERO, as_neutro, _coerce

SIMPLE_CRISP = (NeutroValue(-1), ZERO, NeutroValue(1))
SIMPLE_NEUTRO = SIMPLE_CRISP + (NeutroValue(0, 1),)


@dataclass(frozen=True)
class ConceptNode:
    id: int
    label: str
    description: Optional[str] = None


def _freeze_nodes(labels_or_nodes, descriptions=None) -> tuple:
    nodes = []
    for i, item in enumerate(labels_or_nodes):
        if isinstance(item, ConceptNode):
            nodes.append(ConceptNode(i, item.label, item.description))
        else:
            desc = descriptions[i] if descriptions else None
            nodes.append(ConceptNode(i, str(item), desc))
    return tuple(nodes)


def _freeze_weights(rows) -> tuple:
    return tuple(tuple(as_neutro(w) for w in row) for row in rows)


class CognitiveMap:
    """Square adjacency matrix over concept nodes (FCM or NCM)."""

    def __init__(self, nodes: Sequence, weights: Iterable[Iterable]):
        self.nodes = _freeze_nodes(nodes)
        self.weights = _freeze_weights(weights)
        self._index = {node.label: node.id for node in self.nodes}

    @classmethod
    def from_matrix(cls, labels, rows, descriptions=None) -> "CognitiveMap":
        return cls(_freeze_nodes(labels, descriptions), rows)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def labels(self) -> tuple:
        return tuple(node.label for node in self.nodes)

    @property
    def kind(self) -> str:
        """"fcm" when every weight is crisp, "ncm" otherwise."""
        crisp = all(w.is_crisp for row in self.weights for w in row)
        return "fcm" if crisp else "ncm"

    @property
    def is_simple(self) -> bool:
        allowed = SIMPLE_NEUTRO
        return all(w in allowed for row in self.weights for w in row)

    def index_of(self, label: str) -> int:
        if label not in self._index:
            raise KeyError(f"unknown node label {label!r}")
        return self._index[label]

    def weight(self, source: str, target: str) -> NeutroValue:
        return self.weights[self.index_of(source)][self.index_of(target)]

    def __repr__(self):
        return f"<CognitiveMap {self.kind} {self.node_count} nodes>"


class RelationalMap:
    """Rectangular matrix from domain nodes to a disjoint range node set."""

    def __init__(self, domain_nodes: Sequence, range_nodes: Sequence, weights: Iterable[Iterable]):
        self.domain_nodes = _freeze_nodes(domain_nodes)
        self.range_nodes = _freeze_nodes(range_nodes)
        self.weights = _freeze_weights(weights)
        self._domain_index = {node.label: node.id for node in self.domain_nodes}
        self._range_index = {node.label: node.id for node in self.range_nodes}

    @classmethod
    def from_matrix(cls, domain_labels, range_labels, rows) -> "RelationalMap":
        return cls(_freeze_nodes(domain_labels), _freeze_nodes(range_labels), rows)

    @property
    def domain_count(self) -> int:
        return len(self.domain_nodes)

    @property
    def range_count(self) -> int:
        return len(self.range_nodes)

    @property
    def domain_labels(self) -> tuple:
        return tuple(node.label for node in self.domain_nodes)

    @property
    def range_labels(self) -> tuple:
        return tuple(node.label for node in self.range_nodes)

    @property
    def kind(self) -> str:
        """"frm" when every weight is crisp, "nrm" otherwise."""
        crisp = all(w.is_crisp for row in self.weights for w in row)
        return "frm" if crisp else "nrm"

    @property
    def is_simple(self) -> bool:
        return all(w in SIMPLE_NEUTRO for row in self.weights for w in row)

    def __repr__(self):
        return f"<RelationalMap {self.kind} {self.domain_count}x{self.range_count}>"


Map = Union[CognitiveMap, RelationalMap]


def _label_findings(nodes, side="") -> list:
    findings = []
    seen = set()
    prefix = f"{side} " if side else ""
    for node in nodes:
        if not node.label:
            findings.append(f"empty label at {prefix}node {node.id}")
        if node.label in seen:
            findings.append(f"duplicate {prefix}label {node.label!r}")
        seen.add(node.label)
    return findings


def validate(mapping: Map, simple: bool = False) -> list:
    """List every violated invariant; an empty list means well-formed.

    With ``simple=True`` the weight alphabet is additionally restricted
    to {-1, 0, 1} plus I for neutrosophic kinds.
    """
    findings = []
    if isinstance(mapping, CognitiveMap):
        n = mapping.node_count
        findings.extend(_label_findings(mapping.nodes))
        row_lengths = {len(row) for row in mapping.weights}
        if len(mapping.weights) != n or row_lengths not in ({n}, set()):
            shape = f"{len(mapping.weights)}x{sorted(row_lengths)}"
            findings.append(f"not square: {n} nodes but matrix shape {shape}")
        else:
            for i in range(n):
                if mapping.weights[i][i] != ZERO:
                    findings.append(f"nonzero diagonal at node {i} ({mapping.nodes[i].label})")
        if simple and not mapping.is_simple:
            findings.append("weights outside the simple alphabet {-1, 0, 1, I}")
    elif isinstance(mapping, RelationalMap):
        findings.extend(_label_findings(mapping.domain_nodes, "domain"))
        findings.extend(_label_findings(mapping.range_nodes, "range"))
        overlap = set(mapping.domain_labels) & set(mapping.range_labels)
        for label in sorted(overlap):
            findings.append(f"label {label!r} appears in both domain and range")
        n, m = mapping.domain_count, mapping.range_count
        row_lengths = {len(row) for row in mapping.weights}
        if len(mapping.weights) != n or row_lengths not in ({m}, set()):
            findings.append(
                f"matrix shape mismatch: {n} domain rows x {m} range columns declared, "
                f"got {len(mapping.weights)} rows of widths {sorted(row_lengths)}"
            )
        if simple and not mapping.is_simple:
            findings.append("weights outside the simple alphabet {-1, 0, 1, I}")
    else:
        raise TypeError(f"cannot validate {type(mapping).__name__}")
    return findings


def combine(maps: Sequence[CognitiveMap], weights=None, normalize: bool = False) -> CognitiveMap:
    """Entrywise (optionally weighted) sum of several maps.

    The result's nodes are the ordered union of labels by first
    appearance; each input is implicitly padded with zero rows/columns
    for labels it lacks, so experts need not share a node set.  With
    ``normalize`` every entry is divided by the number of maps.
    """
    if not maps:
        raise ValueError("combine requires at least one map")
    if weights is not None:
        if len(weights) != len(maps):
            raise ValueError(f"{len(weights)} weights for {len(maps)} maps")
        weights = [_coerce(w) for w in weights]
        for w in weights:
            if w < 0:
                raise ValueError(f"negative expert weight {w}")
    else:
        weights = [1] * len(maps)

    order = []
    descriptions = {}
    for m in maps:
        for node in m.nodes:
            if node.label not in descriptions:
                order.append(node.label)
                descriptions[node.label] = node.description
            elif descriptions[node.label] is None:
                descriptions[node.label] = node.description
    position = {label: k for k, label in enumerate(order)}

    n = len(order)
    total = [[ZERO] * n for _ in range(n)]
    for m, w in zip(maps, weights):
        if w == 0:
            continue
        for i, row in enumerate(m.weights):
            gi = position[m.nodes[i].label]
            for j, entry in enumerate(row):
                if entry == ZERO:
                    continue
                gj = position[m.nodes[j].label]
                total[gi][gj] = total[gi][gj] + entry.scale(w)
    if normalize:
        factor = Fraction(1, len(maps))
        total = [[entry.scale(factor) for entry in row] for row in total]
    return CognitiveMap.from_matrix(order, total, [descriptions[label] for label in order])


def transpose(mapping: RelationalMap) -> RelationalMap:
    """Swap domain and range; weights[i][j] moves to [j][i]."""
    flipped = [
        [mapping.weights[i][j] for i in range(mapping.domain_count)]
        for j in range(mapping.range_count)
    ]
    return RelationalMap(mapping.range_nodes, mapping.domain_nodes, flipped)
