"""Cognitive and relational map inference toolkit.

Maps are signed directed graphs (optionally carrying the indeterminacy
element I) whose dynamics are explored by thresholded state-vector
iteration until a fixed point or limit cycle appears.
"""

from cogmap.algebra import INDET, NeutroValue, ONE, WeightParseError, ZERO, parse_weight
from cogmap.model import CognitiveMap, ConceptNode, RelationalMap, combine, transpose, validate
from cogmap.inference import (
    HiddenPattern,
    RelationalPattern,
    StateVector,
    ThresholdPolicy,
    hidden_pattern,
    relational_hidden_pattern,
    step,
    sweep,
    threshold_value,
)

__version__ = "0.1.0"

__all__ = [
    "CognitiveMap",
    "ConceptNode",
    "HiddenPattern",
    "INDET",
    "NeutroValue",
    "ONE",
    "RelationalMap",
    "RelationalPattern",
    "StateVector",
    "ThresholdPolicy",
    "WeightParseError",
    "ZERO",
    "combine",
    "hidden_pattern",
    "parse_weight",
    "relational_hidden_pattern",
    "step",
    "sweep",
    "threshold_value",
    "transpose",
    "validate",
]
