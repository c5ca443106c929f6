"""Run and sweep reports: one JSON shape shared by the CLI and the HTTP
API, plus the matching human-readable tables."""

from __future__ import annotations

import json
from cogmap.algebra import INDET, ONE, format_weight
from cogmap.inference import (
    RelationalPattern,
    StateVector,
    ThresholdPolicy,
    step_with_raw,
    _raw_pass,
)
from cogmap.model import CognitiveMap, RelationalMap


def activation_symbol(value) -> str:
    if value == ONE:
        return "1"
    if value == INDET:
        return "I"
    return "0"


def state_activations(labels, state: StateVector) -> dict:
    return {label: activation_symbol(v) for label, v in zip(labels, state.values)}


def _pair_activations(rmap: RelationalMap, domain: StateVector, range_: StateVector) -> dict:
    out = state_activations(rmap.domain_labels, domain)
    out.update(state_activations(rmap.range_labels, range_))
    return out


def run_report(mapping, pattern, include_trajectory: bool = False) -> dict:
    """RunReport: outcome kind, final activation per label, iteration count
    and (for cycles) the period; trajectory included on request."""
    report = {
        "outcome": pattern.kind,
        "iterations": pattern.iterations,
        "period": pattern.period,
    }
    if isinstance(pattern, RelationalPattern):
        report["side"] = pattern.side
        final = pattern.final_pair()
        report["activations"] = _pair_activations(mapping, final.domain, final.range)
        if include_trajectory:
            report["trajectory"] = [
                _pair_activations(mapping, pair.domain, pair.range) for pair in pattern.trajectory
            ]
    else:
        final = pattern.final_state()
        report["activations"] = state_activations(mapping.labels, final)
        if include_trajectory:
            report["trajectory"] = [
                state_activations(mapping.labels, s) for s in pattern.trajectory
            ]
    return report


def sweep_report(mapping: CognitiveMap, entries) -> dict:
    rows = []
    for entry in entries:
        rows.append(
            {
                "start": entry.node.label,
                "outcome": entry.pattern.kind,
                "iterations": entry.pattern.iterations,
                "period": entry.pattern.period,
                "on_count": entry.on_count,
                "indeterminate_count": entry.indeterminate_count,
                "activations": state_activations(mapping.labels, entry.final_state),
            }
        )
    return {"node_count": mapping.node_count, "entries": rows}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _outcome_line(pattern) -> str:
    if pattern.kind == "fixed_point":
        return f"fixed point after {pattern.iterations} iterations"
    if pattern.kind == "limit_cycle":
        return f"limit cycle, period {pattern.period} ({pattern.iterations} iterations)"
    return f"no convergence within {pattern.iterations} iterations"


def format_run_table(mapping, pattern) -> str:
    report = run_report(mapping, pattern)
    lines = [_outcome_line(pattern)]
    width = max(len(label) for label in report["activations"])
    if isinstance(pattern, RelationalPattern):
        lines.append(f"start side: {pattern.side}")
        final = pattern.final_pair()
        lines.append("domain:")
        for label, v in zip(mapping.domain_labels, final.domain.values):
            lines.append(f"  {label:<{width}}  {activation_symbol(v)}")
        lines.append("range:")
        for label, v in zip(mapping.range_labels, final.range.values):
            lines.append(f"  {label:<{width}}  {activation_symbol(v)}")
    else:
        for label, symbol in report["activations"].items():
            lines.append(f"  {label:<{width}}  {symbol}")
    return "\n".join(lines) + "\n"


def _fmt_state(state: StateVector) -> str:
    return "(" + " ".join(activation_symbol(v) for v in state.values) + ")"


def _fmt_raw(raw) -> str:
    return "(" + " ".join(format_weight(v) for v in raw) + ")"


def format_trace(mapping, pattern, policy: ThresholdPolicy) -> str:
    """Full trajectory with the raw (pre-threshold) ring sums, replayed so
    each printed line matches the update arithmetic step by step."""
    lines = ["trace (raw sums -> thresholded state):"]
    if isinstance(pattern, RelationalPattern):
        lines.append(f"  t0  domain={_fmt_state(pattern.trajectory[0].domain)} "
                     f"range={_fmt_state(pattern.trajectory[0].range)}")
        side = pattern.side
        for t in range(1, len(pattern.trajectory)):
            prev = pattern.trajectory[t - 1]
            cur = pattern.trajectory[t]
            near_prev = prev.domain if side == "domain" else prev.range
            far_cur = cur.range if side == "domain" else cur.domain
            near_cur = cur.domain if side == "domain" else cur.range
            raw_far = _raw_pass(
                near_prev.values, mapping.weights,
                len(far_cur), transposed=(side != "domain"),
            )
            raw_near = _raw_pass(
                far_cur.values, mapping.weights,
                len(near_cur), transposed=(side == "domain"),
            )
            far_name = "range" if side == "domain" else "domain"
            lines.append(f"  t{t}  {far_name}: raw {_fmt_raw(raw_far)} -> {_fmt_state(far_cur)}")
            lines.append(f"      {side}: raw {_fmt_raw(raw_near)} -> {_fmt_state(near_cur)}")
    else:
        lines.append(f"  t0  {_fmt_state(pattern.trajectory[0])}")
        for t in range(1, len(pattern.trajectory)):
            _, raw = step_with_raw(mapping, pattern.trajectory[t - 1], policy)
            lines.append(f"  t{t}  raw {_fmt_raw(raw)} -> {_fmt_state(pattern.trajectory[t])}")
    return "\n".join(lines) + "\n"


def format_sweep_table(mapping: CognitiveMap, entries) -> str:
    width = max(len(node.label) for node in mapping.nodes)
    header = f"{'start':<{width}}  {'outcome':<12} {'period':>6} {'iters':>5} {'on':>3} {'I':>3}  final"
    lines = [header, "-" * len(header)]
    for entry in entries:
        period = entry.pattern.period if entry.pattern.period is not None else "-"
        lines.append(
            f"{entry.node.label:<{width}}  {entry.pattern.kind:<12} {period:>6} "
            f"{entry.pattern.iterations:>5} {entry.on_count:>3} {entry.indeterminate_count:>3}  "
            f"{_fmt_state(entry.final_state)}"
        )
    return "\n".join(lines) + "\n"
