"""Threshold-update dynamics over cognitive and relational maps.

A state vector holds one activation per node, each exactly 0, 1 or I.
Passing a state through the weight matrix yields raw ring sums which are
thresholded back to {0, 1, I}; clamped nodes are then forced to 1.  The
iteration stops at the first revisited state: period 1 is a fixed point,
anything longer a limit cycle.  Relational maps alternate between the
two node sets (through the matrix and its transpose) and the revisit
check runs on the (domain, range) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from cogmap.algebra import INDET, NeutroValue, ONE, ZERO, _coerce
from cogmap.model import CognitiveMap, RelationalMap

ACTIVATIONS = (ZERO, ONE, INDET)


class DimensionMismatch(ValueError):
    """State length does not match the map side it is applied to."""


@dataclass(frozen=True)
class ThresholdPolicy:
    """Threshold rule: 1 when the real part reaches k, else I when any
    indeterminacy is present, else 0."""

    k: object = 1

    def __post_init__(self):
        object.__setattr__(self, "k", _coerce(self.k))
        if self.k <= 0:
            raise ValueError(f"threshold must be positive, got {self.k}")

    def threshold(self, value: NeutroValue) -> NeutroValue:
        if value.real >= self.k:
            return ONE
        if value.indet != 0:
            return INDET
        return ZERO


DEFAULT_POLICY = ThresholdPolicy()


def threshold_value(value: NeutroValue, policy: ThresholdPolicy = DEFAULT_POLICY) -> NeutroValue:
    return policy.threshold(value)


@dataclass(frozen=True)
class StateVector:
    """Per-node activations in {0, 1, I} plus the indices held at 1."""

    values: tuple
    clamped: frozenset = frozenset()

    def __post_init__(self):
        values = tuple(self.values)
        clamped = frozenset(self.clamped)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "clamped", clamped)
        for i, v in enumerate(values):
            if v not in ACTIVATIONS:
                raise ValueError(f"activation at index {i} must be 0, 1 or I, got {v}")
        for i in clamped:
            if not 0 <= i < len(values):
                raise ValueError(f"clamped index {i} out of range for {len(values)} nodes")
            if values[i] != ONE:
                raise ValueError(f"clamped index {i} must read 1")

    @classmethod
    def from_on(cls, length: int, on: Iterable[int], clamp: Union[str, Iterable[int]] = "auto"):
        """Build a crisp state with the given indices ON.

        ``clamp`` is "auto" (clamp exactly the ON indices), "none", or an
        explicit index collection; explicitly clamped indices are forced
        ON as well.
        """
        on = set(on)
        if clamp == "auto":
            clamped = frozenset(on)
        elif clamp == "none" or clamp is None:
            clamped = frozenset()
        else:
            clamped = frozenset(clamp)
            on |= clamped
        values = tuple(ONE if i in on else ZERO for i in range(length))
        return cls(values, clamped)

    def __len__(self):
        return len(self.values)

    def on_count(self) -> int:
        return sum(1 for v in self.values if v == ONE)

    def indeterminate_count(self) -> int:
        return sum(1 for v in self.values if v == INDET)

    def __str__(self):
        return "(" + " ".join(str(v) for v in self.values) + ")"


def _raw_pass(values: Sequence[NeutroValue], weights, width: int, transposed: bool):
    """Raw ring sums of a state against a weight matrix (or its transpose).

    Activations are restricted to {0, 1, I}, so each contribution is
    either the weight itself or I·(a+bI) = (a+b)I; accumulation stays in
    exact scalar arithmetic.
    """
    real = [0] * width
    indet = [0] * width
    for i, act in enumerate(values):
        if act == ZERO:
            continue
        pure_i = act == INDET
        for j in range(width):
            w = weights[j][i] if transposed else weights[i][j]
            if pure_i:
                indet[j] += w.real + w.indet
            else:
                real[j] += w.real
                indet[j] += w.indet
    return [NeutroValue(real[j], indet[j]) for j in range(width)]


def _threshold_and_clamp(raw, clamped, policy) -> StateVector:
    out = [policy.threshold(v) for v in raw]
    for i in clamped:
        out[i] = ONE
    return StateVector(tuple(out), clamped)


def step(
    cmap: CognitiveMap, state: StateVector, policy: ThresholdPolicy = DEFAULT_POLICY
) -> StateVector:
    """One synchronous pass of ``state`` through the map, thresholded and
    with clamped nodes re-forced to 1."""
    new_state, _ = step_with_raw(cmap, state, policy)
    return new_state


def step_with_raw(cmap, state, policy=DEFAULT_POLICY):
    """Like ``step`` but also returns the pre-threshold ring sums."""
    n = cmap.node_count
    if len(state) != n:
        raise DimensionMismatch(f"state has {len(state)} entries, map has {n} nodes")
    raw = _raw_pass(state.values, cmap.weights, n, transposed=False)
    return _threshold_and_clamp(raw, state.clamped, policy), raw


@dataclass(frozen=True)
class FixedPoint:
    state: StateVector
    steps: int  # trajectory position where the fixed state first appeared


@dataclass(frozen=True)
class LimitCycle:
    states: tuple  # cycle states in iteration order
    period: int
    entry: int  # trajectory position where the cycle was entered


@dataclass(frozen=True)
class NotConverged:
    iterations: int


Outcome = Union[FixedPoint, LimitCycle, NotConverged]


@dataclass(frozen=True)
class HiddenPattern:
    """Equilibrium of an iteration plus the post-threshold trajectory.

    trajectory[0] is the clamped initial state; the last entry is the
    first revisited state (for converged runs).
    """

    outcome: Outcome
    trajectory: tuple

    @property
    def kind(self) -> str:
        if isinstance(self.outcome, FixedPoint):
            return "fixed_point"
        if isinstance(self.outcome, LimitCycle):
            return "limit_cycle"
        return "not_converged"

    @property
    def period(self) -> Optional[int]:
        return self.outcome.period if isinstance(self.outcome, LimitCycle) else None

    def final_state(self) -> StateVector:
        if isinstance(self.outcome, FixedPoint):
            return self.outcome.state
        if isinstance(self.outcome, LimitCycle):
            return self.outcome.states[-1]
        return self.trajectory[-1]

    @property
    def iterations(self) -> int:
        return len(self.trajectory) - 1


def hidden_pattern(
    cmap: CognitiveMap,
    initial: StateVector,
    policy: ThresholdPolicy = DEFAULT_POLICY,
    max_iters: int = 1000,
) -> HiddenPattern:
    """Iterate ``step`` until a state repeats (or ``max_iters`` runs out)."""
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if len(initial) != cmap.node_count:
        raise DimensionMismatch(
            f"state has {len(initial)} entries, map has {cmap.node_count} nodes"
        )
    trajectory = [initial]
    seen = {initial.values: 0}
    state = initial
    for t in range(1, max_iters + 1):
        state = step(cmap, state, policy)
        trajectory.append(state)
        if state.values in seen:
            first = seen[state.values]
            period = t - first
            if period == 1:
                outcome = FixedPoint(state=state, steps=first)
            else:
                outcome = LimitCycle(
                    states=tuple(trajectory[first : first + period]),
                    period=period,
                    entry=first,
                )
            return HiddenPattern(outcome, tuple(trajectory))
        seen[state.values] = t
    return HiddenPattern(NotConverged(max_iters), tuple(trajectory))


@dataclass(frozen=True)
class PairState:
    """A (domain, range) snapshot of a relational iteration."""

    domain: StateVector
    range: StateVector

    def key(self):
        return (self.domain.values, self.range.values)


@dataclass(frozen=True)
class FixedPair:
    domain: StateVector
    range: StateVector
    steps: int


@dataclass(frozen=True)
class PairCycle:
    pairs: tuple
    period: int
    entry: int


@dataclass(frozen=True)
class RelationalPattern:
    """Hidden pattern of a relational map: a binary pair per iteration.

    The non-starting side begins all OFF; each iteration recomputes the
    far side from the near one and then the near side back through the
    transpose, re-clamping the starting side's held nodes.
    """

    outcome: Union[FixedPair, PairCycle, NotConverged]
    trajectory: tuple
    side: str

    @property
    def kind(self) -> str:
        if isinstance(self.outcome, FixedPair):
            return "fixed_point"
        if isinstance(self.outcome, PairCycle):
            return "limit_cycle"
        return "not_converged"

    @property
    def period(self) -> Optional[int]:
        return self.outcome.period if isinstance(self.outcome, PairCycle) else None

    def final_pair(self) -> PairState:
        if isinstance(self.outcome, FixedPair):
            return PairState(self.outcome.domain, self.outcome.range)
        if isinstance(self.outcome, PairCycle):
            return self.outcome.pairs[-1]
        return self.trajectory[-1]

    @property
    def iterations(self) -> int:
        return len(self.trajectory) - 1


def relational_hidden_pattern(
    rmap: RelationalMap,
    initial: StateVector,
    side: str = "domain",
    policy: ThresholdPolicy = DEFAULT_POLICY,
    max_iters: int = 1000,
) -> RelationalPattern:
    """Alternate between the two node sets until a (domain, range) pair repeats."""
    if side not in ("domain", "range"):
        raise ValueError(f"side must be 'domain' or 'range', got {side!r}")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    start_len = rmap.domain_count if side == "domain" else rmap.range_count
    other_len = rmap.range_count if side == "domain" else rmap.domain_count
    if len(initial) != start_len:
        raise DimensionMismatch(
            f"state has {len(initial)} entries, {side} side has {start_len} nodes"
        )

    def make_pair(near: StateVector, far: StateVector) -> PairState:
        if side == "domain":
            return PairState(domain=near, range=far)
        return PairState(domain=far, range=near)

    near = initial
    far = StateVector((ZERO,) * other_len)
    trajectory = [make_pair(near, far)]
    seen = {trajectory[0].key(): 0}
    # Multiplying a domain vector uses the matrix as printed; a range
    # vector goes back through the transpose (and vice versa when the
    # iteration starts on the range side).
    forward_transposed = side != "domain"
    for t in range(1, max_iters + 1):
        raw_far = _raw_pass(near.values, rmap.weights, other_len, transposed=forward_transposed)
        far = _threshold_and_clamp(raw_far, frozenset(), policy)
        raw_near = _raw_pass(far.values, rmap.weights, start_len, transposed=not forward_transposed)
        near = _threshold_and_clamp(raw_near, initial.clamped, policy)
        pair = make_pair(near, far)
        trajectory.append(pair)
        if pair.key() in seen:
            first = seen[pair.key()]
            period = t - first
            if period == 1:
                outcome = FixedPair(domain=pair.domain, range=pair.range, steps=first)
            else:
                outcome = PairCycle(
                    pairs=tuple(trajectory[first : first + period]), period=period, entry=first
                )
            return RelationalPattern(outcome, tuple(trajectory), side)
        seen[pair.key()] = t
    return RelationalPattern(NotConverged(max_iters), tuple(trajectory), side)


@dataclass(frozen=True)
class SweepEntry:
    node: object  # the start ConceptNode
    pattern: HiddenPattern

    @property
    def final_state(self) -> StateVector:
        return self.pattern.final_state()

    @property
    def on_count(self) -> int:
        return self.final_state.on_count()

    @property
    def indeterminate_count(self) -> int:
        return self.final_state.indeterminate_count()


def sweep(
    cmap: CognitiveMap,
    policy: ThresholdPolicy = DEFAULT_POLICY,
    max_iters: int = 1000,
) -> list:
    """Hidden pattern from every single-node clamped start, in node order."""
    entries = []
    for node in cmap.nodes:
        initial = StateVector.from_on(cmap.node_count, [node.id], clamp="auto")
        entries.append(SweepEntry(node, hidden_pattern(cmap, initial, policy, max_iters)))
    return entries
