"""Acceptance suite: one test per criterion, exact values, stated budgets.

Run with ``pytest tests/test_acceptance.py -v`` for the per-criterion
pass/fail lines.
"""

import itertools
import json
import random
import time

from fastapi.testclient import TestClient

from cogmap.algebra import INDET, NeutroValue, ONE, ZERO
from cogmap.cli import main
from cogmap.inference import (
    FixedPair,
    FixedPoint,
    LimitCycle,
    StateVector,
    hidden_pattern,
    relational_hidden_pattern,
    step,
    sweep,
)
from cogmap.io_formats import bundled_map_ids, load_bundled
from cogmap.model import CognitiveMap
from cogmap.service import create_app

from oracle import o_mul, o_step, random_simple_ncm


def acts(*symbols):
    table = {"0": ZERO, "1": ONE, "I": INDET}
    return tuple(table[s] for s in symbols)


def test_example_1_2_1_limit_cycle_reproduction():
    m, _ = load_bundled("example-1-2-1")
    start = StateVector.from_on(5, [0])
    expected_cycle = [
        acts("1", "0", "0", "0", "1"),
        acts("1", "0", "0", "1", "1"),
        acts("1", "1", "0", "1", "1"),
        acts("1", "1", "0", "0", "1"),
    ]
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        hp = hidden_pattern(m, start)
        best = min(best, time.perf_counter() - t0)
    assert isinstance(hp.outcome, LimitCycle)
    assert hp.outcome.period == 4
    assert hp.outcome.entry == 1
    assert [s.values for s in hp.outcome.states] == expected_cycle
    assert best < 0.001, f"run took {best * 1000:.3f} ms"


def test_sec_2_1_node_eight_fixed_point():
    m, _ = load_bundled("sec-2-1-P")
    hp = hidden_pattern(m, StateVector.from_on(9, [7]))
    assert isinstance(hp.outcome, FixedPoint)
    assert hp.final_state().values == acts("0", "0", "0", "1", "1", "0", "0", "1", "1")
    assert hp.outcome.steps <= 3


def test_sec_2_1_single_node_fixtures():
    p, _ = load_bundled("sec-2-1-P")
    hp = hidden_pattern(p, StateVector.from_on(9, [0]))
    assert isinstance(hp.outcome, FixedPoint)
    assert hp.final_state().values == (ONE,) * 9

    r, _ = load_bundled("sec-2-1-R")
    hp = hidden_pattern(r, StateVector.from_on(15, [0]))
    assert isinstance(hp.outcome, FixedPoint)
    assert hp.final_state().values == (ONE,) * 15
    assert hp.outcome.steps <= 2

    hp = hidden_pattern(r, StateVector.from_on(15, [2]))
    assert isinstance(hp.outcome, FixedPoint)
    expected = tuple(ONE if i == 2 else ZERO for i in range(15))
    assert hp.final_state().values == expected


def test_sec_2_1_indeterminacy_variant_parity():
    p, _ = load_bundled("sec-2-1-P")
    p_ncm, _ = load_bundled("sec-2-1-P-ncm")
    assert p_ncm.kind == "ncm"
    base = hidden_pattern(p, StateVector.from_on(9, [7]))
    variant = hidden_pattern(p_ncm, StateVector.from_on(9, [7]))
    assert isinstance(variant.outcome, FixedPoint)
    assert variant.final_state().values == base.final_state().values


def test_sec_1_6_nrm_fixed_pair():
    m, _ = load_bundled("sec-1-6-NR")
    rp = relational_hidden_pattern(m, StateVector.from_on(5, [1]), side="range")
    assert isinstance(rp.outcome, FixedPair)
    assert rp.outcome.range.values == acts("1", "1", "1", "1", "1")
    assert rp.outcome.domain.values == acts("1", "1", "1", "1", "1", "1", "I")


def test_sec_2_6_frm_fixed_pair():
    m, _ = load_bundled("sec-2-6-M")
    rp = relational_hidden_pattern(m, StateVector.from_on(10, [6]), side="domain")
    assert isinstance(rp.outcome, FixedPair)
    assert rp.outcome.domain.values == (ONE,) * 10
    assert rp.outcome.range.values == (ONE,) * 12
    assert rp.trajectory[1].range.values == acts(
        "1", "1", "0", "1", "1", "0", "0", "0", "0", "0", "0", "0"
    )


def test_ring_property_suite_ten_thousand_triples():
    rng = random.Random(1859)
    assert INDET * INDET == INDET
    failures = 0
    for _ in range(10_000):
        x = NeutroValue(rng.randint(-9, 9), rng.randint(-9, 9))
        y = NeutroValue(rng.randint(-9, 9), rng.randint(-9, 9))
        z = NeutroValue(rng.randint(-9, 9), rng.randint(-9, 9))
        ok = (
            (x + y) + z == x + (y + z)
            and x + y == y + x
            and (x * y) * z == x * (y * z)
            and x * y == y * x
            and x * (y + z) == x * y + x * z
            and (x + y) * z == x * z + y * z
            and x + ZERO == x
            and x * ONE == x
            and x + (-x) == ZERO
        )
        mx = x * y
        ok = ok and (mx.real, mx.indet) == o_mul((x.real, x.indet), (y.real, y.indet))
        if not ok:
            failures += 1
    assert failures == 0


def test_oracle_equivalence_on_random_simple_maps():
    rng = random.Random(40_320)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(100):
        n = rng.randint(2, 6)
        pairs = random_simple_ncm(rng, n)
        m = CognitiveMap.from_matrix(
            [f"C{i}" for i in range(n)],
            [[NeutroValue(*w) for w in row] for row in pairs],
        )
        for bits in itertools.product((0, 1), repeat=n):
            on = [i for i, b in enumerate(bits) if b]
            ours = step(m, StateVector.from_on(n, on))
            ref = o_step(pairs, [(b, 0) for b in bits], set(on))
            if [(v.real, v.indet) for v in ours.values] != ref:
                mismatches += 1
    elapsed = time.perf_counter() - t0
    assert mismatches == 0
    assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_every_bundled_cognitive_sweep_terminates_within_fifty():
    for map_id in bundled_map_ids():
        mapping, _ = load_bundled(map_id)
        if not isinstance(mapping, CognitiveMap):
            continue
        for entry in sweep(mapping, max_iters=50):
            assert entry.pattern.kind in ("fixed_point", "limit_cycle"), (
                f"{map_id}: start {entry.node.label!r} did not settle in 50 iterations"
            )


def test_cli_and_api_reports_are_identical(capsys):
    client = TestClient(create_app())
    for map_id in bundled_map_ids():
        mapping, doc = load_bundled(map_id)
        if isinstance(mapping, CognitiveMap):
            label = mapping.labels[0]
            scenario = {"on": [label]}
        else:
            label = mapping.domain_labels[0]
            scenario = {"on": [label], "side": "domain"}
        code = main(["infer", "--map", map_id, "--on", label, "--format", "json", "--trace"])
        cli_report = json.loads(capsys.readouterr().out)
        assert code == 0
        api_report = client.post(f"/api/maps/{map_id}/infer", json=scenario).json()
        assert cli_report == api_report, map_id
