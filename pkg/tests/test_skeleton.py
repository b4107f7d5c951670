"""Staged all-pairs scheduling on a chain."""

import pytest

from chainforge.core import GateKind, cnot, cz, generic2, swap
from chainforge.skeleton import (
    SkeletonSpec,
    all_pairs,
    emit_skeleton,
    full_reversal,
    lnn_pattern_preserved,
    n_stages,
    parse_skeleton,
    schedule_lnn,
    stage_assignment,
    stage_of,
    stage_pairs,
    staged_schedule,
)


def test_stage_pairs_partition_all_pairs():
    for n in range(2, 9):
        seen = []
        for s in range(1, n_stages(n) + 1):
            pairs = stage_pairs(n, s)
            assert all(stage_of(a, b) == s for a, b in pairs)
            wires = [w for pr in pairs for w in pr]
            assert len(wires) == len(set(wires)), "stage must be wire-disjoint"
            seen.extend(pairs)
        assert sorted(seen) == sorted(all_pairs(n))


def test_stage_sizes_for_five_wires():
    sizes = [len(stage_pairs(5, s)) for s in range(1, 8)]
    assert sizes == [1, 1, 2, 2, 2, 1, 1]
    assert stage_pairs(5, 5) == [(1, 4), (2, 3)]


def test_spec_validation():
    with pytest.raises(ValueError):
        SkeletonSpec(1)
    with pytest.raises(ValueError):
        SkeletonSpec(4, absent=frozenset({(2, 1)}))
    with pytest.raises(ValueError):
        SkeletonSpec(4, payload={(0, 1): cnot(0, 2)})
    with pytest.raises(ValueError):
        SkeletonSpec(4, absent=frozenset({(0, 1)}), payload={(0, 1): cnot(0, 1)})
    spec = SkeletonSpec(4, absent=frozenset({(0, 3)}))
    assert not spec.present(0, 3) and spec.present(0, 1)
    assert spec.n_present() == 5


def test_full_schedule_shape():
    sc = schedule_lnn(SkeletonSpec(5))
    assert sc.circuit.depth() == 14
    assert sc.final_map == (4, 3, 2, 1, 0) == full_reversal(5)
    assert sc.circuit.count(GateKind.GENERIC2) == 10
    assert sc.circuit.count(GateKind.SWAP) == 10
    assert lnn_pattern_preserved(sc)


def test_every_stage_swaps_all_slots():
    """SWAPs run on every slot whether or not the payload is present."""
    spec = SkeletonSpec(5, absent=frozenset(all_pairs(5)))
    sc = schedule_lnn(spec)
    assert sc.circuit.count(GateKind.SWAP) == 10
    assert sc.circuit.count(GateKind.GENERIC2) == 0
    assert sc.circuit.depth() == 7
    assert sc.final_map == full_reversal(5)


def test_payload_direction_follows_placement():
    sc = schedule_lnn(SkeletonSpec(2, payload={(0, 1): cnot(1, 0)}))
    assert sc.circuit.gates[0] == cnot(1, 0)
    spec = SkeletonSpec(3, payload={(0, 2): cnot(2, 0)})
    plans, _ = staged_schedule(spec)
    # (0, 2) runs at stage 2; by then the stage-1 swap moved wire 0 to site 1
    gate = plans[1].payload[0]
    assert gate.kind is GateKind.CNOT
    assert gate.qubits == (2, 1)


def test_reversed_initial_placement_flips_back():
    plans, final = staged_schedule(SkeletonSpec(4), initial_placement=(3, 2, 1, 0))
    assert plans[0].placement_before == (3, 2, 1, 0)
    assert final == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        staged_schedule(SkeletonSpec(4), initial_placement=(1, 0, 3, 2))


def test_drop_last_swaps():
    spec = SkeletonSpec(4)
    full = schedule_lnn(spec)
    trimmed = schedule_lnn(spec, drop_last_swaps=True)
    assert len(trimmed.circuit) == len(full.circuit) - len(stage_pairs(4, n_stages(4)))
    plans, _ = staged_schedule(spec)
    assert trimmed.final_map == plans[-1].placement_before


def test_stage_assignment_honors_absence():
    spec = SkeletonSpec(4, absent=frozenset({(0, 2), (1, 2)}))
    stages = stage_assignment(spec)
    assert stages[stage_of(0, 2) - 1] == []
    # (1, 2) shares stage 3 with (0, 3); only the absent pair drops out
    assert stages[stage_of(1, 2) - 1] == [(0, 3)]


def test_shared_wire_pairs_meet_in_lexicographic_order():
    """The staged order equals lexicographic order wherever pairs share a wire."""
    seen: list[tuple[int, int]] = []
    for s in range(1, n_stages(6) + 1):
        seen.extend(stage_pairs(6, s))
    for i, pr in enumerate(seen):
        for later in seen[i + 1 :]:
            if set(pr) & set(later):
                assert pr < later
    assert len(seen) == 15


def test_parse_emit_roundtrip():
    spec = SkeletonSpec(
        5,
        absent=frozenset({(0, 4), (1, 2)}),
        payload={(0, 1): cnot(1, 0), (2, 4): cz(2, 4)},
    )
    assert parse_skeleton(emit_skeleton(spec)) == spec
    spec = parse_skeleton("skeleton 3\nabsent 0 1\npayload 1 2 cnot\n")
    assert spec.gate_for(1, 2) == cnot(1, 2)
    assert spec.gate_for(0, 2) == generic2(0, 2)
