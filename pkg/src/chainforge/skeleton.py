"""All-pairs skeleton circuits: stage assignment and LNN scheduling.

The skeleton over n wires holds one slot per pair (a, b) with a < b. Slots
carry presence flags and an optional payload gate (default: a generic
two-qubit placeholder). Present or not, every slot is followed by a SWAP of
the same wire pair, which keeps the routing pattern independent of the
flags: the final placement is always the full reversal.

Slots are grouped into 2n-3 stages by coordinate sum: slot (a, b) sits in
stage a + b (1-based). Stages have pairwise disjoint supports, and slots
sharing a wire keep their lexicographic order across stages, so executing
stage by stage is equivalent to executing slots in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence

from .core import (
    Architecture,
    Circuit,
    Gate,
    GateKind,
    ParseError,
    ScheduledCircuit,
    _content_lines,
    cphase,
    generic2,
    is_two_qubit,
    swap,
    validate_gate,
)

Pair = tuple[int, int]


def all_pairs(n: int) -> Iterator[Pair]:
    for a in range(n - 1):
        for b in range(a + 1, n):
            yield (a, b)


@dataclass(frozen=True)
class SkeletonSpec:
    """Presence flags and payloads for the n-wire all-pairs skeleton."""

    n: int
    absent: frozenset[Pair] = frozenset()
    payload: Mapping[Pair, Gate] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"skeleton needs n >= 2, got {self.n}")
        object.__setattr__(self, "absent", frozenset(self.absent))
        object.__setattr__(self, "payload", dict(self.payload))
        for a, b in self.absent:
            self._check_pair(a, b)
        for (a, b), g in self.payload.items():
            self._check_pair(a, b)
            if (a, b) in self.absent:
                raise ValueError(f"pair ({a}, {b}) is absent but has a payload")
            validate_gate(g)
            if not is_two_qubit(g):
                raise ValueError(f"payload for ({a}, {b}) must be a two-qubit gate, got {g}")
            if {g.qubits[0], g.qubits[1]} != {a, b}:
                raise ValueError(f"payload gate {g} does not act on pair ({a}, {b})")

    def _check_pair(self, a: int, b: int) -> None:
        if not (0 <= a < b < self.n):
            raise ValueError(f"({a}, {b}) is not a pair with 0 <= a < b < {self.n}")

    def present(self, a: int, b: int) -> bool:
        self._check_pair(a, b)
        return (a, b) not in self.absent

    def gate_for(self, a: int, b: int) -> Gate:
        return self.payload.get((a, b), generic2(a, b))

    def n_present(self) -> int:
        return self.n * (self.n - 1) // 2 - len(self.absent)


def n_stages(n: int) -> int:
    return 2 * n - 3 if n >= 2 else 0


def stage_pairs(n: int, stage: int) -> list[Pair]:
    """Slots of the given stage (1-based, 1..2n-3), smaller wire ascending."""
    if not 1 <= stage <= n_stages(n):
        raise ValueError(f"stage {stage} outside 1..{n_stages(n)}")
    return [(a, stage - a) for a in range(max(0, stage - n + 1), (stage + 1) // 2)]


def stage_of(a: int, b: int) -> int:
    return a + b


def stage_assignment(spec: SkeletonSpec) -> list[list[Pair]]:
    """Present pairs grouped into 2n-3 stages (some possibly empty)."""
    return [
        [pr for pr in stage_pairs(spec.n, s) if pr not in spec.absent]
        for s in range(1, n_stages(spec.n) + 1)
    ]


class StagePlan(NamedTuple):
    """Site-level gates for one stage of the schedule."""

    payload: tuple[Gate, ...]
    swaps: tuple[Gate, ...]
    placement_before: tuple[int, ...]


def _check_placement(placement: Sequence[int], n: int) -> tuple[int, ...]:
    pl = tuple(placement)
    if sorted(pl) != list(range(n)):
        raise ValueError(f"placement {pl} is not a permutation of 0..{n - 1}")
    deltas = {pl[i + 1] - pl[i] for i in range(n - 1)}
    if n > 1 and deltas not in ({1}, {-1}):
        raise ValueError(f"placement {pl} must map the wire chain onto the site chain")
    return pl


def staged_schedule(
    spec: SkeletonSpec, initial_placement: Sequence[int] | None = None
) -> tuple[list[StagePlan], tuple[int, ...]]:
    """Stage-by-stage site gates plus the final placement.

    The placement (wire -> site) must lay the wire chain along the site
    chain in order or reversed; the uniform SWAP pattern keeps every slot's
    wires adjacent when its stage runs, and flips the placement overall.
    """
    n = spec.n
    loc = list(_check_placement(initial_placement or range(n), n))
    plans: list[StagePlan] = []
    for s in range(1, n_stages(n) + 1):
        payload: list[Gate] = []
        swaps: list[Gate] = []
        before = tuple(loc)
        for a, b in stage_pairs(n, s):
            sa, sb = loc[a], loc[b]
            if abs(sa - sb) != 1:
                raise AssertionError(f"slot ({a}, {b}) not adjacent at stage {s}")
            if spec.present(a, b):
                g = spec.gate_for(a, b)
                payload.append(Gate(g.kind, tuple(loc[q] for q in g.qubits), g.param))
            swaps.append(swap(sa, sb))
            loc[a], loc[b] = sb, sa
        plans.append(StagePlan(tuple(payload), tuple(swaps), before))
    return plans, tuple(loc)


def schedule_lnn(spec: SkeletonSpec, drop_last_swaps: bool = False) -> ScheduledCircuit:
    """Execute the skeleton on a line, one payload stage + one SWAP stage each."""
    plans, final = staged_schedule(spec)
    gates: list[Gate] = []
    for i, plan in enumerate(plans):
        gates.extend(plan.payload)
        if drop_last_swaps and i == len(plans) - 1:
            final = plan.placement_before
        else:
            gates.extend(plan.swaps)
    return ScheduledCircuit(Circuit(spec.n, tuple(gates)), Architecture.lnn(spec.n), final)


def lnn_pattern_preserved(sc: ScheduledCircuit) -> bool:
    """True when final_map lays the wire chain along the site chain."""
    fm = sc.final_map
    n = len(fm)
    if n <= 1:
        return True
    deltas = {fm[i + 1] - fm[i] for i in range(n - 1)}
    return deltas == {1} or deltas == {-1}


def full_reversal(n: int) -> tuple[int, ...]:
    return tuple(n - 1 - i for i in range(n))


# --- text format -----------------------------------------------------------

_PAYLOAD_KINDS = {
    "cnot": GateKind.CNOT,
    "cz": GateKind.CZ,
    "cphase": GateKind.CPHASE,
    "swap": GateKind.SWAP,
    "g": GateKind.GENERIC2,
}


def parse_skeleton(text: str) -> SkeletonSpec:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty skeleton file")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "skeleton":
        raise ParseError(lineno, f"expected 'skeleton N', got {head!r}")
    try:
        n = int(toks[1])
    except ValueError:
        raise ParseError(lineno, f"bad wire count {toks[1]!r}") from None
    absent = set()
    payload = {}
    for lineno, line in lines[1:]:
        toks = line.split()
        try:
            if toks[0] == "absent" and len(toks) == 3:
                a, b = int(toks[1]), int(toks[2])
                absent.add((min(a, b), max(a, b)))
            elif toks[0] == "payload" and len(toks) in (4, 5):
                a, b = int(toks[1]), int(toks[2])
                kind = _PAYLOAD_KINDS.get(toks[3])
                if kind is None:
                    raise ParseError(lineno, f"unknown payload kind {toks[3]!r}")
                if kind is GateKind.CPHASE:
                    if len(toks) != 5:
                        raise ParseError(lineno, "cphase payload needs a parameter k")
                    g = cphase(int(toks[4]), a, b)
                elif len(toks) == 5:
                    raise ParseError(lineno, f"{toks[3]} payload takes no parameter")
                elif kind is GateKind.CNOT:
                    g = Gate(kind, (a, b))
                else:
                    g = Gate(kind, (min(a, b), max(a, b)))
                payload[(min(a, b), max(a, b))] = g
            else:
                raise ParseError(lineno, f"expected 'absent a b' or 'payload a b kind', got {line!r}")
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    try:
        return SkeletonSpec(n, frozenset(absent), payload)
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None


def emit_skeleton(spec: SkeletonSpec) -> str:
    out = [f"skeleton {spec.n}"]
    for a, b in sorted(spec.absent):
        out.append(f"absent {a} {b}")
    for (a, b), g in sorted(spec.payload.items()):
        if g.kind is GateKind.CPHASE:
            out.append(f"payload {g.qubits[0]} {g.qubits[1]} cphase {g.param}")
        elif g.kind is GateKind.GENERIC2:
            continue
        else:
            out.append(f"payload {g.qubits[0]} {g.qubits[1]} {g.kind.value}")
    return "\n".join(out) + "\n"


__all__ = [
    "Pair",
    "SkeletonSpec",
    "StagePlan",
    "all_pairs",
    "emit_skeleton",
    "full_reversal",
    "lnn_pattern_preserved",
    "n_stages",
    "parse_skeleton",
    "schedule_lnn",
    "stage_assignment",
    "stage_of",
    "stage_pairs",
    "staged_schedule",
]
