"""Quantum Fourier transform circuits, flat and scheduled on a line.

The flat form follows the textbook pattern: wire a gets a Hadamard, then
controlled phases onto every later wire b with rotation parameter
k = b - a + 1. Its unitary composed with the bit-reversal wire relabeling
is the DFT matrix on 2**n points.

The line-scheduled form drives the same gates through the all-pairs
skeleton. Every controlled-phase slot is present, so the schedule runs in
2n-3 payload stages plus SWAP stages, and Hadamards are woven in: H(a)
right before stage 2a+1 (where wire a's first phase gate sits) and H(n-1)
at the very end. Only H(0) and H(n-1) occupy layers of their own, so the
total depth is 4n-4 for n >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Architecture,
    Circuit,
    Gate,
    GateKind,
    ScheduledCircuit,
    cphase,
    h,
)
from .skeleton import SkeletonSpec, all_pairs, staged_schedule


@dataclass(frozen=True)
class QftSpec:
    """Size and optional phase-truncation threshold.

    approx_threshold m drops every controlled phase with parameter k > m;
    m = None keeps them all.
    """

    n: int
    approx_threshold: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qft needs n >= 1, got {self.n}")
        m = self.approx_threshold
        if m is not None and not 1 <= m <= self.n:
            raise ValueError(f"approx_threshold must be in 1..{self.n}, got {m}")

    def keeps(self, a: int, b: int) -> bool:
        return self.approx_threshold is None or b - a + 1 <= self.approx_threshold


def qft_flat(spec: QftSpec) -> Circuit:
    """Unrestricted-connectivity circuit; phase parameter k = b - a + 1."""
    gates: list[Gate] = []
    for a in range(spec.n):
        gates.append(h(a))
        for b in range(a + 1, spec.n):
            if spec.keeps(a, b):
                gates.append(cphase(b - a + 1, a, b))
    return Circuit(spec.n, tuple(gates))


def _skeleton_for(spec: QftSpec) -> SkeletonSpec:
    absent = frozenset(pr for pr in all_pairs(spec.n) if not spec.keeps(*pr))
    payload = {
        (a, b): cphase(b - a + 1, a, b)
        for a, b in all_pairs(spec.n)
        if spec.keeps(a, b)
    }
    return SkeletonSpec(spec.n, absent, payload)


def _schedule(spec: QftSpec) -> ScheduledCircuit:
    n = spec.n
    if n == 1:
        return ScheduledCircuit(Circuit(1, (h(0),)), Architecture.lnn(1), (0,))
    plans, final = staged_schedule(_skeleton_for(spec))
    gates: list[Gate] = []
    for idx, plan in enumerate(plans):
        a = idx // 2
        if idx % 2 == 0 and a < n - 1:
            # wire a's first slot, pair (a, a+1), lives in this stage
            gates.append(h(plan.placement_before[a]))
        gates.extend(plan.payload)
        gates.extend(plan.swaps)
    gates.append(h(final[n - 1]))
    return ScheduledCircuit(Circuit(n, tuple(gates)), Architecture.lnn(n), final)


def qft_lnn(spec: QftSpec) -> ScheduledCircuit:
    """Line schedule of the full transform; depth 4n-4 for n >= 2.

    The SWAP flow reverses the wires, so the unitary relabeled by final_map
    and then by bit reversal equals the DFT matrix. No physical reversal
    stage is appended; callers wanting a specific output order can route it
    with core.route_permutation.
    """
    if spec.approx_threshold is not None:
        raise ValueError("qft_lnn runs the full transform; use aqft_lnn to truncate")
    return _schedule(spec)


def aqft_lnn(spec: QftSpec) -> ScheduledCircuit:
    """Same schedule with truncated slots left empty; SWAPs are retained."""
    if spec.approx_threshold is None:
        raise ValueError("aqft_lnn needs approx_threshold set")
    return _schedule(spec)


__all__ = ["QftSpec", "aqft_lnn", "qft_flat", "qft_lnn"]
