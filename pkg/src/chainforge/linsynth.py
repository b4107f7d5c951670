"""Depth-oriented synthesis of linear reversible functions on a line.

A nonsingular GF(2) matrix A is realized as a CNOT/SWAP circuit in three
chained skeleton schedules. Gauss-Jordan elimination of A's inverse yields
a gate trace whose circuit action is A; the trace is rearranged into pivot
gates, a lower-triangular part and an upper-triangular part, each of which
fits the all-pairs skeleton (the upper part after reversing wire labels).
Chaining the three schedules costs no routing because each schedule flips
the wire placement end to end.

Matrix convention: rows are bit-packed integers, row i bit j is A[i][j],
and the matrix acts on column vectors of wire values, out_i = XOR of
A[i][j] * x_j. A CNOT with control c and target t is the elementary matrix
adding row c into row t; gate traces replayed as row operations therefore
compose exactly like the circuits they came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Sequence

from .core import (
    Architecture,
    Circuit,
    Gate,
    GateKind,
    ParseError,
    ScheduledCircuit,
    _content_lines,
    cnot,
    prune_trailing_swap_layers,
)
from .skeleton import SkeletonSpec, all_pairs, staged_schedule

Pair = tuple[int, int]


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class GF2Matrix:
    """Square matrix over GF(2) with bit-packed rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        mask = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r < 0 or r & ~mask:
                raise ValueError(f"row {i} has bits outside 0..{self.n - 1}")

    @staticmethod
    def identity(n: int) -> "GF2Matrix":
        return GF2Matrix(n, tuple(1 << i for i in range(n)))

    @staticmethod
    def from_strings(lines: Sequence[str]) -> "GF2Matrix":
        n = len(lines)
        rows = []
        for line in lines:
            bits = line.strip()
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise ValueError(f"expected {n} characters of 0/1, got {line!r}")
            rows.append(sum(1 << j for j, ch in enumerate(bits) if ch == "1"))
        return GF2Matrix(n, tuple(rows))

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows]

    @staticmethod
    def random_nonsingular(n: int, rng: Random) -> "GF2Matrix":
        bound = 1 << n
        while True:
            m = GF2Matrix(n, tuple(rng.randrange(bound) for _ in range(n)))
            if m.rank() == n:
                return m

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def rank(self) -> int:
        rows = list(self.rows)
        r = 0
        for j in range(self.n):
            pivot = next((i for i in range(r, self.n) if (rows[i] >> j) & 1), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            for i in range(self.n):
                if i != r and (rows[i] >> j) & 1:
                    rows[i] ^= rows[r]
            r += 1
        return r

    def inverse(self) -> "GF2Matrix":
        rows = list(self.rows)
        aug = [1 << i for i in range(self.n)]
        for j in range(self.n):
            pivot = next((i for i in range(j, self.n) if (rows[i] >> j) & 1), None)
            if pivot is None:
                raise SingularMatrixError(f"matrix is singular (no pivot in column {j})")
            rows[j], rows[pivot] = rows[pivot], rows[j]
            aug[j], aug[pivot] = aug[pivot], aug[j]
            for i in range(self.n):
                if i != j and (rows[i] >> j) & 1:
                    rows[i] ^= rows[j]
                    aug[i] ^= aug[j]
        return GF2Matrix(self.n, tuple(aug))

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return GF2Matrix(self.n, tuple(out))

    def apply(self, x: int) -> int:
        """Matrix-vector product on a bit-packed input vector."""
        y = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                y |= 1 << i
        return y

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix(
            self.n,
            tuple(
                sum(((self.rows[i] >> j) & 1) << i for i in range(self.n))
                for j in range(self.n)
            ),
        )

    def relabel(self, output_map: Sequence[int]) -> "GF2Matrix":
        """Read row output_map[l] as logical output l."""
        if sorted(output_map) != list(range(self.n)):
            raise ValueError(f"{tuple(output_map)} is not a permutation")
        return GF2Matrix(self.n, tuple(self.rows[output_map[l]] for l in range(self.n)))

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))


@dataclass(frozen=True)
class GaussJordanTrace:
    """Elimination trace: pivot donors plus lower/upper gate flags.

    pivot_donor[c] is the row j > c whose row was added into row c to fix a
    zero diagonal at column c (None when no fix was needed); there is no
    entry for the last column, where a zero diagonal means singularity.
    lower holds pairs (c, s) meaning CNOT(c, s) ran while clearing column c
    below the diagonal; upper holds pairs (k, l) meaning CNOT(l, k) ran
    while clearing column l above it.
    """

    n: int
    pivot_donor: tuple[int | None, ...]
    lower: frozenset[Pair]
    upper: frozenset[Pair]

    def __post_init__(self) -> None:
        if len(self.pivot_donor) != max(self.n - 1, 0):
            raise ValueError(f"expected {self.n - 1} pivot slots, got {len(self.pivot_donor)}")
        for c, j in enumerate(self.pivot_donor):
            if j is not None and not c < j < self.n:
                raise ValueError(f"pivot donor {j} for column {c} must satisfy c < j < n")
        for a, b in self.lower | self.upper:
            if not 0 <= a < b < self.n:
                raise ValueError(f"({a}, {b}) is not a pair with 0 <= a < b < n")

    def pivot_flags(self) -> tuple[int, ...]:
        return tuple(0 if j is None else 1 for j in self.pivot_donor)

    def gates_in_order(self) -> list[Gate]:
        """The trace's gates in elimination time order."""
        out: list[Gate] = []
        for c in range(self.n - 1):
            j = self.pivot_donor[c]
            if j is not None:
                out.append(cnot(j, c))
            for s in range(c + 1, self.n):
                if (c, s) in self.lower:
                    out.append(cnot(c, s))
        for l in range(self.n - 1, 0, -1):
            for k in range(l - 1, -1, -1):
                if (k, l) in self.upper:
                    out.append(cnot(l, k))
        return out


def gauss_jordan(a: GF2Matrix) -> GaussJordanTrace:
    """Eliminate `a` to the identity, recording the gates applied.

    Per column, left to right: fix a zero diagonal by adding the nearest
    lower row that has a one in the column, then clear the column below the
    diagonal. Afterwards clear above the diagonal, rightmost column first.
    Replaying gates_in_order() as row operations reduces `a` to I, so the
    same gates as a circuit compute the inverse of `a`.
    """
    n = a.n
    rows = list(a.rows)
    pivot_donor: list[int | None] = []
    lower = set()
    upper = set()
    for c in range(n):
        if not (rows[c] >> c) & 1:
            j = next((i for i in range(c + 1, n) if (rows[i] >> c) & 1), None)
            if j is None:
                raise SingularMatrixError(f"matrix is singular (no pivot in column {c})")
            rows[c] ^= rows[j]
            if c < n - 1:
                pivot_donor.append(j)
        elif c < n - 1:
            pivot_donor.append(None)
        for s in range(c + 1, n):
            if (rows[s] >> c) & 1:
                rows[s] ^= rows[c]
                lower.add((c, s))
    for l in range(n - 1, 0, -1):
        for k in range(l - 1, -1, -1):
            if (rows[k] >> l) & 1:
                rows[k] ^= rows[l]
                upper.add((k, l))
    if any(r != 1 << i for i, r in enumerate(rows)):  # pragma: no cover - defensive
        raise SingularMatrixError("elimination did not reach the identity")
    return GaussJordanTrace(n, tuple(pivot_donor), frozenset(lower), frozenset(upper))


@dataclass(frozen=True)
class RearrangedParts:
    """Trace gates regrouped as pivots, then lower pairs, then upper pairs.

    Replayed in that order (pivots by column, lower pairs in lexicographic
    order, upper pairs by descending column then descending row) the gates
    compose to the same GF(2) map as the original trace.
    """

    n: int
    pivots: tuple[tuple[int, int], ...]  # (column, donor), column ascending
    lower: frozenset[Pair]
    upper: frozenset[Pair]

    def gates_in_order(self) -> list[Gate]:
        out = [cnot(j, c) for c, j in self.pivots]
        for c, s in sorted(self.lower):
            out.append(cnot(c, s))
        for k, l in sorted(self.upper, key=lambda pr: (-pr[1], -pr[0])):
            out.append(cnot(l, k))
        return out


def rearrange(trace: GaussJordanTrace) -> RearrangedParts:
    """Move pivot gates to the front, updating the lower flags they cross.

    Moving the pivot CNOT(j, c) left past a lower gate CNOT(c', j) spawns a
    compensating CNOT(c', c) (conjugation by the pivot); all other crossings
    commute cleanly. Spawned gates toggle the lower flag of pair (c', c).
    Pivots are moved in ascending column order against the flags as updated
    so far. Upper gates sit after every pivot and are never crossed.
    """
    lower = set(trace.lower)
    pivots: list[tuple[int, int]] = []
    for c, j in enumerate(trace.pivot_donor):
        if j is None:
            continue
        for c_prev in range(c):
            if (c_prev, j) in lower:
                lower ^= {(c_prev, c)}
        pivots.append((c, j))
    return RearrangedParts(trace.n, tuple(pivots), frozenset(lower), trace.upper)


def _part_specs(parts: RearrangedParts) -> list[tuple[SkeletonSpec, bool]]:
    """Skeleton specs for the three parts; the last runs on reversed labels."""
    n = parts.n
    specs: list[tuple[SkeletonSpec, bool]] = []
    pivot_pairs = {(c, j): cnot(j, c) for c, j in parts.pivots}
    if pivot_pairs:
        absent = frozenset(pr for pr in all_pairs(n) if pr not in pivot_pairs)
        specs.append((SkeletonSpec(n, absent, pivot_pairs), False))
    if parts.lower:
        absent = frozenset(pr for pr in all_pairs(n) if pr not in parts.lower)
        payload = {(a, b): cnot(a, b) for a, b in parts.lower}
        specs.append((SkeletonSpec(n, absent, payload), False))
    if parts.upper:
        flipped = {(n - 1 - l, n - 1 - k): cnot(n - 1 - l, n - 1 - k) for k, l in parts.upper}
        absent = frozenset(pr for pr in all_pairs(n) if pr not in flipped)
        specs.append((SkeletonSpec(n, absent, flipped), True))
    return specs


def schedule_parts(
    parts: RearrangedParts, initial_placement: Sequence[int] | None = None
) -> tuple[list[Gate], tuple[int, ...]]:
    """Chain the nonempty parts as skeleton schedules from a placement.

    Every scheduled part flips the placement end to end, so consecutive
    parts need no routing between them; empty parts are skipped and leave
    the placement alone. Returns site-level gates and the exit placement.
    """
    n = parts.n
    placement = tuple(initial_placement if initial_placement is not None else range(n))
    gates: list[Gate] = []
    for spec, reversed_labels in _part_specs(parts):
        if reversed_labels:
            entry = tuple(placement[n - 1 - w] for w in range(n))
        else:
            entry = placement
        plans, out = staged_schedule(spec, entry)
        for plan in plans:
            gates.extend(plan.payload)
            gates.extend(plan.swaps)
        if reversed_labels:
            placement = tuple(out[n - 1 - w] for w in range(n))
        else:
            placement = out
    return gates, placement


def synthesize_lnn(a: GF2Matrix, prune_swaps: bool = False) -> ScheduledCircuit:
    """LNN CNOT/SWAP circuit computing x -> A x up to the final placement.

    The circuit's GF(2) action, with row final_map[l] read as logical
    output l, equals A exactly. Generic-gate depth (each payload counted
    together with its trailing SWAP) is at most 3(2n-3).
    """
    n = a.n
    arch = Architecture.lnn(n)
    if n == 1:
        if not a.is_identity():
            raise SingularMatrixError("1x1 matrix must be [1]")
        return ScheduledCircuit(Circuit(1), arch, (0,))
    gates, placement = schedule_parts(rearrange(gauss_jordan(a.inverse())))
    sc = ScheduledCircuit(Circuit(n, tuple(gates)), arch, placement)
    return prune_trailing_swap_layers(sc) if prune_swaps else sc


def expand_circuit_to_cnot(circuit: Circuit) -> Circuit:
    """Rewrite SWAPs into CNOTs, folding each payload's trailing SWAP.

    A CNOT immediately followed on both wires by a SWAP of the same pair
    becomes two CNOTs (the pair's action equals opposite-direction CNOT
    followed by same-direction); a bare SWAP becomes three. One-qubit gates
    pass through and block folding across them.
    """
    out: list[Gate] = []
    last_on_wire: dict[int, int] = {}
    foldable: dict[Pair, int] = {}
    for g in circuit.gates:
        if g.kind in (GateKind.H, GateKind.P):
            q = g.qubits[0]
            out.append(g)
            last_on_wire[q] = len(out) - 1
            for pr in [pr for pr in foldable if q in pr]:
                del foldable[pr]
            continue
        if g.kind not in (GateKind.CNOT, GateKind.SWAP):
            raise ValueError(f"cannot expand {g.kind.value} gates to CNOTs")
        pair = (min(g.qubits), max(g.qubits))
        if g.kind is GateKind.SWAP:
            idx = foldable.pop(pair, None)
            if idx is not None and last_on_wire[pair[0]] == idx and last_on_wire[pair[1]] == idx:
                c, t = out[idx].qubits
                out[idx] = cnot(t, c)
                out.append(cnot(c, t))
            else:
                a, b = pair
                out.extend((cnot(a, b), cnot(b, a), cnot(a, b)))
        else:
            out.append(g)
            foldable[pair] = len(out) - 1
        for q in pair:
            last_on_wire[q] = len(out) - 1
    return Circuit(circuit.n_wires, tuple(out))


def expand_to_cnot(sc: ScheduledCircuit) -> ScheduledCircuit:
    """Schedule-level CNOT expansion; the gate-level action is unchanged,
    so final_map still locates each logical output."""
    return ScheduledCircuit(expand_circuit_to_cnot(sc.circuit), sc.arch, sc.final_map)


# --- text format -----------------------------------------------------------


def parse_gf2(text: str) -> GF2Matrix:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty matrix file")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "gf2":
        raise ParseError(lineno, f"expected 'gf2 N', got {head!r}")
    try:
        n = int(toks[1])
    except ValueError:
        raise ParseError(lineno, f"bad dimension {toks[1]!r}") from None
    if n < 1:
        raise ParseError(lineno, f"dimension must be >= 1, got {n}")
    if len(lines) - 1 != n:
        raise ParseError(lineno, f"expected {n} rows, got {len(lines) - 1}")
    try:
        return GF2Matrix.from_strings([line for _, line in lines[1:]])
    except ValueError as exc:
        raise ParseError(lines[1][0], str(exc)) from None


def emit_gf2(m: GF2Matrix) -> str:
    return "\n".join([f"gf2 {m.n}", *m.to_strings()]) + "\n"


__all__ = [
    "GF2Matrix",
    "GaussJordanTrace",
    "RearrangedParts",
    "SingularMatrixError",
    "emit_gf2",
    "expand_circuit_to_cnot",
    "expand_to_cnot",
    "gauss_jordan",
    "parse_gf2",
    "rearrange",
    "schedule_parts",
    "synthesize_lnn",
]
