"""Stabilizer circuits from their 11-stage form, scheduled on a line.

Input is the fixed stage sequence H-C-P-C-P-C-H-P-C-P-C: two Hadamard
layers, four phase layers (each a wire bitmask) and five linear reversible
stages (each a nonsingular GF(2) matrix). Scheduling threads one wire
placement through all 11 stages: single-qubit masks apply at the sites
where their wires currently live, and each C stage runs the three-part
skeleton synthesis starting from the current placement, which it flips or
preserves depending on how many of its parts are nonempty.

The tableau here is the usual conjugation table: row g holds the image of
input Pauli X_g (rows 0..n-1) or Z_{g-n} (rows n..2n-1) as x/z bit vectors
plus a sign bit, with the row decoding to (-1)^r * prod_w i^{x_w z_w}
X^{x_w} Z^{z_w}.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterator, Sequence

import numpy as np

from .core import (
    Architecture,
    Circuit,
    Gate,
    GateKind,
    ParseError,
    ScheduledCircuit,
    _content_lines,
    h,
    p,
)
from .linsynth import GF2Matrix, gauss_jordan, rearrange, schedule_parts

STAGE_ORDER = ("h", "c", "p", "c", "p", "c", "h", "p", "c", "p", "c")

# O(n^3) per gate when enabled; flip on in tests that audit the invariant.
CHECK_SYMPLECTIC = False


@dataclass(frozen=True)
class StageDecomposition:
    """Masks and matrices for the fixed 11-stage sequence."""

    n: int
    h_masks: tuple[int, int]
    p_masks: tuple[int, int, int, int]
    c_stages: tuple[GF2Matrix, GF2Matrix, GF2Matrix, GF2Matrix, GF2Matrix]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if len(self.h_masks) != 2 or len(self.p_masks) != 4 or len(self.c_stages) != 5:
            raise ValueError("expected 2 H masks, 4 P masks and 5 C stages")
        for mask in (*self.h_masks, *self.p_masks):
            if not 0 <= mask < (1 << self.n):
                raise ValueError(f"mask {mask:#x} has bits outside 0..{self.n - 1}")
        for i, c in enumerate(self.c_stages):
            if c.n != self.n:
                raise ValueError(f"C stage {i} has dimension {c.n}, expected {self.n}")
            if c.rank() != self.n:
                raise ValueError(f"C stage {i} is singular")

    def stages(self) -> Iterator[tuple[str, int | GF2Matrix]]:
        """The 11 (kind, content) pairs in execution order."""
        its = {"h": iter(self.h_masks), "p": iter(self.p_masks), "c": iter(self.c_stages)}
        for kind in STAGE_ORDER:
            yield kind, next(its[kind])


def random_decomposition(n: int, rng: Random) -> StageDecomposition:
    bound = 1 << n
    return StageDecomposition(
        n,
        (rng.randrange(bound), rng.randrange(bound)),
        tuple(rng.randrange(bound) for _ in range(4)),
        tuple(GF2Matrix.random_nonsingular(n, rng) for _ in range(5)),
    )


def _mask_wires(mask: int, n: int) -> list[int]:
    return [w for w in range(n) if (mask >> w) & 1]


def stabilizer_flat(d: StageDecomposition) -> Circuit:
    """Stage-by-stage reference circuit on unrestricted connectivity.

    Each C stage is realized by replaying its elimination trace backwards:
    the trace's gates reduce C to the identity, and CNOTs are involutions,
    so the reversed gate list computes C itself.
    """
    gates: list[Gate] = []
    for kind, content in d.stages():
        if kind == "h":
            gates.extend(h(w) for w in _mask_wires(content, d.n))
        elif kind == "p":
            gates.extend(p(w) for w in _mask_wires(content, d.n))
        else:
            gates.extend(reversed(gauss_jordan(content).gates_in_order()))
    return Circuit(d.n, tuple(gates))


def schedule_stabilizer(d: StageDecomposition) -> ScheduledCircuit:
    """LNN schedule of all 11 stages under one threaded placement."""
    n = d.n
    placement = tuple(range(n))
    gates: list[Gate] = []
    for kind, content in d.stages():
        if kind == "h":
            gates.extend(h(placement[w]) for w in _mask_wires(content, n))
        elif kind == "p":
            gates.extend(p(placement[w]) for w in _mask_wires(content, n))
        else:
            parts = rearrange(gauss_jordan(content.inverse()))
            stage_gates, placement = schedule_parts(parts, placement)
            gates.extend(stage_gates)
    return ScheduledCircuit(Circuit(n, tuple(gates)), Architecture.lnn(n), placement)


@dataclass(eq=False)
class PauliTableau:
    """Conjugation images of the 2n Pauli generators."""

    x: np.ndarray
    z: np.ndarray
    r: np.ndarray

    @staticmethod
    def identity(n: int) -> "PauliTableau":
        eye = np.eye(n, dtype=np.uint8)
        zero = np.zeros((n, n), dtype=np.uint8)
        return PauliTableau(
            np.concatenate([eye, zero]),
            np.concatenate([zero, eye]),
            np.zeros(2 * n, dtype=np.uint8),
        )

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def copy(self) -> "PauliTableau":
        return PauliTableau(self.x.copy(), self.z.copy(), self.r.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliTableau):
            return NotImplemented
        return (
            self.x.shape == other.x.shape
            and bool(np.array_equal(self.x, other.x))
            and bool(np.array_equal(self.z, other.z))
            and bool(np.array_equal(self.r, other.r))
        )

    def permute_wires(self, perm: Sequence[int]) -> "PauliTableau":
        """Relabel the image strings' wires: column w moves to perm[w]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError(f"{tuple(perm)} is not a permutation")
        x = np.empty_like(self.x)
        z = np.empty_like(self.z)
        idx = list(perm)
        x[:, idx] = self.x
        z[:, idx] = self.z
        return PauliTableau(x, z, self.r.copy())

    def is_symplectic(self) -> bool:
        """Images must keep the generators' commutation pattern."""
        m = np.concatenate([self.x, self.z], axis=1).astype(np.uint8)
        n = self.n
        lam = np.zeros((2 * n, 2 * n), dtype=np.uint8)
        lam[:n, n:] = np.eye(n, dtype=np.uint8)
        lam[n:, :n] = np.eye(n, dtype=np.uint8)
        prod = (m @ lam @ m.T) % 2
        return bool(np.array_equal(prod, lam))


def apply_gate(t: PauliTableau, g: Gate) -> PauliTableau:
    """Update the tableau by one Clifford gate, in place."""
    x, z, r = t.x, t.z, t.r
    if g.kind is GateKind.H:
        (q,) = g.qubits
        r ^= x[:, q] & z[:, q]
        tmp = x[:, q].copy()
        x[:, q] = z[:, q]
        z[:, q] = tmp
    elif g.kind is GateKind.P:
        (q,) = g.qubits
        r ^= x[:, q] & z[:, q]
        z[:, q] ^= x[:, q]
    elif g.kind is GateKind.CNOT:
        c, tq = g.qubits
        r ^= x[:, c] & z[:, tq] & (x[:, tq] ^ z[:, c] ^ 1)
        x[:, tq] ^= x[:, c]
        z[:, c] ^= z[:, tq]
    elif g.kind is GateKind.SWAP:
        a, b = g.qubits
        x[:, [a, b]] = x[:, [b, a]]
        z[:, [a, b]] = z[:, [b, a]]
    elif g.kind is GateKind.CZ or (g.kind is GateKind.CPHASE and g.param == 1):
        a, b = g.qubits
        for step in (h(b), Gate(GateKind.CNOT, (a, b)), h(b)):
            apply_gate(t, step)
    else:
        raise ValueError(f"{g.kind.value} (param={g.param}) is not a Clifford gate")
    if CHECK_SYMPLECTIC and not t.is_symplectic():  # pragma: no cover - debug aid
        raise AssertionError(f"symplectic invariant broken by {g}")
    return t


def tableau_of(circuit: Circuit) -> PauliTableau:
    t = PauliTableau.identity(circuit.n_wires)
    for g in circuit.gates:
        apply_gate(t, g)
    return t


def tableau_equiv(c1: Circuit, c2: Circuit, relabel: Sequence[int] | None = None) -> bool:
    """True when c1 acts like c2 followed by the wire relabeling."""
    if c1.n_wires != c2.n_wires:
        return False
    t2 = tableau_of(c2)
    if relabel is not None:
        t2 = t2.permute_wires(relabel)
    return tableau_of(c1) == t2


# --- text format -----------------------------------------------------------


def parse_stab(text: str) -> StageDecomposition:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty decomposition file")
    lineno, head = lines[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "stab":
        raise ParseError(lineno, f"expected 'stab N', got {head!r}")
    try:
        n = int(toks[1])
    except ValueError:
        raise ParseError(lineno, f"bad wire count {toks[1]!r}") from None
    if n < 1:
        raise ParseError(lineno, f"wire count must be >= 1, got {n}")
    pos = 1
    h_masks: list[int] = []
    p_masks: list[int] = []
    c_stages: list[GF2Matrix] = []
    for want in STAGE_ORDER:
        if pos >= len(lines):
            raise ParseError(lines[-1][0], f"missing 'stage {want}' block")
        lineno, line = lines[pos]
        if line.split() != ["stage", want]:
            raise ParseError(lineno, f"expected 'stage {want}', got {line!r}")
        pos += 1
        if want in ("h", "p"):
            if pos >= len(lines):
                raise ParseError(lineno, f"stage {want} needs a mask line")
            mlineno, mline = lines[pos]
            pos += 1
            if len(mline) != n or set(mline) - {"0", "1"}:
                raise ParseError(mlineno, f"expected {n} characters of 0/1, got {mline!r}")
            mask = sum(1 << w for w, ch in enumerate(mline) if ch == "1")
            (h_masks if want == "h" else p_masks).append(mask)
        else:
            if pos + n > len(lines):
                raise ParseError(lineno, f"stage c needs {n} matrix rows")
            rows = [lines[pos + i][1] for i in range(n)]
            try:
                c_stages.append(GF2Matrix.from_strings(rows))
            except ValueError as exc:
                raise ParseError(lines[pos][0], str(exc)) from None
            pos += n
    if pos != len(lines):
        raise ParseError(lines[pos][0], "unexpected content after the 11 stages")
    try:
        return StageDecomposition(n, tuple(h_masks), tuple(p_masks), tuple(c_stages))
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None


def emit_stab(d: StageDecomposition) -> str:
    out = [f"stab {d.n}"]
    for kind, content in d.stages():
        out.append(f"stage {kind}")
        if kind == "c":
            out.extend(content.to_strings())
        else:
            out.append("".join("1" if (content >> w) & 1 else "0" for w in range(d.n)))
    return "\n".join(out) + "\n"


__all__ = [
    "CHECK_SYMPLECTIC",
    "PauliTableau",
    "STAGE_ORDER",
    "StageDecomposition",
    "apply_gate",
    "emit_stab",
    "parse_stab",
    "random_decomposition",
    "schedule_stabilizer",
    "stabilizer_flat",
    "tableau_equiv",
    "tableau_of",
]
