"""Circuit IR, coupling architectures, depth metrics, routing and text formats.

Conventions used across the package:

- wires are 0-based; wire 0 is the least significant bit of a basis index
- CNOT(c, t) maps x_t to x_t XOR x_c; symmetric two-qubit gates (cz, swap,
  cphase, g) store their wires as (min, max)
- depth is greedy ASAP layering over the stored gate order: a gate sits one
  layer past the deepest layer that already touches any of its wires, and
  every gate counts toward depth regardless of arity
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence


class GateKind(Enum):
    H = "h"
    P = "p"
    CNOT = "cnot"
    CZ = "cz"
    CPHASE = "cphase"
    SWAP = "swap"
    GENERIC2 = "g"


_ONE_QUBIT = frozenset({GateKind.H, GateKind.P})
_TWO_QUBIT = frozenset(
    {GateKind.CNOT, GateKind.CZ, GateKind.CPHASE, GateKind.SWAP, GateKind.GENERIC2}
)
_SYMMETRIC = frozenset({GateKind.CZ, GateKind.CPHASE, GateKind.SWAP, GateKind.GENERIC2})


class Gate(NamedTuple):
    kind: GateKind
    qubits: tuple[int, ...]
    param: int | None = None


class ParseError(ValueError):
    """Malformed text input; carries the 1-based offending line number."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


def validate_gate(g: Gate) -> None:
    if g.kind in _ONE_QUBIT:
        if len(g.qubits) != 1:
            raise ValueError(f"{g.kind.value} takes one wire, got {g.qubits}")
        if g.param is not None:
            raise ValueError(f"{g.kind.value} takes no parameter")
    elif g.kind in _TWO_QUBIT:
        if len(g.qubits) != 2 or g.qubits[0] == g.qubits[1]:
            raise ValueError(f"{g.kind.value} needs two distinct wires, got {g.qubits}")
        if g.kind is GateKind.CPHASE:
            if not isinstance(g.param, int) or g.param < 1:
                raise ValueError(f"cphase needs an integer parameter k >= 1, got {g.param}")
        elif g.param is not None:
            raise ValueError(f"{g.kind.value} takes no parameter")
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown gate kind {g.kind}")
    for q in g.qubits:
        if not isinstance(q, int) or q < 0:
            raise ValueError(f"wire indices must be non-negative integers, got {g.qubits}")


def h(q: int) -> Gate:
    g = Gate(GateKind.H, (q,))
    validate_gate(g)
    return g


def p(q: int) -> Gate:
    g = Gate(GateKind.P, (q,))
    validate_gate(g)
    return g


def cnot(control: int, target: int) -> Gate:
    g = Gate(GateKind.CNOT, (control, target))
    validate_gate(g)
    return g


def cz(a: int, b: int) -> Gate:
    g = Gate(GateKind.CZ, (min(a, b), max(a, b)))
    validate_gate(g)
    return g


def swap(a: int, b: int) -> Gate:
    g = Gate(GateKind.SWAP, (min(a, b), max(a, b)))
    validate_gate(g)
    return g


def cphase(k: int, a: int, b: int) -> Gate:
    g = Gate(GateKind.CPHASE, (min(a, b), max(a, b)), k)
    validate_gate(g)
    return g


def generic2(a: int, b: int) -> Gate:
    g = Gate(GateKind.GENERIC2, (min(a, b), max(a, b)))
    validate_gate(g)
    return g


def is_two_qubit(g: Gate) -> bool:
    return g.kind in _TWO_QUBIT


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over a fixed number of wires."""

    n_wires: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        if self.n_wires < 1:
            raise ValueError(f"n_wires must be >= 1, got {self.n_wires}")
        for g in self.gates:
            validate_gate(g)
            for q in g.qubits:
                if q >= self.n_wires:
                    raise ValueError(f"gate {g} uses wire {q} outside 0..{self.n_wires - 1}")

    def __len__(self) -> int:
        return len(self.gates)

    def count(self, kind: GateKind) -> int:
        return sum(1 for g in self.gates if g.kind is kind)

    def depth(self) -> int:
        free: dict[int, int] = {}
        d = 0
        for g in self.gates:
            layer = 1 + max((free.get(q, 0) for q in g.qubits), default=0)
            for q in g.qubits:
                free[q] = layer
            if layer > d:
                d = layer
        return d

    def extended(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_wires, self.gates + tuple(gates))


def layers(circuit: Circuit) -> list[list[int]]:
    """ASAP layering; returns gate indices grouped by layer."""
    free: dict[int, int] = {}
    out: list[list[int]] = []
    for i, g in enumerate(circuit.gates):
        layer = max((free.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            free[q] = layer + 1
        if layer == len(out):
            out.append([])
        out[layer].append(i)
    return out


def two_qubit_layer_count(circuit: Circuit) -> int:
    """Number of ASAP layers that contain at least one two-qubit gate."""
    count = 0
    for layer in layers(circuit):
        if any(is_two_qubit(circuit.gates[i]) for i in layer):
            count += 1
    return count


def generic_depth(circuit: Circuit) -> int:
    """Depth in merged two-qubit units.

    A two-qubit gate immediately followed (on both wires) by a SWAP of the
    same pair counts as one unit, as does a bare SWAP or an unmerged gate.
    Single-qubit gates are treated as absorbed into neighboring units and do
    not count.
    """
    units: list[tuple[int, int]] = []
    last_on_wire: dict[int, int] = {}
    fusable: dict[tuple[int, int], int] = {}
    for g in circuit.gates:
        if not is_two_qubit(g):
            continue
        pair = (min(g.qubits), max(g.qubits))
        if g.kind is GateKind.SWAP:
            k = fusable.get(pair)
            if k is not None and last_on_wire[pair[0]] == k and last_on_wire[pair[1]] == k:
                del fusable[pair]  # the swap joins the preceding gate's unit
                continue
        idx = len(units)
        units.append(pair)
        last_on_wire[pair[0]] = idx
        last_on_wire[pair[1]] = idx
        if g.kind is GateKind.SWAP:
            fusable.pop(pair, None)
        else:
            fusable[pair] = idx
    free: dict[int, int] = {}
    d = 0
    for a, b in units:
        layer = 1 + max(free.get(a, 0), free.get(b, 0))
        free[a] = layer
        free[b] = layer
        if layer > d:
            d = layer
    return d


class ArchKind(Enum):
    LNN = "lnn"
    GRID = "grid"
    GRAPH = "graph"


@dataclass(frozen=True)
class Architecture:
    """Undirected coupling graph over physical sites."""

    kind: ArchKind
    n_sites: int
    edges: frozenset[tuple[int, int]]
    rows: int = 0
    cols: int = 0
    max_degree: int = 0

    @staticmethod
    def lnn(n: int) -> "Architecture":
        if n < 1:
            raise ValueError(f"lnn needs n >= 1, got {n}")
        edges = frozenset((i, i + 1) for i in range(n - 1))
        return Architecture(ArchKind.LNN, n, edges, max_degree=2 if n > 2 else max(n - 1, 0))

    @staticmethod
    def grid(rows: int, cols: int) -> "Architecture":
        if rows < 1 or cols < 1:
            raise ValueError(f"grid needs positive dimensions, got {rows}x{cols}")
        edges = set()
        for r in range(rows):
            for c in range(cols):
                s = r * cols + c
                if c + 1 < cols:
                    edges.add((s, s + 1))
                if r + 1 < rows:
                    edges.add((s, s + cols))
        deg = _max_degree(rows * cols, edges)
        return Architecture(ArchKind.GRID, rows * cols, frozenset(edges), rows, cols, deg)

    @staticmethod
    def graph(n: int, edges: Iterable[tuple[int, int]]) -> "Architecture":
        if n < 1:
            raise ValueError(f"graph needs n >= 1, got {n}")
        norm = set()
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise ValueError(f"bad edge ({a}, {b}) for {n} sites")
            norm.add((min(a, b), max(a, b)))
        if n > 1 and not _connected(n, norm):
            raise ValueError("graph architecture must be connected")
        return Architecture(ArchKind.GRAPH, n, frozenset(norm), max_degree=_max_degree(n, norm))

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges


def _max_degree(n: int, edges: Iterable[tuple[int, int]]) -> int:
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    return max(deg, default=0)


def _connected(n: int, edges: set[tuple[int, int]]) -> bool:
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


class Violation(NamedTuple):
    gate_index: int
    pair: tuple[int, int]


class ValidationReport(NamedTuple):
    ok: bool
    violation: Violation | None = None


def validate_on(circuit: Circuit, arch: Architecture) -> ValidationReport:
    """Check every two-qubit gate of `circuit` sits on an edge of `arch`."""
    if circuit.n_wires != arch.n_sites:
        raise ValueError(
            f"circuit has {circuit.n_wires} wires but architecture has {arch.n_sites} sites"
        )
    for i, g in enumerate(circuit.gates):
        if is_two_qubit(g) and not arch.adjacent(*g.qubits):
            pair = (min(g.qubits), max(g.qubits))
            return ValidationReport(False, Violation(i, pair))
    return ValidationReport(True)


@dataclass(frozen=True)
class ScheduledCircuit:
    """A circuit bound to an architecture, with the final wire placement.

    final_map[l] is the site holding logical wire l after execution; wires
    start at sites equal to their own index.
    """

    circuit: Circuit
    arch: Architecture
    final_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.final_map) != list(range(self.arch.n_sites)):
            raise ValueError(f"final_map {self.final_map} is not a permutation")
        report = validate_on(self.circuit, self.arch)
        if not report.ok:
            v = report.violation
            raise ValueError(f"gate {v.gate_index} on non-adjacent pair {v.pair}")


def invert_permutation(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


def swap_flow_map(circuit: Circuit) -> tuple[int, ...]:
    """Final placement implied by the SWAP gates alone (logical -> site)."""
    pos = list(range(circuit.n_wires))  # site -> logical
    for g in circuit.gates:
        if g.kind is GateKind.SWAP:
            a, b = g.qubits
            pos[a], pos[b] = pos[b], pos[a]
    return invert_permutation(pos)


def prune_trailing_swap_layers(sc: ScheduledCircuit) -> ScheduledCircuit:
    """Drop trailing all-SWAP layers and adjust final_map accordingly."""
    grouped = layers(sc.circuit)
    keep = len(grouped)
    while keep > 0 and all(
        sc.circuit.gates[i].kind is GateKind.SWAP for i in grouped[keep - 1]
    ):
        keep -= 1
    kept_indices = sorted(i for layer in grouped[:keep] for i in layer)
    circuit = Circuit(sc.circuit.n_wires, tuple(sc.circuit.gates[i] for i in kept_indices))
    return ScheduledCircuit(circuit, sc.arch, swap_flow_map(circuit))


def route_permutation(target: Sequence[int], arch: Architecture) -> ScheduledCircuit:
    """SWAP network on a line sending logical wire l to site target[l].

    Odd-even transposition sort; depth is at most n.
    """
    if arch.kind is not ArchKind.LNN:
        raise ValueError("route_permutation supports LNN architectures only")
    n = arch.n_sites
    if sorted(target) != list(range(n)):
        raise ValueError(f"target {tuple(target)} is not a permutation of 0..{n - 1}")
    pos = list(range(n))  # site -> logical
    gates: list[Gate] = []
    for parity in range(n):
        moved = False
        for i in range(parity % 2, n - 1, 2):
            if target[pos[i]] > target[pos[i + 1]]:
                gates.append(swap(i, i + 1))
                pos[i], pos[i + 1] = pos[i + 1], pos[i]
                moved = True
        if not moved and all(target[pos[i]] == i for i in range(n)):
            break
    return ScheduledCircuit(Circuit(n, tuple(gates)), arch, tuple(target))


class ChainNotFoundError(ValueError):
    pass


def embed_chain(arch: Architecture, node_budget: int = 1_000_000) -> list[int]:
    """Hamiltonian path through the architecture, as a list of sites.

    LNN is the identity, grids use a boustrophedon sweep, and general graphs
    run an exact backtracking search bounded by `node_budget` expansions.
    """
    if arch.kind is ArchKind.LNN:
        return list(range(arch.n_sites))
    if arch.kind is ArchKind.GRID:
        path = []
        for r in range(arch.rows):
            cols = range(arch.cols) if r % 2 == 0 else range(arch.cols - 1, -1, -1)
            path.extend(r * arch.cols + c for c in cols)
        return path
    n = arch.n_sites
    if n == 1:
        return [0]
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in arch.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort(key=lambda w: (len(adj[w]), w))
    budget = node_budget

    def extend(path: list[int], used: list[bool]) -> list[int] | None:
        nonlocal budget
        if len(path) == n:
            return path
        for w in adj[path[-1]]:
            if used[w]:
                continue
            if budget <= 0:
                raise ChainNotFoundError(
                    f"chain search exhausted its budget of {node_budget} expansions"
                )
            budget -= 1
            used[w] = True
            path.append(w)
            found = extend(path, used)
            if found is not None:
                return found
            path.pop()
            used[w] = False
        return None

    for start in sorted(range(n), key=lambda v: (len(adj[v]), v)):
        used = [False] * n
        used[start] = True
        found = extend([start], used)
        if found is not None:
            return found
    raise ChainNotFoundError("architecture has no Hamiltonian path")


# --- text formats ---------------------------------------------------------

_KIND_BY_NAME = {k.value: k for k in GateKind}


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def parse_circuit(text: str) -> Circuit:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty circuit file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "qubits":
        raise ParseError(lineno, f"expected 'qubits N', got {head!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(lineno, f"bad qubit count {parts[1]!r}") from None
    if n < 1:
        raise ParseError(lineno, f"qubit count must be >= 1, got {n}")
    gates = []
    for lineno, line in lines[1:]:
        toks = line.split()
        kind = _KIND_BY_NAME.get(toks[0])
        if kind is None:
            raise ParseError(lineno, f"unknown gate {toks[0]!r}")
        want = 1 if kind in _ONE_QUBIT else (3 if kind is GateKind.CPHASE else 2)
        if len(toks) - 1 != want:
            raise ParseError(lineno, f"{toks[0]} takes {want} arguments, got {len(toks) - 1}")
        try:
            args = [int(t) for t in toks[1:]]
        except ValueError:
            raise ParseError(lineno, f"non-integer argument in {line!r}") from None
        try:
            if kind is GateKind.CPHASE:
                g = cphase(args[0], args[1], args[2])
            elif kind in _SYMMETRIC:
                g = Gate(kind, (min(args), max(args)))
                validate_gate(g)
            else:
                g = Gate(kind, tuple(args))
                validate_gate(g)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        for q in g.qubits:
            if q >= n:
                raise ParseError(lineno, f"wire {q} outside 0..{n - 1}")
        gates.append(g)
    return Circuit(n, tuple(gates))


def emit_circuit(circuit: Circuit) -> str:
    out = [f"qubits {circuit.n_wires}"]
    for g in circuit.gates:
        if g.kind is GateKind.CPHASE:
            out.append(f"cphase {g.param} {g.qubits[0]} {g.qubits[1]}")
        else:
            out.append(" ".join([g.kind.value, *map(str, g.qubits)]))
    return "\n".join(out) + "\n"


def parse_architecture(text: str) -> Architecture:
    lines = _content_lines(text)
    if not lines:
        raise ParseError(1, "empty architecture file")
    lineno, head = lines[0]
    toks = head.split()
    try:
        if toks[0] == "lnn" and len(toks) == 2:
            if len(lines) > 1:
                raise ParseError(lines[1][0], "unexpected line after 'lnn N'")
            return Architecture.lnn(int(toks[1]))
        if toks[0] == "grid" and len(toks) == 3:
            if len(lines) > 1:
                raise ParseError(lines[1][0], "unexpected line after 'grid R C'")
            return Architecture.grid(int(toks[1]), int(toks[2]))
        if toks[0] == "graph" and len(toks) == 2:
            n = int(toks[1])
            edges = []
            for lno, line in lines[1:]:
                etoks = line.split()
                if etoks[0] != "edge" or len(etoks) != 3:
                    raise ParseError(lno, f"expected 'edge a b', got {line!r}")
                edges.append((int(etoks[1]), int(etoks[2])))
            return Architecture.graph(n, edges)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None
    raise ParseError(lineno, f"expected 'lnn N', 'grid R C' or 'graph N', got {head!r}")


def emit_architecture(arch: Architecture) -> str:
    if arch.kind is ArchKind.LNN:
        return f"lnn {arch.n_sites}\n"
    if arch.kind is ArchKind.GRID:
        return f"grid {arch.rows} {arch.cols}\n"
    lines = [f"graph {arch.n_sites}"]
    lines.extend(f"edge {a} {b}" for a, b in sorted(arch.edges))
    return "\n".join(lines) + "\n"


def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2 text for the circuit; one-way (no importer)."""
    out = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_wires}];",
    ]
    for g in circuit.gates:
        a = g.qubits[0]
        if g.kind is GateKind.H:
            out.append(f"h q[{a}];")
        elif g.kind is GateKind.P:
            out.append(f"s q[{a}];")
        elif g.kind is GateKind.CNOT:
            out.append(f"cx q[{a}],q[{g.qubits[1]}];")
        elif g.kind is GateKind.CZ:
            out.append(f"cz q[{a}],q[{g.qubits[1]}];")
        elif g.kind is GateKind.SWAP:
            out.append(f"swap q[{a}],q[{g.qubits[1]}];")
        elif g.kind is GateKind.CPHASE:
            denom = 2 ** (g.param - 1)
            angle = "pi" if denom == 1 else f"pi/{denom}"
            out.append(f"cu1({angle}) q[{a}],q[{g.qubits[1]}];")
        else:
            raise ValueError("generic two-qubit placeholders cannot be exported to QASM")
    return "\n".join(out) + "\n"


__all__ = [
    "Architecture",
    "ArchKind",
    "ChainNotFoundError",
    "Circuit",
    "Gate",
    "GateKind",
    "ParseError",
    "ScheduledCircuit",
    "ValidationReport",
    "Violation",
    "cnot",
    "cphase",
    "cz",
    "embed_chain",
    "emit_architecture",
    "emit_circuit",
    "generic2",
    "generic_depth",
    "h",
    "invert_permutation",
    "is_two_qubit",
    "layers",
    "p",
    "parse_architecture",
    "parse_circuit",
    "prune_trailing_swap_layers",
    "route_permutation",
    "swap",
    "swap_flow_map",
    "to_qasm",
    "two_qubit_layer_count",
    "validate_gate",
    "validate_on",
]
