"""Reference semantics: dense statevector simulation and GF(2) gate action.

These routines are deliberately straightforward. The schedulers in this
package are checked against them, so they avoid every shortcut the
schedulers use and share nothing with them beyond the gate IR and the
GF2Matrix container.

Basis convention: wire 0 is the least significant bit of the basis index,
so state index x encodes wire w as bit (x >> w) & 1.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

import numpy as np

from .core import Circuit, Gate, GateKind
from .linsynth import GF2Matrix

MAX_SIM_WIRES = 14
MAX_UNITARY_WIRES = 9

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_P = np.array([[1, 0], [0, 1j]], dtype=complex)


def _axis(n: int, wire: int) -> int:
    # after reshaping to [2] * n the first axis is the most significant bit
    return n - 1 - wire


def apply_gate(state: np.ndarray, g: Gate, n: int) -> np.ndarray:
    """Apply one gate to a state of shape (2**n,) or (2**n, batch).

    Works in place on the given buffer where possible; callers that need the
    original should pass a copy. simulate and circuit_unitary do.
    """
    batched = state.ndim == 2
    batch = state.shape[1] if batched else 1
    psi = state.reshape([2] * n + [batch])
    if g.kind is GateKind.H or g.kind is GateKind.P:
        ax = _axis(n, g.qubits[0])
        psi = np.moveaxis(psi, ax, 0)
        m = _H if g.kind is GateKind.H else _P
        psi = np.tensordot(m, psi, axes=([1], [0]))
        psi = np.moveaxis(psi, 0, ax)
    elif g.kind is GateKind.GENERIC2:
        raise ValueError("generic two-qubit placeholders have no fixed unitary")
    else:
        a, b = g.qubits
        psi = np.moveaxis(psi, (_axis(n, a), _axis(n, b)), (0, 1))
        if g.kind is GateKind.CNOT:
            psi[1] = psi[1, ::-1]
        elif g.kind is GateKind.CZ:
            psi[1, 1] = -psi[1, 1]
        elif g.kind is GateKind.SWAP:
            tmp = psi[0, 1].copy()
            psi[0, 1] = psi[1, 0]
            psi[1, 0] = tmp
        elif g.kind is GateKind.CPHASE:
            psi[1, 1] = cmath.exp(2j * math.pi / 2**g.param) * psi[1, 1]
        else:  # pragma: no cover - enum is closed
            raise ValueError(f"unknown gate kind {g.kind}")
        psi = np.moveaxis(psi, (0, 1), (_axis(n, a), _axis(n, b)))
    out = psi.reshape(2**n, batch)
    return out if batched else out[:, 0]


def simulate(circuit: Circuit, state: np.ndarray | None = None) -> np.ndarray:
    """Run the circuit on `state` (default |0...0>); returns a fresh array."""
    n = circuit.n_wires
    if n > MAX_SIM_WIRES:
        raise ValueError(f"dense simulation limited to {MAX_SIM_WIRES} wires, got {n}")
    if state is None:
        state = np.zeros(2**n, dtype=complex)
        state[0] = 1.0
    else:
        state = np.array(state, dtype=complex)
        if state.shape[0] != 2**n:
            raise ValueError(f"state has dimension {state.shape[0]}, expected {2**n}")
    for g in circuit.gates:
        state = apply_gate(state, g, n)
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full unitary from simulating all basis columns; refuses n > 9."""
    n = circuit.n_wires
    if n > MAX_UNITARY_WIRES:
        raise ValueError(f"dense unitary limited to {MAX_UNITARY_WIRES} wires, got {n}")
    u = np.eye(2**n, dtype=complex)
    for g in circuit.gates:
        u = apply_gate(u, g, n)
    return u


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Unitary relabeling wires by `perm` (wire w goes to wire perm[w])."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{tuple(perm)} is not a permutation")
    dim = 2**n
    sigma = np.zeros(dim, dtype=np.int64)
    for x in range(dim):
        y = 0
        for w in range(n):
            if (x >> w) & 1:
                y |= 1 << perm[w]
        sigma[x] = y
    m = np.zeros((dim, dim), dtype=complex)
    m[sigma, np.arange(dim)] = 1.0
    return m


def matrices_equiv(
    u1: np.ndarray,
    u2: np.ndarray,
    out_perm: Sequence[int] | None = None,
    tol: float = 1e-10,
) -> bool:
    """True when u1 equals (relabel by out_perm) . u2 up to global phase.

    The phase is fixed at the largest-magnitude entry of u1.
    """
    if out_perm is not None:
        u2 = permutation_matrix(out_perm) @ u2
    if u1.shape != u2.shape:
        return False
    idx = np.unravel_index(np.argmax(np.abs(u1)), u1.shape)
    if abs(u1[idx]) < tol or abs(u2[idx]) < tol:
        return False
    phase = u1[idx] / u2[idx]
    if abs(abs(phase) - 1.0) > tol:
        return False
    return bool(np.max(np.abs(u1 - phase * u2)) <= tol)


def unitary_equiv(
    c1: Circuit,
    c2: Circuit,
    relabel: Sequence[int] | None = None,
    tol: float = 1e-10,
) -> bool:
    """Dense-unitary equivalence of two circuits up to output relabeling.

    relabel permutes the wires of c2's output before comparison against c1.
    """
    if c1.n_wires != c2.n_wires:
        return False
    return matrices_equiv(circuit_unitary(c1), circuit_unitary(c2), relabel, tol)


def states_equiv(s1: np.ndarray, s2: np.ndarray, tol: float = 1e-10) -> bool:
    """True when the arrays match up to one global phase (batches share it)."""
    flat1 = np.asarray(s1).reshape(-1)
    flat2 = np.asarray(s2).reshape(-1)
    if flat1.shape != flat2.shape:
        return False
    i = int(np.argmax(np.abs(flat1)))
    if abs(flat1[i]) < tol or abs(flat2[i]) < tol:
        return False
    phase = flat1[i] / flat2[i]
    if abs(abs(phase) - 1.0) > tol:
        return False
    return bool(np.max(np.abs(flat1 - phase * flat2)) <= tol)


def dft_matrix(n_wires: int) -> np.ndarray:
    """Discrete Fourier transform on 2**n_wires points, unitary normalization."""
    dim = 2**n_wires
    idx = np.arange(dim)
    return np.exp(2j * math.pi * np.outer(idx, idx) / dim) / math.sqrt(dim)


def bit_reversal_permutation(n_wires: int) -> tuple[int, ...]:
    """Wire relabeling w -> n-1-w."""
    return tuple(n_wires - 1 - w for w in range(n_wires))


def gf2_action(circuit: Circuit) -> GF2Matrix:
    """Transfer matrix of a CNOT/SWAP circuit over GF(2).

    Row t records which inputs feed output wire t: starting from the
    identity, CNOT(c, t) adds row c into row t and SWAP exchanges two rows.
    """
    rows = [1 << i for i in range(circuit.n_wires)]
    for g in circuit.gates:
        if g.kind is GateKind.CNOT:
            c, t = g.qubits
            rows[t] ^= rows[c]
        elif g.kind is GateKind.SWAP:
            a, b = g.qubits
            rows[a], rows[b] = rows[b], rows[a]
        else:
            raise ValueError(f"gf2_action handles cnot and swap only, got {g.kind.value}")
    return GF2Matrix(circuit.n_wires, tuple(rows))


__all__ = [
    "MAX_SIM_WIRES",
    "MAX_UNITARY_WIRES",
    "apply_gate",
    "bit_reversal_permutation",
    "circuit_unitary",
    "dft_matrix",
    "gf2_action",
    "matrices_equiv",
    "permutation_matrix",
    "simulate",
    "states_equiv",
    "unitary_equiv",
]
