"""Dense statevector reference, equivalence checks, and the GF(2) shadow."""

from random import Random

import numpy as np
import pytest

from chainforge.core import Circuit, cnot, cphase, cz, generic2, h, p, swap
from chainforge.linsynth import GF2Matrix
from chainforge.oracle import (
    MAX_SIM_WIRES,
    MAX_UNITARY_WIRES,
    bit_reversal_permutation,
    circuit_unitary,
    dft_matrix,
    gf2_action,
    permutation_matrix,
    simulate,
    states_equiv,
    unitary_equiv,
)

_SQ2 = 1.0 / np.sqrt(2.0)


def _basis(n: int, x: int) -> np.ndarray:
    state = np.zeros(1 << n, dtype=complex)
    state[x] = 1.0
    return state


def test_wire_zero_is_the_low_bit():
    out = simulate(Circuit(2, (h(0),)), _basis(2, 0))
    assert np.allclose(out, [_SQ2, _SQ2, 0, 0])
    out = simulate(Circuit(2, (h(1),)), _basis(2, 0))
    assert np.allclose(out, [_SQ2, 0, _SQ2, 0])


def test_cnot_targets_the_named_wire():
    c = Circuit(2, (cnot(0, 1),))
    assert np.allclose(simulate(c, _basis(2, 1)), _basis(2, 3))
    assert np.allclose(simulate(c, _basis(2, 2)), _basis(2, 2))
    c = Circuit(2, (cnot(1, 0),))
    assert np.allclose(simulate(c, _basis(2, 2)), _basis(2, 3))


def test_swap_exchanges_wire_values():
    c = Circuit(2, (swap(0, 1),))
    assert np.allclose(simulate(c, _basis(2, 1)), _basis(2, 2))
    assert np.allclose(simulate(c, _basis(2, 3)), _basis(2, 3))


def test_phase_gates():
    assert np.allclose(simulate(Circuit(1, (p(0),)), _basis(1, 1)), 1j * _basis(1, 1))
    assert np.allclose(simulate(Circuit(2, (cz(0, 1),)), _basis(2, 3)), -_basis(2, 3))
    # cphase(1) is exactly cz, cphase(2) applies i, cphase(3) the eighth root
    assert np.allclose(
        circuit_unitary(Circuit(2, (cphase(1, 0, 1),))),
        circuit_unitary(Circuit(2, (cz(0, 1),))),
    )
    out = simulate(Circuit(2, (cphase(2, 0, 1),)), _basis(2, 3))
    assert np.allclose(out, 1j * _basis(2, 3))
    out = simulate(Circuit(2, (cphase(3, 0, 1),)), _basis(2, 3))
    assert np.allclose(out, np.exp(1j * np.pi / 4) * _basis(2, 3))


def test_generic_placeholder_cannot_be_simulated():
    with pytest.raises(ValueError):
        simulate(Circuit(2, (generic2(0, 1),)))


def test_simulate_defaults_and_copies():
    out = simulate(Circuit(1, ()))
    assert np.allclose(out, _basis(1, 0))
    state = _basis(2, 1)
    before = state.copy()
    simulate(Circuit(2, (h(0), cnot(0, 1))), state)
    assert np.array_equal(state, before)


def test_simulate_batch_columns():
    c = Circuit(2, (h(0), cnot(0, 1)))
    batch = simulate(c, np.eye(4, dtype=complex))
    assert np.allclose(batch, circuit_unitary(c))


def test_wire_caps_are_enforced():
    with pytest.raises(ValueError):
        simulate(Circuit(MAX_SIM_WIRES + 1, ()))
    with pytest.raises(ValueError):
        circuit_unitary(Circuit(MAX_UNITARY_WIRES + 1, ()))


def test_permutation_matrix_moves_bits():
    assert np.allclose(
        permutation_matrix((1, 0)), circuit_unitary(Circuit(2, (swap(0, 1),)))
    )
    assert np.allclose(permutation_matrix((0, 1, 2)), np.eye(8))
    # wire 0 -> wire 2 sends basis index 1 to index 4
    m = permutation_matrix((2, 0, 1))
    assert m[4, 1] == 1.0


def test_unitary_equiv_ignores_global_phase():
    xz = Circuit(1, (p(0), p(0), h(0), p(0), p(0), h(0)))
    zx = Circuit(1, (h(0), p(0), p(0), h(0), p(0), p(0)))
    assert unitary_equiv(xz, zx, tol=1e-12)
    assert not unitary_equiv(xz, Circuit(1, (h(0),)))


def test_unitary_equiv_relabel_matches_final_map_convention():
    routed = Circuit(2, (cnot(0, 1), swap(0, 1)))
    flat = Circuit(2, (cnot(0, 1),))
    assert unitary_equiv(routed, flat, relabel=(1, 0))
    assert not unitary_equiv(routed, flat)
    assert unitary_equiv(Circuit(2, (swap(0, 1),)), Circuit(2, ()), relabel=(1, 0))


def test_states_equiv_phase_and_mismatch():
    plus = simulate(Circuit(1, (h(0),)))
    also_plus = np.exp(0.7j) * plus
    assert states_equiv(plus, also_plus)
    assert not states_equiv(plus, _basis(1, 0))


def test_dft_matrix_small_cases():
    assert np.allclose(dft_matrix(1), _SQ2 * np.array([[1, 1], [1, -1]]))
    w = 1j
    expect = 0.5 * np.array(
        [[w ** (j * k) for k in range(4)] for j in range(4)], dtype=complex
    )
    assert np.allclose(dft_matrix(2), expect)


def test_bit_reversal_permutation():
    assert bit_reversal_permutation(3) == (2, 1, 0)
    assert bit_reversal_permutation(1) == (0,)


def test_gf2_action_of_cnot_and_swap():
    a = gf2_action(Circuit(2, (cnot(0, 1),)))
    assert a == GF2Matrix.from_strings(["10", "11"])
    a = gf2_action(Circuit(3, (swap(0, 2),)))
    assert a == GF2Matrix.from_strings(["001", "010", "100"])
    with pytest.raises(ValueError):
        gf2_action(Circuit(2, (h(0),)))


def test_gf2_action_agrees_with_dense_on_random_circuits():
    rng = Random(31)
    for _ in range(25):
        n = rng.randint(2, 6)
        gates = []
        for _ in range(rng.randint(1, 30)):
            a, b = rng.sample(range(n), 2)
            gates.append(cnot(a, b) if rng.random() < 0.7 else swap(a, b))
        c = Circuit(n, tuple(gates))
        m = gf2_action(c)
        for _ in range(4):
            x = rng.randrange(1 << n)
            out = simulate(c, _basis(n, x))
            assert np.allclose(out, _basis(n, m.apply(x)))
