import numpy as np
import pytest

from pqcfit import ansatz, fourier
from pqcfit.ansatz import DqnnSpec, LayeredSpec
from pqcfit.const import ConfigError, InvalidGateError, UnsupportedStructureError
from pqcfit.simulator import gates
from pqcfit.simulator.circuit import DATA_INPUT, Circuit

# (n, L) -> (s, t, p) for RYRZ, 3 entanglement layers, zero layer, degree 12.
THREE_LAYER_CNOT = {
    (1, 12): (90, 0, 78),
    (2, 6): (96, 21, 84),
    (3, 4): (102, 30, 90),
    (4, 3): (108, 36, 96),
    (6, 2): (120, 45, 108),
    (12, 1): (156, 66, 144),
}
THREE_LAYER_CRX = {
    (1, 12): (90, 0, 78),
    (2, 6): (96, 21, 105),
    (3, 4): (102, 30, 120),
    (4, 3): (108, 36, 132),
    (6, 2): (120, 45, 153),
    (12, 1): (156, 66, 210),
}

# (n, L) -> (s, t, p) for RYRZ, 2 entanglement layers, zero layer.
TWO_LAYER_CNOT = {
    (1, 1): (9, 0, 8),
    (2, 1): (18, 4, 16),
    (2, 2): (28, 6, 24),
    (3, 2): (42, 12, 36),
    (3, 3): (57, 16, 48),
    (4, 3): (76, 24, 64),
}
TWO_LAYER_CRX = {
    (1, 1): (9, 0, 8),
    (2, 1): (18, 4, 20),
    (2, 2): (28, 6, 30),
    (3, 2): (42, 12, 48),
    (3, 3): (57, 16, 64),
    (4, 3): (76, 24, 88),
}


def _counts(num_qubits, num_layers, ent_gate, ent_layers):
    spec = LayeredSpec(num_qubits, num_layers, True, 'RYRZ', ent_gate, ent_layers)
    return tuple(ansatz.count_resources(ansatz.build(spec)))


@pytest.mark.parametrize('table, ent_gate, ent_layers', [
    (THREE_LAYER_CNOT, 'CNOT', 3),
    (THREE_LAYER_CRX, 'CRX', 3),
    (TWO_LAYER_CNOT, 'CNOT', 2),
    (TWO_LAYER_CRX, 'CRX', 2),
])
def test_layered_resource_tables(table, ent_gate, ent_layers):
    for (num_qubits, num_layers), expected in table.items():
        assert _counts(num_qubits, num_layers, ent_gate, ent_layers) == expected


def test_closed_forms_match_built_circuits():
    for num_qubits in (1, 2, 3, 5):
        for structure in ansatz.ENT_STRUCTURES:
            for style in ansatz.ENT_STYLES:
                for ent_gate in ansatz.ENTANGLEMENT_GATES:
                    spec = LayeredSpec(num_qubits, 2, num_qubits % 2 == 0, 'RYRZRY', ent_gate, 3, style, structure)
                    circuit = ansatz.build(spec)
                    assert ansatz.count_resources(circuit) == ansatz.expected_layered_counts(spec)


def test_wsw_single_qubit_circuit_order():
    circuit = ansatz.build(LayeredSpec(1, 1, True, 'RYRZ'))
    assert [op.kind for op in circuit.ops] == ['RY', 'RZ', 'RX', 'RY', 'RZ']
    assert circuit.ops[2].binding == DATA_INPUT
    assert circuit.num_params == 4


def test_entanglement_pairs():
    assert ansatz.entangling_pairs(4, 1, 'linear', 'simple') == [(0, 1), (1, 2), (2, 3)]
    assert ansatz.entangling_pairs(4, 1, 'cyclic', 'simple') == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert ansatz.entangling_pairs(4, 2, 'linear', 'strong') == [(0, 2), (1, 3)]
    assert ansatz.entangling_pairs(4, 2, 'cyclic', 'strong') == [(0, 2), (1, 3), (2, 0), (3, 1)]
    assert ansatz.entangling_pairs(4, 1, 'linear', 'alternating') == [(0, 1), (2, 3)]
    assert ansatz.entangling_pairs(4, 2, 'linear', 'alternating') == [(1, 2)]
    assert ansatz.entangling_pairs(4, 2, 'cyclic', 'alternating') == [(1, 2), (3, 0)]
    assert ansatz.entangling_pairs(2, 1, 'cyclic', 'simple') == [(0, 1)]
    assert ansatz.entangling_pairs(1, 1, 'cyclic', 'simple') == []


def test_cyclic_adds_one_gate_per_sub_block():
    for num_qubits in (3, 4):
        linear = ansatz.count_resources(ansatz.build(LayeredSpec(num_qubits, 2, True, 'RY', 'CAN', 2, 'linear')))
        cyclic = ansatz.count_resources(ansatz.build(LayeredSpec(num_qubits, 2, True, 'RY', 'CAN', 2, 'cyclic')))
        assert cyclic.two_qubit_gates - linear.two_qubit_gates == 3 * 2 * 3

    linear = ansatz.count_resources(ansatz.build(LayeredSpec(2, 2, True, 'RY', 'CNOT', 2, 'linear')))
    cyclic = ansatz.count_resources(ansatz.build(LayeredSpec(2, 2, True, 'RY', 'CNOT', 2, 'cyclic')))
    assert linear == cyclic


def test_three_qubit_cz_circuit():
    circuit = ansatz.build(LayeredSpec(3, 2, True, 'RY', 'CZ', 1, 'linear', 'simple'))
    kinds = [(op.kind, op.qubits) for op in circuit.ops]
    block = [('RY', (0,)), ('RY', (1,)), ('RY', (2,)), ('CZ', (0, 1)), ('CZ', (1, 2))]
    encoding = [('RX', (0,)), ('RX', (1,)), ('RX', (2,))]
    assert kinds == block + encoding + block + encoding + block
    assert circuit.measured_qubit == 2


def test_dqnn_counts():
    circuit = ansatz.build(DqnnSpec((2, 2, 2, 1)))
    counts = ansatz.count_resources(circuit)
    assert counts.two_qubit_gates == 30
    assert ansatz.max_degree(circuit) == 6
    assert circuit.measured_qubit == 6

    no_reupload = ansatz.build(DqnnSpec((6, 1), data_reupload=False))
    data_gates = [op for op in no_reupload.ops if op.is_data]
    assert len(data_gates) == 6
    assert all(op.qubits[0] < 6 for op in data_gates)

    smallest = ansatz.build(DqnnSpec((1, 1)))
    assert ansatz.max_degree(smallest) == 1
    assert ansatz.count_resources(smallest).two_qubit_gates == 3


def test_dqnn_output_unitary_repeats_with_zero_layer():
    with_zero = ansatz.build(DqnnSpec((1, 1), zero_layer=True, u1='RY'))
    without_zero = ansatz.build(DqnnSpec((1, 1), zero_layer=False, u1='RY'))
    assert [op.qubits for op in with_zero.ops[-2:]] == [(1,), (1,)]
    assert with_zero.num_params - without_zero.num_params == 2


def test_max_degree():
    assert ansatz.max_degree(ansatz.build(LayeredSpec(4, 3))) == 12
    circuit = Circuit(1).add(gates.RY, [0], DATA_INPUT)
    with pytest.raises(InvalidGateError):
        ansatz.max_degree(circuit)


def test_frequency_support_is_bounded(rng):
    specs = [
        LayeredSpec(2, 2, True, 'RYRZ', 'CRX', 2, 'cyclic', 'strong'),
        LayeredSpec(3, 1, False, 'RY', 'CAN', 1, 'linear', 'alternating'),
        DqnnSpec((2, 1)),
    ]
    for spec in specs:
        circuit = ansatz.build(spec)
        degree = ansatz.max_degree(circuit)
        for coefficients in fourier.sample_circuit_coefficients(circuit, degree + 3, 20, rng):
            assert np.all(np.abs(coefficients[degree + 1:]) < 1e-9)


DQNN_WIDTHS = [(1, 1), (2, 1), (3, 1), (1, 1, 1), (1, 2, 1), (2, 1, 1)]


def random_specs(rng, count):
    """Random layered and dQNN specs on at most 4 qubits with at most 3 layers."""
    def pick(options):
        return options[rng.integers(len(options))]

    specs = []
    for _ in range(count):
        specs.append(LayeredSpec(
            int(rng.integers(1, 5)),
            int(rng.integers(1, 4)),
            bool(rng.integers(2)),
            pick(sorted(ansatz.SINGLE_QUBIT_UNITARIES)),
            pick(sorted(ansatz.ENTANGLEMENT_GATES)),
            int(rng.integers(1, 3)),
            pick(ansatz.ENT_STYLES),
            pick(ansatz.ENT_STRUCTURES),
        ))
        specs.append(DqnnSpec(
            pick(DQNN_WIDTHS),
            bool(rng.integers(2)),
            bool(rng.integers(2)),
            pick(sorted(ansatz.SINGLE_QUBIT_UNITARIES)),
        ))

    return specs


def test_random_specs_have_no_frequencies_beyond_the_limit(rng):
    for spec in random_specs(rng, 10):
        circuit = ansatz.build(spec)
        degree = ansatz.max_degree(circuit)
        for coefficients in fourier.sample_circuit_coefficients(circuit, degree + 2, 3, rng):
            assert np.all(np.abs(coefficients[degree + 1:]) < 1e-9), spec


def test_sw_single_qubit_has_no_constant_term(rng):
    circuit = ansatz.build(LayeredSpec(1, 1, False, 'RYRZ'))
    for coefficients in fourier.sample_circuit_coefficients(circuit, 1, 50, rng):
        assert abs(coefficients[0]) < 1e-10


def test_invalid_specs():
    with pytest.raises(UnsupportedStructureError):
        ansatz.build(LayeredSpec(3, 1, ent_structure='strongc14'))
    with pytest.raises(ConfigError):
        ansatz.build(LayeredSpec(0, 1))
    with pytest.raises(ConfigError):
        ansatz.build(LayeredSpec(2, 1, ent_gate='SWAP'))
    with pytest.raises(ConfigError):
        ansatz.build(DqnnSpec((2, 2)))
    with pytest.raises(ConfigError):
        ansatz.build(DqnnSpec((1,)))


def test_spec_dict_round_trip():
    for spec in (LayeredSpec(3, 2, True, 'RY', 'CRX', 2, 'cyclic', 'strong'), DqnnSpec((2, 2, 1), False)):
        assert ansatz.spec_from_dict(ansatz.spec_to_dict(spec)) == spec

    with pytest.raises(ConfigError):
        ansatz.spec_from_dict({'type': 'layered', 'num_qubits': 2, 'depth': 3})
    with pytest.raises(ConfigError):
        ansatz.spec_from_dict({'type': 'tree'})
