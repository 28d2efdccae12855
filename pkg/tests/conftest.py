import numpy as np
import pytest

from pqcfit.simulator import gates
from pqcfit.simulator.circuit import DATA_INPUT, Circuit, Fixed, Trainable


def dense_operator(matrix, qubits, num_qubits):
    """Full 2**n operator of a gate, built entry by entry."""
    dimension = 2 ** num_qubits
    operator = np.zeros((dimension, dimension), dtype=np.complex128)
    for column in range(dimension):
        local = 0
        for qubit in qubits:
            local = 2 * local + ((column >> qubit) & 1)
        for output in range(2 ** len(qubits)):
            row = column
            for position, qubit in enumerate(qubits):
                bit = (output >> (len(qubits) - 1 - position)) & 1
                row = (row & ~(1 << qubit)) | (bit << qubit)
            operator[row, column] += matrix[output, local]

    return operator


def make_random_circuit(rng, num_qubits, depth, kinds=None):
    """Random circuit touching the requested gate kinds."""
    if kinds is None:
        kinds = gates.GATE_KINDS if num_qubits > 1 else (gates.RX, gates.RY, gates.RZ, gates.H)

    circuit = Circuit(num_qubits)
    next_index = 0
    for _ in range(depth):
        kind = kinds[rng.integers(len(kinds))]
        qubits = rng.choice(num_qubits, size=gates.arity(kind), replace=False)
        binding = None
        if kind in gates.PARAMETRIZED:
            choice = rng.integers(4)
            if choice == 0 and kind == gates.RX:
                binding = DATA_INPUT
            elif choice == 1:
                binding = Fixed(float(rng.uniform(0, 2 * np.pi)))
            else:
                binding = Trainable(next_index)
                next_index += 1
        circuit.add(kind, qubits, binding)

    return circuit.validate()


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(1234))


@pytest.fixture
def random_circuit():
    return make_random_circuit


@pytest.fixture
def dense():
    return dense_operator
