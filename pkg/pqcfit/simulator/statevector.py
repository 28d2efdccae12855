"""Exact statevector simulation.

Bit i of a basis-state index addresses qubit i, so qubit 0 is the least
significant bit. Internally states are kept as a batch of shape (B, 2**n),
one row per data point, which lets a whole dataset be simulated in one pass.
"""
import numpy as np

from . import gates
from ..const import InvalidGateError


class StateVector(object):
    """Pure state of a register."""

    def __init__(self, num_qubits, amplitudes=None):
        self.num_qubits = num_qubits
        if amplitudes is None:
            amplitudes = zero_state(num_qubits, 1)[0]

        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if amplitudes.shape != (2 ** num_qubits,):
            raise ValueError("Expected {} amplitudes, got shape {}.".format(
                2 ** num_qubits, amplitudes.shape))

        self.amplitudes = amplitudes

    @property
    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self):
        return np.abs(self.amplitudes) ** 2

    def __repr__(self):
        return 'StateVector(num_qubits={}, amplitudes={})'.format(self.num_qubits, self.amplitudes)


def zero_state(num_qubits, batch):
    """Batch of |0...0> states."""
    psi = np.zeros((batch, 2 ** num_qubits), dtype=np.complex128)
    psi[:, 0] = 1
    return psi


def qubit_axis(qubit, num_qubits):
    """Tensor axis (after the batch axis) holding the given qubit."""
    return 1 + num_qubits - 1 - qubit


def apply_on_axes(flat, matrix, axes, num_axes):
    """Apply a (batched) matrix to selected binary axes of a batch of tensors.

    :param flat: Array of shape (B, 2**num_axes)
    :param matrix: Array of shape (d, d) or (B, d, d) with d = 2**len(axes)
    :param axes: Tensor axes (1-based, after the batch axis) the matrix acts on,
        the first axis being the most significant matrix index bit
    :param num_axes: Total number of binary axes
    """
    batch = flat.shape[0]
    count = len(axes)
    front = list(range(1, count + 1))
    tensor = flat.reshape((batch,) + (2,) * num_axes)
    tensor = np.moveaxis(tensor, axes, front)
    shape = tensor.shape
    tensor = np.matmul(matrix, tensor.reshape(batch, 2 ** count, -1))
    tensor = np.moveaxis(tensor.reshape(shape), front, axes)
    return tensor.reshape(batch, -1)


def apply_matrix(psi, matrix, qubits, num_qubits):
    """Apply a matrix acting on the given qubits to a batch of states."""
    axes = [qubit_axis(qubit, num_qubits) for qubit in qubits]
    return apply_on_axes(psi, matrix, axes, num_qubits)


def op_matrix(op, params, x):
    """Matrix of a gate operation, batched when x is an array and the gate reads it."""
    return gates.gate_matrix(op.kind, op.angle(params, x))


def _check_qubits(op, num_qubits):
    for qubit in op.qubits:
        if qubit >= num_qubits:
            raise InvalidGateError("Qubit {} out of range for {} qubits.".format(qubit, num_qubits))


def apply_gate(state, op, params, x):
    """Apply a single gate to a state.

    :param state: StateVector instance
    :param op: GateOp instance
    :param params: Trainable parameter vector
    :param x: Classical input substituted into DataInput bindings
    """
    _check_qubits(op, state.num_qubits)
    psi = apply_matrix(state.amplitudes[None, :], op_matrix(op, params, x), op.qubits, state.num_qubits)
    return StateVector(state.num_qubits, psi[0])


def run_batch(circuit, params, xs):
    """Run a circuit for every input in xs, returns states of shape (len(xs), 2**n)."""
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    params = np.asarray(params, dtype=np.float64)
    psi = zero_state(circuit.num_qubits, len(xs))
    for op in circuit.ops:
        psi = apply_matrix(psi, op_matrix(op, params, xs), op.qubits, circuit.num_qubits)

    return psi


def run(circuit, params, x):
    """Run a circuit from |0...0> and return the final state."""
    return StateVector(circuit.num_qubits, run_batch(circuit, params, [x])[0])


def expectation_z_batch(psi, qubit, num_qubits):
    """<Z> on one qubit for a batch of states."""
    if not 0 <= qubit < num_qubits:
        raise IndexError("Qubit {} out of range for {} qubits.".format(qubit, num_qubits))

    probabilities = (np.abs(psi) ** 2).reshape(psi.shape[0], -1, 2, 2 ** qubit)
    return np.sum(probabilities[:, :, 0, :] - probabilities[:, :, 1, :], axis=(1, 2))


def apply_z(psi, qubit, num_qubits):
    """Apply Pauli Z on one qubit to a batch of states."""
    signs = 1 - 2 * ((np.arange(2 ** num_qubits) >> qubit) & 1)
    return psi * signs[None, :]


def expectation_z(state, qubit):
    """<Z> on one qubit, in [-1, 1]."""
    value = expectation_z_batch(state.amplitudes[None, :], qubit, state.num_qubits)[0]
    return float(np.clip(value, -1.0, 1.0))


def model_values(circuit, params, xs):
    """Model f(x) for every input in xs."""
    psi = run_batch(circuit, params, xs)
    values = expectation_z_batch(psi, circuit.measured_qubit, circuit.num_qubits)
    return np.clip(values, -1.0, 1.0)


def model_value(circuit, params, x):
    """Model f(x) = <0|U^dagger Z U|0> on the measured qubit."""
    return float(model_values(circuit, params, [x])[0])
