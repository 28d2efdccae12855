"""Density matrix simulation under the calibration-driven noise model.

A batch of density matrices is stored flat with shape (B, 4**n). The first n
binary axes address the row index and the last n the column index, with the
same bit convention as the statevector simulator.
"""
import numpy as np

from . import channels, statevector
from ..const import ConfigError, SimulationError

# Largest register simulated with density matrices.
MAX_NOISY_QUBITS = 8


class DensityMatrix(object):
    """Mixed state of a register."""

    def __init__(self, num_qubits, entries=None):
        self.num_qubits = num_qubits
        if entries is None:
            entries = zero_density(num_qubits, 1)[0].reshape(2 ** num_qubits, 2 ** num_qubits)

        self.entries = np.asarray(entries, dtype=np.complex128)

    @classmethod
    def from_state(cls, state):
        return cls(state.num_qubits, np.outer(state.amplitudes, state.amplitudes.conj()))

    @property
    def trace(self):
        return complex(np.trace(self.entries))

    def is_hermitian(self, atol=1e-10):
        return np.allclose(self.entries, self.entries.conj().T, atol=atol)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.entries)

    def expectation_z(self, qubit):
        rho = self.entries.reshape(1, -1)
        return float(expectation_z_batch(rho, qubit, self.num_qubits)[0])


def zero_density(num_qubits, batch):
    """Batch of |0...0><0...0| density matrices."""
    rho = np.zeros((batch, 4 ** num_qubits), dtype=np.complex128)
    rho[:, 0] = 1
    return rho


def _row_axes(qubits, num_qubits):
    return [statevector.qubit_axis(qubit, num_qubits) for qubit in qubits]


def _column_axes(qubits, num_qubits):
    return [num_qubits + statevector.qubit_axis(qubit, num_qubits) for qubit in qubits]


def apply_unitary(rho, matrix, qubits, num_qubits):
    """rho -> U rho U^dagger for a (batched) gate matrix."""
    rho = statevector.apply_on_axes(rho, matrix, _row_axes(qubits, num_qubits), 2 * num_qubits)
    return statevector.apply_on_axes(rho, np.conj(matrix), _column_axes(qubits, num_qubits), 2 * num_qubits)


def apply_channel(rho, channel, qubit, num_qubits):
    """rho -> sum K rho K^dagger for a single-qubit channel."""
    if channel.is_identity():
        return rho

    result = np.zeros_like(rho)
    for operator in channel.operators:
        result += apply_unitary(rho, operator, [qubit], num_qubits)

    return result


def expectation_z_batch(rho, qubit, num_qubits):
    """<Z> on one qubit for a batch of density matrices."""
    dimension = 2 ** num_qubits
    diagonal = np.real(np.diagonal(rho.reshape(-1, dimension, dimension), axis1=1, axis2=2))
    populations = diagonal.reshape(rho.shape[0], -1, 2, 2 ** qubit)
    return np.sum(populations[:, :, 0, :] - populations[:, :, 1, :], axis=(1, 2))


def check_state(rho, num_qubits, atol=1e-9):
    """Raise SimulationError when a batch of density matrices lost trace or hermiticity."""
    dimension = 2 ** num_qubits
    matrices = rho.reshape(-1, dimension, dimension)
    traces = np.trace(matrices, axis1=1, axis2=2)
    if np.any(np.abs(traces - 1) > atol):
        raise SimulationError("Density matrix trace drifted: {}.".format(traces))
    if np.any(np.abs(matrices - np.conj(np.swapaxes(matrices, 1, 2))) > atol):
        raise SimulationError("Density matrix is no longer hermitian.")


class NoisySchedule(object):
    """Channels applied after each gate of a circuit on a given set of physical qubits."""

    def __init__(self, circuit, noise, mapping, literal=False):
        if circuit.num_qubits > MAX_NOISY_QUBITS:
            raise SimulationError("Noisy simulation is limited to {} qubits, got {}.".format(
                MAX_NOISY_QUBITS, circuit.num_qubits))
        if len(mapping) < circuit.num_qubits:
            raise ConfigError("Qubit mapping {} does not cover {} qubits.".format(
                mapping, circuit.num_qubits))
        if len(set(mapping)) != len(mapping):
            raise ConfigError("Qubit mapping {} is not injective.".format(mapping))

        self.circuit = circuit
        self.mapping = list(mapping)
        self.after_gate = [self._gate_noise(op, noise, literal) for op in circuit.ops]

        readout = noise.qubit(self.mapping[circuit.measured_qubit]).readout_error
        self.readout = channels.bit_flip(readout)

    def _gate_noise(self, op, noise, literal):
        physical = [self.mapping[qubit] for qubit in op.qubits]
        if len(physical) == 1:
            calibration = noise.qubit(physical[0])
            duration = calibration.single_gate_time
            errors = [calibration.single_gate_error]
        else:
            coupling = noise.coupling(*physical)
            duration = coupling.two_gate_time
            errors = [coupling.two_gate_error / 2.0] * 2

        result = []
        for logical, qubit, error in zip(op.qubits, physical, errors):
            calibration = noise.qubit(qubit)
            relaxation = channels.thermal_relaxation(
                duration, calibration.t1, calibration.t2, literal=literal)
            fidelity = channels.average_fidelity_tr(duration, calibration.t1, calibration.t2)
            probability = channels.depolarization_probability(fidelity, error)
            result.append((logical, relaxation.then(channels.depolarizing(0.75 * probability))))

        return result


def run_noisy_batch(circuit, params, xs, schedule, check=False):
    """Noisy <Z> of the measured qubit for every input in xs.

    :param schedule: NoisySchedule built for the circuit
    :param check: Verify trace and hermiticity after every step
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    params = np.asarray(params, dtype=np.float64)
    num_qubits = circuit.num_qubits
    rho = zero_density(num_qubits, len(xs))
    for op, noise in zip(circuit.ops, schedule.after_gate):
        rho = apply_unitary(rho, statevector.op_matrix(op, params, xs), op.qubits, num_qubits)
        for qubit, channel in noise:
            rho = apply_channel(rho, channel, qubit, num_qubits)

        if check:
            check_state(rho, num_qubits)

    rho = apply_channel(rho, schedule.readout, circuit.measured_qubit, num_qubits)
    values = expectation_z_batch(rho, circuit.measured_qubit, num_qubits)
    return np.clip(values, -1.0, 1.0)


def run_noisy(circuit, params, x, noise, mapping, check=False):
    """Noisy <Z> of the measured qubit for a single input."""
    schedule = NoisySchedule(circuit, noise, mapping)
    return float(run_noisy_batch(circuit, params, [x], schedule, check=check)[0])
