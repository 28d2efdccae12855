"""Kraus channels for the calibration-driven noise model.

Times are given in nanoseconds (gate times) and microseconds (T1, T2).
"""
import logging

import numpy as np

from .gates import I2, PAULI_X, PAULI_Y, PAULI_Z

logger = logging.getLogger(__name__)

# Conversion between the units of gate times and relaxation times.
NS_PER_US = 1000.0


class KrausChannel(object):
    """Set of Kraus operators acting on one qubit."""

    def __init__(self, operators, name=None):
        self.operators = [np.asarray(operator, dtype=np.complex128) for operator in operators]
        self.name = name

    @property
    def dimension(self):
        return self.operators[0].shape[0]

    def completeness(self):
        """Sum of K^dagger K, the identity for a trace preserving channel."""
        return sum(operator.conj().T @ operator for operator in self.operators)

    def is_identity(self, atol=1e-15):
        """True when the channel acts as the identity map."""
        return len(self.operators) == 1 and np.allclose(
            self.operators[0], np.eye(self.dimension), rtol=0, atol=atol)

    def apply(self, rho):
        """Apply the channel to a single density matrix."""
        return sum(operator @ rho @ operator.conj().T for operator in self.operators)

    def then(self, other):
        """Channel applying self first and other afterwards."""
        operators = [second @ first for first in self.operators for second in other.operators]
        return KrausChannel(_drop_zero(operators), name='{}+{}'.format(self.name, other.name))

    def __repr__(self):
        return 'KrausChannel(name={!r}, operators={})'.format(self.name, len(self.operators))


def _drop_zero(operators):
    kept = [operator for operator in operators if np.any(operator != 0)]
    return kept or operators[:1]


def _check_probability(name, value):
    if value < 0 or value > 1:
        raise ValueError("{} must be in [0, 1], got {}.".format(name, value))


def amplitude_damping(gamma):
    """Amplitude damping channel, decay |1> -> |0> with probability gamma."""
    _check_probability('gamma', gamma)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=np.complex128)
    return KrausChannel(_drop_zero([k0, k1]), name='amplitude_damping')


def phase_damping(gamma):
    """Phase damping channel, populations are left untouched."""
    _check_probability('gamma', gamma)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0, 0], [0, np.sqrt(gamma)]], dtype=np.complex128)
    return KrausChannel(_drop_zero([k0, k1]), name='phase_damping')


def amplitude_damping_gamma(t, t1):
    """Decay probability 1 - exp(-t/T1) for a gate of duration t (ns)."""
    return 1.0 - np.exp(-(t / NS_PER_US) / t1)


def phase_damping_gamma(t, t1, t2, literal=False):
    """Dephasing probability matching a total coherence decay of exp(-t/T2).

    After amplitude damping the coherences carry exp(-t/2T1), the remaining
    factor is produced by 1 - gamma = exp(t/T1 - 2t/T2). With literal=True the
    first order form exp(-t/T1) - exp(-2t/T2) is returned instead.
    """
    t_us = t / NS_PER_US
    if literal:
        gamma = np.exp(-t_us / t1) - np.exp(-2 * t_us / t2)
    else:
        gamma = -np.expm1(t_us / t1 - 2 * t_us / t2)

    if gamma < 0:
        logger.warning("T2 exceeds 2*T1 (T1=%s, T2=%s), clamping dephasing to zero.", t1, t2)
        gamma = 0.0

    return float(min(gamma, 1.0))


def thermal_relaxation(t, t1, t2, literal=False):
    """Thermal relaxation at zero temperature: phase damping after amplitude damping."""
    gamma_ad = amplitude_damping_gamma(t, t1)
    gamma_pd = phase_damping_gamma(t, t1, t2, literal=literal)
    return amplitude_damping(gamma_ad).then(phase_damping(gamma_pd))


def average_fidelity_tr(t, t1, t2):
    """Average fidelity of the thermal relaxation channel."""
    t_us = t / NS_PER_US
    return 0.5 + np.exp(-t_us / t1) / 6.0 + np.exp(-t_us / t2) / 3.0


def depolarization_probability(fid_tr, gate_error, num_qubits=1):
    """Depolarizing probability completing thermal relaxation up to the gate error.

    The composed channel (1 - p) E_TR + p E_D has average fidelity
    1 - gate_error, E_D being the completely depolarizing channel with
    average fidelity 1/2**num_qubits.
    """
    if gate_error < 0 or gate_error > 1:
        raise ValueError("Gate error must be in [0, 1], got {}.".format(gate_error))

    fid_depolarized = 1.0 / 2 ** num_qubits
    if fid_tr <= fid_depolarized or fid_tr > 1 + 1e-12:
        raise ValueError("Thermal relaxation fidelity {} out of range.".format(fid_tr))

    if 1 - fid_tr >= gate_error:
        return 0.0

    return (fid_tr - (1 - gate_error)) / (fid_tr - fid_depolarized)


def depolarizing(p):
    """Depolarizing channel rho -> (1 - p) rho + p/3 (X rho X + Y rho Y + Z rho Z).

    p = 3/4 maps every state to I/2.
    """
    _check_probability('p', p)
    operators = [np.sqrt(1 - p) * I2]
    if p > 0:
        operators += [np.sqrt(p / 3) * pauli for pauli in (PAULI_X, PAULI_Y, PAULI_Z)]

    return KrausChannel(operators, name='depolarizing')


def bit_flip(p):
    """Bit flip channel rho -> (1 - p) rho + p X rho X."""
    _check_probability('p', p)
    return KrausChannel(_drop_zero([np.sqrt(1 - p) * I2, np.sqrt(p) * PAULI_X]), name='bit_flip')


def channel_average_fidelity(channel):
    """Average fidelity of a single-qubit channel.

    Uses F = (d * F_pro + 1) / (d + 1) with the process fidelity
    F_pro = sum |tr K|^2 / d**2.
    """
    dimension = channel.dimension
    process = sum(abs(np.trace(operator)) ** 2 for operator in channel.operators) / dimension ** 2
    return (dimension * process + 1) / (dimension + 1)
