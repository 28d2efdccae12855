"""Gate definitions.

All rotations follow R_P(theta) = exp(-i theta/2 P). Two-qubit matrices are
indexed as 2 * bit(first qubit) + bit(second qubit), so for controlled gates
the control is the first listed qubit.
"""
import numpy as np

from ..const import InvalidGateError

RX = 'RX'
RY = 'RY'
RZ = 'RZ'
H = 'H'
CZ = 'CZ'
CNOT = 'CNOT'
CRX = 'CRX'
RXX = 'RXX'
RYY = 'RYY'
RZZ = 'RZZ'

GATE_KINDS = (RX, RY, RZ, H, CZ, CNOT, CRX, RXX, RYY, RZZ)

PARAMETRIZED = frozenset([RX, RY, RZ, CRX, RXX, RYY, RZZ])
TWO_QUBIT = frozenset([CZ, CNOT, CRX, RXX, RYY, RZZ])

# Gates whose generator has eigenvalues +-1/2 (two-term shift rule applies).
PAULI_ROTATIONS = frozenset([RX, RY, RZ, RXX, RYY, RZZ])

I2 = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PROJECTOR_1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(np.complex128)
CNOT_MATRIX = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=np.complex128)

# Generators G with U(theta) = exp(-i theta/2 G).
GENERATORS = {
    RX: PAULI_X,
    RY: PAULI_Y,
    RZ: PAULI_Z,
    RXX: np.kron(PAULI_X, PAULI_X),
    RYY: np.kron(PAULI_Y, PAULI_Y),
    RZZ: np.kron(PAULI_Z, PAULI_Z),
    CRX: np.kron(PROJECTOR_1, PAULI_X),
}


def arity(kind):
    """Number of qubits the gate acts on."""
    if kind not in GATE_KINDS:
        raise InvalidGateError("Unknown gate kind '{}'.".format(kind))

    return 2 if kind in TWO_QUBIT else 1


def _rotation(pauli, angles):
    """exp(-i angle/2 P) for a Pauli (or Pauli product) P squaring to identity.

    Works on a scalar angle or an array of angles, in which case a stack of
    matrices is returned.
    """
    angles = np.asarray(angles, dtype=np.float64)
    cos = np.cos(angles / 2)[..., None, None]
    sin = np.sin(angles / 2)[..., None, None]
    identity = np.eye(pauli.shape[0], dtype=np.complex128)
    return cos * identity - 1j * sin * pauli


def gate_matrix(kind, angle=None):
    """Unitary matrix of a gate.

    :param kind: Gate kind
    :param angle: Rotation angle in radians (scalar or array of angles for
        parametrized gates, must be None otherwise)
    """
    if kind not in GATE_KINDS:
        raise InvalidGateError("Unknown gate kind '{}'.".format(kind))

    if kind in PARAMETRIZED:
        if angle is None:
            raise InvalidGateError("Gate {} requires an angle.".format(kind))
    elif angle is not None:
        raise InvalidGateError("Gate {} takes no angle.".format(kind))

    if kind == H:
        return HADAMARD
    elif kind == CZ:
        return CZ_MATRIX
    elif kind == CNOT:
        return CNOT_MATRIX
    elif kind == CRX:
        rx = _rotation(PAULI_X, angle)
        matrix = np.zeros(rx.shape[:-2] + (4, 4), dtype=np.complex128)
        matrix[..., 0, 0] = 1
        matrix[..., 1, 1] = 1
        matrix[..., 2:, 2:] = rx
        return matrix

    return _rotation(GENERATORS[kind], angle)


def gate_generator(kind):
    """Generator G of a parametrized gate, U(theta) = exp(-i theta/2 G)."""
    try:
        return GENERATORS[kind]
    except KeyError:
        raise InvalidGateError("Gate {} has no generator.".format(kind))
