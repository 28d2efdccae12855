"""Pauli string algebra and dynamical Lie algebra closures.

A Pauli string is a tuple of letters (one per qubit) over I=0, X=1, Y=2,
Z=3. An AlgebraElement with coefficients c_P stands for the anti-Hermitian
operator i * sum_P c_P P.
"""
import collections
import logging

import numpy as np

from .simulator import gates

logger = logging.getLogger(__name__)

I, X, Y, Z = 0, 1, 2, 3

LETTERS = 'IXYZ'

# Largest register the closure is computed for.
MAX_CLOSURE_QUBITS = 5

# Residual norm below which a candidate is linearly dependent.
PIVOT_TOLERANCE = 1e-10

# Coefficients below this magnitude are dropped.
ZERO_TOLERANCE = 1e-12

# Cyclic letter pairs, whose product carries the phase +i.
_CYCLIC = frozenset([(X, Y), (Y, Z), (Z, X)])


def pauli(label):
    """Pauli string from a label such as 'XIZ', letter k acting on qubit k."""
    try:
        return tuple(LETTERS.index(letter) for letter in label.upper())
    except ValueError:
        raise ValueError("Invalid Pauli label '{}'.".format(label))


def pauli_label(string):
    return ''.join(LETTERS[letter] for letter in string)


def single_pauli(num_qubits, assignments):
    """Pauli string with the given {qubit: letter} and identities elsewhere."""
    letters = [I] * num_qubits
    for qubit, letter in assignments.items():
        letters[qubit] = letter

    return tuple(letters)


def _letter_product(a, b):
    """(phase, letter) with a * b = phase * letter."""
    if a == I:
        return 1, b
    if b == I:
        return 1, a
    if a == b:
        return 1, I
    return (1j if (a, b) in _CYCLIC else -1j), a ^ b


def pauli_product(first, second):
    """(phase, string) with first * second = phase * string."""
    if len(first) != len(second):
        raise ValueError("Pauli strings act on {} and {} qubits.".format(len(first), len(second)))

    phase = 1
    letters = []
    for a, b in zip(first, second):
        factor, letter = _letter_product(a, b)
        phase *= factor
        letters.append(letter)

    return phase, tuple(letters)


def pauli_commutator(first, second):
    """[P, Q] = i c R with c = +-2, or None when P and Q commute."""
    anticommuting = sum(1 for a, b in zip(first, second) if a != I and b != I and a != b)
    if anticommuting % 2 == 0:
        return None

    phase, string = pauli_product(first, second)
    return AlgebraElement({string: float(np.real(2 * phase / 1j))})


class AlgebraElement(object):
    """Sparse element i * sum_P c_P P of su(2^n)."""

    def __init__(self, terms):
        self.terms = {
            tuple(string): float(coefficient)
            for string, coefficient in dict(terms).items()
            if abs(coefficient) > ZERO_TOLERANCE
        }
        if not self.terms:
            raise ValueError("Algebra element has no terms.")

        lengths = set(len(string) for string in self.terms)
        if len(lengths) != 1:
            raise ValueError("Pauli strings of mixed lengths {}.".format(sorted(lengths)))
        self.num_qubits = lengths.pop()

    @classmethod
    def from_labels(cls, terms):
        """Element from {label: coefficient}."""
        return cls({pauli(label): coefficient for label, coefficient in terms.items()})

    def norm(self):
        return float(np.sqrt(sum(value ** 2 for value in self.terms.values())))

    def scaled(self, factor):
        return AlgebraElement({string: factor * value for string, value in self.terms.items()})

    def vector(self):
        """Dense coefficients indexed by the base-4 value of the Pauli string."""
        result = np.zeros(4 ** self.num_qubits)
        for string, value in self.terms.items():
            result[pauli_index(string)] = value

        return result

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'AlgebraElement({})'.format(format_element(self))


def pauli_index(string):
    return sum(letter * 4 ** qubit for qubit, letter in enumerate(string))


def format_element(element):
    """Human readable form such as '1*IX - 1*ZX'."""
    parts = []
    for string, value in sorted(element.terms.items()):
        sign = '-' if value < 0 else '+'
        parts.append('{} {:g}*{}'.format(sign, abs(value), pauli_label(string)))

    text = ' '.join(parts)
    return text[2:] if text.startswith('+ ') else text


def lie_bracket(first, second):
    """[A, B] of two algebra elements, or None when it vanishes.

    With A = i H_A and B = i H_B the bracket is i H_C where
    H_C = -sum a_P b_Q c_PQ R for [P, Q] = i c_PQ R.
    """
    terms = collections.defaultdict(float)
    for p, a in first.terms.items():
        for q, b in second.terms.items():
            commutator = pauli_commutator(p, q)
            if commutator is None:
                continue
            (string, value), = commutator.terms.items()
            terms[string] -= a * b * value

    terms = {string: value for string, value in terms.items() if abs(value) > ZERO_TOLERANCE}
    if not terms:
        return None

    return AlgebraElement(terms)


def _controlled_generator(num_qubits, control, target, letter):
    return AlgebraElement({
        single_pauli(num_qubits, {target: letter}): 1.0,
        single_pauli(num_qubits, {control: Z, target: letter}): -1.0,
    })


def generators_for(circuit):
    """Deduplicated generators of every gate in a circuit.

    Rotations contribute their Pauli string, controlled gates the element
    U_t - Z_c U_t with U = X for CNOT and CRX and U = Z for CZ.
    """
    num_qubits = circuit.num_qubits
    rotation_letters = {
        gates.RX: X, gates.RY: Y, gates.RZ: Z,
        gates.RXX: X, gates.RYY: Y, gates.RZZ: Z,
    }

    result = []
    for op in circuit.ops:
        if op.kind in rotation_letters:
            letter = rotation_letters[op.kind]
            element = AlgebraElement({
                single_pauli(num_qubits, {qubit: letter for qubit in op.qubits}): 1.0,
            })
        elif op.kind in (gates.CNOT, gates.CRX):
            element = _controlled_generator(num_qubits, op.qubits[0], op.qubits[1], X)
        elif op.kind == gates.CZ:
            element = _controlled_generator(num_qubits, op.qubits[0], op.qubits[1], Z)
        elif op.kind == gates.H:
            weight = 1 / np.sqrt(2)
            element = AlgebraElement({
                single_pauli(num_qubits, {op.qubits[0]: X}): weight,
                single_pauli(num_qubits, {op.qubits[0]: Z}): weight,
            })
        else:
            raise ValueError("No generator known for gate {}.".format(op.kind))

        if element not in result:
            result.append(element)

    return result


class _Basis(object):
    """Orthonormal span used for independence tests."""

    def __init__(self, size):
        self.vectors = np.zeros((0, size))

    def residual(self, vector):
        for _ in range(2):
            vector = vector - self.vectors.T @ (self.vectors @ vector)
        return vector

    def insert(self, vector):
        residual = self.residual(vector)
        norm = np.linalg.norm(residual)
        if norm <= PIVOT_TOLERANCE:
            return False

        self.vectors = np.vstack([self.vectors, residual / norm])
        return True


def closure_basis(generators, max_dim=None):
    """Linearly independent elements spanning the Lie closure of the generators.

    Every nested commutator is a combination of brackets of a generator with
    an element already found, so each new element is bracketed with all
    generators until no new direction appears.
    """
    generators = list(generators)
    if not generators:
        return []

    num_qubits = generators[0].num_qubits
    if any(element.num_qubits != num_qubits for element in generators):
        raise ValueError("Generators act on different numbers of qubits.")
    if num_qubits > MAX_CLOSURE_QUBITS:
        raise ValueError("Lie closure is limited to {} qubits, got {}.".format(
            MAX_CLOSURE_QUBITS, num_qubits))

    full_dimension = 4 ** num_qubits - 1
    if max_dim is None or max_dim > full_dimension:
        max_dim = full_dimension

    span = _Basis(4 ** num_qubits)
    basis = []
    queue = collections.deque()

    def consider(element):
        element = element.scaled(1.0 / element.norm())
        if len(basis) < max_dim and span.insert(element.vector()):
            basis.append(element)
            queue.append(element)

    for element in generators:
        consider(element)

    while queue and len(basis) < max_dim:
        current = queue.popleft()
        for generator in generators:
            bracket = lie_bracket(generator, current)
            if bracket is not None:
                consider(bracket)

    logger.debug("Lie closure of %d generators has dimension %d.", len(generators), len(basis))
    return basis


def lie_closure(generators, max_dim=None):
    """Dimension of the dynamical Lie algebra spanned by the generators."""
    return len(closure_basis(generators, max_dim))
