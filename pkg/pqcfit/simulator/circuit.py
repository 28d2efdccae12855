import collections

from . import gates
from ..const import BindingError, InvalidGateError

# Parameter bindings.
Fixed = collections.namedtuple('Fixed', ['angle'])
Trainable = collections.namedtuple('Trainable', ['index'])
DataInput = collections.namedtuple('DataInput', [])

DATA_INPUT = DataInput()

# Maximum number of qubits supported by the simulator.
MAX_QUBITS = 16


class GateOp(collections.namedtuple('GateOp', ['kind', 'qubits', 'binding'])):
    """Single gate placed on a tuple of qubits."""
    __slots__ = ()

    def __new__(cls, kind, qubits, binding=None):
        qubits = tuple(int(qubit) for qubit in qubits)
        if len(qubits) != gates.arity(kind):
            raise InvalidGateError("Gate {} acts on {} qubit(s), got {}.".format(
                kind, gates.arity(kind), qubits))
        if len(set(qubits)) != len(qubits):
            raise InvalidGateError("Gate {} qubits must be distinct, got {}.".format(kind, qubits))
        if (binding is None) == (kind in gates.PARAMETRIZED):
            raise InvalidGateError("Gate {} binding mismatch.".format(kind))

        return super(GateOp, cls).__new__(cls, kind, qubits, binding)

    @property
    def is_trainable(self):
        return isinstance(self.binding, Trainable)

    @property
    def is_data(self):
        return isinstance(self.binding, DataInput)

    def angle(self, params, x):
        """Resolve the gate angle for given parameters and input."""
        binding = self.binding
        if binding is None:
            return None
        elif isinstance(binding, Fixed):
            return binding.angle
        elif isinstance(binding, DataInput):
            return x
        elif isinstance(binding, Trainable):
            if binding.index < 0 or binding.index >= len(params):
                raise BindingError("Trainable index {} out of range for {} parameters.".format(
                    binding.index, len(params)))
            return params[binding.index]

        raise BindingError("Unknown binding {!r}.".format(binding))


class Circuit(object):
    """Ordered gate list over a register with one measured qubit."""

    def __init__(self, num_qubits, ops=(), measured_qubit=None):
        if num_qubits < 1 or num_qubits > MAX_QUBITS:
            raise InvalidGateError("Unsupported number of qubits: {}.".format(num_qubits))

        self.num_qubits = num_qubits
        self.ops = []
        self.measured_qubit = num_qubits - 1 if measured_qubit is None else measured_qubit
        if not 0 <= self.measured_qubit < num_qubits:
            raise InvalidGateError("Measured qubit {} out of range.".format(self.measured_qubit))

        for op in ops:
            self.append(op)

    def append(self, op):
        """Append a gate to the circuit."""
        for qubit in op.qubits:
            if qubit >= self.num_qubits:
                raise InvalidGateError("Qubit {} out of range for {} qubits.".format(
                    qubit, self.num_qubits))

        self.ops.append(op)
        return self

    def add(self, kind, qubits, binding=None):
        """Create and append a gate."""
        return self.append(GateOp(kind, qubits, binding))

    @property
    def num_params(self):
        """Number of trainable parameters (1 + maximum trainable index)."""
        indices = [op.binding.index for op in self.ops if op.is_trainable]
        if not indices:
            return 0

        return max(indices) + 1

    @property
    def trainable_ops(self):
        return [op for op in self.ops if op.is_trainable]

    def validate(self):
        """Check that trainable indices form the contiguous set 0..p-1."""
        indices = sorted(set(op.binding.index for op in self.trainable_ops))
        if indices != list(range(len(indices))):
            raise BindingError("Trainable indices are not contiguous: {}.".format(indices))

        return self

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __repr__(self):
        return 'Circuit(num_qubits={}, ops={}, num_params={}, measured_qubit={})'.format(
            self.num_qubits, len(self.ops), self.num_params, self.measured_qubit)
