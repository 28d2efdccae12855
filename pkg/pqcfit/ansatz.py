"""Layered and dQNN ansatz builders."""
import collections

from .const import ConfigError, InvalidGateError, UnsupportedStructureError
from .simulator import gates
from .simulator.circuit import DATA_INPUT, Circuit, Trainable

# Single-qubit unitaries, expanded in circuit order.
SINGLE_QUBIT_UNITARIES = {
    'RY': (gates.RY,),
    'RYRZ': (gates.RY, gates.RZ),
    'RYRZRY': (gates.RY, gates.RZ, gates.RY),
}

# Entanglement gates and the trainable parameters each placement adds.
ENTANGLEMENT_GATES = {
    'CZ': 0,
    'CNOT': 0,
    'CRX': 1,
    'CAN': 3,
}

ENT_STYLES = ('linear', 'cyclic')
ENT_STRUCTURES = ('simple', 'strong', 'alternating')

# Structures only defined by reference elsewhere.
UNSUPPORTED_STRUCTURES = ('strongc14',)

LayeredSpec = collections.namedtuple('LayeredSpec', [
    'num_qubits',
    'num_layers',
    'zero_layer',
    'u1',
    'ent_gate',
    'ent_layers',
    'ent_style',
    'ent_structure',
])
LayeredSpec.__new__.__defaults__ = (True, 'RYRZ', 'CNOT', 1, 'linear', 'simple')

DqnnSpec = collections.namedtuple('DqnnSpec', [
    'widths',
    'data_reupload',
    'zero_layer',
    'u1',
])
DqnnSpec.__new__.__defaults__ = (True, True, 'RYRZ')

ResourceCount = collections.namedtuple('ResourceCount', [
    'single_qubit_gates',
    'two_qubit_gates',
    'trainable_params',
])


class _Builder(object):
    """Emits gates and hands out consecutive trainable indices."""

    def __init__(self, num_qubits, measured_qubit):
        self.circuit = Circuit(num_qubits, measured_qubit=measured_qubit)
        self._next = 0

    def trainable(self):
        binding = Trainable(self._next)
        self._next += 1
        return binding

    def u1(self, name, qubits):
        for qubit in qubits:
            for kind in SINGLE_QUBIT_UNITARIES[name]:
                self.circuit.add(kind, [qubit], self.trainable())

    def encode(self, qubits):
        for qubit in qubits:
            self.circuit.add(gates.RX, [qubit], DATA_INPUT)

    def entangle(self, name, control, target):
        if name == 'CZ':
            self.circuit.add(gates.CZ, [control, target])
        elif name == 'CNOT':
            self.circuit.add(gates.CNOT, [control, target])
        elif name == 'CRX':
            self.circuit.add(gates.CRX, [control, target], self.trainable())
        elif name == 'CAN':
            for kind in (gates.RXX, gates.RYY, gates.RZZ):
                self.circuit.add(kind, [control, target], self.trainable())


def validate_layered(spec):
    """Check a LayeredSpec, raising ConfigError on violations."""
    if spec.ent_structure in UNSUPPORTED_STRUCTURES:
        raise UnsupportedStructureError(
            "Entanglement structure '{}' is not supported.".format(spec.ent_structure))
    if spec.num_qubits < 1 or spec.num_layers < 1 or spec.ent_layers < 1:
        raise ConfigError("Qubits, layers and entanglement layers must be positive: {}.".format(spec))
    if spec.u1 not in SINGLE_QUBIT_UNITARIES:
        raise ConfigError("Unknown single-qubit unitary '{}'.".format(spec.u1))
    if spec.ent_gate not in ENTANGLEMENT_GATES:
        raise ConfigError("Unknown entanglement gate '{}'.".format(spec.ent_gate))
    if spec.ent_style not in ENT_STYLES:
        raise ConfigError("Unknown entanglement style '{}'.".format(spec.ent_style))
    if spec.ent_structure not in ENT_STRUCTURES:
        raise ConfigError("Unknown entanglement structure '{}'.".format(spec.ent_structure))


def entangling_pairs(num_qubits, sub_block, style, structure):
    """(control, target) pairs of one entanglement sub-block.

    :param sub_block: 1-based index of the sub-block inside a trainable block
    """
    if num_qubits < 2:
        return []

    cyclic = style == 'cyclic'
    if structure == 'alternating':
        start = 0 if sub_block % 2 == 1 else 1
        pairs = [(qubit, qubit + 1) for qubit in range(start, num_qubits - 1, 2)]
        used = set(qubit for pair in pairs for qubit in pair)
        if cyclic and num_qubits > 2 and 0 not in used and num_qubits - 1 not in used:
            pairs.append((num_qubits - 1, 0))
        return pairs

    distance = 1
    if structure == 'strong':
        distance = (sub_block - 1) % (num_qubits - 1) + 1

    if not cyclic or num_qubits == 2:
        return [(qubit, qubit + distance) for qubit in range(num_qubits - distance)]

    return [(qubit, (qubit + distance) % num_qubits) for qubit in range(num_qubits)]


def build_layered(spec):
    """Build W_L S ... W_1 S W_0 with W_0 present iff zero_layer.

    Every trainable block W holds ent_layers sub-blocks of u1 on each qubit
    followed by the entanglement gates; S encodes x with RX on every qubit.
    The last qubit is measured.
    """
    validate_layered(spec)
    num_qubits = spec.num_qubits
    qubits = list(range(num_qubits))
    builder = _Builder(num_qubits, num_qubits - 1)

    def trainable_block():
        for sub_block in range(1, spec.ent_layers + 1):
            builder.u1(spec.u1, qubits)
            for control, target in entangling_pairs(
                    num_qubits, sub_block, spec.ent_style, spec.ent_structure):
                builder.entangle(spec.ent_gate, control, target)

    if spec.zero_layer:
        trainable_block()

    for _ in range(spec.num_layers):
        builder.encode(qubits)
        trainable_block()

    return builder.circuit.validate()


def validate_dqnn(spec):
    """Check a DqnnSpec, raising ConfigError on violations."""
    widths = list(spec.widths)
    if len(widths) < 2:
        raise ConfigError("dQNN needs at least an input and an output layer: {}.".format(widths))
    if any(width < 1 for width in widths):
        raise ConfigError("dQNN layer widths must be positive: {}.".format(widths))
    if widths[-1] != 1:
        raise ConfigError("dQNN output layer must have width 1: {}.".format(widths))
    if spec.u1 not in SINGLE_QUBIT_UNITARIES:
        raise ConfigError("Unknown single-qubit unitary '{}'.".format(spec.u1))


def build_dqnn(spec):
    """Build a dQNN where CAN gates connect every qubit of a layer to every qubit of the next."""
    validate_dqnn(spec)
    widths = list(spec.widths)
    layers = []
    offset = 0
    for width in widths:
        layers.append(list(range(offset, offset + width)))
        offset += width

    output = layers[-1][0]
    builder = _Builder(offset, output)
    for index, layer in enumerate(layers[:-1]):
        if spec.zero_layer:
            builder.u1(spec.u1, layer)
        if index == 0 or spec.data_reupload:
            builder.encode(layer)
        builder.u1(spec.u1, layer)

        for source in layer:
            for destination in layers[index + 1]:
                builder.entangle('CAN', source, destination)

    if spec.zero_layer:
        builder.u1(spec.u1, [output])
    builder.u1(spec.u1, [output])

    return builder.circuit.validate()


def build(spec):
    """Build a circuit from either spec type."""
    if isinstance(spec, LayeredSpec):
        return build_layered(spec)
    elif isinstance(spec, DqnnSpec):
        return build_dqnn(spec)

    raise ConfigError("Unknown ansatz spec {!r}.".format(spec))


def count_resources(circuit):
    """Count single-qubit gates (encoding included), two-qubit gates and parameters."""
    single = sum(1 for op in circuit.ops if len(op.qubits) == 1)
    double = sum(1 for op in circuit.ops if len(op.qubits) == 2)
    return ResourceCount(single, double, circuit.num_params)


def max_degree(circuit):
    """Largest reachable frequency: the number of data-encoding gates."""
    degree = 0
    for op in circuit.ops:
        if op.is_data:
            if op.kind != gates.RX:
                raise InvalidGateError("Data input must be encoded with RX, got {}.".format(op.kind))
            degree += 1

    return degree


def expected_layered_counts(spec):
    """Closed form resource counts of build_layered(spec)."""
    validate_layered(spec)
    blocks = spec.num_layers + (1 if spec.zero_layer else 0)
    rotations = blocks * spec.ent_layers * spec.num_qubits * len(SINGLE_QUBIT_UNITARIES[spec.u1])
    placements = blocks * sum(
        len(entangling_pairs(spec.num_qubits, sub_block, spec.ent_style, spec.ent_structure))
        for sub_block in range(1, spec.ent_layers + 1)
    )
    gates_per_placement = 3 if spec.ent_gate == 'CAN' else 1
    return ResourceCount(
        spec.num_qubits * spec.num_layers + rotations,
        placements * gates_per_placement,
        rotations + ENTANGLEMENT_GATES[spec.ent_gate] * placements,
    )


def spec_from_dict(document):
    """Create an ansatz spec from a configuration mapping."""
    document = dict(document or {})
    kind = document.pop('type', 'layered')
    try:
        if kind == 'layered':
            spec = LayeredSpec(**document)
            validate_layered(spec)
        elif kind == 'dqnn':
            document['widths'] = tuple(document.get('widths', ()))
            spec = DqnnSpec(**document)
            validate_dqnn(spec)
        else:
            raise ConfigError("Unknown ansatz type '{}'.".format(kind))
    except TypeError as error:
        raise ConfigError("Malformed ansatz specification: {}".format(error))

    return spec


def spec_to_dict(spec):
    """Inverse of spec_from_dict."""
    document = {}
    document['type'] = 'layered' if isinstance(spec, LayeredSpec) else 'dqnn'
    for key, value in spec._asdict().items():
        document[key] = list(value) if isinstance(value, tuple) else value

    return document
