"""Device calibration definitions for the simulated 12 qubit device.

Qubits 0..6 carry a calibration snapshot of a seven qubit superconducting
processor. Qubits 7..11 are copies of qubits 2..6 including their mutual
couplings; qubit 7 is attached to qubit 2 with the 1<->2 coupling data.
"""
import collections

import numpy as np
import yaml

from ..const import ConfigError

QubitCalibration = collections.namedtuple('QubitCalibration', [
    't1',  # us
    't2',  # us
    'single_gate_time',  # ns
    'single_gate_error',
    'readout_error',
])

CouplingCalibration = collections.namedtuple('CouplingCalibration', [
    'pair',  # (control, target)
    'two_gate_time',  # ns
    'two_gate_error',
])

# Calibration snapshot (qubit: T1 us, T2 us, t ns, gate error, readout error).
DEVICE_QUBITS = {
    0: QubitCalibration(9.6, 16.47, 35.56, 0.0007, 0.0220),
    1: QubitCalibration(150.65, 55.92, 35.56, 0.0003, 0.0232),
    2: QubitCalibration(120.61, 103.28, 35.56, 0.0002, 0.0205),
    3: QubitCalibration(169.23, 151.85, 35.56, 0.0003, 0.0176),
    4: QubitCalibration(159.29, 117.10, 35.56, 0.0005, 0.0178),
    5: QubitCalibration(187.23, 140.95, 35.56, 0.0003, 0.0240),
    6: QubitCalibration(163.37, 180.04, 35.56, 0.0002, 0.0060),
}

# Calibration snapshot (control, target): (t ns, gate error).
DEVICE_COUPLINGS = {
    (0, 1): (391.11, 0.0129),
    (1, 0): (426.67, 0.0129),
    (1, 2): (355.56, 0.0052),
    (1, 3): (405.33, 0.0145),
    (2, 1): (320.00, 0.0052),
    (3, 1): (369.78, 0.0145),
    (3, 5): (284.44, 0.0086),
    (4, 5): (590.22, 0.0103),
    (5, 3): (320.00, 0.0086),
    (5, 4): (625.78, 0.0103),
    (5, 6): (640.00, 0.0102),
    (6, 5): (604.44, 0.0102),
}

# Mirrored qubits (copy: original).
MIRRORED_QUBITS = {7: 2, 8: 3, 9: 4, 10: 5, 11: 6}

# Bridge between the original device and the mirrored copies (new pair: source pair).
MIRROR_BRIDGE = {
    (2, 7): (1, 2),
    (7, 2): (2, 1),
}

# Physical qubits used for a given logical register size.
QUBIT_MAPPINGS = {
    1: [0],
    2: [0, 1],
    3: [0, 1, 2],
    6: [0, 1, 2, 7, 9, 10],
}


class NoiseModel(object):
    """Per-qubit and per-coupling calibration data."""

    def __init__(self, qubits, couplings):
        self.qubits = dict(qubits)
        self.couplings = dict(couplings)

        for pair in self.couplings:
            for qubit in pair:
                if qubit not in self.qubits:
                    raise ConfigError("Coupling {} references unknown qubit {}.".format(pair, qubit))

    def qubit(self, index):
        try:
            return self.qubits[index]
        except KeyError:
            raise ConfigError("Qubit {} is not calibrated.".format(index))

    def coupling(self, control, target):
        """Coupling calibration, falling back to the reverse direction and then the mean."""
        for pair in ((control, target), (target, control)):
            if pair in self.couplings:
                return self.couplings[pair]

        if not self.couplings:
            return CouplingCalibration((control, target), 0.0, 0.0)

        times = [coupling.two_gate_time for coupling in self.couplings.values()]
        errors = [coupling.two_gate_error for coupling in self.couplings.values()]
        return CouplingCalibration((control, target), float(np.mean(times)), float(np.mean(errors)))

    @classmethod
    def device(cls):
        """The built-in 12 qubit device."""
        qubits = dict(DEVICE_QUBITS)
        for copy, original in MIRRORED_QUBITS.items():
            qubits[copy] = DEVICE_QUBITS[original]

        couplings = {}
        for pair, (time, error) in DEVICE_COUPLINGS.items():
            couplings[pair] = CouplingCalibration(pair, time, error)

        inverse = {original: copy for copy, original in MIRRORED_QUBITS.items()}
        for (control, target), (time, error) in DEVICE_COUPLINGS.items():
            if control in inverse and target in inverse:
                pair = (inverse[control], inverse[target])
                couplings[pair] = CouplingCalibration(pair, time, error)

        for pair, source in MIRROR_BRIDGE.items():
            time, error = DEVICE_COUPLINGS[source]
            couplings[pair] = CouplingCalibration(pair, time, error)

        return cls(qubits, couplings)

    @classmethod
    def noiseless(cls, num_qubits):
        """Model whose channels all collapse to the identity."""
        qubits = {
            index: QubitCalibration(float('inf'), float('inf'), 0.0, 0.0, 0.0)
            for index in range(num_qubits)
        }
        return cls(qubits, {})

    @classmethod
    def load(cls, path):
        """Load a model from a YAML file.

        Format::

            qubits:
              - [qubit, T1_us, T2_us, t_ns, gate_err, ro_err]
            couplings:
              - [control, target, t_ns, gate_err]
        """
        try:
            with open(path) as model_file:
                document = yaml.safe_load(model_file)
        except (IOError, yaml.YAMLError) as error:
            raise ConfigError("Failed to load noise model '{}': {}".format(path, error))

        try:
            qubits = {}
            for row in document.get('qubits', []):
                index, t1, t2, time, gate_error, readout_error = row
                qubits[int(index)] = QubitCalibration(
                    float(t1), float(t2), float(time), float(gate_error), float(readout_error))

            couplings = {}
            for row in document.get('couplings', []):
                control, target, time, gate_error = row
                pair = (int(control), int(target))
                couplings[pair] = CouplingCalibration(pair, float(time), float(gate_error))
        except (AttributeError, TypeError, ValueError) as error:
            raise ConfigError("Malformed noise model '{}': {}".format(path, error))

        return cls(qubits, couplings)

    def dump(self):
        """Serialize to the YAML format accepted by load."""
        document = {
            'qubits': [
                [index] + [float(value) for value in calibration]
                for index, calibration in sorted(self.qubits.items())
            ],
            'couplings': [
                [pair[0], pair[1], float(coupling.two_gate_time), float(coupling.two_gate_error)]
                for pair, coupling in sorted(self.couplings.items())
            ],
        }
        return yaml.safe_dump(document, default_flow_style=None)


def default_mapping(num_qubits):
    """Physical qubits used for a logical register."""
    if num_qubits in QUBIT_MAPPINGS:
        return list(QUBIT_MAPPINGS[num_qubits])

    return list(range(num_qubits))
