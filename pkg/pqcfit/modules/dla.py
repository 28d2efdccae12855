from .. import ansatz, config as experiment_config, lie
from ..messages import create_result_document

RESULT_DOCUMENT = 'dla.yaml'


class Module(object):
    """Dynamical Lie algebra dimension of an ansatz."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config

    def process(self):
        config = self._config
        circuit = ansatz.build(config.ansatz)
        generators = lie.generators_for(circuit)
        dimension = lie.lie_closure(generators)

        metadata = {'config': experiment_config.config_to_dict(config)}
        body = {
            'num_qubits': circuit.num_qubits,
            'generators': [lie.format_element(element) for element in generators],
            'dimension': dimension,
            'full_dimension': 4 ** circuit.num_qubits - 1,
        }
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        for element in generators:
            print(lie.format_element(element))
        print("dimension {}".format(dimension))

    def shutdown(self):
        pass
