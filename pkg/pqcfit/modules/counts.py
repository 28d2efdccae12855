from .. import ansatz, config as experiment_config
from ..messages import create_result_document

RESULT_DOCUMENT = 'counts.yaml'


class Module(object):
    """Gate and parameter counts of an ansatz."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config

    def process(self):
        config = self._config
        circuit = ansatz.build(config.ansatz)
        counts = ansatz.count_resources(circuit)

        metadata = {'config': experiment_config.config_to_dict(config)}
        body = counts._asdict()
        body['max_degree'] = ansatz.max_degree(circuit)
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        print("s={} t={} p={}".format(counts.single_qubit_gates, counts.two_qubit_gates, counts.trainable_params))

    def shutdown(self):
        pass
