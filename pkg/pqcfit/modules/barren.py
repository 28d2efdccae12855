import numpy as np

from .. import config as experiment_config, harness
from ..const import MEASUREMENT_BARREN_VARIANCE
from ..messages import create_result_document

RESULT_DOCUMENT = 'barren.yaml'


class Module(object):
    """Gradient variance under random initialization."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config

    def process(self):
        config = self._config
        functions = self._runner.functions()
        rng = np.random.Generator(np.random.Philox(config.seed))
        result = harness.barren_variance(
            config.ansatz, functions, config.barren.trials, rng, mode=config.barren.mode)
        self._runner.log.record_measurement(MEASUREMENT_BARREN_VARIANCE, result.variance_of_gradient)

        metadata = {'config': experiment_config.config_to_dict(config)}
        body = result._asdict()
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        print("variance={:.6e} samples={}".format(result.variance_of_gradient, result.sample_count))

    def shutdown(self):
        pass
