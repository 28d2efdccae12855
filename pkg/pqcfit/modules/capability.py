import logging

from .. import ansatz, config as experiment_config, fourier, harness
from ..messages import CAPABILITY_COLUMNS, create_result_document, create_table
from ..simulator import calibration

logger = logging.getLogger(__name__)

# Result files.
RESULT_DOCUMENT = 'capability.yaml'
RESULT_TABLE = 'capability.csv'


class Module(object):
    """Learning capability of one ansatz, analytic, shot based or noisy."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config
        self._indices = []

    def _evaluation(self, num_qubits):
        config = self._config
        shots = config.shots.shots if config.shots is not None else None
        shot_seed = config.shots.seed if config.shots is not None else config.seed

        if config.kind == 'shot-capability':
            return harness.Evaluation('shots', shots=shots, shot_seed=shot_seed)
        elif config.kind == 'noisy-capability':
            settings = config.noise
            mapping = settings.mapping or calibration.default_mapping(num_qubits)
            return harness.Evaluation(
                'noisy',
                shots=shots,
                noise=self._runner.noise_model(),
                mapping=list(mapping),
                scale=settings.target_scale,
                literal=settings.literal,
                shot_seed=shot_seed,
            )

        return harness.Evaluation()

    def _select(self, functions):
        """Indices of the functions to train on."""
        indices = list(range(len(functions)))
        settings = self._config.noise
        if self._config.kind != 'noisy-capability' or not settings.select:
            return indices
        if settings.select >= len(functions):
            return indices

        selected = sorted(fourier.select_least_correlated(functions, settings.select))
        logger.info("Selected least correlated functions %s.", selected)
        return selected

    def _progress(self, index, loss, epochs):
        seed = int(self._config.train.seed) + index
        self._runner.log.record_function(self._indices[index], seed, loss, epochs)

    def process(self):
        config = self._config
        circuit = ansatz.build(config.ansatz)
        functions = self._runner.functions()
        indices = self._indices = self._select(functions)

        result = harness.learning_capability(
            config.ansatz,
            [functions[index] for index in indices],
            config.train,
            workers=config.workers,
            evaluation=self._evaluation(circuit.num_qubits),
            progress=self._progress,
        )

        metadata = dict(result.metadata)
        metadata['config'] = experiment_config.config_to_dict(config)
        metadata['function_indices'] = indices
        body = {
            'mu': result.mu,
            'ci_half_width': result.ci_half_width,
            'ci_defined': result.ci_defined,
            'losses': result.losses,
            'epochs': result.epochs,
            'seeds': result.seeds,
            'histogram': result.histogram,
            'histogram_edges': result.histogram_edges,
        }
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        rows = zip(indices, result.seeds, result.losses.tolist(), result.epochs.tolist())
        self._runner.write(RESULT_TABLE, create_table(CAPABILITY_COLUMNS, rows))

        print("mu_{} = {:.6e} +- {:.6e}".format(metadata['degree'], result.mu, result.ci_half_width))

    def shutdown(self):
        pass
