import numpy as np

from .. import config as experiment_config, harness
from ..messages import create_result_document, create_table

RESULT_DOCUMENT = 'coeffs.yaml'
RESULT_TABLE = 'coeffs.csv'

COLUMNS = ['sample', 'omega', 'real', 'imag']


class Module(object):
    """Fourier coefficients of an ansatz under random parameters."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config

    def process(self):
        config = self._config
        rng = np.random.Generator(np.random.Philox(config.seed))
        study = harness.coefficient_study(config.ansatz, config.degree, config.samples, rng)

        metadata = {'config': experiment_config.config_to_dict(config)}
        body = {
            'frequencies': study.frequencies,
            'max_real': study.max_real,
            'max_imag': study.max_imag,
            'fraction_reached': study.fraction_reached,
        }
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        rows = []
        for sample, coefficients in enumerate(study.samples):
            for omega, value in enumerate(coefficients):
                rows.append((sample, omega, float(value.real), float(value.imag)))
        self._runner.write(RESULT_TABLE, create_table(COLUMNS, rows))

        for omega in study.frequencies:
            print("omega={} max|Re|={:.4f} max|Im|={:.4f} reached={:.2f}".format(
                omega, study.max_real[omega], study.max_imag[omega], study.fraction_reached[omega]))

    def shutdown(self):
        pass
