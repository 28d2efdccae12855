from .. import config as experiment_config, fourier
from ..messages import create_result_document, create_table

RESULT_DOCUMENT = 'fourier-gen.yaml'
RESULT_TABLE = 'fourier-gen.csv'
SERIES_FILE = 'functions.txt'

COLUMNS = ['index', 'degree', 'c0', 'max_abs']


class Module(object):
    """Random normalized target functions and their cross-correlations."""

    def __init__(self, runner):
        self._runner = runner
        self._config = runner.config

    def process(self):
        config = self._config
        functions = self._runner.functions()
        self._runner.write(SERIES_FILE, fourier.dump_series(functions))

        report = fourier.cross_correlation_report(functions)
        metadata = {'config': experiment_config.config_to_dict(config)}
        body = {
            'functions': len(functions),
            'series_file': SERIES_FILE,
            'correlation_bins': report.bins,
            'correlation_histogram': report.histogram,
        }
        self._runner.write(RESULT_DOCUMENT, create_result_document(config.kind, metadata, body))

        rows = [
            (index, series.degree, series.c0, fourier.max_abs(series))
            for index, series in enumerate(functions)
        ]
        self._runner.write(RESULT_TABLE, create_table(COLUMNS, rows))

        print("Generated {} functions of degree {}.".format(len(functions), config.degree))
        for low, high, count in zip(report.bins[:-1], report.bins[1:], report.histogram):
            print("[{:.1f}, {:.1f}): {}".format(low, high, count))

    def shutdown(self):
        pass
