import collections
import datetime
import importlib
import logging
import os

from . import fourier
from .const import (
    ConfigError,
    EVENT_DONE,
    EVENT_FAILED,
    EVENT_MODULE_INIT,
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_RUNTIME_ERROR,
    SUMMARY_CAPABILITY_EPOCHS,
    SUMMARY_CAPABILITY_LOSS,
)
from .log import RunLog
from .messages import summarize
from .simulator import calibration

logger = logging.getLogger(__name__)


class Runner(object):
    """Experiment handling."""

    # Modules handling each experiment kind.
    experiment_modules = {
        'capability': 'pqcfit.modules.capability',
        'noisy-capability': 'pqcfit.modules.capability',
        'shot-capability': 'pqcfit.modules.capability',
        'coeffs': 'pqcfit.modules.coeffs',
        'barren': 'pqcfit.modules.barren',
        'counts': 'pqcfit.modules.counts',
        'fourier-gen': 'pqcfit.modules.fourier_gen',
        'dla': 'pqcfit.modules.dla',
    }

    def __init__(self, config):
        self.config = config
        self.output = config.output
        self.log = None
        self.modules = collections.OrderedDict()
        self.started = None

    @property
    def module_table(self):
        """Module table with the PQCFIT_MODULES override applied.

        The override is a comma separated list of kind=module entries.
        """
        table = dict(self.experiment_modules)
        override_modules = os.environ.get('PQCFIT_MODULES', None)
        if override_modules:
            logger.info("Using configured experiment modules.")
            for entry in override_modules.strip().split(','):
                try:
                    kind, module_name = entry.split('=')
                except ValueError:
                    logger.warning("Ignoring malformed module override '%s'.", entry)
                    continue
                table[kind.strip()] = module_name.strip()

        return table

    def run(self):
        """Run the configured experiment and return the exit code."""
        self.started = datetime.datetime.now()
        self.log = RunLog(self.output)
        self.log.start_run(self.config.kind, self.config.seed, self.started)
        try:
            return self.process()
        finally:
            self.log.close()

    def process(self):
        self.log.event(EVENT_MODULE_INIT)

        module_name = self.module_table.get(self.config.kind)
        if module_name is None:
            logger.error("No module handles experiment '%s'.", self.config.kind)
            self.log.event(EVENT_FAILED)
            return EXIT_CONFIG_ERROR

        try:
            module = importlib.import_module(module_name)
        except ImportError:
            logger.exception("Failed to import module '%s'.", module_name)
            self.log.event(EVENT_FAILED)
            return EXIT_RUNTIME_ERROR

        logger.info("Running experiment '%s' with %s.", self.config.kind, module.__name__)

        try:
            instance = module.Module(self)
            self.modules[module.__name__] = instance
            instance.process()
        except ConfigError as error:
            logger.error("%s", error)
            self.log.event(EVENT_FAILED)
            return EXIT_CONFIG_ERROR
        except Exception:
            logger.exception("Error while running processing in module '%s'.", module_name)
            self.log.event(EVENT_FAILED)
            return EXIT_RUNTIME_ERROR
        finally:
            self.shutdown()

        summaries = summarize(self.log, None, [SUMMARY_CAPABILITY_LOSS, SUMMARY_CAPABILITY_EPOCHS])
        for summary in summaries or []:
            logger.info("%s: count %d, average %.3e, min %.3e, max %.3e.", *summary)
        diverged = self.log.diverged()
        if diverged:
            logger.warning("Training diverged for functions %s.", diverged)

        self.log.event(EVENT_DONE)
        return EXIT_OK

    def shutdown(self):
        for name, module in self.modules.items():
            try:
                module.shutdown()
            except Exception:
                logger.exception("Error while running shutdown in module '%s'.", name)

    def path(self, name):
        """Path of a result file inside the output directory."""
        return os.path.join(self.output, name)

    def write(self, name, text):
        with open(self.path(name), 'w') as result_file:
            result_file.write(text)

        logger.info("Wrote %s.", self.path(name))

    def functions(self):
        """Target function set, loaded or generated from the configuration."""
        source = self.config.functions
        if source.path is not None:
            try:
                series = fourier.load_series(source.path)
            except (IOError, ValueError) as error:
                raise ConfigError("Failed to load function set '{}': {}".format(source.path, error))
            logger.info("Loaded %d functions from %s.", len(series), source.path)
            return series

        seed = self.config.seed if source.seed is None else source.seed
        return fourier.random_series_set(self.config.degree, source.count, seed)

    def noise_model(self):
        settings = self.config.noise
        if settings is None or settings.model is None:
            return calibration.NoiseModel.device()

        return calibration.NoiseModel.load(settings.model)
