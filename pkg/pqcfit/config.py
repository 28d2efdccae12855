"""Experiment configuration files and environment settings."""
import collections
import logging
import os

import yaml

from . import ansatz, training
from .const import ConfigError
from .simulator.shots import ShotConfig

logger = logging.getLogger(__name__)

EXPERIMENT_KINDS = (
    'capability',
    'noisy-capability',
    'shot-capability',
    'coeffs',
    'barren',
    'counts',
    'fourier-gen',
    'dla',
)

# Kinds that need an ansatz.
ANSATZ_KINDS = frozenset(EXPERIMENT_KINDS) - frozenset(['fourier-gen'])

DEFAULT_TARGET_SCALE = 0.75
DEFAULT_SELECTED_FUNCTIONS = 10
DEFAULT_COEFFICIENT_SAMPLES = 100

FunctionSource = collections.namedtuple('FunctionSource', [
    'count',
    'seed',  # None uses the experiment seed
    'path',  # series file to load instead of generating
])
FunctionSource.__new__.__defaults__ = (100, None, None)

NoiseSettings = collections.namedtuple('NoiseSettings', [
    'model',  # noise model file, None for the built-in device
    'mapping',  # physical qubits, None for the default mapping
    'target_scale',
    'select',  # number of least correlated functions to train on, None for all
    'literal',  # literal phase damping rate
])
NoiseSettings.__new__.__defaults__ = (
    None, None, DEFAULT_TARGET_SCALE, DEFAULT_SELECTED_FUNCTIONS, False)

BarrenSettings = collections.namedtuple('BarrenSettings', ['trials', 'mode'])
BarrenSettings.__new__.__defaults__ = (10, 'probe')

ExperimentConfig = collections.namedtuple('ExperimentConfig', [
    'kind',
    'seed',
    'degree',
    'ansatz',
    'functions',
    'train',
    'workers',
    'output',
    'shots',
    'noise',
    'barren',
    'samples',
    'qubit_limit',  # None uses the environment limit of the kind
])

_TOP_LEVEL_KEYS = frozenset(ExperimentConfig._fields)
_TRAIN_KEYS = frozenset(training.TrainConfig._fields) - frozenset(['seed']) | frozenset(
    ['preset', 'preset_epochs'])


def env_int(name, default):
    """Integer environment setting, the default is used for malformed values."""
    try:
        return int(os.environ.get(name, str(default)))
    except ValueError:
        logger.warning("Malformed value for %s, using %s.", name, default)
        return default


def default_workers():
    return max(1, env_int('PQCFIT_WORKERS', 1))


def default_output():
    return os.environ.get('PQCFIT_OUTPUT', 'results')


def qubit_limit(kind):
    """Largest register allowed for shot and noisy capability runs."""
    if kind == 'shot-capability':
        return env_int('PQCFIT_SHOT_QUBIT_LIMIT', 6)
    elif kind == 'noisy-capability':
        return env_int('PQCFIT_NOISE_QUBIT_LIMIT', 4)


def _section(document, key, factory, allowed=None):
    value = document.get(key)
    if value is None:
        return None
    if not isinstance(value, dict):
        raise ConfigError("Section '{}' must be a mapping.".format(key))

    allowed = allowed or frozenset(factory._fields)
    unknown = set(value) - allowed
    if unknown:
        raise ConfigError("Unknown keys in section '{}': {}.".format(key, ', '.join(sorted(unknown))))

    return value


def _train_config(section, seed, degree):
    section = dict(section or {})
    preset = section.pop('preset', None)
    preset_epochs = section.pop('preset_epochs', 120)
    if preset is not None:
        if 'schedule' in section:
            raise ConfigError("Training section sets both a preset and a schedule.")
        section['schedule'] = training.preset_schedule(preset, preset_epochs)

    if 'schedule' in section:
        try:
            section['schedule'] = tuple((int(epochs), float(rate)) for epochs, rate in section['schedule'])
        except (TypeError, ValueError):
            raise ConfigError("Malformed training schedule: {}.".format(section['schedule']))

    for key in ('cutoff', 'adam_beta1', 'adam_beta2', 'adam_epsilon', 'init_low', 'init_high'):
        if key in section:
            section[key] = float(section[key])

    config = training.TrainConfig(seed=seed, **section)
    if config.batch_size is None and degree is not None:
        config = config._replace(batch_size=training.default_batch_size(degree))

    return training.validate_config(config)


def _resolve_degree(document, spec):
    degree = document.get('degree')
    if degree is not None:
        degree = int(degree)
        if degree < 1:
            raise ConfigError("Degree must be positive, got {}.".format(degree))
        return degree

    if spec is not None:
        return ansatz.max_degree(ansatz.build(spec))


def _check_kind(config):
    if config.kind in ANSATZ_KINDS and config.ansatz is None:
        raise ConfigError("Experiment '{}' needs an ansatz section.".format(config.kind))
    if config.kind == 'fourier-gen' and config.degree is None:
        raise ConfigError("Experiment 'fourier-gen' needs a degree.")
    if config.kind == 'shot-capability' and config.shots is None:
        raise ConfigError("Experiment 'shot-capability' needs a shots section.")
    if config.shots is not None and config.shots.shots < 1:
        raise ConfigError("Number of shots must be positive, got {}.".format(config.shots.shots))
    if config.functions.path is not None and not os.path.exists(config.functions.path):
        raise ConfigError("Function set file '{}' does not exist.".format(config.functions.path))
    if config.noise is not None and config.noise.model is not None and not os.path.exists(config.noise.model):
        raise ConfigError("Noise model file '{}' does not exist.".format(config.noise.model))
    if config.barren.mode not in ('probe', 'all'):
        raise ConfigError("Unknown barren probe mode '{}'.".format(config.barren.mode))

    limit = config.qubit_limit or qubit_limit(config.kind)
    if limit is not None:
        num_qubits = ansatz.build(config.ansatz).num_qubits
        if num_qubits > limit:
            raise ConfigError("Experiment '{}' is limited to {} qubits, got {}.".format(
                config.kind, limit, num_qubits))


def parse_config(text, overrides=None):
    """Parse and default-fill an experiment configuration.

    :param text: YAML document
    :param overrides: Mapping of top-level values taking precedence over the
        document, None values are ignored
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as error:
        mark = getattr(error, 'problem_mark', None)
        if mark is not None:
            raise ConfigError("Failed to parse configuration at line {}, column {}: {}".format(
                mark.line + 1, mark.column + 1, getattr(error, 'problem', error)))
        raise ConfigError("Failed to parse configuration: {}".format(error))

    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise ConfigError("Configuration must be a mapping.")

    document = dict(document)
    for key, value in (overrides or {}).items():
        if value is not None:
            document[key] = value

    unknown = set(document) - _TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError("Unknown configuration keys: {}.".format(', '.join(sorted(unknown))))

    kind = document.get('kind')
    if kind not in EXPERIMENT_KINDS:
        raise ConfigError("Unknown experiment kind '{}', expected one of {}.".format(
            kind, ', '.join(EXPERIMENT_KINDS)))

    try:
        seed = int(document.get('seed', 0))
        spec = None
        if document.get('ansatz') is not None:
            spec = ansatz.spec_from_dict(document['ansatz'])
        degree = _resolve_degree(document, spec)

        functions = FunctionSource(**(_section(document, 'functions', FunctionSource) or {}))
        functions = functions._replace(count=int(functions.count))
        if functions.count < 1:
            raise ConfigError("Function count must be positive, got {}.".format(functions.count))
        train = _train_config(_section(document, 'train', None, _TRAIN_KEYS), seed, degree)

        shots = _section(document, 'shots', ShotConfig)
        if shots is not None:
            shots = ShotConfig(int(shots['shots']), int(shots.get('seed', seed)))

        noise = _section(document, 'noise', NoiseSettings)
        if noise is not None or kind == 'noisy-capability':
            noise = NoiseSettings(**(noise or {}))
            if noise.mapping is not None:
                noise = noise._replace(mapping=tuple(int(qubit) for qubit in noise.mapping))
            noise = noise._replace(target_scale=float(noise.target_scale))

        barren = BarrenSettings(**(_section(document, 'barren', BarrenSettings) or {}))
        limit = document.get('qubit_limit')
        config = ExperimentConfig(
            kind=kind,
            seed=seed,
            degree=degree,
            ansatz=spec,
            functions=functions,
            train=train,
            workers=int(document.get('workers') or default_workers()),
            output=str(document.get('output') or default_output()),
            shots=shots,
            noise=noise,
            barren=barren,
            samples=int(document.get('samples', DEFAULT_COEFFICIENT_SAMPLES)),
            qubit_limit=None if limit is None else int(limit),
        )
    except (KeyError, TypeError, ValueError) as error:
        raise ConfigError("Malformed configuration: {}".format(error))

    _check_kind(config)
    return config


def load_config(path, overrides=None):
    """Load an experiment configuration file."""
    try:
        with open(path) as config_file:
            text = config_file.read()
    except IOError as error:
        raise ConfigError("Failed to read configuration '{}': {}".format(path, error))

    return parse_config(text, overrides)


def config_to_dict(config):
    """Plain mapping of a configuration, accepted back by parse_config."""
    train = config.train._asdict()
    del train['seed']
    train['schedule'] = [list(segment) for segment in config.train.schedule]

    document = {
        'kind': config.kind,
        'seed': config.seed,
        'degree': config.degree,
        'ansatz': None if config.ansatz is None else ansatz.spec_to_dict(config.ansatz),
        'functions': config.functions._asdict(),
        'train': train,
        'workers': config.workers,
        'output': config.output,
        'shots': None if config.shots is None else config.shots._asdict(),
        'noise': None,
        'barren': config.barren._asdict(),
        'samples': config.samples,
        'qubit_limit': config.qubit_limit,
    }
    if config.noise is not None:
        noise = config.noise._asdict()
        if noise['mapping'] is not None:
            noise['mapping'] = list(noise['mapping'])
        document['noise'] = noise

    return document


def dump_config(config):
    """Serialize a configuration to YAML."""
    return yaml.safe_dump(config_to_dict(config), default_flow_style=False, sort_keys=False)
