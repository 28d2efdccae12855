"""Adam training of circuit parameters against a target Fourier series."""
import collections
import logging

import numpy as np

from .const import ConfigError
from .evaluators import AnalyticEvaluator

logger = logging.getLogger(__name__)

# Default learning rate schedule: (epochs, learning rate) segments.
DEFAULT_SCHEDULE = ((120, 0.5), (120, 0.1), (120, 0.05))

# Validation loss at which training terminates.
DEFAULT_CUTOFF = 5e-5

# Learning rate presets for the hyperparameter grid.
PRESETS = {
    '0': (0.3, 0.3, 0.3),
    '1a': (0.5, 0.1, 0.05),
    '1b': (0.5, 0.1, 0.1),
    '1c': (0.5, 0.5, 0.1),
    '2a': (0.1, 0.05, 0.01),
    '2b': (0.1, 0.05, 0.05),
    '2c': (0.1, 0.1, 0.05),
}

# Epochs per learning rate segment available for presets.
PRESET_EPOCHS = (40, 80, 120)

Dataset = collections.namedtuple('Dataset', ['xs', 'ys'])

TrainResult = collections.namedtuple('TrainResult', [
    'final_validation_loss',
    'epochs_run',
    'final_params',
    'loss_history',
])

AdamState = collections.namedtuple('AdamState', ['m', 'v', 't'])

TrainConfig = collections.namedtuple('TrainConfig', [
    'schedule',
    'batch_size',  # None selects the default for the target degree
    'cutoff',
    'adam_beta1',
    'adam_beta2',
    'adam_epsilon',
    'init_low',
    'init_high',
    'seed',
])
TrainConfig.__new__.__defaults__ = (
    DEFAULT_SCHEDULE, None, DEFAULT_CUTOFF, 0.9, 0.999, 1e-7, 0.0, 2 * np.pi, 0)


def preset_schedule(name, epochs=120):
    """Schedule of a named learning rate preset."""
    try:
        rates = PRESETS[str(name)]
    except KeyError:
        raise ConfigError("Unknown learning rate preset '{}'.".format(name))
    if epochs not in PRESET_EPOCHS:
        raise ConfigError("Preset epochs must be one of {}, got {}.".format(PRESET_EPOCHS, epochs))

    return tuple((epochs, rate) for rate in rates)


def validate_config(config):
    """Check a TrainConfig, raising ConfigError on violations."""
    if not config.schedule:
        raise ConfigError("Training schedule is empty.")
    for epochs, rate in config.schedule:
        if epochs <= 0 or rate <= 0:
            raise ConfigError("Schedule segments need positive epochs and rates: {}.".format(
                config.schedule))
    if config.cutoff is not None and config.cutoff <= 0:
        raise ConfigError("Cutoff must be positive, got {}.".format(config.cutoff))
    if config.batch_size is not None and config.batch_size < 1:
        raise ConfigError("Batch size must be positive, got {}.".format(config.batch_size))

    return config


def dataset_size(degree):
    return 50 if degree < 10 else 100


def default_batch_size(degree):
    return 25 if degree < 10 else 50


def make_datasets(target, scale=1.0):
    """Training grid on [0, 2 pi] inclusive and validation grid on [0, 2 pi).

    :param target: FourierSeries the labels are computed from
    :param scale: Factor applied to the labels
    """
    size = dataset_size(target.degree)
    train_xs = np.linspace(0, 2 * np.pi, size)
    validation_xs = np.linspace(0, 2 * np.pi, size, endpoint=False)
    return (
        Dataset(train_xs, scale * target(train_xs)),
        Dataset(validation_xs, scale * target(validation_xs)),
    )


def adam_state(num_params):
    return AdamState(np.zeros(num_params), np.zeros(num_params), 0)


def adam_step(params, grad, state, lr, beta1=0.9, beta2=0.999, epsilon=1e-7):
    """One bias-corrected Adam update, returns (params, state)."""
    t = state.t + 1
    m = beta1 * state.m + (1 - beta1) * grad
    v = beta2 * state.v + (1 - beta2) * grad * grad
    m_hat = m / (1 - beta1 ** t)
    v_hat = v / (1 - beta2 ** t)
    params = params - lr * m_hat / (np.sqrt(v_hat) + epsilon)
    return params, AdamState(m, v, t)


def batches(size, batch_size, rng):
    """Shuffled partition of range(size) into batches."""
    order = rng.permutation(size)
    return [order[start:start + batch_size] for start in range(0, size, batch_size)]


def _stops(loss, cutoff):
    return cutoff is not None and np.isfinite(cutoff) and loss < cutoff


def train(circuit, target, config, rng, evaluator=None, validation_evaluator=None, scale=1.0):
    """Fit circuit parameters to a target series.

    Parameters start Uniform[init_low, init_high). Every epoch reshuffles the
    training set and takes one Adam step per batch; the validation MSE is
    computed after each epoch and training terminates once it drops below the
    cutoff. A non-finite cutoff disables early stopping.

    :param evaluator: Evaluator used for training, analytic by default
    :param validation_evaluator: Evaluator used for validation, analytic by default
    :param scale: Factor applied to the target labels
    """
    validate_config(config)
    if evaluator is None:
        evaluator = AnalyticEvaluator(circuit)
    if validation_evaluator is None:
        validation_evaluator = AnalyticEvaluator(circuit)

    train_set, validation_set = make_datasets(target, scale)
    batch_size = config.batch_size or default_batch_size(target.degree)

    params = rng.uniform(config.init_low, config.init_high, size=circuit.num_params)
    state = adam_state(circuit.num_params)
    history = []
    loss = float('inf')

    for epochs, rate in config.schedule:
        for _ in range(epochs):
            for batch in batches(len(train_set.xs), batch_size, rng):
                _, grad = evaluator.loss_and_gradient(params, train_set.xs[batch], train_set.ys[batch])
                params, state = adam_step(
                    params, grad, state, rate,
                    config.adam_beta1, config.adam_beta2, config.adam_epsilon)

            values = validation_evaluator.values(params, validation_set.xs)
            loss = float(np.mean((values - validation_set.ys) ** 2))
            if not np.isfinite(loss):
                logger.warning("Validation loss diverged after %d epochs.", len(history) + 1)
            history.append(loss)

            if _stops(loss, config.cutoff):
                return TrainResult(loss, len(history), params, history)

    return TrainResult(loss, len(history), params, history)
