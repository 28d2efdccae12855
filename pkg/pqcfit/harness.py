"""Learning capability experiments, confidence intervals and gradient variance probes."""
import collections
import logging
import multiprocessing

import numpy as np
from scipy import stats

from . import ansatz, autodiff, fourier, training
from .const import ConfigError
from .evaluators import NoisyEvaluator, ShotEvaluator
from .simulator import shots

logger = logging.getLogger(__name__)

# Number of equal-width loss histogram bins.
HISTOGRAM_BINS = 20

# Coefficients with a larger magnitude count as reached.
COEFFICIENT_THRESHOLD = 0.01

# Angle the barren probe parameter is held at.
PROBE_ANGLE = 0.0

BARREN_MODES = ('probe', 'all')

EVALUATION_MODES = ('analytic', 'shots', 'noisy')

Evaluation = collections.namedtuple('Evaluation', [
    'mode',
    'shots',  # shots per expectation value, None for exact values
    'noise',  # NoiseModel for noisy runs
    'mapping',  # physical qubits of the logical register
    'scale',  # factor applied to the targets
    'literal',  # literal phase damping rate
    'shot_seed',  # base seed of the shot streams
])
Evaluation.__new__.__defaults__ = ('analytic', None, None, None, 1.0, False, 0)

CapabilityResult = collections.namedtuple('CapabilityResult', [
    'losses',
    'mu',
    'ci_half_width',
    'ci_defined',  # False for a single function, half width is then 0
    'histogram',
    'histogram_edges',
    'epochs',
    'seeds',
    'metadata',
])

BarrenProbeResult = collections.namedtuple('BarrenProbeResult', [
    'variance_of_gradient',
    'sample_count',
    'mode',
    'parameter',  # probe parameter index, None in the all-parameters mode
])

CoefficientStudy = collections.namedtuple('CoefficientStudy', [
    'frequencies',
    'samples',  # complex array of shape (num_samples, d + 1)
    'max_real',
    'max_imag',
    'fraction_reached',
])


def confidence_interval(losses, level=0.95):
    """Mean and Student-t half width using the corrected standard deviation.

    A single sample has no spread estimate, its half width is reported as 0.
    """
    losses = np.asarray(losses, dtype=np.float64)
    if len(losses) == 0:
        raise ValueError("Need at least one loss value.")
    if not 0 < level < 1:
        raise ValueError("Confidence level must be in (0, 1), got {}.".format(level))

    mean = float(np.mean(losses))
    if len(losses) == 1:
        return mean, 0.0

    deviation = float(np.std(losses, ddof=1))
    if deviation == 0:
        return mean, 0.0

    critical = stats.t.ppf(0.5 + level / 2, len(losses) - 1)
    return mean, float(critical * deviation / np.sqrt(len(losses)))


def loss_histogram(losses, bins=HISTOGRAM_BINS):
    """Counts in equal-width bins spanning [min, max] of the finite losses.

    Non-finite losses of diverged trainings are counted in the last bin, so
    the counts always sum to the number of losses.
    """
    losses = np.asarray(losses, dtype=np.float64)
    finite = losses[np.isfinite(losses)]
    if len(finite) == 0:
        counts, edges = np.zeros(bins, dtype=int), np.zeros(bins + 1)
    else:
        counts, edges = np.histogram(finite, bins=bins, range=(finite.min(), finite.max()))

    diverged = len(losses) - len(finite)
    if diverged:
        logger.warning("%d of %d losses are not finite.", diverged, len(losses))
        counts[-1] += diverged

    return counts, edges


def function_degree(functions):
    """Common degree of a function set."""
    degrees = sorted(set(series.degree for series in functions))
    if not degrees:
        raise ConfigError("Function set is empty.")
    if len(degrees) > 1:
        raise ConfigError("Function set mixes degrees {}.".format(degrees))

    return degrees[0]


def _evaluators(circuit, evaluation, index):
    if evaluation.mode == 'analytic':
        return None, None
    elif evaluation.mode == 'shots':
        rng = shots.make_rng(evaluation.shot_seed, index)
        return ShotEvaluator(circuit, evaluation.shots, rng), None
    elif evaluation.mode == 'noisy':
        rng = shots.make_rng(evaluation.shot_seed, index) if evaluation.shots else None
        train_evaluator = NoisyEvaluator(
            circuit, evaluation.noise, evaluation.mapping, evaluation.shots, rng, evaluation.literal)
        validation_evaluator = NoisyEvaluator(
            circuit, evaluation.noise, evaluation.mapping, literal=evaluation.literal)
        return train_evaluator, validation_evaluator

    raise ConfigError("Unknown evaluation mode '{}'.".format(evaluation.mode))


def _train_job(job):
    """Train one function, run inside a worker."""
    index, spec, series, config, seed, evaluation = job
    circuit = ansatz.build(spec)
    rng = np.random.Generator(np.random.Philox(seed))
    evaluator, validation_evaluator = _evaluators(circuit, evaluation, index)
    result = training.train(
        circuit, series, config, rng,
        evaluator=evaluator,
        validation_evaluator=validation_evaluator,
        scale=evaluation.scale,
    )
    return index, result.final_validation_loss, result.epochs_run


def learning_capability(spec, functions, config, workers=1, evaluation=None, progress=None):
    """Average final validation loss of one ansatz over a function set.

    Function i trains with seed config.seed + i. Results are collected in
    function order, so they do not depend on the number of workers.

    :param spec: LayeredSpec or DqnnSpec
    :param functions: List of FourierSeries of a single degree
    :param config: TrainConfig
    :param workers: Number of worker processes, 1 trains in process
    :param evaluation: Evaluation settings, analytic by default
    :param progress: Optional callable(index, loss, epochs) for completed functions
    """
    degree = function_degree(functions)
    training.validate_config(config)
    if evaluation is None:
        evaluation = Evaluation()
    if evaluation.mode not in EVALUATION_MODES:
        raise ConfigError("Unknown evaluation mode '{}'.".format(evaluation.mode))

    # Fail on bad specs before spawning workers.
    ansatz.build(spec)

    seeds = [int(config.seed) + index for index in range(len(functions))]
    jobs = [
        (index, spec, series, config, seeds[index], evaluation)
        for index, series in enumerate(functions)
    ]

    losses = np.zeros(len(functions))
    epochs = np.zeros(len(functions), dtype=int)

    def collect(outcome):
        index, loss, epochs_run = outcome
        losses[index] = loss
        epochs[index] = epochs_run
        logger.info("Function %d: loss %.3e after %d epochs.", index, loss, epochs_run)
        if progress is not None:
            progress(index, loss, epochs_run)

    if workers <= 1:
        for job in jobs:
            collect(_train_job(job))
    else:
        pool = multiprocessing.Pool(workers)
        try:
            for outcome in pool.imap(_train_job, jobs):
                collect(outcome)
        finally:
            pool.close()
            pool.join()

    mu, half_width = confidence_interval(losses)
    histogram, edges = loss_histogram(losses)
    metadata = {
        'ansatz': ansatz.spec_to_dict(spec),
        'degree': degree,
        'functions': len(functions),
        'evaluation': evaluation.mode,
        'shots': evaluation.shots,
        'target_scale': evaluation.scale,
    }
    return CapabilityResult(
        losses, mu, half_width, len(losses) > 1, histogram, edges, epochs, seeds, metadata)


def probe_parameter(circuit):
    """Index of the first trainable parameter acting on qubit 0."""
    for op in circuit.trainable_ops:
        if 0 in op.qubits:
            return op.binding.index

    raise ConfigError("Circuit has no trainable gate on qubit 0.")


def barren_variance(spec, functions, trials_per_function, rng, mode='probe'):
    """Variance of loss gradients under random initialization.

    Every trial draws all parameters from Uniform[0, 2 pi) and computes the
    gradient of the MSE over the full training set of one function. In probe
    mode the first parameter on qubit 0 is held at a fixed angle and the
    variance of its gradient is pooled over functions and trials. In all mode
    every parameter is random and the per-parameter variances are averaged.
    """
    if mode not in BARREN_MODES:
        raise ConfigError("Unknown barren probe mode '{}'.".format(mode))
    if trials_per_function < 1:
        raise ValueError("Need at least one trial per function, got {}.".format(trials_per_function))

    circuit = ansatz.build(spec)
    function_degree(functions)
    probe = probe_parameter(circuit)

    gradients = []
    for series in functions:
        train_set, _ = training.make_datasets(series)
        for _ in range(trials_per_function):
            params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
            if mode == 'probe':
                params[probe] = PROBE_ANGLE
            _, grad = autodiff.dataset_loss_and_gradient(circuit, params, train_set.xs, train_set.ys)
            gradients.append(grad)

    gradients = np.array(gradients)
    if mode == 'probe':
        variance = float(np.var(gradients[:, probe]))
        return BarrenProbeResult(variance, len(gradients), mode, probe)

    variance = float(np.mean(np.var(gradients, axis=0)))
    return BarrenProbeResult(variance, len(gradients), mode, None)


def coefficient_study(spec, degree, num_samples, rng):
    """Sampled Fourier coefficients of an ansatz, summarized per frequency."""
    if num_samples < 1:
        raise ValueError("Need at least one parameter sample, got {}.".format(num_samples))

    circuit = ansatz.build(spec)
    samples = np.array(fourier.sample_circuit_coefficients(circuit, degree, num_samples, rng))
    return CoefficientStudy(
        np.arange(degree + 1),
        samples,
        np.max(np.abs(samples.real), axis=0),
        np.max(np.abs(samples.imag), axis=0),
        np.mean(np.abs(samples) > COEFFICIENT_THRESHOLD, axis=0),
    )
