"""Shot-based expectation values."""
import collections

import numpy as np

from . import statevector

ShotConfig = collections.namedtuple('ShotConfig', ['shots', 'seed'])


def make_rng(seed, task=0):
    """Counter-based random stream for one task."""
    return np.random.Generator(np.random.Philox(int(seed) ^ int(task)))


def sample_from_expectations(expectations, shots, rng):
    """Estimate <Z> values from shots, given the exact ones.

    Each estimate is 1 - 2k/shots with k ~ Binomial(shots, (1 - <Z>)/2).
    """
    if shots < 1:
        raise ValueError("Number of shots must be positive, got {}.".format(shots))

    expectations = np.asarray(expectations, dtype=np.float64)
    p_one = np.clip((1 - expectations) / 2, 0.0, 1.0)
    counts = rng.binomial(shots, p_one)
    return 1 - 2 * counts / shots


def sample_expectation_z(state, qubit, config, rng=None):
    """Shot estimate of <Z> on one qubit.

    :param state: StateVector instance
    :param qubit: Measured qubit
    :param config: ShotConfig instance, its seed is used when rng is not given
    """
    if rng is None:
        rng = make_rng(config.seed)

    expectation = statevector.expectation_z(state, qubit)
    return float(sample_from_expectations([expectation], config.shots, rng)[0])
