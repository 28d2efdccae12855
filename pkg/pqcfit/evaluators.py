"""Model evaluation backends shared by training and the harness.

Every evaluator exposes values(params, xs) and loss_and_gradient(params, xs, ys).
"""
import numpy as np

from . import autodiff
from .simulator import density, shots, statevector


class AnalyticEvaluator(object):
    """Exact expectation values and adjoint gradients."""
    name = 'analytic'

    def __init__(self, circuit):
        self.circuit = circuit

    def values(self, params, xs):
        return statevector.model_values(self.circuit, params, xs)

    def loss_and_gradient(self, params, xs, ys):
        return autodiff.dataset_loss_and_gradient(self.circuit, params, xs, ys)


class _ShiftEvaluator(object):
    """Evaluator differentiated with the parameter-shift rule."""

    def loss_and_gradient(self, params, xs, ys):
        xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
        values = self.values(params, xs)
        jacobian = autodiff.parameter_shift_gradient(
            self.circuit, params, xs, lambda shifted: self.values(shifted, xs))
        if jacobian.size == 0:
            jacobian = np.zeros((len(xs), 0))

        return autodiff.mse_loss_and_gradient(values, jacobian, ys)


class ShotEvaluator(_ShiftEvaluator):
    """Expectation values estimated from a finite number of shots."""
    name = 'shots'

    def __init__(self, circuit, shots_per_value, rng):
        self.circuit = circuit
        self.shots = shots_per_value
        self.rng = rng

    def values(self, params, xs):
        exact = statevector.model_values(self.circuit, params, xs)
        return shots.sample_from_expectations(exact, self.shots, self.rng)


class NoisyEvaluator(_ShiftEvaluator):
    """Density matrix evaluation under a noise model, optionally with shots."""
    name = 'noisy'

    def __init__(self, circuit, noise, mapping, shots_per_value=None, rng=None, literal=False):
        self.circuit = circuit
        self.schedule = density.NoisySchedule(circuit, noise, mapping, literal=literal)
        self.shots = shots_per_value
        self.rng = rng

    def values(self, params, xs):
        exact = density.run_noisy_batch(self.circuit, params, xs, self.schedule)
        if not self.shots:
            return exact

        return shots.sample_from_expectations(exact, self.shots, self.rng)

