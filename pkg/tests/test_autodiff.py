import numpy as np
import pytest

from pqcfit import autodiff
from pqcfit.simulator import gates, statevector
from pqcfit.simulator.circuit import DATA_INPUT, Circuit, Trainable


def _close(first, second, rel=1e-6, floor=1e-9):
    return np.all(np.abs(first - second) <= np.maximum(rel * np.abs(second), floor))


def test_single_rotation_gradient():
    circuit = Circuit(1).add(gates.RY, [0], Trainable(0))
    value, grad = autodiff.adjoint_gradient(circuit, [0.3], 0.0)
    assert value == pytest.approx(np.cos(0.3))
    assert grad[0] == pytest.approx(-np.sin(0.3))

    shifted = autodiff.parameter_shift_gradient(
        circuit, [0.3], 0.0, lambda params: statevector.model_value(circuit, params, 0.0))
    assert shifted[0] == pytest.approx(-np.sin(0.3), abs=1e-12)


def test_gradient_oracles_agree(rng, random_circuit):
    for index in range(100):
        num_qubits = 1 + index % 4
        circuit = random_circuit(rng, num_qubits, 10)
        if circuit.num_params == 0:
            continue

        params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
        x = rng.uniform(0, 2 * np.pi)

        def value(shifted):
            return statevector.model_value(circuit, shifted, x)

        _, adjoint = autodiff.adjoint_gradient(circuit, params, x)
        shifted = autodiff.parameter_shift_gradient(circuit, params, x, value)
        finite = autodiff.finite_difference_gradient(value, params)
        assert np.allclose(adjoint, shifted, atol=1e-10)
        assert _close(finite, adjoint)


def test_crx_four_term_rule_matches_finite_differences(rng):
    circuit = Circuit(2)
    circuit.add(gates.RY, [0], Trainable(0))
    circuit.add(gates.RX, [1], DATA_INPUT)
    circuit.add(gates.CRX, [0, 1], Trainable(1))
    for _ in range(10):
        params = rng.uniform(0, 2 * np.pi, size=2)

        def value(shifted):
            return statevector.model_value(circuit, shifted, 0.4)

        shifted = autodiff.parameter_shift_gradient(circuit, params, 0.4, value)
        finite = autodiff.finite_difference_gradient(value, params)
        assert np.allclose(shifted, finite, atol=1e-8)


def test_gradient_is_periodic(rng, random_circuit):
    circuit = random_circuit(rng, 2, 8, kinds=(gates.RY, gates.RZ, gates.RXX, gates.CNOT))
    params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
    _, first = autodiff.adjoint_gradient(circuit, params, 0.2)
    _, second = autodiff.adjoint_gradient(circuit, params + 2 * np.pi, 0.2)
    assert np.allclose(first, second, atol=1e-10)


def test_perfect_fit_has_zero_loss_and_gradient(rng):
    circuit = Circuit(1)
    circuit.add(gates.RY, [0], Trainable(0))
    circuit.add(gates.RX, [0], DATA_INPUT)
    params = [0.7]
    xs = np.linspace(0, 2 * np.pi, 9)
    ys = statevector.model_values(circuit, params, xs)
    loss, grad = autodiff.dataset_loss_and_gradient(circuit, params, xs, ys)
    assert loss == pytest.approx(0.0, abs=1e-24)
    assert np.allclose(grad, 0.0, atol=1e-12)


def test_single_point_chain_rule():
    circuit = Circuit(1).add(gates.RY, [0], Trainable(0))
    residual = 0.25
    value = np.cos(0.9)
    loss, grad = autodiff.dataset_loss_and_gradient(circuit, [0.9], [0.0], [value - residual])
    assert loss == pytest.approx(residual ** 2)
    assert grad[0] == pytest.approx(2 * residual * -np.sin(0.9))


def test_loss_gradient_matches_finite_differences(rng, random_circuit):
    for _ in range(10):
        circuit = random_circuit(rng, 3, 12)
        if circuit.num_params == 0:
            continue
        params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
        xs = rng.uniform(0, 2 * np.pi, size=6)
        ys = rng.uniform(-1, 1, size=6)

        _, grad = autodiff.dataset_loss_and_gradient(circuit, params, xs, ys)
        finite = autodiff.finite_difference_gradient(
            lambda shifted: autodiff.dataset_loss_and_gradient(circuit, shifted, xs, ys)[0], params)
        assert _close(finite, grad)


def test_batched_loss_is_weighted_average(rng, random_circuit):
    circuit = random_circuit(rng, 2, 10)
    params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
    xs = np.linspace(0, 2 * np.pi, 10)
    ys = np.sin(xs) / 2
    loss, grad = autodiff.dataset_loss_and_gradient(circuit, params, xs, ys)

    parts = [autodiff.dataset_loss_and_gradient(circuit, params, xs[batch], ys[batch])
             for batch in (slice(0, 3), slice(3, 10))]
    assert loss == pytest.approx((3 * parts[0][0] + 7 * parts[1][0]) / 10, abs=1e-12)
    assert np.allclose(grad, (3 * parts[0][1] + 7 * parts[1][1]) / 10, atol=1e-12)


def test_empty_dataset_is_rejected():
    circuit = Circuit(1).add(gates.RY, [0], Trainable(0))
    with pytest.raises(ValueError):
        autodiff.dataset_loss_and_gradient(circuit, [0.1], [], [])
    with pytest.raises(ValueError):
        autodiff.dataset_loss_and_gradient(circuit, [0.1], [0.0, 1.0], [0.0])
