"""Analytic gradients of circuit models and MSE losses."""
import numpy as np

from .simulator import gates, statevector

# Four-term shift rule for gates with generator eigenvalues {0, +-1/2}.
CRX_SHIFTS = (np.pi / 2, 3 * np.pi / 2)
CRX_COEFFICIENTS = (
    (np.sqrt(2) + 1) / (4 * np.sqrt(2)),
    -(np.sqrt(2) - 1) / (4 * np.sqrt(2)),
)

# Step of the central finite difference oracle.
FINITE_DIFFERENCE_STEP = 1e-5


def _dagger(matrix):
    return np.conj(np.swapaxes(matrix, -1, -2))


def generator_action(kind, matrix):
    """dU/dtheta = (-i/2) G U for a gate matrix U of the given kind."""
    return -0.5j * gates.gate_generator(kind) @ matrix


def adjoint_batch(circuit, params, xs):
    """Model values and parameter jacobian for every input.

    One forward sweep followed by one backward sweep that un-applies the
    gates from both the state and the adjoint state Z|psi>.

    :returns: (values of shape (B,), jacobian of shape (B, p))
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    params = np.asarray(params, dtype=np.float64)
    num_qubits = circuit.num_qubits

    psi = statevector.run_batch(circuit, params, xs)
    lam = statevector.apply_z(psi, circuit.measured_qubit, num_qubits)
    values = np.real(np.sum(np.conj(psi) * lam, axis=1))

    jacobian = np.zeros((len(xs), circuit.num_params))
    for op in reversed(circuit.ops):
        matrix = statevector.op_matrix(op, params, xs)
        inverse = _dagger(matrix)
        psi = statevector.apply_matrix(psi, inverse, op.qubits, num_qubits)

        if op.is_trainable:
            derivative = generator_action(op.kind, matrix)
            mu = statevector.apply_matrix(psi, derivative, op.qubits, num_qubits)
            jacobian[:, op.binding.index] += 2 * np.real(np.sum(np.conj(lam) * mu, axis=1))

        lam = statevector.apply_matrix(lam, inverse, op.qubits, num_qubits)

    return values, jacobian


def adjoint_gradient(circuit, params, x):
    """Model value and gradient at a single input."""
    values, jacobian = adjoint_batch(circuit, params, [x])
    return float(values[0]), jacobian[0]


def parameter_kinds(circuit):
    """Gate kind each trainable parameter is bound to."""
    kinds = [None] * circuit.num_params
    for op in circuit.trainable_ops:
        kinds[op.binding.index] = op.kind

    return kinds


def parameter_shift_gradient(circuit, params, x, evaluator):
    """Gradient from shifted evaluations.

    Pauli rotations use the two-term rule with shifts +-pi/2, CRX parameters
    the four-term rule with shifts +-pi/2 and +-3pi/2.

    :param x: Input the evaluator is bound to, kept for signature symmetry
    :param evaluator: Function mapping a parameter vector to a value (or an
        array of values, in which case the gradient gains leading axes)
    """
    params = np.asarray(params, dtype=np.float64)
    columns = []
    for index, kind in enumerate(parameter_kinds(circuit)):
        if kind in gates.PAULI_ROTATIONS:
            rule = ((np.pi / 2, 0.5),)
        else:
            rule = tuple(zip(CRX_SHIFTS, CRX_COEFFICIENTS))

        column = 0.0
        for shift, coefficient in rule:
            shifted = params.copy()
            shifted[index] += shift
            plus = np.asarray(evaluator(shifted), dtype=np.float64)
            shifted[index] -= 2 * shift
            minus = np.asarray(evaluator(shifted), dtype=np.float64)
            column = column + coefficient * (plus - minus)

        columns.append(column)

    if not columns:
        return np.zeros(0)

    return np.stack(columns, axis=-1)


def finite_difference_gradient(function, params, step=FINITE_DIFFERENCE_STEP):
    """Central finite differences of a scalar (or array valued) function."""
    params = np.asarray(params, dtype=np.float64)
    columns = []
    for index in range(len(params)):
        shifted = params.copy()
        shifted[index] += step
        plus = np.asarray(function(shifted), dtype=np.float64)
        shifted[index] -= 2 * step
        minus = np.asarray(function(shifted), dtype=np.float64)
        columns.append((plus - minus) / (2 * step))

    if not columns:
        return np.zeros(0)

    return np.stack(columns, axis=-1)


def mse_loss_and_gradient(values, jacobian, ys):
    """MSE (1/N) sum (f - y)^2 and its gradient from values and jacobian."""
    residuals = values - np.asarray(ys, dtype=np.float64)
    loss = float(np.mean(residuals ** 2))
    grad = 2.0 * residuals @ jacobian / len(residuals)
    return loss, grad


def dataset_loss_and_gradient(circuit, params, xs, ys):
    """MSE loss over a dataset and its exact gradient."""
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    ys = np.atleast_1d(np.asarray(ys, dtype=np.float64))
    if len(xs) == 0 or len(xs) != len(ys):
        raise ValueError("Dataset must be non-empty with matching lengths, got {} and {}.".format(
            len(xs), len(ys)))

    values, jacobian = adjoint_batch(circuit, params, xs)
    return mse_loss_and_gradient(values, jacobian, ys)
