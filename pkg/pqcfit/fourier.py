"""Random truncated Fourier series and coefficient analysis.

A series of degree d is g(x) = c0 + sum_w (c_w e^{iwx} + conj(c_w) e^{-iwx})
with real c0, which evaluates to c0 + sum_w 2 (a_w cos wx - b_w sin wx) for
c_w = a_w + i b_w.
"""
import collections
import itertools

import numpy as np

from .simulator import statevector

# Points of the grid the maximum is searched on.
NORMALIZATION_GRID = 1024

# Newton steps refining the grid maximum.
NEWTON_STEPS = 3

# Lag grid of the cross-correlation.
CORRELATION_POINTS = 100

# Histogram bins [0, 0.1), ..., [0.9, 1.0].
CORRELATION_BINS = np.linspace(0.0, 1.0, 11)

CrossCorrelationReport = collections.namedtuple('CrossCorrelationReport', [
    'matrix',  # upper triangle, nan elsewhere
    'histogram',
    'bins',
])


class FourierSeries(object):
    """Real-valued truncated Fourier series."""

    def __init__(self, c0, coeffs):
        self.c0 = float(np.real(c0))
        self.coeffs = np.asarray(coeffs, dtype=np.complex128).reshape(-1)

    @property
    def degree(self):
        return len(self.coeffs)

    @property
    def frequencies(self):
        return np.arange(1, self.degree + 1)

    def scaled(self, factor):
        return FourierSeries(self.c0 * factor, self.coeffs * factor)

    def __call__(self, x):
        return evaluate(self, x)

    def __eq__(self, other):
        return (isinstance(other, FourierSeries) and self.c0 == other.c0
                and np.array_equal(self.coeffs, other.coeffs))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'FourierSeries(c0={!r}, coeffs={!r})'.format(self.c0, self.coeffs.tolist())


def evaluate(series, x):
    """Evaluate a series at a scalar or an array of inputs."""
    x = np.asarray(x, dtype=np.float64)
    phases = np.multiply.outer(x, series.frequencies)
    terms = 2 * (np.real(series.coeffs) * np.cos(phases) - np.imag(series.coeffs) * np.sin(phases))
    values = series.c0 + np.sum(terms, axis=-1)
    if values.ndim == 0:
        return float(values)

    return values


def _derivatives(series, x):
    omega = series.frequencies
    a = np.real(series.coeffs)
    b = np.imag(series.coeffs)
    first = np.sum(2 * omega * (-a * np.sin(omega * x) - b * np.cos(omega * x)))
    second = np.sum(-2 * omega ** 2 * (a * np.cos(omega * x) - b * np.sin(omega * x)))
    return first, second


def max_abs(series, points=NORMALIZATION_GRID):
    """Maximum of |g| located on a grid and refined with Newton steps."""
    grid = 2 * np.pi * np.arange(points) / points
    values = np.abs(evaluate(series, grid))
    best = int(np.argmax(values))
    maximum = values[best]

    x = grid[best]
    for _ in range(NEWTON_STEPS):
        first, second = _derivatives(series, x)
        if second == 0:
            break
        x = x - first / second
        maximum = max(maximum, abs(evaluate(series, x)))

    return float(maximum)


def normalize(series):
    """Rescale all coefficients so that max |g| = 1."""
    maximum = max_abs(series)
    if maximum == 0:
        return series

    return series.scaled(1.0 / maximum)


def random_series(degree, rng):
    """Sample a normalized series of the given degree.

    Real and imaginary parts of every c_w are uniform in (-0.5, 0.5), c0 is a
    single uniform real.
    """
    if degree < 1:
        raise ValueError("Degree must be at least 1, got {}.".format(degree))

    c0 = rng.uniform(-0.5, 0.5)
    coeffs = rng.uniform(-0.5, 0.5, size=degree) + 1j * rng.uniform(-0.5, 0.5, size=degree)
    return normalize(FourierSeries(c0, coeffs))


def random_series_set(degree, count, seed):
    """Reproducible set of random series."""
    rng = np.random.Generator(np.random.Philox(seed))
    return [random_series(degree, rng) for _ in range(count)]


def sample_grid(degree):
    """Equispaced inputs x_j = 2 pi j / N with N = 2d + 1."""
    points = 2 * degree + 1
    return 2 * np.pi * np.arange(points) / points


def extract_coefficients(values, degree):
    """Coefficients c_0..c_d from samples at x_j = 2 pi j / N.

    c_w = (1/N) sum_j values_j e^{-i w x_j}
    """
    values = np.asarray(values, dtype=np.float64)
    if len(values) < 2 * degree + 1:
        raise ValueError("Need at least {} samples for degree {}, got {}.".format(
            2 * degree + 1, degree, len(values)))

    return np.fft.fft(values)[:degree + 1] / len(values)


def sample_circuit_coefficients(circuit, degree, num_samples, rng):
    """Coefficients of the circuit model for random parameters Uniform[0, 2 pi)."""
    grid = sample_grid(degree)
    samples = []
    for _ in range(num_samples):
        params = rng.uniform(0, 2 * np.pi, size=circuit.num_params)
        samples.append(extract_coefficients(statevector.model_values(circuit, params, grid), degree))

    return samples


def cross_correlation(f, g, points=CORRELATION_POINTS):
    """Normalized circular cross-correlation for lags tau_k = 2 pi k / points."""
    grid = 2 * np.pi * np.arange(points) / points
    f_values = evaluate(f, grid)
    g_values = evaluate(g, grid)
    step = 2 * np.pi / points

    shifted = np.stack([np.roll(g_values, -lag) for lag in range(points)])
    correlation = shifted @ f_values * step
    norm = np.sqrt(np.sum(f_values ** 2) * step * np.sum(g_values ** 2) * step)
    if norm == 0:
        return np.zeros(points)

    return correlation / norm


def cross_correlation_max(f, g, points=CORRELATION_POINTS):
    """Largest normalized cross-correlation over all lags, in [0, 1]."""
    return float(np.clip(np.max(cross_correlation(f, g, points)), 0.0, 1.0))


def cross_correlation_report(series):
    """Pairwise maximum cross-correlations and their histogram."""
    count = len(series)
    matrix = np.full((count, count), np.nan)
    for first, second in itertools.combinations(range(count), 2):
        matrix[first, second] = cross_correlation_max(series[first], series[second])

    values = matrix[np.triu_indices(count, k=1)]
    histogram, _ = np.histogram(values, bins=CORRELATION_BINS)
    return CrossCorrelationReport(matrix, histogram, CORRELATION_BINS)


def select_least_correlated(series, count, report=None):
    """Indices of functions appearing in the least correlated pairs."""
    if report is None:
        report = cross_correlation_report(series)

    rows, columns = np.triu_indices(len(series), k=1)
    order = np.argsort(report.matrix[rows, columns], kind='stable')
    selected = []
    for pair in order:
        for index in (rows[pair], columns[pair]):
            if index not in selected and len(selected) < count:
                selected.append(int(index))

        if len(selected) >= count:
            break

    return selected


def dump_series(series):
    """Serialize a list of series, one record per line: degree c0 then (Re, Im) pairs."""
    lines = []
    for item in series:
        fields = [str(item.degree), '{:.17g}'.format(item.c0)]
        for coefficient in item.coeffs:
            fields.append('{:.17g}'.format(coefficient.real))
            fields.append('{:.17g}'.format(coefficient.imag))
        lines.append(' '.join(fields))

    return '\n'.join(lines) + '\n'


def parse_series(text):
    """Inverse of dump_series."""
    result = []
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue

        fields = line.split()
        try:
            degree = int(fields[0])
            c0 = float(fields[1])
            parts = [float(value) for value in fields[2:]]
        except (IndexError, ValueError):
            raise ValueError("Malformed series record on line {}.".format(number))
        if len(parts) != 2 * degree:
            raise ValueError("Line {} declares degree {} but has {} values.".format(
                number, degree, len(parts)))

        coeffs = np.array(parts[0::2]) + 1j * np.array(parts[1::2])
        result.append(FourierSeries(c0, coeffs))

    return result


def save_series(path, series):
    with open(path, 'w') as series_file:
        series_file.write(dump_series(series))


def load_series(path):
    with open(path) as series_file:
        return parse_series(series_file.read())
