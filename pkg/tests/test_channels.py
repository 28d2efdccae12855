import numpy as np
import pytest
from scipy.stats import unitary_group

from pqcfit.const import ConfigError
from pqcfit.simulator import calibration, channels

T_GATE = 35.56
T1 = 9.6
T2 = 16.47

# Eigenstates of X, Y and Z, a spherical 2-design.
DESIGN_STATES = [
    np.array([1, 0]), np.array([0, 1]),
    np.array([1, 1]) / np.sqrt(2), np.array([1, -1]) / np.sqrt(2),
    np.array([1, 1j]) / np.sqrt(2), np.array([1, -1j]) / np.sqrt(2),
]


def design_average_fidelity(channel):
    fidelities = []
    for psi in DESIGN_STATES:
        rho = np.outer(psi, psi.conj())
        fidelities.append(np.real(psi.conj() @ channel.apply(rho) @ psi))
    return float(np.mean(fidelities))


def all_channels():
    return [
        channels.amplitude_damping(0.0),
        channels.amplitude_damping(0.3),
        channels.amplitude_damping(1.0),
        channels.phase_damping(0.2),
        channels.depolarizing(0.0),
        channels.depolarizing(0.4),
        channels.depolarizing(1.0),
        channels.bit_flip(0.022),
        channels.thermal_relaxation(T_GATE, T1, T2),
        channels.thermal_relaxation(T_GATE, T1, T2, literal=True),
        channels.thermal_relaxation(500.0, 150.65, 55.92).then(channels.depolarizing(0.01)),
    ]


def test_channels_are_complete():
    for channel in all_channels():
        assert np.allclose(channel.completeness(), np.eye(2), atol=1e-10)


def test_probabilities_out_of_range_are_rejected():
    for factory in (channels.amplitude_damping, channels.phase_damping, channels.depolarizing, channels.bit_flip):
        with pytest.raises(ValueError):
            factory(-0.1)
        with pytest.raises(ValueError):
            factory(1.5)


def test_damping_limits():
    rho = np.array([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, 0.7]])
    assert channels.amplitude_damping(0.0).is_identity()
    assert channels.phase_damping(0.0).is_identity()
    assert np.allclose(channels.amplitude_damping(1.0).apply(rho), [[1, 0], [0, 0]])

    dephased = channels.phase_damping(0.4).apply(rho)
    assert np.allclose(np.diag(dephased), np.diag(rho))
    assert np.allclose(channels.depolarizing(0.75).apply(rho), np.eye(2) / 2)


def test_full_depolarizing_mixes_every_state(rng):
    zero = np.array([[1, 0], [0, 0]], dtype=np.complex128)
    assert np.allclose(channels.depolarizing(0.75).apply(zero), np.eye(2) / 2, atol=1e-14)

    for _ in range(20):
        vector = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        rho = vector @ vector.conj().T
        rho /= np.trace(rho)
        assert np.allclose(channels.depolarizing(0.75).apply(rho), np.eye(2) / 2, atol=1e-14)

    pauli = channels.depolarizing(0.3).apply(zero)
    assert np.allclose(np.diag(pauli), [1 - 0.2, 0.2])


def test_relaxation_rates():
    gamma_ad = channels.amplitude_damping_gamma(T_GATE, T1)
    assert gamma_ad == pytest.approx(1 - np.exp(-0.03556 / 9.6), abs=1e-12)
    assert gamma_ad == pytest.approx(3.698e-3, abs=1e-6)

    gamma_pd = channels.phase_damping_gamma(T_GATE, T1, T2)
    assert gamma_pd == pytest.approx(-np.expm1(0.03556 / 9.6 - 2 * 0.03556 / 16.47), abs=1e-15)
    assert gamma_pd == pytest.approx(6.14e-4, abs=1e-5)

    literal = channels.phase_damping_gamma(T_GATE, T1, T2, literal=True)
    assert literal == pytest.approx(np.exp(-0.03556 / 9.6) - np.exp(-2 * 0.03556 / 16.47), abs=1e-15)


def test_dephasing_is_clamped_when_t2_exceeds_twice_t1():
    assert channels.phase_damping_gamma(T_GATE, 10.0, 30.0) == 0.0


def test_zero_duration_relaxation_is_identity():
    assert channels.thermal_relaxation(0.0, T1, T2).is_identity(atol=1e-12)


def test_average_fidelity_closed_form():
    assert channels.average_fidelity_tr(0.0, T1, T2) == pytest.approx(1.0)
    assert channels.average_fidelity_tr(1e12, T1, T2) == pytest.approx(0.5)
    assert 0.999 < channels.average_fidelity_tr(T_GATE, T1, T2) < 1.0

    for t, t1, t2 in [(T_GATE, T1, T2), (400.0, 150.65, 55.92), (3000.0, 20.0, 35.0)]:
        channel = channels.thermal_relaxation(t, t1, t2)
        expected = channels.average_fidelity_tr(t, t1, t2)
        assert design_average_fidelity(channel) == pytest.approx(expected, abs=1e-12)
        assert channels.channel_average_fidelity(channel) == pytest.approx(expected, abs=1e-12)


def test_average_fidelity_haar_sampling():
    channel = channels.thermal_relaxation(3000.0, 20.0, 35.0)
    unitaries = unitary_group.rvs(2, size=4000, random_state=7)
    fidelities = []
    for unitary in unitaries:
        psi = unitary[:, 0]
        fidelities.append(np.real(psi.conj() @ channel.apply(np.outer(psi, psi.conj())) @ psi))
    assert np.mean(fidelities) == pytest.approx(channels.average_fidelity_tr(3000.0, 20.0, 35.0), abs=5e-3)


def test_depolarization_probability():
    assert channels.depolarization_probability(1.0, 0.01) == pytest.approx(0.02)
    assert channels.depolarization_probability(0.99, 0.005) == 0.0
    with pytest.raises(ValueError):
        channels.depolarization_probability(0.99, 1.5)
    with pytest.raises(ValueError):
        channels.depolarization_probability(0.4, 0.01)


def test_gate_channel_reaches_gate_error():
    fidelity = channels.average_fidelity_tr(T_GATE, T1, T2)
    for gate_error in (0.002, 0.01, 0.05):
        probability = channels.depolarization_probability(fidelity, gate_error)
        channel = channels.thermal_relaxation(T_GATE, T1, T2).then(channels.depolarizing(0.75 * probability))
        assert channels.channel_average_fidelity(channel) == pytest.approx(1 - gate_error, abs=1e-12)


def test_device_model():
    model = calibration.NoiseModel.device()
    assert sorted(model.qubits) == list(range(12))
    assert model.qubit(9) == model.qubit(4)
    assert model.coupling(8, 10).two_gate_time == calibration.DEVICE_COUPLINGS[(3, 5)][0]
    assert model.coupling(11, 10).two_gate_error == calibration.DEVICE_COUPLINGS[(6, 5)][1]
    assert model.coupling(2, 7).two_gate_time == calibration.DEVICE_COUPLINGS[(1, 2)][0]
    for pair in [(0, 1), (1, 2), (2, 7), (7, 9), (9, 10)]:
        assert model.coupling(*pair).pair == pair

    with pytest.raises(ConfigError):
        model.qubit(12)


def test_coupling_fallbacks():
    qubits = {index: calibration.QubitCalibration(100.0, 80.0, 35.0, 0.001, 0.01) for index in range(3)}
    couplings = {
        (0, 1): calibration.CouplingCalibration((0, 1), 300.0, 0.01),
        (1, 2): calibration.CouplingCalibration((1, 2), 500.0, 0.03),
    }
    model = calibration.NoiseModel(qubits, couplings)
    assert model.coupling(1, 0).two_gate_time == 300.0
    fallback = model.coupling(0, 2)
    assert fallback.two_gate_time == pytest.approx(400.0)
    assert fallback.two_gate_error == pytest.approx(0.02)

    with pytest.raises(ConfigError):
        calibration.NoiseModel(qubits, {(0, 5): calibration.CouplingCalibration((0, 5), 1.0, 0.0)})


def test_noise_model_file_round_trip(tmp_path):
    model = calibration.NoiseModel.device()
    path = tmp_path / 'device.yaml'
    path.write_text(model.dump())
    loaded = calibration.NoiseModel.load(str(path))
    assert loaded.qubits == model.qubits
    assert loaded.couplings == model.couplings

    broken = tmp_path / 'broken.yaml'
    broken.write_text('qubits:\n  - [0, 1.0]\n')
    with pytest.raises(ConfigError):
        calibration.NoiseModel.load(str(broken))


def test_default_mappings():
    assert calibration.default_mapping(6) == [0, 1, 2, 7, 9, 10]
    assert calibration.default_mapping(4) == [0, 1, 2, 3]
