import numpy as np
import pytest

from pathtele.hilbert import H, X, Z, DensityMatrix, Operator, PureState, apply_on, basis_state
from pathtele.optics import (
    BeamSplitterParams,
    VisibilityModel,
    beam_splitter_unitary,
    depolarizing_channel,
    encoder_unitary,
    hadamard_path,
    hwp_unitary,
    path_dephasing_channel,
    path_encode,
    pbs_cnot_unitary,
)

PLUS = np.array([[0.5, 0.5], [0.5, 0.5]])


def _dm(m):
    return DensityMatrix(m, ["Apath"])


def test_beam_splitter_identity_at_zero():
    np.testing.assert_array_equal(beam_splitter_unitary(BeamSplitterParams(0, 0)).entries, np.eye(2))


def test_beam_splitter_balanced():
    out = beam_splitter_unitary(BeamSplitterParams(np.pi / 4)).entries @ [1, 0]
    np.testing.assert_allclose(out, np.array([1, 1j]) / np.sqrt(2), atol=1e-15)


def test_beam_splitter_unitary_and_split_ratio(rng):
    for theta, phi in rng.uniform(-np.pi, np.pi, size=(100, 2)):
        params = BeamSplitterParams(theta, phi)
        u = beam_splitter_unitary(params)
        assert u.is_unitary(1e-12)
        assert abs(u.entries[0, 0]) ** 2 == pytest.approx(np.cos(theta) ** 2, abs=1e-12)
        assert params.reflection + params.transmission == 1.0


def test_path_encode_examples():
    np.testing.assert_array_equal(path_encode(1.0).amplitudes, [1, 0])
    np.testing.assert_allclose(path_encode(0.5).amplitudes, np.array([1, 1]) / np.sqrt(2), atol=1e-15)
    np.testing.assert_allclose(path_encode(0.5, np.pi / 2).amplitudes, np.array([1, 1j]) / np.sqrt(2), atol=1e-15)
    with pytest.raises(ValueError):
        path_encode(1.5)


def test_encoder_matches_path_encode(rng):
    for eta, phase in zip(rng.uniform(0, 1, 50), rng.uniform(-np.pi, np.pi, 50)):
        u = encoder_unitary(eta, phase)
        assert u.is_unitary()
        np.testing.assert_allclose(u.entries[:, 0], path_encode(eta, phase).amplitudes, atol=1e-12)


def test_pbs_cnot():
    u = pbs_cnot_unitary()
    labels = ("Apol", "Apath")
    for pol in (0, 1):
        for path in (0, 1):
            out = apply_on(u, labels, basis_state([pol, path], labels))
            np.testing.assert_array_equal(out.amplitudes, basis_state([pol, path ^ pol], labels).amplitudes)
    np.testing.assert_array_equal(u.entries @ u.entries, np.eye(4))


def test_pbs_takes_path_coded_state_to_cnot_output(rng):
    a, b = path_encode(0.3, 1.1).amplitudes
    labels = ("Apol", "Apath", "Bpol")
    amp = np.zeros(8, complex)
    amp[[0b000, 0b010, 0b101, 0b111]] = np.array([a, b, a, b]) / np.sqrt(2)
    out = apply_on(pbs_cnot_unitary(), ["Apol", "Apath"], PureState(amp, labels))
    expected = np.zeros(8, complex)
    # V branch carries a|1> + b|0>
    expected[[0b000, 0b010, 0b111, 0b101]] = np.array([a, b, a, b]) / np.sqrt(2)
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)


@pytest.mark.parametrize(
    "angle, matrix",
    [(0, Z), (np.pi / 8, H), (np.pi / 4, X)],
)
def test_hwp_special_angles(angle, matrix):
    np.testing.assert_allclose(hwp_unitary(angle).entries, matrix, atol=1e-15)


def test_hwp_unitary_hermitian(rng):
    for angle in rng.uniform(-np.pi, np.pi, 30):
        u = hwp_unitary(angle).entries
        assert hwp_unitary(angle).is_unitary()
        np.testing.assert_allclose(u, u.conj().T, atol=1e-12)


def test_dephasing_channel():
    assert path_dephasing_channel(0.3).is_trace_preserving()
    out = apply_on(path_dephasing_channel(1), ["Apath"], _dm(PLUS))
    np.testing.assert_allclose(out.entries, PLUS, atol=1e-12)
    out = apply_on(path_dephasing_channel(0), ["Apath"], _dm(PLUS))
    np.testing.assert_allclose(out.entries, np.eye(2) / 2, atol=1e-12)
    out = apply_on(path_dephasing_channel(0.83), ["Apath"], _dm(PLUS))
    np.testing.assert_allclose(out.entries, [[0.5, 0.415], [0.415, 0.5]], atol=1e-12)
    with pytest.raises(ValueError):
        path_dephasing_channel(-0.1)


def test_dephasing_scales_coherence_only(rng):
    from pathtele.hilbert import random_density

    for V in (0.0, 0.2, 0.83, 1.0):
        rho = random_density(["Apath"], rng)
        out = apply_on(path_dephasing_channel(V), ["Apath"], rho).entries
        np.testing.assert_allclose(np.diag(out), np.diag(rho.entries), atol=1e-15)
        assert out[0, 1] == pytest.approx(V * rho.entries[0, 1], abs=1e-15)


def test_hadamard_path():
    zero = basis_state([0], ["Apath"]).density()
    out = apply_on(hadamard_path(1), ["Apath"], zero)
    np.testing.assert_allclose(out.entries, PLUS, atol=1e-12)
    out = apply_on(hadamard_path(0.83), ["Apath"], _dm(PLUS))
    np.testing.assert_allclose(np.real(np.diag(out.entries)), [0.915, 0.085], atol=1e-12)
    with pytest.raises(ValueError):
        hadamard_path(2)


def test_hadamard_path_ignores_visibility_on_basis_states():
    for bit in (0, 1):
        rho = basis_state([bit], ["Apath"]).density()
        outs = [apply_on(hadamard_path(V), ["Apath"], rho).entries for V in (0, 0.5, 1)]
        np.testing.assert_array_equal(outs[0], outs[1])
        np.testing.assert_array_equal(outs[1], outs[2])


def test_visibility_model():
    assert VisibilityModel().V == 1
    assert VisibilityModel(0.5).channel().is_trace_preserving()
    with pytest.raises(ValueError):
        VisibilityModel(1.2)


def test_depolarizing_channel():
    ch = depolarizing_channel(0.4)
    assert ch.is_trace_preserving()
    out = apply_on(ch, ["Apath"], basis_state([0], ["Apath"]).density())
    np.testing.assert_allclose(out.entries, np.diag([0.8, 0.2]), atol=1e-12)
    assert isinstance(ch, Operator) and ch.kind == "kraus"


def test_dephasing_shortcut_agrees_with_kraus_sum(rng):
    from pathtele.hilbert import random_density

    labels = ("Apol", "Apath", "Bpol")
    for V in (0.0, 0.37, 0.83, 1.0):
        ch = path_dephasing_channel(V)
        plain = Operator(ch.entries, kind="kraus")
        rho = random_density(labels, rng)
        np.testing.assert_allclose(
            apply_on(ch, ["Apath"], rho).entries, apply_on(plain, ["Apath"], rho).entries, atol=1e-15
        )


def test_dephasing_populations_bit_exact(rng):
    from pathtele.hilbert import random_density

    rho = random_density(["Apath"], rng)
    out = apply_on(path_dephasing_channel(0.61), ["Apath"], rho).entries
    np.testing.assert_array_equal(np.diag(out), np.diag(rho.entries))
    assert out[0, 1] == 0.61 * rho.entries[0, 1]


def test_encoder_is_the_beam_splitter_plus_phase(rng):
    from pathtele.optics import phase_shifter

    for eta, phase in zip(rng.uniform(0, 1, 20), rng.uniform(-np.pi, np.pi, 20)):
        bs = beam_splitter_unitary(BeamSplitterParams.from_reflectivity(eta))
        composed = bs.then(phase_shifter(phase - np.pi / 2))
        np.testing.assert_allclose(encoder_unitary(eta, phase).entries, composed.entries, atol=1e-12)
