import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathtele.hilbert import (
    X,
    DensityMatrix,
    LabelError,
    Operator,
    PureState,
    apply_on,
    basis_state,
    fidelity_pure,
    fix_global_phase,
    maximally_mixed,
    partial_trace,
    random_density,
    random_pure,
    random_unitary,
    reorder,
    tensor_product,
)
from pathtele.source import phi_plus

LABELS3 = ("Apol", "Apath", "Bpol")


def test_tensor_of_basis_states():
    s = tensor_product(basis_state([0], ["a"]), basis_state([0], ["b"]))
    np.testing.assert_array_equal(s.amplitudes, [1, 0, 0, 0])
    assert s.labels == ("a", "b")


def test_tensor_bell_with_path_zero_is_joint_state():
    joint = reorder(tensor_product(phi_plus(), basis_state([0], ["Apath"])), LABELS3)
    expected = np.zeros(8)
    expected[0b000] = expected[0b101] = 1 / np.sqrt(2)  # |H,0,H>, |V,0,V>
    np.testing.assert_allclose(joint.amplitudes, expected, atol=1e-15)


def test_tensor_rejects_overlap():
    with pytest.raises(LabelError):
        tensor_product(basis_state([0], ["a"]), basis_state([1], ["a"]))


def test_tensor_rejects_mixed_kinds():
    with pytest.raises(TypeError):
        tensor_product(basis_state([0], ["a"]), maximally_mixed(["b"]))


def test_tensor_then_trace_roundtrip(rng):
    worst = 0.0
    for _ in range(50):
        a = random_density(["a"], rng)
        b = random_density(["b", "c"], rng)
        back = partial_trace(tensor_product(a, b), ["a"])
        worst = max(worst, np.max(np.abs(back.entries - a.entries)))
    assert worst < 1e-12


def test_tensor_associative_bit_exact_on_dyadic_amplitudes(rng):
    # complex products of dyadic rationals are exact, so both groupings agree bit for bit
    values = np.array([0, 0.5, -0.5, 0.25j, -1j, 0.5 + 0.5j, 1])
    a, b, c = (PureState(rng.choice(values, size=2), [n]) for n in "abc")
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    assert left.labels == right.labels
    np.testing.assert_array_equal(left.amplitudes, right.amplitudes)


def test_tensor_associative_random(rng):
    a, b, c = (random_pure([n], rng) for n in "abc")
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    np.testing.assert_allclose(left.amplitudes, right.amplitudes, rtol=0, atol=1e-15)


def test_identity_is_bit_exact(rng):
    psi = random_pure(LABELS3, rng)
    rho = random_density(LABELS3, rng)
    eye = Operator(np.eye(2))
    for label in LABELS3:
        np.testing.assert_array_equal(apply_on(eye, [label], psi).amplitudes, psi.amplitudes)
        np.testing.assert_array_equal(apply_on(eye, [label], rho).entries, rho.entries)


def test_x_on_bob():
    out = apply_on(Operator(X), ["Bpol"], basis_state([0, 0, 0], LABELS3))
    np.testing.assert_array_equal(out.amplitudes, basis_state([0, 0, 1], LABELS3).amplitudes)


def test_apply_targets_in_given_order():
    cnot = np.eye(4)[[0, 1, 3, 2]]  # control first target
    out = apply_on(Operator(cnot), ["Bpol", "Apol"], basis_state([0, 0, 1], LABELS3))
    np.testing.assert_array_equal(out.amplitudes, basis_state([1, 0, 1], LABELS3).amplitudes)


def test_unitary_then_inverse(rng):
    worst = 0.0
    for _ in range(100):
        psi = random_pure(LABELS3, rng)
        u = random_unitary(3, rng)
        back = apply_on(u.dagger(), LABELS3, apply_on(u, LABELS3, psi))
        worst = max(worst, np.max(np.abs(back.amplitudes - psi.amplitudes)))
    assert worst < 1e-12


def test_apply_errors():
    psi = basis_state([0, 0, 0], LABELS3)
    with pytest.raises(ValueError):
        apply_on(Operator(X), ["Apol", "Bpol"], psi)
    with pytest.raises(LabelError):
        apply_on(Operator(X), ["nope"], psi)
    with pytest.raises(TypeError):
        apply_on(Operator(np.array([X]), kind="kraus"), ["Apol"], psi)


def test_partial_trace_bell_marginal():
    bell = phi_plus().density()
    for keep in ("Apol", "Bpol"):
        np.testing.assert_allclose(partial_trace(bell, [keep]).entries, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_keeps_original_order(rng):
    a, b, c = (random_density([n], rng) for n in "abc")
    abc = tensor_product(tensor_product(a, b), c)
    ac = partial_trace(abc, ["c", "a"])
    assert ac.labels == ("a", "c")
    np.testing.assert_allclose(ac.entries, tensor_product(a, c).entries, atol=1e-12)


def test_partial_trace_trace_preserving(rng):
    for _ in range(50):
        rho = random_density(LABELS3, rng)
        assert abs(partial_trace(rho, ["Apath"]).trace() - 1) < 1e-12


def test_partial_trace_errors(rng):
    rho = random_density(["a", "b"], rng)
    with pytest.raises(LabelError):
        partial_trace(rho, [])
    with pytest.raises(LabelError):
        partial_trace(rho, ["z"])


def test_trace_commutes_with_local_unitary(rng):
    rho = random_density(LABELS3, rng)
    u = random_unitary(2, rng)
    lhs = partial_trace(apply_on(u, ["Apol", "Apath"], rho), ["Bpol"])
    np.testing.assert_allclose(lhs.entries, partial_trace(rho, ["Bpol"]).entries, atol=1e-12)


def test_fidelity_examples(rng):
    psi = random_pure(["q"], rng)
    assert fidelity_pure(psi, psi.density()) == pytest.approx(1, abs=1e-12)
    zero, one = basis_state([0], ["q"]), basis_state([1], ["q"])
    assert fidelity_pure(zero, one.density()) == pytest.approx(0, abs=1e-12)
    plus = PureState(np.array([1, 1]) / np.sqrt(2), ["q"])
    # <+|I/2|+> = (1/2)(|1/sqrt2|^2 + |1/sqrt2|^2)
    assert fidelity_pure(plus, maximally_mixed(["q"])) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        fidelity_pure(zero, maximally_mixed(["a", "b"]))


def test_density_validation():
    assert maximally_mixed(["a", "b"]).is_valid()
    assert not DensityMatrix(np.diag([1.5, -0.5]), ["a"]).is_valid()
    assert not DensityMatrix(np.array([[0.5, 1], [0, 0.5]]), ["a"]).is_valid()
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(3) / 3, ["a"])
    with pytest.raises(LabelError):
        PureState(np.ones(4) / 2, ["a", "a"])


def test_normalize():
    s = PureState(np.array([3, 4j]), ["q"]).normalize()
    assert abs(s.norm() - 1) < 1e-12


def test_fix_global_phase():
    a = np.array([0, 1j, 1]) / np.sqrt(2)
    fixed = fix_global_phase(a)
    assert fixed[1] == pytest.approx(1 / np.sqrt(2))
    assert fixed[2] == pytest.approx(-1j / np.sqrt(2))


def test_kraus_composition_is_trace_preserving():
    from pathtele.optics import depolarizing_channel, hadamard_path

    ch = hadamard_path(0.4).as_operator().then(depolarizing_channel(0.3))
    assert ch.kind == "kraus" and ch.is_trace_preserving()


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), target=st.sampled_from(LABELS3))
def test_channels_keep_states_physical(seed, target):
    from pathtele.optics import depolarizing_channel, path_dephasing_channel

    rng = np.random.default_rng(seed)
    rho = random_density(LABELS3, rng, rank=int(rng.integers(1, 9)))
    for ch in (path_dephasing_channel(rng.uniform()), depolarizing_channel(rng.uniform()), random_unitary(1, rng)):
        rho = apply_on(ch, [target], rho)
        rho.check()
