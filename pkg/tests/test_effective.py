import numpy as np
import pytest

from zzladder import lattice, qcore
from zzladder.effective import (
    X_AXIS,
    Y_AXIS,
    apply_W,
    apply_rotations,
    compile_crossed_rotation,
    compile_regular_rotation,
    compose_su2,
    euler_xyx,
    native,
    native_from_phase,
    z_tot,
)
from zzladder.qcore import QuantumError, StateVector, rotation_matrix


def random_state(rng, n):
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return StateVector(v / np.linalg.norm(v), tuple(range(n)))


def subset_unitary(layout, rotations, subset_filter=None):
    """Dense matrix of a rotation list on the layout (controlled form)."""
    n = layout.n_qubits
    cols = []
    for idx in range(2 ** n):
        amps = np.zeros(2 ** n, dtype=complex)
        amps[idx] = 1.0
        out = apply_rotations(StateVector(amps, tuple(range(n))), layout, rotations)
        cols.append(out.amps)
    return np.array(cols).T


def test_native_doubles_crossed_angle():
    rot = native("B", 0.7, X_AXIS)
    assert rot.theta_regular == 0.7
    assert rot.theta_crossed == 1.4
    assert rot.axis_regular == rot.axis_crossed == X_AXIS


def test_native_from_phase():
    rot = native_from_phase("C", 0.5, np.pi / 2)
    assert np.allclose(rot.axis_regular, (0.0, 1.0, 0.0), atol=1e-12)


def test_native_rejects_z_axis():
    with pytest.raises(QuantumError):
        native("B", 1.0, (0.0, 0.0, 1.0))


def test_z_tot_is_conditional_sign():
    row = lattice.build_row("ABA")
    rng = np.random.default_rng(0)
    state = random_state(rng, 3)
    out = apply_W(state, row, z_tot("B", "both"))
    # -1 on every amplitude where the B qubit may rotate (neighbors ground)
    expect = state.amps.copy()
    for idx in range(8):
        cfg = qcore.config_of_index(idx, 3)
        if cfg[0] == "g" and cfg[2] == "g":
            expect[idx] *= -1.0
    assert np.allclose(out.amps, expect, atol=1e-12)


def test_apply_W_blockade_control():
    row = lattice.build_row("AB")
    rot = native("B", np.pi, X_AXIS)
    # ground neighbor: B flips; excited neighbor: B frozen
    free = apply_W(StateVector.from_config("gg", (0, 1)), row, rot)
    assert np.isclose(free.population(1), 1.0, atol=1e-12)
    blocked = apply_W(StateVector.from_config("eg", (0, 1)), row, rot)
    assert np.isclose(blocked.population(1), 0.0, atol=1e-12)


def test_compose_su2_matches_matrix_product():
    rng = np.random.default_rng(1)
    for _ in range(30):
        t1, t2 = rng.uniform(0, 2 * np.pi, size=2)
        n1 = rng.normal(size=3)
        n1 /= np.linalg.norm(n1)
        n2 = rng.normal(size=3)
        n2 /= np.linalg.norm(n2)
        t3, n3 = compose_su2(t1, n1, t2, n2)
        lhs = rotation_matrix(t3, n3)
        rhs = rotation_matrix(t2, n2) @ rotation_matrix(t1, n1)
        phase = np.trace(rhs.conj().T @ lhs) / 2
        assert np.isclose(abs(phase), 1.0, atol=1e-9)
        assert np.allclose(lhs, phase * rhs, atol=1e-9)


def test_compose_su2_identity_canonical_form():
    theta, axis = compose_su2(0.9, X_AXIS, -0.9, X_AXIS)
    assert theta == 0.0
    assert np.allclose(axis, X_AXIS)


def test_compile_crossed_rotation_acts_on_crossed_only():
    from zzladder.effective import ControlRotation

    rng = np.random.default_rng(2)
    row = lattice.build_row("CABAC", crossed=(2,))
    for _ in range(5):
        theta = rng.uniform(-np.pi, np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        axis = (np.cos(phi), np.sin(phi), 0.0)
        u = subset_unitary(row, compile_crossed_rotation("B", theta, axis))
        oracle = subset_unitary(
            row, [ControlRotation("B", "crossed", 0.0, X_AXIS, theta, axis)]
        )
        assert np.allclose(u, oracle, atol=1e-9)


def test_compile_regular_rotation_acts_on_regular_only():
    from zzladder.effective import ControlRotation

    rng = np.random.default_rng(3)
    row = lattice.build_row("CABAC", crossed=(2,))
    for _ in range(5):
        theta = rng.uniform(-np.pi, np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        axis = (np.cos(phi), np.sin(phi), 0.0)
        u = subset_unitary(row, compile_regular_rotation("B", theta, axis))
        oracle = subset_unitary(
            row, [ControlRotation("B", "regular", theta, axis, 0.0, X_AXIS)]
        )
        assert np.allclose(u, oracle, atol=1e-9)


def test_euler_xyx_roundtrip():
    rng = np.random.default_rng(4)
    for _ in range(50):
        theta = rng.uniform(-np.pi, np.pi)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        a, b, c = euler_xyx(theta, n)
        u = (
            rotation_matrix(a, X_AXIS)
            @ rotation_matrix(b, Y_AXIS)
            @ rotation_matrix(c, X_AXIS)
        )
        target = rotation_matrix(theta, n)
        phase = np.trace(target.conj().T @ u) / 2
        assert np.isclose(abs(phase), 1.0, atol=1e-9)
        assert np.allclose(u, phase * target, atol=1e-9)


def test_euler_xyx_pure_x_is_trivial():
    a, b, c = euler_xyx(0.8, X_AXIS)
    assert np.isclose(b, 0.0, atol=1e-12)
    assert np.isclose((a + c) % (2 * np.pi), 0.8, atol=1e-9)
