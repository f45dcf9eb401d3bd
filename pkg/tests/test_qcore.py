import numpy as np
import pytest
from scipy.linalg import expm

from zzladder import lattice, qcore
from zzladder.qcore import (
    DenseOperator,
    QuantumError,
    SparseState,
    StateVector,
    basis_index,
    config_of_index,
    evolve_constant,
    fidelity,
    krylov_expmv,
    measure_qubits,
    random_qubit_state,
    rotation_matrix,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def test_rotation_matrix_matches_exponential():
    rng = np.random.default_rng(0)
    for _ in range(20):
        theta = rng.uniform(-2 * np.pi, 2 * np.pi)
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        expected = expm(-1j * theta / 2 * (v[0] * SX + v[1] * SY + v[2] * SZ))
        assert np.allclose(rotation_matrix(theta, v), expected, atol=1e-12)


def test_rotation_matrix_rejects_non_unit_axis():
    with pytest.raises(QuantumError):
        rotation_matrix(np.pi, (1.0, 1.0, 0.0))


def test_basis_index_convention():
    # |e> carries bit 0, |g> bit 1; qubit 0 owns the most significant bit
    assert basis_index("ee") == 0
    assert basis_index("eg") == 1
    assert basis_index("ge") == 2
    assert basis_index("gg") == 3
    assert config_of_index(2, 2) == "ge"


@pytest.mark.parametrize("cls", [StateVector, SparseState])
def test_apply_single_matches_kron(cls):
    rng = np.random.default_rng(1)
    n = 3
    vec = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    vec /= np.linalg.norm(vec)
    dense = StateVector(vec, tuple(range(n)))
    state = dense.to_sparse() if cls is SparseState else dense.copy()
    u = rotation_matrix(0.7, (0.0, 1.0, 0.0))
    state = state.apply_single(1, u)
    oracle = np.kron(np.kron(np.eye(2), u), np.eye(2)) @ vec
    assert np.allclose(state.to_dense().amps, oracle, atol=1e-12)


@pytest.mark.parametrize("cls", [StateVector, SparseState])
def test_apply_controlled_matches_projector_oracle(cls):
    # controlled on all listed neighbors being ground (bit value 1)
    rng = np.random.default_rng(2)
    n = 3
    vec = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    vec /= np.linalg.norm(vec)
    dense = StateVector(vec, tuple(range(n)))
    state = dense.to_sparse() if cls is SparseState else dense.copy()
    u = rotation_matrix(1.3, (1.0, 0.0, 0.0))
    state = state.apply_controlled(0, [1, 2], u)
    p_g = np.diag([0.0, 1.0])
    p_e = np.diag([1.0, 0.0])
    proj_gg = np.kron(np.kron(np.eye(2), p_g), p_g)
    oracle = (np.kron(np.kron(u, p_g), p_g) + (np.eye(8) - proj_gg)) @ vec
    assert np.allclose(state.to_dense().amps, oracle, atol=1e-12)


def test_sparse_dense_inner_agree():
    rng = np.random.default_rng(3)
    v1 = rng.normal(size=8) + 1j * rng.normal(size=8)
    v2 = rng.normal(size=8) + 1j * rng.normal(size=8)
    a = StateVector(v1 / np.linalg.norm(v1), (0, 1, 2))
    b = StateVector(v2 / np.linalg.norm(v2), (0, 1, 2))
    assert np.isclose(a.inner(b), a.to_sparse().inner(b.to_sparse()), atol=1e-12)
    assert np.isclose(abs(a.inner(b)), fidelity(a, b.to_sparse()), atol=1e-12)


def test_population_and_from_config():
    s = StateVector.from_config("ge", (0, 1))
    assert np.isclose(s.population(0), 0.0)
    assert np.isclose(s.population(1), 1.0)
    sp = SparseState.from_config("ge", (0, 1))
    assert np.isclose(sp.population(1), 1.0)


def test_measure_qubits_deterministic_and_convention():
    s = StateVector.from_config("ge", (0, 1))
    bits, post = measure_qubits(s, [0, 1], rng_seed=0)
    assert bits == "01"
    assert np.isclose(fidelity(post, s), 1.0)
    plus = StateVector(np.array([1.0, 1.0]) / np.sqrt(2), (0,))
    shots = [measure_qubits(plus, [0], rng_seed=seed)[0] for seed in range(200)]
    frac = sum(b == "1" for b in shots) / len(shots)
    assert 0.3 < frac < 0.7
    assert measure_qubits(plus, [0], rng_seed=5)[0] == measure_qubits(plus, [0], rng_seed=5)[0]


def test_count_excited_pairs():
    row = lattice.build_row("ABA")
    assert qcore.count_excited_pairs(basis_index("ggg"), row) == 0
    assert qcore.count_excited_pairs(basis_index("eeg"), row) == 1
    assert qcore.count_excited_pairs(basis_index("eee"), row) == 2


def test_random_qubit_state_distribution():
    rng = np.random.default_rng(4)
    zs = []
    for _ in range(4000):
        chi = random_qubit_state(rng)
        assert np.isclose(np.linalg.norm(chi), 1.0)
        zs.append(abs(chi[0]) ** 2 - abs(chi[1]) ** 2)
    # Bloch-sphere uniformity: <z> = 0, <z^2> = 1/3
    assert abs(np.mean(zs)) < 0.05
    assert abs(np.mean(np.square(zs)) - 1 / 3) < 0.05


def test_dense_operator_requires_hermitian():
    with pytest.raises(QuantumError):
        DenseOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_krylov_matches_expm():
    rng = np.random.default_rng(5)
    dim = 40
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = (m + m.conj().T) / 2
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    out = krylov_expmv(lambda x: h @ x, v, 0.7)
    oracle = expm(-1j * 0.7 * h) @ v
    assert np.linalg.norm(out - oracle) < 1e-8


def test_evolve_constant_matches_expm():
    rng = np.random.default_rng(6)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = DenseOperator((m + m.conj().T) / 2)
    vec = rng.normal(size=4) + 1j * rng.normal(size=4)
    vec /= np.linalg.norm(vec)
    state = StateVector(vec, (0, 1))
    out = evolve_constant(state, h, 1.1)
    oracle = expm(-1j * 1.1 * h.dense()) @ vec
    assert np.allclose(out.to_dense().amps, oracle, atol=1e-9)


def test_sparse_state_prunes_tiny_amplitudes():
    s = SparseState.from_config("gg", (0, 1))
    s = s.apply_single(0, rotation_matrix(2 * np.pi, (1.0, 0.0, 0.0)))
    # a full 2*pi turn returns to a single basis component (global phase -1)
    assert len(s.amps) == 1
