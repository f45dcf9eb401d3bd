"""Complex state-vector arithmetic.

Basis convention: |e> = (1,0)^T and |g> = (0,1)^T, so bit value 0 of a
basis index means excited.  Qubit k of ``qubit_order`` owns the bit of
significance M-1-k (big-endian).  Two representations are provided: a
dense amplitude array and a sparse dictionary keyed by basis index, the
latter for ladder-scale states with small support.
"""

from __future__ import annotations

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# Dense eigendecomposition is used up to this many qubits; Krylov above.
DENSE_QUBIT_LIMIT = 10

_SPARSE_EPS = 1e-14


class QuantumError(ValueError):
    pass


def rotation_matrix(theta, axis):
    """SU(2) rotation exp(-i theta/2 n.sigma) for a unit axis n."""
    axis = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise QuantumError(f"axis {axis} is not unit norm")
    ns = axis[0] * SIGMA_X + axis[1] * SIGMA_Y + axis[2] * SIGMA_Z
    return np.cos(theta / 2) * IDENTITY_2 - 1j * np.sin(theta / 2) * ns


def _positions(qubit_order):
    return {q: k for k, q in enumerate(qubit_order)}


class StateVector:
    """Dense normalized state over the qubits in ``qubit_order``."""

    def __init__(self, amplitudes, qubit_order):
        self.qubit_order = tuple(qubit_order)
        self.amps = np.asarray(amplitudes, dtype=complex)
        if self.amps.shape != (2 ** len(self.qubit_order),):
            raise QuantumError("amplitude length does not match qubit count")
        self._pos = _positions(self.qubit_order)

    @classmethod
    def from_config(cls, config, qubit_order=None):
        """Basis state from a string of 'g'/'e' characters."""
        if qubit_order is None:
            qubit_order = range(len(config))
        qubit_order = tuple(qubit_order)
        if len(config) != len(qubit_order):
            raise QuantumError("config length does not match qubit count")
        amps = np.zeros(2 ** len(config), dtype=complex)
        amps[basis_index(config)] = 1.0
        return cls(amps, qubit_order)

    @property
    def n_qubits(self):
        return len(self.qubit_order)

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def position(self, qubit):
        try:
            return self._pos[qubit]
        except KeyError:
            raise QuantumError(f"qubit {qubit} not in state") from None

    def apply_single(self, qubit, u):
        p = self.position(qubit)
        m = self.n_qubits
        psi = self.amps.reshape((2,) * m)
        psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [p])), 0, p)
        return StateVector(psi.reshape(-1), self.qubit_order)

    def apply_controlled(self, target, neighbors, u):
        """Apply u on target only where every neighbor qubit is |g>."""
        neighbors = tuple(neighbors)
        if target in neighbors:
            raise QuantumError("target cannot control itself")
        p = self.position(target)
        npos = sorted(self.position(q) for q in neighbors)
        m = self.n_qubits
        psi = self.amps.reshape((2,) * m).copy()
        sl = [slice(None)] * m
        for k in npos:
            sl[k] = 1
        sl = tuple(sl)
        p_eff = p - sum(1 for k in npos if k < p)
        sub = psi[sl]
        psi[sl] = np.moveaxis(np.tensordot(u, sub, axes=([1], [p_eff])), 0, p_eff)
        return StateVector(psi.reshape(-1), self.qubit_order)

    def population(self, qubit):
        p = self.position(qubit)
        psi = np.moveaxis(self.amps.reshape((2,) * self.n_qubits), p, 0)
        return float(np.sum(np.abs(psi[0]) ** 2))

    def inner(self, other):
        if isinstance(other, SparseState):
            other = other.to_dense()
        if self.qubit_order != other.qubit_order:
            raise QuantumError("qubit orders differ")
        return complex(np.vdot(self.amps, other.amps))

    def to_dense(self):
        return self

    def to_sparse(self):
        amps = {
            int(i): complex(a)
            for i, a in enumerate(self.amps)
            if abs(a) > _SPARSE_EPS
        }
        return SparseState(amps, self.qubit_order)

    def copy(self):
        return StateVector(self.amps.copy(), self.qubit_order)


class SparseState:
    """Dictionary-backed state for large lattices with small support."""

    def __init__(self, amps, qubit_order):
        self.qubit_order = tuple(qubit_order)
        self.amps = dict(amps)
        self._pos = _positions(self.qubit_order)

    @classmethod
    def from_config(cls, config, qubit_order=None):
        if qubit_order is None:
            qubit_order = range(len(config))
        qubit_order = tuple(qubit_order)
        if len(config) != len(qubit_order):
            raise QuantumError("config length does not match qubit count")
        return cls({basis_index(config): 1.0 + 0.0j}, qubit_order)

    @property
    def n_qubits(self):
        return len(self.qubit_order)

    def norm(self):
        return float(np.sqrt(sum(abs(a) ** 2 for a in self.amps.values())))

    def position(self, qubit):
        try:
            return self._pos[qubit]
        except KeyError:
            raise QuantumError(f"qubit {qubit} not in state") from None

    def _bit(self, index, pos):
        return (index >> (self.n_qubits - 1 - pos)) & 1

    def apply_single(self, qubit, u):
        p = self.position(qubit)
        shift = self.n_qubits - 1 - p
        out = {}
        for idx, a in self.amps.items():
            b = self._bit(idx, p)
            base = idx & ~(1 << shift)
            for row in (0, 1):
                c = u[row, b] * a
                if c != 0:
                    key = base | (row << shift)
                    out[key] = out.get(key, 0.0j) + c
        return SparseState(_prune(out), self.qubit_order)

    def apply_controlled(self, target, neighbors, u):
        neighbors = tuple(neighbors)
        if target in neighbors:
            raise QuantumError("target cannot control itself")
        p = self.position(target)
        shift = self.n_qubits - 1 - p
        nshifts = [self.n_qubits - 1 - self.position(q) for q in neighbors]
        out = {}
        for idx, a in self.amps.items():
            if all((idx >> s) & 1 for s in nshifts):
                b = self._bit(idx, p)
                base = idx & ~(1 << shift)
                for row in (0, 1):
                    c = u[row, b] * a
                    if c != 0:
                        key = base | (row << shift)
                        out[key] = out.get(key, 0.0j) + c
            else:
                out[idx] = out.get(idx, 0.0j) + a
        return SparseState(_prune(out), self.qubit_order)

    def population(self, qubit):
        p = self.position(qubit)
        return float(
            sum(abs(a) ** 2 for idx, a in self.amps.items() if self._bit(idx, p) == 0)
        )

    def inner(self, other):
        if isinstance(other, StateVector):
            other = other.to_sparse()
        if self.qubit_order != other.qubit_order:
            raise QuantumError("qubit orders differ")
        left, right = self.amps, other.amps
        keys = left if len(left) <= len(right) else right
        return complex(
            sum(np.conj(left[i]) * right[i] for i in keys if i in left and i in right)
        )

    def to_dense(self):
        if self.n_qubits > 26:
            raise QuantumError("state too large for dense conversion")
        amps = np.zeros(2 ** self.n_qubits, dtype=complex)
        for idx, a in self.amps.items():
            amps[idx] = a
        return StateVector(amps, self.qubit_order)

    def to_sparse(self):
        return self

    def copy(self):
        return SparseState(dict(self.amps), self.qubit_order)


def _prune(amps):
    return {i: a for i, a in amps.items() if abs(a) > _SPARSE_EPS}


def basis_index(config):
    """Basis index of a 'g'/'e' configuration string (bit 0 = excited)."""
    idx = 0
    for ch in config:
        if ch == "e":
            idx = idx << 1
        elif ch == "g":
            idx = (idx << 1) | 1
        else:
            raise QuantumError(f"bad configuration character {ch!r}")
    return idx


def config_of_index(index, n_qubits):
    return "".join(
        "e" if (index >> (n_qubits - 1 - k)) & 1 == 0 else "g"
        for k in range(n_qubits)
    )


def apply_single_qubit(state, qubit, u):
    return state.apply_single(qubit, u)


def apply_controlled_rotation(state, target, neighbors, u):
    return state.apply_controlled(target, neighbors, u)


def fidelity(a, b):
    """Global-phase-insensitive pure-state overlap |<a|b>|."""
    if a.n_qubits != b.n_qubits:
        raise QuantumError("state dimensions differ")
    return abs(a.inner(b))


def population(state, qubit):
    return state.population(qubit)


def measure_qubits(state, qubits, rng_seed):
    """Born-rule sample of the listed qubits; returns (bitstring, post state).

    Outcome characters use '1' for excited and '0' for ground.
    """
    qubits = list(qubits)
    if not qubits:
        raise QuantumError("no qubits to measure")
    dense = state.to_dense()
    m = dense.n_qubits
    psi = dense.amps.reshape((2,) * m)
    positions = [dense.position(q) for q in qubits]
    moved = np.moveaxis(psi, positions, range(len(qubits)))
    probs = np.sum(
        np.abs(moved.reshape((2 ** len(qubits), -1))) ** 2, axis=1
    )
    probs = probs / probs.sum()
    rng = np.random.default_rng(rng_seed)
    outcome = int(rng.choice(len(probs), p=probs))
    bits = [(outcome >> (len(qubits) - 1 - k)) & 1 for k in range(len(qubits))]
    proj = moved.copy()
    sl = tuple(bits)
    keep = proj[sl]
    proj = np.zeros_like(moved)
    proj[sl] = keep
    proj = np.moveaxis(proj, range(len(qubits)), positions)
    post = proj.reshape(-1)
    post = post / np.linalg.norm(post)
    bitstring = "".join("1" if b == 0 else "0" for b in bits)
    return bitstring, StateVector(post, dense.qubit_order)


def count_excited_pairs(index, layout):
    """Number of ZZ edges whose two endpoints are both excited."""
    m = layout.n_qubits
    if not 0 <= index < 2 ** m:
        raise QuantumError(f"basis index {index} out of range")
    count = 0
    for i, j in layout.edges:
        if (index >> (m - 1 - i)) & 1 == 0 and (index >> (m - 1 - j)) & 1 == 0:
            count += 1
    return count


def random_qubit_state(rng):
    """Haar-random single-qubit amplitudes (e, g) from a numpy Generator."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2 * np.pi)
    theta = np.arccos(z)
    return np.array(
        [np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)], dtype=complex
    )


class DenseOperator:
    """Hermitian operator handle backed by an explicit matrix."""

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise QuantumError("operator matrix must be square")
        if np.max(np.abs(matrix - matrix.conj().T)) > 1e-10:
            raise QuantumError("operator is not Hermitian")
        self._matrix = matrix
        self._eig = None

    @property
    def dim(self):
        return self._matrix.shape[0]

    def dense(self):
        return self._matrix

    def matvec(self, v):
        return self._matrix @ v

    def eig(self):
        if self._eig is None:
            self._eig = np.linalg.eigh(self._matrix)
        return self._eig


def krylov_expmv(matvec, v, tau, tol=1e-10, m_max=60):
    """u = exp(-i tau H) v via Arnoldi projection, matrix-free."""
    beta = np.linalg.norm(v)
    if beta == 0:
        return np.zeros_like(v)
    n = len(v)
    V = np.zeros((n, m_max + 1), dtype=complex)
    H = np.zeros((m_max + 1, m_max), dtype=complex)
    V[:, 0] = v / beta
    u_prev = None
    for m in range(1, m_max + 1):
        w = matvec(V[:, m - 1])
        for j in range(m):
            H[j, m - 1] = np.vdot(V[:, j], w)
            w = w - H[j, m - 1] * V[:, j]
        hnext = np.linalg.norm(w)
        Hm = H[:m, :m]
        evals, evecs = np.linalg.eigh((Hm + Hm.conj().T) / 2)
        e1 = np.zeros(m)
        e1[0] = 1.0
        small = evecs @ (np.exp(-1j * tau * evals) * (evecs.conj().T @ e1))
        u = beta * (V[:, :m] @ small)
        if u_prev is not None and np.linalg.norm(u - u_prev) < tol:
            return u
        u_prev = u
        if hnext < 1e-14:
            return u
        H[m, m - 1] = hnext
        V[:, m] = w / hnext
    return u_prev


def evolve_constant(state, ham, duration):
    """exp(-i H duration) |psi> for a piecewise-constant Hermitian handle."""
    dense = state.to_dense()
    if dense.n_qubits <= DENSE_QUBIT_LIMIT and hasattr(ham, "dense"):
        evals, evecs = ham.eig()
        amps = evecs @ (np.exp(-1j * duration * evals) * (evecs.conj().T @ dense.amps))
    else:
        amps = krylov_expmv(ham.matvec, dense.amps, duration)
    return StateVector(amps, dense.qubit_order)
