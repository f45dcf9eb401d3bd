"""Driven Hamiltonians of the ZZ-coupled lattice.

Two forms are provided: the lab-frame Hamiltonian with explicit qubit
frequencies and sinusoidal drives, and the time-independent rotating
frame form valid when each species is driven at omega_chi - 2*zeta.  In
the rotating frame every fabrication detuning is absorbed and only the
drive terms plus a uniform 2*zeta penalty per excited ZZ pair remain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import qcore
from .qcore import SIGMA_Y, SIGMA_Z, QuantumError


class ScheduleError(ValueError):
    pass


class FrameMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class DeviceParams:
    """Frequencies in angular units with the nominal Rabi rate as scale."""

    omega_a: float
    omega_b: float
    omega_c: float
    zeta: float
    omega_rabi: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.zeta == 0:
            raise ValueError("zeta must be nonzero")
        if self.omega_rabi <= 0:
            raise ValueError("omega_rabi must be positive")

    def omega(self, species):
        return {"A": self.omega_a, "B": self.omega_b, "C": self.omega_c}[species]


def blockade_ratio(params):
    if params.omega_rabi == 0:
        raise ZeroDivisionError("nominal Rabi frequency is zero")
    return abs(params.zeta / params.omega_rabi)


@dataclass(frozen=True)
class Drive:
    """One species' global drive: Rabi rate, phase, carrier frequency."""

    rabi: float
    phase: float = 0.0
    frequency: float | None = None


@dataclass(frozen=True)
class DriveConfig:
    drives: dict = field(default_factory=dict)

    def __post_init__(self):
        if "A" in self.drives and len(self.drives) > 1:
            raise ScheduleError("the A drive excludes any concurrent B/C drive")

    @classmethod
    def rwa(cls, params, phases, rabi_scale=None):
        """Drives at the blockade-frame carrier omega_chi - 2*zeta.

        phases maps active species to drive phases; rabi_scale optionally
        rescales the nominal Rabi rate per species.
        """
        rabi_scale = rabi_scale or {}
        drives = {
            chi: Drive(
                rabi=params.omega_rabi * rabi_scale.get(chi, 1.0),
                phase=phi,
                frequency=params.omega(chi) - 2 * params.zeta,
            )
            for chi, phi in phases.items()
        }
        return cls(drives)


def local_frequency(layout, params, qubit):
    """Fabrication frequency of one qubit, detuned by its connection count."""
    q = layout.qubits[qubit]
    shift = {"minus": -params.zeta, "nominal": 0.0, "plus": params.zeta}
    return params.omega(q.species) + shift[layout.detuning_class(qubit)]


def _lift(u, pos, m):
    op = np.array([[1.0 + 0.0j]])
    for k in range(m):
        op = np.kron(op, u if k == pos else np.eye(2))
    return op


def _driven_rabi(layout, drives):
    """(qubit index, effective Rabi, phase) for every driven qubit."""
    out = []
    for chi, drive in drives.drives.items():
        for q in layout.qubits:
            if q.species != chi:
                continue
            rabi = 2 * drive.rabi if q.crossed else drive.rabi
            out.append((q.index, rabi, drive.phase, drive.frequency))
    return out


def excited_pair_diagonal(layout):
    """Vector of ZZ excited-pair counts over all basis indices."""
    m = layout.n_qubits
    idx = np.arange(2 ** m)
    counts = np.zeros(2 ** m, dtype=float)
    for i, j in layout.edges:
        bi = (idx >> (m - 1 - i)) & 1
        bj = (idx >> (m - 1 - j)) & 1
        counts += (bi == 0) & (bj == 0)
    return counts


class RotatingFrameHamiltonian:
    """Time-independent blockade-frame Hamiltonian handle."""

    def __init__(self, layout, params, drives):
        for chi, drive in drives.drives.items():
            target = params.omega(chi) - 2 * params.zeta
            if drive.frequency is not None and abs(drive.frequency - target) > 1e-9 * max(
                1.0, abs(target)
            ):
                raise FrameMismatchError(
                    f"{chi} drive at {drive.frequency} is off the "
                    f"blockade-frame carrier {target}"
                )
        self.layout = layout
        self.m = layout.n_qubits
        self.dim = 2 ** self.m
        hbar = params.hbar
        self.diag = 2 * hbar * params.zeta * excited_pair_diagonal(layout)
        self.terms = []
        for index, rabi, phase, _ in _driven_rabi(layout, drives):
            h1 = (hbar * rabi / 2) * np.array(
                [[0.0, np.exp(-1j * phase)], [np.exp(1j * phase), 0.0]]
            )
            self.terms.append((index, h1))
        self._dense = None
        self._eigs = None

    def dense(self):
        if self._dense is None:
            if self.m > qcore.DENSE_QUBIT_LIMIT:
                raise QuantumError("refusing to materialize a large Hamiltonian")
            h = np.diag(self.diag.astype(complex))
            for index, h1 in self.terms:
                h += _lift(h1, index, self.m)
            self._dense = h
        return self._dense

    def eig(self):
        if self._eigs is None:
            self._eigs = np.linalg.eigh(self.dense())
        return self._eigs

    def matvec(self, v):
        out = self.diag * v
        psi = v.reshape((2,) * self.m)
        for index, h1 in self.terms:
            term = np.moveaxis(
                np.tensordot(h1, psi, axes=([1], [index])), 0, index
            )
            out = out + term.reshape(-1)
        return out


def rotating_frame_hamiltonian(layout, params, drives):
    return RotatingFrameHamiltonian(layout, params, drives)


def lab_hamiltonian(layout, params, drives, t):
    """Dense lab-frame Hamiltonian at time t (small systems only)."""
    m = layout.n_qubits
    if m > 4:
        raise QuantumError("lab-frame Hamiltonian is limited to 4 qubits")
    hbar = params.hbar
    h = np.zeros((2 ** m, 2 ** m), dtype=complex)
    for q in layout.qubits:
        h += (hbar * local_frequency(layout, params, q.index) / 2) * _lift(
            SIGMA_Z, q.index, m
        )
    for i, j in layout.edges:
        h += (hbar * params.zeta / 2) * (_lift(SIGMA_Z, i, m) @ _lift(SIGMA_Z, j, m))
    for index, rabi, phase, freq in _driven_rabi(layout, drives):
        if freq is None:
            raise FrameMismatchError("lab-frame drives need an explicit frequency")
        h += hbar * rabi * np.sin(freq * t + phase) * _lift(SIGMA_Y, index, m)
    return qcore.DenseOperator(h)


def basis_energy(layout, params, config):
    """Drive-free lab-frame energy of a product configuration."""
    signs = [1.0 if ch == "e" else -1.0 for ch in config]
    energy = sum(
        params.hbar * local_frequency(layout, params, q.index) / 2 * signs[q.index]
        for q in layout.qubits
    )
    energy += sum(
        params.hbar * params.zeta / 2 * signs[i] * signs[j] for i, j in layout.edges
    )
    return energy


def triplet_spectrum(params):
    """Drive-free spectrum of the three-qubit A-B-A chain, sorted by energy."""
    from .lattice import build_row

    row = build_row("ABA")
    levels = []
    for idx in range(8):
        config = qcore.config_of_index(idx, 3)
        levels.append((basis_energy(row, params, config), config))
    return sorted(levels)
