"""Schedule execution backends and the benchmark experiments.

Backends:
  effective  - every segment acts as its neighbor-controlled rotation
               (the infinite-blockade idealization); works on dense and
               sparse states of any lattice size.
  rwa_exact  - per-segment exponentials of the time-independent rotating
               frame Hamiltonian.
  lab_frame  - fixed-step RK4 integration of the sinusoidally driven lab
               Hamiltonian; demo scale (at most 4 qubits).
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from . import effective, protocols, qcore
from .hamiltonian import (
    DeviceParams,
    DriveConfig,
    local_frequency,
    rotating_frame_hamiltonian,
)
from .lattice import build_row
from .protocols import PulseSchedule, validate_schedule
from .qcore import QuantumError, StateVector, evolve_constant, fidelity


@dataclass
class Trajectory:
    times: np.ndarray
    populations: np.ndarray  # shape (n_times, n_qubits)
    final_state: object

    def to_csv(self):
        buf = io.StringIO()
        n = self.populations.shape[1]
        buf.write("t," + ",".join(f"P_e_q{k}" for k in range(n)) + "\n")
        for t, row in zip(self.times, self.populations):
            buf.write(
                f"{t:.12g}," + ",".join(f"{p:.12g}" for p in row) + "\n"
            )
        return buf.getvalue()


def _populations(state, layout):
    return [state.population(q) for q in range(layout.n_qubits)]


def _check_schedule(schedule):
    violations = validate_schedule(schedule)
    if violations:
        raise protocols.ProtocolError("; ".join(violations))


def run(schedule, initial, layout, params=None, backend="effective", samples_per_segment=1):
    """Execute a schedule and record excited-state populations."""
    _check_schedule(schedule)
    if backend == "effective":
        return _run_effective(schedule, initial, layout, samples_per_segment)
    if backend == "rwa_exact":
        return _run_rwa(schedule, initial, layout, params, samples_per_segment)
    if backend == "lab_frame":
        return _run_lab(schedule, initial, layout, params, samples_per_segment)
    raise ValueError(f"unknown backend {backend!r}")


def _run_effective(schedule, initial, layout, samples):
    state = initial
    t = 0.0
    times = [0.0]
    pops = [_populations(state, layout)]
    for seg in schedule:
        for _ in range(samples):
            for rot in _fractional(seg, samples):
                state = effective.apply_W(state, layout, rot)
            t += seg.duration / samples
            times.append(t)
            pops.append(_populations(state, layout))
    return Trajectory(np.array(times), np.array(pops), state)


def apply_schedule(schedule, state, layout):
    """Effective-model action of a schedule without trajectory recording."""
    _check_schedule(schedule)
    for seg in schedule:
        for rot in seg.rotations():
            state = effective.apply_W(state, layout, rot)
    return state


def _fractional(seg, samples):
    rotations = []
    for chi in sorted(seg.species):
        theta = seg.scale_of(chi) * seg.duration / samples
        rotations.append(
            effective.native_from_phase(chi, theta, seg.phase_of(chi))
        )
    return rotations


def _segment_drives(seg, params):
    phases = {chi: seg.phase_of(chi) for chi in seg.species}
    scales = {chi: seg.scale_of(chi) for chi in seg.species}
    return DriveConfig.rwa(params, phases, scales)


def _run_rwa(schedule, initial, layout, params, samples):
    if params is None:
        raise ValueError("rwa_exact needs device parameters")
    state = initial.to_dense()
    t = 0.0
    times = [0.0]
    pops = [_populations(state, layout)]
    for seg in schedule:
        ham = rotating_frame_hamiltonian(layout, params, _segment_drives(seg, params))
        dt = seg.duration / samples
        for _ in range(samples):
            state = evolve_constant(state, ham, dt)
            t += dt
            times.append(t)
            pops.append(_populations(state, layout))
    return Trajectory(np.array(times), np.array(pops), state)


def _run_lab(schedule, initial, layout, params, samples):
    if params is None:
        raise ValueError("lab_frame needs device parameters")
    if layout.n_qubits > 4:
        raise QuantumError("lab-frame backend is limited to 4 qubits")
    m = layout.n_qubits
    h0 = np.zeros((2 ** m, 2 ** m), dtype=complex)
    hbar = params.hbar
    for q in range(m):
        h0 += (
            hbar * local_frequency(layout, params, q) / 2
        ) * _lift_dense(qcore.SIGMA_Z, q, m)
    for i, j in layout.edges:
        h0 += (hbar * params.zeta / 2) * (
            _lift_dense(qcore.SIGMA_Z, i, m) @ _lift_dense(qcore.SIGMA_Z, j, m)
        )
    omega_max = max(
        [abs(local_frequency(layout, params, q)) for q in range(m)]
        + [abs(params.zeta), params.omega_rabi]
    )
    psi = initial.to_dense().amps.copy()
    t = 0.0
    times = [0.0]
    pops = [_populations(StateVector(psi, initial.qubit_order), layout)]
    for seg in schedule:
        drives = _segment_drives(seg, params)
        terms = []
        for chi, drive in drives.drives.items():
            for q in layout.qubits:
                if q.species != chi:
                    continue
                rabi = 2 * drive.rabi if q.crossed else drive.rabi
                terms.append(
                    (
                        hbar * rabi * _lift_dense(qcore.SIGMA_Y, q.index, m),
                        drive.frequency,
                        drive.phase,
                    )
                )
        omega_seg = max([omega_max] + [abs(f) for _, f, _ in terms])
        dt_max = 2 * np.pi / (200 * omega_seg)
        n_steps = max(samples, int(np.ceil(seg.duration / dt_max)))
        n_steps = int(np.ceil(n_steps / samples)) * samples
        dt = seg.duration / n_steps
        record_every = n_steps // samples

        def h_at(time):
            h = h0.copy()
            for op, freq, phase in terms:
                h = h + np.sin(freq * time + phase) * op
            return h

        for step in range(n_steps):
            k1 = -1j / hbar * (h_at(t) @ psi)
            k2 = -1j / hbar * (h_at(t + dt / 2) @ (psi + dt / 2 * k1))
            k3 = -1j / hbar * (h_at(t + dt / 2) @ (psi + dt / 2 * k2))
            k4 = -1j / hbar * (h_at(t + dt) @ (psi + dt * k3))
            psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += dt
            if (step + 1) % record_every == 0:
                psi = psi / np.linalg.norm(psi)
                times.append(t)
                pops.append(
                    _populations(StateVector(psi, initial.qubit_order), layout)
                )
    final = StateVector(psi / np.linalg.norm(psi), initial.qubit_order)
    return Trajectory(np.array(times), np.array(pops), final)


def _lift_dense(u, pos, m):
    op = np.array([[1.0 + 0.0j]])
    for k in range(m):
        op = np.kron(op, u if k == pos else np.eye(2))
    return op


def schedule_unitary(schedule, layout, params):
    """Dense rotating-frame propagator of a whole schedule (small systems)."""
    _check_schedule(schedule)
    dim = 2 ** layout.n_qubits
    u = np.eye(dim, dtype=complex)
    for seg in schedule:
        ham = rotating_frame_hamiltonian(layout, params, _segment_drives(seg, params))
        evals, evecs = ham.eig()
        useg = (evecs * np.exp(-1j * seg.duration * evals)) @ evecs.conj().T
        u = useg @ u
    return u


def reduced_density(state, qubits):
    """Reduced density matrix of the listed qubits."""
    dense = state.to_dense()
    m = dense.n_qubits
    positions = [dense.position(q) for q in qubits]
    psi = np.moveaxis(
        dense.amps.reshape((2,) * m), positions, range(len(qubits))
    ).reshape(2 ** len(qubits), -1)
    return psi @ psi.conj().T


def entanglement_entropy(state, qubits):
    """Von Neumann entropy, in bits, of the reduced state of ``qubits``."""
    rho = reduced_density(state, qubits)
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > 1e-14]
    return float(-np.sum(evals * np.log2(evals)))


def default_params(eta, hbar=1.0):
    """Unit-Rabi device with blockade ratio eta; species frequencies are
    irrelevant in the rotating frame and set to zero."""
    return DeviceParams(0.0, 0.0, 0.0, zeta=eta, omega_rabi=1.0, hbar=hbar)


BLOCKADE_ROW = "ABA"


def blockade_initial(label):
    row = build_row(BLOCKADE_ROW)
    if label == "ggg":
        return StateVector.from_config("ggg"), row
    if label == "gge":
        return StateVector.from_config("gge"), row
    if label in ("gg+", "gg_plus"):
        plus = (
            StateVector.from_config("ggg").amps
            + StateVector.from_config("gge").amps
        ) / np.sqrt(2)
        return StateVector(plus, (0, 1, 2)), row
    raise ValueError(f"unknown blockade initial state {label!r}")


def blockade_target(label):
    """Exact infinite-blockade final state for each initial label."""
    row = build_row(BLOCKADE_ROW)
    state, _ = blockade_initial(label)
    u = qcore.rotation_matrix(np.pi, effective.X_AXIS)
    return state.apply_controlled(1, row.neighbors(1), u)


def blockade_experiment(initial_label, eta, samples_per_segment=50):
    """Pi-pulse on the central qubit of the A-B-A chain."""
    if eta < 1:
        raise ValueError("blockade experiment expects eta >= 1")
    state, row = blockade_initial(initial_label)
    schedule = PulseSchedule([protocols.segment("B", 0.0, np.pi)])
    return run(
        schedule,
        state,
        row,
        default_params(eta),
        backend="rwa_exact",
        samples_per_segment=samples_per_segment,
    )


MOTION_ROW = "CABACA"


def motion_states(logical=None):
    """(initial, target) for the one-column interface move on the 6-qubit row.

    The logical amplitudes sit on the third qubit before the move and on
    the fourth after it.
    """
    if logical is None:
        logical = np.array([1.0, 1.0]) / np.sqrt(2)
    logical = np.asarray(logical, dtype=complex)
    dim = 2 ** len(MOTION_ROW)
    before = np.zeros(dim, dtype=complex)
    after = np.zeros(dim, dtype=complex)
    for b, amp in ((0, logical[0]), (1, logical[1])):
        ch = "e" if b == 0 else "g"
        before[qcore.basis_index("eg" + ch + "ggg")] = amp
        after[qcore.basis_index("geg" + ch + "gg")] = amp
    order = tuple(range(len(MOTION_ROW)))
    return StateVector(before, order), StateVector(after, order)


def interface_motion_experiment(eta, backend="rwa_exact", logical=None, samples_per_segment=10):
    """Run the interface move; returns trajectories and fidelities."""
    row = build_row(MOTION_ROW)
    initial, target = motion_states(logical)
    schedule = protocols.shift_sequence("B")
    params = default_params(eta)
    mid_schedule = PulseSchedule(schedule.segments[:4])  # first conditional pi block
    mid = run(mid_schedule, initial, row, params, backend, samples_per_segment)
    traj = run(schedule, initial, row, params, backend, samples_per_segment)
    return {
        "trajectory": traj,
        "mid_state": mid.final_state,
        "final_state": traj.final_state,
        "target": target,
        "fidelity": fidelity(traj.final_state, target),
        "mid_entropy_bits": entanglement_entropy(mid.final_state, [2]),
    }


SWEEP_ROW = "CABAC"
SWEEP_CROSSED = (2,)
HADAMARD_AXIS = (1 / np.sqrt(2), 0.0, 1 / np.sqrt(2))


def hadamard_fidelity_sweep(eta_values, n_samples, rng_seed, backend="rwa_exact"):
    """Mean Hadamard-gate fidelity on the 5-qubit row per blockade ratio.

    Each eta value sees the same seeded set of Haar-random initial states
    of the crossed qubit.
    """
    row = build_row(SWEEP_ROW, crossed=SWEEP_CROSSED)
    schedule = protocols.single_qubit_gate_sequence(np.pi, HADAMARD_AXIS, "B")
    hada = qcore.rotation_matrix(np.pi, HADAMARD_AXIS)
    order = tuple(range(len(SWEEP_ROW)))
    results = []
    for eta in eta_values:
        params = default_params(eta)
        if backend == "rwa_exact":
            u_total = schedule_unitary(schedule, row, params)
        rng = np.random.default_rng(rng_seed)
        fids = []
        for _ in range(n_samples):
            chi = qcore.random_qubit_state(rng)
            initial = _embed_sweep_state(chi)
            target = _embed_sweep_state(hada @ chi)
            if backend == "rwa_exact":
                final = StateVector(u_total @ initial.amps, order)
            else:
                final = run(schedule, initial, row, params, backend).final_state
            fids.append(fidelity(final, target))
        results.append(
            {"eta": float(eta), "mean_fidelity": float(np.mean(fids)), "n": n_samples}
        )
    return results


def _embed_sweep_state(chi):
    """|e g chi g g> on the 5-qubit sweep row."""
    base_e = StateVector.from_config("egegg").amps
    base_g = StateVector.from_config("egggg").amps
    order = tuple(range(5))
    return StateVector(chi[0] * base_e + chi[1] * base_g, order)
