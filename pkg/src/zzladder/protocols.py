"""Pulse tables, protocol sequences and the logical-circuit compiler.

Every protocol is expressed as a PulseSchedule: an ordered list of
global-drive segments (species set, per-species phase and Rabi scale,
duration).  Durations are in units of the inverse nominal Rabi rate, so
a segment of duration tau rotates regular driven qubits by tau and
crossed qubits by 2*tau about the equatorial axis set by the phase.
Segments are listed in application order (first segment acts first).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import effective
from .lattice import LatticeError, column_species, gate_column
from .qcore import SparseState, StateVector, basis_index


class ProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class PulseSegment:
    species: frozenset
    phase: dict = field(default_factory=dict)
    rabi_scale: dict = field(default_factory=dict)
    duration: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "species", frozenset(self.species))
        if not self.species:
            raise ProtocolError("segment drives no species")
        if self.duration <= 0:
            raise ProtocolError("segment duration must be positive")

    def phase_of(self, chi):
        return self.phase.get(chi, 0.0)

    def scale_of(self, chi):
        return self.rabi_scale.get(chi, 1.0)

    def rotations(self):
        """Effective-model interpretation: one native rotation per species."""
        return [
            effective.native_from_phase(
                chi, self.scale_of(chi) * self.duration, self.phase_of(chi)
            )
            for chi in sorted(self.species)
        ]

    def to_dict(self):
        return {
            "species": sorted(self.species),
            "phase": {chi: self.phase_of(chi) for chi in sorted(self.species)},
            "rabi_scale": {chi: self.scale_of(chi) for chi in sorted(self.species)},
            "duration": self.duration,
        }


def segment(species, phase, duration, rabi_scale=1.0):
    """Single-species segment shorthand."""
    return PulseSegment(
        frozenset({species}), {species: phase}, {species: rabi_scale}, duration
    )


@dataclass(frozen=True)
class PulseSchedule:
    segments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __add__(self, other):
        return PulseSchedule(self.segments + tuple(other))

    def total_duration(self):
        return sum(s.duration for s in self.segments)

    def to_json(self):
        return json.dumps([s.to_dict() for s in self.segments], indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        segs = [
            PulseSegment(
                frozenset(d["species"]),
                dict(d.get("phase", {})),
                dict(d.get("rabi_scale", {})),
                float(d["duration"]),
            )
            for d in doc
        ]
        return cls(segs)


def validate_schedule(schedule):
    """List of concurrency violations; empty means the schedule is valid."""
    violations = []
    for i, seg in enumerate(schedule):
        if "A" in seg.species and len(seg.species) > 1:
            violations.append(
                f"segment {i}: A driven concurrently with {sorted(seg.species - {'A'})}"
            )
    return violations


# Explicit pulse tables as (phase, duration) pairs in application order.
PI_TABLE_BC = ((0.0, 3 * np.pi / 4), (np.pi / 2, np.pi), (np.pi, np.pi / 4), (-np.pi / 2, np.pi))
PI_TABLE_A_REGULAR = ((0.0, np.pi / 2), (np.pi / 2, np.pi), (np.pi, np.pi / 2), (-np.pi / 2, np.pi))
CZ_CORE_TABLE = (
    (np.pi / 2, np.pi / 4),
    (0.0, np.pi),
    (np.pi / 2, np.pi / 2),
    (0.0, np.pi),
    (np.pi / 2, np.pi / 4),
)


def pi_sequence(species, subset):
    """Conditional pi-pulse on a species subset as a 4-segment schedule.

    (B or C, "all") flips regular and crossed elements alike; (A,
    "regular_only") flips the regular A qubits while the doubled-angle
    crossed branch cancels to the identity.
    """
    if species in ("B", "C") and subset == "all":
        table = PI_TABLE_BC
    elif species == "A" and subset == "regular_only":
        table = PI_TABLE_A_REGULAR
    else:
        raise ProtocolError(f"no pi-pulse table for ({species}, {subset})")
    return PulseSchedule([segment(species, ph, tau) for ph, tau in table])


def z_regular_a_sequence():
    """Species-wide conditional phase on regular A qubits.

    A single 2*pi pulse: regulars acquire the conditional minus sign,
    crossed A qubits complete a trivial 4*pi rotation.  The drive
    amplitude is reduced (with the duration stretched to keep the
    rotation angle) because the segment is pure phase accumulation:
    a weaker drive quadratically suppresses the off-resonant leakage
    of blockaded elements without changing the ideal action.
    """
    scale = 0.25
    return PulseSchedule([segment("A", 0.0, 2 * np.pi / scale, rabi_scale=scale)])


def cz_core_sequence():
    """The bare five-step two-qubit table (conditional 2*pi on crossed A)."""
    return PulseSchedule([segment("A", ph, tau) for ph, tau in CZ_CORE_TABLE])


def cz_sequence():
    """Entangling gate at the ICC coupler.

    The five-step core also leaves a conditional minus sign on every
    unblocked regular A qubit, which is state-dependent next to the ICC;
    a trailing 2*pi pulse cancels it exactly, leaving the pure
    conditional phase on the couplers.
    """
    return cz_core_sequence() + z_regular_a_sequence()


def crossed_pulse_sequence(species, theta, axis):
    """Schedule acting as R(theta, axis) on the crossed elements only."""
    segs = []
    for rot in effective.compile_crossed_rotation(species, theta, axis):
        segs.extend(_native_segment(rot))
    return PulseSchedule(segs)


def _native_segment(rot):
    """PulseSegment realizing one native ControlRotation; empty if trivial."""
    theta = rot.theta_regular
    axis = rot.axis_regular
    if abs(theta) < 1e-15:
        return []
    if theta < 0:
        theta, axis = -theta, tuple(-a for a in axis)
    phase = float(np.arctan2(axis[1], axis[0]))
    return [segment(rot.species, phase, theta)]


def shift_sequence(icc_species):
    """One-column interface move for the given ICC column species.

    Applying the same sequence to the shifted state moves the interface
    back, so the two sequences double as left moves.
    """
    pi_a = pi_sequence("A", "regular_only")
    pi_b = pi_sequence("B", "all")
    pi_c = pi_sequence("C", "all")
    if icc_species in ("B", "C"):
        return pi_a + pi_c + pi_b + pi_a
    if icc_species == "A":
        return pi_c + pi_b + pi_a + pi_c + pi_b
    raise ProtocolError(f"unknown species {icc_species!r}")


def regular_pulse_sequence(species, theta, axis):
    """Schedule acting as R(theta, axis) on the regular elements only."""
    segs = []
    for rot in effective.compile_regular_rotation(species, theta, axis):
        segs.extend(_native_segment(rot))
    return PulseSchedule(segs)


def readout_shift_sequence(icc_species):
    """Interface move from the last gate column into the read-out area.

    The plain shift sequence fails at the right edge of the ladder: the
    read-out column has no further column on its right, so nothing
    protects it from the pi pulse of its own species and the excited
    branch of the logical state leaks one column too far.  The fix is a
    half-pulse interferometer: the offending pi pulse is split into two
    half rotations with a 2*pi phase segment on the regular A qubits in
    between.  Columns flanked by two unblocked A columns collect two
    conditional phase kicks (which cancel) and complete the flip, while
    the read-out column, having a single A neighbour, collects exactly
    one kick and is returned to its initial state.
    """
    pi_a = pi_sequence("A", "regular_only")
    if icc_species == "C":
        half = (
            crossed_pulse_sequence("B", np.pi / 2, effective.X_AXIS)
            + regular_pulse_sequence("B", np.pi / 2, effective.X_AXIS)
        )
        return (
            pi_a
            + pi_sequence("C", "all")
            + half
            + z_regular_a_sequence()
            + half
            + pi_a
        )
    if icc_species == "B":
        half = regular_pulse_sequence("C", np.pi / 2, effective.X_AXIS)
        return (
            pi_a
            + pi_sequence("B", "all")
            + crossed_pulse_sequence("C", np.pi, effective.X_AXIS)
            + half
            + z_regular_a_sequence()
            + half
            + pi_a
        )
    raise ProtocolError(f"read-out shift needs a B or C type ICC, got {icc_species!r}")


def init_sequence():
    """From the all-ground lattice to the interface at the first B column.

    Crossed-A flip, crossed-C flip (blocked everywhere except the first
    column by the excited couplers), crossed-A flip back.
    """
    pi_ax = crossed_pulse_sequence("A", np.pi, effective.X_AXIS)
    pi_cx = crossed_pulse_sequence("C", np.pi, effective.X_AXIS)
    return pi_ax + pi_cx + pi_ax


def _gadget(theta, axis, icc_species):
    """Equatorial rotation of the ICC crossed element, identity elsewhere."""
    if abs(theta) < 1e-12:
        return PulseSchedule()
    minus = tuple(-a for a in axis)
    return (
        crossed_pulse_sequence(icc_species, theta / 2, axis)
        + z_regular_a_sequence()
        + crossed_pulse_sequence(icc_species, theta / 2, minus)
        + z_regular_a_sequence()
    )


def single_qubit_gate_sequence(theta, axis, icc_species):
    """Logical rotation R(theta, axis) on the crossed element of the ICC."""
    if icc_species not in ("B", "C"):
        raise ProtocolError("single-qubit gates need a B or C type ICC")
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    if abs(norm - 1.0) > 1e-9:
        raise ProtocolError("axis must be unit norm")
    if abs(axis[2]) < 1e-12:
        return _gadget(theta, tuple(axis), icc_species)
    alpha, beta, gamma = effective.euler_xyx(theta, axis)
    sched = PulseSchedule()
    sched = sched + _gadget(gamma, effective.X_AXIS, icc_species)
    sched = sched + _gadget(beta, effective.Y_AXIS, icc_species)
    sched = sched + _gadget(alpha, effective.X_AXIS, icc_species)
    return sched


@dataclass(frozen=True)
class Gate:
    kind: str  # "rot" or "cz"
    row: int
    theta: float = 0.0
    axis: tuple = effective.X_AXIS


@dataclass(frozen=True)
class LogicalCircuit:
    n_logical: int
    gates: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if g.kind == "rot" and not 0 <= g.row < self.n_logical:
                raise ProtocolError(f"rotation row {g.row} out of range")
            if g.kind == "cz" and not 0 <= g.row < self.n_logical - 1:
                raise ProtocolError(f"cz rows ({g.row},{g.row + 1}) out of range")
            if g.kind not in ("rot", "cz"):
                raise ProtocolError(f"unknown gate kind {g.kind!r}")

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        gates = []
        for g in doc.get("gates", []):
            if g["type"] == "rot":
                gates.append(
                    Gate("rot", int(g["row"]), float(g["theta"]), tuple(g["axis"]))
                )
            elif g["type"] == "cz":
                gates.append(Gate("cz", int(g["row"])))
            else:
                raise ProtocolError(f"unknown gate type {g['type']!r}")
        return cls(int(doc["n"]), gates)

    def to_json(self):
        out = []
        for g in self.gates:
            if g.kind == "rot":
                out.append(
                    {"type": "rot", "row": g.row, "theta": g.theta, "axis": list(g.axis)}
                )
            else:
                out.append({"type": "cz", "row": g.row})
        return json.dumps({"n": self.n_logical, "gates": out}, indent=2)


@dataclass(frozen=True)
class WellFormedState:
    """Interface column (1-based, counted from the lattice edge) plus the
    logical state carried by that column."""

    icc_column: int
    logical: StateVector


def expand_well_formed(wf, layout):
    """Full-lattice sparse state for a well-formed description.

    Columns left of the interface alternate excited/ground ending with a
    ground column next to it; columns to the right and all couplers are
    ground; the interface column itself carries the logical state, one
    qubit per row.
    """
    n = layout.n_logical
    if n is None:
        raise ProtocolError("well-formed states live on ladder layouts")
    k = wf.icc_column
    if not 3 <= k <= 2 * n + 3:
        raise ProtocolError(f"interface column {k} out of range")
    cstar = k - 1  # internal 0-based column
    m = layout.n_qubits
    if wf.logical.n_qubits != n:
        raise ProtocolError("logical state size does not match the lattice")
    amps = {}
    logical = wf.logical.to_sparse()
    for lidx, amp in logical.amps.items():
        chars = []
        for q in layout.qubits:
            if q.is_coupler:
                chars.append("g")
            elif q.column < cstar:
                chars.append("g" if (cstar - q.column) % 2 == 1 else "e")
            elif q.column > cstar:
                chars.append("g")
            else:
                bit = (lidx >> (n - 1 - q.row)) & 1
                chars.append("g" if bit else "e")
        amps[basis_index("".join(chars))] = amp
    return SparseState(amps, tuple(range(m)))


def logical_circuit_unitary(circuit):
    """Dense 2^N unitary of a logical circuit, gates applied in list order.

    Basis ordering follows the excited-first bit convention; the CZ puts
    its minus sign on the both-ground component.
    """
    n = circuit.n_logical
    dim = 2 ** n
    u = np.eye(dim, dtype=complex)
    idx = np.arange(dim)
    for gate in circuit.gates:
        if gate.kind == "rot":
            r = effective.rotation_matrix(gate.theta, gate.axis)
            full = np.array([[1.0 + 0.0j]])
            for row in range(n):
                full = np.kron(full, r if row == gate.row else np.eye(2))
            u = full @ u
        else:
            bi = (idx >> (n - 1 - gate.row)) & 1
            bj = (idx >> (n - 1 - gate.row - 1)) & 1
            diag = np.where((bi == 1) & (bj == 1), -1.0, 1.0)
            u = diag[:, None] * u
    return u


def compile_logical_circuit(circuit, layout):
    """Schedule: init, shifts interleaved with gate sequences, final shifts
    to the readout column."""
    n = layout.n_logical
    if n is None or n != circuit.n_logical:
        raise ProtocolError("circuit size does not match the layout")
    sched = init_sequence()
    col = 2  # internal column of the interface after initialization

    def move_to(target, col, sched):
        while col < target:
            sched = sched + shift_sequence(column_species(col))
            col += 1
        while col > target:
            sched = sched + shift_sequence(column_species(col - 1))
            col -= 1
        return col, sched

    for gate in circuit.gates:
        try:
            target = gate_column(layout, gate.kind, gate.row)
        except LatticeError as exc:
            raise ProtocolError(str(exc)) from exc
        col, sched = move_to(target, col, sched)
        if gate.kind == "rot":
            sched = sched + single_qubit_gate_sequence(
                gate.theta, gate.axis, column_species(target)
            )
        else:
            sched = sched + cz_sequence()
    col, sched = move_to(2 * n, col, sched)
    sched = sched + readout_shift_sequence(column_species(2 * n))
    col = 2 * n + 1
    col, sched = move_to(2 * n + 2, col, sched)
    return sched
