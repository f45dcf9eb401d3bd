"""Blockade-limit control algebra.

In the limit of a dominant ZZ coupling every global pulse acts as a
neighbor-controlled rotation: qubit i is rotated only on the amplitudes
where all of its ZZ neighbors are in the ground state.  A single
physical pulse rotates the regular elements of one species by theta and
the crossed elements by 2*theta about the same equatorial axis; the
compilation helpers below combine such pulses to address either subset
alone, or to reach arbitrary rotation axes via an X-Y-X Euler split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qcore import QuantumError, rotation_matrix

X_AXIS = (1.0, 0.0, 0.0)
Y_AXIS = (0.0, 1.0, 0.0)


def _check_equatorial(axis):
    axis = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise QuantumError(f"axis {axis} is not unit norm")
    if abs(axis[2]) > 1e-12:
        raise QuantumError(
            "axis has a z-component; compile via the Euler decomposition"
        )
    return axis


@dataclass(frozen=True)
class ControlRotation:
    """Species-wide controlled rotation with per-subset angle and axis."""

    species: str
    subset: str  # "regular", "crossed" or "both"
    theta_regular: float = 0.0
    axis_regular: tuple = X_AXIS
    theta_crossed: float = 0.0
    axis_crossed: tuple = X_AXIS

    def __post_init__(self):
        if self.subset not in ("regular", "crossed", "both"):
            raise QuantumError(f"unknown subset {self.subset!r}")


def native(species, theta, axis):
    """The rotation induced by one physical pulse: crossed angle doubled."""
    axis = tuple(_check_equatorial(axis))
    return ControlRotation(species, "both", theta, axis, 2 * theta, axis)


def native_from_phase(species, theta, phase):
    return native(species, theta, (np.cos(phase), np.sin(phase), 0.0))


def z_tot(species, subset):
    """The theta = 2*pi rotation: a conditional minus sign per qubit."""
    return ControlRotation(
        species, subset, 2 * np.pi, X_AXIS, 2 * np.pi, X_AXIS
    )


def apply_W(state, layout, rot):
    """Apply a ControlRotation to every addressed qubit of the layout."""
    out = state
    if rot.subset in ("regular", "both"):
        u = rotation_matrix(rot.theta_regular, rot.axis_regular)
        if not np.allclose(u, np.eye(2), atol=1e-15):
            for q in layout.species_indices(rot.species, "regular"):
                out = out.apply_controlled(q, layout.neighbors(q), u)
    if rot.subset in ("crossed", "both"):
        u = rotation_matrix(rot.theta_crossed, rot.axis_crossed)
        if not np.allclose(u, np.eye(2), atol=1e-15):
            for q in layout.species_indices(rot.species, "crossed"):
                out = out.apply_controlled(q, layout.neighbors(q), u)
    return out


def apply_rotations(state, layout, rotations):
    for rot in rotations:
        state = apply_W(state, layout, rot)
    return state


def compose_su2(theta1, axis1, theta2, axis2):
    """(theta3, axis3) with R(theta3,n3) = R(theta2,n2) R(theta1,n1).

    The result is canonical: theta3 in [0, 2*pi], and axis +x when the
    product is proportional to the identity.
    """
    n1 = np.asarray(axis1, dtype=float)
    n2 = np.asarray(axis2, dtype=float)
    for n in (n1, n2):
        if abs(np.linalg.norm(n) - 1.0) > 1e-9:
            raise QuantumError("composition axes must be unit norm")
    w1, v1 = np.cos(theta1 / 2), np.sin(theta1 / 2) * n1
    w2, v2 = np.cos(theta2 / 2), np.sin(theta2 / 2) * n2
    w3 = w2 * w1 - np.dot(v2, v1)
    v3 = w2 * v1 + w1 * v2 + np.cross(v2, v1)
    s = np.linalg.norm(v3)
    if s < 1e-12:
        return (0.0 if w3 > 0 else 2 * np.pi), np.array(X_AXIS)
    theta3 = 2 * np.arctan2(s, w3)
    return theta3, v3 / s


def compile_crossed_rotation(species, theta, axis):
    """Four native pulses acting as R(theta, axis) on crossed qubits only.

    The half-angle pulses about the target axis are interleaved with a
    pair of opposite pi pulses about the orthogonal equatorial axis; the
    regular branch cancels exactly while the crossed branch, running at
    doubled angles, accumulates the full rotation.
    """
    n = _check_equatorial(axis)
    m = (-n[1], n[0], 0.0)
    minus_m = (n[1], -n[0], 0.0)
    return [
        native(species, theta / 4, tuple(n)),
        native(species, np.pi, m),
        native(species, theta / 4, tuple(n)),
        native(species, np.pi, minus_m),
    ]


def compile_regular_rotation(species, theta, axis):
    """Native pulse plus a crossed unwind: R(theta, axis) on regulars only."""
    n = _check_equatorial(axis)
    minus_n = tuple(-n)
    return [native(species, theta, tuple(n))] + compile_crossed_rotation(
        species, 2 * theta, minus_n
    )


_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def _wrap(angle):
    return (angle + np.pi) % (2 * np.pi) - np.pi


def euler_xyx(theta, axis):
    """Angles (alpha, beta, gamma) with R(a,x) R(b,y) R(g,x) = R(theta, axis)
    up to global phase."""
    axis = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(axis) - 1.0) > 1e-9:
        raise QuantumError("axis must be unit norm")
    u = rotation_matrix(theta, axis)
    v = _HADAMARD @ u @ _HADAMARD
    det = np.linalg.det(v)
    v = v / np.sqrt(det)
    b = 2 * np.arctan2(abs(v[1, 0]), abs(v[0, 0]))
    if abs(v[1, 0]) < 1e-12:
        a, c = -2 * np.angle(v[0, 0]), 0.0
    elif abs(v[0, 0]) < 1e-12:
        a, c = 2 * np.angle(v[1, 0]), 0.0
    else:
        apc = -2 * np.angle(v[0, 0])
        amc = 2 * np.angle(v[1, 0])
        a, c = (apc + amc) / 2, (apc - amc) / 2
    base = (_wrap(a), _wrap(-b), _wrap(c))
    candidates = [
        base,
        (_wrap(base[0] - np.pi), _wrap(-base[1]), _wrap(base[2] + np.pi)),
        (_wrap(base[0] + np.pi), _wrap(-base[1]), _wrap(base[2] - np.pi)),
    ]
    return min(candidates, key=lambda t: sum(abs(x) for x in t))
