"""Closed-form circuit-element calculators.

Perturbative formulas relating fabrication parameters (Josephson and
charging energies, capacitances, couplings, detunings) to the qubit
frequency, the drive coupling constant and the ZZ strength for the
three coupler realizations.
"""

from __future__ import annotations

import math
import warnings


class DeviceModelError(ValueError):
    pass


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if value <= 0:
            raise DeviceModelError(f"{name} must be positive, got {value}")


def _check_denominator(name, value, scale):
    if value == 0:
        raise DeviceModelError(f"{name} vanishes; formula is singular")
    if abs(value) < 1e-9 * scale:
        warnings.warn(
            f"{name} is within 1e-9 of a pole; perturbative formula unreliable",
            stacklevel=3,
        )


def transmon_frequency(e_j, e_c, hbar=1.0):
    """omega = (sqrt(8 E_J E_C) - E_C) / hbar."""
    _check_positive(E_J=e_j, E_C=e_c)
    return (math.sqrt(8 * e_j * e_c) - e_c) / hbar


def drive_constant(c_d, c_sigma, l_j, c_s, hbar=1.0):
    """Drive coupling; linear in the drive capacitance."""
    _check_positive(C_d=c_d, C_Sigma=c_sigma, L_J=l_j, C_s=c_s)
    return (c_d / c_sigma) * math.sqrt(hbar / (2 * math.sqrt(l_j / c_s)))


def zz_cavity(g_a, g_b, delta_a, delta_b, big_delta_a, big_delta_b):
    """ZZ strength of the cavity-bus realization."""
    scale = max(abs(delta_a), abs(delta_b), abs(big_delta_a), abs(big_delta_b), 1.0)
    for name, val in (
        ("delta_A", delta_a),
        ("delta_B", delta_b),
        ("Delta_A", big_delta_a),
        ("Delta_B", big_delta_b),
    ):
        _check_denominator(name, val, scale)
    return -2 * g_a ** 2 * g_b ** 2 * (
        1 / (delta_a * big_delta_b ** 2)
        + 1 / (delta_b * big_delta_a ** 2)
        + 1 / (big_delta_a * big_delta_b ** 2)
        + 1 / (big_delta_a ** 2 * big_delta_b)
    )


def zz_direct(e_j_coupler, e_c, e_j, hbar=1.0):
    """ZZ strength of the direct Josephson-coupler realization."""
    _check_denominator("E_J", e_j, max(abs(e_j_coupler), abs(e_c), 1.0))
    return -e_j_coupler * e_c / (8 * hbar * e_j)


def zz_capacitive(g, alpha_a, alpha_b, delta_ab):
    """ZZ strength of the capacitive-coupling realization."""
    scale = max(abs(alpha_a), abs(alpha_b), abs(delta_ab), 1.0)
    _check_denominator("Delta_AB + alpha_A", delta_ab + alpha_a, scale)
    _check_denominator("Delta_AB - alpha_B", delta_ab - alpha_b, scale)
    return -(g ** 2) * (alpha_a + alpha_b) / ((delta_ab + alpha_a) * (delta_ab - alpha_b))
