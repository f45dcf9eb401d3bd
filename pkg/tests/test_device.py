import math

import pytest

from zzladder.device import (
    DeviceModelError,
    drive_constant,
    transmon_frequency,
    zz_capacitive,
    zz_cavity,
    zz_direct,
)


def test_transmon_frequency_value():
    # sqrt(8 * 20 * 0.25) = sqrt(40); minus E_C
    assert math.isclose(transmon_frequency(20.0, 0.25), math.sqrt(40.0) - 0.25)
    assert math.isclose(transmon_frequency(20.0, 0.25, hbar=2.0), (math.sqrt(40.0) - 0.25) / 2)


def test_transmon_frequency_rejects_nonpositive():
    with pytest.raises(DeviceModelError):
        transmon_frequency(-1.0, 0.25)
    with pytest.raises(DeviceModelError):
        transmon_frequency(20.0, 0.0)


def test_drive_constant_value_and_linearity():
    base = drive_constant(1.0, 10.0, 2.0, 8.0)
    assert math.isclose(base, 0.1 * math.sqrt(1.0 / (2 * math.sqrt(0.25))))
    assert math.isclose(drive_constant(3.0, 10.0, 2.0, 8.0), 3 * base)
    with pytest.raises(DeviceModelError):
        drive_constant(0.0, 10.0, 2.0, 8.0)


def test_zz_cavity_value():
    val = zz_cavity(1.0, 1.0, 2.0, 2.0, 4.0, 4.0)
    expect = -2 * (1 / (2 * 16) + 1 / (2 * 16) + 1 / (4 * 16) + 1 / (16 * 4))
    assert math.isclose(val, expect)


def test_zz_cavity_singularity():
    with pytest.raises(DeviceModelError):
        zz_cavity(1.0, 1.0, 0.0, 2.0, 4.0, 4.0)
    with pytest.warns(UserWarning):
        zz_cavity(1.0, 1.0, 1e-11, 2.0, 4.0, 4.0)


def test_zz_direct_value():
    assert math.isclose(zz_direct(4.0, 0.5, 10.0), -4.0 * 0.5 / 80.0)
    with pytest.raises(DeviceModelError):
        zz_direct(4.0, 0.5, 0.0)


def test_zz_capacitive_value():
    val = zz_capacitive(2.0, 0.3, 0.4, 5.0)
    expect = -(4.0) * 0.7 / (5.3 * 4.6)
    assert math.isclose(val, expect)


def test_zz_capacitive_poles():
    with pytest.raises(DeviceModelError):
        zz_capacitive(2.0, 0.3, 5.0, 5.0)
    with pytest.raises(DeviceModelError):
        zz_capacitive(2.0, -5.0, 0.4, 5.0)


def test_zz_signs_are_negative_for_typical_inputs():
    assert zz_cavity(1.0, 1.2, 2.0, 2.5, 4.0, 4.5) < 0
    assert zz_direct(4.0, 0.5, 10.0) < 0
    assert zz_capacitive(2.0, 0.3, 0.4, 5.0) < 0
