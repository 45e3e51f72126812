"""Tests de la calibration du coefficient c1."""

from importlib import resources

import pytest

from scatterbayes.core.errors import CalibrationError
from scatterbayes.forward import LATTICE_C1, calibrate_c1, calibration_study
from scatterbayes.forward.quadrature import C1_FIXTURE, CALIBRATION_STEPS, calibration_oracle, corrected_rule, load_c1


def test_calibrated_value_is_close_to_the_lattice_constant():
    assert calibrate_c1() == pytest.approx(LATTICE_C1, abs=1e-6)


def test_lattice_constant_reaches_fourth_order():
    report = calibration_study(c1=LATTICE_C1)
    assert report.steps == CALIBRATION_STEPS
    assert report.observed_order >= 3.5
    assert all(a > b for a, b in zip(report.errors, report.errors[1:]))


def test_zero_correction_is_second_order():
    report = calibration_study(c1=0.0, min_order=0.0)
    assert report.observed_order < 2.2


def test_low_order_raises():
    with pytest.raises(CalibrationError):
        calibration_study(c1=0.0)


def test_corrected_rule_beats_the_uncorrected_one():
    exact = calibration_oracle(1.0)
    h = CALIBRATION_STEPS[-1]
    assert abs(corrected_rule(1.0, h, LATTICE_C1) - exact) < abs(corrected_rule(1.0, h, 0.0) - exact)


def test_report_text_follows_the_fixture_format():
    report = calibration_study(c1=LATTICE_C1)
    text = report.to_text()
    assert f"c1 = {LATTICE_C1!r}" in text.splitlines()
    assert len([line for line in text.splitlines() if not line.startswith("#")]) == 3 + len(CALIBRATION_STEPS)


def committed_table() -> tuple[dict[str, float], list[list[str]]]:
    text = resources.files("scatterbayes").joinpath("data", C1_FIXTURE).read_text(encoding="utf-8")
    header, rows = {}, []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if sep:
            header[key.strip()] = float(value)
        else:
            rows.append(line.split())
    return header, rows


def test_committed_fixture_is_a_converged_calibration():
    header, rows = committed_table()
    assert header["c1"] == load_c1()
    assert abs(header["c1"] - LATTICE_C1) < 1e-6
    assert header["lattice_closed_form"] == pytest.approx(LATTICE_C1, abs=1e-15)

    assert tuple(float(row[0]) for row in rows) == CALIBRATION_STEPS
    errors = [float(row[2]) for row in rows]
    orders = [float(row[3]) for row in rows[1:]]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert orders[-1] >= 3.5
    c1_by_step = [float(row[1]) for row in rows]
    assert abs(c1_by_step[-1] - header["c1"]) < abs(c1_by_step[0] - header["c1"])


def test_committed_fixture_matches_a_fresh_calibration():
    header, _ = committed_table()
    assert calibrate_c1() == pytest.approx(header["c1"], abs=1e-8)
