import math

import numpy as np
import pytest

from radialmax.densities import (Gaussian, Lebesgue, TabulatedDecreasing,
                                 UnitBallIndicator, density_from_name)
from radialmax.logspace import LOG_ZERO


def test_gaussian_log_density_exact():
    g = Gaussian()
    s = np.array([0.0, 0.5, 2.0])
    assert np.allclose(g.log_density(s), -math.pi * s ** 2)
    assert g.log_density_at_zero == 0.0
    assert g.is_finite(10 ** 6)
    assert g.peak_radius(3) == pytest.approx(math.sqrt(2.0 / (2.0 * math.pi)))


def test_unitball_indicator():
    u = UnitBallIndicator()
    out = u.log_density(np.array([0.0, 1.0, 1.0 + 1e-12, 5.0]))
    assert out[0] == 0.0 and out[1] == 0.0
    assert out[2] == LOG_ZERO and out[3] == LOG_ZERO
    assert u.support_upper_bound == 1.0
    assert u.is_finite(2)


def test_lebesgue_infinite_mass():
    l = Lebesgue()
    assert not l.is_finite(3)
    assert np.all(l.log_density(np.array([0.0, 10.0])) == 0.0)


def test_tabulated_step_semantics():
    t = TabulatedDecreasing([0.5, 1.0, 2.0], [0.0, -1.0, -3.0])
    s = np.array([0.0, 0.5, 0.75, 1.0, 1.5, 2.0, 2.1])
    out = t.log_density(s)
    assert out[0] == 0.0       # below first knot: first value
    assert out[1] == 0.0       # left-continuous at the knot
    assert out[2] == -1.0
    assert out[3] == -1.0
    assert out[4] == -3.0
    assert out[5] == -3.0
    assert out[6] == LOG_ZERO  # beyond support
    assert t.support_upper_bound == 2.0
    assert t.probe_points() == (0.5, 1.0, 2.0)


def test_tabulated_monotonicity_is_enforced():
    with pytest.raises(ValueError):
        TabulatedDecreasing([0.0, 1.0], [-1.0, 0.0])  # increasing sample
    with pytest.raises(ValueError):
        TabulatedDecreasing([1.0, 1.0], [0.0, -1.0])  # radii not increasing
    with pytest.raises(ValueError):
        TabulatedDecreasing([0.0, 1.0], [0.0, float("nan")])
    with pytest.raises(ValueError):
        TabulatedDecreasing([0.0], [LOG_ZERO])  # identically zero


def test_tabulated_from_file(tmp_path):
    p = tmp_path / "density.txt"
    p.write_text(
        "# radius  log-density\n"
        "0.5   0.0\n"
        "1.0  -1.0   # step down\n"
        "\n"
        "2.0  -3.0\n",
        encoding="utf-8",
    )
    t = TabulatedDecreasing.from_file(p)
    assert t.support_upper_bound == 2.0
    assert t.log_density(np.array([0.9]))[0] == -1.0

    bad = tmp_path / "bad.txt"
    bad.write_text("0.5 0.0 extra\n", encoding="utf-8")
    with pytest.raises(ValueError):
        TabulatedDecreasing.from_file(bad)


def test_density_from_name(tmp_path):
    assert density_from_name("gaussian").kind == "gaussian"
    assert density_from_name("UNITBALL").kind == "unitball"
    assert density_from_name("lebesgue").kind == "lebesgue"
    p = tmp_path / "d.txt"
    p.write_text("1.0 0.0\n", encoding="utf-8")
    assert density_from_name("tabulated", p).kind == "tabulated"
    with pytest.raises(ValueError):
        density_from_name("tabulated")
    with pytest.raises(ValueError):
        density_from_name("cauchy")
