import json
import math

import pytest

from radialmax.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestP0Command:
    @pytest.mark.parametrize("target,expected", [
        ("general", 1.005274),
        ("gaussian-lower", 1.011871),
        ("gaussian-upper", 1.049427),
        ("unitball", 1.03946),
    ])
    def test_targets(self, capsys, target, expected):
        code, out, _ = run(capsys, "p0", target)
        assert code == 0
        payload = json.loads(out)
        assert payload["target"] == target
        assert payload["value"] == pytest.approx(expected, abs=1e-3)
        assert payload["bracket"][0] <= payload["argmax"] <= payload["bracket"][1]
        assert payload["evaluations"] > 2000

    def test_bad_target_is_usage_error(self, capsys):
        code, _, err = run(capsys, "p0", "cauchy")
        assert code == 1
        assert "error" in err


class TestBoundCommand:
    def test_gaussian_construction_chain(self, capsys):
        code, out, _ = run(capsys, "bound", "--measure", "gaussian", "--n", "100",
                           "--p", "1.005", "--lambda", "0.2",
                           "--construction", "gaussian")
        assert code == 0
        payload = json.loads(out)
        assert payload["logT_exact"] >= payload["logT_lower"]
        assert payload["R"] < math.sqrt(99.0 / (2.0 * math.pi))
        assert payload["terms"]["dominance_margin"] > 0.0

    def test_general_construction_reports_l_k(self, capsys):
        code, out, _ = run(capsys, "bound", "--measure", "gaussian", "--n", "30",
                           "--p", "1.003", "--lambda", "0.2",
                           "--construction", "general")
        assert code == 0
        payload = json.loads(out)
        assert payload["l"] == 20
        assert payload["k"] == pytest.approx(1.0 / 21.0)
        assert payload["logT_exact"] >= payload["logT_lower"]

    def test_unitball_sandwich(self, capsys):
        code, out, _ = run(capsys, "bound", "--measure", "unitball", "--n", "20",
                           "--p", "1.02", "--R", "1", "--lambda", "0.15")
        assert code == 0
        payload = json.loads(out)
        assert payload["terms"]["sandwich_lower"] - 1e-9 <= payload["logT_exact"]
        assert payload["logT_exact"] <= payload["terms"]["sandwich_upper"] + 1e-9

    def test_lebesgue_exits_two(self, capsys):
        code, _, err = run(capsys, "bound", "--measure", "lebesgue", "--n", "10",
                           "--p", "1.01", "--lambda", "0.2")
        assert code == 2
        assert "NonFiniteMeasure" in err

    def test_domain_error_exits_two(self, capsys):
        code, _, err = run(capsys, "bound", "--measure", "gaussian", "--n", "10",
                           "--p", "1.01", "--lambda", "0.9")
        assert code == 2
        assert "error" in err


class TestSweepCommand:
    def test_general_sweep_slope_column(self, capsys):
        code, out, _ = run(capsys, "sweep", "--measure", "gaussian",
                           "--n-range", "50:150:50", "--lambda", "0.2",
                           "--p", "1.004", "--construction", "general")
        assert code == 0
        lines = [l for l in out.splitlines() if l and not l.startswith("#")]
        header = lines[0].split(",")
        rows = [l.split(",") for l in lines[1:]]
        assert header[:3] == ["n", "lambda", "p"]
        assert len(rows) == 3
        alpha = float(rows[0][header.index("alpha")])
        for row in rows[1:]:
            slope = float(row[header.index("dlogT_dn")])
            assert slope == pytest.approx(math.log(alpha), rel=1e-8)
        assert all(row[header.index("error")] == "" for row in rows)

    def test_unitball_upper_column_decreases_above_critical_p(self, capsys):
        # p = 1.05 sits above the unit-ball critical exponent, so the
        # closed-form upper bound shrinks with the dimension
        code, out, _ = run(capsys, "sweep", "--measure", "unitball",
                           "--n-range", "50:150:50", "--lambda", "0.15",
                           "--p", "1.05", "--construction", "unitball")
        assert code == 0
        lines = [l for l in out.splitlines() if l and not l.startswith("#")]
        header = lines[0].split(",")
        uppers = [float(row.split(",")[header.index("logT_upper")])
                  for row in lines[1:]]
        assert all(b < a for a, b in zip(uppers, uppers[1:]))

    def test_row_errors_recorded_and_run_continues(self, capsys):
        code, out, _ = run(capsys, "sweep", "--measure", "lebesgue",
                           "--n-range", "5,10", "--lambda", "0.2", "--p", "1.01",
                           "--construction", "general")
        assert code == 0
        rows = [l for l in out.splitlines() if l and not l.startswith("#")][1:]
        assert len(rows) == 2
        assert all("NonFiniteMeasure" in row for row in rows)

    def test_empty_range_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "sweep", "--measure", "gaussian",
                         "--n-range", "", "--lambda", "0.2", "--p", "1.01")
        assert code == 1


class TestVerifyCommand:
    def test_spheres_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "spheres")
        assert code == 0
        assert "PASS sphere-ratio-bracket" in out

    def test_remark_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "remark")
        assert code == 0
        assert "PASS balanced-radius-growth" in out

    def test_gaussian_lemmas_reports_false_mass_claim(self, capsys):
        # the quoted mass floor is genuinely false from n = 6 on; the suite
        # must say so and exit 1 with a reproducer
        code, out, _ = run(capsys, "verify", "gaussian-lemmas")
        assert code == 1
        assert "PASS gaussian-ball-sandwich" in out
        assert "FAIL gaussian-mass-concentration" in out
        assert "n=6" in out

    def test_montecarlo_small(self, capsys):
        code, out, _ = run(capsys, "verify", "montecarlo", "--samples", "50000")
        assert code == 0
        assert "montecarlo-vs-quadrature" in out


class TestOracleCommand:
    def test_point_value_json(self, capsys):
        code, out, _ = run(capsys, "oracle", "--measure", "gaussian", "--n", "3",
                           "--r", "0.2", "--rho", "0.0")
        assert code == 0
        payload = json.loads(out)
        from radialmax.densities import Gaussian
        from radialmax.measures import log_ball_measure
        assert payload["value"] == pytest.approx(
            math.exp(-log_ball_measure(Gaussian(), 3, 0.2)), rel=1e-9)

    def test_profile_csv(self, capsys):
        code, out, _ = run(capsys, "oracle", "--measure", "unitball", "--n", "2",
                           "--r", "0.3", "--profile-points", "16")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# kind=unitball")
        assert "rho,value" in lines
        assert any("seed=none" in l for l in lines[:6])

    def test_empirical_bound_json(self, capsys):
        code, out, _ = run(capsys, "oracle", "--measure", "unitball", "--n", "2",
                           "--r", "0.2", "--p", "1.5", "--profile-points", "48")
        assert code == 0
        payload = json.loads(out)
        assert payload["constant_lower_bound"] >= 1.0 - 1e-9

    def test_dimension_guard_exits_two(self, capsys):
        code, _, err = run(capsys, "oracle", "--measure", "gaussian", "--n", "9",
                           "--r", "0.2", "--rho", "0.5")
        assert code == 2
        assert "error" in err


class TestDeterminism:
    def test_byte_identical_reruns(self, tmp_path, capsys):
        cases = [
            ["p0", "unitball"],
            ["bound", "--measure", "gaussian", "--n", "40", "--p", "1.004",
             "--lambda", "0.2", "--construction", "gaussian"],
            ["sweep", "--measure", "gaussian", "--n-range", "20,40",
             "--lambda", "0.2", "--p", "1.004", "--construction", "gaussian"],
            ["verify", "montecarlo", "--samples", "50000", "--seed", "99"],
            ["oracle", "--measure", "unitball", "--n", "2", "--r", "0.3",
             "--profile-points", "12"],
        ]
        for i, argv in enumerate(cases):
            a = tmp_path / f"a{i}.out"
            b = tmp_path / f"b{i}.out"
            code_a = main(argv + ["--output", str(a)])
            code_b = main(argv + ["--output", str(b)])
            capsys.readouterr()
            assert code_a == code_b
            assert a.read_bytes() == b.read_bytes(), argv
