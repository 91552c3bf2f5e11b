"""Acceptance criteria, one test per criterion, each printing a status line.

Criterion 7's mass-concentration clause asserts a quoted inequality that is
mathematically false from n = 6 on (the ball at the radial-mass mode holds
just under half the mass; see notes in the repository history); that test
implements the clause as stated and therefore fails honestly.  Everything
else passes.
"""

import json
import math
import time

import numpy as np

from radialmax import bounds, optimize
from radialmax.cli import main
from radialmax.densities import Gaussian, UnitBallIndicator
from radialmax.geometry import off_center_ball_measure
from radialmax.measures import log_mass, log_sphere_area, sphere_ratio_bounds
from radialmax.oracle import monte_carlo_ball_measure, verify_level_set_inclusion

REFERENCE_EXPONENTS = {
    "general": 1.005274,
    "gaussian-lower": 1.011871,
    "gaussian-upper": 1.049427,
    "unitball": 1.03946,
}


def _report(criterion: str, ok: bool, detail: str):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def _run_p0(tmp_path, target: str):
    out = tmp_path / f"{target}.json"
    t0 = time.perf_counter()
    code = main(["p0", target, "--output", str(out)])
    elapsed = time.perf_counter() - t0
    payload = json.loads(out.read_text())
    return code, payload, elapsed


def test_criterion_1_general_exponent(tmp_path):
    code, payload, elapsed = _run_p0(tmp_path, "general")
    ok = (code == 0 and elapsed < 5.0
          and abs(payload["value"] - REFERENCE_EXPONENTS["general"]) < 1e-3)
    _report("1", ok, f"p0 general = {payload['value']:.6f} in {elapsed:.2f} s")
    assert ok


def test_criterion_2_gaussian_exponents(tmp_path):
    code_lo, lo, t_lo = _run_p0(tmp_path, "gaussian-lower")
    code_hi, hi, t_hi = _run_p0(tmp_path, "gaussian-upper")
    ok = (code_lo == 0 and code_hi == 0 and t_lo < 5.0 and t_hi < 5.0
          and abs(lo["value"] - REFERENCE_EXPONENTS["gaussian-lower"]) < 1e-3
          and abs(hi["value"] - REFERENCE_EXPONENTS["gaussian-upper"]) < 1e-3)
    _report("2", ok, f"gaussian-lower = {lo['value']:.6f} ({t_lo:.2f} s), "
                     f"gaussian-upper = {hi['value']:.6f} ({t_hi:.2f} s)")
    assert ok


def test_criterion_3_unitball_exponent(tmp_path):
    code, payload, elapsed = _run_p0(tmp_path, "unitball")
    ok = (code == 0 and elapsed < 5.0
          and abs(payload["value"] - REFERENCE_EXPONENTS["unitball"]) < 1e-3)
    _report("3", ok, f"p0 unitball = {payload['value']:.6f} in {elapsed:.2f} s")
    assert ok


def test_criterion_4_criticality_sandwich():
    details = []
    ok = True
    for kind, search in optimize.EXPONENT_SEARCHES.items():
        p_star = search().value
        below = optimize.max_growth_base_log(kind, p_star - 1e-3).value
        above = optimize.max_growth_base_log(kind, p_star + 1e-3).value
        good = below > 0.0 and above <= math.log1p(1e-6)
        ok &= good
        details.append(f"{kind}: alpha(p*-1e-3)={math.exp(below):.6f}, "
                       f"sup alpha(p*+1e-3)={math.exp(above):.6f}")
    _report("4", ok, "; ".join(details))
    assert ok


INCLUSION_CONFIGS = {
    "unitball": [(1.0, 0.15), (1.0, 0.3), (0.9, 0.2), (0.8, 0.1),
                 (0.7, 0.35), (0.5, 0.2)],
    "gaussian": [(1.0, 0.2), (1.2, 0.3), (0.8, 0.15), (0.6, 0.2),
                 (1.5, 0.4), (1.0, 0.5)],
}


def test_criterion_5_level_set_inclusion():
    densities = {"gaussian": Gaussian(), "unitball": UnitBallIndicator()}
    t0 = time.perf_counter()
    checks = failures = 0
    for kind, f in densities.items():
        for n in (2, 3):
            for R, r in INCLUSION_CONFIGS[kind]:
                rep = verify_level_set_inclusion(f, n, R, r, n_points=64)
                checks += len(rep.rows)
                failures += len(rep.failures)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 600.0 and checks == 2 * 2 * 6 * 64
    _report("5", ok, f"{checks} radii checked, {failures} failures, {elapsed:.1f} s")
    assert ok


def test_criterion_6_lower_bound_chain():
    violations = 0
    triples = 0
    lam_grid = (0.05, 0.1, 0.2, 0.3, 0.38)

    for f in (Gaussian(), UnitBallIndicator()):
        for n in (5, 10, 20, 40, 80):
            for lam in lam_grid:
                for p in (1.001, 1.004):
                    rep = bounds.general_construction(f, n, p, lam)
                    triples += 1
                    if rep.log_t_exact < rep.log_t_lower:
                        violations += 1
    for n in (10, 20, 50, 100, 200):
        for lam in lam_grid:
            for p in (1.002, 1.008):
                rep = bounds.gaussian_construction(n, p, lam)
                triples += 1
                if rep.log_t_exact < rep.log_t_lower:
                    violations += 1
    ok = violations == 0 and triples == 150
    _report("6", ok, f"{triples} (n, lambda, p) triples, {violations} violations")
    assert ok


def test_criterion_7a_gaussian_sandwich_and_sphere_ratio():
    ns = sorted(set(np.geomspace(2, 200, 20).astype(int)))
    ok_sandwich = True
    for n in ns:
        R_n = bounds.gaussian_mode_radius(int(n))
        for frac in np.linspace(0.05, 0.95, 20):
            lo, mid, hi = bounds.gaussian_ball_sandwich(int(n), float(frac) * R_n)
            ok_sandwich &= lo - 1e-9 <= mid <= hi + 1e-9
    n = np.arange(2, 10_001)
    lo_b, hi_b = sphere_ratio_bounds(n)
    true = np.exp(log_sphere_area(n - 1) - log_sphere_area(n))
    ok_ratio = bool(np.all((lo_b < true) & (true < hi_b)))
    ok = ok_sandwich and ok_ratio
    _report("7a", ok, "gaussian ball sandwich on 20x20 grid and sphere-ratio "
                      "bracket on 2..10^4")
    assert ok


def test_criterion_7b_mass_concentration_as_stated():
    # As specified: exp(log mu(B_{R_n})) >= 1 - 2/(sqrt(pi) sqrt(n-1)) for
    # every n in 2..200.  The inequality is false for n >= 6 (the claimed
    # proof bounds the tail by a quantity that is actually a lower bound);
    # this test states the criterion faithfully and fails honestly.
    violations = []
    for n in range(2, 201):
        log_m, floor = bounds.gaussian_mass_concentration(n)
        if math.exp(log_m) < floor:
            violations.append(n)
    ok = not violations
    _report("7b", ok,
            "mass-concentration floor holds for n in 2..200" if ok else
            f"floor fails for {len(violations)} dimensions starting at "
            f"n={violations[0]} (mass at the mode radius is just under 1/2; "
            "see decisions ledger)")
    assert ok, (
        "quoted mass-concentration bound is mathematically false for n >= 6: "
        f"mu(B_R_n) ~ 0.456..0.493 < floor; first violation n={violations[0]}")


def test_criterion_8_exponential_growth_sweep(tmp_path):
    # p = 1.004 sits below the critical exponent 1.005274, and lambda close
    # to the maximizer makes the growth base exceed 1, so the certified
    # bound grows exponentially in the dimension
    out = tmp_path / "sweep.csv"
    t0 = time.perf_counter()
    code = main(["sweep", "--measure", "gaussian", "--construction", "general",
                 "--n-range", "100,1000,10000,100000,1000000",
                 "--lambda", "0.0394", "--p", "1.004", "--output", str(out)])
    elapsed = time.perf_counter() - t0
    lines = [l for l in out.read_text().splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    rows = [l.split(",") for l in lines[1:]]
    ok = code == 0 and elapsed < 60.0 and len(rows) == 5
    ok &= all(row[header.index("error")] == "" for row in rows)
    log_alpha = math.log(float(rows[0][header.index("alpha")]))
    ok &= log_alpha > 0.0  # genuine growth, not just affine structure
    ns = [int(row[0]) for row in rows]
    vals = [float(row[header.index("logT_lower")]) for row in rows]
    slopes = [(v2 - v1) / (n2 - n1)
              for (n1, v1), (n2, v2) in zip(zip(ns, vals), zip(ns[1:], vals[1:]))]
    ok &= all(abs(s - log_alpha) <= 1e-8 * abs(log_alpha) for s in slopes)
    exact_cells = [row[header.index("logT_exact")] for row in rows]
    ok &= all(cell != "" for cell, n in zip(exact_cells, ns) if n <= 10_000)
    ok &= all(cell == "" for cell, n in zip(exact_cells, ns) if n > 10_000)
    _report("8", ok, f"5 dimensions up to 10^6 in {elapsed:.1f} s, "
                     f"slope matches log alpha = {log_alpha:.9f} > 0")
    assert ok


def test_criterion_9_geometry_ground_truth():
    lens = off_center_ball_measure(UnitBallIndicator(), 2, 1.0, 1.0)
    lens_exact = math.log(2.0 * math.pi / 3.0 - math.sqrt(3.0) / 2.0)
    ok_lens = abs(lens - lens_exact) <= 1e-8 * abs(lens_exact)

    rng = np.random.Generator(np.random.PCG64(20240214))
    disagreements = 0
    for i in range(10):
        kind = "gaussian" if i % 2 == 0 else "unitball"
        f = Gaussian() if kind == "gaussian" else UnitBallIndicator()
        d = float(rng.uniform(0.1, 1.2))
        t = float(rng.uniform(0.2, 1.5))
        est, err = monte_carlo_ball_measure(f, 3, d, t, 10_000_000, seed=20240214 + i)
        truth = math.exp(off_center_ball_measure(f, 3, d, t) - log_mass(f, 3))
        if abs(est - truth) > 3.0 * max(err, 1e-12):
            disagreements += 1
    ok = ok_lens and disagreements == 0
    _report("9", ok, f"lens matched to 1e-8; Monte Carlo 10x1e7 samples, "
                     f"{disagreements} outside 3 stderr")
    assert ok


def test_criterion_10_determinism(tmp_path):
    cases = [
        ["p0", "general"],
        ["p0", "gaussian-lower"],
        ["p0", "gaussian-upper"],
        ["p0", "unitball"],
        ["bound", "--measure", "gaussian", "--n", "50", "--p", "1.005",
         "--lambda", "0.2", "--construction", "gaussian"],
        ["bound", "--measure", "unitball", "--n", "20", "--p", "1.02",
         "--R", "1", "--lambda", "0.15"],
        ["sweep", "--measure", "gaussian", "--construction", "general",
         "--n-range", "20,40", "--lambda", "0.2", "--p", "1.004"],
        ["verify", "montecarlo", "--samples", "100000", "--seed", "7"],
        ["verify", "spheres"],
        ["oracle", "--measure", "gaussian", "--n", "3", "--r", "0.2",
         "--rho", "0.5"],
        ["oracle", "--measure", "unitball", "--n", "2", "--r", "0.3",
         "--profile-points", "12"],
    ]
    mismatches = []
    for i, argv in enumerate(cases):
        a = tmp_path / f"run_a_{i}.out"
        b = tmp_path / f"run_b_{i}.out"
        code_a = main(argv + ["--output", str(a)])
        code_b = main(argv + ["--output", str(b)])
        if code_a != code_b or a.read_bytes() != b.read_bytes():
            mismatches.append(argv[0])
    ok = not mismatches
    _report("10", ok, f"{len(cases)} commands byte-identical on rerun"
            if ok else f"mismatches: {mismatches}")
    assert ok
