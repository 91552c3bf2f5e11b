"""Brute-force ground truth at low dimension (n <= 6).

Evaluates the centered maximal function of the normalized indicator test
function g = chi(B_r)/mu(B_r) directly from its definition,

    Mg(rho) = sup_t  mu(B(rho xi, t) ∩ B_r) / (mu(B(rho xi, t)) mu(B_r)),

verifies the level-set inclusion that underpins the certified bound T,
produces empirical lower bounds on the operator constant, and cross-checks
the geometry quadrature by importance-sampled Monte Carlo.

The sup over t runs on a 512-point log-spaced grid (the objective's scale
spans decades), zooms on the three best cells (the objective can be
multimodal: a ball swallowing B_r competes with one hugging it), and the
few surviving candidates are re-evaluated with the full adaptive
quadrature, together with the witness radius t = rho + r whose value
already certifies the level-set bound.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .densities import RadialDensity
from .geometry import _cap_j_log, intersect_with_centered_ball, off_center_ball_measure
from .logspace import LOG_ZERO
from .measures import (log_ball_measure, log_ball_measure_grid, log_sphere_area,
                       radial_log_integrand, upper_cutoff)
from .quadrature import DEFAULT_REL_TOL, gauss_legendre_nodes, log_integral

MAX_ORACLE_DIMENSION = 6
_SCAN_PANELS = 24
_SCAN_ORDER = 8
_TABLE_POINTS = 4097


@dataclass
class RadialProfile:
    """A radial function sampled on an increasing grid, CSV-serializable."""

    radii: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.radii.ndim != 1 or self.radii.shape != self.values.shape:
            raise ValueError("radii and values must be equal-length 1-D arrays")
        if np.any(np.diff(self.radii) <= 0):
            raise ValueError("radii must be strictly increasing")

    def to_csv(self) -> str:
        out = io.StringIO()
        for key, val in self.meta.items():
            out.write(f"# {key}={val}\n")
        out.write("rho,value\n")
        for rho, val in zip(self.radii, self.values):
            out.write(f"{rho:.17g},{val:.17g}\n")
        return out.getvalue()


@dataclass
class InclusionRow:
    rho: float
    log_mg: float
    log_threshold: float

    @property
    def margin(self) -> float:
        return self.log_mg - self.log_threshold


@dataclass
class InclusionReport:
    n: int
    R: float
    r: float
    kind: str
    rows: list
    log_threshold: float

    @property
    def min_margin(self) -> float:
        return min(row.margin for row in self.rows)

    @property
    def failures(self) -> list:
        return [row.rho for row in self.rows if row.margin <= 0.0]

    @property
    def passed(self) -> bool:
        return not self.failures


def _check_dimension(n: int):
    if not 1 <= n <= MAX_ORACLE_DIMENSION:
        raise ValueError(
            f"the oracle is restricted to 1 <= n <= {MAX_ORACLE_DIMENSION} "
            "(quadrature cost bound)")


class _MaximalEvaluator:
    """Shared tables for repeated Mg evaluations at fixed (f, n, r).

    Scan-grade ratios come from fixed composite Gauss-Legendre panels with
    an interpolated cap integral and an interpolated cumulative radial
    mass; final values are re-computed with the adaptive machinery.
    """

    def __init__(self, f: RadialDensity, n: int, r: float, *, max_rho: float,
                 t_points: int = 512, rel_tol: float = DEFAULT_REL_TOL):
        _check_dimension(n)
        if r <= 0:
            raise ValueError("test-function radius r must be positive")
        self.f, self.n, self.r = f, n, r
        self.rel_tol = rel_tol
        self.t_points = t_points
        self.support = upper_cutoff(f, n)
        self.log_mu_br = log_ball_measure(f, n, r, rel_tol=rel_tol)
        if self.log_mu_br == LOG_ZERO:
            raise ValueError("mu(B_r) vanishes; the test function is undefined")
        self.horizon = 2.0 * (max_rho + r) + self.support + 1.0
        radii = np.linspace(0.0, self.horizon, _TABLE_POINTS)
        self._lc_radii = radii
        self._lc = np.concatenate([[LOG_ZERO],
                                   log_ball_measure_grid(f, n, radii[1:])])
        self._phi = radial_log_integrand(f, n)
        if n >= 2:
            thetas = np.linspace(0.0, math.pi, _TABLE_POINTS)
            self._j_thetas = thetas
            self._j_table = _cap_j_log(n, thetas)
            self._log_omega_sub = log_sphere_area(n - 1)

    def _log_ball(self, rho):
        rho = np.minimum(np.asarray(rho, dtype=float), self.horizon)
        return np.interp(rho, self._lc_radii, self._lc)

    def _cap_j(self, theta):
        return np.interp(theta, self._j_thetas, self._j_table)

    def _scan_pair(self, rho: float, ts: np.ndarray):
        """(log numerator, log denominator) for all t at once, scan grade."""
        n, r = self.n, self.r
        x, w = gauss_legendre_nodes(_SCAN_ORDER)
        inner = np.abs(ts - rho)
        outer = np.minimum(ts + rho, self.support)

        def partial(cap_radius):
            hi = np.minimum(outer, cap_radius)
            lo = np.minimum(inner, hi)
            width = hi - lo
            edges = lo[:, None] + width[:, None] * np.linspace(0.0, 1.0, _SCAN_PANELS + 1)
            half = 0.5 * (edges[:, 1:] - edges[:, :-1])
            mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
            nodes = mid[:, :, None] + half[:, :, None] * x
            s = nodes.reshape(len(ts), -1)
            with np.errstate(divide="ignore", invalid="ignore"):
                cos_th = (rho * rho + s * s - ts[:, None] ** 2) / np.maximum(
                    2.0 * rho * s, 1e-300)
                theta = np.arccos(np.clip(cos_th, -1.0, 1.0))
                vals = self._phi(s.ravel()).reshape(s.shape) + self._cap_j(theta)
            shift = np.max(np.where(np.isfinite(vals), vals, -np.inf),
                           axis=1, keepdims=True)
            shift = np.where(np.isfinite(shift), shift, 0.0)
            weights = (np.tile(w, _SCAN_PANELS)[None, :]
                       * np.repeat(half, _SCAN_ORDER, axis=1))
            total = (np.exp(vals - shift) * weights).sum(axis=1)
            with np.errstate(divide="ignore"):
                out = np.where(total > 0.0,
                               shift[:, 0] + np.log(np.maximum(total, 1e-300))
                               + self._log_omega_sub,
                               LOG_ZERO)
            return np.where(width > 0.0, out, LOG_ZERO)

        if self.n == 1:
            num = self._interval_mass(rho, ts, r)
            den = self._interval_mass(rho, ts, np.inf)
            return num, den
        full = np.clip(ts - rho, 0.0, None)
        den = np.logaddexp(self._log_ball(full), partial(np.inf))
        num = np.logaddexp(self._log_ball(np.minimum(full, r)), partial(r))
        return num, den

    def _interval_mass(self, rho: float, ts: np.ndarray, cap: float):
        """1-D case: mu((rho-t, rho+t) ∩ (-cap, cap)) via the cumulative table.

        The table stores log mu(B_s) = log(2 int_0^s f); one-sided masses
        are half of that in linear space (n <= 6 keeps them representable).
        """
        x0 = np.maximum(rho - ts, -cap)
        x1 = np.minimum(rho + ts, cap)

        def half_mass(a, b):
            a = np.maximum(a, 0.0)
            b = np.maximum(np.maximum(b, 0.0), a)
            return np.maximum(0.5 * (np.exp(self._log_ball(b))
                                     - np.exp(self._log_ball(a))), 0.0)

        mass = half_mass(x0, x1) + half_mass(-x1, -x0)
        with np.errstate(divide="ignore"):
            return np.where(mass > 0.0, np.log(np.maximum(mass, 1e-300)), LOG_ZERO)

    def _exact_ratio(self, rho: float, t: float) -> float:
        num = intersect_with_centered_ball(self.f, self.n, rho, t, self.r,
                                           rel_tol=self.rel_tol)
        den = off_center_ball_measure(self.f, self.n, rho, t, rel_tol=self.rel_tol)
        if den == LOG_ZERO:
            return LOG_ZERO
        return num - den

    def log_maximal_at(self, rho: float) -> float:
        """log Mg(rho), certified from below by the witness radius rho + r."""
        if rho < 0:
            raise ValueError("rho must be nonnegative")
        if rho == 0.0:
            return -self.log_mu_br  # any t <= r attains the sup
        t_lo = max(1e-6, rho - self.r) * (1.0 - 1e-9)
        t_hi = 2.0 * (rho + self.r) + self.support
        ts = np.geomspace(t_lo, t_hi, self.t_points)
        num, den = self._scan_pair(rho, ts)
        with np.errstate(invalid="ignore"):
            ratio = np.where(den > LOG_ZERO, num - den, -np.inf)
        order = np.argsort(ratio)[::-1]
        top = []
        for idx in order:
            if not np.isfinite(ratio[idx]):
                continue
            if all(abs(idx - j) > 1 for j in top):
                top.append(int(idx))
            if len(top) == 3:
                break
        candidates = [rho + self.r]
        for idx in top:
            a = ts[max(idx - 1, 0)]
            b = ts[min(idx + 1, len(ts) - 1)]
            zoom = np.linspace(a, b, 65)
            z_num, z_den = self._scan_pair(rho, zoom)
            with np.errstate(invalid="ignore"):
                z_ratio = np.where(z_den > LOG_ZERO, z_num - z_den, -np.inf)
            candidates.append(float(zoom[int(np.argmax(z_ratio))]))
        best = max(self._exact_ratio(rho, t) for t in candidates)
        return best - self.log_mu_br


def maximal_function_at(f: RadialDensity, n: int, r: float, rho: float, *,
                        t_points: int = 512,
                        rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Mg(rho) for the normalized indicator test function (linear scale)."""
    ev = _MaximalEvaluator(f, n, r, max_rho=max(rho, r), t_points=t_points,
                           rel_tol=rel_tol)
    return math.exp(ev.log_maximal_at(rho))


def maximal_profile(f: RadialDensity, n: int, r: float, *, points: int = 256,
                    rho_max: float | None = None, t_points: int = 512,
                    rel_tol: float = DEFAULT_REL_TOL,
                    focus: float | None = None) -> RadialProfile:
    """Mg sampled on a radial grid graded toward 0 and toward the far end.

    The grading follows the smoothstep map (dense at both ends, where Mg
    is flat at 1/mu(B_r) and where the level-set boundary sits).
    """
    if rho_max is None:
        rho_max = upper_cutoff(f, n)
    u = np.linspace(0.0, 1.0, points)
    radii = rho_max * (3.0 * u ** 2 - 2.0 * u ** 3)
    radii = np.unique(radii)
    if focus is not None and 0 < focus < rho_max:
        extra = np.linspace(0.9 * focus, min(1.1 * focus, rho_max), points // 8)
        radii = np.unique(np.concatenate([radii, extra]))
    ev = _MaximalEvaluator(f, n, r, max_rho=float(radii[-1]), t_points=t_points,
                           rel_tol=rel_tol)
    values = np.array([math.exp(ev.log_maximal_at(float(rho))) for rho in radii])
    meta = {"kind": f.kind, "n": n, "r": repr(r),
            "grid": f"smoothstep:{points}:0:{rho_max!r}", "seed": "none"}
    return RadialProfile(radii=radii, values=values, meta=meta)


def verify_level_set_inclusion(f: RadialDensity, n: int, R: float, r: float, *,
                               n_points: int = 64, t_points: int = 512,
                               rel_tol: float = DEFAULT_REL_TOL) -> InclusionReport:
    """Check B_R ⊂ {Mg > 1/mu(B~)} pointwise on a radial grid.

    Evaluates Mg at n_points radii up to R (1 - 1e-6) and compares against
    the level 1/mu(B(R xi, R + r)); the report carries the slack at every
    radius and lists any offenders.
    """
    if not 0 < r < R:
        raise ValueError("need 0 < r < R")
    _check_dimension(n)
    log_mu_btilde = off_center_ball_measure(f, n, R, R + r, rel_tol=rel_tol)
    log_threshold = -log_mu_btilde
    ev = _MaximalEvaluator(f, n, r, max_rho=R, t_points=t_points, rel_tol=rel_tol)
    rows = []
    for rho in np.linspace(0.0, R * (1.0 - 1e-6), n_points):
        log_mg = ev.log_maximal_at(float(rho))
        rows.append(InclusionRow(rho=float(rho), log_mg=log_mg,
                                 log_threshold=log_threshold))
    return InclusionReport(n=n, R=R, r=r, kind=f.kind, rows=rows,
                           log_threshold=log_threshold)


def empirical_constant_lower_bound(f: RadialDensity, n: int, r: float, p: float, *,
                                   points: int = 256, t_points: int = 512,
                                   rel_tol: float = DEFAULT_REL_TOL,
                                   profile: RadialProfile | None = None) -> float:
    """Empirical lower bound on the operator constant from the Mg profile.

    p > 1: ( int Mg^p dmu / int g^p dmu )^(1/p) by radial quadrature of the
    interpolated profile.  p = 1: the weak form sup_tau tau mu({Mg > tau})
    over the profile levels (int g dmu = 1, and the value is invariant
    under normalizing mu to mass 1).
    """
    if p < 1.0:
        raise ValueError("p must be >= 1")
    _check_dimension(n)
    if profile is None:
        profile = maximal_profile(f, n, r, points=points, t_points=t_points,
                                  rel_tol=rel_tol)
    radii = profile.radii
    with np.errstate(divide="ignore"):
        log_mg = np.log(np.maximum(profile.values, 1e-300))
    log_mu_br = log_ball_measure(f, n, r, rel_tol=rel_tol)
    if p == 1.0:
        cum = np.concatenate([[LOG_ZERO],
                              log_ball_measure_grid(f, n, radii[1:])])
        cell_mass = np.exp(cum[1:]) - np.exp(cum[:-1])
        best = LOG_ZERO
        for tau in log_mg:
            mask = (log_mg[1:] > tau) & (log_mg[:-1] > tau)
            mass = float(cell_mass[mask].sum())
            if mass > 0.0:
                best = max(best, tau + math.log(mass))
        return math.exp(best)
    phi_radial = radial_log_integrand(f, n)

    def phi(s):
        s = np.asarray(s, dtype=float)
        return p * np.interp(s, radii, log_mg) + phi_radial(s)

    res = log_integral(phi, float(radii[0]), float(radii[-1]), rel_tol=rel_tol,
                       probe_points=list(radii[:: max(len(radii) // 64, 1)]))
    log_num = log_sphere_area(n) + res.log_value
    log_den = (1.0 - p) * log_mu_br
    return math.exp((log_num - log_den) / p)


def monte_carlo_ball_measure(f: RadialDensity, n: int, d: float, t: float,
                             samples: int, seed: int, *,
                             chunk: int = 1_000_000):
    """Importance-sampled mu(B(d xi, t)) / mu(total), with its standard error.

    Radii are drawn from the density f(s) s^(n-1) by inverse CDF on a
    10^4-knot table; directions are uniform via normalized standard
    normals.  Fixed seed (and the fixed chunk size) make the estimate
    bit-identical across runs.
    """
    if not 2 <= n <= MAX_ORACLE_DIMENSION:
        raise ValueError(f"Monte Carlo supports 2 <= n <= {MAX_ORACLE_DIMENSION}")
    if samples < 10_000:
        raise ValueError("need at least 1e4 samples")
    if d < 0 or t <= 0:
        raise ValueError("need d >= 0 and t > 0")
    sup = upper_cutoff(f, n)
    knots = np.linspace(0.0, sup, 10_001)
    phi = radial_log_integrand(f, n)
    log_h = phi(knots)
    h = np.exp(log_h - np.max(log_h[np.isfinite(log_h)]))
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (h[1:] + h[:-1]) * np.diff(knots))])
    if cdf[-1] <= 0.0:
        raise ValueError("density has zero mass on its support")
    cdf /= cdf[-1]
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = 0
    remaining = samples
    while remaining > 0:
        m = min(chunk, remaining)
        u = rng.random(m)
        s = np.interp(u, cdf, knots)
        z = rng.standard_normal((m, n))
        cos_th = z[:, 0] / np.linalg.norm(z, axis=1)
        hits += int(np.count_nonzero(s * s + d * d - 2.0 * s * d * cos_th < t * t))
        remaining -= m
    est = hits / samples
    stderr = math.sqrt(max(est * (1.0 - est), 0.0) / samples)
    return est, stderr
