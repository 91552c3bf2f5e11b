"""Certified lower bounds on the maximal-operator L^p constant.

For a finite measure with radially decreasing density and radii r < R, the
indicator test function over B_r witnesses

    C >= T(R, r) = mu(B_R)/mu(B~) * (mu(B_r)/mu(B_R))^((p-1)/p),

where B~ = B(R xi, R + r) is the off-center ball through the far side of
the origin.  ``log_t_exact`` evaluates T by exact quadrature; the
construction functions additionally build the closed-form lower bounds
whose base alpha > 1 drives exponential growth in the dimension:

  general_construction    any finite radially decreasing density; the
                          balanced radius ties the inner cap estimate to
                          the outer annulus estimate
  gaussian_construction   the sharper estimates available for
                          f = exp(-pi s^2)
  unitball_construction   Lebesgue measure on the unit ball, where the
                          two-sided sandwich is elementary

Every intermediate estimate of a construction is recorded in
``BoundReport.terms`` so each displayed inequality is individually
testable, separately from the exact values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .densities import Gaussian, RadialDensity, UnitBallIndicator
from .errors import NoBalancedRadiusError, NonFiniteMeasureError
from .geometry import contact_angle, contact_angle_unit_ball, off_center_ball_measure
from .logspace import LOG_ZERO
from .measures import (log_ball_measure, log_ball_measure_grid, log_sphere_area)
from .quadrature import DEFAULT_REL_TOL

LAMBDA_MAX = math.sqrt(2.0) - 1.0
T_EXACT_MAX_N = 10_000  # beyond this, quadrature adds nothing over closed forms


def gaussian_mode_radius(n: int) -> float:
    """Maximizer of exp(-pi s^2) s^(n-1): sqrt((n-1)/(2 pi))."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return math.sqrt((n - 1) / (2.0 * math.pi))


@dataclass
class BoundReport:
    """Full record of one lower-bound construction.

    ``terms`` maps labels to intermediate log-quantities so the individual
    estimates of the derivation stay auditable.  ``log_t_exact`` is None
    when the exact quadrature was skipped (very large n).
    """

    n: int
    p: float
    lam: float
    beta0: float
    R: float
    r: float
    alpha: float
    log_t_lower: float
    log_t_exact: float | None = None
    l: int | None = None
    k: float | None = None
    Q: float | None = None
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if abs(self.r - self.lam * self.R) > 1e-12 * max(self.r, self.lam * self.R):
            raise ValueError("r must equal lam * R")
        if self.l is not None and self.k != 1.0 / (1.0 + self.l):
            raise ValueError("k must equal 1/(1+l) when l is present")
        if not self.alpha > 0.0:
            raise ValueError("alpha must be positive")

    @property
    def chain_margin(self):
        """log_t_exact - log_t_lower; positive when the certified chain holds."""
        if self.log_t_exact is None:
            return None
        return self.log_t_exact - self.log_t_lower

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "lambda": self.lam,
            "beta0": self.beta0,
            "l": self.l,
            "k": self.k,
            "R": self.R,
            "r": self.r,
            "Q": self.Q,
            "alpha": self.alpha,
            "logT_lower": self.log_t_lower,
            "logT_exact": self.log_t_exact,
            "terms": dict(self.terms),
        }


def log_t_exact(f: RadialDensity, n: int, p: float, R: float, r: float, *,
                rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log T(R, r) by exact quadrature of the three measures involved."""
    if not 0.0 < r < R:
        raise ValueError("need 0 < r < R")
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if not f.is_finite(n):
        raise NonFiniteMeasureError(f"{f.kind} measure is not finite in dimension {n}")
    lb_R = log_ball_measure(f, n, R, rel_tol=rel_tol)
    lb_r = log_ball_measure(f, n, r, rel_tol=rel_tol)
    lb_off = off_center_ball_measure(f, n, R, R + r, rel_tol=rel_tol)
    return lb_R - lb_off + (p - 1.0) / p * (lb_r - lb_R)


def solve_radius_equation(f: RadialDensity, n: int, beta0: float, k: float, *,
                          rel_tol: float = DEFAULT_REL_TOL,
                          scan_points: int = 10_000) -> float:
    """Largest R with mu(B_{R sin b0}) = sin(b0)^(n k) mu(B_R).

    The log-ratio g(R) = log mu(B_{R s}) - log mu(B_R) - n k log s falls
    from -n(1-k) log(1/s) < 0 at 0+ and climbs to -n k log s > 0 as the
    ratio tends to 1, so the last crossing is bracketed by doubling until
    the ratio is within 1e-6 of 1, scanning down in steps of R_max/10^4,
    and bisecting the first sign change to 1e-10 relative in R.
    """
    if not f.is_finite(n):
        raise NoBalancedRadiusError(
            f"{f.kind} measure is not finite in dimension {n}; "
            "the balanced-radius equation needs a finite measure")
    if not 0.0 < k < 1.0:
        raise ValueError("k must lie in (0, 1)")
    s = math.sin(beta0)
    if not 0.0 < s < 1.0:
        raise ValueError("sin(beta0) must lie in (0, 1)")
    target = n * k * math.log(s)

    def g(R):
        return (log_ball_measure(f, n, R * s, rel_tol=rel_tol)
                - log_ball_measure(f, n, R, rel_tol=rel_tol) - target)

    R_max = 1.0
    for _ in range(200):
        delta = (log_ball_measure(f, n, R_max * s, rel_tol=rel_tol)
                 - log_ball_measure(f, n, R_max, rel_tol=rel_tol))
        if delta >= -1e-6 and delta - target > 0.0:
            break
        R_max *= 2.0
    else:
        raise NoBalancedRadiusError("ball-measure ratio never approached 1 while doubling")

    # one cumulative sweep gives the whole downward scan
    radii = R_max * (1.0 - np.arange(scan_points) / scan_points)
    merged = np.unique(np.concatenate([radii, radii * s]))
    lb = log_ball_measure_grid(f, n, merged)
    idx = np.searchsorted(merged, radii)
    idx_s = np.searchsorted(merged, radii * s)
    g_scan = lb[idx_s] - lb[idx] - target  # descending radii order
    bracket = None
    for j in range(1, scan_points):
        if g_scan[j] <= 0.0 < g_scan[j - 1]:
            bracket = (float(radii[j]), float(radii[j - 1]))
            break
    if bracket is None:
        deltas = g_scan + target
        raise NoBalancedRadiusError(
            "no sign change on the scanned range",
            ratio_range=(float(np.min(deltas)), float(np.max(deltas))))
    lo, hi = bracket
    while hi - lo > 1e-10 * hi:
        mid = 0.5 * (lo + hi)
        if g(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _annulus_integer(lam: float, log_s: float) -> int:
    """Smallest integer l with sin(b0)^(-l) >= 2 + lam."""
    return int(math.ceil(-math.log(2.0 + lam) / log_s))


def general_construction(f: RadialDensity, n: int, p: float, lam: float, *,
                         with_exact: bool | None = None,
                         rel_tol: float = DEFAULT_REL_TOL) -> BoundReport:
    """Lower-bound construction valid for every finite radially decreasing density.

    Splits B~ at the sphere of radius R, covers the inner piece by the cap
    ball B_{R sin b0}, controls the outer piece through the annulus
    estimate with Q = 1/(sqrt(pi) sin b0 cos b0), and balances the two
    exponents with k = 1/(1+l); R then solves the balanced-radius
    equation and

        log T >= -log(Q + 1) + n log alpha,  alpha = lam^((p-1)/p) / sin(b0)^k.
    """
    if not 0.0 < lam < LAMBDA_MAX:
        raise ValueError(f"lam must lie in (0, sqrt(2)-1), got {lam!r}")
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if not f.is_finite(n):
        raise NonFiniteMeasureError(
            f"{f.kind} measure is not finite in dimension {n}")
    beta0 = contact_angle(lam)
    s, cos_b0 = math.sin(beta0), math.cos(beta0)
    log_s = math.log(s)
    l = _annulus_integer(lam, log_s)
    k = 1.0 / (1.0 + l)
    R = solve_radius_equation(f, n, beta0, k, rel_tol=rel_tol)
    r = lam * R
    Q = 1.0 / (math.sqrt(math.pi) * s * cos_b0)
    log_alpha = (p - 1.0) / p * math.log(lam) - k * log_s
    log_t_lower = -math.log1p(Q) + n * log_alpha

    terms = {
        "ratio_lower_log": -math.log1p(Q) - n * k * log_s,
        "annulus_power_margin": -l * log_s - math.log(2.0 + lam),
        "outer_term_log": math.log(Q) + n * (1.0 - l * k) * log_s,
        "inner_term_log": n * k * log_s,
    }
    exact = None
    if with_exact is None:
        with_exact = n <= T_EXACT_MAX_N
    if with_exact:
        lb_R = log_ball_measure(f, n, R, rel_tol=rel_tol)
        lb_r = log_ball_measure(f, n, r, rel_tol=rel_tol)
        lb_off = off_center_ball_measure(f, n, R, R + r, rel_tol=rel_tol)
        lb_cap = log_ball_measure(f, n, R * s, rel_tol=rel_tol)
        exact = lb_R - lb_off + (p - 1.0) / p * (lb_r - lb_R)
        terms.update({
            "log_mu_ball_R": lb_R,
            "log_mu_ball_r": lb_r,
            "log_mu_ball_R_sin": lb_cap,
            "log_mu_offcenter": lb_off,
            "radius_equation_residual": lb_cap - lb_R - n * k * log_s,
        })
    return BoundReport(n=n, p=p, lam=lam, beta0=beta0, R=R, r=r,
                       alpha=math.exp(log_alpha), log_t_lower=log_t_lower,
                       log_t_exact=exact, l=l, k=k, Q=Q, terms=terms)


@dataclass
class GrowthRow:
    n: int
    R: float
    log_f_at_R: float
    decay_bound_log: float


@dataclass
class GrowthReport:
    lam: float
    k: float
    rows: list
    radii_nondecreasing: bool
    decay_holds: bool

    @property
    def passed(self) -> bool:
        return self.radii_nondecreasing and self.decay_holds


def radius_growth_report(f: RadialDensity, n_values, lam: float, *,
                         rel_tol: float = DEFAULT_REL_TOL) -> GrowthReport:
    """Track the balanced radius across dimensions.

    Checks that R_n does not shrink (up to a 1e-3 relative fluctuation
    allowance) and that the density value there decays at least like
    f(0) sin(b0)^(n (1-k)).
    """
    beta0 = contact_angle(lam)
    s = math.sin(beta0)
    l = _annulus_integer(lam, math.log(s))
    k = 1.0 / (1.0 + l)
    log_f0 = f.log_density_at_zero
    rows = []
    nondecreasing = True
    decay = True
    prev = None
    for n in n_values:
        R = solve_radius_equation(f, n, beta0, k, rel_tol=rel_tol)
        log_fR = float(f.log_density(np.asarray([R]))[0])
        bound = log_f0 + n * (1.0 - k) * math.log(s)
        rows.append(GrowthRow(n=n, R=R, log_f_at_R=log_fR, decay_bound_log=bound))
        if prev is not None and R < prev * (1.0 - 1e-3):
            nondecreasing = False
        if log_fR > bound + 1e-9:
            decay = False
        prev = R
    return GrowthReport(lam=lam, k=k, rows=rows,
                        radii_nondecreasing=nondecreasing, decay_holds=decay)


def gaussian_ball_sandwich(n: int, rho: float, *,
                           rel_tol: float = DEFAULT_REL_TOL):
    """Elementary bracket for the Gaussian ball measure below the mode radius.

    omega e^(-pi rho^2) rho^n / n <= mu(B_rho) <= omega e^(-pi rho^2) rho^n,
    valid for 0 < rho < sqrt((n-1)/(2 pi)).  Returns the three logs.
    """
    R_n = gaussian_mode_radius(n)
    if not 0.0 < rho < R_n:
        raise ValueError(f"need 0 < rho < {R_n!r}")
    core = log_sphere_area(n) - math.pi * rho * rho + n * math.log(rho)
    mid = log_ball_measure(Gaussian(), n, rho, rel_tol=rel_tol)
    return core - math.log(n), mid, core


def gaussian_mass_concentration(n: int, *, rel_tol: float = DEFAULT_REL_TOL):
    """Mass inside B_{R_n}: quadrature value and the 1 - 2/(sqrt(pi) sqrt(n-1)) floor."""
    if n < 2:
        raise ValueError("needs n >= 2")
    log_mass = log_ball_measure(Gaussian(), n, gaussian_mode_radius(n), rel_tol=rel_tol)
    floor = 1.0 - 2.0 / (math.sqrt(math.pi) * math.sqrt(n - 1.0))
    return log_mass, floor


def gaussian_growth_base_log(p: float, lam: float) -> float:
    """log of the per-dimension growth base of the Gaussian lower construction."""
    beta0 = contact_angle(lam)
    s = math.sin(beta0)
    c = math.cos(beta0) ** 2
    return (-0.5 * c * math.exp(-c) - math.log(s)
            + (p - 1.0) / p * (0.5 * math.exp(-c) * (1.0 - lam * lam) + math.log(lam)))


def gaussian_construction(n: int, p: float, lam: float, *,
                          with_exact: bool | None = None,
                          rel_tol: float = DEFAULT_REL_TOL) -> BoundReport:
    """Sharper lower-bound construction for the Gaussian measure.

    Balancing the cap-cover and annulus estimates suggests the radius
    R = e^(-cos(b0)^2 / 2) sqrt((n-1)/(2 pi)) (an approximate balance, not
    an exact root; the residual is recorded).  The certified bound is

        log T >= -log n + n log alpha,

    with alpha the Gaussian growth base; each displayed estimate of the
    derivation lands in ``terms``.
    """
    if not 0.0 < lam < LAMBDA_MAX:
        raise ValueError(f"lam must lie in (0, sqrt(2)-1), got {lam!r}")
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if n < 2:
        raise ValueError("needs n >= 2")
    beta0 = contact_angle(lam)
    s = math.sin(beta0)
    c = math.cos(beta0) ** 2
    e_c = math.exp(-c)
    R_n = gaussian_mode_radius(n)
    R = math.exp(-0.5 * c) * R_n
    r = lam * R
    lsa = log_sphere_area(n)
    log_K_half_n = 0.5 * n * (math.log(n - 1.0) - math.log(2.0 * math.pi)) if n > 1 else LOG_ZERO

    log_alpha = gaussian_growth_base_log(p, lam)
    log_t_lower = -math.log(n) + n * log_alpha

    terms = {
        "bound_cap_cover": lsa - math.pi * R * R * s * s + n * math.log(R * s),
        "bound_outside": (lsa + n * math.log(s)
                          - math.log(math.sqrt(math.pi) * s * math.cos(beta0))
                          + math.log(R + r) - math.pi * R_n * R_n
                          + (n - 1.0) * (math.log(R_n) if R_n > 0 else LOG_ZERO)),
        "bound_offcenter_total": (lsa + math.log(2.0)
                                  - 0.5 * n * (s * s * e_c + c) + log_K_half_n
                                  + n * math.log(s)),
        "bound_ball_R": 0.5 + lsa - math.log(n) - 0.5 * n * (e_c + c) + log_K_half_n,
        "ratio_lower_log": -math.log(n) + math.pi * R * R * (1.0 - lam * lam)
                           + n * math.log(lam),
        # 1 - (s^2 e^-c + c) factors as (1-c)(1-e^-c); the product form
        # stays positive down to c ~ 1e-18 where the difference underflows
        "dominance_margin": (1.0 - c) * -math.expm1(-c),
        "transcendental_residual": (n * math.log(R) - math.pi * R * R * s * s
                                    - ((n - 1.0) * math.log(R_n) - math.pi * R_n * R_n)),
        "growth_base_log": log_alpha,
        "decay_upper_bound": gaussian_upper_bound(n, p, R, r),
    }
    exact = None
    if with_exact is None:
        with_exact = n <= T_EXACT_MAX_N
    if with_exact:
        f = Gaussian()
        lb_R = log_ball_measure(f, n, R, rel_tol=rel_tol)
        lb_r = log_ball_measure(f, n, r, rel_tol=rel_tol)
        lb_off = off_center_ball_measure(f, n, R, R + r, rel_tol=rel_tol)
        exact = lb_R - lb_off + (p - 1.0) / p * (lb_r - lb_R)
        terms.update({
            "log_mu_ball_R": lb_R,
            "log_mu_ball_r": lb_r,
            "log_mu_offcenter": lb_off,
        })
    return BoundReport(n=n, p=p, lam=lam, beta0=beta0, R=R, r=r,
                       alpha=math.exp(log_alpha), log_t_lower=log_t_lower,
                       log_t_exact=exact, terms=terms)


def gaussian_upper_bound(n: int, p: float, R: float, r: float) -> float:
    """Closed-form decay bound on log T for the Gaussian below the mode radius.

    sqrt(pi) n sin(b0) e^((lam^2-1)/2 (p-1)/p)
      * ((e^((1-lam^2)/2) lam)^((p-1)/p) / sin b0)^n,
    valid for 0 < r < R <= sqrt((n-1)/(2 pi)).
    """
    if not 0.0 < r < R:
        raise ValueError("need 0 < r < R")
    if R > gaussian_mode_radius(n) * (1.0 + 1e-12):
        raise ValueError("the decay bound only covers R <= sqrt((n-1)/(2 pi))")
    lam = r / R
    beta0 = contact_angle(lam)
    s = math.sin(beta0)
    q = (p - 1.0) / p
    return (0.5 * math.log(math.pi) + math.log(n) + math.log(s)
            + 0.5 * (lam * lam - 1.0) * q
            + n * (q * (0.5 * (1.0 - lam * lam) + math.log(lam)) - math.log(s)))


def unitball_sandwich(n: int, p: float, R: float, lam: float):
    """Two-sided bracket for log T against Lebesgue measure on the unit ball.

    n log(R lam^((p-1)/p) / sin b0)  <=  log T  <=  log(sqrt(pi) n) + same,
    with b0 the contact angle against the unit sphere; needs
    0 < R <= 1 and R < sqrt(2)/(1 + lam).
    """
    if p < 1.0:
        raise ValueError("p must be >= 1")
    if not 0.0 < R <= 1.0:
        raise ValueError("R must lie in (0, 1]")
    if R >= math.sqrt(2.0) / (1.0 + lam):
        raise ValueError("sandwich needs R < sqrt(2)/(1+lam)")
    beta0 = contact_angle_unit_ball(R, lam)
    base = math.log(R) + (p - 1.0) / p * math.log(lam) - math.log(math.sin(beta0))
    lo = n * base
    return lo, math.log(math.sqrt(math.pi) * n) + lo


def unitball_case_analysis(n: int, p: float, R: float, lam: float):
    """Classify (R, lam) into the decay proof's case and return its T bound.

    Case 1: R = 1, lam < sqrt(2)-1          sqrt(pi) n alpha^n
    Case 2: sin b0 < R < sqrt(2)/(1+lam)    sqrt(pi) n alpha^n (monotone in R)
    Case 3: R <= sin b0 (and R below the threshold)
                                            sqrt(pi) n lam^(n(p-1)/p)
    Case 4: R >= sqrt(2)/(1+lam)            2 lam^(n(p-1)/p), from the
                                            half-ball volume floor on B~
    """
    r = lam * R
    if not 0.0 < r < R <= 1.0:
        raise ValueError("need 0 < r < R <= 1")
    if p < 1.0:
        raise ValueError("p must be >= 1")
    q = (p - 1.0) / p
    threshold = math.sqrt(2.0) / (1.0 + lam)
    if R >= threshold:
        return 4, math.log(2.0) + n * q * math.log(lam)
    log_alpha_1 = q * math.log(lam) - math.log(math.sin(contact_angle(lam)))
    if R == 1.0:
        return 1, math.log(math.sqrt(math.pi) * n) + n * log_alpha_1
    beta0 = contact_angle_unit_ball(R, lam)
    if R <= math.sin(beta0):
        return 3, math.log(math.sqrt(math.pi) * n) + n * q * math.log(lam)
    return 2, math.log(math.sqrt(math.pi) * n) + n * log_alpha_1


def unitball_construction(n: int, p: float, R: float, lam: float, *,
                          with_exact: bool | None = None,
                          rel_tol: float = DEFAULT_REL_TOL) -> BoundReport:
    """BoundReport for the unit-ball measure at explicit (R, lam)."""
    lo, hi = unitball_sandwich(n, p, R, lam)
    beta0 = contact_angle_unit_ball(R, lam)
    r = lam * R
    log_alpha = (math.log(R) + (p - 1.0) / p * math.log(lam)
                 - math.log(math.sin(beta0)))
    case_id, case_upper = unitball_case_analysis(n, p, R, lam)
    terms = {
        "sandwich_lower": lo,
        "sandwich_upper": hi,
        "case_id": float(case_id),
        "case_upper_bound": case_upper,
    }
    exact = None
    if with_exact is None:
        with_exact = n <= T_EXACT_MAX_N
    if with_exact:
        f = UnitBallIndicator()
        lb_R = log_ball_measure(f, n, R, rel_tol=rel_tol)
        lb_r = log_ball_measure(f, n, r, rel_tol=rel_tol)
        lb_off = off_center_ball_measure(f, n, R, R + r, rel_tol=rel_tol)
        exact = lb_R - lb_off + (p - 1.0) / p * (lb_r - lb_R)
        terms.update({
            "log_mu_ball_R": lb_R,
            "log_mu_ball_r": lb_r,
            "log_mu_offcenter": lb_off,
            "small_ratio_log": lb_r - lb_R,
        })
    return BoundReport(n=n, p=p, lam=lam, beta0=beta0, R=R, r=r,
                       alpha=math.exp(log_alpha), log_t_lower=lo,
                       log_t_exact=exact, terms=terms)
