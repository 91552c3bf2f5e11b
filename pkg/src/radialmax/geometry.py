"""Off-center balls, spherical caps, cones, and contact angles in log space.

Rotation invariance reduces every ball B(x, t) to the pair (d, t) with
d = |x|.  The sphere of radius s meets B(d xi, t) in a polar cap whose
angle comes from the law of cosines, so every off-center measure is a 1-D
radial integral

    mu(B(d xi, t)) = omega_{n-2} * int f(s) s^(n-1) J_n(theta(s)) ds,
    J_n(theta) = int_0^theta sin(beta)^(n-2) dbeta,

plus a fully-contained core when t > d.  ``cap_log_area`` runs J_n through
the adaptive quadrature (the accuracy reference); the vectorized evaluator
``_cap_j_log`` used inside integrands reduces J_n to a fixed composite
Gauss-Legendre rule on the sub-interval where the integrand is within 60
log-units of its maximum, which the arcsin substitution locates exactly.

Pure functions throughout; the Gauss-Legendre node cache is immutable.
"""

from __future__ import annotations

import math

import numpy as np

from .densities import RadialDensity
from .logspace import LOG_ZERO, log_sub, log_sum
from .measures import log_ball_measure, log_sphere_area, radial_log_integrand
from .quadrature import DEFAULT_REL_TOL, gauss_legendre_nodes, log_integral

FULL_ANGLE = math.pi   # sphere entirely inside the ball
EMPTY_ANGLE = 0.0      # sphere misses the ball

_ARCCOS_SLACK = 1e-12
_CAP_WINDOW = 60.0
_CAP_PANELS = 10
_CAP_ORDER = 16


def arccos_clamped(x: float, slack: float = _ARCCOS_SLACK) -> float:
    """arccos with tolerance for rounding just past +-1; beyond is an error."""
    if abs(x) > 1.0 + slack:
        raise ValueError(f"arccos argument {x!r} outside [-1, 1] beyond rounding slack")
    return math.acos(min(1.0, max(-1.0, x)))


def intersection_angle(d: float, t: float, s: float) -> float:
    """Polar angle of the cap where the sphere |y| = s meets B(d xi, t).

    Returns FULL_ANGLE (= pi) when the sphere lies inside the ball
    (s <= t - d) and EMPTY_ANGLE (= 0) when it misses it (s >= t + d);
    in between, cos(theta) = (d^2 + s^2 - t^2) / (2 d s).
    """
    if t <= 0:
        raise ValueError("ball radius t must be positive")
    if d < 0 or s < 0:
        raise ValueError("d and s must be nonnegative")
    if d == 0.0 or s == 0.0:
        return FULL_ANGLE if s < t else EMPTY_ANGLE
    if s <= t - d:
        return FULL_ANGLE
    if s >= t + d:
        return EMPTY_ANGLE
    return arccos_clamped((d * d + s * s - t * t) / (2.0 * d * s))


def contact_angle(lam: float) -> float:
    """Angle at the origin cut by B(R xi, R + r) on the sphere |y| = R, lam = r/R.

    Law of cosines on (origin, R xi, contact point): cos = 1 - (1+lam)^2/2.
    Positive cosine needs lam < sqrt(2) - 1.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must be in (0, 1)")
    return arccos_clamped(1.0 - (1.0 + lam) ** 2 / 2.0)


def contact_angle_unit_ball(R: float, lam: float) -> float:
    """Contact angle against the unit sphere: cos = 1 - R^2 (1+lam)^2 / 2.

    Implemented exactly as this closed form.  A direct law-of-cosines
    derivation for the triangle (origin, R xi, boundary contact point)
    gives (R^2 + 1 - R^2(1+lam)^2)/(2R), which differs for R < 1; the two
    agree at R = 1, the only radius used for reproducing the reference
    exponents, so the closed form is kept verbatim.
    """
    if not 0.0 < R <= 1.0:
        raise ValueError("R must be in (0, 1]")
    if lam <= 0.0:
        raise ValueError("lam must be positive")
    return arccos_clamped(1.0 - R * R * (1.0 + lam) ** 2 / 2.0)


def _cap_j_log_half(m: int, theta):
    """log J_m on [0, pi/2]: J_m(theta) = int_0^theta sin^m, m >= 1, vectorized."""
    th = np.asarray(theta, dtype=float)
    sin_th = np.sin(th)
    with np.errstate(divide="ignore"):
        log_sin_th = np.where(sin_th > 0.0, np.log(np.maximum(sin_th, 1e-300)), LOG_ZERO)
    # integrand spans exactly _CAP_WINDOW log-units over [b_lo, theta]
    b_lo = np.arcsin(sin_th * math.exp(-_CAP_WINDOW / m))
    x, w = gauss_legendre_nodes(_CAP_ORDER)
    edges = b_lo[..., None] + (th - b_lo)[..., None] * np.linspace(0.0, 1.0, _CAP_PANELS + 1)
    half_width = 0.5 * (edges[..., 1:] - edges[..., :-1])
    centers = 0.5 * (edges[..., 1:] + edges[..., :-1])
    nodes = centers[..., None] + half_width[..., None] * x
    with np.errstate(divide="ignore", invalid="ignore"):
        shifted = m * (np.log(np.maximum(np.sin(nodes), 1e-300)) - log_sin_th[..., None, None])
    # sin is increasing on [0, pi/2], so the shifted exponent is <= 0; the
    # clip only removes inf arising from degenerate theta = 0 rows
    panel = (np.exp(np.minimum(shifted, 0.0)) * w).sum(axis=-1) * half_width
    total = panel.sum(axis=-1)
    with np.errstate(divide="ignore"):
        out = np.where(total > 0.0, m * log_sin_th + np.log(np.maximum(total, 1e-300)),
                       LOG_ZERO)
    return out


def _cap_j_log(n: int, theta):
    """log J_{n-2}(theta) on [0, pi], vectorized; complement rule past pi/2."""
    if n < 2:
        raise ValueError("caps need dimension n >= 2")
    th = np.asarray(theta, dtype=float)
    scalar = th.ndim == 0
    th = np.atleast_1d(np.clip(th, 0.0, math.pi))
    m = n - 2
    if m == 0:
        with np.errstate(divide="ignore"):
            out = np.where(th > 0.0, np.log(np.maximum(th, 1e-300)), LOG_ZERO)
        return float(out[0]) if scalar else out
    out = _cap_j_log_half(m, np.minimum(th, 0.5 * math.pi))
    over = th > 0.5 * math.pi
    if np.any(over):
        j_half = float(_cap_j_log_half(m, np.asarray(0.5 * math.pi)))
        comp = _cap_j_log_half(m, math.pi - th[over])
        # J(theta) = 2 J(pi/2) - J(pi - theta); operands stay within 2x, no cancellation
        vals = np.array([log_sub(math.log(2.0) + j_half, min(c, math.log(2.0) + j_half))
                         for c in np.atleast_1d(comp)])
        out = out.copy()
        out[over] = vals
    return float(out[0]) if scalar else out


def cap_log_area(n: int, theta: float, *, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log surface measure of the cap of angular radius theta on S^(n-1).

    omega_{n-2} * int_0^theta sin^(n-2), by adaptive log-domain quadrature;
    this is the ground-truth route against which the fast evaluator and
    every closed form are tested.
    """
    if n < 2:
        raise ValueError("caps need dimension n >= 2")
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise ValueError("theta must lie in [0, pi]")
    theta = min(theta, math.pi)
    if theta == 0.0:
        return LOG_ZERO
    if n == 2:
        return math.log(theta) + log_sphere_area(1)
    m = n - 2

    def phi(beta):
        beta = np.asarray(beta, dtype=float)
        sin_b = np.sin(np.clip(beta, 0.0, math.pi))
        with np.errstate(divide="ignore"):
            return np.where(sin_b > 0.0, m * np.log(np.maximum(sin_b, 1e-300)), LOG_ZERO)

    hint = min(theta, 0.5 * math.pi)
    res = log_integral(phi, 0.0, theta, rel_tol=rel_tol, probe_points=[hint])
    return float(log_sphere_area(n - 1) + res.log_value)


def cap_fraction_log(n: int, theta: float, *, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log of the share of the unit sphere's surface within angle theta of a pole."""
    if theta == 0.0:
        return LOG_ZERO
    return cap_log_area(n, theta, rel_tol=rel_tol) - log_sphere_area(n)


def _off_center_1d(f: RadialDensity, d: float, t: float, rho: float) -> float:
    """mu(B(d, t) ∩ B_rho) on the line: an interval integral of f(|x|)."""
    S = f.support_upper_bound
    x0 = max(d - t, -rho, -S)
    x1 = min(d + t, rho, S)
    if x1 <= x0:
        return LOG_ZERO
    pieces = []
    phi = lambda s: np.asarray(f.log_density(s), dtype=float)
    hints = list(f.probe_points())
    if x1 > max(x0, 0.0):
        a, b = max(x0, 0.0), x1
        res = log_integral(phi, a, b, probe_points=[h for h in hints if a <= h <= b])
        pieces.append(res.log_value)
    if x0 < min(x1, 0.0):
        a, b = -min(x1, 0.0), -x0
        res = log_integral(phi, a, b, probe_points=[h for h in hints if a <= h <= b])
        pieces.append(res.log_value)
    return log_sum(pieces)


def _log_off_center(f: RadialDensity, n: int, d: float, t: float, rho: float, *,
                    rel_tol: float = DEFAULT_REL_TOL) -> float:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if d < 0 or t <= 0:
        raise ValueError("need d >= 0 and t > 0")
    if not rho > 0:
        raise ValueError("rho must be positive")
    if n == 1:
        return _off_center_1d(f, d, t, rho)
    if d == 0.0:
        return log_ball_measure(f, n, min(t, rho), rel_tol=rel_tol)
    S = f.support_upper_bound
    hi = min(d + t, rho, S)
    full_hi = min(max(t - d, 0.0), rho, S)
    pieces = []
    if full_hi > 0.0:
        pieces.append(log_ball_measure(f, n, full_hi, rel_tol=rel_tol))
    lo = max(abs(t - d), full_hi)
    if hi > lo:
        phi_radial = radial_log_integrand(f, n)

        def phi(s):
            s = np.asarray(s, dtype=float)
            theta = np.arccos(np.clip((d * d + s * s - t * t)
                                      / np.maximum(2.0 * d * s, 1e-300), -1.0, 1.0))
            return phi_radial(s) + _cap_j_log(n, theta)

        hints = [h for h in f.probe_points() if lo < h < hi]
        peak = f.peak_radius(n)
        if peak is not None and lo < peak < hi:
            hints.append(peak)
        if d > t:
            widest = math.sqrt(d * d - t * t)  # theta(s) is maximal here
            if lo < widest < hi:
                hints.append(widest)
        res = log_integral(phi, lo, hi, rel_tol=rel_tol, probe_points=hints)
        pieces.append(log_sphere_area(n - 1) + res.log_value)
    return log_sum(pieces)


def off_center_ball_measure(f: RadialDensity, n: int, d: float, t: float, *,
                            rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log mu(B(d xi, t)); reduces to the centered ball when d = 0."""
    return _log_off_center(f, n, d, t, math.inf, rel_tol=rel_tol)


def intersect_with_centered_ball(f: RadialDensity, n: int, d: float, t: float,
                                 rho: float, *, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log mu(B(d xi, t) ∩ B_rho): the off-center integral with outer limit rho."""
    return _log_off_center(f, n, d, t, rho, rel_tol=rel_tol)


def cone_ball_measure(f: RadialDensity, n: int, theta: float, R: float, *,
                      rel_tol: float = DEFAULT_REL_TOL) -> float:
    """log mu(E_theta ∩ B_R) for the cone of half-angle theta about xi.

    The angular section is s-independent, so the measure factors into the
    centered ball times the cap fraction.
    """
    if n < 2:
        raise ValueError("cones need dimension n >= 2")
    if R <= 0:
        raise ValueError("R must be positive")
    return (log_ball_measure(f, n, R, rel_tol=rel_tol)
            + cap_fraction_log(n, theta, rel_tol=rel_tol))
