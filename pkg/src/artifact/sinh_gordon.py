"""Radial sinh-Gordon equation u'' + u'/r = sinh(u), with continuation through blow-ups.

Near a blow-up radius r_k a real solution behaves like -2 log|r - r_k| + c (or its
negative).  Going around r_k on a small half circle in the complex r-plane shifts u by
+-2 pi i; since sinh has period 2 pi i the real part on the far side solves the same
equation, so integration continues with that real part and the shift is written to a
branch ledger.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import least_squares

from .special import bessel_k0, bessel_k0_prime

__all__ = [
    "SolverConfig",
    "Singularity",
    "SinhGordonSolution",
    "SolverError",
    "bessel_k0",
    "integrate",
    "metric",
    "singularity_spacing",
    "smooth_window",
]

FIT_STEPS = 50
FIT_RESIDUAL_MAX = 1e-2


class SolverError(RuntimeError):
    """Integration failure; the message carries the last radius reached."""


@dataclass(frozen=True)
class SolverConfig:
    """Integration controls.

    ``direction="inward"`` seeds u = a K0(r), u' = a K0'(r) at r_max and integrates down to
    r_min.  ``direction="outward"`` starts from the solution regular at the origin with
    u(0) = a, seeded by its Taylor expansion at r_min, and integrates up to r_max.
    ``abs_tol`` is scaled by the seed size when that is below one, since the inward seed
    a K0(r_max) is tiny and an unscaled floor would swamp it.
    """

    r_max: float = 20.0
    r_min: float = 1e-3
    rel_tol: float = 1e-11
    abs_tol: float = 1e-12
    blowup_threshold: float = 30.0
    direction: str = "inward"
    max_singularities: int = 64

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ValueError("need 0 < r_min < r_max")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.blowup_threshold <= 8:
            raise ValueError("blowup_threshold must exceed 8")
        if self.direction not in ("inward", "outward"):
            raise ValueError("direction must be 'inward' or 'outward'")


@dataclass(frozen=True)
class Singularity:
    r: float
    sign: int  # +1 when u -> +inf at r_k, -1 when u -> -inf
    fit_r: float
    fit_c: float
    fit_residual: float
    detour_radius: float
    branch_shift: int  # Im(u) / 2 pi picked up by the detour


@dataclass
class SinhGordonSolution:
    amplitude: float
    config: SolverConfig
    grid: np.ndarray
    u: np.ndarray
    du: np.ndarray
    singularities: list[Singularity]
    status: str  # smooth | singular | budget-exceeded
    branch: list[int] = field(default_factory=list)  # cumulative 2 pi i offset per segment
    segments: list = field(default_factory=list, repr=False)

    def summary(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "direction": self.config.direction,
            "status": self.status,
            "singularities": [
                {"r": s.r, "sign": s.sign, "fit_r": s.fit_r, "fit_residual": s.fit_residual,
                 "branch_shift": s.branch_shift}
                for s in self.singularities
            ],
            "branch": list(self.branch),
            "points": int(len(self.grid)),
        }


def _rhs(r, y):
    return [y[1], math.sinh(y[0]) - y[1] / r]


def _complex_rhs(center: float, radius: float, sgn: float):
    """System in the parameter t of r(t) = center - sgn * radius * exp(-i t), t in [0, pi]."""

    def f(t, y):
        e = np.exp(-1j * t)
        r = center - sgn * radius * e
        dr = sgn * 1j * radius * e
        return np.array([y[1] * dr, (np.sinh(y[0]) - y[1] / r) * dr])

    return f


def _blowup_event(threshold: float):
    def event(r, y):
        return abs(y[0]) - threshold

    event.terminal = True
    return event


def _fit_log_model(r: np.ndarray, u: np.ndarray, sign: int, guess: float) -> tuple[float, float, float]:
    """Least-squares fit of u = sign (-2 log|r - r_k| + c + b (r - r_k)); returns (r_k, c, rms residual).

    The linear term is the first correction of the local expansion; without it the fit is
    dominated by the earliest of the steps whenever r_k is small.
    """
    span = abs(r[-1] - r[0])
    beyond = np.sign(guess - r[-1]) or 1.0

    def resid(p):
        x = r - p[0]
        return sign * u - (-2.0 * np.log(np.maximum(np.abs(x), 1e-300)) + p[1] + p[2] * x)

    c0 = float(np.mean(sign * u + 2.0 * np.log(np.abs(r - guess))))
    lo, hi = sorted((r[-1] + beyond * 1e-15, r[-1] + beyond * (span + 1.0)))
    sol = least_squares(resid, [guess, c0, 0.0], bounds=([lo, -np.inf, -np.inf], [hi, np.inf, np.inf]),
                        x_scale=[span or 1.0, 1.0, 1.0 / (span or 1.0)])
    rms = float(np.sqrt(np.mean(sol.fun**2)))
    return float(sol.x[0]), float(sol.x[1]), rms


def _seed(a: float, cfg: SolverConfig) -> tuple[float, float, list[float]]:
    if cfg.direction == "inward":
        r0, r_end = cfg.r_max, cfg.r_min
        return r0, r_end, [a * bessel_k0(r0), a * bessel_k0_prime(r0)]
    r0, r_end = cfg.r_min, cfg.r_max
    s = math.sinh(a)
    # u = a + sinh(a) r^2 / 4 + sinh(a) cosh(a) r^4 / 64 + ...
    u0 = a + s * r0**2 / 4 + s * math.cosh(a) * r0**4 / 64
    du0 = s * r0 / 2 + s * math.cosh(a) * r0**3 / 16
    return r0, r_end, [u0, du0]


def integrate(a: float, config: SolverConfig | None = None, *, stop_at_first: bool = False) -> SinhGordonSolution:
    """Integrate from the seed, recording and continuing through every blow-up."""
    cfg = config or SolverConfig()
    a = float(a)
    r0, r_end, y0 = _seed(a, cfg)
    sgn = 1.0 if r_end > r0 else -1.0
    if a == 0.0:
        grid = np.array([r0, r_end])
        return SinhGordonSolution(a, cfg, grid, np.zeros(2), np.zeros(2), [], "smooth", [0])
    event = _blowup_event(cfg.blowup_threshold)
    atol = cfg.abs_tol * min(1.0, max(abs(y0[0]), abs(y0[1])))
    grids, us, dus, sings, segments, branch = [], [], [], [], [], [0]
    status = "smooth"
    while (r_end - r0) * sgn > 0:
        sol = solve_ivp(_rhs, (r0, r_end), y0, method="DOP853", rtol=cfg.rel_tol, atol=atol,
                        events=event, dense_output=True)
        if sol.status == -1:
            raise SolverError(f"{sol.message} (last radius {sol.t[-1]!r})")
        grids.append(sol.t)
        us.append(sol.y[0])
        dus.append(sol.y[1])
        segments.append(sol.sol)
        if sol.status == 0:
            break
        status = "singular"
        if stop_at_first:
            break
        if len(sings) >= cfg.max_singularities:
            status = "budget-exceeded"
            break
        sing, y0, r0 = _cross(sol, sgn, cfg)
        sings.append(sing)
        branch.append(branch[-1] + sing.branch_shift)
        if (r_end - r0) * sgn <= 0:
            break
    grid = np.concatenate(grids)
    return SinhGordonSolution(a, cfg, grid, np.concatenate(us), np.concatenate(dus), sings, status, branch, segments)


def _cross(sol, sgn: float, cfg: SolverConfig):
    t, u = sol.t, sol.y[0]
    sign = 1 if u[-1] > 0 else -1
    # e^{-|u|/2} ~ |r - r_k| / 2 at the stopping point; the correction is O(|r - r_k|)
    rk = float(t[-1] + sgn * 2.0 * math.exp(-abs(u[-1]) / 2.0))
    k = min(FIT_STEPS, len(t))
    fit_r, fit_c, rms = _fit_log_model(t[-k:], u[-k:], sign, rk)
    if rms >= FIT_RESIDUAL_MAX:
        raise SolverError(f"blow-up near r={rk!r} does not match the logarithmic model (residual {rms:.3g})")
    radius = min(0.5 * abs(rk - t[0]), 0.5 * rk)
    calm = np.nonzero(np.abs(u) < 8.0)[0]
    if calm.size:
        radius = min(radius, abs(rk - t[calm[-1]]))
    for _ in range(40):
        start = sol.sol(rk - sgn * radius).astype(complex)
        arc = solve_ivp(_complex_rhs(rk, radius, sgn), (0.0, math.pi), start, method="DOP853",
                        rtol=cfg.rel_tol, atol=cfg.abs_tol)
        if arc.success:
            im = arc.y[0, -1].imag
            shift = round(im / (2 * math.pi))
            if shift in (-1, 1) and abs(im - 2 * math.pi * shift) < 1e-6:
                break
        radius /= 2.0
    else:
        raise SolverError(f"could not continue around the blow-up at r={rk!r}")
    y_new = arc.y[:, -1].real.copy()
    sing = Singularity(rk, sign, fit_r, fit_c, rms, radius, int(shift))
    return sing, y_new, rk + sgn * radius


def metric(u_value: float) -> np.ndarray:
    """[[cosh(u/2), -i sinh(u/2)], [i sinh(u/2), cosh(u/2)]]."""
    c, s = math.cosh(u_value / 2.0), math.sinh(u_value / 2.0)
    return np.array([[c, -1j * s], [1j * s, c]])


def ode_residual(solution: SinhGordonSolution, samples: int = 400) -> float:
    """Scaled sup norm of u'' + u'/r - sinh(u) on the dense output, away from blow-ups (|u| < 8)."""
    worst = 0.0
    for seg in solution.segments:
        lo, hi = sorted((seg.t_min, seg.t_max))
        rs = np.geomspace(lo, hi, samples + 2)[1:-1]
        h = 1e-4 * np.minimum(rs, np.minimum(rs - lo, hi - rs))
        y = seg(rs)
        ypp = (np.array([seg(x)[1] for x in rs + h]) - np.array([seg(x)[1] for x in rs - h])) / (2 * h)
        ok = np.abs(y[0]) < 8.0
        if not np.any(ok):
            continue
        res = ypp + y[1] / rs - np.sinh(y[0])
        scale = 1.0 + np.abs(np.sinh(y[0])) + np.abs(y[1] / rs)
        worst = max(worst, float(np.max(np.abs(res[ok]) / scale[ok])))
    return worst


@dataclass(frozen=True)
class SpacingReport:
    radii: tuple[float, ...]  # ascending
    gaps: tuple[float, ...]  # consecutive differences of the ascending radii
    slope: float
    log_coefficient: float
    intercept: float

    def deepest_gaps(self, count: int = 5) -> tuple[float, ...]:
        """Gaps among the `count` largest recorded radii."""
        return self.gaps[-(count - 1):] if count > 1 else ()


def singularity_spacing(solution: SinhGordonSolution) -> SpacingReport:
    """Gaps between blow-up radii and a fit r_k = slope (k - 1/2) + c log k + b."""
    radii = sorted(s.r for s in solution.singularities)
    if len(radii) < 4:
        raise ValueError("too few singularities")
    k = np.arange(1, len(radii) + 1, dtype=float)
    design = np.column_stack([k - 0.5, np.log(k), np.ones_like(k)])
    coef, *_ = np.linalg.lstsq(design, np.array(radii), rcond=None)
    return SpacingReport(tuple(radii), tuple(np.diff(radii).tolist()), float(coef[0]), float(coef[1]), float(coef[2]))


@dataclass(frozen=True)
class WindowResult:
    threshold: float
    bracket: tuple[float, float]
    evaluations: tuple[tuple[float, bool], ...]  # (amplitude, smooth)
    monotone: bool


def smooth_window(bracket: tuple[float, float], config: SolverConfig | None = None,
                  resolution: float = 1e-4, prescan: int = 8) -> WindowResult:
    """Bisect the amplitude between a smooth and a singular run."""
    cfg = config or SolverConfig()
    lo, hi = map(float, bracket)
    cache: dict[float, bool] = {}

    def smooth(a: float) -> bool:
        if a not in cache:
            cache[a] = integrate(a, cfg, stop_at_first=True).status == "smooth"
        return cache[a]

    s_lo, s_hi = smooth(lo), smooth(hi)
    if s_lo == s_hi:
        raise ValueError(f"bracket does not straddle the boundary: both {'smooth' if s_lo else 'singular'}")
    grid = np.linspace(lo, hi, prescan + 2)
    pattern = [smooth(float(a)) for a in grid]
    # a monotone family flips exactly once along the bracket
    flips = sum(1 for x, y in zip(pattern, pattern[1:]) if x != y)
    a, b = (lo, hi) if s_lo else (hi, lo)
    for x, y in zip(grid, grid[1:]):
        if smooth(float(x)) != smooth(float(y)):
            a, b = (float(x), float(y)) if smooth(float(x)) else (float(y), float(x))
            break
    while abs(b - a) > resolution:
        mid = 0.5 * (a + b)
        if smooth(mid):
            a = mid
        else:
            b = mid
    smooth_end = a
    evals = tuple(sorted(cache.items()))
    return WindowResult(smooth_end, (lo, hi), evals, flips == 1)
