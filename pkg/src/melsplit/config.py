"""Planar central configurations of the primary bodies.

A configuration holds the masses and rotating-frame positions of the
primaries, normalized so the total mass is 1 and the center of mass is at
the origin.  A configuration is *central* when the gravitational pull on
each body balances a common multiple of its position vector; with unit
angular velocity the multiplier is 1 and the residual of that balance
vanishes.

Builders cover the classical families: the two-primary problem, the
equilateral triangle, the rhombus, collinear chains (equal masses solved by
damped Newton, equidistant spacing solved by a linear system), and regular
polygons on the unit circle.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Union

import numpy as np

MASS_SUM_TOL = 1e-12
CENTER_OF_MASS_TOL = 1e-10
MIN_SEPARATION = 1e-9


class ConfigError(ValueError):
    """Invalid configuration input or builder parameters."""


class DegenerateConfigurationError(ConfigError):
    """Two bodies closer than the minimum allowed separation."""


class NotCentralError(ConfigError):
    """Configuration is not central at any scale multiplier."""


class NewtonConvergenceError(RuntimeError):
    """Damped Newton iteration did not reach the residual tolerance."""


@dataclass(frozen=True)
class PrimaryBody:
    """One primary: positive mass and finite planar position."""

    mass: float
    position: tuple[float, float]

    def __post_init__(self):
        if not (self.mass > 0.0) or not math.isfinite(self.mass):
            raise ConfigError(f"mass must be positive and finite, got {self.mass}")
        if len(self.position) != 2 or not all(math.isfinite(c) for c in self.position):
            raise ConfigError(f"position must be a finite 2-vector, got {self.position}")
        object.__setattr__(self, "position", (float(self.position[0]), float(self.position[1])))
        object.__setattr__(self, "mass", float(self.mass))


@dataclass(frozen=True)
class CentralConfiguration:
    """Ordered primaries with unit total mass and barycenter at the origin."""

    bodies: tuple[PrimaryBody, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bodies", tuple(self.bodies))
        n = len(self.bodies)
        if n < 2:
            raise ConfigError("need at least two primaries")
        total = math.fsum(b.mass for b in self.bodies)
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise ConfigError(f"masses must sum to 1, got {total!r}")
        cx = math.fsum(b.mass * b.position[0] for b in self.bodies)
        cy = math.fsum(b.mass * b.position[1] for b in self.bodies)
        if math.hypot(cx, cy) > CENTER_OF_MASS_TOL:
            raise ConfigError(f"center of mass must be at the origin, got ({cx!r}, {cy!r})")
        for i in range(n):
            for j in range(i + 1, n):
                d = math.dist(self.bodies[i].position, self.bodies[j].position)
                if d <= MIN_SEPARATION:
                    raise DegenerateConfigurationError(
                        f"bodies {i} and {j} are separated by {d!r}"
                    )

    @property
    def n_bodies(self) -> int:
        return len(self.bodies)

    def masses(self) -> np.ndarray:
        return np.array([b.mass for b in self.bodies])

    def positions(self) -> np.ndarray:
        return np.array([b.position for b in self.bodies])


@dataclass(frozen=True)
class CentralityReport:
    """Residuals of the force-balance equations, one 2-vector per body."""

    residuals: tuple[tuple[float, float], ...]
    max_norm: float
    lam: Optional[float] = None


def _gravity(masses: np.ndarray, pos: np.ndarray) -> np.ndarray:
    """Sum over j != k of m_j (a_j - a_k)/|a_j - a_k|^3, one row per body."""
    n = len(masses)
    out = np.zeros((n, 2))
    for k in range(n):
        d = pos - pos[k]
        r = np.hypot(d[:, 0], d[:, 1])
        r[k] = 1.0
        if np.any(r[np.arange(n) != k] <= MIN_SEPARATION):
            raise DegenerateConfigurationError("coincident bodies in gravity sum")
        w = masses / r**3
        w[k] = 0.0
        out[k] = d.T @ w
    return out


def cc_residual(config: CentralConfiguration, fit_lambda: bool = False) -> CentralityReport:
    """Residual a_k + sum_{j!=k} m_j (a_j - a_k)/|a_j - a_k|^3 per body.

    With ``fit_lambda`` the report also carries the least-squares scale
    multiplier from :func:`lambda_of` (without raising when the fit is poor).
    """
    m, pos = config.masses(), config.positions()
    res = pos + _gravity(m, pos)
    max_norm = float(np.max(np.hypot(res[:, 0], res[:, 1])))
    lam = None
    if fit_lambda:
        lam, _ = _lambda_fit(config)
    return CentralityReport(
        residuals=tuple((float(x), float(y)) for x, y in res),
        max_norm=max_norm,
        lam=lam,
    )


def _lambda_fit(config: CentralConfiguration) -> tuple[float, float]:
    # a body at the origin is fine: it contributes nothing to the normal
    # equations and its own balance residual is position-free
    m, pos = config.masses(), config.positions()
    g = _gravity(m, pos)
    denom = float(np.sum(pos * pos))
    if denom == 0.0:
        raise ConfigError("all bodies at the origin")
    lam = -float(np.sum(g * pos)) / denom
    fit = g + lam * pos
    return lam, float(np.max(np.hypot(fit[:, 0], fit[:, 1])))


def lambda_of(config: CentralConfiguration, fit_tol: float = 1e-7) -> float:
    """Least-squares multiplier lambda with g_k + lambda a_k = 0 for all k.

    lambda equals 1 exactly when the configuration rotates with unit angular
    velocity.  Scaling all positions by c scales lambda by c**-3.  Raises
    :class:`NotCentralError` when no single multiplier fits the shape.
    """
    lam, fit_residual = _lambda_fit(config)
    if fit_residual > fit_tol:
        raise NotCentralError(
            f"no common multiplier fits: residual {fit_residual:.3e} > {fit_tol:.3e}"
        )
    return lam


def scale(config: CentralConfiguration, c: float) -> CentralConfiguration:
    """Scale all positions by c (masses unchanged)."""
    if not (c > 0.0):
        raise ConfigError("scale factor must be positive")
    bodies = tuple(
        PrimaryBody(b.mass, (c * b.position[0], c * b.position[1])) for b in config.bodies
    )
    return CentralConfiguration(bodies, label=config.label)


def rotate(config: CentralConfiguration, phi: float) -> CentralConfiguration:
    """Rotate all positions by angle phi about the origin."""
    c, s = math.cos(phi), math.sin(phi)
    bodies = tuple(
        PrimaryBody(
            b.mass,
            (c * b.position[0] - s * b.position[1], s * b.position[0] + c * b.position[1]),
        )
        for b in config.bodies
    )
    return CentralConfiguration(bodies, label=config.label)


def normalize_omega(config: CentralConfiguration) -> CentralConfiguration:
    """Rescale positions by lambda**(1/3) so the multiplier becomes 1."""
    lam = lambda_of(config)
    if not lam > 0.0:
        raise NotCentralError(f"multiplier must be positive to normalize, got {lam!r}")
    return scale(config, lam ** (1.0 / 3.0))


# ---------------------------------------------------------------------------
# builders


def build_rp3bp(mu: float) -> CentralConfiguration:
    """Two primaries with masses (mu, 1 - mu) at ((1 - mu, 0), (-mu, 0))."""
    if not (0.0 < mu <= 0.5):
        raise ConfigError(f"mu must lie in (0, 1/2], got {mu!r}")
    bodies = (
        PrimaryBody(mu, (1.0 - mu, 0.0)),
        PrimaryBody(1.0 - mu, (-mu, 0.0)),
    )
    return CentralConfiguration(bodies, label=f"rp3bp(mu={mu:g})")


def build_equilateral(m1: float, m2: float) -> CentralConfiguration:
    """Three primaries on an equilateral triangle of side 1, m3 = 1 - m1 - m2."""
    if not (m1 > 0.0 and m2 > 0.0 and m1 + m2 < 1.0):
        raise ConfigError("need m1, m2 > 0 and m1 + m2 < 1")
    s3 = math.sqrt(3.0) / 2.0
    bodies = (
        PrimaryBody(m1, (0.5 * (1.0 - m1 - 2.0 * m2), s3 * (1.0 - m1))),
        PrimaryBody(m2, (0.5 * (2.0 - m1 - 2.0 * m2), -s3 * m1)),
        PrimaryBody(1.0 - m1 - m2, (-0.5 * (m1 + 2.0 * m2), -s3 * m1)),
    )
    return CentralConfiguration(bodies, label=f"equilateral(m1={m1:g}, m2={m2:g})")


def rhomboid_parameters(a: float, b: float) -> tuple[float, float, float]:
    """Half-diagonals (x, y) and mass mu of the central rhombus for legs a, b."""
    if not (0.0 < b < math.sqrt(3.0) * a < 3.0 * b):
        raise ConfigError(f"need 0 < b < sqrt(3) a < 3 b, got a={a!r}, b={b!r}")
    s = a * a + b * b
    s32 = s**1.5
    num = 64.0 * a**3 * b**3 - s**3
    den = 16.0 * a**3 * b**3 - (a**3 + b**3) * s32
    if den == 0.0 or num / den < 0.0:
        raise ConfigError("rhombus shape equations have a negative radicand")
    cbrt = (num / den) ** (1.0 / 3.0)
    x = a / (2.0 * math.sqrt(s)) * cbrt
    y = b / (2.0 * math.sqrt(s)) * cbrt
    mu = a**3 * (8.0 * b**3 - s32) / (2.0 * den)
    if not (0.0 < mu < 0.5):
        raise ConfigError(f"mass parameter {mu!r} falls outside (0, 1/2)")
    return x, y, mu


def build_rhomboid(a: float, b: float) -> CentralConfiguration:
    """Four primaries on a rhombus: (+-x, 0) with mass mu, (0, +-y) with 1/2 - mu."""
    x, y, mu = rhomboid_parameters(a, b)
    bodies = (
        PrimaryBody(mu, (-x, 0.0)),
        PrimaryBody(0.5 - mu, (0.0, y)),
        PrimaryBody(mu, (x, 0.0)),
        PrimaryBody(0.5 - mu, (0.0, -y)),
    )
    return CentralConfiguration(bodies, label=f"rhomboid(a={a:g}, b={b:g})")


def solve_collinear_equal(
    n: int, tol: float = 1e-12, max_iter: int = 200
) -> CentralConfiguration:
    """n equal masses on the axis, positions solved by damped Newton.

    Starts from equally spaced points on [-1, 1]; each step is halved until
    the residual norm decreases.
    """
    if n < 2:
        raise ConfigError(f"need n >= 2, got {n}")
    m = 1.0 / n
    a = np.linspace(-1.0, 1.0, n)

    def residual(a):
        d = a[None, :] - a[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.sign(d) / d**2
        np.fill_diagonal(f, 0.0)
        return a + m * f.sum(axis=1)

    def jacobian(a):
        d = a[None, :] - a[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            off = -2.0 * m / np.abs(d) ** 3
        np.fill_diagonal(off, 0.0)
        jac = off.copy()
        np.fill_diagonal(jac, 1.0 - off.sum(axis=1))
        return jac

    f = residual(a)
    norm = np.linalg.norm(f)
    for _ in range(max_iter):
        if norm <= tol:
            break
        step = np.linalg.solve(jacobian(a), -f)
        lam = 1.0
        for _ in range(60):
            trial = a + lam * step
            trial = 0.5 * (trial - trial[::-1])  # keep the antisymmetric shape
            if np.any(np.diff(np.sort(trial)) <= MIN_SEPARATION):
                lam *= 0.5
                continue
            f_trial = residual(trial)
            norm_trial = np.linalg.norm(f_trial)
            if norm_trial < norm:
                a, f, norm = trial, f_trial, norm_trial
                break
            lam *= 0.5
        else:
            raise NewtonConvergenceError("damping failed to reduce the residual")
    else:
        raise NewtonConvergenceError(f"no convergence after {max_iter} iterations")
    a = np.sort(a)
    bodies = tuple(PrimaryBody(m, (float(x), 0.0)) for x in a)
    return CentralConfiguration(bodies, label=f"collinear-equal-{n}")


def solve_collinear_equidistant(n: int) -> CentralConfiguration:
    """n equally spaced collinear bodies; masses and spacing from a linear solve.

    With shape s_k = k - (n+1)/2 at spacing h, the balance equations are
    linear in the masses and in rho = h**3 jointly; the mass normalization
    closes the square system and rho fixes the scale so the multiplier is 1.
    """
    if n < 3:
        raise ConfigError(f"need n >= 3, got {n}")
    s = np.arange(n, dtype=float) - (n - 1) / 2.0
    mat = np.zeros((n + 1, n + 1))
    rhs = np.zeros(n + 1)
    for k in range(n):
        d = s - s[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            row = np.sign(d) / d**2
        row[k] = 0.0
        mat[k, :n] = row
        mat[k, n] = s[k]
    mat[n, :n] = 1.0
    rhs[n] = 1.0
    # n = 3 is rank-deficient (any symmetric mass split balances the middle
    # body), so take the minimum-norm consistent solution
    sol, _, _, _ = np.linalg.lstsq(mat, rhs, rcond=None)
    if np.max(np.abs(mat @ sol - rhs)) > 1e-10:
        raise ConfigError(f"equidistant system is inconsistent for n={n}")
    masses, rho = sol[:n], sol[n]
    masses = 0.5 * (masses + masses[::-1])
    masses /= masses.sum()
    if np.any(masses <= 0.0):
        raise ConfigError(f"equidistant solve produced a non-positive mass for n={n}")
    if rho <= 0.0:
        raise ConfigError(f"equidistant solve produced a non-positive scale for n={n}")
    h = rho ** (1.0 / 3.0)
    bodies = tuple(
        PrimaryBody(float(mk), (float(h * sk), 0.0)) for mk, sk in zip(masses, s)
    )
    return CentralConfiguration(bodies, label=f"collinear-equidistant-{n}")


def build_polygon(n_total: int, normalize: bool = False) -> CentralConfiguration:
    """N - 1 equal masses at the (N - 1)-th roots of unity.

    By default the vertices sit exactly on the unit circle, which is central
    only up to a scale multiplier; ``normalize`` rescales so the multiplier
    becomes 1.
    """
    if n_total < 4:
        raise ConfigError(f"need N >= 4, got {n_total}")
    n = n_total - 1
    m = 1.0 / n
    bodies = []
    for k in range(n):
        ang = 2.0 * math.pi * k / n
        bodies.append(PrimaryBody(m, (math.cos(ang), math.sin(ang))))
    config = CentralConfiguration(tuple(bodies), label=f"polygon-{n_total}")
    if normalize:
        config = replace(normalize_omega(config), label=config.label + "-normalized")
    return config


# ---------------------------------------------------------------------------
# JSON ingestion


def configuration_to_dict(config: CentralConfiguration) -> dict:
    return {
        "label": config.label,
        "bodies": [
            {"mass": b.mass, "position": [b.position[0], b.position[1]]}
            for b in config.bodies
        ],
    }


def configuration_from_dict(data: dict) -> CentralConfiguration:
    try:
        bodies = tuple(
            PrimaryBody(float(b["mass"]), (float(b["position"][0]), float(b["position"][1])))
            for b in data["bodies"]
        )
        label = str(data.get("label", ""))
    except (KeyError, TypeError, IndexError) as exc:
        raise ConfigError(f"malformed configuration object: {exc}") from exc
    return CentralConfiguration(bodies, label=label)


def load_configuration(source: Union[str, Path, dict]) -> CentralConfiguration:
    """Read a configuration from a JSON file path or an already parsed dict."""
    if isinstance(source, dict):
        return configuration_from_dict(source)
    path = Path(source)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return configuration_from_dict(data)
