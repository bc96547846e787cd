"""Near-infinity flow: regularized coordinates, the reduced oscillator, and
flow-side verification of the splitting.

The radial variable is x with r = x**-2, the scaled radial velocity is y
with R = -sqrt(2) y, and s = t - theta is the fast angle.  On the zero set
x = y = 0 the flow reduces to the 2 pi-periodic orbit s(t) = s0 + t whose
stable and unstable sets are the parabolic manifolds.  In slow time
(d tau/dt = eps^3 x^3 / sqrt(2)) the leading dynamics is the double-well
oscillator x'' = x - Theta0^2 x^3 with the explicit separatrix

    x = sqrt(2)/|Theta0| sech(tau),   y = -sqrt(2)/|Theta0| tanh(tau) sech(tau).

This module integrates the truncated equations of motion, checks the
Jacobi-like first integral, realizes the numeric return map near x = y = 0,
and measures the manifold splitting by integrating the energy derivative
along the separatrix under the perturbed field (the flow-side counterpart
of the closed-form splitting functions).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .config import CentralConfiguration
from .harmonics import c_coeffs, d_coeffs
from .quadrature import adaptive_quadrature, solve_cubic_phase

SQRT2 = math.sqrt(2.0)

TRUNCATION_ORDERS = (3, 7, 9)


class IntegrationError(RuntimeError):
    """Adaptive integration failed (step-size underflow or solver breakdown)."""


class ConvergenceRegionError(ValueError):
    """State left the region where the perturbation series converges."""


class PoincareReturnError(RuntimeError):
    """Trajectory failed to return to the section within the allowed time."""


@dataclass(frozen=True)
class McGeheeState:
    """Phase point (x, y, s, theta) of the regularized near-infinity flow."""

    x: float
    y: float
    s: float
    theta: float

    def __post_init__(self):
        if self.x < 0.0:
            raise ValueError(f"radial variable must be nonnegative, got {self.x!r}")
        object.__setattr__(self, "s", self.s % (2.0 * math.pi))


@dataclass(frozen=True)
class PolarState:
    """Symplectic polar phase point (r, theta_angle, R, Theta)."""

    r: float
    theta_angle: float
    R: float
    Theta: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError(f"radius must be positive, got {self.r!r}")


def polar_from_mcgehee(state: McGeheeState, t: float = 0.0) -> PolarState:
    if state.x == 0.0:
        raise ValueError("the zero set x = 0 has no polar representative")
    return PolarState(
        r=state.x**-2,
        theta_angle=t - state.s,
        R=-SQRT2 * state.y,
        Theta=state.theta,
    )


def mcgehee_from_polar(state: PolarState, t: float = 0.0) -> McGeheeState:
    return McGeheeState(
        x=state.r**-0.5,
        y=-state.R / SQRT2,
        s=t - state.theta_angle,
        theta=state.Theta,
    )


@dataclass(frozen=True)
class FlowParams:
    """Perturbation strength, optional first-integral value, truncation order."""

    epsilon: float
    config: CentralConfiguration
    jacobi_C: Optional[float] = None
    truncation_order: int = 9

    def __post_init__(self):
        if not self.epsilon > 0.0:
            raise ValueError("epsilon must be positive")
        if self.truncation_order not in TRUNCATION_ORDERS:
            raise ValueError(
                f"truncation order must be one of {TRUNCATION_ORDERS}, "
                f"got {self.truncation_order}"
            )


# ---------------------------------------------------------------------------
# closed forms


def homoclinic(tau: float, theta0: float) -> tuple[float, float]:
    """Separatrix of the reduced oscillator at angular momentum theta0."""
    if theta0 == 0.0:
        raise ValueError("separatrix undefined at zero angular momentum")
    amp = SQRT2 / abs(theta0)
    sech = 1.0 / math.cosh(tau)
    return amp * sech, -amp * math.tanh(tau) * sech


def duffing_rhs(x: float, y: float, theta0: float) -> tuple[float, float]:
    """Reduced oscillator: x' = y, y' = x - theta0^2 x^3."""
    return y, x - theta0**2 * x**3


def hd_value(x: float, y: float, theta0: float) -> float:
    """Energy of the reduced oscillator: y^2/2 - x^2/2 + theta0^2 x^4/4."""
    return 0.5 * y * y - 0.5 * x * x + 0.25 * theta0**2 * x**4


def s_closed_form(tau: float, s0: float, theta0: float, epsilon: float):
    """Fast angle along the separatrix, unreduced for differentiability checks.

    Upper signs for theta0 > 0:
        s = s0 -+ 4 arctan(tanh(tau/2)) +- (theta0^3/(24 eps^3)) (9 sinh tau + sinh 3 tau)
    """
    if theta0 == 0.0:
        raise ValueError("fast angle undefined at zero angular momentum")
    sign = 1.0 if theta0 > 0.0 else -1.0
    tau = np.asarray(tau, dtype=float)
    slow = 4.0 * np.arctan(np.tanh(tau / 2.0))
    fast = (theta0**3 / (24.0 * epsilon**3)) * (9.0 * np.sinh(tau) + np.sinh(3.0 * tau))
    out = s0 - sign * slow + sign * fast
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# vector fields


def _convergence_guard(x: float, params: FlowParams) -> None:
    pos = params.config.positions()
    max_r = float(np.max(np.hypot(pos[:, 0], pos[:, 1])))
    if x > 0.0 and params.epsilon**2 * max_r * x * x >= 1.0:
        raise ConvergenceRegionError(
            f"x = {x!r} lies outside the series convergence region"
        )


def rhs_mcgehee_t(state: McGeheeState, params: FlowParams) -> tuple[float, float, float, float]:
    """Time derivative of (x, y, s, theta) at the given truncation order."""
    _convergence_guard(state.x, params)
    d = _rhs_array(
        np.array([state.x, state.y, state.s, state.theta]),
        params.epsilon,
        params.truncation_order,
        *_field_coefficients(params),
    )
    return float(d[0]), float(d[1]), float(d[2]), float(d[3])


def _field_coefficients(params: FlowParams):
    if params.truncation_order >= 7:
        c1, c2, c3 = c_coeffs(params.config)
    else:
        c1 = c2 = c3 = 0.0
    if params.truncation_order >= 9:
        d1, d2, d3, d4 = d_coeffs(params.config)
    else:
        d1 = d2 = d3 = d4 = 0.0
    return (c1, c2, c3), (d1, d2, d3, d4)


def _rhs_array(y_vec, epsilon, order, c, d):
    x, y, s, theta = y_vec
    e3 = epsilon**3
    dx = e3 * x**3 * y / SQRT2
    dy = e3 * (1.0 - theta**2 * x * x) * x**4 / SQRT2
    ds = 1.0 - e3 * theta * x**4
    dtheta = 0.0
    if order >= 7:
        c1, c2, c3 = c
        e7 = epsilon**7
        g = c1 + c2 * math.cos(2 * s) + c3 * math.sin(2 * s)
        dy += 0.75 * e7 * g * x**8 / SQRT2
        dtheta += -0.5 * e7 * (c3 * math.cos(2 * s) - c2 * math.sin(2 * s)) * x**6
    if order >= 9:
        d1, d2, d3, d4 = d
        e9 = epsilon**9
        h = (
            d1 * math.cos(s)
            + d2 * math.sin(s)
            + d3 * math.cos(3 * s)
            + d4 * math.sin(3 * s)
        )
        hp = (
            d1 * math.sin(s)
            - d2 * math.cos(s)
            + 3 * d3 * math.sin(3 * s)
            - 3 * d4 * math.cos(3 * s)
        )
        dy += 0.5 * e9 * h * x**10 / SQRT2
        dtheta += 0.125 * e9 * hp * x**8
    return np.array([dx, dy, ds, dtheta])


def truncated_hamiltonian(state: McGeheeState, params: FlowParams) -> float:
    """Value of the truncated energy in the regularized variables."""
    x, y, s, theta = state.x, state.y, state.s, state.theta
    e = params.epsilon
    h = e**3 * (y * y + 0.5 * theta**2 * x**4 - x * x)
    if params.truncation_order >= 7:
        c1, c2, c3 = c_coeffs(params.config)
        h -= 0.25 * e**7 * x**6 * (c1 + c2 * math.cos(2 * s) + c3 * math.sin(2 * s))
    if params.truncation_order >= 9:
        d1, d2, d3, d4 = d_coeffs(params.config)
        h -= 0.125 * e**9 * x**8 * (
            d1 * math.cos(s)
            + d2 * math.sin(s)
            + d3 * math.cos(3 * s)
            + d4 * math.sin(3 * s)
        )
    return h


def jacobi_constant(state: McGeheeState, params: FlowParams) -> float:
    """First integral C = H_truncated - Theta, conserved by the truncated flow."""
    return truncated_hamiltonian(state, params) - state.theta


def theta_from_jacobi(x: float, y: float, jacobi_c: float, epsilon: float) -> float:
    """Angular momentum branch determined by the first-integral value.

    Takes the branch that stays bounded as x -> 0 (value -C on the zero set);
    a series expansion replaces the radical for tiny eps^3 x^4 to avoid
    cancellation.
    """
    v = epsilon**3 * x**4
    g = jacobi_c + epsilon**3 * (x * x - y * y)
    if v < 1e-6:
        # (1 - sqrt(1 + 2 v g))/v = -g + v g^2/2 - v^2 g^3/2 + 5 v^3 g^4/8 + ...
        return -g + 0.5 * v * g * g - 0.5 * v * v * g**3 + 0.625 * v**3 * g**4
    radicand = 1.0 + 2.0 * v * g
    if radicand < 0.0:
        raise ValueError(f"negative radicand {radicand!r} in the angular momentum branch")
    return (1.0 - math.sqrt(radicand)) / v


def rhs_mcgehee_tau(state_vec: Sequence[float], params: FlowParams):
    """Slow-time derivative of (x, y, s, theta); needs x > 0."""
    x, y, s, theta = state_vec
    if x <= 0.0:
        raise ConvergenceRegionError("slow-time field needs x > 0")
    _convergence_guard(x, params)
    (c1, c2, c3), (d1, d2, d3, d4) = _field_coefficients(params)
    e = params.epsilon
    dx = y
    dy = (1.0 - theta**2 * x * x) * x
    ds = SQRT2 * (e**-3 - theta * x**4) / x**3
    dtheta = 0.0
    if params.truncation_order >= 7:
        g = c1 + c2 * math.cos(2 * s) + c3 * math.sin(2 * s)
        dy += 0.75 * e**4 * g * x**5
        dtheta += -(e**4 / SQRT2) * (c3 * math.cos(2 * s) - c2 * math.sin(2 * s)) * x**3
    if params.truncation_order >= 9:
        h = (
            d1 * math.cos(s)
            + d2 * math.sin(s)
            + d3 * math.cos(3 * s)
            + d4 * math.sin(3 * s)
        )
        hp = (
            d1 * math.sin(s)
            - d2 * math.cos(s)
            + 3 * d3 * math.sin(3 * s)
            - 3 * d4 * math.cos(3 * s)
        )
        dy += 0.5 * e**6 * h * x**7
        dtheta += (e**6 / (4.0 * SQRT2)) * hp * x**5
    return np.array([dx, dy, ds, dtheta])


# ---------------------------------------------------------------------------
# integration


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    states: np.ndarray  # shape (4, n) or (len(state0), n)
    sol: Callable[[float], np.ndarray]


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    state0: Sequence[float],
    t_span: tuple[float, float],
    tol: float,
) -> Trajectory:
    """Adaptive embedded Runge-Kutta 5(4) run with dense output.

    Tolerances are split 10:1 relative:absolute around ``tol``.
    """
    if not (1e-12 <= tol <= 1e-4):
        raise ValueError(f"tolerance must lie in [1e-12, 1e-4], got {tol!r}")
    res = solve_ivp(
        rhs,
        t_span,
        np.asarray(state0, dtype=float),
        method="RK45",
        rtol=tol,
        atol=tol / 10.0,
        dense_output=True,
    )
    if not res.success:
        raise IntegrationError(f"integrator failed: {res.message}")
    return Trajectory(t=res.t, states=res.y, sol=res.sol)


def integrate_mcgehee(
    state0: McGeheeState,
    params: FlowParams,
    t_span: tuple[float, float],
    tol: float = 1e-10,
) -> Trajectory:
    """Integrate the truncated time-form field from a regularized state."""
    coeffs = _field_coefficients(params)

    def rhs(_t, yv):
        _convergence_guard(yv[0], params)
        return _rhs_array(yv, params.epsilon, params.truncation_order, *coeffs)

    return integrate(rhs, (state0.x, state0.y, state0.s, state0.theta), t_span, tol)


def poincare_numeric(
    x0: float,
    y0: float,
    s0: float,
    params: FlowParams,
    tol: float = 1e-12,
) -> tuple[float, float, float]:
    """One turn of the return map of the reduced (x, y, s) flow.

    The angular momentum is eliminated through the first integral; the
    section is the next crossing of s = s0 + 2 pi, located by dense-output
    root solving.  Returns (x1, y1, return_time).
    """
    if params.jacobi_C is None:
        raise ValueError("the return map needs the first-integral value jacobi_C")
    if x0 > 0.1:
        raise ValueError("the return map is meant for small x (x0 <= 0.1)")
    c_val = params.jacobi_C
    coeffs = _field_coefficients(params)
    target = s0 + 2.0 * math.pi

    def rhs(_t, yv):
        x, y, s = yv
        theta = theta_from_jacobi(x, y, c_val, params.epsilon)
        d = _rhs_array(
            np.array([x, y, s, theta]), params.epsilon, params.truncation_order, *coeffs
        )
        return d[:3]

    def crossing(_t, yv):
        return yv[2] - target

    crossing.terminal = True
    crossing.direction = 1.0

    res = solve_ivp(
        rhs,
        (0.0, 3.0 * math.pi),
        np.array([x0, y0, s0]),
        method="RK45",
        rtol=tol,
        atol=tol / 10.0,
        dense_output=True,
        events=crossing,
        max_step=0.5,
    )
    if not res.success:
        raise IntegrationError(f"integrator failed: {res.message}")
    if not res.t_events[0].size:
        raise PoincareReturnError("no section crossing within 3 pi of time")
    t1 = float(res.t_events[0][0])
    x1, y1, _ = res.y_events[0][0]
    return float(x1), float(y1), t1


# ---------------------------------------------------------------------------
# splitting along the separatrix


def _splitting_integrand(
    s0: float, theta0: float, epsilon: float, config: CentralConfiguration
) -> Callable[[np.ndarray], np.ndarray]:
    c1, c2, c3 = c_coeffs(config)
    d1, d2, d3, d4 = d_coeffs(config)
    e4, e6 = epsilon**4, epsilon**6
    amp = SQRT2 / abs(theta0)

    def f(tau: np.ndarray) -> np.ndarray:
        sech = 1.0 / np.cosh(tau)
        x = amp * sech
        y = -amp * np.tanh(tau) * sech
        s = s_closed_form(tau, s0, theta0, epsilon)
        g = c1 + c2 * np.cos(2 * s) + c3 * np.sin(2 * s)
        h = d1 * np.cos(s) + d2 * np.sin(s) + d3 * np.cos(3 * s) + d4 * np.sin(3 * s)
        hp = (
            d1 * np.sin(s)
            - d2 * np.cos(s)
            + 3 * d3 * np.sin(3 * s)
            - 3 * d4 * np.cos(3 * s)
        )
        y_pert = 0.75 * e4 * g * x**5 + 0.5 * e6 * h * x**7
        theta_pert = -(e4 / SQRT2) * (c3 * np.cos(2 * s) - c2 * np.sin(2 * s)) * x**3
        theta_pert = theta_pert + (e6 / (4.0 * SQRT2)) * hp * x**5
        return y * y_pert + 0.5 * theta0 * x**4 * theta_pert

    return f


def _splitting_breakpoints(theta0: float, epsilon: float, tau_star: float) -> list[float]:
    # Panel seeds at the half-periods of the fastest phase (the third
    # harmonic of the fast angle): (|theta0|^3/(8 eps^3)) (9 sinh + sinh 3 tau).
    rate = abs(theta0) ** 3 / epsilon**3
    n_max = int(rate * (9.0 * math.sinh(tau_star) + math.sinh(3.0 * tau_star)) / (8.0 * math.pi))
    pts = [0.0]
    if n_max >= 1:
        n = np.arange(1, n_max + 1, dtype=float)
        sigma = np.asarray(solve_cubic_phase(2.0 * math.pi * n / rate), dtype=float)
        taus = np.arcsinh(sigma)
        pts.extend(float(t) for t in taus if t < tau_star)
    pts.append(tau_star)
    pts = sorted(set(pts))
    return [-p for p in reversed(pts) if p > 0.0] + pts


def splitting_measure(
    s0: float,
    theta0: float,
    epsilon: float,
    config: CentralConfiguration,
    T: float = 15.0,
    tol: float = 1e-9,
    method: str = "melnikov",
) -> float:
    """Flow-side splitting: energy derivative integrated along the separatrix.

    The ``melnikov`` method integrates d(energy)/d tau under the perturbed
    slow-time field with (x, y) frozen on the separatrix; it matches the
    closed-form order-4 plus order-6 splitting functions.  The experimental
    ``shooting`` method instead integrates the perturbed flow from deep on
    each manifold branch and differences the energies at the section; it is
    exposed for qualitative cross-checks only.
    """
    if theta0 == 0.0:
        raise ValueError("splitting needs nonzero angular momentum")
    if T < 15.0:
        raise ValueError("need T >= 15 so the truncation error is negligible")
    if method == "shooting":
        return _splitting_by_shooting(s0, theta0, epsilon, config)
    if method != "melnikov":
        raise ValueError(f"unknown method {method!r}")

    f = _splitting_integrand(s0, theta0, epsilon, config)
    c1, c2, c3 = c_coeffs(config)
    d_sum = sum(abs(v) for v in d_coeffs(config))
    amp = SQRT2 / abs(theta0)
    scale = (
        0.75 * epsilon**4 * (abs(c1) + abs(c2) + abs(c3)) * amp**6
        + 0.5 * epsilon**6 * d_sum * amp**8
        + abs(theta0) * amp**7 * epsilon**4 * (abs(c2) + abs(c3) + epsilon**2 * d_sum)
    )
    tau_star = 2.0
    while tau_star < T and scale * math.exp(-6.0 * tau_star) > tol / 50.0:
        tau_star += 0.5
    breaks = _splitting_breakpoints(theta0, epsilon, min(tau_star, T))
    value, _err, _n = adaptive_quadrature(f, breaks, tol)
    return value


def _splitting_by_shooting(
    s0: float,
    theta0: float,
    epsilon: float,
    config: CentralConfiguration,
    tau_depth: float = 3.5,
    tol: float = 1e-11,
) -> float:
    """Experimental: difference of branch energies at the section by shooting."""
    params = FlowParams(epsilon=epsilon, config=config, truncation_order=9)

    def rhs(_tau, yv):
        return rhs_mcgehee_tau(yv, params)

    out = {}
    for label, tau_from in (("unstable", -tau_depth), ("stable", tau_depth)):
        x, y = homoclinic(tau_from, theta0)
        s = s_closed_form(tau_from, s0, theta0, epsilon)
        res = solve_ivp(
            rhs,
            (tau_from, 0.0),
            np.array([x, y, s, theta0]),
            method="RK45",
            rtol=tol,
            atol=tol / 10.0,
        )
        if not res.success:
            raise IntegrationError(f"shooting branch failed: {res.message}")
        xf, yf, _sf, thf = res.y[:, -1]
        out[label] = hd_value(float(xf), float(yf), float(thf))
    return out["unstable"] - out["stable"]
