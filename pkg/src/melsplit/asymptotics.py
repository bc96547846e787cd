"""Asymptotic behavior of the oscillatory integrals and the splitting.

For large positive phase scale the half-line basis integrals obey

    I_(2n-1)(d) = exp(-2d/3) [ pi d^(n-1) / (2^(n+1) (2n-2)!!) + O(d^(n-3/2)) ]
    I_(2n)(d)   = exp(-2d/3) [ sqrt(pi) d^(n-1/2) / (2^(n+1) (2n-1)!!) + O(d^(n-1)) ]

together with the exact identity J_(k+2)(d) = d/(2(k+1)) I_k(d).  Feeding
these into the splitting functions gives closed leading-order forms for the
order-4 and order-6 terms on both sign branches of the angular momentum,
plus the scaling exponents of the full Fourier ladder: the harmonic k decays
like exp(-k Theta0^3/(3 eps^3)), which fixes the dominance order used by
the classifier.

The remainder beyond first order is controlled by a Lipschitz argument: it
stays below the harmonic-k term once |tau| exceeds k sqrt(2) Theta0 / 3.
Values here are plain closed-form evaluations; the quadrature module is the
cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .config import CentralConfiguration
from .harmonics import c_coeffs, d_coeffs
from .quadrature import eval_Ik

SQRT_PI = math.sqrt(math.pi)
SQRT2 = math.sqrt(2.0)


def _double_factorial(n: int) -> int:
    if n <= 0:
        return 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def ik_asymptotic(k: int, delta: float) -> float:
    """Leading large-delta term of I_k(delta), delta > 0."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if not delta > 0.0:
        raise ValueError(f"need delta > 0, got {delta!r}")
    if k % 2 == 1:
        n = (k + 1) // 2
        lead = math.pi * delta ** (n - 1) / (2 ** (n + 1) * _double_factorial(2 * n - 2))
    else:
        n = k // 2
        lead = SQRT_PI * delta ** (n - 0.5) / (2 ** (n + 1) * _double_factorial(2 * n - 1))
    return math.exp(-2.0 * delta / 3.0) * lead


def jk_from_ik(k: int, delta: float, tol: float = 1e-10) -> float:
    """J_(k+2)(delta) through the exact identity delta/(2(k+1)) I_k(delta).

    I_k is even in delta, so the prefactor alone carries the odd symmetry.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if delta == 0.0:
        return 0.0
    return delta / (2.0 * (k + 1)) * eval_Ik(k, abs(delta), tol)


def m4_leading(
    s0: float, theta0: float, epsilon: float, config: CentralConfiguration
) -> float:
    """Leading asymptotic value of the order-4 splitting term (times eps^4)."""
    if theta0 == 0.0:
        raise ValueError("need nonzero angular momentum")
    _, c2, c3 = c_coeffs(config)
    angular = c2 * math.sin(2 * s0) - c3 * math.cos(2 * s0)
    rate = theta0**3 / epsilon**3
    if theta0 > 0.0:
        pref = (4.0 * SQRT_PI / 3.0) * epsilon**-3.5 * theta0**1.5
        return pref * math.exp(-2.0 * rate / 3.0) * angular
    pref = (5.0 * math.pi / 8.0) * epsilon**-2.0
    return pref * math.exp(2.0 * rate / 3.0) * angular


def m6_leading(
    s0: float, theta0: float, epsilon: float, config: CentralConfiguration
) -> float:
    """Leading asymptotic value of the order-6 splitting term (times eps^6).

    Both harmonics are included; their decay rates differ by a factor 3 in
    the exponent.
    """
    if theta0 == 0.0:
        raise ValueError("need nonzero angular momentum")
    d1, d2, d3, d4 = d_coeffs(config)
    first = d2 * math.cos(s0) - d1 * math.sin(s0)
    third = d4 * math.cos(3 * s0) - d3 * math.sin(3 * s0)
    rate = theta0**3 / epsilon**3
    if theta0 > 0.0:
        a = -(SQRT_PI / (12.0 * SQRT2)) * epsilon**-1.5 * theta0**-0.5
        b = -(9.0 * math.sqrt(3.0 * math.pi) / (5.0 * SQRT2)) * epsilon**-4.5 * theta0**2.5
        return a * math.exp(-rate / 3.0) * first + b * math.exp(-rate) * third
    a = -(5.0 * math.pi / 128.0) * theta0**-2.0
    b = (63.0 * math.pi / 64.0) * epsilon**-3.0 * theta0
    return a * math.exp(rate / 3.0) * first + b * math.exp(rate) * third


@dataclass(frozen=True)
class FourierEstimate:
    """Scaling of the harmonic-k amplitudes of the splitting in epsilon."""

    k: int
    alpha_leading: Optional[float]
    beta_leading: Optional[float]
    epsilon_power: float
    exponential_rate: float

    def __post_init__(self):
        if self.exponential_rate != self.k / 3.0:
            raise ValueError("exponential rate must equal k/3")


def fourier_estimate(
    k: int, theta0: float, epsilon: float, config: CentralConfiguration
) -> FourierEstimate:
    """Leading amplitude constants (k <= 2) and scaling exponents of harmonic k.

    For k >= 3 only the exponents are meaningful; the constants are not
    published, so they are reported as None rather than fabricated.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if not theta0 > 0.0:
        raise ValueError("the Fourier scaling table is stated for positive angular momentum")
    if k == 1:
        d1, d2, _, _ = d_coeffs(config)
        const = SQRT_PI / (12.0 * SQRT2) * theta0**-0.5
        return FourierEstimate(
            k=1,
            alpha_leading=-const * d2,
            beta_leading=const * d1,
            epsilon_power=-1.5,
            exponential_rate=1.0 / 3.0,
        )
    if k == 2:
        _, c2, c3 = c_coeffs(config)
        const = 4.0 * SQRT_PI / 3.0 * theta0**1.5
        return FourierEstimate(
            k=2,
            alpha_leading=const * c3,
            beta_leading=-const * c2,
            epsilon_power=-3.5,
            exponential_rate=2.0 / 3.0,
        )
    return FourierEstimate(
        k=k,
        alpha_leading=None,
        beta_leading=None,
        epsilon_power=-(k + 1.5),
        exponential_rate=k / 3.0,
    )


def harmonic_magnitude(
    est: FourierEstimate, theta0: float, epsilon: float, with_constants: bool = False
) -> float:
    """Size proxy eps^power exp(-k Theta0^3/(3 eps^3)) for harmonic k.

    The default compares pure scaling factors, which is what fixes the
    dominance order across harmonics; ``with_constants`` folds in the leading
    amplitude norm where available (unit constant otherwise).
    """
    const = 1.0
    if with_constants and est.alpha_leading is not None and est.beta_leading is not None:
        const = math.hypot(est.alpha_leading, est.beta_leading)
    rate = est.exponential_rate * theta0**3 / epsilon**3
    return const * epsilon**est.epsilon_power * math.exp(-rate)


def sanders_threshold(k: int, theta0: float) -> float:
    """Smallest |tau| where the remainder drops below the harmonic-k term.

    exp(-k Theta0^3/(3 eps^3)) > exp(-Theta0^2 |tau|/(sqrt(2) eps^3)) exactly
    when |tau| > k sqrt(2) Theta0 / 3.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if not theta0 > 0.0:
        raise ValueError("threshold stated for positive angular momentum")
    return k * SQRT2 * theta0 / 3.0


def sanders_lipschitz(theta0: float) -> float:
    """Lipschitz constant sqrt(2)/Theta0 of the energy along the separatrix."""
    if theta0 == 0.0:
        raise ValueError("need nonzero angular momentum")
    return SQRT2 / theta0
