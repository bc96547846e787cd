"""Harmonic content of the gravitational perturbation.

Each multipole order j contributes a term proportional to
P_j(cos(alpha_k + s)) per primary, where s is the fast angle and alpha_k the
body's polar angle.  Expanding the Legendre polynomial in the cosine basis
and summing over bodies turns the order-j term into a finite trigonometric
polynomial in s whose amplitudes (A_m, B_m) drive the splitting analysis:

    A_m = p_{j,m} sum_k m_k |a_k|^j cos(m alpha_k)
    B_m = -p_{j,m} sum_k m_k |a_k|^j sin(m alpha_k)

The named low-order families are exposed directly: the quadrupole triple
(c1, c2, c3), the octupole quadruple (d1..d4), and the (d1, d2) analogues at
arbitrary odd order.  Legendre cosine coefficients p_{j,m} are produced by
an exact integer recurrence and only then rounded to floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

import numpy as np

from .config import CentralConfiguration

MAX_LEGENDRE_ORDER = 64


@lru_cache(maxsize=None)
def _legendre_power_coeffs(j: int) -> tuple[Fraction, ...]:
    # Three-term recurrence in the monomial basis, exact rationals.
    if j == 0:
        return (Fraction(1),)
    if j == 1:
        return (Fraction(0), Fraction(1))
    p0 = _legendre_power_coeffs(j - 2)
    p1 = _legendre_power_coeffs(j - 1)
    out = [Fraction(0)] * (j + 1)
    for i, c in enumerate(p1):
        out[i + 1] += Fraction(2 * j - 1, j) * c
    for i, c in enumerate(p0):
        out[i] -= Fraction(j - 1, j) * c
    return tuple(out)


@dataclass(frozen=True)
class LegendreCosExpansion:
    """P_j(cos g) = sum over m of coefficients[m] * cos(m g), m = j mod 2."""

    j: int
    coefficients: Mapping[int, float]


@lru_cache(maxsize=None)
def _cos_basis_fractions(j: int) -> tuple[tuple[int, Fraction], ...]:
    acc: dict[int, Fraction] = {}
    for n, c in enumerate(_legendre_power_coeffs(j)):
        if c == 0:
            continue
        # cos^n g = 2^(1-n) sum_{m>0, m = n mod 2} C(n,(n-m)/2) cos(m g)
        #           + [n even] 2^(-n) C(n, n/2)
        for i in range(n // 2 + 1):
            m = n - 2 * i
            w = Fraction(comb(n, i), 2**n)
            acc[m] = acc.get(m, Fraction(0)) + c * w * (1 if m == 0 else 2)
    return tuple(sorted((m, v) for m, v in acc.items() if v != 0))


def legendre_cos_coeffs(j: int) -> LegendreCosExpansion:
    """Exact cosine-basis coefficients of the degree-j Legendre polynomial."""
    if not (0 <= j <= MAX_LEGENDRE_ORDER):
        raise ValueError(f"order must lie in [0, {MAX_LEGENDRE_ORDER}], got {j}")
    coeffs = {m: float(v) for m, v in _cos_basis_fractions(j)}
    return LegendreCosExpansion(j=j, coefficients=coeffs)


def legendre_pair(j: int, w: float) -> tuple[float, float]:
    """(P_j(w), dP_j/dw) by the standard recurrences."""
    if j == 0:
        return 1.0, 0.0
    p0, p1 = 1.0, w
    d0, d1 = 0.0, 1.0
    for m in range(2, j + 1):
        p0, p1 = p1, ((2 * m - 1) * w * p1 - (m - 1) * p0) / m
        d0, d1 = d1, ((2 * m - 1) * (p0 + w * d1) - (m - 1) * d0) / m
    return p1, d1


@dataclass(frozen=True)
class HarmonicTable:
    """Amplitudes of cos(m s), sin(m s) in the order-j perturbation term."""

    j: int
    entries: tuple[tuple[int, float, float], ...]

    def pair(self, m: int) -> tuple[float, float]:
        for mm, a, b in self.entries:
            if mm == m:
                return a, b
        raise KeyError(f"no harmonic m={m} at order j={self.j}")


def _angle_multiples(config: CentralConfiguration, m_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """cos(m alpha_k), sin(m alpha_k) for m = 0..m_max via the angle-addition recurrence.

    Using the recurrence instead of atan2 keeps axis-aligned bodies exactly
    on the sine-kill locus (a_k2 = 0 gives sin(m alpha_k) = 0 identically).
    """
    pos = config.positions()
    r = np.hypot(pos[:, 0], pos[:, 1])
    safe = np.where(r > 0.0, r, 1.0)  # a body at the origin has zero weight r**j
    ca, sa = pos[:, 0] / safe, np.where(r > 0.0, pos[:, 1] / safe, 0.0)
    n = len(r)
    cos_m = np.empty((m_max + 1, n))
    sin_m = np.empty((m_max + 1, n))
    cos_m[0], sin_m[0] = 1.0, 0.0
    for m in range(1, m_max + 1):
        cos_m[m] = cos_m[m - 1] * ca - sin_m[m - 1] * sa
        sin_m[m] = sin_m[m - 1] * ca + cos_m[m - 1] * sa
    return r, cos_m, sin_m


def harmonic_table(config: CentralConfiguration, j: int) -> HarmonicTable:
    """Per-harmonic amplitudes (A_m, B_m) of the order-j perturbation term."""
    if j < 2:
        raise ValueError(f"harmonic tables start at order 2, got {j}")
    expansion = legendre_cos_coeffs(j)
    masses = config.masses()
    r, cos_m, sin_m = _angle_multiples(config, j)
    w = masses * r**j
    entries = []
    for m, p in sorted(expansion.coefficients.items()):
        a = p * float(np.dot(w, cos_m[m]))
        b = -p * float(np.dot(w, sin_m[m]))
        entries.append((m, a, b))
    return HarmonicTable(j=j, entries=tuple(entries))


def c_coeffs(config: CentralConfiguration) -> tuple[float, float, float]:
    """Quadrupole coefficients: c1 = sum m|a|^2, c2 = 3 sum m(x^2 - y^2), c3 = -6 sum m x y."""
    m = config.masses()
    pos = config.positions()
    x, y = pos[:, 0], pos[:, 1]
    c1 = float(np.dot(m, x * x + y * y))
    c2 = 3.0 * float(np.dot(m, x * x - y * y))
    c3 = -6.0 * float(np.dot(m, x * y))
    return c1, c2, c3


def d_coeffs(config: CentralConfiguration) -> tuple[float, float, float, float]:
    """Octupole coefficients d1..d4 of the cos s, sin s, cos 3s, sin 3s channels."""
    m = config.masses()
    pos = config.positions()
    x, y = pos[:, 0], pos[:, 1]
    r2 = x * x + y * y
    d1 = 3.0 * float(np.dot(m, x * r2))
    d2 = -3.0 * float(np.dot(m, y * r2))
    d3 = 5.0 * float(np.dot(m, x * (x * x - 3.0 * y * y)))
    d4 = -5.0 * float(np.dot(m, y * (3.0 * x * x - y * y)))
    return d1, d2, d3, d4


def d_l(config: CentralConfiguration, l: int) -> tuple[float, float]:
    """First-harmonic pair at radial weight |a|^(2l): (sum m x r^2l, -sum m y r^2l)."""
    if l < 1:
        raise ValueError(f"need l >= 1, got {l}")
    m = config.masses()
    pos = config.positions()
    x, y = pos[:, 0], pos[:, 1]
    r2l = (x * x + y * y) ** l
    return float(np.dot(m, x * r2l)), -float(np.dot(m, y * r2l))


@dataclass(frozen=True)
class CoefficientSet:
    """The named low-order perturbation coefficients of a configuration."""

    c1: float
    c2: float
    c3: float
    d1: float
    d2: float
    d3: float
    d4: float

    def __post_init__(self):
        if self.c1 < 0.0:
            raise ValueError("c1 is a positively weighted sum and cannot be negative")


def coefficient_set(config: CentralConfiguration) -> CoefficientSet:
    c1, c2, c3 = c_coeffs(config)
    d1, d2, d3, d4 = d_coeffs(config)
    return CoefficientSet(c1, c2, c3, d1, d2, d3, d4)
