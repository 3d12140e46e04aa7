"""Closed-form potential theory for intervals and star sets.

Green's functions and log-potentials of intervals, capacities of polynomial
preimages, the exterior Joukowski-type map, the arcsine harmonic measure and
the equilibrium density of the star sets.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EndpointSingularity

ROUTE_PREIMAGE = "preimage-formula"
ROUTE_INTERVAL = "interval-formula"
ROUTE_SPIKED = "spiked-circle-reduction"


@dataclass(frozen=True)
class CapacityResult:
    value: float
    route: str

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("capacity must be positive")


def _exterior_sqrt_shifted(u):
    """sqrt(u^2 - 1) on the branch making |u + sqrt(u^2-1)| >= 1.

    The product sqrt(u-1)*sqrt(u+1) of principal square roots realises that
    branch everywhere, with the cut value taken as the limit from the upper
    half-plane.
    """
    u = complex(u)
    return cmath.sqrt(u - 1) * cmath.sqrt(u + 1)


def exterior_map_unit(u) -> complex:
    """u + sqrt(u^2-1), mapping C \\ [-1,1] onto the exterior of the unit disk."""
    u = complex(u)
    return u + _exterior_sqrt_shifted(u)


def green_interval(z, a: float, b: float) -> float:
    """Green's function of the complement of [a, b] with pole at infinity.

    Zero on [a, b]; behaves like log|z| - log((b-a)/4) at infinity.
    """
    if not a < b:
        raise ValueError("need a < b")
    u = (2 * complex(z) - a - b) / (b - a)
    if u.imag == 0 and -1.0 <= u.real <= 1.0:
        return 0.0
    return math.log(abs(exterior_map_unit(u)))


def cap_interval(a: float, b: float) -> CapacityResult:
    if not a < b:
        raise ValueError("need a < b")
    return CapacityResult(value=(b - a) / 4.0, route=ROUTE_INTERVAL)


def cap_preimage(cap_E: float, lead_coeff: complex, m: int) -> CapacityResult:
    """Capacity of P^{-1}(E) for deg-m P with leading coefficient lead_coeff."""
    if cap_E <= 0:
        raise ValueError("cap_E must be positive")
    if lead_coeff == 0:
        raise ValueError("leading coefficient must be nonzero")
    if m < 1:
        raise ValueError("m must be >= 1")
    return CapacityResult(value=(cap_E / abs(lead_coeff)) ** (1.0 / m),
                          route=ROUTE_PREIMAGE)


def log_potential_interval(z) -> float:
    """(1/pi) * integral of log|x - z| dx / sqrt(1-x^2) over [-1, 1].

    Equals log(|z + sqrt(z^2-1)| / 2); identically -log 2 on [-1, 1].
    """
    u = complex(z)
    if u.imag == 0 and -1.0 <= u.real <= 1.0:
        return -math.log(2.0)
    return math.log(abs(exterior_map_unit(u)) / 2.0)


def joukowski_exterior(z) -> complex:
    """The root w of w^2 - 2zw + 4 = 0 with |w| >= 2 (exterior branch).

    On the cut [-2, 2] both roots have modulus 2; the limit from the upper
    half-plane is returned there.
    """
    z = complex(z)
    s = cmath.sqrt(z * z - 4)
    w1, w2 = z + s, z - s
    if abs(abs(w1) - abs(w2)) <= 1e-13 * max(abs(w1), abs(w2), 1.0):
        # on (or numerically on) the cut: upper half-plane limit
        return z + 2 * _exterior_sqrt_shifted(z / 2)
    return w1 if abs(w1) > abs(w2) else w2


def interval_harmonic_measure(a: float, b: float, s: float) -> float:
    """Arcsine-law mass of [a, s] inside [a, b]: arccos((a+b-2s)/(b-a)) / pi."""
    if not a < b:
        raise ValueError("need a < b")
    if not (a <= s <= b):
        raise DomainError(f"s={s} outside [{a}, {b}]")
    return math.acos((a + b - 2 * s) / (b - a)) / math.pi


def equilibrium_density_star(m: int, z, set_tol: float = 1e-10) -> float:
    """Arc-length density |z^(m-1)| / (pi * sqrt(4 - z^(2m))) on the star set.

    The point must satisfy z^m in [-2, 2] to within set_tol.  Within 1e-8 of
    an endpoint (|z^m| = 2) the inverse-square-root singularity dominates and
    EndpointSingularity is raised; the singularity is integrable, so callers
    doing quadrature should substitute z^m = 2 cos(theta) per ray.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    zm = complex(z) ** m
    if abs(zm.imag) > set_tol or abs(zm.real) > 2.0 + set_tol:
        raise DomainError(f"z^m = {zm} is not on [-2, 2]")
    t = min(max(zm.real, -2.0), 2.0)
    if 2.0 - abs(t) < 1e-8:
        raise EndpointSingularity(f"z^m = {t} is within 1e-8 of an endpoint")
    return abs(complex(z)) ** (m - 1) / (math.pi * math.sqrt(4.0 - t * t))


def star_ray_points(m: int, phis) -> np.ndarray:
    """Points on the ray [0, 2^(1/m)] with z^m = 2*sin(phi), phi in [0, pi/2].

    This is the substitution that removes the endpoint singularity of the
    equilibrium density; used by the quadrature tests.
    """
    phis = np.asarray(phis, dtype=float)
    return (2.0 * np.sin(phis)) ** (1.0 / m)
