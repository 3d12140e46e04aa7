"""Widom factors: sup-norm and L2 flavors, exact values and limits.

The sup-norm factor of a set E at degree n is the Chebyshev norm divided by
Cap(E)^n; the L2 flavor squares the norm of the monic orthogonal polynomial
of the equilibrium measure.  For the star sets the L2 quantities collapse to
a ratio of Gamma functions, evaluated here both in closed form and through
the monic Jacobi three-term recurrence as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import cheb_complex, sets
from .errors import DomainError, WidomlabError
from .potential import joukowski_exterior

FLAVOR_SUP = "sup"
FLAVOR_L2 = "L2squared"

ROUTE_EXACT = "exact"
ROUTE_REMEZ = "remez"
ROUTE_DISCRETE = "discrete"
ROUTE_GAMMA = "gamma-formula"
ROUTE_QUAD = "quadrature"
ROUTE_ERROR = "error"


@dataclass(frozen=True)
class WidomRecord:
    degree: int
    norm: float
    capacity: float
    factor: float
    flavor: str = FLAVOR_SUP
    route: str = ROUTE_EXACT
    gap: float = 0.0
    message: str = ""


@dataclass(frozen=True)
class WidomLimit:
    """Limits of the sup-norm Widom factors along even/odd-type subsequences.

    For sets where a single limit exists the two fields coincide;
    `conjecture` marks values that are numerically supported but unproven.
    """

    even: float
    odd: float
    conjecture: bool = False


# ---------------------------------------------------------------------------
# Gamma-ratio route for the L2 flavor on star sets
# ---------------------------------------------------------------------------

def gamma_ratio(n: int, s: float) -> float:
    """2 Gamma(2n+1) Gamma(2n+2s) / ((2n+s) Gamma(2n+s)^2), s = l/m.

    Equals the squared L2 Widom factor of the star set at degree 2nm + l.
    Evaluated in log space; exact value 2 at s = 0 and s = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s < 0:
        raise ValueError("s must be >= 0")
    if s == 0.0 or s == 1.0:
        return 2.0
    ln = (math.lgamma(2 * n + 1) + math.lgamma(2 * n + 2 * s)
          - 2.0 * math.lgamma(2 * n + s))
    return 2.0 * math.exp(ln) / (2 * n + s)


def gamma_step(n: int, s: float) -> float:
    """The ratio gamma_ratio(n+1, s) / gamma_ratio(n, s), in rational form.

    Greater than 1 exactly when s < 1, equal to 1 at s = 1, less than 1 for
    s > 1; this monotonicity drives the L2 limit.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    num = (2 * n + 1) * (2 * n + 2) * (2 * n + 2 * s) * (2 * n + 2 * s + 1)
    den = (2 * n + s) * (2 * n + s + 1) ** 2 * (2 * n + s + 2)
    return num / den


def _gamma_zero(s: float) -> float:
    """The n = 0 value: the total mass 4^s Gamma(s+1/2)/(sqrt(pi) Gamma(s+1))."""
    return 4.0 ** s * math.exp(
        math.lgamma(s + 0.5) - math.lgamma(s + 1.0)) / math.sqrt(math.pi)


def _jacobi_beta(k: int, alpha: float, beta: float) -> float:
    """Monic Jacobi recurrence coefficient beta_k on [-1, 1], k >= 1."""
    s = 2 * k + alpha + beta
    if k == 1:
        return 4.0 * (1 + alpha) * (1 + beta) / (s * s * (s + 1))
    return (4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta)
            / (s * s * (s + 1) * (s - 1)))


def ortho_norm_direct(m: int, degree: int) -> float:
    """Squared L2(equilibrium) norm of the monic orthogonal polynomial.

    The star symmetry reduces degree 2nm + l to a degree-n monic Jacobi
    polynomial for the weight x^(l/m - 1/2) (4-x)^(-1/2) / pi on [0, 4]; the
    squared norm is the running product of the recurrence coefficients times
    the total mass.  Independent of gamma_ratio, which it must reproduce.
    """
    if m < 1 or degree < 0:
        raise ValueError("need m >= 1 and degree >= 0")
    n, l = degree // (2 * m), degree % (2 * m)
    s = l / m
    alpha, beta = -0.5, s - 0.5
    out = _gamma_zero(s)
    for k in range(1, n + 1):
        out *= 4.0 * _jacobi_beta(k, alpha, beta)
    return out


def widom_l2_series(m: int, degrees) -> list:
    """L2-flavor records for a star set (capacity 1, gamma-formula route)."""
    recs = []
    for d in degrees:
        n, l = d // (2 * m), d % (2 * m)
        val = gamma_ratio(n, l / m) if n >= 1 else _gamma_zero(l / m)
        recs.append(WidomRecord(degree=d, norm=val, capacity=1.0,
                                factor=val, flavor=FLAVOR_L2,
                                route=ROUTE_GAMMA))
    return recs


# ---------------------------------------------------------------------------
# sup-norm series and limits
# ---------------------------------------------------------------------------

def _sup_record(spec: sets.SetSpec, degree: int, tol: float,
                per_edge: Optional[int], seed: int) -> WidomRecord:
    cap = spec.capacity().value
    k = spec.kind

    def rec(norm, route, gap=0.0):
        return WidomRecord(degree=degree, norm=float(norm), capacity=cap,
                           factor=float(norm) / cap ** degree,
                           flavor=FLAVOR_SUP, route=route, gap=float(gap))

    if k == "interval":
        h = (spec.b.real - spec.a.real) / 4.0
        return rec(2.0 * h ** degree, ROUTE_EXACT)
    if k == "star_even":
        r = cheb_complex.star_norm(spec.m, degree, tol=min(tol, 1e-10))
        return rec(r.norm, r.route)
    if k == "star_odd":
        return rec(*_star_odd_norm(spec.m, degree, tol))
    if k == "quadratic":
        if degree % 2 == 0:
            p, _ = spec.defining_poly()
            _, norm = cheb_complex.compose_chebyshev(p, degree // 2)
            return rec(norm, ROUTE_EXACT)
        n = (degree - 1) // 2
        norm = cheb_complex.quadratic_odd_norm(spec.c, n,
                                               tol=min(tol, 1e-10))
        return rec(norm, ROUTE_EXACT if n == 0 else ROUTE_REMEZ)
    # arc, poly_preimage, spiked_circle: discrete route
    pe = per_edge or sets.default_per_edge(degree, spec.edge_count())
    D = sets.discretize(spec, pe, seed=seed)
    sol = cheb_complex.solve_discrete_minimax(D, degree, tol=tol)
    return rec(sol.norm, ROUTE_DISCRETE, sol.gap)


def _star_odd_norm(m: int, degree: int, tol: float):
    """Norm on {z : z^m in [0, 4]}: composition, monomial, or weighted Remez."""
    n, l = degree // m, degree % m
    if l == 0:
        _, norm = cheb_complex.compose_chebyshev(
            sets._monomial(m), n, (0.0, 4.0))
        return norm, ROUTE_EXACT
    if n == 0:
        return 2.0 ** (2.0 * l / m), ROUTE_EXACT
    from . import cheb_real
    w = cheb_real.Weight(singular=((-1.0, l / m),))
    sol = cheb_real.remez_weighted(w, n, tol=min(tol, 1e-10))
    return 2.0 ** (n + 2.0 * l / m) * sol.norm, ROUTE_REMEZ


def widom_inf_series(spec: sets.SetSpec, degrees, tol: float = 1e-8,
                     per_edge: Optional[int] = None, seed: int = 0) -> list:
    """Sup-norm Widom records, one per degree, with per-degree error capture.

    Exact and Remez reductions are used wherever the set admits one; other
    sets go through discretization and the certified discrete solver.  A
    degree whose solver fails yields a record with route 'error' and NaN
    values instead of aborting the sweep.
    """
    degrees = list(degrees)
    if not degrees:
        raise ValueError("degrees must be nonempty")
    out = []
    for d in degrees:
        try:
            out.append(_sup_record(spec, d, tol, per_edge, seed))
        except WidomlabError as exc:
            out.append(WidomRecord(degree=d, norm=math.nan,
                                   capacity=math.nan, factor=math.nan,
                                   flavor=FLAVOR_SUP, route=ROUTE_ERROR,
                                   message=str(exc)))
    return out


def widom_limit(spec: sets.SetSpec) -> WidomLimit:
    """Closed-form limits of the sup-norm Widom factors.

    Star sets and intervals converge to 2.  Quadratic preimages keep the
    even-degree value 2; the odd subsequence tends to
    sqrt(2 |c + sqrt(c^2 - 4)|) (exterior branch), which is 2 exactly when
    c lies on [-2, 2].  Circular arcs tend to 2 cos^2(alpha/4).  General
    polynomial preimages return the conjectural value 2, flagged.
    """
    k = spec.kind
    if k in ("interval", "star_even", "star_odd"):
        return WidomLimit(even=2.0, odd=2.0)
    if k == "quadratic":
        c = spec.c
        if c.imag == 0 and -2.0 <= c.real <= 2.0:
            return WidomLimit(even=2.0, odd=2.0)
        odd = math.sqrt(2.0 * abs(joukowski_exterior(c)))
        return WidomLimit(even=2.0, odd=odd)
    if k == "arc":
        v = 2.0 * math.cos(spec.alpha / 4.0) ** 2
        return WidomLimit(even=v, odd=v)
    if k == "poly_preimage":
        return WidomLimit(even=2.0, odd=2.0, conjecture=True)
    raise DomainError(f"no closed-form Widom limit for kind {k!r}")
