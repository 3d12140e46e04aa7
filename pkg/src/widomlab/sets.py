"""Symbolic set specifications, discretizations and the spiked-circle family.

The supported sets are intervals, circular arcs, the star sets
{z : z^m in [-2,2]} and {z : z^m in [0,4]}, quadratic preimages of [-2,2],
general polynomial preimages of an interval, and the spiked circles used as
comparison sets for the star norms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import poly as plib
from .errors import DomainError
from .potential import (CapacityResult, ROUTE_SPIKED, cap_interval,
                        cap_preimage, exterior_map_unit,
                        interval_harmonic_measure)

UNIFORM = "uniform"
ARCSINE = "arcsine"

_KINDS = ("interval", "arc", "star_even", "star_odd", "quadratic",
          "poly_preimage", "spiked_circle")


@dataclass(frozen=True)
class SetSpec:
    """Symbolic description of one of the supported compact sets."""

    kind: str
    a: complex = 0.0          # interval left end / quadratic z coefficient
    b: complex = 0.0          # interval right end / quadratic constant
    alpha: float = 0.0        # arc half-angle
    m: int = 0                # star exponent
    n: int = 0                # spiked-circle index
    l: int = 0                # spiked-circle index, 1 or 3
    p: Optional[plib.Poly] = None   # poly_preimage polynomial
    target: tuple = (-2.0, 2.0)     # poly_preimage target interval

    def __post_init__(self):
        k = self.kind
        if k not in _KINDS:
            raise ValueError(f"unknown set kind {k!r}")
        if k == "interval" and not self.a.real < self.b.real:
            raise ValueError("interval needs a < b")
        if k == "arc" and not 0 < self.alpha < math.pi:
            raise ValueError("arc half-angle must lie in (0, pi)")
        if k in ("star_even", "star_odd") and self.m < 1:
            raise ValueError("star exponent m must be >= 1")
        if k == "spiked_circle":
            if self.l not in (1, 3) or self.n < 1:
                raise ValueError("spiked circle needs n >= 1 and l in {1, 3}")
        if k == "poly_preimage":
            if self.p is None or self.p.degree < 1:
                raise ValueError("poly_preimage needs a nonconstant polynomial")
            if not self.target[0] < self.target[1]:
                raise ValueError("target interval needs a < b")

    # -- quadratic helpers ----------------------------------------------
    @property
    def c(self) -> complex:
        """b - a^2/4 for a quadratic preimage (its connectivity parameter)."""
        if self.kind != "quadratic":
            raise AttributeError("c is defined for quadratic preimages only")
        return complex(self.b) - complex(self.a) ** 2 / 4.0

    @property
    def connected(self) -> bool:
        if self.kind != "quadratic":
            raise AttributeError("connectivity flag is for quadratic preimages")
        c = self.c
        return abs(c.imag) == 0 and -2.0 <= c.real <= 2.0

    # -- structural helpers ---------------------------------------------
    def edge_count(self) -> int:
        k = self.kind
        if k in ("interval", "arc"):
            return 1
        if k == "star_even":
            return 2 * self.m
        if k == "star_odd":
            return self.m
        if k == "quadratic":
            return 4
        if k == "poly_preimage":
            return self.p.degree
        if k == "spiked_circle":
            return 4 * (2 * self.n + self.l - 1) + 1
        raise AssertionError

    def defining_poly(self):
        """(polynomial P, target interval) such that the set is P^{-1}(target).

        Only available for the preimage-type kinds.
        """
        k = self.kind
        if k == "star_even":
            return _monomial(self.m), (-2.0, 2.0)
        if k == "star_odd":
            return _monomial(self.m), (0.0, 4.0)
        if k == "quadratic":
            return plib.Poly([self.b, self.a, 1.0]), (-2.0, 2.0)
        if k == "poly_preimage":
            return self.p, (float(self.target[0]), float(self.target[1]))
        raise DomainError(f"{k} is not a polynomial preimage")

    def capacity(self) -> CapacityResult:
        k = self.kind
        if k == "interval":
            return cap_interval(self.a.real, self.b.real)
        if k == "arc":
            # arc of half-angle alpha on the unit circle
            return CapacityResult(value=math.sin(self.alpha / 2.0),
                                  route="interval-formula")
        if k == "spiked_circle":
            return cap_spiked_circle(self.n, self.l)
        p, (ta, tb) = self.defining_poly()
        return cap_preimage(cap_interval(ta, tb).value, p.lead, p.degree)

    def residual(self, z) -> float:
        """Distance-style defect of z from the defining relation of the set."""
        k = self.kind
        z = complex(z)
        if k == "interval":
            return _dist_to_segment(z, self.a.real, self.b.real)
        if k == "arc":
            r_def = abs(abs(z) - 1.0)
            ang = abs(cmath.phase(z))
            return max(r_def, max(0.0, ang - self.alpha))
        if k == "spiked_circle":
            R = spiked_circle_radius(self.n, self.l)
            N = 4 * (2 * self.n + self.l - 1)
            on_circle = abs(abs(z) - 1.0)
            wN = z ** N
            on_spike = _dist_to_segment(wN, 1.0, R ** N)
            return min(on_circle, on_spike)
        p, (ta, tb) = self.defining_poly()
        return _dist_to_segment(p(z), ta, tb)

    # -- JSON wire format ------------------------------------------------
    def to_json(self) -> dict:
        k = self.kind
        if k == "interval":
            return {"kind": k, "a": _num(self.a), "b": _num(self.b)}
        if k == "arc":
            return {"kind": k, "alpha": self.alpha}
        if k in ("star_even", "star_odd"):
            return {"kind": k, "m": self.m}
        if k == "quadratic":
            return {"kind": k, "a": _num(self.a), "b": _num(self.b)}
        if k == "spiked_circle":
            return {"kind": k, "n": self.n, "l": self.l}
        return {"kind": k, "coeffs": [_num(c) for c in self.p.coeffs],
                "target": [float(self.target[0]), float(self.target[1])]}

    @staticmethod
    def from_json(obj: dict) -> "SetSpec":
        if "kind" not in obj:
            raise ValueError("set spec needs a 'kind' field")
        k = obj["kind"]
        known = {
            "interval": {"a", "b"},
            "arc": {"alpha"},
            "star_even": {"m"},
            "star_odd": {"m"},
            "quadratic": {"a", "b"},
            "spiked_circle": {"n", "l"},
            "poly_preimage": {"coeffs", "target"},
        }
        if k not in known:
            raise ValueError(f"unknown set kind {k!r}")
        extra = set(obj) - known[k] - {"kind"}
        if extra:
            raise ValueError(f"unknown keys {sorted(extra)} for kind {k!r}")
        if k == "interval":
            return SetSpec(kind=k, a=_cplx(obj["a"]), b=_cplx(obj["b"]))
        if k == "arc":
            return SetSpec(kind=k, alpha=float(obj["alpha"]))
        if k in ("star_even", "star_odd"):
            return SetSpec(kind=k, m=int(obj["m"]))
        if k == "quadratic":
            return SetSpec(kind=k, a=_cplx(obj["a"]), b=_cplx(obj["b"]))
        if k == "spiked_circle":
            return SetSpec(kind=k, n=int(obj["n"]), l=int(obj["l"]))
        coeffs = [_cplx(c) for c in obj["coeffs"]]
        ta, tb = obj["target"]
        return SetSpec(kind=k, p=plib.Poly(coeffs),
                       target=(float(ta), float(tb)))


def _monomial(m: int) -> plib.Poly:
    return plib.Poly([0.0] * m + [1.0])


def _num(c):
    c = complex(c)
    return c.real if c.imag == 0 else [c.real, c.imag]


def _cplx(v) -> complex:
    if isinstance(v, (list, tuple)):
        re, im = v
        return complex(float(re), float(im))
    return complex(float(v))


def _dist_to_segment(w, a: float, b: float) -> float:
    w = complex(w)
    x = min(max(w.real, a), b)
    return abs(w - x)


@dataclass(frozen=True)
class DiscreteSet:
    """A finite sampling of a SetSpec for the discrete minimax solver."""

    points: tuple
    source: SetSpec
    per_edge_count: int
    clustering: str = ARCSINE

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)

    def __len__(self):
        return len(self.points)


def _lobatto(a: float, b: float, count: int) -> np.ndarray:
    """count Chebyshev-Lobatto points of [a, b], endpoints included exactly."""
    if count < 2:
        raise ValueError("need at least 2 sample points")
    theta = np.pi * np.arange(count) / (count - 1)
    x = np.cos(theta)[::-1]
    pts = 0.5 * (a + b) + 0.5 * (b - a) * x
    pts[0], pts[-1] = a, b
    return pts


def _param_samples(a: float, b: float, count: int, clustering: str):
    if clustering == ARCSINE:
        return _lobatto(a, b, count)
    if clustering == UNIFORM:
        return np.linspace(a, b, count)
    raise ValueError(f"unknown clustering {clustering!r}")


def default_per_edge(degree: int, edges: int) -> int:
    """Sampling density rule: extremal points cluster like Chebyshev points."""
    return max(50, (60 * degree) // max(edges, 1))


def discretize(spec: SetSpec, per_edge: int,
               clustering: str = ARCSINE, tol: float = 1e-12,
               seed: int = 0) -> DiscreteSet:
    """Sample the set with per_edge points per edge.

    Arcsine clustering places parameter samples at Chebyshev-Lobatto points of
    the target interval before pulling them back through the defining
    polynomial, so the defining endpoints are always included.
    """
    if per_edge < 8:
        raise ValueError("per_edge must be >= 8")
    k = spec.kind
    if k == "interval":
        pts = _param_samples(spec.a.real, spec.b.real, per_edge, clustering)
        pts = pts.astype(complex)
    elif k == "arc":
        th = _param_samples(-spec.alpha, spec.alpha, per_edge, clustering)
        pts = np.exp(1j * th)
    elif k == "spiked_circle":
        N = 4 * (2 * spec.n + spec.l - 1)
        R = spiked_circle_radius(spec.n, spec.l)
        circle = np.exp(2j * np.pi * np.arange(per_edge) / per_edge)
        spikes = []
        radial = _param_samples(1.0, R, per_edge, clustering)
        for j in range(N):
            spikes.append(radial * np.exp(2j * np.pi * j / N))
        pts = np.concatenate([circle] + spikes)
    else:
        p, (ta, tb) = spec.defining_poly()
        deg = p.degree
        edges = spec.edge_count()
        n_targets = max(2, (per_edge * edges) // deg)
        targets = _param_samples(ta, tb, n_targets, clustering)
        if k in ("star_even", "star_odd"):
            pts = _monomial_preimage(spec.m, targets)
        elif k == "quadratic":
            pts = _quadratic_preimage(spec.a, spec.b, targets)
        else:
            groups = plib.preimage_points(p, targets, tol=max(tol, 1e-13),
                                          seed=seed)
            pts = np.concatenate(groups)
    return DiscreteSet(points=tuple(pts), source=spec,
                       per_edge_count=per_edge, clustering=clustering)


def _monomial_preimage(m: int, targets) -> np.ndarray:
    out = []
    unit = np.exp(2j * np.pi * np.arange(m) / m)
    for t in targets:
        r = complex(t) ** (1.0 / m) if t != 0 else 0.0
        out.extend(r * unit)
    return np.array(out)


def _quadratic_preimage(a, b, targets) -> np.ndarray:
    out = []
    a, b = complex(a), complex(b)
    for t in targets:
        s = cmath.sqrt(a * a / 4.0 - b + t)
        out.append(-a / 2.0 + s)
        out.append(-a / 2.0 - s)
    return np.array(out)


# -- spiked circles -------------------------------------------------------

def _spiked_interval_endpoint(n: int, l: int) -> float:
    """The c > 2 with arcsine mass of the circle part (2n+1)/(4n+l).

    Under z -> z^N followed by v = z + 1/z, the exterior of the spiked circle
    maps (with derivative 1 at infinity) to the exterior of [-2, c] where the
    circle covers [-2, 2]; the mass condition inverts in closed form.
    """
    if n < 1 or l not in (1, 3):
        raise ValueError("need n >= 1 and l in {1, 3}")
    mu = (2 * n + 1) / (4 * n + l)
    q = math.cos(math.pi * mu)
    return (6.0 + 2.0 * q) / (1.0 - q)


def spiked_circle_radius(n: int, l: int) -> float:
    """Spike outer radius R with mu(circle) = (2n+1)/(4n+l)."""
    c = _spiked_interval_endpoint(n, l)
    N = 4 * (2 * n + l - 1)
    rho = (c + math.sqrt(c * c - 4.0)) / 2.0
    return rho ** (1.0 / N)


def cap_spiked_circle(n: int, l: int) -> CapacityResult:
    """Capacity via the interval reduction: ((2+c)/4)^(1/N)."""
    c = _spiked_interval_endpoint(n, l)
    N = 4 * (2 * n + l - 1)
    return CapacityResult(value=((2.0 + c) / 4.0) ** (1.0 / N),
                          route=ROUTE_SPIKED)


def spiked_circle_mass_check(n: int, l: int) -> float:
    """Recompute the circle mass from the returned radius (consistency)."""
    N = 4 * (2 * n + l - 1)
    R = spiked_circle_radius(n, l)
    rho = R ** N
    c = rho + 1.0 / rho
    return interval_harmonic_measure(-2.0, c, 2.0)


# -- conformal map off the plus-shaped star -------------------------------

def phi_star(z) -> complex:
    """Conformal map of the complement of the m=2 star onto |w| > 1.

    phi(z) = sqrt(z^2/2 + sqrt((z^2/2)^2 - 1)) with branches chosen so that
    phi(z) ~ z at infinity; boundary points map to the unit circle.
    """
    z = complex(z)
    u = z * z / 2.0
    w = exterior_map_unit(u)
    s = cmath.sqrt(w)
    if z != 0 and (s.real * z.real + s.imag * z.imag) < 0:
        s = -s
    return s


def shabat_example() -> tuple:
    """The built-in degree-7 Shabat polynomial and its tree target [0, 1].

    P(z) = 8/729 * (z+1) * (z^2 - 3/2 z + 9/2)^3 has critical values 0 and 1;
    its preimage of [0, 1] is a balanced planar tree with 7 edges.
    """
    inner = plib.Poly([4.5, -1.5, 1.0])
    p = plib.Poly([1.0, 1.0]) * inner * inner * inner * (8.0 / 729.0)
    return p, (0.0, 1.0)


def shabat_spec() -> SetSpec:
    p, target = shabat_example()
    return SetSpec(kind="poly_preimage", p=p, target=target)
