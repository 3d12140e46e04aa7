"""Complex polynomial arithmetic, evaluation, composition and root solving.

Coefficients are stored dense in ascending powers: ``coeffs[k]`` multiplies
``z**k``.  Degrees in this project stay below a few hundred, so no sparse
representation is used even for the lacunary star polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonConvergence

_TRIM_TOL = 0.0  # exact zeros only; callers trim noise explicitly if needed


def _trim(coeffs: np.ndarray) -> np.ndarray:
    """Drop trailing zero coefficients (keep at least the constant term)."""
    nz = np.nonzero(coeffs)[0]
    if len(nz) == 0:
        return coeffs[:1]
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True)
class Poly:
    """A dense complex polynomial; immutable and safe to share."""

    coeffs: tuple = field(default_factory=lambda: (0j,))

    def __post_init__(self):
        arr = _trim(np.asarray(self.coeffs, dtype=complex))
        object.__setattr__(self, "coeffs", tuple(arr))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> complex:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return self.lead == 1

    def __call__(self, z):
        return eval_poly(self, z)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(np.asarray(self.coeffs) * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        a, b = np.asarray(self.coeffs), np.asarray(other.coeffs)
        n = max(len(a), len(b))
        out = np.zeros(n, dtype=complex)
        out[: len(a)] += a
        out[: len(b)] += b
        return Poly(out)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-1) * other

    def __repr__(self):
        return f"Poly(degree={self.degree}, coeffs={list(self.coeffs)})"


@dataclass(frozen=True)
class RootSet:
    """Roots of a polynomial with multiplicities and a residual certificate."""

    roots: tuple  # of (location, multiplicity)
    residual: float

    def locations(self) -> np.ndarray:
        return np.array([r for r, _ in self.roots])

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)


def eval_poly(p: Poly, z):
    """Evaluate p at z (scalar or array) by Horner's scheme.

    For |z| > 1 the reversed coefficients are evaluated at 1/z to avoid
    overflow at large arguments.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    c = np.asarray(p.coeffs, dtype=complex)
    inner = np.abs(z) <= 1.0
    if inner.any():
        out[inner] = _horner(c[::-1], z[inner])
    outer = ~inner
    if outer.any():
        w = 1.0 / z[outer]
        # p(z) = z^n * q(1/z) with q the reversed polynomial
        out[outer] = z[outer] ** p.degree * _horner(c, w)
    return out[0] if scalar else out


def _horner(desc_coeffs, z):
    acc = np.zeros_like(z) + desc_coeffs[0]
    for c in desc_coeffs[1:]:
        acc = acc * z + c
    return acc


def compose(p: Poly, q: Poly) -> Poly:
    """Return p(q(z)); degree is deg(p) * deg(q)."""
    acc = Poly([p.coeffs[-1]])
    for c in p.coeffs[-2::-1]:
        acc = acc * q + c
    return acc


def derivative(p: Poly) -> Poly:
    if p.degree == 0:
        return Poly([0j])
    c = np.asarray(p.coeffs)
    return Poly(c[1:] * np.arange(1, len(c)))


def solve_roots(p: Poly, tol: float = 1e-12, max_iter: int = 500,
                seed: int = 0) -> RootSet:
    """All complex roots of p by simultaneous (Durand-Kerner) iteration.

    Starting points are perturbed, radius-scaled roots of unity.  Roots closer
    together than tol**(1/k) for a cluster of size k are merged and reported
    with their summed multiplicity, since a k-fold root is only determined to
    that accuracy from a residual of size tol.
    """
    if p.degree < 1:
        raise ValueError("root solving needs degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = np.asarray(p.coeffs) / p.lead
    n = p.degree
    # Cauchy-style radius bound keeps the iteration in the right scale
    radius = 1.0 + max(abs(c[:-1])) if n > 0 else 1.0
    radius = min(radius, 1e6)
    rng = np.random.default_rng(seed)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = 0.5 * radius * np.exp(1j * angles)
    z *= 1.0 + 0.01 * rng.standard_normal(n)

    monic = Poly(c)
    for _ in range(max_iter):
        pz = eval_poly(monic, z)
        denom = np.empty(n, dtype=complex)
        for i in range(n):
            d = z[i] - np.delete(z, i)
            d[np.abs(d) < 1e-300] = 1e-300
            denom[i] = np.prod(d)
        step = pz / denom
        z = z - step
        if np.max(np.abs(step)) < 1e-15 * max(1.0, np.max(np.abs(z))):
            break

    roots = _cluster_roots(z, tol)
    residual = float(max(abs(eval_poly(p, r)) for r, _ in roots)) / max(
        1.0, abs(p.lead))
    if residual > tol:
        raise NonConvergence(
            f"root residual {residual:.3e} exceeds tol {tol:.3e}")
    if sum(m for _, m in roots) != n:
        raise NonConvergence("root multiplicities do not sum to the degree")
    return RootSet(roots=tuple(roots), residual=residual)


def _cluster_roots(z: np.ndarray, tol: float):
    """Greedy merge of near-coincident roots into multiplicity clusters."""
    clusters = [[zi] for zi in z]

    def centroid(c):
        return sum(c) / len(c)

    merged = True
    while merged and len(clusters) > 1:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                k = len(clusters[i]) + len(clusters[j])
                rad = tol ** (1.0 / k)
                if abs(centroid(clusters[i]) - centroid(clusters[j])) <= rad:
                    clusters[i] = clusters[i] + clusters[j]
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    out = [(centroid(c), len(c)) for c in clusters]
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def preimage_points(p: Poly, targets, tol: float = 1e-10, seed: int = 0):
    """Solve p(z) = t for every target t; output grouped by target.

    Returns a list (one entry per target) of arrays of the deg(p) solutions
    counted with multiplicity.
    """
    targets = list(targets)
    if not targets:
        raise ValueError("targets must be nonempty")
    groups = []
    for t in targets:
        rs = solve_roots(p - t, tol=tol, seed=seed)
        pts = []
        for root, mult in rs.roots:
            pts.extend([root] * mult)
        groups.append(np.array(pts))
    return groups
