"""Weighted Chebyshev problems on [-1, 1].

Three routes to the norm of the weighted minimax monic polynomial:

* an equioscillation (Remez-exchange) solver with barycentric levelling,
* Bernstein's asymptotic predictor (closed-form singular factors plus
  trapezoid quadrature in the cosine variable for the smooth factor),
* Achieser's exact closed form for weights prod (1 - x/a_k)^(-1/2).
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, NonConvergence, UnsupportedWeight
from .poly import Poly
from .potential import exterior_map_unit, log_potential_interval


@dataclass(frozen=True)
class Weight:
    """w(x) = smooth(x) * prod |x - b_k|^(alpha_k) on [-1, 1].

    The smooth factor must be Riemann integrable with 1/M <= smooth <= M and
    accept numpy arrays.  Singular factors with |b_k| > 1 are smooth on the
    interval and only kept separate so the predictor can use the closed-form
    log-potential.
    """

    smooth: Optional[Callable] = None
    singular: tuple = field(default_factory=tuple)  # of (b, alpha)
    bound: float = 1.0  # the constant M for the smooth factor

    def __post_init__(self):
        if self.bound < 1.0:
            raise ValueError("bound M must be >= 1")
        bs = [b for b, _ in self.singular]
        if len(set(bs)) != len(bs):
            raise ValueError("singular points must be pairwise distinct")
        object.__setattr__(self, "singular",
                           tuple((float(b), float(a)) for b, a in self.singular))

    def smooth_value(self, x):
        x = np.asarray(x, dtype=float)
        return np.ones_like(x) if self.smooth is None else \
            np.asarray(self.smooth(x), dtype=float)

    def value(self, x):
        x = np.asarray(x, dtype=float)
        w = self.smooth_value(x).copy()
        for b, a in self.singular:
            w = w * np.abs(x - b) ** a
        return w

    def interior_singular(self):
        """Singular factors with b on [-1, 1]; the rest act as smooth factors."""
        return [(b, a) for b, a in self.singular if -1.0 <= b <= 1.0]


@dataclass(frozen=True)
class MinimaxSolution:
    poly: Poly            # monic minimizer
    norm: float           # minimax value max w|p|
    extrema: tuple        # ordered (x, signed w(x) p(x)) pairs
    gap: float            # levelled-error ratio minus one
    iterations: int


def unit_weight() -> Weight:
    return Weight()


# ---------------------------------------------------------------------------
# negative-integer singular exponents: forced zero factors
# ---------------------------------------------------------------------------

def reduce_negative(w: Weight):
    """Strip negative-integer exponents at interior points into a forced factor.

    The minimizer of the original degree-n problem is the forced monic factor
    prod (x - b_k)^(m_k) times the minimizer of the cleaned problem at degree
    n - sum m_k, and the two minimax values coincide.
    """
    forced = Poly([1.0])
    kept = []
    for b, a in w.singular:
        if a >= 0 or not -1.0 <= b <= 1.0:
            kept.append((b, a))
            continue
        if a != int(a):
            raise UnsupportedWeight(
                f"negative non-integer exponent {a} at interior point {b}")
        mult = -int(a)
        for _ in range(mult):
            forced = forced * Poly([-b, 1.0])
    cleaned = Weight(smooth=w.smooth, singular=tuple(kept), bound=w.bound)
    return cleaned, forced


# ---------------------------------------------------------------------------
# Remez exchange with barycentric levelling
# ---------------------------------------------------------------------------

def _bary_weights(x: np.ndarray) -> np.ndarray:
    n = len(x)
    beta = np.ones(n)
    for i in range(n):
        d = x[i] - np.delete(x, i)
        beta[i] = 1.0 / np.prod(d)
    return beta


def _bary_eval(x: np.ndarray, v: np.ndarray, beta: np.ndarray, grid):
    grid = np.asarray(grid, dtype=float)
    num = np.zeros_like(grid)
    den = np.zeros_like(grid)
    exact = np.full(len(grid), -1, dtype=int)
    for i, xi in enumerate(x):
        diff = grid - xi
        hit = diff == 0.0
        exact[hit] = i
        diff[hit] = 1.0
        c = beta[i] / diff
        num += c * v[i]
        den += c
    with np.errstate(invalid="ignore", divide="ignore"):
        out = num / den
    mask = exact >= 0
    out[mask] = v[exact[mask]]
    return out


def _cheb_lobatto(n: int) -> np.ndarray:
    return np.sin(np.pi * np.arange(-(n - 1), n, 2) / (2 * (n - 1)))


def _initial_reference(w: Weight, n: int) -> np.ndarray:
    ref = _cheb_lobatto(n + 1).copy()
    wv = w.value(ref)
    for i in np.nonzero(wv < 1e-300)[0]:
        # w vanishes here, so this point cannot be extremal; nudge by half
        # the local mesh
        if i == 0:
            ref[i] += 0.5 * (ref[1] - ref[0])
        elif i == len(ref) - 1:
            ref[i] -= 0.5 * (ref[i] - ref[i - 1])
        else:
            ref[i] += 0.25 * (ref[i + 1] - ref[i])
    return np.sort(ref)


def _local_maxima(grid: np.ndarray, absval: np.ndarray):
    idx = []
    g = absval
    for i in range(len(g)):
        left = g[i - 1] if i > 0 else -np.inf
        right = g[i + 1] if i < len(g) - 1 else -np.inf
        if g[i] >= left and g[i] >= right:
            idx.append(i)
    return idx


def _refine_maximum(f, lo: float, hi: float, x0: float) -> float:
    if hi - lo < 1e-15:
        return x0
    res = minimize_scalar(lambda x: -abs(f(np.array([x]))[0]),
                          bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    return float(res.x)


def _select_alternating(cands, n_pts: int):
    """Reduce (x, e) candidates to an alternating reference of n_pts points."""
    cands = sorted(cands, key=lambda t: t[0])
    # collapse runs of equal sign, keeping the largest magnitude
    runs = []
    for x, e in cands:
        s = 1 if e >= 0 else -1
        if runs and runs[-1][2] == s:
            if abs(e) > abs(runs[-1][1]):
                runs[-1] = (x, e, s)
        else:
            runs.append((x, e, s))
    pts = [(x, e) for x, e, _ in runs]
    if len(pts) < n_pts:
        return None
    while len(pts) > n_pts:
        if len(pts) == n_pts + 1:
            if abs(pts[0][1]) < abs(pts[-1][1]):
                pts.pop(0)
            else:
                pts.pop()
        else:
            j = min(range(len(pts)), key=lambda i: abs(pts[i][1]))
            if j == 0:
                pts.pop(0)
            elif j == len(pts) - 1:
                pts.pop()
            else:
                # dropping an interior point leaves two neighbours of equal
                # sign; drop the weaker of the two as well
                k = j - 1 if abs(pts[j - 1][1]) < abs(pts[j + 1][1]) else j + 1
                for idx in sorted((j, k), reverse=True):
                    pts.pop(idx)
    return pts


def remez_weighted(w: Weight, n: int, tol: float = 1e-12,
                   max_iter: int = 200, grid_size: Optional[int] = None
                   ) -> MinimaxSolution:
    """Monic minimizer of max over [-1,1] of w(x) |p(x)| by Remez exchange.

    Negative integer exponents at interior points are handled by factoring
    the forced zeros out first; negative non-integer interior exponents are
    rejected (the asymptotic predictor still applies to those).
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if not 0 < tol <= 1e-2:
        raise ValueError("tol must lie in (0, 1e-2]")
    cleaned, forced = reduce_negative(w)
    shift = forced.degree
    if shift:
        if shift >= n:
            raise UnsupportedWeight(
                "forced zero multiplicity reaches the requested degree")
        inner = _remez_core(cleaned, n - shift, tol, max_iter, grid_size)
        return MinimaxSolution(poly=inner.poly * forced, norm=inner.norm,
                               extrema=inner.extrema, gap=inner.gap,
                               iterations=inner.iterations)
    return _remez_core(cleaned, n, tol, max_iter, grid_size)


def _remez_core(w: Weight, n: int, tol: float, max_iter: int,
                grid_size: Optional[int]) -> MinimaxSolution:
    ref = _initial_reference(w, n)
    G = grid_size or max(4000, 40 * n)
    grid = np.cos(np.pi * np.arange(G + 1) / G)[::-1]
    wgrid = w.value(grid)

    best = None
    for it in range(1, max_iter + 1):
        beta = _bary_weights(ref)
        wref = w.value(ref)
        if np.any(wref <= 0):
            raise NonConvergence("reference point hit a zero of the weight")
        signs = (-1.0) ** np.arange(n + 1)
        lam = np.sum(signs * beta / wref)
        if lam == 0:
            raise NonConvergence("degenerate levelling system")
        level_signed = 1.0 / lam
        v = signs * level_signed / wref
        level = abs(level_signed)

        def err(xs, ref=ref, v=v, beta=beta):
            return w.value(xs) * _bary_eval(ref, v, beta, xs)

        e_grid = err(grid)
        abs_e = np.abs(e_grid)
        cands = []
        for i in _local_maxima(grid, abs_e):
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, G)]
            x = _refine_maximum(err, lo, hi, grid[i])
            cands.append((x, float(err(np.array([x]))[0])))
        cands.extend((float(x), float(err(np.array([x]))[0])) for x in ref)
        seen = {}
        for x, e in cands:
            key = round(x, 14)
            if key not in seen or abs(e) > abs(seen[key][1]):
                seen[key] = (x, e)
        new_ref = _select_alternating(seen.values(), n + 1)
        if new_ref is None:
            raise NonConvergence("could not assemble an alternating reference")

        max_err = max(abs(e) for _, e in seen.values())
        gap = max_err / level - 1.0
        state = (ref, v, beta, level_signed, max_err, gap, it)
        if best is None or gap < best[5]:
            best = state
        if gap <= tol:
            best = state
            break
        ref = np.array(sorted(x for x, _ in new_ref))
    else:
        if best is None or best[5] > tol:
            gotten = best[5] if best is not None else math.inf
            raise NonConvergence(
                f"Remez gap {gotten:.3e} after {max_iter} iterations")

    ref, v, beta, level_signed, max_err, gap, it = best
    coeffs = _interpolant_coeffs(ref, v, beta, n)
    signs = (-1.0) ** np.arange(n + 1)
    extrema = tuple((float(x), float(s * level_signed))
                    for x, s in zip(ref, signs))
    return MinimaxSolution(poly=Poly(coeffs), norm=float(max_err),
                           extrema=extrema, gap=float(gap), iterations=it)


def _interpolant_coeffs(ref, v, beta, n) -> np.ndarray:
    """Power-basis coefficients of the degree-n barycentric interpolant."""
    nodes = np.cos(np.pi * np.arange(n + 1) / max(n, 1))
    vals = _bary_eval(ref, v, beta, nodes)
    series = np.polynomial.chebyshev.Chebyshev.fit(nodes, vals, n,
                                                   domain=[-1, 1])
    coeffs = np.polynomial.chebyshev.cheb2poly(series.coef)
    out = np.zeros(n + 1)
    out[: len(coeffs)] = coeffs
    out[n] = 1.0  # monic by construction; clamp rounding noise
    return out


def equioscillation_audit(sol: MinimaxSolution, w: Weight,
                          degree: Optional[int] = None) -> bool:
    """Check the alternation certificate of a Remez solution."""
    ex = sol.extrema
    vals = np.array([e for _, e in ex])
    if np.any(np.sign(vals[:-1]) == np.sign(vals[1:])):
        return False
    mags = np.abs(vals)
    lo = sol.norm * (1.0 - sol.gap) - 1e-12 * sol.norm
    return bool(np.all(mags >= lo) and np.all(mags <= sol.norm * (1 + 1e-12)))


# ---------------------------------------------------------------------------
# Bernstein's asymptotic predictor
# ---------------------------------------------------------------------------

def bernstein_predict(w: Weight, n: int, quad_nodes: int = 2048) -> float:
    """2^(1-n) exp{(1/pi) int log w / sqrt(1-x^2)}; singular parts closed form.

    The smooth factor integrates by the substitution x = cos(theta) with a
    quad_nodes-point midpoint rule (spectrally accurate for the periodic
    integrand); each singular factor contributes through the closed-form
    log-potential of its base point.
    """
    theta = (np.arange(quad_nodes) + 0.5) * np.pi / quad_nodes
    smooth_part = float(np.mean(np.log(w.smooth_value(np.cos(theta)))))
    singular_part = sum(a * log_potential_interval(b)
                        for b, a in w.singular)
    return 2.0 ** (1 - n) * math.exp(smooth_part + singular_part)


# ---------------------------------------------------------------------------
# Achieser's exact closed form
# ---------------------------------------------------------------------------

def _check_achieser_points(a: Sequence) -> list:
    pts = list(a)
    if len(pts) % 2 == 1:
        pts.append(math.inf)
    for ak in pts:
        if not math.isinf(ak) and abs(ak) <= 1.0:
            raise DomainError(f"base point {ak} lies in [-1, 1]")
    return pts


def achieser_weight(a: Sequence) -> Weight:
    """The weight prod (1 - x/a_k)^(-1/2) as a Weight value.

    Repeated base points are folded into a single factor with summed
    exponent; each factor (1 - x/a)^(-1/2) splits as |a|^(1/2) |x - a|^(-1/2).
    """
    pts = [ak for ak in _check_achieser_points(a) if not math.isinf(ak)]
    const = math.prod(abs(ak) ** 0.5 for ak in pts)
    cnt = Counter(pts)
    singular = tuple((ak, -0.5 * c) for ak, c in sorted(cnt.items()))
    return Weight(smooth=lambda x: np.full_like(np.asarray(x, float), const),
                  singular=singular, bound=max(2.0, const))


def achieser_norm(a: Sequence, n: int) -> float:
    """Exact minimax value for the weight prod (1 - x/a_k)^(-1/2), n > m."""
    pts = _check_achieser_points(a)
    m = len(pts) // 2
    if n <= m:
        raise ValueError(f"need degree n > {m} for this weight")
    log_term = 0.0
    for ak in pts:
        if math.isinf(ak):
            continue
        log_term += -0.5 * (log_potential_interval(ak) - math.log(abs(ak)))
    return 2.0 ** (1 - n) * math.exp(log_term)


def achieser_eval(a: Sequence, n: int, x: float) -> float:
    """The weighted minimizer w(x) T_n(x) from the two-term closed form."""
    pts = _check_achieser_points(a)
    m = len(pts) // 2
    if n <= m:
        raise ValueError(f"need degree n > {m} for this weight")
    if not -1.0 <= x <= 1.0:
        raise DomainError("x must lie in [-1, 1]")
    z = complex(x, math.sqrt(max(0.0, 1.0 - x * x)))
    amp = 2.0 ** (-n)
    term = z ** (m - n)
    for ak in pts:
        rho = 0.0 if math.isinf(ak) else 1.0 / exterior_map_unit(ak)
        rho = complex(rho).real  # real base points give real rho
        amp *= math.sqrt(1.0 + rho * rho)
        term *= cmath.sqrt((1.0 - z * rho) / (z - rho))
    return amp * 2.0 * term.real
