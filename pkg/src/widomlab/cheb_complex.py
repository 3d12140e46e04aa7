"""Chebyshev polynomials of compact plane sets.

A discrete complex minimax solver (convex epigraph formulation with a
Kolmogorov dual certificate) for arbitrary point sets, plus the exact
reductions that bypass discretization: composition through a polynomial
preimage, the star-set symmetry reduction to a weighted problem on [-1, 1],
and the odd-degree quadratic reduction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np
from scipy.linalg import solve_triangular
from scipy.optimize import nnls

from . import cheb_real
from .errors import DegenerateSet, NonConvergence
from .poly import Poly, compose

ROUTE_EXACT = "exact"
ROUTE_REMEZ = "remez"
ROUTE_DISCRETE = "discrete"


@dataclass(frozen=True)
class ComplexMinimaxSolution:
    poly: Poly               # monic minimizer on the discrete set
    norm: float              # max |p(z)| over the set
    active_points: tuple     # of (z, |p(z)|) carrying the certificate
    dual_witness: tuple      # of (index into the set, lambda >= 0)
    gap: float               # certified relative optimality gap


@dataclass(frozen=True)
class StarNormResult:
    norm: float
    poly: Optional[Poly]
    route: str


def _points_array(S) -> np.ndarray:
    if hasattr(S, "as_array"):
        return S.as_array()
    return np.asarray(S, dtype=complex)


def solve_discrete_minimax(S, n: int, tol: float = 1e-6
                           ) -> ComplexMinimaxSolution:
    """Monic degree-n polynomial minimizing max |p| over a finite point set.

    The monomial basis is orthonormalized by a QR factorization of the
    Vandermonde matrix; in that basis the problem is a small second-order
    cone program.  Optimality is certified by a nonnegative dual witness
    satisfying the Kolmogorov stationarity conditions, recovered by
    nonnegative least squares on the active points.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    if not 0 < tol <= 1e-2:
        raise ValueError("tol must lie in (0, 1e-2]")
    z = _points_array(S)
    if len(np.unique(np.round(z, 14))) < n + 1:
        raise DegenerateSet(
            f"need at least {n + 1} distinct points, got fewer")

    # work in y = z/s with s a discrete capacity estimate, so the minimax
    # value stays O(1); monic in y maps back by p(z) = s^n q(z/s)
    s = _scale_estimate(z)
    y = z / s
    V = np.vander(y, n + 1, increasing=True)
    Q, R = np.linalg.qr(V)

    a = cp.Variable(n + 1, complex=True)
    t = cp.Variable(nonneg=True)
    cons = [cp.abs(Q @ a) <= t, a[n] == R[n, n]]
    prob = cp.Problem(cp.Minimize(t), cons)
    try:
        with warnings.catch_warnings():
            # reduced-accuracy statuses are fine: optimality is certified
            # independently by the dual witness below
            warnings.simplefilter("ignore")
            prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12,
                       tol_gap_rel=1e-12, tol_feas=1e-12)
    except cp.error.SolverError as exc:
        raise NonConvergence(f"cone solver failed: {exc}") from exc
    if a.value is None:
        raise NonConvergence(f"cone solver status {prob.status!r}")

    # values from the orthonormal basis (stable even when R is
    # ill-conditioned and the power-basis coefficients are not)
    qvals = Q @ a.value
    coeffs = solve_triangular(R, a.value)
    coeffs[n] = 1.0
    absq = np.abs(qvals)
    qnorm = float(absq.max())

    witness_idx, lam, stat_res = _best_witness(y, Q, qvals, qnorm, n, tol)
    coeffs = coeffs * s ** (n - np.arange(n + 1))
    pvals = qvals * s ** n
    absv = np.abs(pvals)
    norm = float(absv.max())
    active = tuple((complex(z[i]), float(absv[i])) for i in witness_idx)
    gap_active = 1.0 - min(absv[i] for i in witness_idx) / norm
    gap = float(max(stat_res, gap_active, 0.0))
    if gap > tol:
        raise NonConvergence(
            f"certified gap {gap:.3e} exceeds tol {tol:.3e}")
    return ComplexMinimaxSolution(
        poly=Poly(coeffs), norm=norm, active_points=active,
        dual_witness=tuple((int(i), float(w))
                           for i, w in zip(witness_idx, lam)),
        gap=gap)


def _scale_estimate(z: np.ndarray) -> float:
    """Geometric-mean pairwise distance, a transfinite-diameter estimate.

    Capped by max|z| so that certificates computed in the scaled variable
    transfer to monomial-basis bounds on the original points.
    """
    zmax = max(float(np.max(np.abs(z))), 1e-300)
    zz = z
    if len(zz) > 1200:
        idx = np.random.default_rng(0).choice(len(zz), 1200, replace=False)
        zz = zz[np.sort(idx)]
    d = np.abs(zz[:, None] - zz[None, :])
    d = d[d > 0]
    if len(d) == 0:
        return zmax
    return min(max(float(np.exp(np.mean(np.log(d)))), 1e-300), zmax)


def _best_witness(y, Q, qvals, qnorm, n, tol):
    """Try a ladder of active-set thresholds; keep the best combined gap.

    Tight thresholds keep the support flat but may starve the stationarity
    system; loose ones do the opposite.  The certificate only needs one
    threshold to work.
    """
    best = None
    absq = np.abs(qvals)
    delta = 1e-9
    while True:
        idx, lam, stat = _dual_witness(y, Q, qvals, qnorm, n, delta / 10.0)
        gap = max(stat, 1.0 - min(absq[i] for i in idx) / qnorm)
        if best is None or gap < best[3]:
            best = (idx, lam, stat, gap)
        if gap <= tol / 2.0 or delta >= 10.0 * max(tol, 1e-9):
            break
        delta *= 10.0
    return best[0], best[1], best[2]


def _dual_witness(z, Q, pvals, norm, n, tol):
    """Kolmogorov certificate: lambda >= 0, sum 1, orthogonal to directions.

    The stationarity system uses the orthonormal columns of Q (degrees < n)
    for conditioning; the reported residual is rescaled to the monomial-basis
    bound |sum lambda_j conj(p_j) z_j^k| <= gap * norm * max|z|^k.
    """
    absv = np.abs(pvals)
    thresh = norm * (1.0 - 10.0 * max(tol, 1e-9))
    cand = np.nonzero(absv >= thresh)[0]
    if len(cand) == 0:
        cand = np.array([int(np.argmax(absv))])
    # rows: Re/Im of conj(p_j) q_k(z_j) for k < n, then the mass row
    B = np.conj(pvals[cand])[None, :] * Q[cand, :n].T / norm
    M = np.vstack([B.real, B.imag, np.ones((1, len(cand)))])
    rhs = np.zeros(M.shape[0])
    rhs[-1] = 1.0
    lam, _ = nnls(M, rhs)
    s = lam.sum()
    if s <= 0:
        raise NonConvergence("empty dual witness")
    lam = lam / s

    zc = z[cand]
    maxabs = max(1.0, float(np.max(np.abs(z))))
    stat = 0.0
    wpc = lam * np.conj(pvals[cand])
    zpow = np.ones_like(zc)
    for k in range(n):
        stat = max(stat, abs(np.sum(wpc * zpow)) / (norm * maxabs ** k))
        zpow = zpow * zc
    keep = lam > 1e-12
    return cand[keep], lam[keep], stat


# ---------------------------------------------------------------------------
# exact reductions
# ---------------------------------------------------------------------------

def monic_chebyshev(n: int, interval: Tuple[float, float] = (-2.0, 2.0)
                    ) -> Poly:
    """Monic Chebyshev polynomial of an interval; sup norm 2((b-a)/4)^n."""
    a, b = interval
    if not a < b:
        raise ValueError("need a < b")
    c0, c1 = Poly([2.0]), Poly([0.0, 1.0])
    if n == 0:
        C = c0
    else:
        prev, cur = c0, c1
        for _ in range(n - 1):
            prev, cur = cur, Poly([0.0, 1.0]) * cur - prev
        C = cur
    u = Poly([-2.0 * (a + b) / (b - a), 4.0 / (b - a)])
    return ((b - a) / 4.0) ** n * compose(C, u)


def compose_chebyshev(inner: Poly, n: int,
                      interval: Tuple[float, float] = (-2.0, 2.0)
                      ) -> Tuple[Poly, float]:
    """Exact Chebyshev polynomial of the preimage of an interval.

    For monic T_n of the interval and inner polynomial P with leading
    coefficient a, the monic Chebyshev polynomial of P^{-1}(interval) at
    degree n*deg(P) is T_n(P(z)) / a^n, with norm 2((b-a)/4)^n / |a|^n.
    """
    if inner.degree < 1:
        raise ValueError("inner polynomial must be nonconstant")
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = interval
    C = monic_chebyshev(n, interval)
    T = compose(C, inner) * (1.0 / inner.lead ** n)
    norm = 2.0 * ((b - a) / 4.0) ** n / abs(inner.lead) ** n
    return T, norm


def star_degree_split(m: int, degree: int) -> Tuple[int, int]:
    """Unique decomposition degree = 2nm + l with 0 <= l < 2m."""
    if m < 1 or degree < 1:
        raise ValueError("need m >= 1 and degree >= 1")
    return degree // (2 * m), degree % (2 * m)


def star_norm(m: int, degree: int, tol: float = 1e-12) -> StarNormResult:
    """Chebyshev norm of {z : z^m in [-2,2]} at any degree.

    Degrees that are multiples of m are exact compositions (norm 2); degrees
    below 2m are monomials with norm 2^(degree/m); the rest reduce by the
    substitution x = z^(2m)/2 - 1 to the weighted problem
    min max (1+x)^(l/2m) |q_n(x)| on [-1, 1], with
    norm = 2^(n + l/2m) * (weighted minimax value).
    """
    n, l = star_degree_split(m, degree)
    if l == 0 or l == m:
        k = degree // m
        T, norm = compose_chebyshev(Poly([0.0] * m + [1.0]), k)
        return StarNormResult(norm=norm, poly=T, route=ROUTE_EXACT)
    if n == 0:
        mono = Poly([0.0] * degree + [1.0])
        return StarNormResult(norm=2.0 ** (l / m), poly=mono,
                              route=ROUTE_EXACT)
    w = cheb_real.Weight(singular=((-1.0, l / (2.0 * m)),))
    sol = cheb_real.remez_weighted(w, n, tol=tol)
    norm = 2.0 ** (n + l / (2.0 * m)) * sol.norm
    # reconstruct: T(z) = z^l Q(z^(2m)), Q(u) = 2^n q(u/2 - 1)
    Qu = 2.0 ** n * compose(sol.poly, Poly([-1.0, 0.5]))
    coeffs = np.zeros(degree + 1, dtype=complex)
    for j, cj in enumerate(Qu.coeffs):
        coeffs[2 * m * j + l] = cj
    return StarNormResult(norm=norm, poly=Poly(coeffs), route=ROUTE_REMEZ)


def quadratic_odd_norm(c, n: int, tol: float = 1e-12) -> float:
    """Chebyshev norm at odd degree 2n+1 of {z : z^2 + c in [-2, 2]}.

    The substitution x = (z^2 + c)/2 gives
    norm = 2^(n + 1/2) * min max sqrt|x - c/2| |q_n(x)| on [-1, 1]; the
    weight is a singular factor when c/2 lands on the interval and a smooth
    strictly positive factor otherwise.
    """
    c = complex(c)
    half = c / 2.0
    if n == 0:
        reach = max(abs(1.0 - half), abs(1.0 + half))
        return math.sqrt(2.0 * reach)
    if half.imag == 0 and -1.0 <= half.real <= 1.0:
        w = cheb_real.Weight(singular=((half.real, 0.5),))
    else:
        def smooth(x, half=half):
            return np.sqrt(np.abs(np.asarray(x, dtype=float) - half))
        bound = math.sqrt(abs(half) + 1.0) / math.sqrt(
            max(abs(half.imag), abs(half.real) - 1.0))
        w = cheb_real.Weight(smooth=smooth, bound=max(2.0, bound))
    sol = cheb_real.remez_weighted(w, n, tol=tol)
    return 2.0 ** (n + 0.5) * sol.norm
