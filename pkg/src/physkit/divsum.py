"""Summation of convergent and divergent series.

Partial sums with compensated accumulation, Abel summation by radial
extrapolation, Borel summation by Gauss-Laguerre quadrature of the Borel
transform, and the Euler series ``sum (-1)^j j! x^(j+1)`` compared with its
Stieltjes-integral sum. Every returned value carries the name of the
summation method that produced it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate as _integrate
from scipy.linalg import toeplitz

from ._numerics import call_array, gauss_laguerre, kahan_cumsum
from .errors import ConvergenceError, DomainError, SeriesOverflowError


@dataclass(frozen=True)
class SeriesSpec:
    """Terms ``a_j`` of a numeric series, or coefficients of a power series at ``x``."""

    coeff: Callable[[int], float]
    kind: str = "numeric-series"
    x: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("numeric-series", "power-series-at-x"):
            raise DomainError(f"unknown series kind {self.kind!r}")
        if self.kind == "power-series-at-x" and self.x is None:
            raise DomainError("power-series kind needs x")

    def terms(self, n):
        j = np.arange(n + 1)
        a = np.asarray(call_array(lambda k: self.coeff(k), j), dtype=float)
        if self.kind == "power-series-at-x":
            a = a * float(self.x) ** j
        if not np.all(np.isfinite(a)):
            raise SeriesOverflowError("non-finite series term")
        return a


@dataclass(frozen=True)
class SumResult:
    value: float
    method: str
    spread: float = 0.0
    detail: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)


def partial_sum(spec: SeriesSpec, n: int) -> float:
    """``s_n = sum_{j<=n} a_j`` by compensated summation."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return math.fsum(spec.terms(n))


def partial_sums(spec: SeriesSpec, n: int):
    """All partial sums ``s_0 .. s_n``."""
    return np.asarray(kahan_cumsum(spec.terms(n)))


def leibniz(j):
    return (-1.0) ** np.asarray(j)


def alternating_naturals(j):
    j = np.asarray(j, dtype=float)
    return (-1.0) ** (j + 1) * j


def euler_series_coeff(x):
    """Terms ``(-1)^j j! x^(j+1)`` of the Euler series at ``x``."""
    def a(j):
        j = np.asarray(j)
        lg = np.vectorize(math.lgamma)(j + 1.0)
        with np.errstate(over="ignore"):
            return (-1.0) ** j * np.exp(lg + (j + 1) * math.log(x)) if x > 0 else 0.0 * j
    return a


# --- Abel -----------------------------------------------------------------

def _power_value(coeff, r, tol=1e-18, max_terms=2 ** 23):
    eps = 1.0 - r
    n = int(min(max_terms, math.ceil(42.0 / eps) + 64))
    j = np.arange(n)
    a = np.asarray(call_array(coeff, j), dtype=float)
    logr = math.log1p(-eps)
    w = np.exp(j * logr)
    with np.errstate(over="ignore", invalid="ignore"):
        terms = a * w
    if not np.all(np.isfinite(terms)):
        raise ConvergenceError(f"power-series terms overflow at r = {r}; not Abel summable")
    return math.fsum(terms)


def abel_sum(coeff, eps_powers=range(4, 17)) -> SumResult:
    """Abel sum ``lim_{r->1-} sum a_j r^j``.

    The power series is evaluated at ``r = 1 - 2^-k`` for the given ``k`` and
    the last two values are extrapolated linearly in ``eps = 1 - r``.
    ``spread`` is the change between the last two extrapolants.

    Raises
    ------
    ConvergenceError
        If the radial values grow without bound.
    """
    ks = list(eps_powers)
    if len(ks) < 3:
        raise DomainError("need at least three radii")
    eps = np.array([2.0 ** -k for k in ks])
    vals = np.array([_power_value(coeff, 1.0 - e) for e in eps])
    mags = np.abs(vals)
    growing = all(mags[i + 1] > 1.5 * mags[i] for i in range(len(mags) - 4, len(mags) - 1))
    if growing and mags[-1] > 64 * max(mags[0], 1e-300):
        raise ConvergenceError("radial values diverge; series is not Abel summable")
    # linear extrapolation f(eps) = f0 + c eps through consecutive pairs
    ext = (eps[:-1] * vals[1:] - eps[1:] * vals[:-1]) / (eps[:-1] - eps[1:])
    value = float(ext[-1])
    spread = float(abs(ext[-1] - ext[-2]))
    return SumResult(value, "abel", spread,
                     {"eps": eps.tolist(), "radial": vals.tolist(), "extrapolants": ext.tolist()})


# --- Borel ----------------------------------------------------------------

def _robust_pade(c, m, n, tol=1e-15):
    """Padé approximant from Taylor coefficients by SVD with degree reduction.

    Follows the Gonnet-Guettel-Trefethen construction: the Toeplitz block is
    rank-revealed, degrees are lowered until it has full rank, and the
    denominator is the null vector of the reduced block.
    """
    c = np.asarray(c, dtype=float)[: m + n + 1]
    if len(c) < m + n + 1:
        c = np.concatenate([c, np.zeros(m + n + 1 - len(c))])
    ts = tol * np.linalg.norm(c)
    if np.max(np.abs(c[: m + 1])) <= tol * np.max(np.abs(c)):
        return np.zeros(1), np.ones(1)
    row = np.concatenate([[c[0]], np.zeros(n)])
    while True:
        if n == 0:
            a, b = c[: m + 1].copy(), np.ones(1)
            break
        Z = toeplitz(c[: m + n + 1], row[: n + 1])
        C = Z[m + 1: m + n + 1, :]
        rho = int(np.sum(np.linalg.svd(C, compute_uv=False) > ts))
        if rho == n:
            break
        m, n = m - (n - rho), rho
    if n > 0:
        _, _, Vh = np.linalg.svd(C)
        b = Vh[-1]
        D = np.diag(np.abs(b) + math.sqrt(np.finfo(float).eps))
        Q, _ = np.linalg.qr((C @ D).T, mode="complete")
        b = D @ Q[:, n]
        b = b / np.linalg.norm(b)
        a = Z[: m + 1, :] @ b
        first = int(np.argmax(np.abs(b) > tol))
        b, a = b[first:], a[first:]
        last = len(b) - 1 - int(np.argmax(np.abs(b[::-1]) > tol))
        b = b[: last + 1]
    nz = np.nonzero(np.abs(a) > ts)[0]
    a = a[: nz[-1] + 1] if len(nz) else np.zeros(1)
    return a / b[0], b / b[0]


def borel_coefficients(coeff, N):
    """``b_j = a_j / j!`` for ``j = 0..N``."""
    j = np.arange(N + 1)
    a = np.asarray(call_array(coeff, j), dtype=float)
    if not np.all(np.isfinite(a)):
        raise SeriesOverflowError("series coefficient overflow")
    lg = np.array([math.lgamma(k + 1.0) for k in j])
    with np.errstate(under="ignore"):
        return np.sign(a) * np.exp(np.log(np.abs(a) + (a == 0)) - lg) * (a != 0)


class BorelTransform:
    """Borel transform ``B(t) = sum a_j t^j / j!`` from N + 1 coefficients.

    Inside the range where the truncated series has visibly converged the sum
    is taken directly (compensated); elsewhere the transform is continued by a
    robust Padé approximant built from the same coefficients.
    """

    def __init__(self, coeff, N=160):
        self.N = N
        self.b = borel_coefficients(coeff, N)
        self.num, self.den = _robust_pade(self.b, N // 2, N - N // 2)

    def direct(self, t):
        with np.errstate(over="ignore", invalid="ignore"):
            terms = self.b * float(t) ** np.arange(self.N + 1)
        if not np.all(np.isfinite(terms)):
            return math.nan, False
        scale = np.sum(np.abs(terms))
        converged = np.max(np.abs(terms[-3:])) <= 1e-17 * max(scale, 1e-300)
        return math.fsum(terms), converged

    def continued(self, t):
        P = np.polynomial.polynomial.polyval(t, self.num)
        Q = np.polynomial.polynomial.polyval(t, self.den)
        return P / Q

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(t)
        for i, ti in enumerate(t):
            val, ok = self.direct(ti)
            out[i] = val if ok else self.continued(ti)
            if not math.isfinite(out[i]):
                raise SeriesOverflowError(f"Borel transform not representable at t = {ti}")
        return out


def borel_transform(coeff, t, N=160):
    """Value of the Borel transform at ``t`` (see :class:`BorelTransform`)."""
    val = BorelTransform(coeff, N)(t)
    return val if np.ndim(t) else float(val[0])


def borel_sum(coeff, N=160, order=64, check_order=96) -> SumResult:
    """Borel sum ``int_0^inf e^-t B(t) dt`` by Gauss-Laguerre quadrature.

    ``spread`` is the difference between the ``order`` and ``check_order``
    node rules.

    Raises
    ------
    SeriesOverflowError
        If a Borel term overflows at a quadrature node.
    """
    B = BorelTransform(coeff, N)
    results = []
    for n in (order, check_order):
        t, w = gauss_laguerre(n)
        vals = B(t)
        results.append(math.fsum(w * vals))
    return SumResult(results[0], "borel", abs(results[0] - results[1]),
                     {"N": N, "nodes": (order, check_order)})


# --- Euler series / Stieltjes integral ------------------------------------

def stieltjes_euler(x: float, full_output=False):
    """``y(x) = int_0^inf e^(-xi/x) / (1 + xi) d xi`` for x > 0.

    Computed as ``x int_0^inf e^-t / (1 + x t) dt`` with adaptive quadrature.
    """
    if x <= 0:
        raise DomainError("stieltjes_euler requires x > 0")
    val, err = _integrate.quad(lambda t: math.exp(-t) / (1.0 + x * t), 0.0, math.inf,
                               epsabs=1e-14, epsrel=1e-13, limit=200)
    val, err = x * val, x * err
    if err >= 1e-10:
        raise ConvergenceError(f"quadrature error estimate {err:.2e} too large")
    return (val, err) if full_output else val


@dataclass(frozen=True)
class TruncationReport:
    k: int
    partial: float
    gap: float
    bound: float
    respected: bool


def euler_partial_sum(x, k):
    """``s_k(x) = sum_{j=0..k} (-1)^j j! x^(j+1)``."""
    if x == 0:
        return 0.0
    return math.fsum(euler_series_coeff(x)(np.arange(k + 1)))


def euler_truncation_error(x: float, k: int) -> TruncationReport:
    """Gap ``|y(x) - s_k(x)|`` against the bound ``k! x^(k+1)``."""
    if x < 0 or k < 0:
        raise DomainError("need x >= 0 and k >= 0")
    if x == 0:
        return TruncationReport(k, 0.0, 0.0, 0.0, True)
    s = euler_partial_sum(x, k)
    gap = abs(stieltjes_euler(x) - s)
    bound = math.exp(math.lgamma(k + 1.0) + (k + 1) * math.log(x))
    return TruncationReport(k, s, gap, bound, gap <= bound)


def optimal_truncation(x, kmax=40):
    """Index ``k <= kmax`` minimizing the truncation gap."""
    gaps = [euler_truncation_error(x, k).gap for k in range(kmax + 1)]
    return int(np.argmin(gaps))
