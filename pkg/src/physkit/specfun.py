"""Classical special functions.

Gamma, Beta and Pochhammer symbols, generalized hypergeometric series,
Legendre and associated Legendre functions, spherical harmonics,
Gram-Schmidt orthogonalization of functions under a weight, and the classical
polynomials obtained as terminating hypergeometric series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._numerics import call_array, integrate
from .errors import (ConvergenceError, DegeneracyError, DomainError,
                     IndexRangeError, PoleError)

# Cody's minimax rational approximation for Gamma on [1, 2].
_CODY_P = (
    -1.71618513886549492533811e00, 2.47656508055759199108314e01,
    -3.79804256470945635097577e02, 6.29331155312818442661052e02,
    8.66966202790413211295064e02, -3.14512729688483675254357e04,
    -3.61444134186911729807069e04, 6.64561438202405440627855e04,
)
_CODY_Q = (
    -3.08402300119738975254353e01, 3.15350626979604161529144e02,
    -1.01515636749021914166146e03, -3.10777167157231109440444e03,
    2.25381184209801510330112e04, 4.75584627752788110767815e03,
    -1.34659959864969306392456e05, -1.15132259675553483497211e05,
)


def _is_nonpositive_integer(x) -> bool:
    return x <= 0 and float(x) == math.floor(x)


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``, with ``(a)_0 = 1``."""
    if n < 0 or int(n) != n:
        raise DomainError("pochhammer index must be a nonnegative integer")
    p = 1.0
    for j in range(int(n)):
        p *= a + j
    return p


def _gamma_12(y: float) -> float:
    z = y - 1.0
    xnum = 0.0
    xden = 1.0
    for p, q in zip(_CODY_P, _CODY_Q):
        xnum = (xnum + p) * z
        xden = xden * z + q
    return xnum / xden + 1.0


def gamma_real(x: float) -> float:
    """Gamma function of a real argument.

    A rational approximation on [1, 2] is shifted with ``Gamma(x+1) = x Gamma(x)``;
    arguments below 1/2 go through the reflection formula.

    Raises
    ------
    PoleError
        At ``x = 0, -1, -2, ...``.
    """
    x = float(x)
    if math.isnan(x):
        return math.nan
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at x = {x:g}")
    if x < 0.5:
        s = math.sin(math.pi * x)
        return math.pi / (s * gamma_real(1.0 - x))
    if x > 171.7:
        return math.inf
    n = math.floor(x) - 1
    y = x - n
    g = _gamma_12(y)
    if n < 0:
        return g / x
    for j in range(n):
        g *= y + j
    return g


def gamma_limit(x: float, n_max: int = 2 ** 14) -> float:
    """Gamma from the limit ``n! n^(x-1) / (x)_n``, Richardson accelerated.

    Slow; kept as an independent reference for testing ``gamma_real``.
    """
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at x = {x:g}")
    ns = [n_max // 2 ** k for k in range(6, -1, -1)]
    vals = []
    for n in ns:
        # log of n! n^{x-1} / (x)_n, summed term by term (x)_n = prod (x+j)
        j = np.arange(1, n + 1, dtype=float)
        logv = (x - 1.0) * math.log(n) + np.sum(np.log(j)) - np.sum(np.log(np.abs(x + j - 1)))
        sgn = np.prod(np.sign(x + np.arange(n)))
        vals.append(sgn * math.exp(logv))
    # error expansion is in powers of 1/n: Richardson on n doubling
    T = list(vals)
    for k in range(1, len(T)):
        T = [(2 ** k * T[i + 1] - T[i]) / (2 ** k - 1) for i in range(len(T) - 1)]
    return float(T[-1])


def beta(x: float, y: float) -> float:
    """Euler Beta function ``Gamma(x) Gamma(y) / Gamma(x + y)`` for x, y > 0."""
    if x <= 0 or y <= 0:
        raise DomainError("beta requires positive arguments")
    if x + y > 171:
        lg = math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)
        return math.exp(lg)
    return gamma_real(x) * gamma_real(y) / gamma_real(x + y)


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameters of a generalized hypergeometric series pFq."""

    upper: Sequence[float]
    lower: Sequence[float]
    argument: complex
    tolerance: float = 1e-15
    max_terms: int = 100000

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        for b in self.lower:
            if _is_nonpositive_integer(b):
                raise PoleError(f"lower parameter {b} is a nonpositive integer")

    @property
    def terminating_index(self):
        """Index at which the series terminates, or None."""
        idx = [int(-a) for a in self.upper if _is_nonpositive_integer(a)]
        return min(idx) if idx else None


@dataclass(frozen=True)
class HypergeometricResult:
    value: complex
    terms: int


def hyp_pfq(spec: HypergeometricSpec) -> HypergeometricResult:
    """Sum the pFq series by its term ratio.

    Stops once two consecutive terms are both below ``tolerance * |sum|``.
    A terminating series is summed exactly up to its last nonzero term.
    """
    p, q = len(spec.upper), len(spec.lower)
    x = spec.argument
    stop = spec.terminating_index
    if stop is None:
        if p > q + 1 and x != 0:
            raise ConvergenceError("pFq with p > q + 1 diverges for x != 0")
        if p == q + 1 and abs(x) > 1:
            raise DomainError("|x| > 1 outside the disk of convergence")
    if stop is None and p == q + 1 and x == 1:
        return _sum_at_unit_argument(spec)
    term = 1.0 + 0j if isinstance(x, complex) else 1.0
    total = term
    comp = 0.0 * term
    small = 0
    for j in range(spec.max_terms):
        if stop is not None and j == stop:
            return HypergeometricResult(total + comp, j + 1)
        num = 1.0
        for a in spec.upper:
            num *= a + j
        den = float(j + 1)
        for b in spec.lower:
            den *= b + j
        term = term * num / den * x
        u = total + term
        if abs(total) >= abs(term):
            comp += (total - u) + term
        else:
            comp += (term - u) + total
        total = u
        s = abs(total + comp)
        if abs(term) <= spec.tolerance * s:
            small += 1
            if small >= 2:
                return HypergeometricResult(total + comp, j + 2)
        else:
            small = 0
    raise ConvergenceError(
        f"pFq stopping rule not met within {spec.max_terms} terms")


def _sum_at_unit_argument(spec, n0=256, levels=6):
    """Sum a nonterminating q+1Fq series at x = 1.

    Terms decay like j^(-s-1) with s = sum(b) - sum(a), so partial sums
    approach the limit algebraically with a tail expansion in N^-(s+i).
    Partial sums at N = n0 * 2^k are Richardson-extrapolated in those powers.
    """
    s = float(np.real(sum(spec.lower) - sum(spec.upper)))
    if s <= 0:
        raise ConvergenceError("series at x = 1 diverges unless sum(b) - sum(a) > 0")
    n_max = n0 * 2 ** (levels - 1)
    if n_max > spec.max_terms:
        raise ConvergenceError(f"x = 1 summation needs {n_max} terms")
    j = np.arange(n_max - 1, dtype=float)
    ratio = np.ones_like(j)
    for a in spec.upper:
        ratio = ratio * (a + j)
    for b in spec.lower:
        ratio = ratio / (b + j)
    ratio = ratio / (j + 1.0)
    terms = np.concatenate([[1.0], np.cumprod(ratio)])
    table = [math.fsum(terms[: n0 * 2 ** k]) for k in range(levels)]
    prev = None
    for i in range(levels - 1):
        f = 2.0 ** (s + i)
        prev = table
        table = [(f * table[k + 1] - table[k]) / (f - 1.0) for k in range(len(table) - 1)]
    value = table[0]
    # scale by the largest term so that sums with value 0 are not rejected
    scale = max(abs(value), float(np.max(np.abs(terms))))
    if abs(value - prev[-1]) > max(1e3 * spec.tolerance, 1e-10) * scale:
        raise ConvergenceError("tail extrapolation at x = 1 is not stable")
    return HypergeometricResult(value, n_max)


def hyp2f1(a, b, c, x, **kw) -> float:
    """Convenience wrapper returning the value of 2F1(a, b; c; x)."""
    return hyp_pfq(HypergeometricSpec((a, b), (c,), x, **kw)).value


def hyp1f1(a, b, x, **kw) -> float:
    return hyp_pfq(HypergeometricSpec((a,), (b,), x, **kw)).value


# --- Legendre family -----------------------------------------------------

def _check_lm(l, m):
    if l < 0 or int(l) != l or int(m) != m:
        raise IndexRangeError("l must be a nonnegative integer, m an integer")
    if abs(m) > l:
        raise IndexRangeError(f"|m| = {abs(m)} exceeds l = {l}")


def legendre_table(lmax: int, x):
    """Array of P_0(x) .. P_lmax(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    out = np.empty((lmax + 1,) + x.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = x
    for l in range(1, lmax):
        out[l + 1] = ((2 * l + 1) * x * out[l] - l * out[l - 1]) / (l + 1)
    return out


def legendre_derivative_table(lmax: int, x):
    """P'_0 .. P'_lmax from ``P'_{l+1} = P'_{l-1} + (2l+1) P_l``."""
    P = legendre_table(lmax, x)
    d = np.zeros_like(P)
    if lmax >= 1:
        d[1] = 1.0
    for l in range(1, lmax):
        d[l + 1] = d[l - 1] + (2 * l + 1) * P[l]
    return d


def _assoc_legendre_pos(l, m, x):
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then upward in l.
    x = np.asarray(x, dtype=float)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.ones_like(x)
    fact = 1.0
    for _ in range(m):
        pmm = -pmm * fact * s
        fact += 2.0
    if l == m:
        return pmm
    pm1 = x * (2 * m + 1) * pmm
    if l == m + 1:
        return pm1
    for ll in range(m + 2, l + 1):
        pll = (x * (2 * ll - 1) * pm1 - (ll + m - 1) * pmm) / (ll - m)
        pmm, pm1 = pm1, pll
    return pm1


def legendre_p(l: int, m: int, x):
    """Associated Legendre function P_l^m(x) including the (-1)^m phase.

    ``m = 0`` gives the Legendre polynomial with P_l(1) = 1. Negative ``m``
    uses ``P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m``.
    """
    _check_lm(l, m)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0 + 1e-15):
        raise DomainError("legendre_p requires |x| <= 1")
    l, m = int(l), int(m)
    if m == 0:
        out = legendre_table(l, xa)[l]
    elif m > 0:
        out = _assoc_legendre_pos(l, m, xa)
    else:
        k = -m
        ratio = math.factorial(l - k) / math.factorial(l + k)
        out = (-1) ** k * ratio * _assoc_legendre_pos(l, k, xa)
    return float(out) if np.ndim(out) == 0 else out


def spherical_harmonic(l: int, m: int, theta, phi):
    """Normalized spherical harmonic Y_l^m(theta, phi)."""
    _check_lm(l, m)
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < -1e-15) | (theta > math.pi + 1e-15)):
        raise DomainError("theta must lie in [0, pi]")
    l, m = int(l), int(m)
    norm = math.sqrt((2 * l + 1) / (4 * math.pi)
                     * math.factorial(l - m) / math.factorial(l + m))
    val = norm * legendre_p(l, m, np.cos(theta)) * np.exp(1j * m * np.asarray(phi))
    return complex(val) if np.ndim(val) == 0 else val


# --- Orthogonal systems --------------------------------------------------

@dataclass
class OrthogonalSystem:
    """Functions orthogonal on [a, b] under the weight ``rho``."""

    interval: tuple
    weight: Callable
    functions: list
    norms: list = field(default_factory=list)

    def inner(self, f, g, tol=1e-11):
        return weighted_inner(f, g, self.weight, self.interval, tol=tol)

    def gram(self, tol=1e-11):
        n = len(self.functions)
        G = np.empty((n, n))
        for i in range(n):
            for j in range(i, n):
                G[i, j] = G[j, i] = self.inner(self.functions[i], self.functions[j], tol)
        return G


def weighted_inner(f, g, rho, interval, tol=1e-11):
    a, b = interval
    return integrate(lambda x: call_array(f, x) * call_array(g, x) * call_array(rho, x),
                     a, b, tol=tol)


class _Combination:
    """Picklable linear combination ``sum c_i f_i`` of callables."""

    def __init__(self, coeffs, basis):
        self.coeffs = list(coeffs)
        self.basis = list(basis)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return sum(c * call_array(f, x) for c, f in zip(self.coeffs, self.basis))


def gram_schmidt_functions(fs, rho, interval, tol=1e-10) -> OrthogonalSystem:
    """Orthogonalize ``fs`` in order under the weighted inner product.

    The k-th output is ``f_k`` minus its projections on the earlier outputs, so
    the span is preserved degree by degree and the outputs are monic in ``f_k``
    (not normalized).

    Raises
    ------
    DegeneracyError
        If a projected norm falls below ``tol``.
    """
    if not fs:
        raise DegeneracyError("no functions supplied")
    a, b = interval
    xs = np.linspace(a, b, 17)[1:-1]
    if np.any(call_array(rho, xs) < 0):
        raise DomainError("weight must be nonnegative on the interval")
    outs, norms = [], []
    for k, f in enumerate(fs):
        coeffs = [0.0] * len(fs)
        coeffs[k] = 1.0
        current = _Combination(coeffs, fs)
        for j, phi in enumerate(outs):
            proj = weighted_inner(current, phi, rho, interval) / norms[j]
            coeffs = [c - proj * d for c, d in zip(coeffs, phi.coeffs)]
            current = _Combination(coeffs, fs)
        nrm = weighted_inner(current, current, rho, interval)
        ref = weighted_inner(f, f, rho, interval)
        if nrm <= tol * max(ref, 1.0) or nrm <= 0:
            raise DegeneracyError(f"function {k} is dependent on its predecessors")
        outs.append(current)
        norms.append(nrm)
    return OrthogonalSystem(tuple(interval), rho, outs, norms)


# --- Classical polynomials via hypergeometric series ----------------------

def classical_polynomial(kind: str, indices, x: float) -> float:
    """Classical orthogonal polynomial evaluated through its pFq form.

    Kinds are ``hermite`` (index n), ``laguerre`` (n), ``assoc-laguerre``
    (n, alpha) and ``chebyshev-1`` (n).
    """
    idx = tuple(indices) if isinstance(indices, (tuple, list)) else (indices,)
    n = idx[0]
    if n < 0 or int(n) != n:
        raise IndexRangeError("polynomial degree must be a nonnegative integer")
    n = int(n)
    if kind == "chebyshev-1":
        if len(idx) != 1:
            raise IndexRangeError("chebyshev-1 takes one index")
        return hyp2f1(-n, n, 0.5, (1.0 - x) / 2.0)
    if kind == "hermite":
        if len(idx) != 1:
            raise IndexRangeError("hermite takes one index")
        k = n // 2
        if n % 2 == 0:
            c = (-1) ** k * math.factorial(2 * k) / math.factorial(k)
            return c * hyp1f1(-k, 0.5, x * x)
        c = (-1) ** k * math.factorial(2 * k + 1) / math.factorial(k)
        return 2.0 * x * c * hyp1f1(-k, 1.5, x * x)
    if kind in ("laguerre", "assoc-laguerre"):
        if kind == "laguerre":
            if len(idx) != 1:
                raise IndexRangeError("laguerre takes one index")
            alpha = 0.0
        else:
            if len(idx) != 2:
                raise IndexRangeError("assoc-laguerre takes (n, alpha)")
            alpha = float(idx[1])
            if alpha <= -1:
                raise IndexRangeError("alpha must exceed -1")
        binom = gamma_real(n + alpha + 1) / (math.factorial(n) * gamma_real(alpha + 1))
        return binom * hyp1f1(-n, alpha + 1.0, x)
    raise IndexRangeError(f"unknown polynomial kind {kind!r}")
