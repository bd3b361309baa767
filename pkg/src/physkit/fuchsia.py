"""Second-order linear ODEs: singular points, Frobenius series, reduction of
order, Sturm-Liouville conversion and a shooting eigen-solver.

Equations are written ``a2 y'' + a1 y' + a0 y = 0`` with normalized
coefficients ``p1 = a1/a2`` and ``p2 = a0/a2``. At a regular singular point
``x0`` the recursion for generalized power-series coefficients is::

    w_n f0(sigma + n) + sum_{k=1..n} w_{n-k} f_k(sigma + n - k) = 0
    f0(s) = s (s - 1) + alpha_0 s + beta_0,     f_k(s) = alpha_k s + beta_k

where ``alpha_k`` and ``beta_k`` are Taylor coefficients of ``(x-x0) p1`` and
``(x-x0)^2 p2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from ._numerics import call_array, derivative, gauss_legendre, panel_nodes
from .errors import (BracketError, DomainError, EvaluationError, ResonanceError,
                     StiffnessError, UnsupportedError, ZeroCrossingError)

INF = math.inf
_ZERO_TOL = 1e-13


def _poly(c):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    return np.trim_zeros(c, "b") if np.any(c != 0) else np.zeros(1, dtype=complex)


def _shift(c, x0):
    """Coefficients of P(x0 + h) in powers of h."""
    c = np.asarray(c, dtype=complex)
    out = np.zeros(1, dtype=complex)
    for coef in c[::-1]:
        out = npoly.polyadd(npoly.polymul(out, [x0, 1.0]), [coef])
    return out


def _valuation(c, scale):
    for i, v in enumerate(c):
        if abs(v) > _ZERO_TOL * scale:
            return i
    return None


def _series_div(num, den, n):
    """First n Taylor coefficients of num/den with den[0] != 0."""
    num = np.concatenate([num, np.zeros(max(0, n - len(num)))]).astype(complex)[:n]
    den = np.concatenate([den, np.zeros(max(0, n - len(den)))]).astype(complex)[:n]
    out = np.zeros(n, dtype=complex)
    for k in range(n):
        s = num[k] - np.dot(out[:k], den[k:0:-1]) if k else num[k]
        out[k] = s / den[0]
    return out


def _clean(z):
    z = complex(z)
    if abs(z.imag) <= 1e-14 * max(1.0, abs(z.real)):
        return z.real + 0.0
    return z


@dataclass
class LinearODE2:
    """Coefficients of ``a2 y'' + a1 y' + a0 y = 0``.

    Either callables or polynomial descriptors (ascending coefficient arrays)
    may be given; when only polynomials are supplied the callables are built
    from them, and when both are supplied they are cross-checked. ``a2=None``
    denotes the first-order equation ``a1 y' + a0 y = 0``.
    """

    a2: Optional[Callable] = None
    a1: Optional[Callable] = None
    a0: Optional[Callable] = None
    poly: Optional[tuple] = None
    order: int = 2

    def __post_init__(self):
        if self.poly is not None:
            polys = tuple(None if c is None else _poly(c) for c in self.poly)
            if len(polys) != 3:
                raise DomainError("poly must hold (a2, a1, a0) coefficient arrays")
            self.poly = polys
            if polys[0] is None:
                self.order = 1
            names = ("a2", "a1", "a0")
            for name, c in zip(names, polys):
                if c is None:
                    continue
                if getattr(self, name) is None:
                    setattr(self, name, _PolyFn(c))
                else:
                    self._crosscheck(getattr(self, name), c, name)
        if self.a2 is None:
            self.order = 1
        if self.a1 is None or self.a0 is None:
            raise DomainError("a1 and a0 are required")
        lead = self.a2 if self.order == 2 else self.a1
        pts = np.linspace(-2.3, 3.1, 9) + 0.37j
        vals = np.array([complex(lead(z)) for z in pts])
        if np.all(np.abs(vals) == 0):
            raise DomainError("leading coefficient vanishes identically")

    @staticmethod
    def _crosscheck(fn, c, name):
        rng = np.random.default_rng(1234)
        pts = rng.uniform(-2, 2, 16) + 1j * rng.uniform(-2, 2, 16)
        for z in pts:
            ref = npoly.polyval(z, c)
            got = complex(fn(z))
            if abs(got - ref) > 1e-12 * max(1.0, abs(ref)):
                raise DomainError(f"descriptor for {name} disagrees with its callable")

    @classmethod
    def from_polynomials(cls, a2, a1, a0):
        return cls(poly=(a2, a1, a0))

    @classmethod
    def from_partial_fractions(cls, poles, A, B, C):
        """Fuchsian form ``p1 = sum A_j/(x-x_j)``, ``p2 = sum B_j/(x-x_j)^2 + C_j/(x-x_j)``."""
        a2 = np.ones(1, dtype=complex)
        for xj in poles:
            a2 = npoly.polymul(a2, npoly.polymul([-xj, 1], [-xj, 1]))
        a1 = np.zeros(1, dtype=complex)
        a0 = np.zeros(1, dtype=complex)
        for j, xj in enumerate(poles):
            one = npoly.polydiv(a2, [-xj, 1])[0]
            two = npoly.polydiv(one, [-xj, 1])[0]
            a1 = npoly.polyadd(a1, A[j] * one)
            a0 = npoly.polyadd(a0, npoly.polyadd(B[j] * two, C[j] * one))
        return cls(poly=(a2, a1, a0))

    # normalized coefficients
    def p1(self, x):
        lead = self.a2 if self.order == 2 else self.a1
        return call_array(self.a1, x) / call_array(lead, x) if self.order == 2 else \
            call_array(self.a0, x) / call_array(lead, x)

    def p2(self, x):
        if self.order == 1:
            raise UnsupportedError("first-order equation has no p2")
        return call_array(self.a0, x) / call_array(self.a2, x)

    def apply(self, y, dy, d2y, x):
        """Residual ``a2 y'' + a1 y' + a0 y`` given solution values."""
        if self.order == 1:
            return call_array(self.a1, x) * dy + call_array(self.a0, x) * y
        return (call_array(self.a2, x) * d2y + call_array(self.a1, x) * dy
                + call_array(self.a0, x) * y)

    def singular_points(self):
        """Finite zeros of the leading polynomial (requires descriptors)."""
        if self.poly is None:
            return None
        lead = self.poly[0] if self.order == 2 else self.poly[1]
        if len(lead) <= 1:
            return []
        return list(np.roots(lead[::-1]))

    def at_infinity(self) -> "LinearODE2":
        """Operator in ``t = 1/x`` whose behavior at ``t = 0`` is that of ``x = inf``."""
        if self.order == 1:
            raise UnsupportedError("infinity transform implemented for second order")
        if self.poly is not None:
            d = max(len(c) for c in self.poly) - 1

            def rev(c):
                c = np.concatenate([c, np.zeros(d + 1 - len(c))])
                return c[::-1]

            A2, A1, A0 = (rev(c) for c in self.poly)
            b2 = npoly.polymul([0, 0, 0, 0, 1], A2)
            b1 = npoly.polymul([0, 0, 1], npoly.polysub(npoly.polymul([0, 2], A2), A1))
            return LinearODE2(poly=(b2, b1, A0))
        a2, a1, a0 = self.a2, self.a1, self.a0
        return LinearODE2(
            a2=lambda t: t ** 4 * a2(1 / t),
            a1=lambda t: 2 * t ** 3 * a2(1 / t) - t ** 2 * a1(1 / t),
            a0=lambda t: a0(1 / t),
        )


class _PolyFn:
    def __init__(self, c):
        self.c = np.asarray(c)

    def __call__(self, x):
        v = npoly.polyval(np.asarray(x), self.c)
        if np.isrealobj(x) and np.all(np.abs(np.imag(v)) == 0):
            v = np.real(v)
        return v


@dataclass(frozen=True)
class PointClass:
    kind: str  # "ordinary", "regular-singular", "irregular-singular"
    alpha0: Optional[complex] = None
    beta0: Optional[complex] = None

    @property
    def exponents(self):
        if self.kind == "irregular-singular":
            return None
        return characteristic_exponents(self.alpha0, self.beta0)


def characteristic_exponents(alpha0, beta0):
    """Roots of ``s (s - 1) + alpha0 s + beta0 = 0``, larger real part first."""
    b = alpha0 - 1.0
    disc = cmath.sqrt(b * b - 4.0 * beta0)
    r1 = _clean(0.5 * (-b + disc))
    r2 = _clean(0.5 * (-b - disc))
    if (complex(r2).real, complex(r2).imag) > (complex(r1).real, complex(r1).imag):
        r1, r2 = r2, r1
    return r1, r2


def _limit_callable(g, x0, h=0.05, levels=9):
    """Richardson limit of g(x0 + h 2^-k); None when it does not exist."""
    samples = []
    for k in range(levels):
        try:
            v = complex(g(x0 + h * 2.0 ** -k))
        except (ZeroDivisionError, OverflowError, ValueError) as exc:
            raise EvaluationError(f"coefficient evaluation failed near {x0}: {exc}")
        if not cmath.isfinite(v):
            raise EvaluationError(f"non-finite coefficient near {x0}")
        samples.append(v)
    T = np.asarray(samples)
    ests = [T[-1]]
    for j in range(1, levels):
        T = (2.0 ** j * T[1:] - T[:-1]) / (2.0 ** j - 1.0)
        ests.append(T[-1])
    best = ests[4]
    spread = abs(ests[4] - ests[3])
    scale = max(1.0, abs(best))
    if spread > 1e-3 * scale or not cmath.isfinite(best):
        return None
    v = complex(best)
    # snap numerically-zero parts
    re = 0.0 if abs(v.real) < 1e-9 * scale else v.real
    im = 0.0 if abs(v.imag) < 1e-9 * scale else v.imag
    return _clean(complex(re, im))


def _poly_laurent(ode, x0, n):
    """Taylor data (alpha_k, beta_k) from polynomial descriptors, or the
    classification if the point is not regular singular."""
    c2, c1, c0 = (None if c is None else _shift(c, x0) for c in ode.poly)
    if ode.order == 1:
        lead, c1 = c1, c0
        c0 = None
    else:
        lead = c2
    scale = max(np.max(np.abs(c)) for c in (lead, c1) + ((c0,) if c0 is not None else ()))
    m = _valuation(lead, scale)
    v1 = _valuation(c1, scale)
    v0 = _valuation(c0, scale) if c0 is not None else None
    v1 = math.inf if v1 is None else v1
    v0 = math.inf if v0 is None else v0
    lead_t = lead[m:]
    if ode.order == 1:
        ordinary = v1 >= m
        regular = v1 + 1 >= m
    else:
        ordinary = v1 >= m and v0 >= m
        regular = v1 + 1 >= m and v0 + 2 >= m
    if not regular:
        return "irregular-singular", None, None
    # (x-x0) p1 = h^{1-m} c1 / lead_t ; (x-x0)^2 p2 = h^{2-m} c0 / lead_t
    def shifted(c, power):
        if power >= 0:
            num = np.concatenate([np.zeros(power), c])
            return _series_div(num, lead_t, n)
        return _series_div(c[-power:], lead_t, n)

    alpha = shifted(c1, 1 - m)
    beta = shifted(c0, 2 - m) if c0 is not None else np.zeros(n, dtype=complex)
    kind = "ordinary" if ordinary else "regular-singular"
    return kind, alpha, beta


def _cauchy_taylor(g, x0, n, r, nodes=256):
    theta = 2 * np.pi * np.arange(nodes) / nodes
    z = x0 + r * np.exp(1j * theta)
    vals = np.array([complex(g(zz)) for zz in z])
    coeffs = np.fft.fft(vals) / nodes
    return coeffs[:n] / r ** np.arange(n)


def classify_point(ode: LinearODE2, x0) -> PointClass:
    """Classify ``x0`` (a number or ``math.inf``) for the equation."""
    if x0 == INF or (isinstance(x0, str) and x0.lower() in ("inf", "infinity")):
        return classify_point(ode.at_infinity(), 0.0)
    if ode.poly is not None:
        kind, alpha, beta = _poly_laurent(ode, x0, 1)
        if kind == "irregular-singular":
            return PointClass(kind)
        a0 = _clean(alpha[0])
        b0 = _clean(beta[0])
        if kind == "ordinary":
            return PointClass(kind, 0.0, 0.0)
        return PointClass(kind, a0, b0)
    if ode.order == 1:
        p1 = _limit_callable(lambda x: ode.p1(x), x0)
        if p1 is not None:
            return PointClass("ordinary", 0.0, 0.0)
        a = _limit_callable(lambda x: (x - x0) * ode.p1(x), x0)
        return PointClass("regular-singular", a, 0.0) if a is not None else PointClass("irregular-singular")
    p1 = _limit_callable(lambda x: ode.p1(x), x0)
    p2 = _limit_callable(lambda x: ode.p2(x), x0)
    if p1 is not None and p2 is not None:
        return PointClass("ordinary", 0.0, 0.0)
    a = _limit_callable(lambda x: (x - x0) * ode.p1(x), x0)
    b = _limit_callable(lambda x: (x - x0) ** 2 * ode.p2(x), x0)
    if a is None or b is None:
        return PointClass("irregular-singular")
    return PointClass("regular-singular", a, b)


@dataclass
class PowerSeriesSolution:
    """Generalized power series ``(x-x0)^sigma sum_n w_n (x-x0)^n``."""

    x0: complex
    sigma: complex
    coeffs: np.ndarray
    radius_hint: Optional[float] = None

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs)
        if self.coeffs.size == 0 or self.coeffs[0] == 0:
            raise DomainError("leading coefficient w0 must be nonzero")

    def _powers(self, x, shift):
        h = np.asarray(x, dtype=complex) - self.x0
        return h, h ** (self.sigma - shift) if (self.sigma - shift) != 0 else np.ones_like(h)

    def derivative(self, x, order=0):
        """``order``-th derivative by term-wise differentiation."""
        h = np.asarray(x, dtype=complex) - self.x0
        n = np.arange(len(self.coeffs))
        e = self.sigma + n
        fac = np.ones(len(n), dtype=complex)
        for k in range(order):
            fac = fac * (e - k)
        total = np.zeros(h.shape, dtype=complex)
        for c, f, ee in zip(self.coeffs[::-1], fac[::-1], e[::-1]):
            total = total + c * f * h ** (ee - order) if (c * f) != 0 else total
        return _realify(total, x, self)

    def __call__(self, x):
        return self.derivative(x, 0)

    def residual(self, ode: LinearODE2, x):
        y, dy, d2y = (self.derivative(x, k) for k in range(3))
        lead = ode.a2 if ode.order == 2 else ode.a1
        return ode.apply(y, dy, d2y, x) / call_array(lead, np.asarray(x, dtype=complex))


def _realify(v, x, sol):
    if np.isrealobj(x) and np.isrealobj(sol.coeffs) and np.isreal(sol.sigma) \
            and np.all(np.asarray(x) >= np.real(sol.x0)):
        return np.real(v) if np.ndim(v) else float(np.real(v))
    return v if np.ndim(v) else complex(v)


def frobenius_solve(ode: LinearODE2, x0, sigma, N=24, radius=0.5) -> PowerSeriesSolution:
    """Frobenius series with ``w0 = 1`` about ``x0`` for exponent ``sigma``.

    When ``f0(sigma + n)`` vanishes and the right-hand side of the recursion is
    also zero, ``w_n`` is free and set to zero (the other exponent's series);
    a nonzero right-hand side is a genuine resonance.

    Raises
    ------
    ResonanceError
        Carrying the offending ``n``.
    """
    n_terms = N + 1
    if ode.poly is not None:
        kind, alpha, beta = _poly_laurent(ode, x0, n_terms)
        if kind == "irregular-singular":
            raise DomainError(f"x0 = {x0} is an irregular singular point")
    else:
        if ode.order == 1:
            alpha = _cauchy_taylor(lambda z: (z - x0) * ode.p1(z), x0, n_terms, radius)
            beta = np.zeros(n_terms, dtype=complex)
        else:
            alpha = _cauchy_taylor(lambda z: (z - x0) * ode.p1(z), x0, n_terms, radius)
            beta = _cauchy_taylor(lambda z: (z - x0) ** 2 * ode.p2(z), x0, n_terms, radius)
    if ode.order == 1:
        def f0(s):
            return s + alpha[0]

        def fk(k, s):
            return alpha[k]
    else:
        def f0(s):
            return s * (s - 1) + alpha[0] * s + beta[0]

        def fk(k, s):
            return alpha[k] * s + beta[k]
    if abs(f0(sigma)) > 1e-9 * max(1.0, abs(sigma) ** 2):
        raise DomainError(f"sigma = {sigma} is not a characteristic exponent")
    w = np.zeros(n_terms, dtype=complex)
    w[0] = 1.0
    for n in range(1, n_terms):
        rhs = -sum(w[n - k] * fk(k, sigma + n - k) for k in range(1, n + 1))
        d = f0(sigma + n)
        if abs(d) < 1e-10 * max(1.0, abs(sigma + n) ** 2):
            scale = max(1.0, np.max(np.abs(w[:n])))
            if abs(rhs) <= 1e-10 * scale:
                w[n] = 0.0
                continue
            raise ResonanceError(n)
        w[n] = rhs / d
    if np.all(np.abs(w.imag) <= 1e-14 * np.maximum(1.0, np.abs(w.real))) and np.isreal(sigma):
        w = w.real
        sigma = float(np.real(sigma))
    radius_hint = None
    sing = ode.singular_points()
    if sing:
        dist = [abs(s - x0) for s in sing if abs(s - x0) > 1e-9]
        radius_hint = min(dist) if dist else math.inf
    return PowerSeriesSolution(x0, sigma, w, radius_hint)


# --- reduction of order ----------------------------------------------------

def _cumulative_integral(f, base, x, panel=0.25, n=32):
    """Integral of f from ``base`` to each abscissa in ``x`` (vectorized Gauss)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        m = max(1, int(math.ceil(abs(xi - base) / panel)))
        nodes, wts = panel_nodes(np.linspace(base, xi, m + 1), n)
        out[i] = np.sum(wts * call_array(f, nodes))
    return out


def dalembert_second_solution(ode: LinearODE2, y1, dy1, x, base=None, full_output=False):
    """Second solution ``y2 = y1 * int_base^x v`` by reduction of order.

    ``v = exp(-int_base^s p1) / y1(s)^2`` is the explicit solution of
    ``v' + v (2 y1'/y1 + p1) = 0``; both integrals are evaluated by Gauss
    quadrature. ``base`` defaults to the first grid point.
    """
    x = np.asarray(x, dtype=float)
    if base is None:
        base = float(x[0])
    y1x = call_array(y1, x)
    check = np.concatenate([[base], x])
    vals = call_array(y1, np.linspace(min(check), max(check), 4 * len(x) + 1))
    if np.any(np.abs(y1x) < 1e-300) or np.any(np.sign(vals[1:]) * np.sign(vals[:-1]) < 0):
        raise ZeroCrossingError("y1 vanishes on the integration range")

    def v(s):
        s = np.asarray(s, dtype=float)
        P = _cumulative_integral(ode.p1, base, s)
        return np.exp(-P) / call_array(y1, s) ** 2

    I = _cumulative_integral(v, base, x)
    y2 = y1x * I
    if full_output:
        dy2 = call_array(dy1, x) * I + y1x * v(x)
        return y2, dy2
    return y2


# --- Sturm-Liouville ---------------------------------------------------------

@dataclass(frozen=True)
class SLForm:
    p: Callable
    q: Callable
    F: Optional[Callable]
    rho: Callable


class _ExpIntegral:
    def __init__(self, g, base):
        self.g, self.base = g, base

    def __call__(self, x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.exp(_cumulative_integral(self.g, self.base, xa.ravel(), panel=0.1)).reshape(xa.shape)
        return out if np.ndim(x) else float(out[0])


def to_sturm_liouville(ode: LinearODE2, f=None, interval=(0.0, 1.0), x_ref=None) -> SLForm:
    """Multiply by ``p/a2`` with ``p = exp(int a1/a2)`` to reach ``(p y')' + q y = F``.

    Returns ``p``, ``q = p a0/a2``, ``F = p f/a2`` and the weight ``rho = p/a2``
    that appears when ``f = -lambda y``. ``p`` is normalized to 1 at ``x_ref``
    (default: the left end of ``interval``).
    """
    if ode.order != 2:
        raise UnsupportedError("Sturm-Liouville form needs a second-order equation")
    a, b = interval
    x_ref = a if x_ref is None else x_ref
    xs = np.linspace(a, b, 257)
    a2 = np.real(call_array(ode.a2, xs))
    inner = xs[1:-1]
    if abs(complex(ode.a2(x_ref))) < 1e-14 or np.any(a2[1:-1] == 0) or \
            np.any(np.sign(a2[1:-1]) != np.sign(a2[128])):
        raise DomainError("a2 vanishes on the interval or at the reference point")
    if not np.all(np.isfinite(call_array(ode.a1, inner) / call_array(ode.a2, inner))):
        raise DomainError("a1/a2 is singular on the interval")

    def ratio(x):
        return np.real(call_array(ode.a1, x) / call_array(ode.a2, x))

    p = _ExpIntegral(ratio, x_ref)

    def q(x):
        return p(x) * np.real(call_array(ode.a0, x) / call_array(ode.a2, x))

    def rho(x):
        return p(x) / np.real(call_array(ode.a2, x))

    F = None
    if f is not None:
        def F(x):
            return p(x) * call_array(f, x) / np.real(call_array(ode.a2, x))
    return SLForm(p, q, F, rho)


@dataclass(frozen=True)
class LiouvilleForm:
    t: Callable
    amplitude: Callable
    qhat: Callable
    interval: tuple

    def x_of_t(self, tval):
        from scipy.optimize import brentq
        a, b = self.interval
        return brentq(lambda x: self.t(x) - tval, a, b, xtol=1e-14)


def liouville_normal_form(p, q, rho, a, b=None) -> LiouvilleForm:
    """Liouville transformation ``t = int_a^x sqrt(rho/p)``, ``w = (p rho)^(1/4) y``.

    ``qhat(x) = (1/rho) [ -q - (p rho)^(1/4) (p ((p rho)^(-1/4))')' ]`` is
    evaluated with nested 6th-order central differences.
    """
    if b is not None:
        xs = np.linspace(a, b, 129)
        if np.any(call_array(p, xs) <= 0) or np.any(call_array(rho, xs) <= 0):
            raise DomainError("p and rho must be positive on the interval")

    def t(x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        out = _cumulative_integral(lambda s: np.sqrt(call_array(rho, s) / call_array(p, s)),
                                   a, xa.ravel(), panel=0.1)
        return out.reshape(xa.shape) if np.ndim(x) else float(out[0])

    def amplitude(x):
        return (call_array(p, x) * call_array(rho, x)) ** 0.25

    def inv_amp(x):
        return (call_array(p, x) * call_array(rho, x)) ** -0.25

    def flux(x):
        x = np.asarray(x, dtype=float)
        h = 1e-2 * np.maximum(1.0, np.abs(x))
        return call_array(p, x) * derivative(inv_amp, x, 1, h=h, accuracy=6)

    def qhat(x):
        x = np.asarray(x, dtype=float)
        h = 1e-2 * np.maximum(1.0, np.abs(x))
        inner = derivative(flux, x, 1, h=h, accuracy=6)
        out = (-call_array(q, x) - amplitude(x) * inner) / call_array(rho, x)
        return out if np.ndim(out) else float(out)

    return LiouvilleForm(t, amplitude, qhat, (a, b))


@dataclass
class SturmLiouvilleProblem:
    """``(p y')' + (q + lambda rho) y = 0`` on [a, b] with boundary data."""

    p: Callable
    q: Callable
    rho: Callable
    interval: tuple
    bc: str = "dirichlet"
    bc_values: tuple = (0.0, 0.0)

    def __post_init__(self):
        a, b = self.interval
        if not a < b:
            raise DomainError("interval must satisfy a < b")
        if self.bc not in ("dirichlet", "neumann", "periodic"):
            raise DomainError(f"unknown boundary condition kind {self.bc!r}")
        if self.bc == "periodic" and tuple(self.bc_values) not in ((0.0, 0.0), ()):
            raise DomainError("periodic conditions carry no values")
        if len(self.bc_values) not in (0, 2):
            raise DomainError("boundary values are a pair")
        xs = np.linspace(a, b, 66)[1:-1]
        if np.any(call_array(self.p, xs) <= 0) or np.any(call_array(self.rho, xs) <= 0):
            raise DomainError("p and rho must be positive on (a, b)")


@dataclass
class SLEigenResult:
    eigenvalue: float
    x: np.ndarray
    phi: np.ndarray
    interior_zeros: int
    bisection_steps: int


class _Shooter:
    """Fixed-step RK4 propagator for ``y' = u/p, u' = -(q + lambda rho) y``.

    The system is linear, so every step is a 2x2 matrix that depends affinely
    on lambda; the steps are built in one vectorized pass and multiplied
    together pairwise.
    """

    def __init__(self, problem, steps):
        a, b = problem.interval
        self.steps = steps
        h = (b - a) / steps
        self.h = h
        x0 = a + h * np.arange(steps)
        xs = np.stack([x0, x0 + h / 2, x0 + h])
        self.x = np.linspace(a, b, steps + 1)
        self.ip = 1.0 / call_array(problem.p, xs)
        self.q = call_array(problem.q, xs)
        self.r = call_array(problem.rho, xs)

    def step_matrices(self, lam):
        h = self.h
        n = self.steps
        ip, c = self.ip, -(self.q + lam * self.r)

        def M(i):
            m = np.zeros((n, 2, 2))
            m[:, 0, 1] = ip[i]
            m[:, 1, 0] = c[i]
            return m

        M0, M1, M2 = M(0), M(1), M(2)
        eye = np.broadcast_to(np.eye(2), (n, 2, 2))
        K1 = M0
        K2 = M1 @ (eye + 0.5 * h * K1)
        K3 = M1 @ (eye + 0.5 * h * K2)
        K4 = M2 @ (eye + h * K3)
        return eye + (h / 6.0) * (K1 + 2 * K2 + 2 * K3 + K4)

    def end_state(self, lam):
        S = self.step_matrices(lam)
        while S.shape[0] > 1:
            if S.shape[0] % 2:
                S = np.concatenate([S, np.eye(2)[None]])
            S = S[1::2] @ S[0::2]
        return S[0] @ np.array([0.0, 1.0])

    def trajectory(self, lam):
        S = self.step_matrices(lam)
        out = np.empty((self.steps + 1, 2))
        v = np.array([0.0, 1.0])
        out[0] = v
        for i in range(self.steps):
            v = S[i] @ v
            out[i + 1] = v
        return out


def _mismatch(coarse, fine, lam):
    with np.errstate(over="ignore", invalid="ignore"):
        yc = coarse.end_state(lam)[0]
        yf = fine.end_state(lam)[0]
    if not (math.isfinite(yc) and math.isfinite(yf)):
        raise StiffnessError("fixed-step integration overflowed")
    return (16.0 * yf - yc) / 15.0, abs(yf - yc)


def sl_eigen_bracket(problem, n, lam0=0.0, step=1.0, steps=1024, max_expand=60):
    """Bracket for the n-th Dirichlet eigenvalue by Sturm zero counting."""
    sh = _Shooter(problem, steps)

    def count(lam):
        y = sh.trajectory(lam)[1:, 0]
        return int(np.sum(np.sign(y[1:]) * np.sign(y[:-1]) < 0))

    lo = lam0
    while count(lo) >= n:
        lo -= step
        step *= 2
    hi, s = lo + step, step
    for _ in range(max_expand):
        if count(hi) >= n:
            break
        lo, s = hi, s * 2
        hi = lo + s
    else:
        raise BracketError("could not bracket the eigenvalue")
    # interval where the zero count jumps from n-1 to n
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if count(mid) >= n:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-6 * max(1.0, abs(hi)):
            break
    width = max(hi - lo, 1e-3 * max(1.0, abs(hi)))
    return lo - width, hi + width


def sl_eigen_shoot(problem: SturmLiouvilleProblem, n: int, bracket=None, steps=4096,
                   iterations=80, tol=1e-13) -> SLEigenResult:
    """n-th Dirichlet eigenpair by shooting and bisection on ``y(b)``.

    RK4 with ``steps`` and ``2 steps`` is combined by one Richardson step.
    The eigenfunction is normalized to unit weighted norm with positive slope
    at the left end.

    Raises
    ------
    BracketError
        When the mismatch has no sign change across ``bracket``.
    StiffnessError
        When the two step counts disagree beyond the accuracy target.
    """
    if problem.bc != "dirichlet" or any(v != 0 for v in problem.bc_values):
        raise UnsupportedError("shooting is implemented for homogeneous Dirichlet data")
    if n < 1:
        raise DomainError("eigenvalue index starts at 1")
    if bracket is None:
        bracket = sl_eigen_bracket(problem, n)
    coarse = _Shooter(problem, steps)
    fine = _Shooter(problem, 2 * steps)
    lo, hi = map(float, bracket)
    mlo, _ = _mismatch(coarse, fine, lo)
    mhi, _ = _mismatch(coarse, fine, hi)
    if mlo == 0:
        hi = lo
    elif mhi == 0:
        lo = hi
    elif np.sign(mlo) == np.sign(mhi):
        raise BracketError(f"no sign change of y(b) on [{lo}, {hi}]")
    it = 0
    while it < iterations and hi - lo > tol * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        mm, _ = _mismatch(coarse, fine, mid)
        if mm == 0:
            lo = hi = mid
            break
        if np.sign(mm) == np.sign(mlo):
            lo, mlo = mid, mm
        else:
            hi = mid
        it += 1
    lam = 0.5 * (lo + hi)
    with np.errstate(over="ignore", invalid="ignore"):
        tc = coarse.trajectory(lam)
        tf = fine.trajectory(lam)[::2]
    y = (16.0 * tf[:, 0] - tc[:, 0]) / 15.0
    amp = np.max(np.abs(y))
    if not np.all(np.isfinite(y)) or np.max(np.abs(tf[:, 0] - tc[:, 0])) > 1e-5 * amp:
        raise StiffnessError("RK4 step halving changed the solution beyond tolerance")
    x = coarse.x
    w = _simpson_weights(x)
    norm = math.sqrt(np.sum(w * y * y * call_array(problem.rho, x)))
    phi = y / norm
    core = phi[1:-1]
    zscale = 1e-9 * np.max(np.abs(phi))
    sig = np.sign(np.where(np.abs(core) < zscale, 0.0, core))
    sig = sig[sig != 0]
    zeros = int(np.sum(sig[1:] * sig[:-1] < 0))
    return SLEigenResult(lam, x, phi, zeros, it)


def _simpson_weights(x):
    n = len(x) - 1
    if n % 2:
        raise DomainError("Simpson needs an even number of intervals")
    h = x[1] - x[0]
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w * h / 3.0
