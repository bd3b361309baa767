"""Distributions as linear functionals on test functions.

A :class:`Distribution` is a tagged catalog entry; pairing it with a
:class:`TestFunction` returns ``(value, error_estimate)``. Sums and scalar
multiples form :class:`LinearCombination`; a smooth multiplier ``g`` acts by
``<g F, phi> = <F, g phi>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy import integrate as _sp_integrate

from ._numerics import call_array, derivative as _fd, integrate
from .errors import (
    DecayError,
    DegeneracyError,
    DerivativeOrderError,
    DomainError,
    EdgeSupportError,
    UnsupportedError,
)

_EDGE_TOL = 1e-14


# --- truncated Taylor arithmetic for exact bump derivatives ---------------

def _jet_mul(a, b):
    return np.convolve(a, b)[: len(a)]


def _jet_recip(a):
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for n in range(1, len(a)):
        out[n] = -np.dot(a[1: n + 1], out[n - 1:: -1][:n]) / a[0]
    return out


def _jet_exp(a):
    out = np.zeros_like(a)
    out[0] = math.exp(a[0])
    for n in range(1, len(a)):
        k = np.arange(1, n + 1)
        out[n] = np.dot(k * a[1: n + 1], out[n - 1:: -1][:n]) / n
    return out


class Pairing(NamedTuple):
    value: complex
    error: float


@dataclass(frozen=True)
class TestFunction:
    """Smooth test function with derivative access.

    ``kind`` is one of ``compact-bump``, ``gaussian``, ``polynomial`` or
    ``generic-smooth``.  Generic functions get 4th-order central differences
    for orders up to four.
    """

    value: Callable
    kind: str = "generic-smooth"
    support: Optional[tuple] = None
    exact_derivative: Optional[Callable] = None
    decays: bool = False
    max_order: Optional[int] = None
    params: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        y = np.asarray(call_array(self.value, x), dtype=float)
        if self.support is not None:
            lo, hi = self.support
            y = np.where((x > lo) & (x < hi), y, 0.0)
        return y

    def derivative(self, order: int, x):
        if order == 0:
            return self(x)
        if self.max_order is not None and order > self.max_order:
            raise DerivativeOrderError(f"{self.kind} test function supplies orders <= {self.max_order}")
        if self.exact_derivative is not None:
            return np.asarray(self.exact_derivative(order, np.asarray(x, dtype=float)), dtype=float)
        if order > 4:
            raise DerivativeOrderError("finite-difference derivatives are limited to order 4")
        return np.asarray(_fd(self, x, order=order), dtype=float)

    def window(self):
        """Finite interval outside which the function is negligible."""
        if self.support is not None:
            return tuple(float(s) for s in self.support)
        if self.kind == "gaussian":
            c, s = self.params["center"], self.params["scale"]
            return (c - 7.0 * s, c + 7.0 * s)
        if self.decays:
            from .harmonic import decay_window
            R = decay_window(self, threshold=1e-16)
            return (-R, R)
        raise DecayError(f"{self.kind} test function has no support or decay")

    def reflected(self):
        """``x -> phi(-x)``."""
        sup = None if self.support is None else (-self.support[1], -self.support[0])
        ed = None
        if self.exact_derivative is not None or self.kind != "generic-smooth":
            ed = lambda n, x: (-1.0) ** n * self.derivative(n, -np.asarray(x))
        params = dict(self.params)
        if "center" in params:
            params["center"] = -params["center"]
        return TestFunction(lambda x: self(-np.asarray(x)), self.kind, sup, ed,
                            self.decays, self.max_order, params)

    def times(self, g: "TestFunction"):
        """Pointwise product with derivatives by the Leibniz rule."""
        def d(n, x):
            return sum(math.comb(n, k) * g.derivative(k, x) * self.derivative(n - k, x)
                       for k in range(n + 1))
        sup = self.support if self.support is not None else g.support
        kind = "generic-smooth" if self.kind != "compact-bump" else "compact-bump"
        params = dict(self.params) if self.kind == "gaussian" and g.kind == "polynomial" else {}
        if params:
            kind = "gaussian"
        return TestFunction(lambda x: g(x) * self(x), kind, sup, d,
                            self.decays or g.decays or self.kind == "gaussian",
                            None, params)


def bump(sigma=1.0, a=0.0):
    """``exp(-1/(1 - ((x-a)/sigma)^2))`` on ``(a - sigma, a + sigma)``."""
    if sigma <= 0:
        raise DomainError("sigma must be positive")

    def value(x):
        u = (np.asarray(x, dtype=float) - a) / sigma
        inside = np.abs(u) < 1
        w = np.where(inside, 1 - u * u, 1.0)
        return np.where(inside, np.exp(-1.0 / w), 0.0)

    def deriv(n, x):
        scalar = np.ndim(x) == 0
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape)
        for i, xi in enumerate(x.ravel()):
            u0 = (xi - a) / sigma
            if abs(u0) >= 1:
                continue
            u = np.zeros(n + 1)
            u[0] = u0
            if n >= 1:
                u[1] = 1.0 / sigma
            w = -_jet_mul(u, u)
            w[0] += 1.0
            gser = -_jet_recip(w)
            if gser[0] < -745:
                continue
            out.flat[i] = _jet_exp(gser)[n] * math.factorial(n)
        return out[0] if scalar else out

    return TestFunction(value, "compact-bump", (a - sigma, a + sigma), deriv,
                        params={"sigma": sigma, "a": a})


def gaussian(scale=1.0, center=0.0, amplitude=1.0):
    """``A exp(-((x-c)/s)^2)`` with Hermite-polynomial derivatives."""
    if scale <= 0:
        raise DomainError("scale must be positive")

    def value(x):
        u = (np.asarray(x, dtype=float) - center) / scale
        return amplitude * np.exp(-u * u)

    def deriv(n, x):
        u = (np.asarray(x, dtype=float) - center) / scale
        Hn = np.polynomial.hermite.hermval(u, [0] * n + [1])
        return amplitude * (-1.0) ** n * scale ** -n * Hn * np.exp(-u * u)

    return TestFunction(value, "gaussian", None, deriv, True,
                        params={"scale": scale, "center": center, "amplitude": amplitude})


def polynomial(coeffs):
    """Polynomial with coefficients in increasing degree."""
    c = np.asarray(coeffs, dtype=float)
    P = np.polynomial.Polynomial(c)
    return TestFunction(lambda x: P(np.asarray(x, dtype=float)), "polynomial", None,
                        lambda n, x: P.deriv(n)(np.asarray(x, dtype=float)) if n <= P.degree() else 0.0 * np.asarray(x, dtype=float),
                        params={"coeffs": tuple(c)})


def generic(value, support=None, decays=False, derivative=None, max_order=None):
    return TestFunction(value, "generic-smooth", support, derivative, decays, max_order)


# --- quadrature helpers ---------------------------------------------------

def _quad(g, a, b, breakpoints=(), tol=1e-12):
    if b <= a:
        return 0.0, 0.0
    val, err = integrate(g, a, b, n=48, tol=tol, breakpoints=breakpoints, full_output=True)
    return val, err


def _half_line(phi):
    lo, hi = phi.window()
    return max(0.0, hi), max(0.0, -lo)


def _one_sided(weight, phi, combine, log_weight=False):
    """``int_0^R weight(x) [phi(x) combine phi(-x)] dx`` over the window."""
    rp, rm = _half_line(phi)
    R = max(rp, rm)
    if R == 0:
        return 0.0, 0.0
    h = lambda x: phi(x) + combine * phi(-np.asarray(x))
    if log_weight:
        # log singularity at the origin handled by QUADPACK's algebraic-log weight
        a = min(1.0, R)
        v1, e1 = _sp_integrate.quad(lambda x: float(h(x)), 0.0, a, weight="alg-loga",
                                    wvar=(0.0, 0.0), epsabs=1e-13, epsrel=1e-12, limit=200)
        v2, e2 = _quad(lambda x: np.log(x) * h(x), a, R)
        return v1 + v2, e1 + e2
    g = lambda x: weight(np.asarray(x)) * h(x)
    mids = [p for p in (1.0,) if p < R]
    return _quad(g, 0.0, R, breakpoints=mids)


# --- catalog --------------------------------------------------------------

class _Pairable:
    def pair(self, phi: TestFunction) -> Pairing:
        raise NotImplementedError

    def __add__(self, other):
        return LinearCombination(((1.0, self), (1.0, other)))

    def __sub__(self, other):
        return LinearCombination(((1.0, self), (-1.0, other)))

    def __rmul__(self, c):
        return LinearCombination(((c, self),))

    def __mul__(self, c):
        return LinearCombination(((c, self),))

    def __neg__(self):
        return LinearCombination(((-1.0, self),))

    def multiply(self, g: TestFunction):
        """Product with the smooth multiplier ``g``."""
        return Multiplied(g, self)


KINDS = ("delta", "heaviside", "sign", "abs", "log-abs", "pv-inverse-power", "pole", "regular")


@dataclass(frozen=True, eq=False)
class Distribution(_Pairable):
    kind: str
    order: int = 0
    center: float = 0.0
    power: int = 1
    pole_sign: int = 1
    func: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown distribution kind {self.kind!r}")
        if self.order < 0:
            raise DomainError("delta order must be nonnegative")
        if self.kind == "pv-inverse-power" and self.power < 1:
            raise DomainError("principal-value power must be >= 1")
        if self.kind == "pole" and self.pole_sign not in (1, -1):
            raise DomainError("pole sign must be +1 or -1")
        if self.kind == "regular" and self.func is None:
            raise DomainError("regular distribution needs a function")

    def pair(self, phi):
        k = self.kind
        if k == "delta":
            y = self.center
            if phi.support is not None:
                lo, hi = phi.support
                if abs(y - lo) <= _EDGE_TOL or abs(y - hi) <= _EDGE_TOL:
                    raise EdgeSupportError(f"delta at {y} sits on the support boundary")
                if y < lo or y > hi:
                    return Pairing(0.0, 0.0)
            n = self.order
            return Pairing(float((-1) ** n * phi.derivative(n, y)), 0.0)
        if k == "heaviside":
            return Pairing(*_one_sided(lambda x: np.ones_like(x), phi, 0.0))
        if k == "sign":
            return Pairing(*_one_sided(lambda x: np.ones_like(x), phi, -1.0))
        if k == "abs":
            return Pairing(*_one_sided(lambda x: x, phi, 1.0))
        if k == "log-abs":
            return Pairing(*_one_sided(None, phi, 1.0, log_weight=True))
        if k == "pv-inverse-power":
            return _pv_power(self.power, phi)
        if k == "pole":
            pv = _pv_power(1, phi)
            return Pairing(pv.value - self.pole_sign * 1j * math.pi * float(phi(0.0)), pv.error)
        # regular
        lo, hi = phi.window()
        g = lambda x: call_array(self.func, np.asarray(x)) * phi(x)
        brk = [0.0] if lo < 0 < hi else []
        return Pairing(*_quad(g, lo, hi, breakpoints=brk))


def _pv_power(n, phi):
    # P(1/x^n)[phi] = P(1/x)[phi^(n-1)] / (n-1)!
    if n == 1:
        psi = phi
    else:
        psi = _with_window(TestFunction(lambda x: phi.derivative(n - 1, x), "generic-smooth",
                                        phi.support, None, True, 0), phi)
    v, e = _one_sided(lambda x: 1.0 / x, psi, -1.0)
    f = math.factorial(n - 1)
    return Pairing(v / f, e / f)


class _Windowed(TestFunction):
    """Test function that inherits the integration window of its parent."""

    def window(self):
        return self.params["_window"]


def _with_window(psi, phi):
    return _Windowed(psi.value, psi.kind, psi.support, psi.exact_derivative, psi.decays,
                     psi.max_order, {"_window": phi.window()})


@dataclass(frozen=True, eq=False)
class LinearCombination(_Pairable):
    terms: tuple

    def pair(self, phi):
        total, err = 0.0, 0.0
        for c, F in self.terms:
            v, e = F.pair(phi)
            total += c * v
            err += abs(c) * e
        return Pairing(total, err)

    def weights(self):
        return [c for c, _ in self.terms]


@dataclass(frozen=True, eq=False)
class Multiplied(_Pairable):
    g: TestFunction
    F: _Pairable

    def pair(self, phi):
        return self.F.pair(phi.times(self.g))


@dataclass(frozen=True, eq=False)
class Derivative(_Pairable):
    """``F^(k)`` paired by transfer: ``(-1)^k <F, phi^(k)>``."""

    F: _Pairable
    k: int = 1

    def pair(self, phi):
        k = self.k
        psi = _with_window(
            TestFunction(lambda x: phi.derivative(k, x), "generic-smooth", phi.support,
                         lambda n, x: phi.derivative(n + k, x), True, None), phi)
        v, e = self.F.pair(psi)
        return Pairing((-1) ** k * v, e)


def pair(F: _Pairable, phi: TestFunction) -> Pairing:
    return F.pair(phi)


def delta(order=0, center=0.0):
    return Distribution("delta", order=order, center=center)


def heaviside():
    return Distribution("heaviside")


def sign():
    return Distribution("sign")


def absolute():
    return Distribution("abs")


def log_abs():
    return Distribution("log-abs")


def pv(power=1):
    return Distribution("pv-inverse-power", power=power)


def pole(pole_sign=1):
    """``1/(x + i0)`` for ``pole_sign=+1``, ``1/(x - i0)`` for ``-1``."""
    return Distribution("pole", pole_sign=pole_sign)


def regular(f):
    return Distribution("regular", func=f)


def distribution_derivative(F):
    """Derivative in the distributional sense, expressed in the catalog."""
    if isinstance(F, LinearCombination):
        return LinearCombination(tuple((c, distribution_derivative(G)) for c, G in F.terms))
    if isinstance(F, Multiplied):
        gp = TestFunction(lambda x: F.g.derivative(1, x), "generic-smooth", F.g.support,
                          lambda n, x: F.g.derivative(n + 1, x))
        return Multiplied(gp, F.F) + Multiplied(F.g, distribution_derivative(F.F))
    k = F.kind
    if k == "heaviside":
        return delta(0, 0.0)
    if k == "sign":
        return 2.0 * delta(0, 0.0)
    if k == "abs":
        return sign()
    if k == "log-abs":
        return pv(1)
    if k == "delta":
        return delta(F.order + 1, F.center)
    if k == "pv-inverse-power":
        return -float(F.power) * pv(F.power + 1)
    raise UnsupportedError(f"derivative of {k!r} is not in the catalog")


# --- delta sequences ------------------------------------------------------

SEQUENCES = ("box", "gaussian", "lorentzian", "dirichlet")


def delta_sequence_eval(kind, n, x):
    if n < 1:
        raise DomainError("n must be >= 1")
    x = np.asarray(x, dtype=float)
    if kind == "box":
        return np.where(np.abs(x) < 1.0 / (2 * n), float(n), 0.0)
    if kind == "gaussian":
        return n / math.sqrt(math.pi) * np.exp(-(n * x) ** 2)
    if kind == "lorentzian":
        return n / (math.pi * (1 + (n * x) ** 2))
    if kind == "dirichlet":
        return np.where(x == 0, n / math.pi, np.sin(n * x) / (math.pi * np.where(x == 0, 1.0, x)))
    raise DomainError(f"unknown delta sequence {kind!r}")


def _pair_sequence(kind, phi, n):
    if kind == "box":
        h = 1.0 / (2 * n)
        v, _ = _quad(lambda x: phi(x), -h, h)
        return n * v
    lo, hi = phi.window()
    scale = 1.0 / n
    pts = [s * scale * 2 ** j for j in range(0, 60) for s in (-1, 1) if lo < s * scale * 2 ** j < hi]
    pts.append(0.0)
    if kind == "dirichlet":
        step = math.pi / n
        pts.extend(np.arange(math.ceil(lo / step), math.floor(hi / step) + 1) * step)
    pts = sorted(p for p in set(pts) if lo < p < hi)
    v, _ = _quad(lambda x: delta_sequence_eval(kind, n, x) * phi(x), lo, hi, breakpoints=pts)
    return v


def pair_seq(kind, phi, ns: Sequence[int]):
    """Table of ``(n, <delta_n, phi>, |<delta_n, phi> - phi(0)|)``."""
    ref = float(phi(0.0))
    rows = []
    for n in ns:
        v = _pair_sequence(kind, phi, int(n))
        rows.append((int(n), v, abs(v - ref)))
    return rows


def dirichlet_integral(T):
    """``int_0^T sin(t)/t dt``."""
    g = lambda t: np.sinc(np.asarray(t) / math.pi)
    edges = np.arange(1, int(T / math.pi) + 1) * math.pi
    return _quad(g, 0.0, T, breakpoints=edges[edges < T])[0]


# --- composition, Sokhotsky, moments --------------------------------------

def compose_delta(f, roots, fprime=None):
    """``delta(f(x)) = sum_i delta(x - x_i)/|f'(x_i)|`` over simple roots ``x_i``."""
    terms = []
    for r in roots:
        d = float(fprime(r)) if fprime is not None else float(_fd(f, r, order=1))
        if abs(d) < 1e-10:
            raise DegeneracyError(f"root {r} is not simple (f' = {d:.3e})")
        terms.append((1.0 / abs(d), delta(0, float(r))))
    return LinearCombination(tuple(terms))


@dataclass(frozen=True)
class SokhotskyResult:
    eps: np.ndarray
    values: np.ndarray
    limit: complex
    reference: complex
    gap: float
    last_gap: float


def _pole_integral(phi, eps, s):
    lo, hi = phi.window()
    pts = [sg * eps * 4 ** j for j in range(40) for sg in (-1, 1) if lo < sg * eps * 4 ** j < hi]
    pts = sorted(pts + ([0.0] if lo < 0 < hi else []))
    re = _quad(lambda x: np.asarray(x) * phi(x) / (np.asarray(x) ** 2 + eps ** 2), lo, hi, pts, tol=1e-13)[0]
    im = _quad(lambda x: eps * phi(x) / (np.asarray(x) ** 2 + eps ** 2), lo, hi, pts, tol=1e-13)[0]
    return re - s * 1j * im


def sokhotsky_limit(s, phi, eps_list=None):
    """``lim_{eps->0} int phi/(x + s i eps)`` against ``P(1/x)[phi] - s i pi phi(0)``.

    The last two values are extrapolated linearly in ``eps``.
    """
    if s in ("+", 1):
        s = 1
    elif s in ("-", -1):
        s = -1
    else:
        raise DomainError("sign must be '+' or '-'")
    eps = np.asarray(eps_list if eps_list is not None else [2.0 ** -k for k in range(4, 13)], float)
    vals = np.array([_pole_integral(phi, e, s) for e in eps])
    if len(eps) >= 2:
        e1, e2 = eps[-2], eps[-1]
        limit = (e1 * vals[-1] - e2 * vals[-2]) / (e1 - e2)
    else:
        limit = vals[-1]
    ref = pole(s).pair(phi).value
    return SokhotskyResult(eps, vals, complex(limit), complex(ref), abs(limit - ref), abs(vals[-1] - ref))


@dataclass(frozen=True)
class MomentExpansion:
    coeffs: np.ndarray

    def to_distribution(self):
        return LinearCombination(tuple((float(c), delta(k, 0.0)) for k, c in enumerate(self.coeffs)))


def delta_moment_expansion(f, K, window, breakpoints=()):
    """``f_k = (-1)^k/k! int f(y) y^k dy`` for k = 0..K over ``window``."""
    lo, hi = window
    out = []
    for k in range(K + 1):
        m = _quad(lambda y: call_array(f, np.asarray(y)) * np.asarray(y) ** k, lo, hi, breakpoints)[0]
        out.append((-1) ** k / math.factorial(k) * m)
    return MomentExpansion(np.asarray(out))
