"""Complex contour integrals, Laurent coefficients, residues and Cauchy derivatives."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._numerics import call_array, derivative, integrate, panel_nodes
from .errors import ConvergenceError, DomainError, EvaluationError


@dataclass(frozen=True)
class Contour:
    """Parameterized path ``z(t)``, ``t in [t0, t1]``.

    ``breakpoints`` mark parameter values where ``dz/dt`` may jump (polyline
    corners); Gauss panels are split there.
    """

    z: Callable
    dz: Callable
    t0: float
    t1: float
    periodic: bool = False
    breakpoints: tuple = ()

    def __post_init__(self):
        if not self.t1 > self.t0:
            raise DomainError("need t1 > t0")
        t = np.linspace(self.t0, self.t1, 18)[1:-1]
        t = t + 1e-3 * (self.t1 - self.t0) * np.sin(np.arange(16))  # avoid corners
        h = 1e-4 * (self.t1 - self.t0)
        fd = (call_array(self.z, t + h) - call_array(self.z, t - h)) / (2 * h)
        fd4 = (8 * fd - (call_array(self.z, t + 2 * h) - call_array(self.z, t - 2 * h)) / (4 * h) * 2) / 6
        ok = np.abs(fd4 - call_array(self.dz, t)) <= 1e-8 * np.maximum(1.0, np.abs(fd4))
        corner = np.array([any(abs(ti - b) < 3 * h for b in self.breakpoints) for ti in t], bool)
        if not np.all(ok | corner):
            raise DomainError("dz/dt disagrees with finite differences of z")


def circle(center=0.0, radius=1.0):
    c, R = complex(center), float(radius)
    if R <= 0:
        raise DomainError("radius must be positive")
    return Contour(lambda t: c + R * np.exp(1j * np.asarray(t)),
                   lambda t: 1j * R * np.exp(1j * np.asarray(t)),
                   0.0, 2 * math.pi, periodic=True)


def segment(a, b):
    a, b = complex(a), complex(b)
    return Contour(lambda t: a + (b - a) * np.asarray(t), lambda t: (b - a) + 0 * np.asarray(t), 0.0, 1.0)


def polyline(points: Sequence[complex], closed=False):
    """Piecewise-linear path through ``points`` with unit parameter per edge."""
    p = np.asarray(points, dtype=complex)
    if closed:
        p = np.append(p, p[0])
    if len(p) < 2:
        raise DomainError("need at least two points")
    m = len(p) - 1

    def idx(t):
        t = np.asarray(t, dtype=float)
        return np.clip(np.floor(t).astype(int), 0, m - 1), t

    def z(t):
        i, t = idx(t)
        return p[i] + (p[i + 1] - p[i]) * (t - i)

    def dz(t):
        i, _ = idx(t)
        return p[i + 1] - p[i]

    return Contour(z, dz, 0.0, float(m), breakpoints=tuple(float(k) for k in range(1, m)))


@dataclass(frozen=True)
class ContourResult:
    value: complex
    error: float
    nodes: int


def _samples(f, c, t):
    zt = call_array(c.z, t)
    with np.errstate(all="ignore"):
        g = call_array(f, zt.astype(complex)) * call_array(c.dz, t)
    if not np.all(np.isfinite(g)):
        raise EvaluationError("integrand is not finite on the contour")
    return g


def contour_integrate(f, c: Contour, n=None, tol=1e-13, max_nodes=2 ** 17, full_output=False):
    """``int_C f(z) dz``.

    Periodic contours use the trapezoid rule on ``n`` nodes (default 256),
    doubling until two rules agree; open or piecewise contours use composite
    Gauss-Legendre panels refined the same way.
    """
    L = c.t1 - c.t0
    if c.periodic:
        m = n or 256
        prev = None
        while True:
            t = c.t0 + L * np.arange(m) / m
            val = complex(np.sum(_samples(f, c, t)) * L / m)
            if prev is not None:
                err = abs(val - prev)
                if err <= tol * max(1.0, abs(val)):
                    break
            if 2 * m > max_nodes:
                raise ConvergenceError(f"trapezoid rule not converged at {m} nodes (change {err:.2e})")
            prev, m = val, 2 * m
        res = ContourResult(val, err, m)
    else:
        base = np.array([c.t0, *[b for b in c.breakpoints if c.t0 < b < c.t1], c.t1])
        k, prev, q = 1, None, n or 24
        while True:
            edges = np.concatenate([np.linspace(base[i], base[i + 1], k + 1)[:-1]
                                    for i in range(len(base) - 1)] + [base[-1:]])
            t, w = panel_nodes(edges, q)
            val = complex(np.sum(w * _samples(f, c, t)))
            if prev is not None:
                err = abs(val - prev)
                if err <= tol * max(1.0, abs(val)):
                    break
            if len(t) > max_nodes:
                raise ConvergenceError(f"panel rule not converged (change {err:.2e})")
            prev, k = val, 2 * k
        res = ContourResult(val, err, len(t))
    return res if full_output else res.value


def trapezoid_circle(f, center, radius, n):
    """Single fixed-``n`` trapezoid value on a circle (no refinement)."""
    c = circle(center, radius)
    t = 2 * math.pi * np.arange(n) / n
    return complex(np.sum(_samples(f, c, t)) * 2 * math.pi / n)


def laurent_coefficient(f, z0, k: int, r: float, n=None):
    """``a_k = (1/2 pi i) oint f(chi) (chi - z0)^(-k-1) d chi`` on ``|chi - z0| = r``."""
    z0 = complex(z0)
    g = lambda z: call_array(f, z) * (z - z0) ** (-k - 1)
    return contour_integrate(g, circle(z0, r), n=n) / (2j * math.pi)


def default_radius(z0, singularities=()):
    others = [abs(complex(s) - complex(z0)) for s in singularities if abs(complex(s) - complex(z0)) > 0]
    return 0.5 * min(others) if others else 0.5


def residue_at(f, z0, r=None, singularities=()):
    """Residue ``a_{-1}`` at ``z0``; radius defaults to half the distance to the nearest listed singularity."""
    if r is None:
        r = default_radius(z0, singularities)
    return laurent_coefficient(f, z0, -1, r)


def cauchy_derivative(f, z0, n: int, r=0.5):
    """``f^(n)(z0) = n!/(2 pi i) oint f(z)/(z - z0)^(n+1) dz``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return math.factorial(n) * laurent_coefficient(f, z0, n, r)


def cauchy_riemann_residuals(f, z, h=1e-4):
    """``(u_x - v_y, u_y + v_x)`` at ``z`` by central differences."""
    z = complex(z)
    fx = lambda x: complex(f(complex(x, z.imag)))
    fy = lambda y: complex(f(complex(z.real, y)))
    dfx = derivative(lambda x: np.array([fx(xi) for xi in np.atleast_1d(x)]), z.real, h=h).item()
    dfy = derivative(lambda y: np.array([fy(yi) for yi in np.atleast_1d(y)]), z.imag, h=h).item()
    return dfx.real - dfy.imag, dfy.real + dfx.imag


@dataclass(frozen=True)
class RealLineResult:
    value: complex
    tail: complex
    T: float


def real_line_integral(g, T, p=0.0, tail_terms=3):
    """``int_{-T}^{T} e^{ipx} g(x) dx`` plus an oscillatory tail estimate.

    For ``p != 0`` the pieces beyond ``|x| = T`` are estimated by repeated
    integration by parts, ``-e^{ipT} sum_m (-1)^m g^(m)(T)/(ip)^(m+1)`` and its
    mirror at ``-T``; the returned ``value`` includes that estimate.  For
    ``p = 0`` the tails are integrated after ``x = 1/u``, which assumes
    ``g = O(x^-2)``.
    """
    if T <= 0:
        raise DomainError("T must be positive")
    pts = np.linspace(-T, T, int(math.ceil(2 * T * max(1.0, abs(p)) / 2.0)) + 1)
    c = Contour(lambda t: np.asarray(t, dtype=complex), lambda t: 1.0 + 0 * np.asarray(t, dtype=complex),
                -T, T, breakpoints=tuple(pts[1:-1]))
    f = lambda x: np.exp(1j * p * x) * call_array(g, np.asarray(x).real)
    body = contour_integrate(f, c, tol=1e-12)
    tail = 0j
    if p == 0:
        for s in (1.0, -1.0):
            h = lambda u, s=s: call_array(g, s / np.asarray(u)) / np.asarray(u) ** 2
            tail += integrate(lambda u: np.real(h(u)), 0.0, 1.0 / T, tol=1e-13)
            if np.iscomplexobj(np.asarray(g(s * T))):
                tail += 1j * integrate(lambda u: np.imag(h(u)), 0.0, 1.0 / T, tol=1e-13)
    else:
        ip = 1j * p
        for m in range(tail_terms):
            gm_r = complex(np.asarray(derivative(g, T, order=m, h=1e-2 * max(1.0, T))).item()) if m else complex(g(T))
            gm_l = complex(np.asarray(derivative(g, -T, order=m, h=1e-2 * max(1.0, T))).item()) if m else complex(g(-T))
            tail += (-1) ** m * (-cmath.exp(ip * T) * gm_r + cmath.exp(-ip * T) * gm_l) / ip ** (m + 1)
    return RealLineResult(body + tail, tail, T)


@dataclass(frozen=True)
class WorkedIntegral:
    label: str
    computed: complex
    expected: complex

    @property
    def error(self):
        return abs(self.computed - self.expected)


def worked_integrals():
    """Table of the classic worked contour integrals, computed against closed forms."""
    rows = []
    for R in (0.5, 1.0, 7.0):
        rows.append(WorkedIntegral(f"oint_|z|={R} dz/z", contour_integrate(lambda z: 1 / z, circle(0, R)), 2j * math.pi))
    rows.append(WorkedIntegral("oint_|z|=1 e^z dz", contour_integrate(np.exp, circle(0, 1)), 0))
    rows.append(WorkedIntegral("oint_|z|=1 e^(1/z) dz", contour_integrate(lambda z: np.exp(1 / z), circle(0, 1), n=1024), 2j * math.pi))
    rows.append(WorkedIntegral("Res e^(-1/z) at 0", residue_at(lambda z: np.exp(-1 / z), 0, 1.0), -1))
    f1 = lambda z: (3 * z + 2) / (z * (z + 1) ** 3)
    rows.append(WorkedIntegral("Res (3z+2)/(z(z+1)^3) at 0", residue_at(f1, 0, singularities=[-1]), 2))
    rows.append(WorkedIntegral("Res (3z+2)/(z(z+1)^3) at -1", residue_at(f1, -1, singularities=[0]), -2))
    rows.append(WorkedIntegral("oint_|z|=3 (3z+2)/(z(z+1)^3) dz", contour_integrate(f1, circle(0, 3)), 0))
    rows.append(WorkedIntegral("oint_|z|=3 e^(2z)/(z+1)^4 dz",
                               contour_integrate(lambda z: np.exp(2 * z) / (z + 1) ** 4, circle(0, 3)),
                               8j * math.pi * math.exp(-2) / 3))
    rows.append(WorkedIntegral("Res 1/((z+i)(z-i)) at i",
                               residue_at(lambda z: 1 / ((z + 1j) * (z - 1j)), 1j, singularities=[-1j]), 1 / 2j))
    r = real_line_integral(lambda x: 1 / (x ** 2 + 1), 100.0)
    rows.append(WorkedIntegral("int_-100^100 dx/(x^2+1)", r.value, math.pi))
    for p, a in ((1.0, 2.0), (-1.0, 0.5)):
        r = real_line_integral(lambda x, a=a: 1 / (x ** 2 + a ** 2), 100.0, p)
        rows.append(WorkedIntegral(f"int e^(i{p:g}x)/(x^2+{a:g}^2) dx", r.value, math.pi / abs(a) * math.exp(-abs(p * a))))
    return rows
