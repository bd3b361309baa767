"""Fourier series, parameterized Fourier transforms and Legendre expansions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import call_array, integrate, panel_nodes
from .errors import ConvergenceError, DomainError, QuadratureError
from .specfun import legendre_table


@dataclass(frozen=True)
class FourierCoefficients:
    L: float
    a: np.ndarray  # a_0 .. a_K
    b: np.ndarray  # b_0 .. b_K, b_0 = 0

    @property
    def K(self):
        return len(self.a) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = np.arange(1, self.K + 1)
        ph = 2 * np.pi * np.multiply.outer(x, k) / self.L
        return self.a[0] / 2 + np.cos(ph) @ self.a[1:] + np.sin(ph) @ self.b[1:]

    def exponential(self):
        """``c_k`` for k = -K..K from the real coefficients."""
        c_pos = (self.a[1:] - 1j * self.b[1:]) / 2
        return np.concatenate([np.conj(c_pos[::-1]), [self.a[0] / 2], c_pos])


def _trapezoid_periodic(g, L, M):
    x = -L / 2 + L * np.arange(M) / M
    return x, np.full(M, L / M)


def _period_rule(f, L, K, kinks, tol, max_level=14):
    # cosine/sine moments on successively refined rules until stable
    k = np.arange(K + 1)
    prev = None
    for level in range(max_level):
        if kinks:
            edges = sorted({-L / 2, L / 2, *[p for p in kinks if -L / 2 < p < L / 2]})
            edges = np.concatenate([np.linspace(edges[i], edges[i + 1], 2 ** level + 1)[:-1]
                                    for i in range(len(edges) - 1)] + [[edges[-1]]])
            x, w = panel_nodes(edges, 32)
        else:
            x, w = _trapezoid_periodic(f, L, max(64, 4 * K) * 2 ** level)
        fx = call_array(f, x).astype(float)
        ph = 2 * np.pi * np.multiply.outer(k, x) / L
        a = (2 / L) * (np.cos(ph) * (w * fx)).sum(axis=1)
        b = (2 / L) * (np.sin(ph) * (w * fx)).sum(axis=1)
        cur = np.concatenate([a, b])
        if prev is not None:
            err = np.max(np.abs(cur - prev))
            if err <= tol * max(1.0, np.max(np.abs(cur))):
                return a, b, err
        prev = cur
    raise QuadratureError(f"Fourier coefficients did not settle (last change {err:.2e})")


def fourier_series_coeffs(f, L, K, kinks=(), tol=1e-12):
    """Real Fourier coefficients of ``f`` on ``[-L/2, L/2]``.

    ``f ~ a_0/2 + sum a_k cos(2 pi k x/L) + b_k sin(2 pi k x/L)``.  Smooth
    periodic integrands use the uniform trapezoid rule; listed ``kinks`` switch
    to Gauss panels split at those points.
    """
    if L <= 0 or K < 0:
        raise DomainError("need L > 0 and K >= 0")
    a, b, _ = _period_rule(f, L, K, tuple(kinks), tol)
    b[0] = 0.0
    return FourierCoefficients(float(L), a, b)


def exponential_coeffs(f, L, K, kinks=(), tol=1e-12):
    """``c_k = (1/L) int f(x) e^{-2 pi i k x/L} dx`` for k = -K..K, computed directly."""
    ks = np.arange(-K, K + 1)
    out = np.empty(len(ks), dtype=complex)
    edges = sorted({-L / 2, L / 2, *[p for p in kinks if -L / 2 < p < L / 2]})
    for i, k in enumerate(ks):
        g = lambda x, k=k: call_array(f, x) * np.exp(-2j * np.pi * k * x / L)
        out[i] = integrate(g, -L / 2, L / 2, n=48, tol=tol, breakpoints=edges[1:-1]) / L
    return out


@dataclass(frozen=True)
class FourierConvention:
    """Transform pair with frequency scale ``A`` and inverse prefactor ``B``.

    Forward: ``A/(2 pi B) int f(x) e^{-i A k x} dx``.
    Inverse: ``B int F(k) e^{+i A k x} dk``.
    ``A = 2 pi, B = 1`` is the unitary ordinary-frequency pair; ``A = 1,
    B = 1/(2 pi)`` is the angular-frequency pair with no forward prefactor.
    """

    A: float = 2 * math.pi
    B: float = 1.0

    def __post_init__(self):
        if self.A == 0 or self.B == 0:
            raise DomainError("A and B must be nonzero")

    @property
    def alpha(self):
        return self.A / (2 * math.pi * self.B)

    @property
    def beta(self):
        return self.B


UNITARY = FourierConvention(2 * math.pi, 1.0)
ANGULAR = FourierConvention(1.0, 1.0 / (2 * math.pi))


def decay_window(f, threshold=1e-14, start=1.0, max_doublings=12):
    """Smallest ``R = start 2^m`` with ``|f(+-R)|`` below ``threshold``."""
    R = float(start)
    for _ in range(max_doublings + 1):
        ends = np.abs(call_array(f, np.array([-R, R])))
        if np.all(ends < threshold):
            return R
        R *= 2
    raise ConvergenceError(f"function does not decay below {threshold} within |x| <= {R / 2}")


def _oscillatory_integral(f, omega, R, breakpoints, tol, max_level=6):
    # one panel grid shared by every frequency, refined until all agree
    omega = np.atleast_1d(np.asarray(omega, dtype=float))
    wmax = float(np.max(np.abs(omega))) if omega.size else 0.0
    width = min(1.0, math.pi / wmax) if wmax else 1.0
    npan = max(1, int(math.ceil(2 * R / width)))
    base = np.union1d(np.linspace(-R, R, npan + 1), [p for p in breakpoints if -R < p < R])
    prev = None
    for level in range(max_level):
        k = 2 ** level
        edges = np.concatenate([np.linspace(base[i], base[i + 1], k + 1)[:-1]
                                for i in range(len(base) - 1)] + [base[-1:]])
        x, w = panel_nodes(edges, 32)
        fx = call_array(f, x)
        val = np.exp(-1j * np.multiply.outer(omega, x)) @ (w * fx)
        if prev is not None:
            err = np.max(np.abs(val - prev))
            if err <= tol * max(1.0, np.max(np.abs(val))):
                return val
        prev = val
    raise QuadratureError(f"oscillatory quadrature did not settle (last change {err:.2e})")


def fourier_transform_numeric(f, k, convention=UNITARY, breakpoints=(), tol=1e-12):
    """Forward transform of a rapidly decaying ``f`` at frequency ``k`` (scalar or array)."""
    R = decay_window(f)
    val = convention.alpha * _oscillatory_integral(f, convention.A * np.asarray(k), R, breakpoints, tol)
    return val if np.ndim(k) else complex(val[0])


def inverse_fourier_numeric(F, x, convention=UNITARY, breakpoints=(), tol=1e-12):
    """Inverse transform of a rapidly decaying ``F`` at position ``x`` (scalar or array)."""
    R = decay_window(F)
    val = convention.beta * _oscillatory_integral(F, -convention.A * np.asarray(x), R, breakpoints, tol)
    return val if np.ndim(x) else complex(val[0])


def legendre_expand(f, L, breakpoints=(), tol=1e-12):
    """``a_l = (2l+1)/2 int_{-1}^{1} f P_l`` for ``l = 0..L``."""
    if L < 0:
        raise DomainError("L must be nonnegative")
    ls = np.arange(L + 1)
    vals = []
    for l in ls:
        g = lambda x, l=l: call_array(f, x) * legendre_table(l, x)[l]
        vals.append(integrate(g, -1.0, 1.0, n=max(32, L + 8), tol=tol, breakpoints=breakpoints))
    return (2 * ls + 1) / 2 * np.asarray(vals, dtype=float)


def legendre_series(coeffs, x):
    coeffs = np.asarray(coeffs, dtype=float)
    return np.tensordot(coeffs, legendre_table(len(coeffs) - 1, x), axes=1)
