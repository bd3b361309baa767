"""Green's functions of linear ODEs.

Closed-form catalog kernels, truncated spectral sums
``G(x, x') = sum_j psi_j(x) conj(psi_j(x')) / lambda_j``, and solution of the
inhomogeneous problem by quadrature ``y(x) = int G(x, x') f(x') dx'`` with the
integration range split at the kink ``x' = x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ._numerics import call_array, integrate
from .errors import DegeneracyError, DomainError, QuadratureError


@dataclass(frozen=True)
class GreensKernel:
    """Green's function in closed form or as a spectral sum.

    ``operator(y, dy, d2y, x)`` applies the differential operator the kernel
    inverts (used for residual checks); ``causal`` kernels vanish for
    ``x' > x``.
    """

    tag: str
    closed_form: Optional[Callable] = None
    pairs: tuple = ()
    name: str = ""
    causal: bool = False
    operator: Optional[Callable] = None

    def __post_init__(self):
        if self.tag not in ("closed-form", "spectral"):
            raise DomainError(f"unknown kernel representation {self.tag!r}")
        if self.tag == "spectral":
            for lam, _ in self.pairs:
                if lam == 0:
                    raise DegeneracyError("spectral sum has a zero eigenvalue")

    @property
    def truncation(self):
        return len(self.pairs)

    def __call__(self, x, xp):
        if self.tag == "closed-form":
            return self.closed_form(np.asarray(x, dtype=float), np.asarray(xp, dtype=float))
        return spectral_green(self.pairs, x, xp)

    def evaluate(self, x, xp):
        """Value and tail estimate (magnitude of the last retained term)."""
        val = self(x, xp)
        if self.tag == "closed-form":
            return val, 0.0
        lam, psi = self.pairs[-1]
        last = np.abs(call_array(psi, np.asarray(x, float)) * np.conj(call_array(psi, np.asarray(xp, float))) / lam)
        return val, last


def spectral_green(pairs, x, xp):
    """Truncated spectral sum ``sum psi(x) conj(psi(x')) / lambda``.

    Raises
    ------
    DegeneracyError
        If any eigenvalue is zero.
    """
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    total = 0.0
    for lam, psi in pairs:
        if lam == 0:
            raise DegeneracyError("spectral sum has a zero eigenvalue")
        total = total + call_array(psi, x) * np.conj(call_array(psi, xp)) / lam
    if np.isrealobj(total) or np.all(np.imag(total) == 0):
        total = np.real(total)
    return total


def _heaviside(s):
    return (np.asarray(s) > 0).astype(float)


def _sinh_ic(x, xp):
    d = x - xp
    return _heaviside(d) * np.sinh(np.where(d > 0, d, 0.0))


def _first_order(t, tp):
    d = t - tp
    return _heaviside(d) * np.exp(np.where(d > 0, d, 0.0))


def _harmonic(t, tp):
    d = t - tp
    return _heaviside(d) * np.sin(np.where(d > 0, d, 0.0))


_CATALOG = {
    "sinh-ic": (_sinh_ic, lambda y, dy, d2y, x: d2y - y),
    "first-order-exp": (_first_order, lambda y, dy, d2y, x: dy - y),
    "harmonic-ic": (_harmonic, lambda y, dy, d2y, x: d2y + y),
}


def catalog_kernel(name: str) -> GreensKernel:
    """Closed-form causal kernels.

    ``sinh-ic``          H(x-x') sinh(x-x')   for d^2/dx^2 - 1
    ``first-order-exp``  H(t-t') e^(t-t')     for d/dt - 1, y(0) = 0
    ``harmonic-ic``      H(t-t') sin(t-t')    for d^2/dt^2 + 1, y(0) = y'(0) = 0
    """
    try:
        fn, op = _CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown catalog kernel {name!r}; known: {sorted(_CATALOG)}")
    return GreensKernel("closed-form", fn, name=name, causal=True, operator=op)


def sine_basis(L, J, operator_symbol):
    """Dirichlet sine modes on [0, L] with eigenvalues ``operator_symbol(k_j)``.

    ``psi_j = sqrt(2/L) sin(k_j x)``, ``k_j = pi j / L``.
    """
    norm = math.sqrt(2.0 / L)
    pairs = []
    for j in range(1, J + 1):
        k = math.pi * j / L
        pairs.append((operator_symbol(k), _SineMode(norm, k)))
    return pairs


class _SineMode:
    def __init__(self, norm, k, shift=0.0):
        self.norm, self.k, self.shift = norm, k, shift

    def __call__(self, x):
        return self.norm * np.sin(self.k * (np.asarray(x, dtype=float) - self.shift))


def beam_kernel(L, J=200) -> GreensKernel:
    """Spectral kernel of d^4/dx^4 on [0, L] with simply supported ends."""
    return GreensKernel("spectral", pairs=tuple(sine_basis(L, J, lambda k: k ** 4)),
                        name="beam", operator=None)


def dirichlet_kernel(a, b, J, operator_symbol, name="dirichlet"):
    """Spectral kernel on [a, b] for a constant-coefficient operator whose
    action on ``sin(k (x - a))`` is multiplication by ``operator_symbol(k)``."""
    L = b - a
    norm = math.sqrt(2.0 / L)
    pairs = tuple((operator_symbol(math.pi * j / L), _SineMode(norm, math.pi * j / L, a))
                  for j in range(1, J + 1))
    return GreensKernel("spectral", pairs=pairs, name=name)


def solve_via_green(kernel: GreensKernel, f, domain, x, tol=1e-12):
    """``y(x) = int_domain G(x, x') f(x') dx'`` on the grid ``x``.

    The range is split at ``x' = x`` and each side integrated by composite
    Gauss-Legendre refinement. For causal kernels the upper limit is
    ``min(x, b)``, so semi-infinite domains need no truncation.

    Raises
    ------
    QuadratureError
        If the refinement does not converge.
    """
    a, b = domain
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if math.isinf(b) and not kernel.causal:
        raise DomainError("infinite upper limit needs a causal kernel")
    if math.isinf(a):
        raise DomainError("lower limit must be finite")
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        def integrand(s, xi=xi):
            return kernel(xi, s) * call_array(f, s)

        total = 0.0
        upper = min(xi, b) if kernel.causal else b
        if upper > a:
            lo_end = min(max(xi, a), upper)
            total += integrate(integrand, a, lo_end, tol=tol) if lo_end > a else 0.0
            if not kernel.causal and lo_end < b:
                total += integrate(integrand, lo_end, b, tol=tol)
        out[i] = total
    return out if np.ndim(x) else float(out[0])


def beam_deflection(c, L, x, J=51):
    """Simply supported beam deflection under uniform load by the sine series.

    ``(4 c L^4 / pi^5) sum_{j<=J} j^-5 sin(pi j x / L) sin^2(pi j / 2)``; only
    odd ``j`` contribute.
    """
    x = np.asarray(x, dtype=float)
    j = np.arange(1, J + 1, 2, dtype=float)
    terms = np.sin(np.pi * np.multiply.outer(x, j) / L) / j ** 5
    val = 4.0 * c * L ** 4 / math.pi ** 5 * np.sum(terms, axis=-1)
    return val if np.ndim(val) else float(val)


def beam_tail_bound(c, L, J):
    """Bound on the neglected part of :func:`beam_deflection` beyond J terms."""
    j0 = J + 1 if J % 2 == 0 else J + 2
    tail = math.fsum(1.0 / j ** 5 for j in range(j0, j0 + 200001, 2))
    return 4.0 * c * L ** 4 / math.pi ** 5 * tail
