"""Registered worked examples, each reported as computed vs expected records.

A demo is a function of keyword options returning a :class:`DemoReport`.
Tolerances are multiplied by the ``PHYSKIT_TOL`` environment variable
(default 1.0) when the report is built.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import contour, distrib, divsum, finhilb, fuchsia, greens, harmonic
from .errors import DomainError


def tolerance_scale() -> float:
    raw = os.environ.get("PHYSKIT_TOL", "").strip()
    if not raw:
        return 1.0
    try:
        s = float(raw)
    except ValueError:
        raise DomainError(f"PHYSKIT_TOL must be a positive number, got {raw!r}")
    if not (s > 0 and math.isfinite(s)):
        raise DomainError(f"PHYSKIT_TOL must be a positive number, got {raw!r}")
    return s


@dataclass(frozen=True)
class DemoRecord:
    """One computed/expected comparison.

    ``norm`` is ``"abs"`` or ``"rel"``; for arrays the largest entrywise
    deviation is used, relative to the largest expected magnitude.
    """

    name: str
    anchor: str
    computed: object
    expected: object
    tolerance: float
    norm: str = "abs"
    source: str = "closed-form"

    @property
    def deviation(self) -> float:
        c = np.asarray(self.computed, dtype=complex)
        e = np.asarray(self.expected, dtype=complex)
        d = float(np.max(np.abs(c - e))) if c.size else 0.0
        if self.norm == "rel":
            d /= max(float(np.max(np.abs(e))), 1e-300)
        return d

    @property
    def status(self) -> str:
        d = self.deviation
        return "pass" if math.isfinite(d) and d <= self.tolerance else "fail"


@dataclass
class DemoReport:
    name: str
    records: list = field(default_factory=list)
    header: tuple = ()
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)


class _Builder:
    def __init__(self, name):
        self.report = DemoReport(name)
        self.scale = tolerance_scale()

    def add(self, name, anchor, computed, expected, tol, norm="abs", source="closed-form"):
        self.report.records.append(DemoRecord(name, anchor, computed, expected,
                                              tol * self.scale, norm, source))


REGISTRY: dict = {}


@dataclass(frozen=True)
class Demo:
    name: str
    func: Callable
    summary: str
    options: tuple = ()


def register(name, summary, options=()):
    def wrap(fn):
        REGISTRY[name] = Demo(name, fn, summary, tuple(options))
        return fn
    return wrap


def run_demo(name, **options) -> DemoReport:
    try:
        demo = REGISTRY[name]
    except KeyError:
        raise DomainError(f"unknown demo {name!r}; known: {', '.join(sorted(REGISTRY))}")
    kw = {k: v for k, v in options.items() if k in demo.options and v is not None}
    return demo.func(**kw)


def run_all() -> list:
    return [run_demo(n) for n in REGISTRY]


# --- ODE chapter ----------------------------------------------------------

_SL_WORKED = fuchsia.SturmLiouvilleProblem(lambda x: x ** 3, lambda x: x, lambda x: x, (1.0, 2.0))


@register("sl-eigen", "Sturm-Liouville eigenpairs of (x^3 y')' + (x + lambda x) y = 0 on [1, 2]",
          ("nmax",))
def _sl_eigen(nmax=4):
    b = _Builder("sl-eigen")
    log2 = math.log(2.0)
    for n in range(1, int(nmax) + 1):
        r = fuchsia.sl_eigen_shoot(_SL_WORKED, n)
        b.add(f"lambda_{n}", "sturm-liouville", r.eigenvalue, (n * math.pi / log2) ** 2, 1e-7, "rel")
        ref = math.sqrt(2 / log2) / r.x * np.sin(n * math.pi * np.log(r.x) / log2)
        b.add(f"phi_{n}(x) on grid", "sturm-liouville", r.phi, ref, 1e-5)
        b.report.rows.append((n, r.eigenvalue, r.interior_zeros))
    b.report.header = ("n", "eigenvalue", "interior_zeros")
    return b.report


@register("frobenius", "Fuchsian classification and a Frobenius series")
def _frobenius():
    b = _Builder("frobenius")
    ode = fuchsia.LinearODE2.from_polynomials
    worked = ode([0, 0, 1], [1, 3], [1])
    b.add("worked example: 0 irregular", "fuchsian",
          float(fuchsia.classify_point(worked, 0).kind == "irregular-singular"), 1.0, 0.0)
    b.add("worked example: exponents at infinity", "fuchsian",
          fuchsia.classify_point(worked, math.inf).exponents, (1.0, 1.0), 1e-12)
    b.add("z w'' + (1-z) w' = 0: exponents at 0", "fuchsian",
          fuchsia.classify_point(ode([0, 1], [1, -1], [0]), 0).exponents, (0.0, 0.0), 1e-12)
    ad4 = ode([0, 4, 2], [1], [0, -1])
    b.add("2z(z+2) w'' + w' - z w = 0: exponents at 0", "fuchsian",
          fuchsia.classify_point(ad4, 0).exponents, (0.75, 0.0), 1e-12)
    c2 = fuchsia.classify_point(ad4, -2)
    b.add("2z(z+2) w'' + w' - z w = 0: exponents at -2", "fuchsian", c2.exponents, (1.25, 0.0),
          1e-12, source="quadratic-root formula")
    b.report.notes.append(f"alpha0 at z=-2 is {c2.alpha0:g}; the exponent pair follows from "
                          "s(s-1) + alpha0 s + beta0 = 0")
    euler = ode([0, 0, 1], [0, -1, -1], [1])
    sol = fuchsia.frobenius_solve(euler, 0, 1.0, N=30)
    b.add("t^2 u'' - (t+t^2) u' + u = 0 series at t=1", "frobenius", sol(1.0), math.e, 1e-12, "rel",
          "t e^t")
    return b.report


def _green_demo(name, kernel, f, exact, T):
    b = _Builder(name)
    t = np.linspace(0.0, T, 64)
    y = greens.solve_via_green(greens.catalog_kernel(kernel), f, (0.0, math.inf), t)
    b.add("y(t) on 64-point grid", "green-function", y, exact(t), 1e-6)
    b.report.header = ("t", "quadrature", "closed_form")
    b.report.rows = [(ti, yi, ei) for ti, yi, ei in zip(t, y, exact(t))]
    return b.report


@register("green-first-order", "y' - y = t, y(0) = 0 through the causal kernel")
def _green_first():
    return _green_demo("green-first-order", "first-order-exp", lambda s: s,
                       lambda t: np.exp(t) - 1 - t, 3.0)


@register("green-harmonic", "y'' + y = cos t with zero initial data through the causal kernel")
def _green_harmonic():
    return _green_demo("green-harmonic", "harmonic-ic", np.cos,
                       lambda t: t * np.sin(t) / 2, 2 * math.pi)


@register("beam", "simply supported beam under uniform load", ("c", "L", "points"))
def _beam(c=1.0, L=1.0, points=11):
    if L <= 0 or points < 2:
        raise DomainError("need L > 0 and points >= 2")
    b = _Builder("beam")
    J = 51
    x = np.linspace(0.0, L, int(points))
    y = greens.beam_deflection(c, L, x, J=J)
    static = c * x * (L ** 3 - 2 * L * x ** 2 + x ** 3) / 24
    b.add(f"sine series (J={J}) vs static solution", "green-function", y, static,
          greens.beam_tail_bound(c, L, J), source="polynomial static deflection")
    b.report.header = ("x", "series", "static")
    b.report.rows = list(zip(x, y, static))
    return b.report


# --- divergent series -----------------------------------------------------

@register("euler-series", "Euler series partial sums against the Stieltjes integral",
          ("x", "kmax"))
def _euler_series(x=0.1, kmax=20):
    if x <= 0:
        raise DomainError("x must be positive")
    b = _Builder("euler-series")
    rows = [divsum.euler_truncation_error(x, k) for k in range(int(kmax) + 1)]
    b.report.header = ("k", "partial", "gap", "bound")
    b.report.rows = [(r.k, r.partial, r.gap, r.bound) for r in rows]
    worst = max(r.gap - r.bound for r in rows)
    b.add(f"max_k (gap - bound), k <= {kmax}", "divergent-series", max(worst, 0.0), 0.0, 0.0,
          source="remainder bound k! x^(k+1)")
    s = divsum.borel_sum(divsum.euler_series_coeff(x))
    b.add(f"Borel sum at x={x:g}", "divergent-series", s.value, divsum.stieltjes_euler(x), 1e-6,
          source="Stieltjes integral")
    return b.report


@register("divergent-sums", "Abel and Borel sums of two divergent alternating series")
def _divergent_sums():
    b = _Builder("divergent-sums")
    for label, coeff, val in (("Leibniz 1-1+1-...", divsum.leibniz, 0.5),
                              ("1-2+3-4+...", divsum.alternating_naturals, 0.25)):
        b.add(f"Abel {label}", "divergent-series", divsum.abel_sum(coeff).value, val, 1e-6)
        b.add(f"Borel {label}", "divergent-series", divsum.borel_sum(coeff).value, val, 1e-6)
    return b.report


# --- distributions --------------------------------------------------------

@register("sokhotsky", "1/(x +- i eps) paired with exp(-pi x^2) as eps -> 0")
def _sokhotsky():
    b = _Builder("sokhotsky")
    phi = distrib.gaussian(1 / math.sqrt(math.pi))
    for s in ("+", "-"):
        r = distrib.sokhotsky_limit(s, phi)
        b.add(f"lim 1/(x {s} i eps) at eps=2^-12", "distributions", r.limit, r.reference, 1e-3,
              source="P(1/x) -/+ i pi delta")
        b.report.rows.extend((s, e, v.real, v.imag) for e, v in zip(r.eps, r.values))
    b.report.header = ("sign", "eps", "re", "im")
    return b.report


@register("delta-seq", "delta sequences paired with exp(-x^2)", ("kind", "nmax"))
def _delta_seq(kind=None, nmax=2048):
    kinds = distrib.SEQUENCES if kind in (None, "all") else (kind,)
    if int(nmax) < 4:
        raise DomainError("nmax must be at least 4")
    ns = [2 ** k for k in range(2, int(math.log2(int(nmax))) + 1)]
    b = _Builder("delta-seq")
    phi = distrib.gaussian()
    for k in kinds:
        rows = distrib.pair_seq(k, phi, ns)
        b.report.rows.extend((k,) + r for r in rows)
        b.add(f"{k}: <delta_n, phi> at n={rows[-1][0]}", "distributions", rows[-1][1], 1.0, 1e-3,
              source="phi(0)")
    b.report.header = ("kind", "n", "pairing", "gap")
    return b.report


@register("fourier-gaussian", "Gaussian fixed point of the unitary Fourier transform")
def _fourier_gaussian():
    b = _Builder("fourier-gaussian")
    k = np.array([0.0, 0.3, 0.7, 1.2, 2.0])
    F = harmonic.fourier_transform_numeric(lambda x: np.exp(-math.pi * np.asarray(x) ** 2), k)
    b.add("F[exp(-pi x^2)](k)", "fourier", F, np.exp(-math.pi * k ** 2), 1e-7)
    return b.report


# --- complex analysis -----------------------------------------------------

@register("residues", "worked contour integrals and residues")
def _residues():
    b = _Builder("residues")
    for w in contour.worked_integrals():
        if w.label.startswith("int"):
            tol, norm = 1e-4, "abs"
        else:
            tol, norm = 1e-8, ("rel" if w.expected != 0 else "abs")
        b.add(w.label, "complex-analysis", w.computed, w.expected, tol, norm)
    return b.report


# --- finite-dimensional algebra ------------------------------------------

@register("eigensystem", "spectral forms of two 3x3 examples and a commuting triple")
def _eigensystem():
    b = _Builder("eigensystem")
    A = np.array([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
    Bm = np.array([[1, 0, 1], [0, 2, 0], [1, 0, 1]])
    es = finhilb.hermitian_eigen(A)
    b.add("spectrum of A", "eigensystems", es.eigenvalues, [0, 1, 2], 1e-10)
    printed = [0.5 * np.array([[1, 0, -1], [0, 0, 0], [-1, 0, 1]]), np.diag([0.0, 1.0, 0.0]),
               0.5 * np.array([[1, 0, 1], [0, 0, 0], [1, 0, 1]])]
    for i, P in enumerate(printed):
        b.add(f"E_{i} of A", "eigensystems", es.projectors[i], P, 1e-10)
        b.add(f"E_{i} of A by projector polynomial", "eigensystems",
              finhilb.spectral_projector_poly(A, [0, 1, 2], i), es.projectors[i], 1e-9,
              source="eigen route")
    esb = finhilb.hermitian_eigen(Bm)
    b.add("spectrum of B", "eigensystems", esb.eigenvalues, [0, 2], 1e-10)
    b.add("E_0 of B", "eigensystems", esb.projectors[0], printed[0], 1e-10)
    b.add("E_2 of B (rank 2)", "eigensystems", esb.projectors[1],
          0.5 * np.array([[1, 0, 1], [0, 2, 0], [1, 0, 1]]), 1e-10)
    mats = ([[0, 1, 0], [1, 0, 0], [0, 0, 0]], [[2, 3, 0], [3, 2, 0], [0, 0, 0]],
            [[5, 7, 0], [7, 5, 0], [0, 0, 11]])
    projs, coeffs = finhilb.common_spectral_form(mats)
    triples = sorted(tuple(coeffs[:, i]) for i in range(coeffs.shape[1]))
    b.add("commuting triple coefficients", "eigensystems", triples,
          sorted([(1.0, 5.0, 12.0), (-1.0, -1.0, -2.0), (0.0, 0.0, 11.0)]), 1e-9)
    b.add("dual of {(1,2),(3,4)}", "dual-basis", finhilb.dual_basis([[1, 2], [3, 4]]),
          [[-2, 1.5], [1, -0.5]], 1e-12)
    return b.report


@register("mub", "a basis unbiased to the standard basis", ("dim",))
def _mub(dim=None):
    b = _Builder("mub")
    dims = (2, 3) if dim is None else (int(dim),)
    for n in dims:
        M = finhilb.mub_schwinger(n=n)
        ov = finhilb.unbiasedness(np.eye(n), M)
        b.add(f"|<e_i|f_j>|^2, n={n}", "mub", ov, np.full((n, n), 1.0 / n), 1e-10)
        b.report.rows.extend((n, i, j, ov[i, j]) for i in range(n) for j in range(n))
    b.report.header = ("n", "i", "j", "overlap")
    return b.report


@register("interferometer", "beam splitter and Mach-Zehnder gate parameters")
def _interferometer():
    b = _Builder("interferometer")
    pi = math.pi
    U = finhilb.interferometer_unitary
    b.add("bs identity", "interferometers", U("bs", pi / 2, -pi / 2, -pi / 2, pi / 2), np.eye(2), 1e-12)
    b.add("mz identity", "interferometers", U("mz", pi, pi, -pi, 0), np.eye(2), 1e-12)
    b.add("bs NOT", "interferometers", U("bs", 0, -pi / 2, pi / 2, -pi / 2), finhilb.NOT, 1e-12)
    b.add("mz NOT", "interferometers", U("mz", 0, pi, pi / 2, pi), finhilb.NOT, 1e-12)
    S = finhilb.sqrt_not()
    b.add("sqrt(NOT)", "interferometers", S, finhilb.SQRT_NOT, 1e-12)
    b.add("sqrt(NOT)^2", "interferometers", S @ S, finhilb.NOT, 1e-12)
    H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    R = finhilb.beam_splitter_family(pi / 4, 0)
    b.add("T(pi/4, 0) = sqrt(I)", "interferometers", R, H, 1e-12)
    b.add("bs sqrt(I)", "interferometers", U("bs", pi / 4, -pi / 2, pi / 2, -pi / 2), H, 1e-12)
    b.add("mz sqrt(I)", "interferometers", U("mz", pi / 2, pi, pi / 4, -pi), H, 1e-12)
    b.add("sqrt(I)^2", "interferometers", R @ R, np.eye(2), 1e-12)
    return b.report


@register("singlet", "two-particle singlet spin correlation",
          ("theta1", "phi1", "theta2", "points"))
def _singlet(theta1=math.pi / 2, phi1=0.0, theta2=math.pi / 2, points=9):
    b = _Builder("singlet")
    phis = np.linspace(0.0, math.pi, int(points))
    closed = np.array([finhilb.singlet_correlation(theta1, phi1, theta2, p) for p in phis])
    trace = np.array([finhilb.singlet_correlation(theta1, phi1, theta2, p, route="trace") for p in phis])
    b.add("closed form vs 4x4 trace", "singlet", closed, trace, 1e-12, source="trace route")
    b.report.header = ("phi2", "closed", "trace")
    b.report.rows = list(zip(phis, closed, trace))
    return b.report


@register("kochen-specker", "exhaustive two-valued coloring of the 18-vector set")
def _kochen_specker():
    b = _Builder("kochen-specker")
    res = finhilb.ks_colorability(finhilb.ks_instance())
    b.add("colorable", "kochen-specker", float(res.colorable), 0.0, 0.0, source="parity argument")
    b.report.notes.append(f"search visited {res.nodes} nodes; certificate {res.certificate}")
    return b.report
