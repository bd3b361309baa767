"""Command-line front end: ``demo``, ``eval``, ``table`` and ``list``.

Exit codes: 0 success, 1 a demo record failed, 2 usage or domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import demos, divsum, distrib, finhilb, greens, harmonic, specfun
from .errors import PhyskitError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Function:
    func: Callable
    params: tuple  # (name, type) pairs; type is float or int
    summary: str


def _p(*names):
    return tuple((n[1:], int) if n.startswith("#") else (n, float) for n in names)


FUNCTIONS = {
    "gamma": Function(specfun.gamma_real, _p("x"), "Gamma function"),
    "gamma-limit": Function(specfun.gamma_limit, _p("x"), "Gamma by the Euler product limit"),
    "beta": Function(specfun.beta, _p("x", "y"), "Beta function"),
    "pochhammer": Function(specfun.pochhammer, _p("a", "#n"), "rising factorial (a)_n"),
    "hyp2f1": Function(specfun.hyp2f1, _p("a", "b", "c", "x"), "Gauss hypergeometric 2F1"),
    "hyp1f1": Function(specfun.hyp1f1, _p("a", "b", "x"), "confluent hypergeometric 1F1"),
    "legendre-p": Function(specfun.legendre_p, _p("#l", "#m", "x"), "associated Legendre P_l^m(x)"),
    "spherical-harmonic": Function(specfun.spherical_harmonic, _p("#l", "#m", "theta", "phi"),
                                   "spherical harmonic Y_lm"),
    "stieltjes-euler": Function(divsum.stieltjes_euler, _p("x"), "Stieltjes integral summing the Euler series"),
    "euler-partial-sum": Function(divsum.euler_partial_sum, _p("x", "#k"), "partial sum s_k(x) of the Euler series"),
    "dirichlet-integral": Function(distrib.dirichlet_integral, _p("T"), "int_0^T sin(t)/t dt"),
    "singlet-correlation": Function(finhilb.singlet_correlation, _p("theta1", "phi1", "theta2", "phi2"),
                                    "singlet spin correlation"),
    "beam-deflection": Function(greens.beam_deflection, _p("c", "L", "x"), "uniformly loaded beam deflection"),
}

FOURIER_SOURCES = {
    "abs": np.abs,
    "square": np.sign,
    "sawtooth": lambda x: np.asarray(x, dtype=float),
    "parabola": lambda x: np.asarray(x, dtype=float) ** 2,
}


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    z = complex(v)
    if z.imag == 0:
        return "%.17g" % z.real
    return "%.17g%+.17gj" % (z.real, z.imag)


def _convert(raw, kind, name):
    try:
        val = float(raw)
    except ValueError:
        raise UsageError(f"argument {name!r} must be numeric, got {raw!r}")
    if kind is int:
        if not val.is_integer():
            raise UsageError(f"argument {name!r} must be an integer, got {raw!r}")
        return int(val)
    return val


def _lookup(fn_id):
    if not fn_id:
        raise UsageError("missing function id")
    try:
        return FUNCTIONS[fn_id]
    except KeyError:
        raise UsageError(f"unknown function {fn_id!r}; see `physkit list`")


def evaluate(fn_id, args):
    f = _lookup(fn_id)
    if len(args) != len(f.params):
        sig = " ".join(n for n, _ in f.params)
        raise UsageError(f"{fn_id} takes {len(f.params)} arguments ({sig}), got {len(args)}")
    vals = [_convert(a, t, n) for a, (n, t) in zip(args, f.params)]
    return f.func(*vals)


def _write_csv(header, rows, out, stdout):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    text = buf.getvalue()
    if out in (None, "-", "csv"):
        stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def table_rows(fn_id, fixed, start, stop, steps):
    f = _lookup(fn_id)
    if len(fixed) != len(f.params) - 1:
        lead = " ".join(n for n, _ in f.params[:-1])
        raise UsageError(f"{fn_id} needs {len(f.params) - 1} fixed arguments ({lead}) before the grid")
    if f.params[-1][1] is int:
        raise UsageError(f"the last argument of {fn_id} is an integer and cannot be tabulated")
    if not (math.isfinite(start) and math.isfinite(stop) and start < stop):
        raise UsageError("grid needs finite --from < --to")
    if steps < 2:
        raise UsageError("grid needs --steps >= 2")
    vals = [_convert(a, t, n) for a, (n, t) in zip(fixed, f.params)]
    grid = np.linspace(start, stop, steps)
    rows = [(float(x), f.func(*vals, float(x))) for x in grid]
    return (f.params[-1][0], fn_id), rows


def fourier_rows(source, L, K):
    try:
        g = FOURIER_SOURCES[source]
    except KeyError:
        raise UsageError(f"unknown --f {source!r}; choose from {', '.join(FOURIER_SOURCES)}")
    if K is None or K < 0 or L is None or not L > 0:
        raise UsageError("fourier-series needs --L > 0 and --K >= 0")
    c = harmonic.fourier_series_coeffs(g, L, K, kinks=(0.0,))
    return ("k", "a_k", "b_k"), [(k, c.a[k], c.b[k]) for k in range(K + 1)]


def _show(value):
    a = np.asarray(value)
    if a.ndim == 0:
        return fmt(a.item())
    if a.size <= 6:
        return "[" + ", ".join(fmt(v) for v in a.ravel()) + "]"
    return f"array{a.shape}"


def print_report(rep: demos.DemoReport, stdout):
    for r in rep.records:
        stdout.write(f"{r.status.upper()} {rep.name} [{r.anchor}] {r.name}: computed={_show(r.computed)} "
                     f"expected={_show(r.expected)} ({r.source}) deviation={r.deviation:.3e} "
                     f"tol={r.tolerance:.3e} {r.norm}\n")
    for note in rep.notes:
        stdout.write(f"NOTE {rep.name}: {note}\n")


def build_parser():
    ap = argparse.ArgumentParser(prog="physkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", metavar="{demo,eval,table,list}")
    sub.required = True

    d = sub.add_parser("demo", help="run a registered demo or `all`")
    d.add_argument("name")
    for opt, typ in (("x", float), ("kmax", int), ("kind", str), ("nmax", int), ("dim", int),
                     ("c", float), ("L", float), ("points", int), ("theta1", float),
                     ("phi1", float), ("theta2", float)):
        d.add_argument(f"--{opt}", type=typ, default=None)
    d.add_argument("--out", default=None, help="write the demo table as CSV (path, `csv` or `-` for stdout)")

    e = sub.add_parser("eval", help="evaluate a function")
    e.add_argument("fn")
    e.add_argument("args", nargs="*")

    t = sub.add_parser("table", help="tabulate a function over a uniform grid")
    t.add_argument("fn")
    t.add_argument("args", nargs="*", help="fixed leading arguments")
    t.add_argument("--from", dest="start", type=float)
    t.add_argument("--to", dest="stop", type=float)
    t.add_argument("--steps", type=int)
    t.add_argument("--out", default=None)
    t.add_argument("--f", dest="source", default="abs")
    t.add_argument("--L", type=float)
    t.add_argument("--K", type=int)

    sub.add_parser("list", help="list demos and functions")
    return ap


def _cmd_demo(ns, stdout):
    if ns.name == "all":
        if ns.out is not None:
            raise UsageError("--out needs a single demo")
        reports = demos.run_all()
    else:
        opts = {k: getattr(ns, k) for k in ("x", "kmax", "kind", "nmax", "dim", "c", "L", "points",
                                            "theta1", "phi1", "theta2")}
        reports = [demos.run_demo(ns.name, **opts)]
    for rep in reports:
        print_report(rep, stdout)
    if ns.out is not None:
        rep = reports[0]
        if not rep.header:
            raise UsageError(f"demo {rep.name!r} has no table")
        _write_csv(rep.header, rep.rows, ns.out, stdout)
    n_fail = sum(r.status == "fail" for rep in reports for r in rep.records)
    n_all = sum(len(rep.records) for rep in reports)
    stdout.write(f"{n_all - n_fail}/{n_all} records pass\n")
    return EXIT_FAIL if n_fail else EXIT_OK


def _cmd_table(ns, stdout):
    if ns.fn == "fourier-series":
        header, rows = fourier_rows(ns.source, ns.L, ns.K)
    else:
        if ns.start is None or ns.stop is None or ns.steps is None:
            raise UsageError("table needs --from, --to and --steps")
        header, rows = table_rows(ns.fn, ns.args, ns.start, ns.stop, ns.steps)
    _write_csv(header, rows, ns.out, stdout)
    return EXIT_OK


def _cmd_list(stdout):
    stdout.write("demos:\n")
    for d in demos.REGISTRY.values():
        opts = " ".join(f"--{o}" for o in d.options)
        stdout.write(f"  {d.name:20s} {d.summary}{'  [' + opts + ']' if opts else ''}\n")
    stdout.write("functions:\n")
    for name, f in FUNCTIONS.items():
        stdout.write(f"  {name:20s} {' '.join(n for n, _ in f.params):24s} {f.summary}\n")
    stdout.write(f"  {'fourier-series':20s} {'--f --L --K':24s} real Fourier coefficients (table only)\n")
    return EXIT_OK


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if ns.command == "demo":
            return _cmd_demo(ns, stdout)
        if ns.command == "eval":
            stdout.write(fmt(evaluate(ns.fn, ns.args)) + "\n")
            return EXIT_OK
        if ns.command == "table":
            return _cmd_table(ns, stdout)
        return _cmd_list(stdout)
    except (UsageError, PhyskitError, ValueError) as exc:
        stderr.write(f"physkit: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"physkit: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
