import csv
import io
import math

import numpy as np
import pytest

from physkit import cli, demos


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv, value", [
    (("legendre-p", "2", "0", "0.5"), -0.125),
    (("gamma", "0.5"), math.sqrt(math.pi)),
    (("pochhammer", "1", "5"), 120.0),
    (("beta", "2", "3"), 1 / 12),
])
def test_eval_values(argv, value):
    code, out, _ = run("eval", *argv)
    assert code == 0
    assert float(out) == pytest.approx(value, rel=1e-15)


def test_eval_prints_17_digits():
    _, out, _ = run("eval", "gamma", "0.5")
    from physkit.specfun import gamma_real
    digits = out.strip().replace(".", "").lstrip("0")
    assert len(digits) == 17
    assert float(out) == gamma_real(0.5)
    assert abs(float(out) - math.sqrt(math.pi)) <= 2 * math.ulp(math.sqrt(math.pi))


def test_eval_complex():
    code, out, _ = run("eval", "spherical-harmonic", "1", "1", "0.7", "0.3")
    assert code == 0
    z = complex(out.strip())
    ref = -math.sqrt(3 / (8 * math.pi)) * math.sin(0.7) * complex(math.cos(0.3), math.sin(0.3))
    assert abs(z - ref) < 1e-14


@pytest.mark.parametrize("argv", [
    ("eval", "gamma"),
    ("eval", "gamma", "1", "2"),
    ("eval", "nosuch", "1"),
    ("eval", "gamma", "abc"),
    ("eval", "pochhammer", "1", "2.5"),
    ("eval", "gamma", "0"),
    ("eval", ""),
    ("table", "", "--from", "0", "--to", "1", "--steps", "3"),
    ("table", "gamma", "--from", "1", "--to", "0", "--steps", "3"),
    ("table", "gamma", "--from", "0", "--to", "1", "--steps", "1"),
    ("table", "fourier-series", "--f", "nope", "--L", "1", "--K", "2"),
    ("demo", "nosuch"),
    ("demo", "delta-seq", "--kind", "nope"),
    ("bogus",),
    (),
])
def test_usage_errors(argv):
    code, _, err = run(*argv)
    assert code == 2


def test_table_file_error(tmp_path):
    code, _, err = run("table", "gamma", "--from", "1", "--to", "2", "--steps", "3",
                       "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 3
    assert "I/O" in err


def test_table_legendre(tmp_path):
    path = tmp_path / "p4.csv"
    code, _, _ = run("table", "legendre-p", "4", "0", "--from", "-1", "--to", "1", "--steps", "5",
                     "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["x", "legendre-p"]
    assert len(rows) == 6
    assert float(rows[1][1]) == 1.0 and float(rows[-1][1]) == 1.0


def test_table_roundtrip_bitwise(tmp_path):
    path = tmp_path / "g.csv"
    run("table", "gamma", "--from", "0.5", "--to", "3.5", "--steps", "7", "--out", str(path))
    rows = list(csv.reader(path.open()))[1:]
    from physkit.specfun import gamma_real
    for x, g in rows:
        assert float(g) == gamma_real(float(x))
        assert ("%.17g" % float(g)) == g


def test_table_singlet_monotone():
    code, out, _ = run("table", "singlet-correlation", repr(math.pi / 2), "0", repr(math.pi / 2),
                       "--from", "0", "--to", repr(math.pi), "--steps", "9")
    assert code == 0
    vals = [float(r[1]) for r in list(csv.reader(io.StringIO(out)))[1:]]
    assert vals[0] == pytest.approx(-1) and vals[-1] == pytest.approx(1)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_table_fourier_series():
    code, out, _ = run("table", "fourier-series", "--f", "abs", "--L", repr(2 * math.pi), "--K", "25",
                       "--out", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "a_k", "b_k"]
    a = {int(r[0]): float(r[1]) for r in rows[1:]}
    assert len(a) == 26
    assert a[0] == pytest.approx(math.pi, abs=1e-10)
    assert a[1] == pytest.approx(-4 / math.pi, abs=1e-9)
    assert a[3] == pytest.approx(-4 / (9 * math.pi), abs=1e-9)


def test_list():
    code, out, _ = run("list")
    assert code == 0
    for name in demos.REGISTRY:
        assert name in out
    assert "legendre-p" in out


def test_demo_pass_lines():
    code, out, _ = run("demo", "residues")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == len(demos.run_demo("residues").records)
    assert all(l.startswith("PASS") for l in lines)
    assert "[complex-analysis]" in lines[0] and "expected=" in lines[0] and "tol=" in lines[0]


def test_demo_sl_eigen():
    rep = demos.run_demo("sl-eigen", nmax=1)
    assert rep.passed
    assert rep.records[0].expected == pytest.approx((math.pi / math.log(2)) ** 2)


def test_demo_failure_exit_code(monkeypatch):
    monkeypatch.setenv("PHYSKIT_TOL", "1e-40")
    code, out, _ = run("demo", "divergent-sums")
    assert code == 1
    assert "FAIL" in out


def test_tolerance_scale(monkeypatch):
    monkeypatch.setenv("PHYSKIT_TOL", "10")
    rep = demos.run_demo("fourier-gaussian")
    assert rep.records[0].tolerance == pytest.approx(1e-6)
    monkeypatch.setenv("PHYSKIT_TOL", "-1")
    assert run("demo", "fourier-gaussian")[0] == 2


def test_euler_csv(tmp_path):
    path = tmp_path / "e.csv"
    code, _, _ = run("demo", "euler-series", "--x", "0.1", "--kmax", "12", "--out", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["k", "partial", "gap", "bound"]
    assert len(rows) == 14
    for k, s, gap, bound in rows[1:]:
        assert float(gap) <= float(bound)


def test_demo_table_missing():
    assert run("demo", "kochen-specker", "--out", "-")[0] == 2


def test_demo_options():
    rep = demos.run_demo("mub", dim=5)
    assert rep.passed and len(rep.rows) == 25
    rep = demos.run_demo("delta-seq", kind="box", nmax=64)
    assert rep.passed and {r[0] for r in rep.rows} == {"box"}
    rep = demos.run_demo("beam", c=2.0, L=1.5, points=5)
    assert rep.passed and len(rep.rows) == 5
    rep = demos.run_demo("singlet", theta1=0.3, points=4)
    assert rep.passed and len(rep.rows) == 4


def test_demo_deterministic():
    a = demos.run_demo("eigensystem")
    b = demos.run_demo("eigensystem")
    for r, s in zip(a.records, b.records):
        assert np.array_equal(np.asarray(r.computed), np.asarray(s.computed))


def test_record_status():
    r = demos.DemoRecord("t", "a", 1.0 + 1e-9, 1.0, 1e-8, "rel")
    assert r.status == "pass"
    assert demos.DemoRecord("t", "a", float("nan"), 1.0, 1.0).status == "fail"
    assert demos.DemoRecord("t", "a", [1, 2], [1, 2.1], 0.05).status == "fail"


def test_demo_all():
    code, out, _ = run("demo", "all")
    assert code == 0
    assert "FAIL" not in out
    last = out.strip().splitlines()[-1]
    n, m = last.split()[0].split("/")
    assert n == m
