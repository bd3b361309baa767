import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from physkit import finhilb as F
from physkit.errors import (DegeneracyError, DomainError, MalformedInstanceError,
                            NonGroupTableError, NonHermitianError)

A = np.array([[1, 0, 1], [0, 1, 0], [1, 0, 1]])
B = np.array([[1, 0, 1], [0, 2, 0], [1, 0, 1]])


def random_hermitian(rng, n):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return X + X.conj().T


def test_eigen_examples():
    es = F.hermitian_eigen(A)
    assert np.allclose(es.eigenvalues, [0, 1, 2], atol=1e-12)
    assert np.allclose(es.projectors[0], 0.5 * np.array([[1, 0, -1], [0, 0, 0], [-1, 0, 1]]), atol=1e-12)
    assert np.allclose(es.projectors[1], np.diag([0, 1, 0]), atol=1e-12)
    assert np.allclose(es.projectors[2], 0.5 * np.array([[1, 0, 1], [0, 0, 0], [1, 0, 1]]), atol=1e-12)
    es = F.hermitian_eigen(B)
    assert np.allclose(es.eigenvalues, [0, 2], atol=1e-12)
    assert es.multiplicities == (1, 2)
    assert np.allclose(es.projectors[1], 0.5 * np.array([[1, 0, 1], [0, 2, 0], [1, 0, 1]]), atol=1e-12)
    es = F.hermitian_eigen(np.eye(4))
    assert es.multiplicities == (4,) and np.allclose(es.projectors[0], np.eye(4))


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_eigen_invariants(rng, n):
    H = random_hermitian(rng, n)
    es = F.hermitian_eigen(H)
    assert es.check(1e-10)
    assert np.max(np.abs(es.reconstruct() - H)) < 1e-9
    assert np.allclose(es.eigenvalues, np.linalg.eigvalsh(H), atol=1e-10)
    for vs in es.vectors:
        for v in vs:
            k = np.argmax(np.abs(v) > 1e-12)
            assert abs(v[k].imag) < 1e-14 and v[k].real > 0


def test_eigen_degenerate_random(rng):
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    H = Q @ np.diag([1, 1, 1, -2, 3]) @ Q.conj().T
    es = F.hermitian_eigen(H)
    assert es.multiplicities == (1, 3, 1)
    assert es.check(1e-10)


def test_non_hermitian():
    with pytest.raises(NonHermitianError):
        F.hermitian_eigen([[1, 2], [0, 1]])
    with pytest.raises(DomainError):
        F.hermitian_eigen([[1, 2, 3]])


def test_projector_polynomials():
    es = F.hermitian_eigen(A)
    for i in range(3):
        assert np.allclose(F.spectral_projector_poly(A, [0, 1, 2], i), es.projectors[i], atol=1e-9)
    assert np.allclose(F.spectral_projector_poly(B, [0, 2], 1), B / 2, atol=1e-12)
    assert np.allclose(F.spectral_projector_poly([[3.0]], [3.0], 0), [[1.0]])
    with pytest.raises(DegeneracyError):
        F.spectral_projector_poly(B, [0, 2, 2], 0)


def test_projector():
    assert np.allclose(F.projector([1, -1]), 0.5 * np.array([[1, -1], [-1, 1]]))
    assert np.allclose(F.projector([1, 0]), [[1, 0], [0, 0]])
    with pytest.raises(DegeneracyError):
        F.projector([0, 0])


@settings(max_examples=30)
@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=2, max_size=5))
def test_projector_idempotent(v):
    if np.linalg.norm(v) < 1e-3:
        return
    E = F.projector(v)
    assert np.max(np.abs(E @ E - E)) < 1e-12
    assert np.allclose(E, E.conj().T)
    assert abs(np.trace(E) - 1) < 1e-12


def test_dual_basis():
    D = F.dual_basis([[1, 2], [3, 4]])
    assert np.allclose(D, [[-2, 1.5], [1, -0.5]])
    assert np.allclose(np.array([[1, 2], [3, 4]]) @ D.T, np.eye(2))
    R = F.rotation2d(0.3)
    assert np.allclose(F.dual_basis(R), R)
    assert np.allclose(F.dual_basis(np.diag([2.0, 5.0, 0.5])), np.diag([0.5, 0.2, 2.0]))
    with pytest.raises(DegeneracyError):
        F.dual_basis([[1, 2], [2, 4]])


def test_mub_dimension_two():
    M = F.mub_schwinger(n=2)
    expected = [np.array([-1, 1]) / math.sqrt(2), np.array([1, 1]) / math.sqrt(2)]
    for e in expected:
        assert any(abs(abs(np.vdot(e, m)) - 1) < 1e-12 for m in M)


def test_mub_dimension_three():
    w = 0.5 * (math.sqrt(3) * 1j - 1)
    expected = [np.array([1, 1, 1]), np.array([w, np.conj(w), 1]), np.array([np.conj(w), w, 1])]
    M = F.mub_schwinger(n=3)
    for e in expected:
        e = e / np.linalg.norm(e)
        assert any(abs(abs(np.vdot(e, m)) - 1) < 1e-12 for m in M)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 7])
def test_mub_unbiased(n, rng):
    assert np.max(np.abs(F.unbiasedness(np.eye(n), F.mub_schwinger(n=n)) - 1 / n)) < 1e-10
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    Bq = Q.T
    assert np.max(np.abs(F.unbiasedness(Bq, F.mub_schwinger(Bq)) - 1 / n)) < 1e-10


def test_mub_requires_orthonormal():
    with pytest.raises(DomainError):
        F.mub_schwinger([[1, 1], [0, 1]])


def test_su2():
    assert np.allclose(F.su2_exp(0, 0, 0), np.eye(2))
    th = 0.8
    assert np.allclose(F.su2_exp(0, 0, th), np.diag([np.exp(1j * th / 2), np.exp(-1j * th / 2)]))
    assert np.allclose(F.commutator(F.SIGMA1, F.SIGMA3), 2 * np.array([[0, -1], [1, 0]]))


@settings(max_examples=40)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_su2_unitary(x1, x2, x3):
    U = F.su2_exp(x1, x2, x3)
    assert np.max(np.abs(U @ U.conj().T - np.eye(2))) < 1e-12
    assert abs(F.det(U) - 1) < 1e-12
    # closed form equals the matrix exponential series
    X = 0.5j * (x1 * F.SIGMA1 + x2 * F.SIGMA2 + x3 * F.SIGMA3)
    S, term = np.eye(2, dtype=complex), np.eye(2, dtype=complex)
    for k in range(1, 60):
        term = term @ X / k
        S = S + term
    assert np.max(np.abs(S - U)) < 1e-10


def test_schmidt():
    bell = np.array([0, 1, -1, 0]) / math.sqrt(2)
    sd = F.schmidt_decompose(bell, 2, 2)
    assert np.allclose(sd.coefficients, [1 / math.sqrt(2)] * 2)
    assert np.allclose(sd.reassemble(), bell, atol=1e-9)
    assert not F.is_product_2x2(bell)
    a, b = np.array([0.6, 0.8j]), np.array([1, 1]) / math.sqrt(2)
    prod = np.kron(a, b)
    sd = F.schmidt_decompose(prod, 2, 2)
    assert sd.rank == 1 and sd.coefficients[0] == pytest.approx(1.0)
    assert F.is_product_2x2(prod)
    with pytest.raises(DomainError):
        F.schmidt_decompose(bell, 3, 2)


@pytest.mark.parametrize("n, m", [(2, 3), (3, 3), (4, 2)])
def test_schmidt_random(rng, n, m):
    psi = rng.normal(size=n * m) + 1j * rng.normal(size=n * m)
    psi /= np.linalg.norm(psi)
    sd = F.schmidt_decompose(psi, n, m)
    assert np.sum(sd.coefficients ** 2) == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(sd.reassemble() - psi)) < 1e-9


def test_interferometer_family():
    assert np.allclose(F.beam_splitter_family(math.pi / 2, math.pi), np.eye(2), atol=1e-15)
    assert np.allclose(F.beam_splitter_family(0, 0), [[0, 1], [1, 0]], atol=1e-15)
    pi = math.pi
    assert np.allclose(F.interferometer_unitary("bs", pi / 2, -pi / 2, -pi / 2, pi / 2), np.eye(2))
    assert np.allclose(F.interferometer_unitary("mz", pi, pi, -pi, 0), np.eye(2))
    assert np.allclose(F.interferometer_unitary("bs", 0, -pi / 2, pi / 2, -pi / 2), F.NOT)
    assert np.allclose(F.interferometer_unitary("mz", 0, pi, pi / 2, pi), F.NOT)


def test_sqrt_not():
    S = F.sqrt_not()
    assert np.allclose(S, F.SQRT_NOT, atol=1e-15)
    assert np.allclose(S @ S, F.NOT, atol=1e-15)
    stated = F.interferometer_unitary("bs", math.pi / 4, -math.pi, 3 * math.pi / 4, -math.pi)
    assert F.equal_up_to_phase(stated @ stated, F.NOT)


@settings(max_examples=40)
@given(st.lists(st.floats(-4, 4), min_size=4, max_size=4))
def test_interferometer_routes(p):
    for kind in ("bs", "mz"):
        U = F.interferometer_unitary(kind, *p)
        assert np.max(np.abs(U @ U.conj().T - np.eye(2))) < 1e-12
        assert np.max(np.abs(U - F.interferometer_unitary(kind, *p, route="product"))) < 1e-12


@settings(max_examples=30)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_family_embeds_in_both_devices(w, ph):
    T = F.beam_splitter_family(w, ph)
    pi = math.pi
    assert np.allclose(T, F.interferometer_unitary("bs", w, -pi / 2, pi / 2 - ph, ph - pi / 2), atol=1e-12)
    assert np.allclose(T, F.interferometer_unitary("mz", 2 * w, pi, pi / 2 - w - ph, ph - pi), atol=1e-12)


def test_interferometer_bad_kind():
    with pytest.raises(DomainError):
        F.interferometer_unitary("xx", 0, 0, 0, 0)


@settings(max_examples=50)
@given(*[st.floats(-4, 4)] * 4)
def test_singlet_routes(t1, p1, t2, p2):
    a = F.singlet_correlation(t1, p1, t2, p2)
    b = F.singlet_correlation(t1, p1, t2, p2, route="trace")
    assert abs(a - b) < 1e-12


def test_singlet_examples():
    assert F.singlet_correlation(math.pi / 2, 0.3, math.pi / 2, 1.1) == pytest.approx(-math.cos(0.8))
    assert F.singlet_correlation(0.7, 0.2, 0.7, 0.2, route="trace") == pytest.approx(-1.0)
    assert abs(F.singlet_correlation(math.pi / 2, 0, math.pi / 2, math.pi / 2)) < 1e-15


def test_kochen_specker():
    inst = F.ks_instance()
    assert inst.each_in_two_contexts
    assert len(inst.vectors) == 18 and len(inst.contexts) == 9
    res = F.ks_colorability(inst)
    assert not res.colorable
    assert res.certificate["contexts"] == 9 and res.certificate["occurrences_per_vector"] == 2


def test_ks_toy_colorable():
    s = 1 / math.sqrt(2)
    vecs = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
            (0, 0, 1, 1), (0, 0, 1, -1), (0, 1, 0, 1), (0, 1, 0, -1)]
    inst = F.KSInstance(tuple(vecs), ((0, 1, 2, 3), (0, 1, 4, 5), (0, 2, 6, 7)))
    res = F.ks_colorability(inst)
    assert res.colorable and res.certificate is None
    V = np.array(vecs, float)
    for ctx in inst.contexts:
        assert sum(res.assignment[i] for i in ctx) == 1
    for i, j in itertools.combinations(range(len(vecs)), 2):
        if abs(V[i] @ V[j]) < 1e-12:
            assert res.assignment[i] + res.assignment[j] <= 1


def test_ks_malformed():
    with pytest.raises(MalformedInstanceError):
        F.KSInstance(((1, 0), (1, 1)), ((0, 1),))
    with pytest.raises(MalformedInstanceError):
        F.KSInstance(((1, 0), (0, 1)), ((0, 2),))


def test_cayley():
    z2 = F.cayley_representation(F.cyclic_table(2))
    assert np.allclose(z2[0], np.eye(2)) and np.allclose(z2[1], [[0, 1], [1, 0]])
    for table in (F.cyclic_table(3), F.symmetric_group_table(3)):
        T = np.asarray(table)
        P = F.cayley_representation(table)
        for g, h in itertools.product(range(len(P)), repeat=2):
            assert np.allclose(P[T[g, h]], P[g] @ P[h])
        for M in P:
            assert np.allclose(M @ M.T, np.eye(len(P)))
    assert len(F.cayley_representation(F.symmetric_group_table(3))) == 6


@pytest.mark.parametrize("table, axiom", [
    ([[0, 1], [1, 2]], "closure"),
    ([[1, 0], [0, 0]], "identity"),
    ([[0, 1, 2], [1, 1, 1], [2, 1, 2]], "inverses"),
])
def test_non_group(table, axiom):
    with pytest.raises(NonGroupTableError) as ei:
        F.cayley_representation(table)
    assert ei.value.axiom == axiom


def test_non_associative():
    # a quasigroup with identity and inverses that is not associative
    T = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NonGroupTableError) as ei:
        F.cayley_representation(T)
    assert ei.value.axiom == "associativity"


def test_determinant(rng):
    for _ in range(10):
        X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        Y = rng.normal(size=(3, 3))
        assert F.det(X @ Y) == pytest.approx(F.det(X) * F.det(Y), rel=1e-10)
    for n in (3, 4, 6):
        H = random_hermitian(rng, n)
        es = F.hermitian_eigen(H)
        assert F.det(H) == pytest.approx(np.prod(es.eigenvalues), rel=1e-9)
    M = rng.normal(size=(6, 6))
    assert F.det(M) == pytest.approx(np.linalg.det(M), rel=1e-10)


def test_traces(rng):
    X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    Y = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    Z = rng.normal(size=(2, 2))
    assert abs(F.trace(X @ Y) - F.trace(Y @ X)) < 1e-11
    assert abs(F.trace(F.kron(X, Z)) - F.trace(X) * F.trace(Z)) < 1e-11
    assert abs(F.trace(F.commutator(X, Y))) < 1e-11


def test_commuting_family():
    Am = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    Bm = [[2, 3, 0], [3, 2, 0], [0, 0, 0]]
    Cm = [[5, 7, 0], [7, 5, 0], [0, 0, 11]]
    projs, coeffs = F.common_spectral_form([Am, Bm, Cm])
    assert len(projs) == 3
    triples = {tuple(np.round(coeffs[:, i], 9)) for i in range(3)}
    assert triples == {(1.0, 5.0, 12.0), (-1.0, -1.0, -2.0), (0.0, 0.0, 11.0)}
    e1 = F.projector([1, 1, 0])
    assert any(np.allclose(P, e1, atol=1e-9) for P in projs)


def test_jacobi_identity(rng):
    for _ in range(5):
        X, Y, Z = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3))
        c = F.commutator
        J = c(X, c(Y, Z)) + c(Z, c(X, Y)) + c(Y, c(Z, X))
        assert np.max(np.abs(J)) < 1e-10


def test_grassmann_identity():
    d = lambda a, b: int(a == b)
    for i, j, l, m in itertools.product(range(3), repeat=4):
        lhs = sum(F.levi_civita(i, j, k) * F.levi_civita(k, l, m) for k in range(3))
        assert lhs == d(i, l) * d(j, m) - d(i, m) * d(j, l)


def test_gram_schmidt_vectors():
    out = F.gram_schmidt_vectors([(0, 1), (1, 1)])
    assert np.allclose(out, [[0, 1], [1, 0]])
    out = F.gram_schmidt_vectors([(1, 1), (0, 1)])
    assert np.allclose(out[1], np.array([-1, 1]) / math.sqrt(2))
    with pytest.raises(DegeneracyError):
        F.gram_schmidt_vectors([(1, 2), (2, 4)])


def test_basis_change_rotation():
    e = np.eye(2)
    f = np.array([[1, 1], [-1, 1]]) / math.sqrt(2)
    U = F.basis_change(e, f)
    assert np.allclose(U, np.array([[1, -1], [1, 1]]) / math.sqrt(2))
    assert np.allclose(U, F.rotation2d(math.pi / 4))


def test_unitary_from_basis(rng):
    Q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    U = F.unitary_from_basis(Q.T)
    assert np.allclose(U @ U.conj().T, np.eye(4))


@settings(max_examples=30)
@given(st.floats(-7, 7), st.floats(-7, 7))
def test_so2(t1, t2):
    assert np.allclose(F.rotation2d(t1) @ F.rotation2d(t2), F.rotation2d(t1 + t2), atol=1e-12)
    assert F.det(F.rotation2d(t1)).real == pytest.approx(1.0)


def test_induced_metric():
    r, th, ph = 2.0, 0.7, 1.3
    g = F.induced_metric(F.sphere(r), th, ph)
    assert np.allclose(g, np.diag([r ** 2, (r * math.sin(th)) ** 2]), atol=1e-8)
    u, v = 1.1, 0.25
    gm = F.induced_metric(F.mobius, u, v, partials=F.mobius_partials)
    assert np.allclose(gm, np.diag([(1 + v * math.cos(u / 2)) ** 2 + v ** 2 / 4, 1.0]), atol=1e-13)
    assert np.allclose(F.induced_metric(F.mobius, u, v), gm, atol=1e-8)
    assert np.allclose(F.induced_metric(lambda a, b: (a, b, 0.0), 0.3, 0.4), np.eye(2))
    with pytest.raises(DegeneracyError):
        F.induced_metric(F.sphere(1.0), 0.0, 0.5)
