"""Finite-dimensional Hilbert-space algebra.

Matrices are plain complex ``numpy`` arrays validated on entry.  The
eigensolver is a cyclic Jacobi iteration on the real symmetric embedding of a
Hermitian matrix; everything else (projectors, projector polynomials, mutually
unbiased bases, Schmidt forms, interferometers, singlet correlations,
Kochen-Specker colorability, Cayley representations) is built on top of it.

Note on orthogonal groups: O(n) and SO(n) have dimension n(n-1)/2, the number
of independent planes of rotation.  Only checkable facts (orthogonality,
det = +-1) are asserted in code.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DegeneracyError,
    DomainError,
    MalformedInstanceError,
    NonGroupTableError,
    NonHermitianError,
)

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)
NOT = np.array([[0, 1], [1, 0]], dtype=complex)


def as_matrix(M, square=False) -> np.ndarray:
    """Validate and copy ``M`` as a 2-D complex array."""
    A = np.array(M, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise DomainError("matrix must be a nonempty 2-D array")
    if not np.all(np.isfinite(A)):
        raise DomainError("matrix entries must be finite")
    if square and A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    return A


def dagger(A):
    return np.conj(np.asarray(A)).T


def commutator(A, B):
    A, B = as_matrix(A), as_matrix(B)
    return A @ B - B @ A


def trace(A):
    return complex(np.trace(as_matrix(A, square=True)))


def kron(*mats):
    out = np.ones((1, 1), dtype=complex)
    for M in mats:
        out = np.kron(out, as_matrix(M))
    return out


def _det_cofactor(A):
    n = A.shape[0]
    if n == 1:
        return A[0, 0]
    if n == 2:
        return A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    total = 0j
    for j in range(n):
        if A[0, j] != 0:
            minor = np.delete(np.delete(A, 0, axis=0), j, axis=1)
            total += (-1) ** j * A[0, j] * _det_cofactor(minor)
    return total


def _det_lu(A):
    U = A.copy()
    n = U.shape[0]
    d = 1.0 + 0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(U[k:, k])))
        if U[p, k] == 0:
            return 0j
        if p != k:
            U[[k, p]] = U[[p, k]]
            d = -d
        d *= U[k, k]
        U[k + 1:, k:] -= np.outer(U[k + 1:, k] / U[k, k], U[k, k:])
    return d


def det(A):
    """Determinant: cofactor expansion for n <= 4, LU with partial pivoting above."""
    A = as_matrix(A, square=True)
    val = _det_cofactor(A) if A.shape[0] <= 4 else _det_lu(A)
    return complex(val)


# --- eigensystems ---------------------------------------------------------

def jacobi_eigh(S, max_sweeps=30, tol=1e-13):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ascending eigenvalues and the orthogonal matrix of column eigenvectors.
    """
    A = np.array(S, dtype=float)
    n = A.shape[0]
    V = np.eye(n)
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * rp - s * rq, s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * cp - s * cq, s * cp + c * cq
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def _phase_fix(v, tol=1e-12):
    k = int(np.argmax(np.abs(v) > tol * np.max(np.abs(v))))
    return v * (abs(v[k]) / v[k])


def _orthonormalize(vectors, tol=1e-10):
    basis = []
    for v in vectors:
        w = np.array(v, dtype=complex)
        for b in basis:
            w = w - np.vdot(b, w) * b
        nrm = np.linalg.norm(w)
        if nrm > tol:
            basis.append(w / nrm)
    return basis


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray
    projectors: tuple
    multiplicities: tuple
    vectors: tuple

    def reconstruct(self):
        return sum(l * E for l, E in zip(self.eigenvalues, self.projectors))

    def check(self, tol=1e-10):
        n = self.projectors[0].shape[0]
        for i, E in enumerate(self.projectors):
            assert np.allclose(E @ E, E, atol=tol) and np.allclose(E, dagger(E), atol=tol)
            for F in self.projectors[i + 1:]:
                assert np.allclose(E @ F, 0, atol=tol)
        assert np.allclose(sum(self.projectors), np.eye(n), atol=tol)
        return True


def hermitian_eigen(M, hermitian_tol=1e-12, merge_tol=1e-8) -> EigenSystem:
    """Spectral form of a Hermitian matrix.

    Eigenvalues closer than ``merge_tol (1 + |lambda|)`` are merged into one
    projector.  Eigenvectors are phase-normalized so the first nonzero
    component is real positive.
    """
    A = as_matrix(M, square=True)
    if np.max(np.abs(A - dagger(A))) > hermitian_tol * max(1.0, np.max(np.abs(A))):
        raise NonHermitianError("matrix is not self-adjoint")
    n = A.shape[0]
    X, Y = A.real, A.imag
    S = np.block([[X, -Y], [Y, X]])
    w, V = jacobi_eigh(S)
    # every eigenvalue of A appears twice in the embedding
    clusters = []
    for i, lam in enumerate(w):
        if clusters and abs(lam - clusters[-1][0][-1]) <= merge_tol * (1 + abs(lam)):
            clusters[-1][0].append(lam)
            clusters[-1][1].append(i)
        else:
            clusters.append(([lam], [i]))
    vals, projs, mults, vecs = [], [], [], []
    for lams, idx in clusters:
        R = V[:, idx]
        Q = R @ R.T
        P = Q[:n, :n] + 1j * Q[n:, :n]
        P = (P + dagger(P)) / 2
        cand = [R[:n, j] + 1j * R[n:, j] for j in range(R.shape[1])]
        basis = [_phase_fix(b) for b in _orthonormalize(cand)]
        vals.append(float(np.mean(lams)))
        projs.append(P)
        mults.append(len(basis))
        vecs.append(tuple(basis))
    return EigenSystem(np.array(vals), tuple(projs), tuple(mults), tuple(vecs))


def spectral_projector_poly(M, eigenvalues, i):
    """``p_i(M) = prod_{j != i} (M - lambda_j)/(lambda_i - lambda_j)``."""
    A = as_matrix(M, square=True)
    lam = np.asarray(eigenvalues, dtype=float)
    for a, b in itertools.combinations(range(len(lam)), 2):
        if abs(lam[a] - lam[b]) <= 1e-12 * (1 + abs(lam[a])):
            raise DegeneracyError("eigenvalues must be pairwise distinct")
    P = np.eye(A.shape[0], dtype=complex)
    for j, lj in enumerate(lam):
        if j != i:
            P = P @ (A - lj * np.eye(A.shape[0])) / (lam[i] - lj)
    return P


def common_spectral_form(mats):
    """Shared projectors of commuting Hermitian matrices and each matrix's coefficients.

    Projectors come from the spectral form of a generic real combination;
    coefficient ``c[k, i] = Tr(M_k E_i)/Tr(E_i)``.
    """
    mats = [as_matrix(M, square=True) for M in mats]
    for A, B in itertools.combinations(mats, 2):
        if np.max(np.abs(commutator(A, B))) > 1e-10:
            raise DomainError("matrices do not commute")
    weights = [math.sqrt(p) for p in (2, 3, 5, 7, 11, 13, 17, 19)][: len(mats)]
    R = sum(w * M for w, M in zip(weights, mats))
    es = hermitian_eigen(R)
    coeffs = np.array([[trace(M @ E).real / trace(E).real for E in es.projectors] for M in mats])
    return es.projectors, coeffs


def projector(v):
    """``|v><v| / <v|v>``."""
    v = np.asarray(v, dtype=complex).ravel()
    nrm2 = float(np.vdot(v, v).real)
    if nrm2 <= 1e-300:
        raise DegeneracyError("zero vector has no projector")
    return np.outer(v, np.conj(v)) / nrm2


def dual_basis(B):
    """Dual vectors of the rows of ``B``: the columns of ``B^-1``, returned as rows."""
    B = as_matrix(B, square=True)
    d = det(B)
    if abs(d) <= 1e-12 * np.prod(np.linalg.norm(B, axis=1)):
        raise DegeneracyError("basis vectors are linearly dependent")
    inv = np.linalg.inv(B)
    return inv.T.copy()


def basis_change(old, new):
    """``U = sum_i |f_i><e_i|`` mapping the rows ``old`` onto the rows ``new``."""
    old, new = as_matrix(old), as_matrix(new)
    return sum(np.outer(f, np.conj(e)) for e, f in zip(old, new))


def _check_orthonormal(B, tol=1e-10):
    if np.max(np.abs(B @ dagger(B) - np.eye(B.shape[0]))) > tol:
        raise DomainError("basis is not orthonormal")


def mub_schwinger(B=None, n=None, c=0.5):
    """Basis mutually unbiased to the orthonormal rows of ``B``.

    The basis is shift-permuted (e_i -> e_{i+1}), the unitary ``U`` of that
    basis change is formed, and its eigenvectors are returned as rows.  ``U``
    is diagonalized through the Hermitian ``(U + U^+)/2 + c (U - U^+)/(2i)``,
    whose eigenvalues ``cos t + c sin t`` separate the roots of unity.
    """
    if B is None:
        if n is None:
            raise DomainError("give a basis or a dimension")
        B = np.eye(n)
    B = as_matrix(B, square=True)
    _check_orthonormal(B)
    shifted = np.roll(B, -1, axis=0)
    U = basis_change(B, shifted)
    H = (U + dagger(U)) / 2 + c * (U - dagger(U)) / 2j
    es = hermitian_eigen(H)
    if max(es.multiplicities) > 1:
        raise DegeneracyError("shift operator eigenvalues not separated")
    rows = [v[0] for v in es.vectors]
    return np.array(rows)


def unbiasedness(B1, B2):
    """Matrix of ``|<e_i|f_j>|^2``."""
    return np.abs(as_matrix(B1).conj() @ as_matrix(B2).T) ** 2


def gram_schmidt_vectors(vectors, tol=1e-12):
    basis = _orthonormalize(vectors, tol)
    if len(basis) < len(vectors):
        raise DegeneracyError("vectors are linearly dependent")
    return np.array(basis)


def unitary_from_basis(B):
    U = as_matrix(B, square=True)
    _check_orthonormal(U)
    return U


def rotation2d(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def su2_exp(x1, x2, x3):
    """``exp((i/2) x.sigma) = cos(|x|/2) I + i sin(|x|/2) xhat.sigma``."""
    r = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
    if r == 0:
        return np.eye(2, dtype=complex)
    xs = (x1 * SIGMA1 + x2 * SIGMA2 + x3 * SIGMA3) / r
    return math.cos(r / 2) * np.eye(2) + 1j * math.sin(r / 2) * xs


# --- tensor products and entanglement -------------------------------------

@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray
    left: np.ndarray   # columns u_i
    right: np.ndarray  # columns v_i

    def reassemble(self):
        return sum(s * np.kron(self.left[:, i], self.right[:, i])
                   for i, s in enumerate(self.coefficients))

    @property
    def rank(self):
        return len(self.coefficients)


def schmidt_decompose(psi, n, m, tol=1e-12):
    """``psi = sum_i s_i u_i (x) v_i`` from the SVD of the n x m coefficient array."""
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != n * m:
        raise DomainError(f"state has {psi.size} components, expected {n} x {m}")
    if abs(np.linalg.norm(psi) - 1) > 1e-9:
        raise DomainError("state must be normalized")
    U, s, Vh = np.linalg.svd(psi.reshape(n, m), full_matrices=False)
    keep = s > tol
    return SchmidtDecomposition(s[keep], U[:, keep], Vh[keep, :].T)


def is_product_2x2(psi, tol=1e-10):
    """Two-qubit product criterion ``a1 a4 = a2 a3``."""
    a = np.asarray(psi, dtype=complex).ravel()
    if a.size != 4:
        raise DomainError("need a four-component state")
    return abs(a[0] * a[3] - a[1] * a[2]) <= tol


# --- interferometers --------------------------------------------------------

def beam_splitter_family(omega, phi):
    """Reduced two-parameter family ``T(omega, phi)``."""
    s, c, e = math.sin(omega), math.cos(omega), cmath.exp(-1j * phi)
    return np.array([[s, c], [e * c, -e * s]])


def _phase(a, b):
    return np.diag([cmath.exp(1j * a), cmath.exp(1j * b)])


_HALF_BS = np.array([[1j, 1], [1, 1j]]) / math.sqrt(2)


def interferometer_unitary(kind, omega, alpha, beta, phi, route="closed"):
    """Beam-splitter (``bs``) or Mach-Zehnder (``mz``) unitary.

    ``route="closed"`` returns the closed-form matrix, ``route="product"``
    multiplies the phase-shifter and splitter factors in reverse order of
    passage.
    """
    if kind not in ("bs", "mz"):
        raise DomainError(f"unknown interferometer kind {kind!r}")
    if route not in ("closed", "product"):
        raise DomainError(f"unknown route {route!r}")
    e = cmath.exp
    if kind == "bs":
        s, c = math.sin(omega), math.cos(omega)
        if route == "closed":
            return np.array([[1j * e(1j * (alpha + beta + phi)) * s, e(1j * (beta + phi)) * c],
                             [e(1j * (alpha + beta)) * c, 1j * e(1j * beta) * s]])
        S = np.array([[1j * s, c], [c, 1j * s]])
        return _phase(phi, 0) @ S @ _phase(alpha + beta, 0) @ _phase(0, beta)
    s, c = math.sin(omega / 2), math.cos(omega / 2)
    if route == "closed":
        pre = 1j * e(1j * (beta + omega / 2))
        return pre * np.array([[-e(1j * (alpha + phi)) * s, e(1j * phi) * c],
                               [e(1j * alpha) * c, s]])
    # the six factors generate the overall phase i e^{i(beta + omega/2)} themselves
    return (_phase(phi, 0) @ _HALF_BS @ _phase(omega, 0) @ _HALF_BS
            @ _phase(alpha + beta, 0) @ _phase(0, beta))


SQRT_NOT = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]) / 2


def sqrt_not(alpha=0.0, beta=-math.pi / 4, phi=0.0):
    """Square root of NOT through the four-parameter beam splitter at omega = pi/4.

    The default phases give ``(1/2)[[1+i, 1-i], [1-i, 1+i]]`` exactly; other
    choices (for example alpha = -pi, beta = 3pi/4, phi = -pi) square to NOT
    only up to a global phase.
    """
    return interferometer_unitary("bs", math.pi / 4, alpha, beta, phi)


def equal_up_to_phase(A, B, tol=1e-12):
    """True when ``A = e^{i chi} B`` for some real ``chi``."""
    A, B = as_matrix(A), as_matrix(B)
    k = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if abs(A[k]) == 0:
        return False
    ph = A[k] / B[k]
    return abs(abs(ph) - 1) <= tol and np.max(np.abs(A - ph * B)) <= tol


# --- two-particle correlations --------------------------------------------

def spin_operator(theta, phi):
    """``sigma(theta, phi) = n . sigma`` for the unit direction (theta, phi)."""
    n = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    return sum(k * s for k, s in zip(n, PAULI))


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)


def singlet_correlation(theta1, phi1, theta2, phi2, route="closed"):
    if route == "closed":
        return -(math.cos(theta1) * math.cos(theta2)
                 + math.cos(phi1 - phi2) * math.sin(theta1) * math.sin(theta2))
    if route == "trace":
        rho = np.outer(SINGLET, SINGLET.conj())
        O = np.kron(spin_operator(theta1, phi1), spin_operator(theta2, phi2))
        return float(np.trace(rho @ O).real)
    raise DomainError(f"unknown route {route!r}")


# --- Kochen-Specker ----------------------------------------------------------

KS_LABELS = "ABCDEFGHIJKLMNOPQR"
KS_VECTORS = (
    (0, 0, 1, -1), (1, -1, 0, 0), (1, 1, -1, -1), (1, 1, 1, 1), (1, -1, 1, -1),
    (1, 0, -1, 0), (0, 1, 0, -1), (1, 0, 1, 0), (1, 1, -1, 1), (-1, 1, 1, 1),
    (1, 1, 1, -1), (1, 0, 0, 1), (0, 1, -1, 0), (0, 1, 1, 0), (0, 0, 0, 1),
    (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1),
)
KS_CONTEXTS = ("ABCD", "DEFG", "GHIJ", "JKLM", "MNOP", "PQRA", "BIKR", "CELN", "FHOQ")


@dataclass(frozen=True)
class KSInstance:
    vectors: tuple
    contexts: tuple

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=float)
        if V.ndim != 2 or np.any(np.linalg.norm(V, axis=1) == 0):
            raise MalformedInstanceError("vectors must be nonzero and of equal length")
        for ctx in self.contexts:
            if len(set(ctx)) != len(ctx) or any(not 0 <= i < len(V) for i in ctx):
                raise MalformedInstanceError(f"bad context {ctx}")
            for i, j in itertools.combinations(ctx, 2):
                if abs(V[i] @ V[j]) > 1e-12:
                    raise MalformedInstanceError(f"context {ctx}: vectors {i}, {j} not orthogonal")
            if len(ctx) != V.shape[1]:
                raise MalformedInstanceError(f"context {ctx} is not a complete orthogonal basis")

    def occurrences(self):
        counts = [0] * len(self.vectors)
        for ctx in self.contexts:
            for i in ctx:
                counts[i] += 1
        return counts

    @property
    def each_in_two_contexts(self):
        return all(c == 2 for c in self.occurrences())


def ks_instance():
    idx = {c: i for i, c in enumerate(KS_LABELS)}
    return KSInstance(KS_VECTORS, tuple(tuple(idx[c] for c in ctx) for ctx in KS_CONTEXTS))


@dataclass(frozen=True)
class KSResult:
    colorable: bool
    assignment: Optional[dict]
    certificate: Optional[dict]
    nodes: int


def ks_colorability(inst: KSInstance) -> KSResult:
    """Search for a 0/1 assignment with exactly one 1 in every context.

    Depth-first over contexts; fixing a vector to 1 forces 0 on every vector
    orthogonal to it.
    """
    V = np.asarray(inst.vectors, dtype=float)
    nv = len(V)
    orth = [[j for j in range(nv) if j != i and abs(V[i] @ V[j]) < 1e-12] for i in range(nv)]
    val = [-1] * nv
    nodes = 0

    def consistent():
        for ctx in inst.contexts:
            ones = sum(val[i] == 1 for i in ctx)
            free = sum(val[i] == -1 for i in ctx)
            if ones > 1 or (ones == 0 and free == 0):
                return False
        return True

    def solve(k):
        nonlocal nodes
        nodes += 1
        if k == len(inst.contexts):
            return True
        ctx = inst.contexts[k]
        if any(val[i] == 1 for i in ctx):
            for i in ctx:
                if val[i] == -1:
                    val[i] = 0
            ok = consistent() and solve(k + 1)
            return ok
        for choice in ctx:
            if val[choice] == 0:
                continue
            saved = val[:]
            val[choice] = 1
            for i in ctx:
                if i != choice and val[i] == -1:
                    val[i] = 0
            for j in orth[choice]:
                if val[j] == 1:
                    break
                val[j] = 0
            else:
                if consistent() and solve(k + 1):
                    return True
            val[:] = saved
        return False

    if solve(0):
        assignment = {i: max(v, 0) for i, v in enumerate(val)}
        return KSResult(True, assignment, None, nodes)
    cert = None
    if inst.each_in_two_contexts and len(inst.contexts) % 2 == 1:
        cert = {
            "contexts": len(inst.contexts),
            "occurrences_per_vector": 2,
            "argument": "a noncontextual assignment counts each true vector twice, "
                        "giving an even total, but one true vector per context gives "
                        f"{len(inst.contexts)}, which is odd",
        }
    return KSResult(False, None, cert, nodes)


# --- groups, tensors, metrics ----------------------------------------------

def _check_group(table):
    T = np.asarray(table)
    n = T.shape[0]
    if T.shape != (n, n) or not np.issubdtype(T.dtype, np.integer):
        raise NonGroupTableError("closure", "table must be a square integer array")
    if T.min() < 0 or T.max() >= n:
        raise NonGroupTableError("closure", "entries outside the element range")
    ids = [e for e in range(n) if np.all(T[e] == np.arange(n)) and np.all(T[:, e] == np.arange(n))]
    if not ids:
        raise NonGroupTableError("identity", "no two-sided identity element")
    e = ids[0]
    for g in range(n):
        if not any(T[g, h] == e and T[h, g] == e for h in range(n)):
            raise NonGroupTableError("inverses", f"element {g} has no inverse")
    for a, b, c in itertools.product(range(n), repeat=3):
        if T[T[a, b], c] != T[a, T[b, c]]:
            raise NonGroupTableError("associativity", f"({a}{b}){c} != {a}({b}{c})")
    return T, e


def cayley_representation(table):
    """Left-regular permutation matrices ``P_g e_h = e_{gh}``."""
    T, _ = _check_group(table)
    n = T.shape[0]
    mats = []
    for g in range(n):
        P = np.zeros((n, n))
        P[T[g], np.arange(n)] = 1.0
        mats.append(P)
    return mats


def cyclic_table(n):
    return np.add.outer(np.arange(n), np.arange(n)) % n


def symmetric_group_table(k=3):
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    comp = lambda p, q: tuple(p[q[i]] for i in range(k))
    return np.array([[index[comp(p, q)] for q in perms] for p in perms])


def levi_civita(*idx):
    """Totally antisymmetric symbol on indices ``0..n-1``."""
    if len(set(idx)) != len(idx):
        return 0
    inv = sum(1 for a, b in itertools.combinations(idx, 2) if a > b)
    return -1 if inv % 2 else 1


def induced_metric(phi: Callable, u, v, partials=None, h=1e-5):
    """``g = J^T J`` for a surface map ``phi(u, v) -> R^3``."""
    if partials is not None:
        pu, pv = (np.asarray(p, dtype=float) for p in partials(u, v))
    else:
        f = lambda a, b: np.asarray(phi(a, b), dtype=float)
        pu = (f(u + h, v) - f(u - h, v)) / (2 * h)
        pv = (f(u, v + h) - f(u, v - h)) / (2 * h)
    J = np.column_stack([pu, pv])
    g = J.T @ J
    if abs(np.linalg.det(g)) <= 1e-12 * max(1.0, np.trace(g)) ** 2:
        raise DegeneracyError("tangent vectors are linearly dependent")
    return g


def sphere(r):
    return lambda th, ph: (r * math.sin(th) * math.cos(ph), r * math.sin(th) * math.sin(ph), r * math.cos(th))


def mobius(u, v):
    w = 1 + v * math.cos(u / 2)
    return (w * math.sin(u), w * math.cos(u), v * math.sin(u / 2))


def mobius_partials(u, v):
    s2, c2 = math.sin(u / 2), math.cos(u / 2)
    w = 1 + v * c2
    pu = (-0.5 * v * s2 * math.sin(u) + w * math.cos(u), -0.5 * v * s2 * math.cos(u) - w * math.sin(u), 0.5 * v * c2)
    pv = (c2 * math.sin(u), c2 * math.cos(u), s2)
    return pu, pv
