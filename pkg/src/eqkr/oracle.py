"""Numerical antilinear-intertwiner oracle for R-vs-H decisions.

For a self-twisted-dual unitary representation rho and an involution
sigma(g) = J gbar J^{-1}, the oracle solves the linear system

    S . conj(rho(sigma(g))) = rho(g) . S        for all sampled g

for the matrix S of the antilinear intertwiner v -> S(vbar).  The
intertwiner space must be one-dimensional (Schur); then S.Sbar is a
real multiple of the identity and its sign decides the type: positive
for Real, negative for Quaternionic.

Representations are modelled concretely for SU(n), Sp(n) and U(n):
the defining representation, its exterior powers, the primitive (form-
traceless) parts of exterior powers for Sp(n), and symmetric powers.
Group elements are sampled as exponentials of a fixed basis of the Lie
algebra; the accepted intertwiner must keep residuals below tolerance
on 20 seeded random group elements.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .groups import ProductRootData, RootData

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 1789


class OracleError(RuntimeError):
    """Oracle could not produce a trustworthy answer."""


# ---------------------------------------------------------------------------
# Lie algebra bases and matrix models
# ---------------------------------------------------------------------------

def su_basis(n):
    """Antihermitian traceless basis of su(n)."""
    out = []
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1
            m[k, j] = -1
            out.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = 1j
            m[k, j] = 1j
            out.append(m)
    for j in range(n - 1):
        m = np.zeros((n, n), dtype=complex)
        m[j, j] = 1j
        m[j + 1, j + 1] = -1j
        out.append(m)
    return out


def u_basis(n):
    out = su_basis(n)
    m = np.zeros((n, n), dtype=complex)
    for j in range(n):
        m[j, j] = 1j
    out.append(m)
    return out


def sp_basis(n):
    """Antihermitian basis of sp(n) inside u(2n), blocks [[A,B],[-Bbar,Abar]]."""
    out = []

    def embed(a, b):
        m = np.zeros((2 * n, 2 * n), dtype=complex)
        m[:n, :n] = a
        m[n:, n:] = np.conj(a)
        m[:n, n:] = b
        m[n:, :n] = -np.conj(b)
        return m

    zero = np.zeros((n, n), dtype=complex)
    for j in range(n):
        a = zero.copy()
        a[j, j] = 1j
        out.append(embed(a, zero))
    for j in range(n):
        for k in range(j + 1, n):
            a = zero.copy()
            a[j, k] = 1
            a[k, j] = -1
            out.append(embed(a, zero))
            a = zero.copy()
            a[j, k] = 1j
            a[k, j] = 1j
            out.append(embed(a, zero))
    for j in range(n):
        for k in range(j, n):
            b = zero.copy()
            b[j, k] = 1
            b[k, j] = 1
            out.append(embed(zero, b))
            b = zero.copy()
            b[j, k] = 1j
            b[k, j] = 1j
            out.append(embed(zero, b))
    return out


def symplectic_j(m):
    """The standard J with J^2 = -1 on C^{2m}, block form [[0,I],[-I,0]]."""
    j = np.zeros((2 * m, 2 * m), dtype=complex)
    j[:m, m:] = np.eye(m)
    j[m:, :m] = -np.eye(m)
    return j


def expm_antihermitian(x):
    """exp of an antihermitian matrix via eigendecomposition (exact unitary)."""
    h = -1j * x  # hermitian
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def _subsets(n, k):
    return list(itertools.combinations(range(n), k))


def exterior_power(u, k):
    """k-th compound matrix (action on wedge^k of the defining space)."""
    n = u.shape[0]
    subs = _subsets(n, k)
    out = np.zeros((len(subs), len(subs)), dtype=complex)
    for a, rows in enumerate(subs):
        for b, cols in enumerate(subs):
            out[a, b] = np.linalg.det(u[np.ix_(rows, cols)])
    return out


def _contraction_matrix(n, k, form):
    """Contraction wedge^k -> wedge^{k-2} with the bilinear form."""
    rows = _subsets(n, k - 2)
    cols = _subsets(n, k)
    idx = {s: i for i, s in enumerate(rows)}
    out = np.zeros((len(rows), len(cols)), dtype=complex)
    for b, s in enumerate(cols):
        for p in range(k):
            for q in range(p + 1, k):
                w = form[s[p], s[q]]
                if w == 0:
                    continue
                rest = tuple(x for i, x in enumerate(s) if i not in (p, q))
                out[idx[rest], b] += (-1) ** (p + q + 1) * w
    return out


def _null_space(mat, tol):
    _, sv, vh = np.linalg.svd(mat)
    if mat.shape[0] < mat.shape[1]:
        sv = np.concatenate([sv, np.zeros(mat.shape[1] - mat.shape[0])])
    scale = max(sv[0], 1.0) if len(sv) else 1.0
    null = vh[sv < tol * scale]
    return null.conj().T  # columns span the kernel


def _symmetrizer(n, k):
    """Orthonormal basis of Sym^k inside the k-fold tensor power of C^n."""
    dim = n ** k
    proj = np.zeros((dim, dim))
    for perm in itertools.permutations(range(k)):
        p = np.zeros((dim, dim))
        for idx in itertools.product(range(n), repeat=k):
            src = sum(x * n ** (k - 1 - i) for i, x in enumerate(idx))
            permuted = tuple(idx[perm[i]] for i in range(k))
            dst = sum(x * n ** (k - 1 - i) for i, x in enumerate(permuted))
            p[dst, src] = 1
        proj += p
    proj /= factorial(k)
    vals, vecs = np.linalg.eigh(proj)
    return vecs[:, vals > 0.5]


class UnitaryRep:
    """A unitary representation given as a functor of the defining one."""

    def __init__(self, family, n, size, apply_fn, label):
        self.family = family
        self.n = n  # defining matrix size
        self.size = size
        self.apply = apply_fn
        self.label = label

    def __repr__(self):
        return f"UnitaryRep({self.label}, dim {self.size})"


def defining_rep(family, n):
    size = 2 * n if family == "Sp" else n
    return UnitaryRep(family, n, size, lambda u: u, f"{family}{n} defining")


def exterior_rep(family, n, k):
    size = 2 * n if family == "Sp" else n
    return UnitaryRep(family, n, comb(size, k),
                      lambda u: exterior_power(u, k),
                      f"{family}{n} wedge^{k}")


@lru_cache(maxsize=None)
def _primitive_basis(n, k):
    form = symplectic_j(n)
    c = _contraction_matrix(2 * n, k, form)
    q = _null_space(c, 1e-12)
    return q


def primitive_exterior_rep(n, k):
    """Fundamental V_{omega_k} of Sp(n): kernel of contraction in wedge^k."""
    q = _primitive_basis(n, k)

    def apply_fn(u):
        return q.conj().T @ exterior_power(u, k) @ q

    return UnitaryRep("Sp", n, q.shape[1], apply_fn, f"Sp{n} primitive wedge^{k}")


def symmetric_rep(family, n, k):
    size = 2 * n if family == "Sp" else n
    q = _symmetrizer(size, k)

    def apply_fn(u):
        t = np.array([[1.0 + 0j]])
        for _ in range(k):
            t = np.kron(t, u)
        return q.conj().T @ t @ q

    return UnitaryRep(family, n, q.shape[1], apply_fn, f"{family}{n} sym^{k}")


def rep_for_weight(rd: RootData, lam) -> UnitaryRep | None:
    """A concrete matrix model for lam, when the catalog has one."""
    if isinstance(rd, ProductRootData):
        return None
    fam, n = rd.spec.factors[0]
    lam = tuple(lam)
    if fam == "SU":
        if sum(lam) == 0:
            return None
        if set(lam) <= {0, 1} and sum(lam) == 1:
            k = lam.index(1) + 1
            return defining_rep(fam, n) if k == 1 else exterior_rep(fam, n, k)
        if n == 2:
            return symmetric_rep(fam, n, lam[0])
        return None
    if fam == "Sp":
        if set(lam) <= {0, 1} and sum(lam) == 1:
            k = lam.index(1) + 1
            return defining_rep(fam, n) if k == 1 else primitive_exterior_rep(n, k)
        return None
    if fam == "U":
        funds = rd.fundamental_weights()
        if lam in funds:
            k = funds.index(lam) + 1
            return defining_rep(fam, n) if k == 1 else exterior_rep(fam, n, k)
        return None
    return None


def _sigma_on_defining(inv_kind, family, n, custom_j=None):
    """sigma as a map on defining-representation matrices, or None."""
    if inv_kind == "trivial":
        return lambda u: u, None
    if inv_kind == "sigmaR" and family in ("SU", "U"):
        return (lambda u: np.conj(u)), np.eye(n, dtype=complex)
    if inv_kind == "sigmaH" and family in ("SU", "U") and n % 2 == 0:
        j = symplectic_j(n // 2)
        return (lambda u: j @ np.conj(u) @ j.conj().T), j
    if inv_kind == "custom" and custom_j is not None:
        j = custom_j
        jinv = np.linalg.inv(j)
        return (lambda u: j @ np.conj(u) @ jinv), j
    return None, None


def lie_basis(family, n):
    if family == "SU":
        return su_basis(n)
    if family == "Sp":
        return sp_basis(n)
    if family == "U":
        return u_basis(n)
    raise OracleError(f"no Lie algebra model for family {family}")


def matrix_oracle_type(rep: UnitaryRep, inv_kind: str,
                       tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED,
                       custom_j=None):
    """Decide R vs H for a self-twisted-dual representation.

    Returns (type, S) where S is the intertwiner matrix.  Raises
    OracleError when the intertwiner space is not one-dimensional
    ("not irreducible or not self-conjugate") or when S.Sbar is not a
    real multiple of the identity within tolerance ("inconclusive").
    """
    sigma, _ = _sigma_on_defining(inv_kind, rep.family, rep.n, custom_j)
    if sigma is None:
        raise OracleError(f"no matrix realization of {inv_kind} on "
                          f"{rep.family}({rep.n})")
    basis = lie_basis(rep.family, rep.n)
    samples = [expm_antihermitian(x) for x in basis]
    rng = np.random.default_rng(seed)
    for _ in range(2):  # generic combinations guard against degenerate bases
        coeffs = rng.uniform(-1, 1, size=len(basis))
        samples.append(expm_antihermitian(sum(c * x for c, x in zip(coeffs, basis))))

    d = rep.size
    eye = np.eye(d)
    blocks = []
    for g in samples:
        rg = rep.apply(g)
        rsg = np.conj(rep.apply(sigma(g)))
        # equation rho(g) S - S conj(rho(sigma g)) = 0, row-major vec
        blocks.append(np.kron(rg, eye) - np.kron(eye, rsg.T))
    null = _null_space(np.vstack(blocks), 1e-10)
    if null.shape[1] != 1:
        raise OracleError(
            f"intertwiner space of {rep.label} has dimension "
            f"{null.shape[1]}: not irreducible or not self-conjugate")
    s = null[:, 0].reshape(d, d)

    ss = s @ np.conj(s)
    c = np.trace(ss).real / d
    if abs(np.trace(ss).imag) > tol * d or abs(c) < tol:
        raise OracleError(f"oracle inconclusive for {rep.label}: S.Sbar trace {np.trace(ss)}")
    if np.linalg.norm(ss - c * eye) > tol * max(abs(c), 1.0) * d:
        raise OracleError(f"oracle inconclusive for {rep.label}: S.Sbar not scalar")

    for _ in range(20):
        coeffs = rng.uniform(-1, 1, size=len(basis))
        g = expm_antihermitian(sum(cf * x for cf, x in zip(coeffs, basis)))
        resid = np.linalg.norm(rep.apply(g) @ s - s @ np.conj(rep.apply(sigma(g))))
        if resid > tol * max(np.linalg.norm(s), 1.0) * 10:
            raise OracleError(f"oracle residual {resid:.2e} above tolerance "
                              f"for {rep.label}")
    return ("R" if c > 0 else "H"), s


def oracle_type_for_weight(rd: RootData, inv, lam):
    """Oracle answer for a weight, or None when no matrix model exists."""
    rep = rep_for_weight(rd, lam)
    if rep is None:
        return None
    kind = inv.kinds[0]
    try:
        if isinstance(kind, str):
            t, _ = matrix_oracle_type(rep, kind)
        elif getattr(inv, "matrix_j", None) is not None:
            t, _ = matrix_oracle_type(rep, "custom",
                                      custom_j=np.asarray(inv.matrix_j))
        else:
            return None
    except OracleError:
        return None
    return t
