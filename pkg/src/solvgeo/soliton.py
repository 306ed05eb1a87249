"""Ricci solitons: the Heisenberg nilsoliton and its Einstein extension.

A left-invariant metric is an (algebraic) Ricci soliton when its Ricci
operator satisfies Ric = c I + D for a real c and a derivation D of the Lie
algebra.  The Heisenberg algebra carries exactly one nilsoliton up to scaling
and automorphisms, the metric diag(1, ..., 1, beta); its one-dimensional
abelian extension, normalized by <e, e> = -(1/c) tr((ad e)^2), is exactly the
Einstein metric diag(1/beta, 1, ..., 1, beta) of the classification.

All quantities here are recomputed from defining properties (trace identities,
the derivation equations, the Koszul oracle on the Heisenberg factor) rather
than read off from any displayed intermediate value.
"""

from dataclasses import dataclass, field

import numpy as np

from .canon import CanonicalMetric, expand
from .curvature import curvature_oracle, ricci_closed_form
from .errors import DimensionError, DomainError
from .liealg import _structure_of, adjoint, build_chn

#: Relative singular-value cutoff when extracting the derivation subspace.
DERIVATION_NULLSPACE_TOL = 1e-9


@dataclass(frozen=True)
class SolitonCertificate:
    """Decomposition Ric_operator = constant * I + derivation, with its residual."""

    constant: float
    derivation: np.ndarray = field(repr=False)
    residual: float


@dataclass(frozen=True)
class NilsolitonData:
    """The Heisenberg nilsoliton diag(1, ..., 1, beta) in dimension 2n-1."""

    n: int
    beta: float
    c: float
    D1: np.ndarray = field(repr=False)
    ricci_nil: np.ndarray = field(repr=False)


def heisenberg_structure(n: int) -> np.ndarray:
    """Structure tensor of the Heisenberg algebra: basis (Y_i, Z_i, W), [Z_j, Y_i] = delta_ij W."""
    if n < 2:
        raise DimensionError(f"complex dimension parameter must be >= 2, got {n}")
    dim = 2 * n - 1
    c = np.zeros((dim, dim, dim))
    for i in range(n - 1):
        c[n - 1 + i, i, dim - 1] = 1.0
        c[i, n - 1 + i, dim - 1] = -1.0
    return c


def orthonormal_frame(c: CanonicalMetric) -> np.ndarray:
    """Columns (e, f_1..f_{n-1}, g_1..g_{n-1}, w) with B^T S B = I.

    e is the unit normalization of V = X - sum_i (x_i / sigma_i) Y_i, the
    g-orthogonal complement of the Heisenberg factor; g(V, V) = z.
    """
    n = c.n
    sig = c.sigma_full
    z = c.z
    if z <= 0:
        raise DomainError("degenerate canonical metric: z <= 0")
    B = np.zeros((2 * n, 2 * n))
    B[0, 0] = 1.0 / np.sqrt(z)
    B[1:n, 0] = -(c.x / sig) / np.sqrt(z)
    B[1:n, 1:n] = np.diag(1.0 / np.sqrt(sig))
    B[n:2 * n - 1, n:2 * n - 1] = np.diag(1.0 / np.sqrt(sig))
    B[-1, -1] = 1.0 / np.sqrt(c.beta)
    return B


def mean_curvature_vector(c: CanonicalMetric) -> np.ndarray:
    """H = (tr ad e) e, the unique abelian-factor vector with <H, A> = tr ad A.

    The trace is computed from the structure constants (it equals n / sqrt(z)).
    """
    alg = build_chn(c.n)
    e = orthonormal_frame(c)[:, 0]
    return float(np.trace(adjoint(alg, e))) * e


def derivation_basis(alg, tol: float = DERIVATION_NULLSPACE_TOL) -> list[np.ndarray]:
    """Basis of the derivation algebra: null space of D[u,v] = [Du,v] + [u,Dv]."""
    c = _structure_of(alg)
    dim = c.shape[0]
    eye = np.eye(dim)
    T = (np.einsum("ijb,la->ijlab", c, eye)
         - np.einsum("ajl,ib->ijlab", c, eye)
         - np.einsum("ial,jb->ijlab", c, eye))
    L = T.reshape(dim ** 3, dim ** 2)
    _, singular, vt = np.linalg.svd(L, full_matrices=True)
    null_mask = np.concatenate([singular, np.zeros(dim ** 2 - len(singular))]) <= tol * singular[0]
    return [vt[k].reshape(dim, dim) for k in range(dim ** 2) if null_mask[k]]


def ricci_soliton_check(c: CanonicalMetric, tol: float = 1e-9):
    """Least-squares fit of Ric_operator = constant * I + derivation.

    Returns a SolitonCertificate when the residual is within tol (relative to
    the Ricci operator's magnitude), None otherwise.
    """
    S = expand(c)
    ric_op = np.linalg.solve(S, ricci_closed_form(c))
    alg = build_chn(c.n)
    basis = derivation_basis(alg)
    dim = 2 * c.n
    design = np.column_stack([np.eye(dim).ravel()] + [D.ravel() for D in basis])
    coeffs, *_ = np.linalg.lstsq(design, ric_op.ravel(), rcond=None)
    fitted = (design @ coeffs).reshape(dim, dim)
    scale = max(1.0, float(np.max(np.abs(ric_op))))
    residual = float(np.max(np.abs(ric_op - fitted))) / scale
    if residual > tol:
        return None
    derivation = fitted - coeffs[0] * np.eye(dim)
    return SolitonCertificate(constant=float(coeffs[0]), derivation=derivation,
                              residual=residual)


def heisenberg_ricci_operator(n: int, beta: float) -> np.ndarray:
    """Independent oracle: Ricci operator of diag(1,...,1,beta) on the Heisenberg algebra."""
    S1 = np.diag(np.concatenate([np.ones(2 * n - 2), [beta]]))
    data = curvature_oracle(heisenberg_structure(n), S1)
    return np.linalg.solve(S1, data.ricci)


def heisenberg_nilsoliton(n: int, beta: float) -> NilsolitonData:
    """The nilsoliton data (c, D1) with Ric_1 = c I + D1 on the defining relation."""
    if n < 2:
        raise DimensionError(f"complex dimension parameter must be >= 2, got {n}")
    if beta <= 0:
        raise DomainError(f"beta must be positive, got {beta}")
    dim = 2 * n - 1
    c = -(beta / 2) * (n + 1)
    D1 = n * beta * np.diag(np.concatenate([0.5 * np.ones(dim - 1), [1.0]]))
    ricci_nil = c * np.eye(dim) + D1
    return NilsolitonData(n=n, beta=float(beta), c=float(c), D1=D1, ricci_nil=ricci_nil)


def extend_nilsoliton(data: NilsolitonData) -> CanonicalMetric:
    """One-dimensional abelian extension of the nilsoliton; returns the Einstein metric.

    The extension direction acts on the Heisenberg factor as ad X; the soliton
    normalization <X, X> = -(1/c) tr((ad X)^2) fixes p, which lands exactly on
    p * beta = 1, i.e. diag(1/beta, 1, ..., 1, beta).
    """
    if data.c >= 0:
        raise DomainError(f"nilsoliton constant must be negative, got {data.c}")
    n = data.n
    alg = build_chn(n)
    ad_x = adjoint(alg, alg.basis_vector(0))[1:, 1:]
    p = -np.trace(ad_x @ ad_x) / data.c
    return CanonicalMetric(n=n, p=float(p), x=np.zeros(n - 1),
                           sigma=np.ones(n - 2), beta=data.beta)
