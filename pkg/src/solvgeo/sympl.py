"""Symplectic linear algebra: standard form, Williamson normal form, rotations.

Conventions: the standard form on R^{2m} is the block matrix
J = [[0, I_m], [-I_m, 0]] and a matrix F is symplectic when F^T J F = J.
Williamson's theorem diagonalizes a symmetric positive-definite S by a
symplectic M: M^T S M = diag(d_1..d_m, d_1..d_m) with d_j > 0 the symplectic
eigenvalues of S (the moduli of the eigenvalues of J S^{-1} are 1/d_j).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningError, DimensionError, DomainError

#: Condition-number cap above which Williamson refuses to proceed.
CONDITION_CAP = 1e12


def symplectic_form(m: int) -> np.ndarray:
    """The 2m x 2m standard form [[0, I], [-I, 0]]."""
    if m < 1:
        raise DimensionError(f"number of modes must be >= 1, got {m}")
    J = np.zeros((2 * m, 2 * m))
    J[:m, m:] = np.eye(m)
    J[m:, :m] = -np.eye(m)
    return J


def _check_even_square(F: np.ndarray) -> int:
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {F.shape}")
    if F.shape[0] % 2 != 0:
        raise DimensionError(f"expected even dimension, got {F.shape[0]}")
    return F.shape[0] // 2


def is_symplectic(F: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff max|F^T J F - J| <= tol."""
    F = np.asarray(F, dtype=float)
    m = _check_even_square(F)
    J = symplectic_form(m)
    return float(np.max(np.abs(F.T @ J @ F - J))) <= tol


def phase_rotation(theta: np.ndarray) -> np.ndarray:
    """Block rotation [[diag cos, -diag sin], [diag sin, diag cos]].

    Acting on (x, y)-coordinates of C^m = R^{2m} this is multiplication of
    each complex coordinate by exp(i*theta_k); it is symplectic for any
    choice of angles.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    A = np.diag(np.cos(theta))
    B = np.diag(np.sin(theta))
    return np.block([[A, -B], [B, A]])


def diagonal_symplectic(t: np.ndarray) -> np.ndarray:
    """diag(t_1..t_m, 1/t_1..1/t_m); symplectic for any nonzero t."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t == 0):
        raise DomainError("diagonal symplectic factors must be nonzero")
    return np.diag(np.concatenate([t, 1.0 / t]))


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Symplectic M and symplectic eigenvalues d with M^T S M = diag(d, d)."""

    M: np.ndarray = field(repr=False)
    d: np.ndarray


def williamson(S: np.ndarray, order: str = "descending", tol: float = 1e-9) -> WilliamsonDecomposition:
    """Williamson normal form of a symmetric positive-definite matrix.

    Parameters
    ----------
    S : (2m, 2m) array
        Symmetric positive definite.
    order : "descending" or "ascending"
        Requested ordering of the symplectic eigenvalues d.
    tol : float
        Relative tolerance for the symmetry and positivity checks.

    Returns
    -------
    WilliamsonDecomposition with M^T J M = J and M^T S M = diag(d, d).

    The frame is built from the skew matrix A = S^{-1/2} J S^{-1/2}: the
    Hermitian matrix iA has eigenpairs (+-1/d_j, w_j), and the real and
    imaginary parts of sqrt(2) * w_j assemble an orthogonal matrix O with
    O^T A O in antidiagonal block form, so M = S^{-1/2} O diag(sqrt(d), sqrt(d)).
    """
    S = np.asarray(S, dtype=float)
    m = _check_even_square(S)
    if order not in ("descending", "ascending"):
        raise ValueError(f"order must be 'descending' or 'ascending', got {order!r}")
    scale = float(np.max(np.abs(S)))
    if scale == 0.0:
        raise DomainError("input matrix is zero")
    if float(np.max(np.abs(S - S.T))) > tol * scale:
        raise DomainError("input matrix is not symmetric within tolerance")
    eigval, eigvec = np.linalg.eigh(0.5 * (S + S.T))
    if eigval[0] <= 0.0:
        raise DomainError("input matrix is not positive definite")
    if eigval[-1] / eigval[0] > CONDITION_CAP:
        raise ConditioningError(
            f"condition number {eigval[-1] / eigval[0]:.3e} exceeds cap {CONDITION_CAP:.1e}"
        )
    inv_sqrt = (eigvec / np.sqrt(eigval)) @ eigvec.T

    J = symplectic_form(m)
    A = inv_sqrt @ J @ inv_sqrt
    A = 0.5 * (A - A.T)
    mu, w = np.linalg.eigh(1j * A)
    # eigenvalues come in +-1/d_j pairs; the positive half, ascending, gives d descending
    pos = w[:, m:]
    mu_pos = mu[m:]
    if mu_pos[0] <= 0:
        raise ConditioningError("failed to split the symplectic spectrum into +/- pairs")
    d = 1.0 / mu_pos
    a_vecs = np.sqrt(2.0) * pos.real
    b_vecs = np.sqrt(2.0) * pos.imag
    if order == "ascending":
        d = d[::-1]
        a_vecs = a_vecs[:, ::-1]
        b_vecs = b_vecs[:, ::-1]
    O = np.hstack([b_vecs, a_vecs])
    M = inv_sqrt @ O @ np.diag(np.sqrt(np.concatenate([d, d])))
    return WilliamsonDecomposition(M=M, d=d)


def random_symplectic(m: int, rng: np.random.Generator, factors: int = 3) -> np.ndarray:
    """Random symplectic matrix built from rotation/scaling/orthogonal/shear factors.

    Phase rotations and diagonal scalings alone never mix the (x_k, y_k)
    planes, so block-orthogonal factors [[O,0],[0,O]] and shears [[I,B],[0,I]]
    (B symmetric) are interleaved to exercise the whole group.
    """
    total = np.eye(2 * m)
    for _ in range(factors):
        total = total @ phase_rotation(rng.uniform(0.0, 2.0 * np.pi, m))
        total = total @ diagonal_symplectic(np.exp(rng.uniform(-0.5, 0.5, m)))
        q, _ = np.linalg.qr(rng.standard_normal((m, m)))
        total = total @ np.block([[q, np.zeros((m, m))], [np.zeros((m, m)), q]])
        b = rng.uniform(-0.5, 0.5, (m, m))
        b = 0.5 * (b + b.T)
        shear = np.eye(2 * m)
        shear[:m, m:] = b
        total = total @ shear
    return total
