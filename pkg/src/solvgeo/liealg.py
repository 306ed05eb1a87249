"""Structure constants of the solvable Lie algebra behind complex hyperbolic space.

The algebra is the one-dimensional solvable extension of the Heisenberg algebra
that acts simply transitively on complex hyperbolic n-space.  In the fixed
ordered basis

    (X, Y_1, ..., Y_{n-1}, Z_1, ..., Z_{n-1}, W)

the nonzero brackets are

    [X, Y_i] = Y_i / 2,   [X, Z_i] = Z_i / 2,   [X, W] = W,
    [Z_j, Y_i] = delta_ij * W.

Everything downstream (automorphism checks, curvature oracles) is computed from
the dense structure tensor built here.  The constants are all in {0, +-1/2, +-1},
so bracket arithmetic and the Jacobi identity are exact in double precision.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError


@dataclass(frozen=True)
class LieAlgebraCHn:
    """The algebra of complex dimension parameter ``n`` (real dimension 2n).

    ``structure[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
    """

    n: int
    structure: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def basis_labels(self) -> tuple[str, ...]:
        n = self.n
        return (
            ("X",)
            + tuple(f"Y{i}" for i in range(1, n))
            + tuple(f"Z{i}" for i in range(1, n))
            + ("W",)
        )

    def basis_vector(self, index: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[index] = 1.0
        return e


def build_chn(n: int) -> LieAlgebraCHn:
    """Build the structure tensor for complex dimension parameter ``n`` (n >= 2)."""
    if n < 2:
        raise DimensionError(f"complex dimension parameter must be >= 2, got {n}")
    dim = 2 * n
    c = np.zeros((dim, dim, dim))
    w = dim - 1
    for i in range(1, n):  # Y_i at i, Z_i at n - 1 + i
        yi, zi = i, n - 1 + i
        c[0, yi, yi] = 0.5
        c[yi, 0, yi] = -0.5
        c[0, zi, zi] = 0.5
        c[zi, 0, zi] = -0.5
        c[zi, yi, w] = 1.0
        c[yi, zi, w] = -1.0
    c[0, w, w] = 1.0
    c[w, 0, w] = -1.0
    c.flags.writeable = False
    return LieAlgebraCHn(n=n, structure=c)


def _structure_of(alg) -> np.ndarray:
    """Accept a LieAlgebraCHn or a raw rank-3 structure tensor."""
    tensor = alg.structure if isinstance(alg, LieAlgebraCHn) else np.asarray(alg, dtype=float)
    if tensor.ndim != 3 or len(set(tensor.shape)) != 1:
        raise DimensionError(f"structure tensor must be cubic rank 3, got shape {tensor.shape}")
    return tensor


def bracket(alg, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Bilinear extension of the basis brackets to coefficient vectors."""
    c = _structure_of(alg)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if u.shape != (c.shape[0],) or w.shape != (c.shape[0],):
        raise DimensionError(
            f"coefficient vectors must have length {c.shape[0]}, got {u.shape} and {w.shape}"
        )
    return np.einsum("i,j,ijk->k", u, w, c)


def adjoint(alg, u: np.ndarray) -> np.ndarray:
    """Matrix of ad(u): v -> [u, v] acting on coefficient vectors."""
    c = _structure_of(alg)
    u = np.asarray(u, dtype=float)
    if u.shape != (c.shape[0],):
        raise DimensionError(f"coefficient vector must have length {c.shape[0]}, got {u.shape}")
    # column j of ad(u) holds [u, e_j]
    return np.einsum("i,ijk->jk", u, c).T


def jacobi_residual(alg) -> float:
    """Largest absolute value of [[e_i,e_j],e_k] + cyclic over all basis triples."""
    c = _structure_of(alg)
    double = np.einsum("ijm,mkl->ijkl", c, c)
    total = double + double.transpose(1, 2, 0, 3) + double.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(total)))


def validate_jacobi(alg) -> bool:
    """True iff the Jacobi identity holds exactly for all basis triples."""
    return jacobi_residual(alg) == 0.0


def derived_algebra(alg, tol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (columns) of the span of all brackets [e_i, e_j]."""
    c = _structure_of(alg)
    dim = c.shape[0]
    images = c.reshape(dim * dim, dim)
    u_mat, singular, _ = np.linalg.svd(images.T, full_matrices=False)
    rank = int(np.sum(singular > tol * max(1.0, singular[0])))
    return u_mat[:, :rank]
