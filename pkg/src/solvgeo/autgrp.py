"""Automorphisms of the algebra and their action on inner products.

Every automorphism fixes the X-coefficient row, preserves the derived algebra
(the Heisenberg part) and the center (W), and in the fixed basis has the block
form

    F = [[1, 0,   0     ],
         [u, M,   0     ],
         [a, v^T, lambda]]

with M almost symplectic, M^T J M = lambda * J, lambda != 0, and the derived
column u = (1/(2*lambda)) * M J v.  The identity component splits as
D semidirect (Sp semidirect T): diagonal automorphisms diag(1, alpha*I, alpha^2),
symplectic blocks, and generalized translations.

Inner products transform by congruence, S -> F^T S F; isometry classes of
left-invariant metrics are exactly the orbits of this action.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, DomainError
from .liealg import LieAlgebraCHn, _structure_of
from .sympl import random_symplectic, symplectic_form


@dataclass(frozen=True)
class Automorphism:
    """Block data (lambda, M, v, a) plus the derived column u."""

    n: int
    lam: float
    M: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    a: float
    u: np.ndarray = field(repr=False)

    @property
    def matrix(self) -> np.ndarray:
        """The assembled 2n x 2n matrix."""
        dim = 2 * self.n
        F = np.zeros((dim, dim))
        F[0, 0] = 1.0
        F[1:-1, 0] = self.u
        F[1:-1, 1:-1] = self.M
        F[-1, 0] = self.a
        F[-1, 1:-1] = self.v
        F[-1, -1] = self.lam
        return F


def make_automorphism(n: int, lam: float, M: np.ndarray, v: np.ndarray, a: float,
                      tol: float = 1e-9) -> Automorphism:
    """Assemble and validate an automorphism from its block data."""
    if n < 2:
        raise DimensionError(f"complex dimension parameter must be >= 2, got {n}")
    if lam == 0.0:
        raise DomainError("lambda must be nonzero")
    M = np.asarray(M, dtype=float)
    v = np.asarray(v, dtype=float)
    k = 2 * (n - 1)
    if M.shape != (k, k) or v.shape != (k,):
        raise DimensionError(f"expected M of shape {(k, k)} and v of length {k}")
    J = symplectic_form(n - 1)
    scale = max(1.0, float(np.max(np.abs(M))) ** 2)
    if float(np.max(np.abs(M.T @ J @ M - lam * J))) > tol * scale:
        raise DomainError("M is not lambda-symplectic: M^T J M != lambda * J")
    u = (0.5 / lam) * (M @ (J @ v))
    return Automorphism(n=n, lam=float(lam), M=M, v=v, a=float(a), u=u)


def identity_automorphism(n: int) -> Automorphism:
    return make_automorphism(n, 1.0, np.eye(2 * (n - 1)), np.zeros(2 * (n - 1)), 0.0)


def diagonal_automorphism(n: int, alpha: float) -> Automorphism:
    """Element of D: diag(1, alpha * I, alpha^2), alpha > 0."""
    if alpha <= 0:
        raise DomainError("diagonal automorphisms require alpha > 0")
    k = 2 * (n - 1)
    return make_automorphism(n, alpha ** 2, alpha * np.eye(k), np.zeros(k), 0.0)


def symplectic_automorphism(n: int, M: np.ndarray, tol: float = 1e-9) -> Automorphism:
    """Element of Sp: block diag(1, M, 1) with M symplectic."""
    M = np.asarray(M, dtype=float)
    return make_automorphism(n, 1.0, M, np.zeros(M.shape[0]), 0.0, tol=tol)


def translation_automorphism(n: int, v: np.ndarray, a: float) -> Automorphism:
    """Element of T: M = I, arbitrary v and a, u = J v / 2."""
    return make_automorphism(n, 1.0, np.eye(2 * (n - 1)), v, a)


def from_matrix(F: np.ndarray, tol: float = 1e-9) -> Automorphism:
    """Decompose an assembled matrix back into validated block data."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1] or F.shape[0] % 2 != 0 or F.shape[0] < 4:
        raise DimensionError(f"expected a square matrix of even dimension >= 4, got {F.shape}")
    n = F.shape[0] // 2
    scale = max(1.0, float(np.max(np.abs(F))))
    if abs(F[0, 0] - 1.0) > tol * scale or np.max(np.abs(F[0, 1:])) > tol * scale \
            or np.max(np.abs(F[1:-1, -1])) > tol * scale:
        raise DomainError("matrix does not have the automorphism block pattern")
    aut = make_automorphism(n, F[-1, -1], F[1:-1, 1:-1], F[-1, 1:-1], F[-1, 0], tol=tol)
    if np.max(np.abs(aut.u - F[1:-1, 0])) > tol * scale:
        raise DomainError("u column is inconsistent with (1/(2 lambda)) M J v")
    return aut


def is_automorphism(F: np.ndarray, alg: LieAlgebraCHn, tol: float = 1e-9) -> bool:
    """Brute-force bracket preservation: [F e_i, F e_j] = F [e_i, e_j] for all pairs."""
    c = _structure_of(alg)
    F = np.asarray(F, dtype=float)
    if F.shape != (c.shape[0], c.shape[0]):
        raise DimensionError(f"expected matrix of shape {(c.shape[0], c.shape[0])}, got {F.shape}")
    lhs = np.einsum("ai,bj,abk->ijk", F, F, c)
    rhs = np.einsum("ijm,km->ijk", c, F)
    return float(np.max(np.abs(lhs - rhs))) <= tol


def _as_matrix(F) -> np.ndarray:
    return F.matrix if isinstance(F, Automorphism) else np.asarray(F, dtype=float)


def act_on_metric(F, S: np.ndarray) -> np.ndarray:
    """Congruence action S -> F^T S F (symmetrized against rounding)."""
    mat = _as_matrix(F)
    S = np.asarray(S, dtype=float)
    if S.shape != mat.shape:
        raise DimensionError(f"metric shape {S.shape} does not match automorphism {mat.shape}")
    out = mat.T @ S @ mat
    return 0.5 * (out + out.T)


def compose(F: Automorphism, G: Automorphism, tol: float = 1e-9) -> Automorphism:
    """Matrix product F G, re-decomposed into block data.

    Composition is contravariant for the metric action:
    act_on_metric(compose(F, G), S) == act_on_metric(G, act_on_metric(F, S)).
    """
    if F.n != G.n:
        raise DimensionError(f"cannot compose automorphisms with n={F.n} and n={G.n}")
    return from_matrix(F.matrix @ G.matrix, tol=tol)


def inverse(F: Automorphism, tol: float = 1e-9) -> Automorphism:
    return from_matrix(np.linalg.inv(F.matrix), tol=tol)


def random_automorphism(n: int, seed=None) -> Automorphism:
    """Seeded random element of the identity component D (Sp T).

    Samples alpha > 0, a random symplectic block, and a random generalized
    translation, then composes them; the result always passes is_automorphism.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    alpha = float(np.exp(rng.uniform(-0.7, 0.7)))
    M = random_symplectic(n - 1, rng)
    v = rng.uniform(-1.0, 1.0, 2 * (n - 1))
    a = float(rng.uniform(-1.0, 1.0))
    out = compose(diagonal_automorphism(n, alpha), symplectic_automorphism(n, M))
    return compose(out, translation_automorphism(n, v, a))


__all__ = [
    "Automorphism", "make_automorphism", "identity_automorphism",
    "diagonal_automorphism", "symplectic_automorphism", "translation_automorphism",
    "from_matrix", "is_automorphism", "act_on_metric", "compose", "inverse",
    "random_automorphism",
]
