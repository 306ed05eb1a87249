"""Curvature of left-invariant metrics: a brute-force oracle and closed forms.

Two independent engines compute the same geometry:

* the oracle solves the Koszul linear system from structure constants
  (2 g(nabla_i e_j, e_k) = g([e_i,e_j],e_k) - g([e_j,e_k],e_i) + g([e_k,e_i],e_j))
  and applies the definition R(a,b) = nabla_a nabla_b - nabla_b nabla_a -
  nabla_[a,b]; it works for any structure tensor and any positive-definite S;

* the closed forms evaluate the explicit connection, curvature-operator, wedge,
  Ricci, and scalar-curvature expressions for the canonical metrics
  S(p, x, sigma, beta).

The oracle is the ground truth in tests; every closed form must match it
entry-wise.  Curvature conventions: operators act on coefficient vectors,
Ric(a, b) = tr(v -> R(v, a) b), tau = tr(S^{-1} Ric).
"""

from dataclasses import dataclass, field

import numpy as np

from .canon import CanonicalMetric, canonicalize, expand
from .errors import ConditioningError, DimensionError, DomainError
from .liealg import _structure_of, build_chn

#: Relative floor below which the Schur complement z is considered degenerate.
Z_FLOOR = 1e-12


@dataclass(frozen=True)
class CurvatureData:
    """Curvature operators R[i, j] (matrices), Ricci form, scalar curvature."""

    operators: np.ndarray = field(repr=False)  # (dim, dim, dim, dim)
    ricci: np.ndarray = field(repr=False)      # (dim, dim)
    scalar: float


@dataclass(frozen=True)
class WedgeExpansion:
    """Coefficients of each R(e_i, e_j) over the 2-vector basis e_a ^ e_b.

    ``coeffs[i, j, a, b]`` is antisymmetric in (i, j) and in (a, b); the
    operator is recovered as sum_ab coeffs[...,a,b] * (e_a tensor S[b,:]).
    """

    coeffs: np.ndarray = field(repr=False)     # (dim, dim, dim, dim)


# ---------------------------------------------------------------------------
# oracle

def koszul_connection(alg, S: np.ndarray) -> np.ndarray:
    """Connection table gamma[i, j, k] (nabla_{e_i} e_j = sum_k gamma[i,j,k] e_k).

    Solves the Koszul system S gamma_ij = rhs_ij for every basis pair; works
    for a LieAlgebraCHn or any raw structure tensor.
    """
    c = _structure_of(alg)
    S = np.asarray(S, dtype=float)
    dim = c.shape[0]
    if S.shape != (dim, dim):
        raise DimensionError(f"metric shape {S.shape} does not match algebra dimension {dim}")
    if np.linalg.eigvalsh(0.5 * (S + S.T))[0] <= 0.0:
        raise DomainError("metric must be positive definite")
    # T[i, j, k] = g([e_i, e_j], e_k)
    T = np.einsum("ijm,mk->ijk", c, S)
    rhs = 0.5 * (T - np.einsum("jki->ijk", T) + np.einsum("kij->ijk", T))
    gamma = np.linalg.solve(S, rhs.reshape(dim * dim, dim).T).T.reshape(dim, dim, dim)
    return gamma


def curvature_operators_from_connection(alg, gamma: np.ndarray) -> np.ndarray:
    """R[i, j] = A_i A_j - A_j A_i - sum_k c[i,j,k] A_k with (A_i)_{kj} = gamma[i,j,k]."""
    c = _structure_of(alg)
    A = gamma.transpose(0, 2, 1)
    prod = np.einsum("iab,jbc->ijac", A, A)
    return prod - prod.transpose(1, 0, 2, 3) - np.einsum("ijk,kab->ijab", c, A)


def ricci_from_operators(operators: np.ndarray) -> np.ndarray:
    """Ric[i, j] = sum_k (coefficient of e_k in R(e_k, e_i) e_j)."""
    return np.einsum("kikj->ij", operators)


def curvature_oracle(alg, S: np.ndarray) -> CurvatureData:
    """Full curvature bundle from structure constants and the Koszul connection."""
    S = np.asarray(S, dtype=float)
    gamma = koszul_connection(alg, S)
    operators = curvature_operators_from_connection(alg, gamma)
    ricci = ricci_from_operators(operators)
    # redundancy check: the same trace through the metric and its inverse
    Sinv = np.linalg.inv(S)
    paired = np.einsum("bc,aicj->aibj", S, operators)
    ricci_dual = np.einsum("ab,aibj->ij", Sinv, paired)
    scale = max(1.0, float(np.max(np.abs(ricci))))
    if float(np.max(np.abs(ricci - ricci_dual))) > 1e-9 * scale:
        raise ConditioningError("Ricci trace and metric-dual computations disagree")
    ricci = 0.5 * (ricci + ricci.T)
    scalar = float(np.trace(Sinv @ ricci))
    return CurvatureData(operators=operators, ricci=ricci, scalar=scalar)


def symmetry_residuals(data: CurvatureData, S: np.ndarray) -> dict:
    """Max-norm residuals of the classical curvature symmetries."""
    R = data.operators
    S = np.asarray(S, dtype=float)
    anti = float(np.max(np.abs(R + R.transpose(1, 0, 2, 3))))
    lowered = np.einsum("la,ijak->ijkl", S, R)  # g(R(e_i,e_j) e_k, e_l)
    skew = float(np.max(np.abs(lowered + lowered.transpose(0, 1, 3, 2))))
    pair = float(np.max(np.abs(lowered - lowered.transpose(2, 3, 0, 1))))
    applied = R.transpose(0, 1, 3, 2)           # [i, j, k, :] = R(e_i, e_j) e_k
    bianchi = float(np.max(np.abs(
        applied + applied.transpose(1, 2, 0, 3) + applied.transpose(2, 0, 1, 3))))
    return {"antisymmetry": anti, "skew_adjoint": skew,
            "pair_symmetry": pair, "first_bianchi": bianchi}


def connection_residuals(alg, gamma: np.ndarray, S: np.ndarray) -> dict:
    """Torsion-free and metric-compatibility residuals of a connection table."""
    c = _structure_of(alg)
    S = np.asarray(S, dtype=float)
    torsion = float(np.max(np.abs(gamma - gamma.transpose(1, 0, 2) - c)))
    # g(nabla_i e_j, e_k) + g(e_j, nabla_i e_k) = 0 for a left-invariant metric
    lowered = np.einsum("ijm,mk->ijk", gamma, S)
    compat = float(np.max(np.abs(lowered + lowered.transpose(0, 2, 1))))
    return {"torsion": torsion, "metric_compatibility": compat}


# ---------------------------------------------------------------------------
# closed forms for the canonical metrics

def _unpack(c: CanonicalMetric):
    n = c.n
    x = c.x
    sig = c.sigma_full
    z = c.z
    if z <= Z_FLOOR * c.p:
        raise DomainError(f"degenerate canonical metric: z = {z:.3e} <= {Z_FLOOR} * p")
    iY = lambda i: 1 + i
    iZ = lambda i: n + i
    return n, float(c.p), x, sig, float(c.beta), z, iY, iZ, 2 * n - 1


def closed_form_connection(c: CanonicalMetric) -> np.ndarray:
    """The nonzero covariant derivatives of the canonical metric, as a table."""
    n, p, x, sig, beta, z, iY, iZ, iW = _unpack(c)
    dim = 2 * n
    base = np.zeros(dim)  # X - sum_k (x_k / sigma_k) Y_k
    base[0] = 1.0
    for k in range(n - 1):
        base[iY(k)] = -x[k] / sig[k]

    gamma = np.zeros((dim, dim, dim))
    gamma[0, 0] = (p / (2 * z)) * base
    gamma[0, 0, 0] -= 0.5
    gamma[iW, 0, iW] = -1.0
    gamma[iW, iW] = (beta / z) * base
    for i in range(n - 1):
        gamma[0, iY(i)] = (x[i] / (2 * z)) * base
        gamma[iY(i), 0] = (x[i] / (2 * z)) * base
        gamma[iY(i), 0, iY(i)] -= 0.5
        gamma[iZ(i), 0, iZ(i)] = -0.5
        gamma[iY(i), iY(i)] = (sig[i] / (2 * z)) * base
        gamma[iZ(i), iZ(i)] = (sig[i] / (2 * z)) * base
        gamma[iY(i), iZ(i), iW] = -0.5
        gamma[iZ(i), iY(i), iW] = 0.5
        gamma[iY(i), iW, iZ(i)] = beta / (2 * sig[i])
        gamma[iW, iY(i), iZ(i)] = beta / (2 * sig[i])
        wz = (beta / (2 * z * sig[i])) * (x[i] * base)
        wz[iY(i)] -= beta / (2 * sig[i])
        gamma[iW, iZ(i)] = wz
        gamma[iZ(i), iW] = wz
    return gamma


def curvature_closed_form(c: CanonicalMetric) -> CurvatureData:
    """All curvature operators of the canonical metric from their explicit forms."""
    n, p, x, sig, beta, z, iY, iZ, iW = _unpack(c)
    dim = 2 * n
    R = np.zeros((dim, dim, dim, dim))

    ysum = np.zeros(dim)   # sum_l (x_l / sigma_l) Y_l
    zsum = np.zeros(dim)   # sum_l (x_l / sigma_l^2) Z_l
    for l in range(n - 1):
        ysum[iY(l)] = x[l] / sig[l]
        zsum[iZ(l)] = x[l] / sig[l] ** 2
    base = -ysum.copy()
    base[0] = 1.0         # X - sum_l (x_l / sigma_l) Y_l

    def unit(idx, coeff=1.0):
        v = np.zeros(dim)
        v[idx] = coeff
        return v

    def fill(a, b, op):
        R[a, b] = op
        R[b, a] = -op

    for i in range(n - 1):
        # R(X, Y_i)
        op = np.zeros((dim, dim))
        op[:, 0] = (1 / (4 * z)) * (-x[i] * unit(0) + p * unit(iY(i)))
        for j in range(n - 1):
            col = (x[j] / (4 * z)) * unit(iY(i))
            if i == j:
                col -= (sig[i] / (4 * z)) * unit(0)
            op[:, iY(j)] = col
            if i == j:
                op[:, iZ(j)] = unit(iW, 0.25)
        op[:, iW] = unit(iZ(i), -beta / (4 * sig[i]))
        fill(0, iY(i), op)

        # R(X, Z_i)
        op = np.zeros((dim, dim))
        zi_w = unit(iZ(i)) + unit(iW, x[i] / sig[i])
        op[:, 0] = (p / (4 * z)) * zi_w
        for j in range(n - 1):
            col = (x[j] / (4 * z)) * zi_w
            if i == j:
                col -= unit(iW, 0.25)
            op[:, iY(j)] = col
            if i == j:
                op[:, iZ(j)] = -(sig[i] / (4 * z)) * unit(0)
        op[:, iW] = (beta / (4 * z * sig[i])) * (-2 * x[i] * unit(0) + x[i] * ysum + z * unit(iY(i)))
        fill(0, iZ(i), op)

        # R(Y_i, W)
        op = np.zeros((dim, dim))
        op[:, 0] = (1 / (4 * z)) * (beta * x[i] * zsum - (beta * z / sig[i]) * unit(iZ(i))
                                    + 2 * x[i] * unit(iW))
        op[:, iY(i)] = (beta / (4 * z)) * (sig[i] * zsum
                                           + (2 * sig[i] / beta - z / sig[i]) * unit(iW))
        for j in range(n - 1):
            col = -(beta / (4 * z)) * (x[j] / sig[j]) * unit(iY(i))
            if i == j:
                col += (beta / (4 * z)) * base
            op[:, iZ(j)] = col
        op[:, iW] = (beta ** 2 / (4 * z * sig[i] ** 2)) * (
            -x[i] * unit(0) + x[i] * ysum + (z - 2 * sig[i] ** 2 / beta) * unit(iY(i)))
        fill(iY(i), iW, op)

        # R(Z_i, W)
        op = np.zeros((dim, dim))
        op[:, 0] = (beta / (4 * z * sig[i])) * (-x[i] * unit(0) + x[i] * ysum + z * unit(iY(i)))
        op[:, iY(i)] = -(beta / (4 * z)) * base
        for j in range(n - 1):
            col = -(beta / (4 * z)) * (x[j] / sig[j]) * unit(iZ(i))
            wcoef = -(beta / (4 * z)) * x[i] * x[j] / (sig[i] * sig[j])
            if i == j:
                col += (beta / (4 * z)) * sig[i] * zsum
                wcoef += (beta / (4 * z)) * (2 * sig[i] / beta - z / sig[j])
            col += wcoef * unit(iW)
            op[:, iZ(j)] = col
        op[:, iW] = (beta ** 2 / (4 * z)) * ((z / sig[i] ** 2 - 2 / beta) * unit(iZ(i))
                                             + (x[i] / sig[i]) * zsum)
        fill(iZ(i), iW, op)

        for j in range(n - 1):
            # R(Y_i, Z_j), all pairs including i == j
            op = np.zeros((dim, dim))
            op[:, 0] = (1 / (4 * z)) * (x[i] * unit(iZ(j))
                                        + (x[i] * x[j] / sig[j] - 2 * (i == j) * z) * unit(iW))
            for k in range(n - 1):
                col = np.zeros(dim)
                if j == k:
                    col += 0.25 * (beta / sig[i]) * unit(iZ(i))
                if i == k:
                    col += 0.25 * (sig[i] / z) * unit(iZ(j))
                    col += 0.25 * (x[j] * sig[i] / (z * sig[j])) * unit(iW)
                if i == j:
                    col += 0.5 * (beta / sig[k]) * unit(iZ(k))
                op[:, iY(k)] = col
                col = np.zeros(dim)
                if i == j:
                    col += (2 / (4 * z)) * (beta / sig[k]) * (
                        x[k] * unit(0) - z * unit(iY(k)) - x[k] * ysum)
                if i == k:
                    col += (1 / (4 * z)) * (beta / sig[j]) * (
                        x[j] * unit(0) - z * unit(iY(j)) - x[j] * ysum)
                if j == k:
                    col -= (sig[j] / (4 * z)) * unit(iY(i))
                op[:, iZ(k)] = col
            wcol = -(beta / (4 * z)) * (x[j] / sig[j]) * unit(iY(i))
            if i == j:
                wcol += (beta / (2 * z)) * base
            op[:, iW] = wcol
            fill(iY(i), iZ(j), op)

            if j <= i:
                continue
            # R(Y_i, Y_j), i < j
            op = np.zeros((dim, dim))
            op[:, 0] = (1 / (4 * z)) * (x[i] * unit(iY(j)) - x[j] * unit(iY(i)))
            op[:, iY(i)] = (sig[i] / (4 * z)) * unit(iY(j))
            op[:, iY(j)] = -(sig[j] / (4 * z)) * unit(iY(i))
            op[:, iZ(i)] = (beta / (4 * sig[j])) * unit(iZ(j))
            op[:, iZ(j)] = -(beta / (4 * sig[i])) * unit(iZ(i))
            fill(iY(i), iY(j), op)

            # R(Z_i, Z_j), i < j
            op = np.zeros((dim, dim))
            op[:, iY(i)] = (beta / (4 * z * sig[j])) * (
                -x[j] * unit(0) + x[j] * ysum + z * unit(iY(j)))
            op[:, iY(j)] = -(beta / (4 * z * sig[i])) * (
                -x[i] * unit(0) + x[i] * ysum + z * unit(iY(i)))
            op[:, iZ(i)] = (sig[i] / (4 * z)) * (unit(iZ(j)) + (x[j] / sig[j]) * unit(iW))
            op[:, iZ(j)] = -(sig[j] / (4 * z)) * (unit(iZ(i)) + (x[i] / sig[i]) * unit(iW))
            op[:, iW] = (beta / (4 * z)) * ((x[i] / sig[i]) * unit(iZ(j))
                                            - (x[j] / sig[j]) * unit(iZ(i)))
            fill(iZ(i), iZ(j), op)

    # R(X, W)
    op = np.zeros((dim, dim))
    op[:, 0] = (p * beta / (4 * z)) * zsum + ((z + p) / (2 * z)) * unit(iW)
    for i in range(n - 1):
        op[:, iY(i)] = ((x[i] * beta / (4 * z)) * zsum - (beta / (2 * sig[i])) * unit(iZ(i))
                        + (x[i] / (2 * z)) * unit(iW))
        op[:, iZ(i)] = (beta / (4 * z * sig[i])) * (
            -3 * x[i] * unit(0) + 2 * x[i] * ysum + 2 * z * unit(iY(i)))
    op[:, iW] = (beta / z) * (-unit(0) + 0.5 * ysum)
    fill(0, iW, op)

    ricci = ricci_closed_form(c)
    scalar = scalar_closed_form(c)
    return CurvatureData(operators=R, ricci=ricci, scalar=scalar)


def curvature_wedge(c: CanonicalMetric) -> WedgeExpansion:
    """Curvature operators as 2-vectors: coefficients over the basis e_a ^ e_b."""
    n, p, x, sig, beta, z, iY, iZ, iW = _unpack(c)
    dim = 2 * n
    W = np.zeros((dim, dim, dim, dim))

    def add(i, j, a, b, coeff):
        if coeff == 0.0 or a == b:
            return
        W[i, j, a, b] += coeff
        W[i, j, b, a] -= coeff
        W[j, i, a, b] -= coeff
        W[j, i, b, a] += coeff

    for i in range(n - 1):
        # R(X, Y_i) = -(1/4z) X^Y_i - (1/(4 sigma_i)) Z_i^W
        add(0, iY(i), 0, iY(i), -1 / (4 * z))
        add(0, iY(i), iZ(i), iW, -1 / (4 * sig[i]))

        # R(X, Z_i)
        pref = 1 / (4 * z * sig[i])
        add(0, iZ(i), 0, iZ(i), -pref * sig[i])
        add(0, iZ(i), 0, iW, -pref * 2 * x[i])
        for l in range(n - 1):
            add(0, iZ(i), iY(l), iW, pref * x[i] * x[l] / sig[l])
        add(0, iZ(i), iY(i), iW, pref * z)

        # R(Y_i, W)
        pref = beta / (4 * z * sig[i])
        add(iY(i), iW, 0, iW, -pref * x[i] / sig[i])
        for l in range(n - 1):
            add(iY(i), iW, iY(l), iW, pref * (x[i] / sig[i]) * (x[l] / sig[l]))
            add(iY(i), iW, iY(l), iZ(i), -pref * x[l] / sig[l])
            add(iY(i), iW, iY(i), iZ(l), -pref * sig[i] * x[l] / sig[l] ** 2)
        add(iY(i), iW, iY(i), iW, pref * (z / sig[i] - 2 * sig[i] / beta))
        add(iY(i), iW, 0, iZ(i), pref)

        # R(Z_i, W)
        pref = beta / (4 * z)
        add(iZ(i), iW, 0, iY(i), -pref / sig[i])
        for l in range(n - 1):
            add(iZ(i), iW, iY(l), iY(i), pref * (x[l] / sig[l]) / sig[i])
            add(iZ(i), iW, iZ(l), iZ(i), pref * x[l] / sig[l] ** 2)
            add(iZ(i), iW, iZ(l), iW, pref * (x[i] / sig[i]) * (x[l] / sig[l] ** 2))
        add(iZ(i), iW, iZ(i), iW, pref * (z / sig[i] ** 2 - 2 / beta))

        for j in range(n - 1):
            # R(Y_i, Z_j)
            pref = 1 / (4 * z * sig[i] * sig[j])
            add(iY(i), iZ(j), iY(i), iW, -pref * x[j] * sig[i])
            add(iY(i), iZ(j), iY(i), iZ(j), -pref * sig[i] * sig[j])
            if i == j:
                add(iY(i), iZ(j), 0, iW, pref * 2 * sig[i] * sig[j])
                for l in range(n - 1):
                    add(iY(i), iZ(j), iY(l), iW, -pref * 2 * sig[i] * sig[j] * x[l] / sig[l])
                for m in range(n - 1):
                    q = pref * 2 * sig[i] * sig[j] * beta / sig[m] ** 2
                    add(iY(i), iZ(j), 0, iZ(m), q * x[m])
                    for l in range(n - 1):
                        add(iY(i), iZ(j), iY(l), iZ(m), -q * x[m] * x[l] / sig[l])
                    add(iY(i), iZ(j), iY(m), iZ(m), -q * z)
            add(iY(i), iZ(j), 0, iZ(i), pref * beta * x[j])
            for l in range(n - 1):
                add(iY(i), iZ(j), iY(l), iZ(i), -pref * beta * x[j] * x[l] / sig[l])
            add(iY(i), iZ(j), iY(j), iZ(i), -pref * beta * z)

            if j <= i:
                continue
            # R(Y_i, Y_j) = -(1/4z) Y_i^Y_j - (beta/(4 sigma_i sigma_j)) Z_i^Z_j
            add(iY(i), iY(j), iY(i), iY(j), -1 / (4 * z))
            add(iY(i), iY(j), iZ(i), iZ(j), -beta / (4 * sig[i] * sig[j]))

            # R(Z_i, Z_j)
            pref = 1 / (4 * z * sig[i] * sig[j])
            add(iZ(i), iZ(j), iZ(j), iW, pref * x[i] * sig[j])
            add(iZ(i), iZ(j), iZ(i), iW, -pref * x[j] * sig[i])
            add(iZ(i), iZ(j), iZ(i), iZ(j), -pref * sig[i] * sig[j])
            add(iZ(i), iZ(j), 0, iY(j), pref * beta * x[i])
            add(iZ(i), iZ(j), 0, iY(i), -pref * beta * x[j])
            for l in range(n - 1):
                add(iZ(i), iZ(j), iY(l), iY(j), -pref * beta * x[i] * x[l] / sig[l])
                add(iZ(i), iZ(j), iY(l), iY(i), pref * beta * x[j] * x[l] / sig[l])
            add(iZ(i), iZ(j), iY(i), iY(j), -pref * beta * z)

    # R(X, W)
    pref = 1 / (2 * z)
    add(0, iW, 0, iW, -2 * pref)
    for l in range(n - 1):
        add(0, iW, iY(l), iW, pref * x[l] / sig[l])
    for m in range(n - 1):
        q = pref * beta / sig[m] ** 2
        add(0, iW, 0, iZ(m), -1.5 * q * x[m])
        for l in range(n - 1):
            add(0, iW, iY(l), iZ(m), q * x[m] * x[l] / sig[l])
        add(0, iW, iY(m), iZ(m), q * z)

    return WedgeExpansion(coeffs=W)


def wedge_to_operators(wedge: WedgeExpansion, S: np.ndarray) -> np.ndarray:
    """Reconstruct operator matrices via (e_a ^ e_b)(v) = g(e_b, v) e_a - g(e_a, v) e_b."""
    return np.einsum("ijab,bm->ijam", wedge.coeffs, np.asarray(S, dtype=float))


def ricci_closed_form(c: CanonicalMetric) -> np.ndarray:
    """The Ricci tensor of the canonical metric in the fixed basis."""
    n, p, x, sig, beta, z, iY, iZ, iW = _unpack(c)
    dim = 2 * n
    v = x / sig
    B = np.zeros((dim, dim))
    B[0, 0] = n * p + z
    B[0, 1:n] = n * x
    B[1:n, 0] = n * x
    yy = n * sig + beta * z / sig
    B[1:n, 1:n] = np.diag(yy)
    B[n:dim - 1, n:dim - 1] = np.diag(yy) + beta * np.outer(v, v)
    B[n:dim - 1, iW] = (2 * n + 1) * (beta / 2) * v
    B[iW, n:dim - 1] = (2 * n + 1) * (beta / 2) * v
    B[iW, iW] = 2 * n * beta - beta ** 2 * float(np.sum((x ** 2 / sig + z) / sig ** 2))
    return (-1 / (2 * z)) * B


def scalar_closed_form(c: CanonicalMetric) -> float:
    """Scalar curvature; strictly negative for every valid canonical metric."""
    n, p, x, sig, beta, z, iY, iZ, iW = _unpack(c)
    core = 2 * n ** 2 + n + 1
    return float(-(core + beta * np.sum((z + x ** 2 / sig) / sig ** 2)) / (2 * z))


# ---------------------------------------------------------------------------
# Einstein test, sectional curvature, complex structure

def is_einstein(c: CanonicalMetric, tol: float = 1e-9):
    """Einstein constant c_E with Ric = c_E S, or None.

    The constant is fit by least squares in the Frobenius inner product and
    accepted iff max|Ric - c_E S| <= tol * max|Ric|.  The metric is Einstein
    exactly when p * beta = 1, x = 0 and sigma = 1.
    """
    S = expand(c)
    ric = ricci_closed_form(c)
    const = float(np.sum(ric * S) / np.sum(S * S))
    if float(np.max(np.abs(ric - const * S))) > tol * float(np.max(np.abs(ric))):
        return None
    return const


def sectional_curvature(c: CanonicalMetric, u: np.ndarray, w: np.ndarray,
                        data: CurvatureData | None = None, tol: float = 1e-12) -> float:
    """K(u, w) = g(R(u,w)w, u) / (g(u,u) g(w,w) - g(u,w)^2)."""
    S = expand(c)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if u.shape != (2 * c.n,) or w.shape != (2 * c.n,):
        raise DimensionError(f"plane vectors must have length {2 * c.n}")
    guu = float(u @ S @ u)
    gww = float(w @ S @ w)
    guw = float(u @ S @ w)
    gram = guu * gww - guw ** 2
    if gram <= tol * max(1.0, guu * gww):
        raise DomainError("vectors do not span a 2-plane")
    if data is None:
        data = curvature_closed_form(c)
    op = np.einsum("i,j,ijab->ab", u, w, data.operators)
    return float(u @ S @ (op @ w)) / gram


def complex_structure(c: CanonicalMetric, tol: float = 1e-9) -> np.ndarray:
    """The g-orthogonal complex structure of an Einstein canonical metric.

    Maps the unit X-direction to the unit W-direction and each unit Y_i to the
    unit Z_i; satisfies J^2 = -I and J^T S J = S.  Only defined for Einstein
    metrics (p*beta = 1, x = 0, sigma = 1), where K(u, Ju) is constant.
    """
    if is_einstein(c, tol=tol) is None:
        raise DomainError("complex structure is only provided for Einstein metrics")
    n = c.n
    dim = 2 * n
    J = np.zeros((dim, dim))
    # unit directions are X/sqrt(p) and W*sqrt(p) (beta = 1/p), so J X = p W, J W = -X/p;
    # the Heisenberg pairing J Y_i = -Z_i is forced by the Kaehler identity R(Ju,Jv) = R(u,v)
    J[dim - 1, 0] = c.p
    J[0, dim - 1] = -1.0 / c.p
    for i in range(1, n):
        J[n - 1 + i, i] = -1.0
        J[i, n - 1 + i] = 1.0
    return J


# ---------------------------------------------------------------------------
# cross-validation

def oracle_comparison(c: CanonicalMetric, alg=None) -> dict:
    """Max-norm residuals of every closed form against the structure-constant oracle.

    Residuals are normalized by max(1, max|oracle value|); used by tests and
    the self-test command.
    """
    alg = alg if alg is not None else build_chn(c.n)
    S = expand(c)
    gamma_oracle = koszul_connection(alg, S)
    oracle = curvature_oracle(alg, S)

    def rel(a, b):
        return float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(b))))

    closed = curvature_closed_form(c)
    wedge_ops = wedge_to_operators(curvature_wedge(c), S)
    return {
        "connection": rel(closed_form_connection(c), gamma_oracle),
        "operators": rel(closed.operators, oracle.operators),
        "wedge": rel(wedge_ops, oracle.operators),
        "ricci": rel(ricci_closed_form(c), oracle.ricci),
        "scalar": abs(scalar_closed_form(c) - oracle.scalar) / max(1.0, abs(oracle.scalar)),
    }


def curvature_of_metric(S: np.ndarray, tol: float = 1e-9):
    """Canonicalize an arbitrary metric and return (canonical, frame change, data)."""
    c, frame = canonicalize(np.asarray(S, dtype=float), tol=tol)
    return c, frame, curvature_closed_form(c)
