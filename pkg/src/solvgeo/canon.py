"""Canonical form of positive-definite inner products under the automorphism group.

Every inner product on the algebra is congruent, via an explicit automorphism,
to exactly one block matrix

    S(p, x, sigma, beta) = [[p,   x^T,   0,     0   ],
                            [x,   sigma, 0,     0   ],
                            [0,   0,     sigma, 0   ],
                            [0,   0,     0,     beta]],

with p, beta > 0, x_i >= 0, sigma = diag(sigma_1 >= ... >= sigma_{n-2} >= 1, 1).
The reduction pipeline is constructive:

  1. generalized translation killing the (Y,Z)-W coupling,
  2. Williamson diagonalization of the inner (Y,Z) block (descending),
  3. simple translation killing the X-W coupling,
  4. diagonal automorphism normalizing the smallest symplectic eigenvalue to 1,
  5. phase rotation making the X-(Y,Z) coupling real and nonnegative,
  6. one extra block-orthogonal rotation inside each run of equal sigma values
     so that only the first x-entry of a run is nonzero (this makes the
     representative unique when symplectic eigenvalues collide).

The composed automorphism is returned as a certificate: F^T S F = expand(c).
"""

from dataclasses import dataclass

import numpy as np

from .autgrp import (Automorphism, act_on_metric, compose, diagonal_automorphism,
                     random_automorphism, symplectic_automorphism,
                     translation_automorphism)
from .errors import ConditioningError, DimensionError, DomainError
from .sympl import phase_rotation, williamson

#: Relative tolerance for grouping equal sigma values (tie normalization).
TIE_TOL = 1e-8


@dataclass(frozen=True)
class CanonicalMetric:
    """Canonical parameters (p, x, sigma, beta); sigma omits the implicit trailing 1."""

    n: int
    p: float
    x: np.ndarray
    sigma: np.ndarray
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "x", np.atleast_1d(np.asarray(self.x, dtype=float)))
        object.__setattr__(self, "sigma", np.atleast_1d(np.asarray(self.sigma, dtype=float)))
        if self.n < 2:
            raise DimensionError(f"complex dimension parameter must be >= 2, got {self.n}")
        if self.x.shape != (self.n - 1,):
            raise DimensionError(f"x must have length n-1 = {self.n - 1}, got {self.x.shape}")
        if self.sigma.shape != (self.n - 2,):
            raise DimensionError(
                f"sigma must have length n-2 = {self.n - 2} (trailing 1 implicit), got {self.sigma.shape}"
            )
        if self.p <= 0 or self.beta <= 0:
            raise DomainError("p and beta must be positive")
        if np.any(self.x < 0):
            raise DomainError("x entries must be nonnegative")
        full = self.sigma_full
        if np.any(np.diff(full) > 0) or full[-1] < 1.0:
            raise DomainError("sigma must be sorted descending with all values >= 1")
        if self.z <= 0:
            raise DomainError(f"Schur complement z = p - sum(x_i^2/sigma_i) = {self.z} must be positive")

    @property
    def sigma_full(self) -> np.ndarray:
        """sigma including the implicit trailing 1 (length n-1)."""
        return np.concatenate([self.sigma, [1.0]])

    @property
    def z(self) -> float:
        return float(self.p - np.sum(self.x ** 2 / self.sigma_full))

    def parameter_vector(self) -> np.ndarray:
        return np.concatenate([[self.p], self.x, self.sigma, [self.beta]])


def expand(c: CanonicalMetric) -> np.ndarray:
    """The 2n x 2n matrix S(p, x, sigma, beta)."""
    n = c.n
    S = np.zeros((2 * n, 2 * n))
    sig = c.sigma_full
    S[0, 0] = c.p
    S[0, 1:n] = c.x
    S[1:n, 0] = c.x
    S[1:n, 1:n] = np.diag(sig)
    S[n:2 * n - 1, n:2 * n - 1] = np.diag(sig)
    S[-1, -1] = c.beta
    return S


def check_metric(S: np.ndarray, tol: float = 1e-12) -> int:
    """Validate a metric matrix and return n; symmetric positive definite required."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise DimensionError(f"metric must be a square matrix, got shape {S.shape}")
    if S.shape[0] % 2 != 0 or S.shape[0] < 4:
        raise DimensionError(f"metric dimension must be even and >= 4, got {S.shape[0]}")
    scale = float(np.max(np.abs(S)))
    if scale == 0.0:
        raise DomainError("metric is zero")
    if float(np.max(np.abs(S - S.T))) > tol * scale:
        raise DomainError("metric must be symmetric")
    if np.linalg.eigvalsh(0.5 * (S + S.T))[0] <= 0.0:
        raise DomainError("metric must be positive definite")
    return S.shape[0] // 2


def _tie_groups(values: np.ndarray, rel_tol: float = TIE_TOL) -> list[list[int]]:
    """Split indices of a descending vector into maximal runs of equal values."""
    groups = [[0]]
    for i in range(1, len(values)):
        anchor = values[groups[-1][0]]
        if abs(values[i] - anchor) <= rel_tol * max(1.0, abs(anchor)):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _run_rotation(x_run: np.ndarray) -> np.ndarray:
    """Orthogonal Q with Q^T x_run = (||x_run||, 0, ..., 0)."""
    r = float(np.linalg.norm(x_run))
    k = len(x_run)
    if r == 0.0:
        return np.eye(k)
    q = np.linalg.qr(np.column_stack([x_run / r, np.eye(k)]))[0][:, :k]
    q[:, 0] = x_run / r  # qr may have flipped the sign; the completion stays orthonormal
    return q


def canonicalize(S: np.ndarray, tol: float = 1e-9) -> tuple[CanonicalMetric, Automorphism]:
    """Reduce a metric to canonical form; returns (c, F) with F^T S F = expand(c)."""
    S = np.asarray(S, dtype=float)
    n = check_metric(S)
    scale = float(np.max(np.abs(S)))
    k = 2 * (n - 1)

    # step 1: kill the (Y,Z)-W coupling
    beta1 = S[-1, -1]
    w = S[1:-1, -1]
    total = translation_automorphism(n, -w / beta1, 0.0)
    current = act_on_metric(total, S)

    # step 2: Williamson-diagonalize the inner block, descending
    inner = current[1:-1, 1:-1]
    dec = williamson(inner, order="descending", tol=tol)
    step = symplectic_automorphism(n, dec.M, tol=max(tol, 1e-7))
    current = act_on_metric(step, current)
    total = compose(total, step)

    # step 3: kill the X-W coupling
    step = translation_automorphism(n, np.zeros(k), -current[0, -1] / beta1)
    current = act_on_metric(step, current)
    total = compose(total, step)

    # step 4: normalize the smallest symplectic eigenvalue to 1
    step = diagonal_automorphism(n, 1.0 / np.sqrt(dec.d[-1]))
    current = act_on_metric(step, current)
    total = compose(total, step)

    # step 5: rotate each complex coupling entry onto the nonnegative real axis
    coup_x = current[0, 1:n]
    coup_y = current[0, n:2 * n - 1]
    theta = np.arctan2(coup_y, coup_x)
    step = symplectic_automorphism(n, phase_rotation(theta))
    current = act_on_metric(step, current)
    total = compose(total, step)

    # step 6: inside each run of equal sigma values, rotate x onto its first slot
    sigma_full = np.diag(current[1:n, 1:n]).copy()
    groups = _tie_groups(sigma_full)
    x = current[0, 1:n].copy()
    rot = np.eye(n - 1)
    needs_rotation = False
    for group in groups:
        if len(group) > 1:
            idx = np.array(group)
            rot[np.ix_(idx, idx)] = _run_rotation(x[idx])
            needs_rotation = True
    if needs_rotation:
        block = np.block([[rot, np.zeros((n - 1, n - 1))], [np.zeros((n - 1, n - 1)), rot]])
        step = symplectic_automorphism(n, block)
        current = act_on_metric(step, current)
        total = compose(total, step)
        x = current[0, 1:n].copy()
        sigma_full = np.diag(current[1:n, 1:n]).copy()

    # read off the parameters, snapping away congruence dust
    for group in groups:
        sigma_full[group] = float(np.mean(sigma_full[group]))
        if len(group) > 1:
            x[group[1:]] = 0.0
    sigma_full[groups[-1]] = np.maximum(sigma_full[groups[-1]], 1.0)
    canonical_scale = float(np.max(np.abs(current)))
    x[np.abs(x) <= tol * canonical_scale] = 0.0
    if np.any(x < 0):
        raise ConditioningError("phase rotation left a negative coupling entry")

    p = float(current[0, 0])
    beta = float(current[-1, -1])
    z = p - float(np.sum(x ** 2 / sigma_full))
    if z <= tol * max(p, 1.0):
        raise ConditioningError(f"degenerate Schur complement z = {z:.3e}")
    c = CanonicalMetric(n=n, p=p, x=x, sigma=sigma_full[: n - 2], beta=beta)

    residual = float(np.max(np.abs(act_on_metric(total, S) - expand(c))))
    if residual > tol * scale:
        raise ConditioningError(f"canonicalization residual {residual:.3e} exceeds tolerance")
    return c, total


def is_isometric(S1: np.ndarray, S2: np.ndarray, tol: float = 1e-7) -> bool:
    """Two metrics are isometric iff their canonical parameter tuples agree."""
    S1 = np.asarray(S1, dtype=float)
    S2 = np.asarray(S2, dtype=float)
    if S1.shape != S2.shape:
        raise DimensionError(f"metrics have different shapes {S1.shape} and {S2.shape}")
    c1, _ = canonicalize(S1)
    c2, _ = canonicalize(S2)
    return float(np.max(np.abs(c1.parameter_vector() - c2.parameter_vector()))) <= tol


def random_canonical(n: int, seed=None, tie_prob: float = 0.0) -> CanonicalMetric:
    """Seeded random valid canonical tuple (p built from z > 0 so it always validates).

    With ``tie_prob`` > 0, runs of exactly equal sigma values are injected and
    the x-subvector of each run is normalized onto its first slot, so the tuple
    obeys the tie rule and round-trips through canonicalize.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    sigma_full = np.sort(np.exp(rng.uniform(0.0, 1.5, n - 1)))[::-1]
    sigma_full[-1] = 1.0
    if tie_prob > 0.0:
        for i in range(n - 2):
            if rng.uniform() < tie_prob:
                sigma_full[i] = sigma_full[i + 1]
    x = np.abs(rng.uniform(0.0, 1.0, n - 1))
    for group in _tie_groups(sigma_full, rel_tol=0.0):
        if len(group) > 1:
            r = float(np.linalg.norm(x[group]))
            x[group] = 0.0
            x[group[0]] = r
    z = float(np.exp(rng.uniform(-1.0, 1.0)))
    p = z + float(np.sum(x ** 2 / sigma_full))
    beta = float(np.exp(rng.uniform(-1.0, 1.0)))
    return CanonicalMetric(n=n, p=p, x=x, sigma=sigma_full[: n - 2], beta=beta)


def random_metric(n: int, seed=None) -> tuple[np.ndarray, CanonicalMetric, Automorphism]:
    """Random metric F^T S F from a seeded canonical tuple and automorphism."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    c = random_canonical(n, rng)
    F = random_automorphism(n, rng)
    return act_on_metric(F, expand(c)), c, F


__all__ = [
    "CanonicalMetric", "expand", "check_metric", "canonicalize", "is_isometric",
    "random_canonical", "random_metric", "TIE_TOL",
]
