"""Symplectic predicates, Williamson normal form, phase rotations."""

import numpy as np
import pytest

from solvgeo import sympl
from solvgeo.errors import ConditioningError, DimensionError, DomainError


def random_spd(m, rng, eps=0.1):
    a = rng.standard_normal((2 * m, 2 * m))
    return a.T @ a + eps * np.eye(2 * m)


def williamson_residuals(S, dec):
    m = len(dec.d)
    J = sympl.symplectic_form(m)
    scale = np.max(np.abs(S))
    r_sympl = np.max(np.abs(dec.M.T @ J @ dec.M - J))
    r_diag = np.max(np.abs(dec.M.T @ S @ dec.M - np.diag(np.concatenate([dec.d, dec.d]))))
    return r_sympl / scale, r_diag / scale


def test_is_symplectic_basics():
    assert sympl.is_symplectic(np.eye(2))
    assert sympl.is_symplectic(np.diag([2.0, 0.5]))
    assert not sympl.is_symplectic(np.diag([2.0, 2.0]))
    with pytest.raises(DimensionError):
        sympl.is_symplectic(np.eye(3))


def test_phase_rotation():
    assert np.array_equal(sympl.phase_rotation(np.zeros(3)), np.eye(6))
    assert np.allclose(sympl.phase_rotation([np.pi / 2]), np.array([[0.0, -1.0], [1.0, 0.0]]))
    rng = np.random.default_rng(0)
    for m in (1, 2, 4):
        assert sympl.is_symplectic(sympl.phase_rotation(rng.uniform(0, 2 * np.pi, m)), 1e-12)


def test_williamson_identity_and_diagonal_cases():
    dec = sympl.williamson(np.eye(2))
    assert np.allclose(dec.d, [1.0])
    assert max(williamson_residuals(np.eye(2), dec)) < 1e-12

    S = np.diag([4.0, 1.0])
    dec = sympl.williamson(S)
    assert np.allclose(dec.d, [2.0], atol=1e-12)
    assert max(williamson_residuals(S, dec)) < 1e-12

    S = np.array([[2.0, 1.0], [1.0, 2.0]])
    dec = sympl.williamson(S)
    assert abs(dec.d[0] - np.sqrt(3.0)) < 1e-12


def test_williamson_random_contract():
    rng = np.random.default_rng(7)
    for m in (1, 2, 3, 4):
        for _ in range(50):
            S = random_spd(m, rng)
            dec = sympl.williamson(S)
            assert max(williamson_residuals(S, dec)) < 1e-9
            assert np.all(np.diff(dec.d) <= 1e-12) and dec.d[-1] > 0
            asc = sympl.williamson(S, order="ascending")
            assert np.allclose(asc.d, dec.d[::-1])
            assert max(williamson_residuals(S, asc)) < 1e-9


def test_symplectic_eigenvalues_are_orbit_invariants():
    rng = np.random.default_rng(11)
    for m in (1, 2, 3):
        for _ in range(20):
            S = random_spd(m, rng)
            F = sympl.random_symplectic(m, rng)
            d1 = sympl.williamson(S).d
            d2 = sympl.williamson(F.T @ S @ F).d
            assert np.max(np.abs(d1 - d2)) < 1e-9 * max(1.0, np.max(d1))


def test_m1_eigenvalue_is_sqrt_det():
    rng = np.random.default_rng(13)
    for _ in range(50):
        S = random_spd(1, rng)
        d = sympl.williamson(S).d[0]
        assert abs(d - np.sqrt(np.linalg.det(S))) < 1e-12 * max(1.0, d)


def test_composition_closure():
    rng = np.random.default_rng(17)
    for m in (1, 3):
        F = sympl.random_symplectic(m, rng)
        G = sympl.random_symplectic(m, rng)
        assert sympl.is_symplectic(F @ G, 1e-9)


def test_williamson_input_validation():
    with pytest.raises(DimensionError):
        sympl.williamson(np.eye(3))
    with pytest.raises(DomainError):
        sympl.williamson(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        sympl.williamson(np.diag([1.0, -1.0]))
    with pytest.raises(ConditioningError):
        sympl.williamson(np.diag([1e16, 1.0]))
    with pytest.raises(ValueError):
        sympl.williamson(np.eye(2), order="sideways")


def test_diagonal_symplectic():
    t = np.array([2.0, 0.5])
    assert sympl.is_symplectic(sympl.diagonal_symplectic(t), 1e-12)
    with pytest.raises(DomainError):
        sympl.diagonal_symplectic(np.array([0.0, 1.0]))
