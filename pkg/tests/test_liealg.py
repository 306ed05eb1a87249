"""Structure constants, brackets, and the Jacobi gate."""

import numpy as np
import pytest

from solvgeo import liealg
from solvgeo.errors import DimensionError


def basis(n):
    return np.eye(2 * n)


def test_defining_brackets_n2():
    alg = liealg.build_chn(2)
    X, Y1, Z1, W = basis(2)
    assert np.array_equal(liealg.bracket(alg, X, W), W)
    assert np.array_equal(liealg.bracket(alg, Z1, Y1), W)
    assert np.array_equal(liealg.bracket(alg, X, Y1), 0.5 * Y1)
    assert np.array_equal(liealg.bracket(alg, X, Z1), 0.5 * Z1)


def test_off_diagonal_heisenberg_bracket_vanishes():
    alg = liealg.build_chn(3)
    e = basis(3)
    Y1, Z2 = e[1], e[4]
    assert np.array_equal(liealg.bracket(alg, Z2, Y1), np.zeros(6))


def test_bracket_bilinear_and_antisymmetric():
    alg = liealg.build_chn(2)
    X, Y1, Z1, W = basis(2)
    assert np.allclose(liealg.bracket(alg, X + Z1, Y1), 0.5 * Y1 + W)
    rng = np.random.default_rng(0)
    for _ in range(10):
        u = rng.standard_normal(4)
        w = rng.standard_normal(4)
        assert np.allclose(liealg.bracket(alg, u, u), 0.0)
        assert np.allclose(liealg.bracket(alg, u, w), -liealg.bracket(alg, w, u))


def test_w_spans_center_of_derived_algebra():
    # W is central in the Heisenberg part; the full algebra moves it by [X, W] = W
    for n in (2, 3, 4):
        alg = liealg.build_chn(n)
        e = basis(n)
        W = e[-1]
        for i in range(1, 2 * n):
            assert np.array_equal(liealg.bracket(alg, e[i], W), np.zeros(2 * n))
        assert np.array_equal(liealg.bracket(alg, e[0], W), W)


def test_jacobi_exact_for_all_small_n():
    for n in range(2, 7):
        assert liealg.validate_jacobi(liealg.build_chn(n))
        assert liealg.jacobi_residual(liealg.build_chn(n)) == 0.0


def test_broken_antisymmetry_fails_jacobi():
    c = np.array(liealg.build_chn(2).structure)
    c[0, 1, 1] = -0.5  # flip [X, Y1] only in one slot
    assert not liealg.validate_jacobi(c)


def test_derived_algebra_is_heisenberg_part():
    for n in (2, 3, 5):
        alg = liealg.build_chn(n)
        span = liealg.derived_algebra(alg)
        assert span.shape == (2 * n, 2 * n - 1)
        assert np.max(np.abs(span[0])) < 1e-12


def test_adjoint_matches_bracket():
    alg = liealg.build_chn(3)
    rng = np.random.default_rng(1)
    u = rng.standard_normal(6)
    ad = liealg.adjoint(alg, u)
    for j in range(6):
        assert np.allclose(ad[:, j], liealg.bracket(alg, u, basis(3)[j]))


def test_dimension_errors():
    with pytest.raises(DimensionError):
        liealg.build_chn(1)
    alg = liealg.build_chn(2)
    with pytest.raises(DimensionError):
        liealg.bracket(alg, np.ones(3), np.ones(4))


def test_structure_tensor_is_frozen():
    alg = liealg.build_chn(2)
    with pytest.raises(ValueError):
        alg.structure[0, 0, 0] = 1.0
