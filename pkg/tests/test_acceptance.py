"""Acceptance suite: every criterion at its stated tolerance, one line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines.
"""

import time

import numpy as np

from solvgeo import autgrp, canon, curvature, liealg, soliton, sympl

RNG_BASE = 20240801


def _report(num: int, name: str, passed: bool, detail: str) -> None:
    print(f"ACCEPTANCE {num} ({name}): {'PASS' if passed else 'FAIL'} [{detail}]")
    assert passed, f"acceptance criterion {num} failed: {detail}"


def test_acceptance_1_closed_forms_vs_oracle():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4, 5):
        alg = liealg.build_chn(n)
        rng = np.random.default_rng(RNG_BASE + n)
        for trial in range(100):
            c = canon.random_canonical(n, rng, tie_prob=0.3 if trial % 5 == 0 else 0.0)
            worst = max(worst, max(curvature.oracle_comparison(c, alg).values()))
    elapsed = time.perf_counter() - start
    _report(1, "closed forms vs oracle", worst <= 1e-9 and elapsed < 60.0,
            f"max relative residual {worst:.3e} over 400 metrics, {elapsed:.1f}s")


def test_acceptance_2_classification_round_trip():
    start = time.perf_counter()
    worst_dev = 0.0
    worst_bracket = 0.0
    for n in (2, 3, 4, 5):
        alg = liealg.build_chn(n)
        c_struct = alg.structure
        rng = np.random.default_rng(RNG_BASE + 10 * n)
        for trial in range(500):
            c = canon.random_canonical(n, rng, tie_prob=0.25 if trial % 10 == 0 else 0.0)
            F = autgrp.random_automorphism(n, rng)
            S = autgrp.act_on_metric(F, canon.expand(c))
            recovered, cert = canon.canonicalize(S)
            dev = np.max(np.abs(recovered.parameter_vector() - c.parameter_vector()))
            worst_dev = max(worst_dev, dev / max(1.0, np.max(np.abs(c.parameter_vector()))))
            mat = cert.matrix
            lhs = np.einsum("ai,bj,abk->ijk", mat, mat, c_struct)
            rhs = np.einsum("ijm,km->ijk", c_struct, mat)
            worst_bracket = max(worst_bracket, float(np.max(np.abs(lhs - rhs))))
    elapsed = time.perf_counter() - start
    _report(2, "classification round-trip",
            worst_dev <= 1e-8 and worst_bracket <= 1e-9 and elapsed < 120.0,
            f"max tuple deviation {worst_dev:.3e}, max bracket residual {worst_bracket:.3e}, "
            f"2000 round trips, {elapsed:.1f}s")


def test_acceptance_3_williamson_contract():
    worst_contract = 0.0
    worst_invariance = 0.0
    worst_sqrtdet = 0.0
    for m in (1, 2, 3, 4):
        rng = np.random.default_rng(RNG_BASE + 100 * m)
        J = sympl.symplectic_form(m)
        for _ in range(200):
            a = rng.standard_normal((2 * m, 2 * m))
            S = a.T @ a + 0.05 * np.eye(2 * m)
            scale = max(1.0, float(np.max(np.abs(S))))
            dec = sympl.williamson(S)
            diag = np.diag(np.concatenate([dec.d, dec.d]))
            worst_contract = max(
                worst_contract,
                float(np.max(np.abs(dec.M.T @ J @ dec.M - J))) / scale,
                float(np.max(np.abs(dec.M.T @ S @ dec.M - diag))) / scale)
            F = sympl.random_symplectic(m, rng)
            d_conj = sympl.williamson(F.T @ S @ F).d
            worst_invariance = max(worst_invariance,
                                   float(np.max(np.abs(d_conj - dec.d))) / max(1.0, dec.d[0]))
            if m == 1:
                worst_sqrtdet = max(worst_sqrtdet,
                                    abs(dec.d[0] - np.sqrt(np.linalg.det(S)))
                                    / max(1.0, dec.d[0]))
    _report(3, "Williamson contract",
            worst_contract <= 1e-9 and worst_invariance <= 1e-9 and worst_sqrtdet <= 1e-12,
            f"residuals: contract {worst_contract:.3e}, conjugation invariance "
            f"{worst_invariance:.3e}, m=1 sqrt-det {worst_sqrtdet:.3e}")


def test_acceptance_4_scalar_curvature_negative():
    worst_margin = np.inf
    core_ok = True
    for n in (2, 3, 4, 5):
        rng = np.random.default_rng(RNG_BASE + 1000 * n)
        core = 2 * n ** 2 + n + 1
        for _ in range(1000):
            c = canon.random_canonical(n, rng)
            tau = curvature.scalar_closed_form(c)
            worst_margin = min(worst_margin, -tau)
            core_ok = core_ok and (tau * (-2 * c.z) >= core - 1e-9)
    _report(4, "scalar curvature negativity", worst_margin > 1e-12 and core_ok,
            f"4000 random metrics, min(-tau) = {worst_margin:.3e}, core bound holds: {core_ok}")


def test_acceptance_5_einstein_characterization():
    grid = 10.0 ** np.linspace(-1.0, 1.0, 101)
    betas = 1.0 / grid
    points = 0
    mismatches = 0
    for i, p in enumerate(grid):
        for j, beta in enumerate(betas):
            c = canon.CanonicalMetric(n=2, p=float(p), x=[0.0], sigma=[], beta=float(beta))
            parameter_test = abs(p * beta - 1.0) <= 1e-12
            matrix_test = curvature.is_einstein(c, tol=1e-9) is not None
            points += 1
            mismatches += parameter_test != matrix_test
            assert parameter_test == (i == j)
    # perturbed x (n=2) and sigma (n=3) along the p*beta = 1 diagonal: never Einstein
    for p in grid:
        c = canon.CanonicalMetric(n=2, p=float(p), x=[0.05], sigma=[], beta=float(1.0 / p))
        points += 1
        mismatches += curvature.is_einstein(c, tol=1e-9) is not None
        c = canon.CanonicalMetric(n=3, p=float(p), x=[0.0, 0.0], sigma=[1.2],
                                  beta=float(1.0 / p))
        points += 1
        mismatches += curvature.is_einstein(c, tol=1e-9) is not None
        c = canon.CanonicalMetric(n=3, p=float(p), x=[0.0, 0.0], sigma=[1.0],
                                  beta=float(1.0 / p))
        points += 1
        mismatches += curvature.is_einstein(c, tol=1e-9) is None
    reference = canon.CanonicalMetric(n=2, p=1.0, x=[0.0], sigma=[], beta=1.0)
    c_e = curvature.is_einstein(reference)
    tau = curvature.scalar_closed_form(reference)
    values_ok = abs(c_e + 1.5) <= 1e-10 and abs(tau + 6.0) <= 1e-10
    _report(5, "Einstein characterization", mismatches == 0 and values_ok and points >= 10 ** 4,
            f"{points} grid points, {mismatches} matrix/parameter mismatches, "
            f"c_E = {c_e}, tau = {tau}")


def test_acceptance_6_curvature_symmetries():
    worst = 0.0
    for n in (2, 3, 4, 5):
        alg = liealg.build_chn(n)
        rng = np.random.default_rng(RNG_BASE + 11 * n)
        for _ in range(25):
            c = canon.random_canonical(n, rng)
            S = canon.expand(c)
            for data in (curvature.curvature_oracle(alg, S),
                         curvature.curvature_closed_form(c)):
                scale = max(1.0, float(np.max(np.abs(data.operators))))
                worst = max(worst, max(curvature.symmetry_residuals(data, S).values()) / scale)
    _report(6, "curvature symmetry suite", worst <= 1e-9,
            f"max relative residual {worst:.3e} (antisymmetry, skew-adjointness, "
            f"pair symmetry, first Bianchi)")


def test_acceptance_7_soliton_pipeline():
    worst_nil = 0.0
    worst_pbeta = 0.0
    einstein_ok = True
    for n in (2, 3, 4, 5):
        for beta in (0.25, 1.0, 3.0):
            data = soliton.heisenberg_nilsoliton(n, beta)
            worst_nil = max(worst_nil, float(np.max(np.abs(
                data.ricci_nil - soliton.heisenberg_ricci_operator(n, beta)))))
            extended = soliton.extend_nilsoliton(data)
            worst_pbeta = max(worst_pbeta, abs(extended.p * extended.beta - 1.0))
            einstein_ok = einstein_ok and curvature.is_einstein(extended) is not None
            expected = np.diag([1.0 / beta] + [1.0] * (2 * n - 2) + [beta])
            einstein_ok = einstein_ok and np.max(np.abs(canon.expand(extended) - expected)) <= 1e-12
    worst_trace = 0.0
    for n in (2, 3, 4, 5):
        alg = liealg.build_chn(n)
        rng = np.random.default_rng(RNG_BASE + 13 * n)
        for _ in range(50):
            c = canon.random_canonical(n, rng)
            ad_e = liealg.adjoint(alg, soliton.orthonormal_frame(c)[:, 0])
            value = float(np.trace(ad_e @ ad_e))
            worst_trace = max(worst_trace,
                              abs(value - (n + 1) / (2 * c.z)) / max(1.0, abs(value)))
    _report(7, "soliton pipeline",
            worst_nil <= 1e-10 and worst_pbeta <= 1e-12 and einstein_ok
            and worst_trace <= 1e-12,
            f"nilsoliton vs oracle {worst_nil:.3e}, p*beta deviation {worst_pbeta:.3e}, "
            f"tr(ad e)^2 identity {worst_trace:.3e}, Einstein extension: {einstein_ok}")


def test_acceptance_8_quarter_pinching():
    c = canon.CanonicalMetric(n=2, p=1.0, x=[0.0], sigma=[], beta=1.0)
    S = canon.expand(c)
    R = curvature.curvature_closed_form(c).operators
    J = curvature.complex_structure(c)
    rng = np.random.default_rng(RNG_BASE)
    samples = 10 ** 4

    def batch_k(U, W):
        ops = np.einsum("ki,kj,ijab->kab", U, W, R)
        num = np.einsum("ka,ab,kb->k", U, S, np.einsum("kab,kb->ka", ops, W))
        guu = np.einsum("ka,ab,kb->k", U, S, U)
        gww = np.einsum("ka,ab,kb->k", W, S, W)
        guw = np.einsum("ka,ab,kb->k", U, S, W)
        return num / (guu * gww - guw ** 2)

    U = rng.standard_normal((samples, 4))
    W = rng.standard_normal((samples, 4))
    k_general = batch_k(U, W)
    k_holomorphic = batch_k(U, U @ J.T)
    JU = U @ J.T
    coeff_u = np.einsum("ka,ab,kb->k", W, S, U) / np.einsum("ka,ab,kb->k", U, S, U)
    coeff_ju = np.einsum("ka,ab,kb->k", W, S, JU) / np.einsum("ka,ab,kb->k", JU, S, JU)
    W_real = W - coeff_u[:, None] * U - coeff_ju[:, None] * JU
    k_real = batch_k(U, W_real)

    constancy = float(np.max(k_holomorphic) - np.min(k_holomorphic))
    ratio = float(np.min(k_holomorphic) / np.max(k_real))
    in_range = bool(np.all(k_general <= np.max(k_real) + 1e-9)
                    and np.all(k_general >= np.min(k_holomorphic) - 1e-9))
    passed = abs(ratio - 4.0) <= 1e-6 and constancy <= 1e-9 and in_range
    _report(8, "quarter pinching", passed,
            f"K(u,Ju) constancy spread {constancy:.3e}, max/min ratio {ratio:.12f}, "
            f"{samples} random planes inside [-1/z, -1/(4z)]: {in_range}")
