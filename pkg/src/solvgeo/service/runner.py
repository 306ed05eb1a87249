"""Job runner shared by the FastAPI endpoints and the CLI.

Every command returns a Report; mathematical failures become status="error"
reports (they never raise), so batch runs always complete and preserve order.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pydantic import ValidationError

from .. import canon, curvature, soliton
from ..autgrp import act_on_metric, random_automorphism
from ..errors import ConditioningError, DimensionError, DomainError
from ..liealg import build_chn
from .models import (AutomorphismBlocks, CanonicalParams, EinsteinInfo, ErrorInfo,
                     IsometricInfo, JobSpec, MetricPayload, NilsolitonInfo, Report,
                     SelfTestInfo, SolitonInfo)

DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "SOLVGEO_TOL"


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    return float(raw) if raw else DEFAULT_TOL


def _echo(payload: MetricPayload | None) -> dict | None:
    return None if payload is None else payload.model_dump(exclude_none=True)


def _canonical_of(payload: MetricPayload, tol: float):
    """(canonical, frame-change automorphism or None, residual or None)."""
    c = payload.canonical()
    if c is not None:
        return c, None, None
    S = payload.matrix()
    c, frame = canon.canonicalize(S, tol=tol)
    residual = float(np.max(np.abs(act_on_metric(frame, S) - canon.expand(c))))
    return c, frame, residual


def _einstein_info(c, tol: float) -> EinsteinInfo:
    S = canon.expand(c)
    ric = curvature.ricci_closed_form(c)
    constant = curvature.is_einstein(c, tol=tol)
    fit = float(np.sum(ric * S) / np.sum(S * S))
    residual = float(np.max(np.abs(ric - fit * S)) / np.max(np.abs(ric)))
    return EinsteinInfo(einstein=constant is not None, constant=constant, residual=residual)


def _require_input(spec: JobSpec) -> MetricPayload:
    if spec.input is None:
        raise DomainError(f"command {spec.command!r} requires an input metric")
    return spec.input


def _run_canonicalize(spec: JobSpec, tol: float) -> Report:
    payload = _require_input(spec)
    S = payload.matrix()
    c, frame = canon.canonicalize(S, tol=tol)
    residual = float(np.max(np.abs(act_on_metric(frame, S) - canon.expand(c))))
    return Report(command=spec.command, status="ok", tol=tol, n=c.n, input=_echo(payload),
                  canonical=CanonicalParams.from_core(c),
                  automorphism=AutomorphismBlocks.from_core(frame),
                  S=canon.expand(c).tolist(), residual=residual)


def _run_curvature(spec: JobSpec, tol: float) -> Report:
    payload = _require_input(spec)
    c, frame, _ = _canonical_of(payload, tol)
    comparison = curvature.oracle_comparison(c)
    return Report(command=spec.command, status="ok", tol=tol, n=c.n, input=_echo(payload),
                  canonical=CanonicalParams.from_core(c),
                  automorphism=None if frame is None else AutomorphismBlocks.from_core(frame),
                  ricci=curvature.ricci_closed_form(c).tolist(),
                  scalar=curvature.scalar_closed_form(c),
                  einstein=_einstein_info(c, tol),
                  residual=max(comparison.values()))


def _run_ricci(spec: JobSpec, tol: float) -> Report:
    payload = _require_input(spec)
    c, frame, _ = _canonical_of(payload, tol)
    oracle = curvature.curvature_oracle(build_chn(c.n), canon.expand(c))
    ric = curvature.ricci_closed_form(c)
    residual = float(np.max(np.abs(ric - oracle.ricci)) / max(1.0, np.max(np.abs(oracle.ricci))))
    return Report(command=spec.command, status="ok", tol=tol, n=c.n, input=_echo(payload),
                  canonical=CanonicalParams.from_core(c),
                  automorphism=None if frame is None else AutomorphismBlocks.from_core(frame),
                  ricci=ric.tolist(), scalar=curvature.scalar_closed_form(c),
                  residual=residual)


def _run_einstein(spec: JobSpec, tol: float) -> Report:
    payload = _require_input(spec)
    c, frame, _ = _canonical_of(payload, tol)
    return Report(command=spec.command, status="ok", tol=tol, n=c.n, input=_echo(payload),
                  canonical=CanonicalParams.from_core(c),
                  automorphism=None if frame is None else AutomorphismBlocks.from_core(frame),
                  einstein=_einstein_info(c, tol),
                  scalar=curvature.scalar_closed_form(c))


def _run_isometric(spec: JobSpec, tol: float) -> Report:
    if spec.first is None or spec.second is None:
        raise DomainError("command 'isometric' requires 'first' and 'second' metrics")
    c1, _ = canon.canonicalize(spec.first.matrix(), tol=max(tol, 1e-9))
    c2, _ = canon.canonicalize(spec.second.matrix(), tol=max(tol, 1e-9))
    deviation = float(np.max(np.abs(c1.parameter_vector() - c2.parameter_vector())))
    compare_tol = spec.tol if spec.tol is not None else 1e-7
    info = IsometricInfo(isometric=deviation <= compare_tol, max_deviation=deviation,
                         first=CanonicalParams.from_core(c1),
                         second=CanonicalParams.from_core(c2))
    return Report(command=spec.command, status="ok", tol=compare_tol, n=c1.n,
                  input={"first": _echo(spec.first), "second": _echo(spec.second)},
                  isometric=info)


def _run_soliton_check(spec: JobSpec, tol: float) -> Report:
    payload = _require_input(spec)
    c, frame, _ = _canonical_of(payload, tol)
    cert = soliton.ricci_soliton_check(c, tol=tol)
    if cert is None:
        info = SolitonInfo(soliton=False)
    else:
        info = SolitonInfo(soliton=True, constant=cert.constant,
                           derivation=cert.derivation.tolist(), residual=cert.residual)
    return Report(command=spec.command, status="ok", tol=tol, n=c.n, input=_echo(payload),
                  canonical=CanonicalParams.from_core(c),
                  soliton=info)


def _run_extend_nilsoliton(spec: JobSpec, tol: float) -> Report:
    if spec.n is None or spec.beta is None:
        raise DomainError("command 'extend-nilsoliton' requires 'n' and 'beta'")
    data = soliton.heisenberg_nilsoliton(spec.n, spec.beta)
    oracle_residual = float(np.max(np.abs(
        data.ricci_nil - soliton.heisenberg_ricci_operator(spec.n, spec.beta))))
    extended = soliton.extend_nilsoliton(data)
    info = NilsolitonInfo(n=data.n, beta=data.beta, c=data.c, D1=data.D1.tolist(),
                          ricci_nil=data.ricci_nil.tolist(), oracle_residual=oracle_residual)
    return Report(command=spec.command, status="ok", tol=tol, n=spec.n,
                  nilsoliton=info, canonical=CanonicalParams.from_core(extended),
                  einstein=_einstein_info(extended, tol))


def _run_random_metric(spec: JobSpec, tol: float) -> Report:
    if spec.n is None:
        raise DomainError("command 'random-metric' requires 'n'")
    rng = np.random.default_rng(spec.seed)
    c = canon.random_canonical(spec.n, rng)
    F = random_automorphism(spec.n, rng)
    S = act_on_metric(F, canon.expand(c))
    return Report(command=spec.command, status="ok", tol=tol, n=spec.n, seed=spec.seed,
                  S=S.tolist(), canonical=CanonicalParams.from_core(c),
                  automorphism=AutomorphismBlocks.from_core(F))


def _run_self_test(spec: JobSpec, tol: float) -> Report:
    ns = [2, 3]
    samples = 10
    worst: dict[str, float] = {}
    rng = np.random.default_rng(0 if spec.seed is None else spec.seed)
    for n in ns:
        for _ in range(samples):
            c = canon.random_canonical(n, rng)
            for key, value in curvature.oracle_comparison(c).items():
                worst[key] = max(worst.get(key, 0.0), value)
    max_residual = max(worst.values())
    info = SelfTestInfo(ns=ns, samples=samples, residuals=worst,
                        max_residual=max_residual, passed=max_residual <= tol)
    return Report(command=spec.command, status="ok" if info.passed else "error", tol=tol,
                  self_test=info,
                  error=None if info.passed else ErrorInfo(
                      category="conditioning",
                      message=f"self-test residual {max_residual:.3e} exceeds tolerance"))


_HANDLERS = {
    "canonicalize": _run_canonicalize,
    "curvature": _run_curvature,
    "ricci": _run_ricci,
    "einstein": _run_einstein,
    "isometric": _run_isometric,
    "soliton-check": _run_soliton_check,
    "extend-nilsoliton": _run_extend_nilsoliton,
    "random-metric": _run_random_metric,
    "self-test": _run_self_test,
}


def run_job(spec: JobSpec) -> Report:
    tol = spec.tol if spec.tol is not None else default_tolerance()
    try:
        return _HANDLERS[spec.command](spec, tol)
    except (DimensionError, DomainError, ValidationError, ValueError) as exc:
        return Report(command=spec.command, status="error", tol=tol, n=spec.n,
                      seed=spec.seed, error=ErrorInfo(category="validation", message=str(exc)))
    except ConditioningError as exc:
        return Report(command=spec.command, status="error", tol=tol, n=spec.n,
                      seed=spec.seed, error=ErrorInfo(category="conditioning", message=str(exc)))


def run_batch(specs: list[JobSpec], jobs: int = 1) -> list[Report]:
    """Independent jobs; order of reports matches order of specs."""
    if jobs <= 1 or len(specs) <= 1:
        return [run_job(spec) for spec in specs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_job, specs))
