"""Pydantic request/response models shared by the HTTP service and the CLI."""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..autgrp import Automorphism
from ..canon import CanonicalMetric, expand

Command = Literal[
    "canonicalize", "curvature", "ricci", "einstein", "isometric",
    "soliton-check", "extend-nilsoliton", "random-metric", "self-test",
]


class MetricPayload(BaseModel):
    """A metric, either as a full matrix under ``S`` or as canonical parameters.

    Canonical parameters use the keys n, p, x, sigma, beta; ``sigma`` omits the
    implicit trailing 1.  Matrices are row-major nested arrays.
    """

    model_config = ConfigDict(extra="forbid")

    n: Optional[int] = None
    S: Optional[list[list[float]]] = None
    p: Optional[float] = None
    x: Optional[list[float]] = None
    sigma: Optional[list[float]] = None
    beta: Optional[float] = None

    @model_validator(mode="after")
    def _one_of_matrix_or_params(self):
        if self.S is None and (self.p is None or self.beta is None):
            raise ValueError("metric payload needs either 'S' or the canonical keys 'p' and 'beta'")
        return self

    def matrix(self) -> np.ndarray:
        if self.S is not None:
            return np.asarray(self.S, dtype=float)
        return expand(self.canonical())

    def canonical(self) -> Optional[CanonicalMetric]:
        """The canonical tuple, if the payload was given in parameter form."""
        if self.S is not None:
            return None
        n = self.n
        if n is None:
            if self.x is not None:
                n = len(self.x) + 1
            elif self.sigma is not None:
                n = len(self.sigma) + 2
            else:
                raise ValueError("canonical payload needs 'n' when 'x' and 'sigma' are omitted")
        x = np.zeros(n - 1) if self.x is None else np.asarray(self.x, dtype=float)
        sigma = np.ones(n - 2) if self.sigma is None else np.asarray(self.sigma, dtype=float)
        return CanonicalMetric(n=n, p=self.p, x=x, sigma=sigma, beta=self.beta)


class JobRequest(BaseModel):
    """Everything a job needs besides the command name."""

    model_config = ConfigDict(extra="forbid")

    n: Optional[int] = None
    tol: Optional[float] = Field(default=None, gt=0)
    seed: Optional[int] = None
    input: Optional[MetricPayload] = None
    first: Optional[MetricPayload] = None
    second: Optional[MetricPayload] = None
    beta: Optional[float] = None


class JobSpec(JobRequest):
    command: Command


class ErrorInfo(BaseModel):
    category: Literal["validation", "conditioning", "parse"]
    message: str


class CanonicalParams(BaseModel):
    n: int
    p: float
    x: list[float]
    sigma: list[float]
    beta: float

    @classmethod
    def from_core(cls, c: CanonicalMetric) -> "CanonicalParams":
        return cls(n=c.n, p=c.p, x=c.x.tolist(), sigma=c.sigma.tolist(), beta=c.beta)


class AutomorphismBlocks(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda")
    M: list[list[float]]
    v: list[float]
    a: float
    u: list[float]

    @classmethod
    def from_core(cls, aut: Automorphism) -> "AutomorphismBlocks":
        return cls(lam=aut.lam, M=aut.M.tolist(), v=aut.v.tolist(), a=aut.a, u=aut.u.tolist())


class EinsteinInfo(BaseModel):
    einstein: bool
    constant: Optional[float] = None
    residual: float


class SolitonInfo(BaseModel):
    soliton: bool
    constant: Optional[float] = None
    derivation: Optional[list[list[float]]] = None
    residual: Optional[float] = None


class NilsolitonInfo(BaseModel):
    n: int
    beta: float
    c: float
    D1: list[list[float]]
    ricci_nil: list[list[float]]
    oracle_residual: float


class IsometricInfo(BaseModel):
    isometric: bool
    max_deviation: float
    first: CanonicalParams
    second: CanonicalParams


class SelfTestInfo(BaseModel):
    ns: list[int]
    samples: int
    residuals: dict[str, float]
    max_residual: float
    passed: bool


class Report(BaseModel):
    """Self-certifying result document for one job."""

    model_config = ConfigDict(populate_by_name=True)

    command: Command
    status: Literal["ok", "error"]
    tol: float
    n: Optional[int] = None
    seed: Optional[int] = None
    input: Optional[dict] = None
    canonical: Optional[CanonicalParams] = None
    automorphism: Optional[AutomorphismBlocks] = None
    S: Optional[list[list[float]]] = None
    residual: Optional[float] = None
    ricci: Optional[list[list[float]]] = None
    scalar: Optional[float] = None
    einstein: Optional[EinsteinInfo] = None
    isometric: Optional[IsometricInfo] = None
    soliton: Optional[SolitonInfo] = None
    nilsoliton: Optional[NilsolitonInfo] = None
    self_test: Optional[SelfTestInfo] = None
    error: Optional[ErrorInfo] = None
