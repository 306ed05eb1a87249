"""FastAPI service exposing the compute commands as endpoints.

Run with ``python -m solvgeo.service`` or ``uvicorn solvgeo.service.app:app``.
Mathematical failures are reported in-band (status="error" with a category),
so batch submissions always return one report per job; malformed request
bodies get the usual 422.
"""

from fastapi import FastAPI

from .models import Command, JobRequest, JobSpec, Report
from .runner import run_batch, run_job

app = FastAPI(
    title="solvgeo",
    description="Left-invariant metrics, curvature, and Ricci solitons on the "
                "solvable Lie group of complex hyperbolic space.",
    version="0.1.0",
)


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/jobs", response_model=Report, response_model_exclude_none=True)
def submit_job(spec: JobSpec) -> Report:
    return run_job(spec)


@app.post("/batch", response_model=list[Report], response_model_exclude_none=True)
def submit_batch(specs: list[JobSpec], jobs: int = 1) -> list[Report]:
    return run_batch(specs, jobs=jobs)


def _command_endpoint(command: Command):
    def endpoint(request: JobRequest) -> Report:
        return run_job(JobSpec(command=command, **request.model_dump()))

    endpoint.__name__ = command.replace("-", "_")
    return endpoint


for _command in ("canonicalize", "curvature", "ricci", "einstein", "isometric",
                 "soliton-check", "extend-nilsoliton", "random-metric", "self-test"):
    app.post(f"/{_command}", response_model=Report,
             response_model_exclude_none=True)(_command_endpoint(_command))
