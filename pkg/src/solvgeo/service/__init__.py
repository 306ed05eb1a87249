"""HTTP service wrapping the compute package; see app.py for endpoints."""

from .models import JobSpec, MetricPayload, Report
from .runner import run_batch, run_job

__all__ = ["JobSpec", "MetricPayload", "Report", "run_batch", "run_job"]
