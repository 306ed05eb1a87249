"""Batch command-line client for the compute service.

Jobs execute in-process by default; ``--server URL`` sends them to a running
service instead.  Input documents are single JSON objects (metrics as
row-major arrays under "S", canonical tuples under n/p/x/sigma/beta) or arrays
of job objects for batch mode.  Reports are deterministic: floats are printed
with 17 significant digits, and a canonicalize report can be fed back as input
to reproduce itself byte for byte.

Exit codes: 0 success, 2 validation error, 3 conditioning error, 4 parse error.
"""

import argparse
import json
import os
import sys

from .service.models import JobSpec, MetricPayload, Report
from .service.runner import DEFAULT_TOL, TOL_ENV_VAR, run_batch

COMMANDS = ("canonicalize", "curvature", "ricci", "einstein", "isometric",
            "soliton-check", "extend-nilsoliton", "random-metric", "self-test")

_PAYLOAD_KEYS = {"n", "S", "p", "x", "sigma", "beta"}
_REPORT_KEYS = set(Report.model_fields) | {"lambda", "first", "second", "command", "jobs"}

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CONDITIONING = 3
EXIT_PARSE = 4


class ParseFailure(Exception):
    pass


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="solvgeo",
        description="Canonical forms, curvature, and Ricci solitons for left-invariant "
                    "metrics on the solvable group of complex hyperbolic space.")
    parser.add_argument("--command", choices=COMMANDS,
                        help="job to run (batch items may carry their own)")
    parser.add_argument("--n", type=int, help="complex dimension parameter (>= 2)")
    parser.add_argument("--tol", type=float,
                        help=f"tolerance (default {DEFAULT_TOL}, or ${TOL_ENV_VAR})")
    parser.add_argument("--seed", type=int, help="seed for random-metric")
    parser.add_argument("--input", default=None, metavar="PATH|-",
                        help="JSON input document; '-' reads stdin")
    parser.add_argument("--output", default="-", metavar="PATH|-",
                        help="report destination; '-' writes stdout (default)")
    parser.add_argument("--jobs", type=int, default=1, metavar="K",
                        help="parallel workers for batch input")
    parser.add_argument("--format", choices=("json",), default="json")
    parser.add_argument("--server", default=None, metavar="URL",
                        help="send jobs to a running solvgeo service instead of computing locally")
    return parser.parse_args(argv)


def _resolve_tol(args) -> float | None:
    if args.tol is not None:
        return args.tol
    env = os.environ.get(TOL_ENV_VAR)
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise ParseFailure(f"bad {TOL_ENV_VAR} value {env!r}: {exc}") from exc
    return None


def _payload_from_document(doc) -> MetricPayload:
    """Build a metric payload; accepts raw payloads and previously emitted reports."""
    if not isinstance(doc, dict):
        raise ParseFailure(f"expected a JSON object for a metric, got {type(doc).__name__}")
    if isinstance(doc.get("input"), dict):
        doc = doc["input"]
    unknown = set(doc) - _PAYLOAD_KEYS - _REPORT_KEYS
    if unknown:
        raise ParseFailure(f"unknown keys in metric document: {sorted(unknown)}")
    subset = {k: v for k, v in doc.items() if k in _PAYLOAD_KEYS}
    if not subset:
        raise ParseFailure("no metric payload found (need 'S' or canonical keys)")
    try:
        return MetricPayload(**subset)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc


def _job_from_document(doc, args, command=None) -> JobSpec:
    if not isinstance(doc, dict):
        raise ParseFailure(f"expected a JSON object for a job, got {type(doc).__name__}")
    command = command or doc.get("command") or args.command
    if command is None:
        raise ParseFailure("no command given (use --command or a 'command' key)")
    if command not in COMMANDS:
        raise ParseFailure(f"unknown command {command!r}")
    fields = {
        "command": command,
        "n": doc.get("n", args.n),
        "tol": doc.get("tol", _resolve_tol(args)),
        "seed": doc.get("seed", args.seed),
        "beta": doc.get("beta"),
    }
    if command == "isometric":
        if "first" not in doc or "second" not in doc:
            raise ParseFailure("isometric input needs 'first' and 'second' metric objects")
        fields["first"] = _payload_from_document(doc["first"])
        fields["second"] = _payload_from_document(doc["second"])
    elif command in ("canonicalize", "curvature", "ricci", "einstein", "soliton-check"):
        inner = doc.get("input", doc)
        fields["input"] = _payload_from_document(inner if isinstance(inner, dict) else doc)
    try:
        return JobSpec(**fields)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc


def _load_jobs(args) -> tuple[list[JobSpec], bool]:
    needs_input = args.command not in ("random-metric", "self-test", "extend-nilsoliton", None)
    doc = None
    if args.input is not None:
        raw = sys.stdin.read() if args.input == "-" else open(args.input).read()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseFailure(f"invalid JSON input: {exc}") from exc
    elif needs_input:
        raise ParseFailure(f"command {args.command!r} requires --input")

    if isinstance(doc, list):
        return [_job_from_document(item, args) for item in doc], True
    if doc is None:
        if args.command is None:
            raise ParseFailure("no command given (use --command)")
        return [JobSpec(command=args.command, n=args.n, tol=_resolve_tol(args),
                        seed=args.seed)], False
    return [_job_from_document(doc, args)], False


def _format_float(value: float) -> str:
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError(f"non-finite value in report: {value!r}")
    return format(value, ".17g")


def dumps_report(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [dumps_report(item, indent + 1) for item in obj]
        return "[\n" + ",\n".join(inner + item for item in items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {dumps_report(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(inner + item for item in items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__} in a report")


def _execute(specs: list[JobSpec], args) -> list[Report]:
    if args.server is None:
        return run_batch(specs, jobs=args.jobs)
    import httpx
    payload = [spec.model_dump(mode="json", exclude_none=True) for spec in specs]
    if len(specs) == 1:
        response = httpx.post(f"{args.server.rstrip('/')}/jobs", json=payload[0], timeout=300.0)
        response.raise_for_status()
        return [Report.model_validate(response.json())]
    response = httpx.post(f"{args.server.rstrip('/')}/batch",
                          params={"jobs": args.jobs}, json=payload, timeout=300.0)
    response.raise_for_status()
    return [Report.model_validate(item) for item in response.json()]


def _exit_code(report: Report) -> int:
    if report.status == "ok":
        return EXIT_OK
    return {"validation": EXIT_VALIDATION, "conditioning": EXIT_CONDITIONING,
            "parse": EXIT_PARSE}[report.error.category]


def _write(text: str, destination: str) -> None:
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = _parse_args(argv)
    try:
        specs, is_batch = _load_jobs(args)
    except ParseFailure as exc:
        document = {"status": "error",
                    "error": {"category": "parse", "message": str(exc)}}
        _write(dumps_report(document) + "\n", args.output)
        return EXIT_PARSE

    try:
        reports = _execute(specs, args)
    except Exception as exc:  # transport failures in --server mode
        sys.stderr.write(f"solvgeo: job execution failed: {exc}\n")
        return 1

    dumped = [report.model_dump(exclude_none=True, by_alias=True) for report in reports]
    document = dumped if is_batch else dumped[0]
    _write(dumps_report(document) + "\n", args.output)
    for report in reports:
        code = _exit_code(report)
        if code != EXIT_OK:
            return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
