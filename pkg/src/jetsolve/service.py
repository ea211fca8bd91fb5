"""HTTP front-end: a small FastAPI service wrapping the solver.

POST /solve takes the system document plus the pipeline options and
returns the exit code together with the machine-readable report.  The CLI
talks to this app (in-process by default), so service and command line
share one code path.
"""

import json
from typing import Any, List, Optional

from fastapi import FastAPI
from pydantic import BaseModel, Field

from .coeffs import DEFAULT_PRECISION
from .errors import InputError
from .report import (EXIT_INPUT, Options, SCHEMA_VERSION, run_pipeline)
from .sysfile import parse_system_text

app = FastAPI(title="jetsolve", version="1.0")


class SolveRequest(BaseModel):
    system: Any = Field(description="SystemFile document (object or "
                                    "JSON string)")
    order: str = "6"
    trees: str = "first"
    precision: int = DEFAULT_PRECISION
    verify_numeric: List[str] = Field(default_factory=list)
    families: bool = False
    real_only: bool = False


class SolveResponse(BaseModel):
    exit_code: int
    report: dict


@app.get("/health")
def health():
    return {"status": "ok", "schema_version": SCHEMA_VERSION}


@app.post("/solve", response_model=SolveResponse)
def solve(req: SolveRequest):
    text = req.system if isinstance(req.system, str) \
        else json.dumps(req.system)
    base_report = {"schema_version": SCHEMA_VERSION, "status": "input-error",
                   "branches": [], "notes": []}
    try:
        sysfile = parse_system_text(text)
    except InputError as exc:
        report = dict(base_report)
        where = ""
        if exc.line is not None:
            where = f" (line {exc.line}, column {exc.column})"
        report["notes"] = [str(exc) + where]
        report["input_position"] = {"line": exc.line, "column": exc.column}
        return SolveResponse(exit_code=EXIT_INPUT, report=report)
    try:
        opts = Options(order=req.order, trees=req.trees,
                       precision=req.precision,
                       verify_numeric=list(req.verify_numeric),
                       families=req.families, real_only=req.real_only)
        code, report = run_pipeline(sysfile, opts)
    except (ValueError, ZeroDivisionError) as exc:
        report = dict(base_report)
        report["notes"] = [f"bad option: {exc}"]
        return SolveResponse(exit_code=EXIT_INPUT, report=report)
    return SolveResponse(exit_code=code, report=report)
