"""JSON-over-HTTP facade.

One endpoint per core operation plus persistent elicitation sessions and a
small job registry for long computations (large Monte Carlo runs, vertex
enumeration in higher dimensions): those return 202 with a job id to poll.

Status mapping: 400 malformed input, 404 unknown session/job, 409 rejected
constraint, 413 over the dimension cap, 422 infeasible/not attainable.
"""

from __future__ import annotations

import io
import os
import tempfile
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional

import numpy as np
from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import jsonio
from .attainability import (
    bound_missing,
    check_attainable,
    enumerate_vertices,
    project_vertices,
)
from .elliptical import McConfig, elliptical_signature, t_limit_weights
from .equiconcordant import SkeletalSignature, skeletal_solve
from .errors import (
    ConcordError,
    ConstraintRejectedError,
    DimensionTooLargeError,
    InfeasibleError,
    NotAttainableError,
    SchemaError,
    UnknownSessionError,
)
from .estimation import empirical_signature_ties, ingest_csv
from .sampler import sample_mixture
from .sessions import SessionStore
from .signatures import tau_to_kappa

JOB_SAMPLE_THRESHOLD = 2_000_000
JOB_ENUM_DIM = 6

_STATUS = {
    "out_of_range": 400,
    "invalid_bits": 400,
    "invalid_label": 400,
    "invalid_signature": 400,
    "invalid_weights": 400,
    "invalid_matrix": 400,
    "malformed_document": 400,
    "malformed_csv": 400,
    "ragged_rows": 400,
    "non_positive_price": 400,
    "ties_present": 400,
    "too_few_rows": 400,
    "theta_out_of_range": 400,
    "unknown_session": 404,
    "constraint_rejected": 409,
    "dimension_too_large": 413,
    "not_attainable": 422,
    "infeasible": 422,
    "singular_system": 500,
    "numerical_failure": 500,
}


class Jobs:
    def __init__(self, workers: int = 2):
        self.executor = ThreadPoolExecutor(max_workers=workers)
        self.lock = threading.Lock()
        self.records: dict[str, dict[str, Any]] = {}

    def submit(self, fn) -> str:
        job_id = uuid.uuid4().hex[:12]
        cancel = threading.Event()
        record = {
            "status": "pending",
            "result": None,
            "error": None,
            "cancel": cancel,
            "future": None,
        }
        with self.lock:
            self.records[job_id] = record

        def run():
            if cancel.is_set():
                record["status"] = "cancelled"
                return
            record["status"] = "running"
            try:
                record["result"] = fn(cancel)
                record["status"] = "done"
            except InterruptedError:
                record["status"] = "cancelled"
            except ConcordError as err:
                record["status"] = "failed"
                record["error"] = {"code": err.code, "message": str(err)}
            except Exception as err:  # pragma: no cover - defensive
                record["status"] = "failed"
                record["error"] = {"code": "internal", "message": str(err)}

        record["future"] = self.executor.submit(run)
        return job_id

    def get(self, job_id: str) -> dict[str, Any]:
        with self.lock:
            if job_id not in self.records:
                raise UnknownSessionError(f"no job {job_id!r}")
            return self.records[job_id]

    def cancel(self, job_id: str) -> dict[str, Any]:
        record = self.get(job_id)
        record["cancel"].set()
        if record["future"] is not None and record["future"].cancel():
            record["status"] = "cancelled"
        return record


class SignatureBody(BaseModel):
    d: int
    labels: list[list[int]]
    values: list[float]


class BoundsBody(SignatureBody):
    targets: list[list[int]] = Field(default_factory=list)
    norm_objective: bool = False


class VerticesBody(SignatureBody):
    targets: Optional[list[list[int]]] = None
    as_job: bool = False


class MatrixBody(BaseModel):
    matrix: list[list[float]]
    mc_samples: Optional[int] = None
    seed: int = 0
    antithetic: bool = True
    as_job: bool = False


class TLimitBody(MatrixBody):
    mode: str = "analytic"


class SkeletalBody(BaseModel):
    d: int
    k: list[float]


class SampleBody(BaseModel):
    d: int
    w: list[float]
    n: int = Field(gt=0)
    seed: int = 0
    as_job: bool = False


class SessionCreateBody(BaseModel):
    d: int
    constraints: list[dict] = Field(default_factory=list)


class ConstraintBody(BaseModel):
    label: list[int]
    value: Optional[float] = None
    tau: Optional[float] = None
    provenance: str = "elicited"


def create_app(
    data_dir: str | None = None,
    cors_origins: list[str] | None = None,
    dimension_cap: int | None = None,
    mc_default_samples: int = 1_000_000,
) -> FastAPI:
    app = FastAPI(title="concord", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(data_dir or os.path.join(tempfile.gettempdir(), "concord-sessions"))
    jobs = Jobs()
    app.state.store = store
    app.state.jobs = jobs
    app.state.dimension_cap = dimension_cap
    app.state.mc_default_samples = mc_default_samples

    @app.exception_handler(ConcordError)
    async def concord_error_handler(request: Request, err: ConcordError):
        payload = {"code": err.code, "message": str(err), "detail": None}
        if isinstance(err, ConstraintRejectedError):
            payload["detail"] = {"lower": err.lower, "upper": err.upper}
        if isinstance(err, InfeasibleError) and err.phase1_objective is not None:
            payload["detail"] = {"phase1_objective": err.phase1_objective}
        return JSONResponse(status_code=_STATUS.get(err.code, 400), content=payload)

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, err: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "malformed_document", "message": str(err), "detail": None},
        )

    def _partial(body: SignatureBody):
        return jsonio.partial_signature_from_json(body.model_dump(include={"d", "labels", "values"}))

    def _mc(body) -> McConfig:
        samples = body.mc_samples or app.state.mc_default_samples
        return McConfig(samples=samples, seed=body.seed, antithetic=body.antithetic)

    @app.post("/v1/attainability")
    def attainability(body: SignatureBody):
        cert = check_attainable(_partial(body), cap=app.state.dimension_cap)
        doc = {
            "feasible": cert.feasible,
            "phase1_objective": cert.phase1_objective,
            "witness": jsonio.weights_to_json(cert.witness) if cert.witness else None,
            "reason": cert.infeasibility_reason,
        }
        if not cert.feasible:
            return JSONResponse(status_code=422, content=doc)
        return doc

    @app.post("/v1/bounds")
    def bounds(body: BoundsBody):
        partial = _partial(body)
        targets = [tuple(t) for t in body.targets] or None
        if targets is None:
            targets = partial.missing_labels()
        report = bound_missing(
            partial, targets, cap=app.state.dimension_cap, norm_objective=body.norm_objective
        )
        return jsonio.bounds_report_to_json(report)

    @app.post("/v1/vertices")
    def vertices(body: VerticesBody):
        partial = _partial(body)

        def work(cancel):
            polytope = enumerate_vertices(partial)
            projection = None
            if body.targets:
                projection = project_vertices(polytope, [tuple(t) for t in body.targets])
            return jsonio.polytope_to_json(
                polytope, projection, [tuple(t) for t in body.targets or []]
            )

        if body.as_job or partial.d > JOB_ENUM_DIM:
            return JSONResponse(status_code=202, content={"job_id": jobs.submit(work)})
        return work(None)

    @app.post("/v1/estimate")
    async def estimate(
        file: UploadFile = File(...),
        log_returns: bool = Form(False),
        header: bool = Form(False),
    ):
        raw = await file.read()
        data = ingest_csv(
            io.StringIO(raw.decode("utf-8")),
            log_returns=log_returns,
            header=True if header else "auto",
        )
        est = empirical_signature_ties(data)
        doc = jsonio.signature_to_json(est.even)
        doc.update(
            {
                "weights": jsonio.weights_to_json(est.weights),
                "n": est.n,
                "tie_adjusted": est.tie_adjusted,
            }
        )
        return doc

    @app.post("/v1/elliptical")
    def elliptical(body: MatrixBody):
        P = jsonio.matrix_from_json(body.matrix)
        mc = _mc(body)

        def work(cancel):
            res = elliptical_signature(P, mc, cancel=cancel)
            doc = jsonio.signature_to_json(res.signature)
            doc.update(
                {
                    "std_errors": [e.std_error for e in res.estimates],
                    "method": [e.method for e in res.estimates],
                    "weights": jsonio.weights_to_json(res.weights),
                    "projected_values": res.projected.values.tolist(),
                }
            )
            return doc

        if body.as_job or mc.samples > JOB_SAMPLE_THRESHOLD:
            return JSONResponse(status_code=202, content={"job_id": jobs.submit(work)})
        return work(None)

    @app.post("/v1/tlimit")
    def tlimit(body: TLimitBody):
        P = jsonio.matrix_from_json(body.matrix)
        mc = _mc(body)

        def work(cancel):
            res = t_limit_weights(P, mode=body.mode, mc=mc, cancel=cancel)
            doc = jsonio.weights_to_json(res.weights)
            doc["mode"] = res.mode
            if res.std_errors is not None:
                doc["std_errors"] = res.std_errors.tolist()
            return doc

        if body.as_job or (body.mode == "monte_carlo" and mc.samples > JOB_SAMPLE_THRESHOLD):
            return JSONResponse(status_code=202, content={"job_id": jobs.submit(work)})
        return work(None)

    @app.post("/v1/skeletal")
    def skeletal(body: SkeletalBody):
        sol = skeletal_solve(SkeletalSignature.create(body.d, body.k))
        return {
            "d": body.d,
            "v": sol.v.tolist(),
            "attainable": sol.attainable,
            "group_weights": sol.group_weights.tolist() if sol.group_weights is not None else None,
        }

    @app.post("/v1/sample")
    def sample(body: SampleBody):
        weights = jsonio.weights_from_json({"d": body.d, "w": body.w})

        def work(cancel):
            result = sample_mixture(weights, body.n, body.seed)
            return {"csv": jsonio.samples_to_csv(result.values)}

        if body.as_job or body.n > JOB_SAMPLE_THRESHOLD:
            return JSONResponse(status_code=202, content={"job_id": jobs.submit(work)})
        result = sample_mixture(weights, body.n, body.seed)
        return PlainTextResponse(jsonio.samples_to_csv(result.values), media_type="text/csv")

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: SessionCreateBody):
        session = store.create(body.d, body.constraints)
        return session.to_doc()

    @app.get("/v1/sessions/{session_id}")
    def get_session(session_id: str):
        return store.get(session_id).to_doc()

    @app.post("/v1/sessions/{session_id}/constraints")
    def add_constraint(session_id: str, body: ConstraintBody):
        if (body.value is None) == (body.tau is None):
            raise SchemaError("provide exactly one of 'value' (kappa) or 'tau'")
        value = body.value
        if value is None:
            value = tau_to_kappa(body.tau, max(len(body.label), 2))
        session = store.add_constraint(session_id, body.label, value, body.provenance)
        return session.to_doc()

    @app.delete("/v1/sessions/{session_id}/constraints/{label}")
    def delete_constraint(session_id: str, label: str):
        parsed = tuple(int(tok) for tok in label.split(",") if tok.strip())
        session = store.remove_constraint(session_id, parsed)
        return session.to_doc()

    @app.get("/v1/jobs/{job_id}")
    def get_job(job_id: str):
        record = jobs.get(job_id)
        return {
            "status": record["status"],
            "result": record["result"],
            "error": record["error"],
        }

    @app.delete("/v1/jobs/{job_id}")
    def cancel_job(job_id: str):
        record = jobs.cancel(job_id)
        return {"status": record["status"]}

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    return app


def main(argv=None) -> int:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="concord-service")
    parser.add_argument("--host", default=os.environ.get("CONCORD_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("CONCORD_PORT", "8777")))
    parser.add_argument("--data-dir", default=os.environ.get("CONCORD_DATA_DIR"))
    parser.add_argument(
        "--dimension-cap",
        type=int,
        default=int(os.environ.get("CONCORD_DIMENSION_CAP", "0")) or None,
    )
    parser.add_argument(
        "--mc-samples",
        type=int,
        default=int(os.environ.get("CONCORD_MC_SAMPLES", "1000000")),
        help="default Monte Carlo sample count when requests omit it",
    )
    parser.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="allowed UI origin (repeatable); default allows all",
    )
    args = parser.parse_args(argv)
    app = create_app(
        data_dir=args.data_dir,
        cors_origins=args.cors_origin,
        dimension_cap=args.dimension_cap,
        mc_default_samples=args.mc_samples,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
