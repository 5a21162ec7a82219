"""Persistent elicitation sessions.

A session accumulates fixed concordance probabilities one at a time, the
workflow of imputing rank correlations for a new, unobserved asset.  Every
mutation is validated first: a constraint that would make the session
infeasible is rejected atomically (the stored state never changes), and on
acceptance the feasibility certificate and the bounds of every remaining
even-cardinality entry are recomputed and cached.

Persistence is one JSON document per session, written atomically via
rename; mutations serialize on a per-session lock.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .attainability import PartialSignature, bound_missing, check_attainable
from .errors import (
    ConstraintRejectedError,
    InvalidLabelError,
    UnknownSessionError,
)
from .subsets import validate_subset

BOUNDS_DIM_CAP = 7  # full even-power-set bounds up to 64 targets


@dataclass
class Constraint:
    label: tuple[int, ...]
    value: float
    provenance: str = "elicited"  # "elicited" | "estimated"


@dataclass
class Session:
    session_id: str
    d: int
    constraints: list[Constraint]
    created: str
    updated: str
    feasible: bool = True
    phase1_objective: float = 0.0
    witness: list[float] | None = None
    bounds: dict | None = None

    def partial(self) -> PartialSignature:
        labels = [c.label for c in self.constraints]
        values = [c.value for c in self.constraints]
        return PartialSignature.create(self.d, [()] + labels, [1.0] + values)

    def to_doc(self) -> dict:
        partial = self.partial()
        return {
            "session_id": self.session_id,
            "d": self.d,
            "constraints": [
                {"label": list(c.label), "value": c.value, "provenance": c.provenance}
                for c in self.constraints
            ],
            "created": self.created,
            "updated": self.updated,
            "feasible": self.feasible,
            "phase1_objective": self.phase1_objective,
            "witness": self.witness,
            "bounds": self.bounds,
            "signature": {
                "d": self.d,
                "labels": [list(s) for s in partial.labels.subsets],
                "values": [float(v) for v in partial.values],
            },
        }


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionStore:
    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def create(self, d: int, constraints=None) -> Session:
        session_id = uuid.uuid4().hex[:16]
        now = _now()
        parsed = []
        for item in constraints or []:
            label = validate_subset(item["label"], d)
            _require_even_nonempty(label)
            parsed.append(
                Constraint(
                    label=label,
                    value=float(item["value"]),
                    provenance=item.get("provenance", "elicited"),
                )
            )
        session = Session(
            session_id=session_id,
            d=d,
            constraints=parsed,
            created=now,
            updated=now,
        )
        self._recompute(session)  # raises if the initial constraints conflict
        with self._lock_for(session_id):
            self._write(session)
        return session

    def get(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not path.exists():
            raise UnknownSessionError(f"no session {session_id!r}")
        doc = json.loads(path.read_text(encoding="utf-8"))
        return Session(
            session_id=doc["session_id"],
            d=doc["d"],
            constraints=[
                Constraint(tuple(c["label"]), c["value"], c.get("provenance", "elicited"))
                for c in doc["constraints"]
            ],
            created=doc["created"],
            updated=doc["updated"],
            feasible=doc.get("feasible", True),
            phase1_objective=doc.get("phase1_objective", 0.0),
            witness=doc.get("witness"),
            bounds=doc.get("bounds"),
        )

    def add_constraint(
        self, session_id: str, label, value: float, provenance: str = "elicited"
    ) -> Session:
        with self._lock_for(session_id):
            session = self.get(session_id)
            label = validate_subset(label, session.d)
            _require_even_nonempty(label)
            existing = {c.label: c for c in session.constraints}
            if label in existing and abs(existing[label].value - float(value)) <= 1e-12:
                return session  # idempotent re-POST leaves cached results alone
            candidate = [c for c in session.constraints if c.label != label]
            candidate.append(Constraint(label, float(value), provenance))
            trial = Session(
                session_id=session.session_id,
                d=session.d,
                constraints=candidate,
                created=session.created,
                updated=_now(),
            )
            try:
                self._recompute(trial)
            except ConstraintRejectedError as err:
                # report the violated interval from the pre-mutation bounds
                interval = _bounds_for_label(session, label)
                raise ConstraintRejectedError(
                    f"constraint {label}={value} is infeasible: {err}",
                    lower=interval[0],
                    upper=interval[1],
                ) from None
            self._write(trial)
            return trial

    def remove_constraint(self, session_id: str, label) -> Session:
        with self._lock_for(session_id):
            session = self.get(session_id)
            label = validate_subset(label, session.d)
            if label not in {c.label for c in session.constraints}:
                raise InvalidLabelError(f"no constraint on {label} in session")
            trial = Session(
                session_id=session.session_id,
                d=session.d,
                constraints=[c for c in session.constraints if c.label != label],
                created=session.created,
                updated=_now(),
            )
            self._recompute(trial)
            self._write(trial)
            return trial

    def _recompute(self, session: Session) -> None:
        partial = session.partial()
        cert = check_attainable(partial)
        if not cert.feasible:
            raise ConstraintRejectedError(
                cert.infeasibility_reason or "infeasible constraint set"
            )
        session.feasible = True
        session.phase1_objective = cert.phase1_objective
        session.witness = [float(x) for x in cert.witness.w]
        targets = partial.missing_labels()
        if targets and session.d <= BOUNDS_DIM_CAP:
            report = bound_missing(partial, targets)
            session.bounds = {
                "targets": [list(t) for t in report.targets],
                "lower": [float(x) for x in report.lower],
                "upper": [float(x) for x in report.upper],
            }
        else:
            session.bounds = {"targets": [], "lower": [], "upper": []}

    def _write(self, session: Session) -> None:
        path = self._path(session.session_id)
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(session.to_doc(), fh, indent=2)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)


def _require_even_nonempty(label: tuple[int, ...]) -> None:
    if not label or len(label) % 2:
        raise InvalidLabelError(
            f"constraint labels must be non-empty even-cardinality subsets, got {label}"
        )


def _bounds_for_label(session: Session, label: tuple[int, ...]):
    bounds = session.bounds or {}
    targets = [tuple(t) for t in bounds.get("targets", [])]
    if label in targets:
        i = targets.index(label)
        return bounds["lower"][i], bounds["upper"][i]
    return None, None
