"""Check reports shared by every verification routine."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .superlinalg import GradedMatrix

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "inconclusive")


@dataclass
class CheckReport:
    check_id: str
    parameters: dict
    status: str
    residual: dict | None = None
    witness: str | None = None
    runtime_ms: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == "fail") != (self.witness is not None):
            raise ValueError("status is 'fail' exactly when a witness is given")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        data = asdict(self)
        data["schema"] = SCHEMA_VERSION
        return data

    def line(self) -> str:
        extra = f"  [{self.witness}]" if self.witness else ""
        params = " ".join(f"{k}={v}" for k, v in sorted(self.parameters.items()))
        return f"{self.status.upper():<12} {self.check_id:<28} {params} ({self.runtime_ms} ms){extra}"


class ReportBuilder:
    """Accumulates named sub-results; any failure yields a witness."""

    def __init__(self, check_id: str, *, tol: float | None = None, **parameters):
        """``tol`` None means exact comparison; otherwise entrywise max |diff| <= tol."""
        self.check_id = check_id
        self.parameters = parameters
        self.tol = tol
        if tol is not None:
            parameters["tol"] = tol
        self.residual: dict = {}
        self.failures: list[str] = []
        self.inconclusive: list[str] = []
        self.details: dict = {}
        self._start = time.perf_counter()

    def matrix_equal(self, name: str, lhs: GradedMatrix, rhs: GradedMatrix) -> bool:
        return self.matrix_zero(name, lhs - rhs)

    def matrix_zero(self, name: str, mat: GradedMatrix) -> bool:
        if self.tol is None:
            bad = mat.entries
            self.residual[name] = len(bad)
        else:
            bad = {k: v for k, v in mat.entries.items() if abs(complex(v)) > self.tol}
            self.residual[name] = max((abs(complex(v)) for v in mat.entries.values()), default=0.0)
        if bad:
            (i, j), v = min(bad.items(), key=lambda kv: kv[0])
            self.failures.append(f"{name}: {len(bad)} nonzero residual entries, first at ({i},{j}) = {v}")
            return False
        return True

    def expect(self, name: str, ok: bool, message: str = "", value=None) -> bool:
        self.residual[name] = value if value is not None else (0 if ok else 1)
        if not ok:
            self.failures.append(f"{name}: {message or 'failed'}")
        return ok

    def build(self) -> CheckReport:
        runtime = int((time.perf_counter() - self._start) * 1000)
        if self.failures:
            status, witness = "fail", "; ".join(self.failures[:5])
        elif self.inconclusive:
            status, witness = "inconclusive", None
            self.details.setdefault("inconclusive", self.inconclusive)
        else:
            status, witness = "pass", None
        return CheckReport(self.check_id, self.parameters, status, self.residual or None,
                           witness, runtime, self.details)
