"""Run configuration and machine-readable verification reports.

Reports are JSON (diff-able, schema-validated); error grids go to CSV.
A fixed seed makes the report content byte-identical across runs except
for the "timing" block, which is the one field excluded from the
determinism contract.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence


@dataclass
class RunConfig:
    suite: str
    n_values: Sequence[int] = (2, 3, 4)
    l_values: Sequence[int] = (0, 1, 2)
    samples: int = 10
    grid_points: int = 50
    seed: int = 0
    tol: Optional[float] = None
    budget: int = 10_000_000
    out: Optional[str] = None
    csv_out: Optional[str] = None
    op: str = "juhl"
    gen: str = "all"
    lam: Optional[object] = None
    nu: Optional[object] = None

    def __post_init__(self):
        if self.samples <= 0 or self.grid_points <= 0:
            raise ValueError("sample and grid counts must be positive")
        if self.tol is not None and self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.budget <= 0:
            raise ValueError("budget must be positive")


@dataclass
class Case:
    case_id: str
    check: str
    kind: str  # "exact" | "closed-form-identity" | "derived-oracle"
    inputs: Dict
    error: float
    tol: float
    passed: bool
    computed: Optional[object] = None
    reference: Optional[object] = None


@dataclass
class VerificationReport:
    suite: str
    config: Dict
    cases: List[Case] = field(default_factory=list)
    wall_seconds: float = 0.0
    version: str = "0.1.0"

    def add(self, case: Case) -> None:
        self.cases.append(case)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_error(self) -> float:
        return max((c.error for c in self.cases), default=0.0)

    def to_json_dict(self) -> Dict:
        return {
            "artifact": "sbolab",
            "version": self.version,
            "suite": self.suite,
            "config": jsonable(self.config),
            "cases": [
                {
                    "case_id": c.case_id,
                    "check": c.check,
                    "kind": c.kind,
                    "inputs": jsonable(c.inputs),
                    "computed": jsonable(c.computed),
                    "reference": jsonable(c.reference),
                    "error": float(c.error),
                    "tol": float(c.tol),
                    "pass": bool(c.passed),
                }
                for c in self.cases
            ],
            "summary": {
                "case_count": len(self.cases),
                "pass_count": sum(1 for c in self.cases if c.passed),
                "max_error": float(self.max_error),
                "all_pass": self.all_pass,
            },
            "timing": {"wall_seconds": float(self.wall_seconds)},
        }

    def write(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n")


def jsonable(x):
    """Lossless-enough JSON projection: exact rationals as strings, complex split."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return jsonable(x.item())
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _csv_cell(v):
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}j"
    return v


def schema_path() -> Path:
    return Path(str(resources.files("sbolab").joinpath("data/report_schema.json")))


def load_schema() -> Dict:
    return json.loads(schema_path().read_text())
