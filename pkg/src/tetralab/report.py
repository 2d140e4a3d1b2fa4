"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .core.rings import CMat, format_rat

# Conventions every report carries, so a result states which repairs ran.
CONVENTIONS = {
    "composition": "operator word X*Y acts on points as map(X) first, then map(Y)",
    "spectral_sign": "det multiplied by +-1 so that the (-N,0) coefficient is +1",
    "spectral_rows": "rows (alpha, i, j) ascending; columns a-block, b-block, c-block",
    "lp_typo": "l2 rows use u2 on c_{i,j+1} (kind 1) / c_{i+1,j} (kind 2)",
    "quasi_period": "kind 1: lambda, mu on forward wraps; kind 2: inverse factors",
    "ybe_index": "last right-hand factor read as m_{a3,a5,a6}",
    "q_powers": "q enters only via omega = q^2",
}


def encode(x):
    """JSON-friendly encoding of ring elements and containers."""
    if isinstance(x, Fraction):
        return format_rat(x)
    if isinstance(x, bool) or x is None or isinstance(x, int | str):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, complex | np.complexfloating):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.floating | np.integer):
        return x.item()
    if isinstance(x, CMat):
        return f"CMat(dim={x.dim})"
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, list | tuple):
        return [encode(v) for v in x]
    return repr(x)


@dataclass
class Report:
    check: str
    ring: str = "rational"
    trials: int = 0
    seed: int | None = None
    failures: list = field(default_factory=list)
    max_residual: float = 0.0
    skipped: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.trials > 0

    def record(self, residual: float, ok: bool, trial=None, inputs=None, note: str = ""):
        self.trials += 1
        self.max_residual = max(self.max_residual, float(residual))
        if not ok:
            self.failures.append(
                {"trial": trial, "residual": float(residual), "inputs": encode(inputs), "note": note}
            )

    def merge(self, other: Report) -> Report:
        self.trials += other.trials
        self.skipped += other.skipped
        self.max_residual = max(self.max_residual, other.max_residual)
        self.failures.extend({**f, "check": other.check} for f in other.failures)
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["details"] = encode(self.details)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.check} ring={self.ring} trials={self.trials} "
            f"failures={len(self.failures)} max_residual={self.max_residual:.3e}"
        )
