"""Identity check reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def _plain(x):
    """JSON-friendly copy of parameter values (complex -> [re, im], Fraction -> str)."""
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    try:
        return float(x) if float(x) == x else str(x)
    except (TypeError, ValueError):
        return str(x)


@dataclass
class IdentityReport:
    identity_id: str
    mode: str
    params: dict
    max_abs_error: float
    threshold: float
    nodes_used: int = 0
    runtime_ms: float = 0.0
    seed: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        err = self.max_abs_error
        ok = err is not None and not math.isnan(err) and err <= self.threshold
        return "pass" if ok else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = {
            "identity_id": self.identity_id,
            "mode": self.mode,
            "params": _plain(self.params),
            "max_abs_error": _plain(float(self.max_abs_error)),
            "threshold": float(self.threshold),
            "status": self.status,
            "nodes_used": int(self.nodes_used),
            "runtime_ms": round(float(self.runtime_ms), 3),
            "seed": self.seed,
        }
        if self.details:
            d["details"] = _plain(self.details)
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def line(self) -> str:
        return (f"{self.identity_id:<24} {self.mode:<7} {self.status:<4} "
                f"err={float(self.max_abs_error):.3e} thr={self.threshold:.1e} "
                f"nodes={self.nodes_used}")


def failed_report(identity_id: str, mode: str, params: dict, threshold: float,
                  exc: Exception, seed=None) -> IdentityReport:
    """Report for a check that raised before producing a deviation."""
    return IdentityReport(identity_id, mode, params, math.inf, threshold, seed=seed,
                          details={"error": f"{type(exc).__name__}: {exc}"})
