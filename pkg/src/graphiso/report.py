"""Named inequality reports shared by all verifier modules."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class InequalityReport:
    """One checked inequality: left vs right with slack and equality flag.

    ``kind`` is "upper" (claim: left <= right, slack = right - left) or
    "lower" (claim: left >= right, slack = left - right).  ``ci`` widens the
    verdict for Monte-Carlo evaluations: a violation is only declared when
    the bound falls outside the confidence interval.
    """

    name: str
    kind: str
    applicable: bool
    reason: str
    left: float | None
    right: float | None
    slack: float | None
    equality: bool
    provenance: str = "exact"
    ci: float = 0.0
    witnesses: dict = field(default_factory=dict)

    def holds(self, tol: float = 1e-9) -> bool:
        """True unless an applicable inequality is violated beyond tol + ci."""
        if not self.applicable or self.slack is None:
            return True
        return self.slack >= -(tol + self.ci)

    def to_dict(self) -> dict:
        return asdict(self)


def make_report(name, kind, left, right, *, applicable=True, reason="",
                provenance="exact", ci=0.0, witnesses=None,
                tol=1e-9) -> InequalityReport:
    if kind not in ("upper", "lower"):
        raise ValueError(kind)
    if not applicable or left is None or right is None:
        return InequalityReport(name, kind, False, reason, left, right,
                                None, False, provenance, ci, witnesses or {})
    slack = (right - left) if kind == "upper" else (left - right)
    equality = bool(abs(right - left) <= tol)
    return InequalityReport(name, kind, True, reason, float(left),
                            float(right), float(slack), equality,
                            provenance, ci, witnesses or {})
