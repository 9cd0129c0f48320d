"""Certificate and run reports shared by every verifier.

A certificate collects one row per checked identity.  The verdict is
"verified" only when every identity reduced to zero and no row was
inconclusive; a definite nonzero witness yields "refuted_with_witness",
anything else is "inconclusive".
"""

from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
REFUTED = "refuted_with_witness"
INCONCLUSIVE = "inconclusive"


@dataclass
class IdentityCheck:
    label: str
    polynomial: str
    reduced_to_zero: bool
    inconclusive: bool = False

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "polynomial": self.polynomial,
            "reduced_to_zero": self.reduced_to_zero,
            "inconclusive": self.inconclusive,
        }


@dataclass
class CertificateReport:
    claim: str
    identities: list[IdentityCheck]
    verdict: str
    details: dict = field(default_factory=dict)

    @classmethod
    def from_identities(cls, claim: str, identities, details=None) -> "CertificateReport":
        identities = list(identities)
        if all(c.reduced_to_zero and not c.inconclusive for c in identities):
            verdict = VERIFIED
        elif any(not c.reduced_to_zero and not c.inconclusive for c in identities):
            verdict = REFUTED
        else:
            verdict = INCONCLUSIVE
        return cls(claim, identities, verdict, dict(details or {}))

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def to_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "verdict": self.verdict,
            "identities": [c.to_dict() for c in self.identities],
        }
        if self.details:
            out["details"] = _jsonable(self.details)
        return out

    def summary_lines(self) -> list[str]:
        lines = [f"claim: {self.claim}"]
        for c in self.identities:
            status = "ok" if c.reduced_to_zero else ("inconclusive" if c.inconclusive else "FAIL")
            lines.append(f"  [{status}] {c.label}: {c.polynomial}")
        lines.append(f"verdict: {self.verdict}")
        return lines


def check_row(label: str, poly_or_text, ok: bool, definite: bool = True) -> IdentityCheck:
    """Row helper: a failed check on a non-confluent system is inconclusive."""
    text = poly_or_text if isinstance(poly_or_text, str) else poly_or_text.render()
    return IdentityCheck(label, text, ok, inconclusive=(not ok and not definite))


def merge_verdicts(verdicts) -> str:
    verdicts = list(verdicts)
    if any(v == REFUTED for v in verdicts):
        return REFUTED
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return VERIFIED


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class RunReport:
    """Top-level payload emitted by a CLI invocation."""

    command: list[str]
    config: dict
    reports: list
    verdict: str
    wall_time_s: float = 0.0

    def to_dict(self) -> dict:
        return {
            "command": list(self.command),
            "config": _jsonable(self.config),
            "reports": [r.to_dict() if hasattr(r, "to_dict") else _jsonable(r)
                        for r in self.reports],
            "verdict": self.verdict,
            "wall_time_s": self.wall_time_s,
        }
