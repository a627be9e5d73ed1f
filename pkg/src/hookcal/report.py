from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from hookcal._arith import format_exact


class Identity(str, enum.Enum):
    EQ1 = "Eq1"
    EQ2 = "Eq2"
    EQ3 = "Eq3-vs-closed-form"
    EQ4 = "Eq4"
    EQ5 = "Eq5"
    SPLIT = "split-relation"
    LINK = "F-equals-nplus1-Tnplus1"


# CLI short names, in the order reports are emitted
IDENTITY_KEYS = {
    "eq1": Identity.EQ1,
    "eq2": Identity.EQ2,
    "eq3": Identity.EQ3,
    "eq4": Identity.EQ4,
    "eq5": Identity.EQ5,
    "split": Identity.SPLIT,
    "link": Identity.LINK,
}
_ORDER = {ident: i for i, ident in enumerate(IDENTITY_KEYS.values())}


@dataclass(frozen=True)
class VerificationReport:
    """Both sides of one identity at one ``n``, and how each side was obtained.

    ``verified`` is always ``lhs == rhs`` (exact); it is derived, not stored.
    """

    identity: Identity
    n: int
    lhs: Fraction
    rhs: Fraction
    method_lhs: str
    method_rhs: str
    object_count: int = 0
    elapsed_ms: int = 0

    @property
    def verified(self) -> bool:
        return self.lhs == self.rhs

    def sort_key(self) -> tuple[int, int, str, str]:
        return (_ORDER[self.identity], self.n, self.method_lhs, self.method_rhs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity.value,
            "n": self.n,
            "lhs": format_exact(self.lhs),
            "rhs": format_exact(self.rhs),
            "method_lhs": self.method_lhs,
            "method_rhs": self.method_rhs,
            "object_count": self.object_count,
            "verified": self.verified,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> VerificationReport:
        report = cls(
            identity=Identity(d["identity"]),
            n=int(d["n"]),
            lhs=Fraction(d["lhs"]),
            rhs=Fraction(d["rhs"]),
            method_lhs=d["method_lhs"],
            method_rhs=d["method_rhs"],
            object_count=int(d["object_count"]),
            elapsed_ms=int(d["elapsed_ms"]),
        )
        if "verified" in d and bool(d["verified"]) != report.verified:
            raise ValueError(f"inconsistent 'verified' flag for {d['identity']} n={d['n']}")
        return report

    def without_timing(self) -> VerificationReport:
        return VerificationReport(
            self.identity, self.n, self.lhs, self.rhs, self.method_lhs, self.method_rhs, self.object_count, 0
        )
