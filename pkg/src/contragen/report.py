"""JSON report schema: the canonical audit artifact of a pipeline run.

A report captures one construction end to end: metadata, the clause list,
every theorem with its conclusion and certification status, and (when the
interpretation stage ran) explanations and the ranked summary. Reports
round-trip losslessly through JSON; the timestamp is the only field that
varies between otherwise identical runs and is excluded from golden-file
comparisons. See docs/report_schema.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional, Sequence

from . import __version__
from .core import Clause, ClauseSet, Signature, parse_literal
from .explain import Explanation, RankedEntry, RankedReport
from .generator import CERT_UNCHECKED, Ftsc, Theorem

SCHEMA_VERSION = 1
TOOL_NAME = "contragen"


@dataclass(frozen=True)
class TheoremRecord:
    removed_index: int
    conclusion: tuple[str, ...]
    certified: str
    trace_steps: int
    trace_replayed: Optional[bool] = None


@dataclass(frozen=True)
class Report:
    n: int
    permutation: tuple[str, ...]
    signature: tuple[tuple[str, int], ...]
    clauses: tuple[tuple[str, ...], ...]
    theorems: tuple[TheoremRecord, ...]
    scenario: Optional[str] = None
    explanations: tuple[Explanation, ...] = ()
    ranking: Optional[RankedReport] = None
    timestamp: str = ""
    tool: str = TOOL_NAME
    version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        data: dict = {
            "schema_version": self.schema_version,
            "metadata": {
                "tool": self.tool,
                "version": self.version,
                "timestamp": self.timestamp,
                "scenario": self.scenario,
                "n": self.n,
                "permutation": list(self.permutation),
            },
            "signature": [
                {"symbol": s, "arity": a} for s, a in self.signature
            ],
            "clauses": [list(c) for c in self.clauses],
            "theorems": [
                {
                    "removed_index": t.removed_index,
                    "conclusion": list(t.conclusion),
                    "certified": t.certified,
                    "trace_steps": t.trace_steps,
                    "trace_replayed": t.trace_replayed,
                }
                for t in self.theorems
            ],
            "explanations": [
                {
                    "scenario": e.scenario,
                    "permutation": list(e.permutation),
                    "removed_index": e.removed_index,
                    "role_label": e.role_label,
                    "narrative": e.narrative,
                    "remediation": e.remediation,
                    "provenance": e.provenance,
                    "declared_priority": e.declared_priority,
                    "model_score": e.model_score,
                    "warnings": list(e.warnings),
                }
                for e in self.explanations
            ],
            "ranking": None,
        }
        if self.ranking is not None:
            data["ranking"] = {
                "policy": self.ranking.policy,
                "entries": [
                    {
                        "scenario": entry.explanation.scenario,
                        "removed_index": entry.explanation.removed_index,
                        "priority": entry.priority,
                        "score": entry.score,
                        "remediation": entry.explanation.remediation,
                    }
                    for entry in self.ranking.entries
                ],
            }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        meta = data["metadata"]
        explanations = []
        explanation_by_key = {}
        for e in data.get("explanations", []):
            exp = Explanation(
                scenario=e["scenario"],
                permutation=tuple(e["permutation"]),
                removed_index=e["removed_index"],
                role_label=e["role_label"],
                narrative=e["narrative"],
                remediation=e["remediation"],
                provenance=e["provenance"],
                declared_priority=e.get("declared_priority"),
                model_score=e.get("model_score"),
                warnings=tuple(e.get("warnings", [])),
            )
            explanations.append(exp)
            explanation_by_key[(exp.scenario, exp.removed_index)] = exp
        ranking = None
        if data.get("ranking"):
            entries = []
            for entry in data["ranking"]["entries"]:
                key = (entry["scenario"], entry["removed_index"])
                exp = explanation_by_key.get(key)
                if exp is None:
                    raise ValueError(
                        f"ranking references unknown explanation {key}"
                    )
                entries.append(
                    RankedEntry(exp, entry["priority"], entry["score"])
                )
            ranking = RankedReport(tuple(entries), data["ranking"]["policy"])
        return cls(
            n=meta["n"],
            permutation=tuple(meta["permutation"]),
            signature=tuple(
                (s["symbol"], s["arity"]) for s in data["signature"]
            ),
            clauses=tuple(tuple(c) for c in data["clauses"]),
            theorems=tuple(
                TheoremRecord(
                    removed_index=t["removed_index"],
                    conclusion=tuple(t["conclusion"]),
                    certified=t["certified"],
                    trace_steps=t["trace_steps"],
                    trace_replayed=t.get("trace_replayed"),
                )
                for t in data["theorems"]
            ),
            scenario=meta.get("scenario"),
            explanations=tuple(explanations),
            ranking=ranking,
            timestamp=meta.get("timestamp", ""),
            tool=meta.get("tool", TOOL_NAME),
            version=meta.get("version", __version__),
            schema_version=data.get("schema_version", SCHEMA_VERSION),
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def current_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def build_report(
    ftsc: Ftsc,
    theorems: Sequence[Theorem],
    *,
    scenario: Optional[str] = None,
    explanations: Sequence[Explanation] = (),
    ranking: Optional[RankedReport] = None,
    replay_results: Optional[Sequence[bool]] = None,
    timestamp: Optional[str] = None,
) -> Report:
    sig = ftsc.signature
    records = []
    for pos, theorem in enumerate(theorems):
        replayed = None
        if replay_results is not None:
            replayed = bool(replay_results[pos])
        records.append(
            TheoremRecord(
                removed_index=theorem.removed_index,
                conclusion=tuple(str(l) for l in theorem.conclusion),
                certified=theorem.certified,
                trace_steps=len(theorem.trace) if theorem.trace else 0,
                trace_replayed=replayed,
            )
        )
    return Report(
        n=ftsc.n,
        permutation=ftsc.permutation,
        signature=tuple(zip(sig.symbols, sig.arities)),
        clauses=tuple(
            tuple(str(l) for l in clause.literals)
            for clause in ftsc.clause_set.clauses
        ),
        theorems=tuple(records),
        scenario=scenario,
        explanations=tuple(explanations),
        ranking=ranking,
        timestamp=timestamp if timestamp is not None else current_timestamp(),
    )


def clause_set_from_report(report: Report) -> ClauseSet:
    """Rebuild the clause set exactly as recorded."""
    signature = Signature(
        tuple(s for s, _ in report.signature),
        tuple(a for _, a in report.signature),
    )
    clauses = tuple(
        Clause(tuple(parse_literal(text) for text in clause))
        for clause in report.clauses
    )
    return ClauseSet(clauses, signature)


def theorems_from_report(report: Report) -> list[Theorem]:
    """Rebuild bare theorems (no traces) for re-verification."""
    clause_set = clause_set_from_report(report)
    ftsc = Ftsc(clause_set, report.permutation, report.n)
    return [
        Theorem(
            source=ftsc,
            removed_index=t.removed_index,
            conclusion=tuple(parse_literal(text) for text in t.conclusion),
            trace=None,
            certified=CERT_UNCHECKED,
        )
        for t in report.theorems
    ]
