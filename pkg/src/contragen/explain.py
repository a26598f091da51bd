"""Interpretation layer: scenarios, narrative templates, ranking, model client.

A scenario binds abstract atoms to a domain: human-readable glosses, the
source rule sentences a dependency clause formalizes, remediation
suggestions keyed by clause index, and optional priority declarations.
Scenario files are YAML; see docs/scenario_format.md for the field spec.

Narratives come from deterministic templates by default. An external
language model can be plugged in over HTTP to rewrite narratives and score
salience, but it can never fail the pipeline: any client problem degrades
to the template output with a recorded warning, and the provenance field
always states truthfully which path produced the text.

Only certified theorems are verbalized. Refusing to narrate an unverified
entailment is deliberate: every explanation must be backed by a checked
proof.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Mapping, Optional, Sequence, Union

import yaml

from .core import (
    EmptyInputError,
    Literal,
    Signature,
    validate_input,
)
from .fol import GroundingDomain, PredicateAtom, const, ground_atoms, var
from .generator import CERT_VERIFIED, Ftsc, Theorem, build_ftsc

# Role vocabulary for removal indices. The first and last clauses have
# fixed structural readings; interior clauses are read off their position
# in the dependency chain. With only two literals the single conditional
# clause is both the first and the last link, so it gets the generic label.
ROLE_BASE = "base-overconstraint"
ROLE_LOCAL = "local-conditional"
ROLE_INTERMEDIATE = "intermediate-causal"
ROLE_TERMINAL = "treatment/terminal"
ROLE_GLOBAL = "global-unsat"
ROLE_GENERIC = "generic-chain"

ROLE_LABELS = (
    ROLE_BASE,
    ROLE_LOCAL,
    ROLE_INTERMEDIATE,
    ROLE_TERMINAL,
    ROLE_GLOBAL,
    ROLE_GENERIC,
)

PRIORITIES = ("High", "Medium", "Low")

PROVENANCE_TEMPLATE = "template"
PROVENANCE_MODEL = "external-model"

ENDPOINT_ENV = "CONTRAGEN_MODEL_ENDPOINT"
API_KEY_ENV = "CONTRAGEN_MODEL_KEY"

#: Version tag for the request text template; bump when the wording changes
#: so recorded client fixtures stay replayable.
PROMPT_VERSION = "1"

_TRACE_SUMMARY_TEMPLATE = (
    "[v{version}] Entailment {index} of {total}: with dependency clause "
    "{index} removed, the remaining clauses stay satisfiable yet refute the "
    "removed clause. Trace: {steps} steps ({kinds})."
)


class ScenarioParseError(ValueError):
    """The scenario document is not parseable; carries line info when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class SchemaViolationError(ValueError):
    """The scenario document parsed but does not match the schema."""


class UncertifiedTheoremError(ValueError):
    """Only verified theorems may be explained."""


class ArityMismatchError(ValueError):
    """Scenario shape does not match the theorem it should explain."""


class ModelClientError(RuntimeError):
    """The external model could not produce a usable response."""


@dataclass(frozen=True)
class ScenarioAtom:
    symbol: str
    arity: int
    args: tuple[str, ...]
    variables: frozenset[str]
    gloss: str

    def predicate(self) -> PredicateAtom:
        terms = tuple(
            var(a) if a in self.variables else const(a) for a in self.args
        )
        return PredicateAtom(self.symbol, terms)


@dataclass(frozen=True)
class RemediationRule:
    clause_index: int
    suggestion_text: str
    formal_annotation: Optional[str] = None


@dataclass(frozen=True)
class Scenario:
    """A named registry binding abstract literals to domain meanings."""

    name: str
    domain_label: str
    atoms: tuple[ScenarioAtom, ...]
    grounding: tuple[tuple[str, tuple[str, ...]], ...] = ()
    rule_texts: tuple[tuple[int, str], ...] = ()
    remediations: tuple[RemediationRule, ...] = ()
    priorities: tuple[tuple[int, str], ...] = ()

    @property
    def n(self) -> int:
        return len(self.atoms)

    def predicate_atoms(self) -> tuple[PredicateAtom, ...]:
        return tuple(a.predicate() for a in self.atoms)

    def grounding_domain(self) -> GroundingDomain:
        return GroundingDomain(self.grounding)

    def instances(self) -> list[list[Literal]]:
        """Ground literal lists, one per constant combination."""
        return ground_atoms(self.predicate_atoms(), self.grounding_domain())

    def signatures(self) -> list[Signature]:
        return [
            validate_input(lits, arities=[a.arity for a in self.atoms])
            for lits in self.instances()
        ]

    def ftscs(self) -> list[Ftsc]:
        """One triangular construction per ground instance, identity order."""
        return [build_ftsc(sig) for sig in self.signatures()]

    def rule_text_for(self, index: int) -> Optional[str]:
        for i, text in self.rule_texts:
            if i == index:
                return text
        return None

    def remediation_for(self, index: int) -> Optional[RemediationRule]:
        for rule in self.remediations:
            if rule.clause_index == index:
                return rule
        return None

    def priority_for(self, index: int) -> Optional[str]:
        for i, p in self.priorities:
            if i == index:
                return p
        return None

    def gloss_map(self, signature: Signature) -> dict[str, str]:
        """Map each signature symbol to its gloss.

        Works by re-grounding the scenario and matching the instance whose
        symbols coincide with the signature (in any order), so permuted
        constructions and predicates that repeat under different constant
        arguments both resolve correctly.
        """
        if signature.size != self.n:
            raise ArityMismatchError(
                f"scenario {self.name!r} declares {self.n} atoms, "
                f"signature has {signature.size} symbols"
            )
        wanted = set(signature.symbols)
        for lits in self.instances():
            symbols = [l.symbol for l in lits]
            if set(symbols) == wanted:
                return {
                    sym: self.atoms[pos].gloss for pos, sym in enumerate(symbols)
                }
        raise ArityMismatchError(
            f"signature symbols do not match any ground instance of "
            f"scenario {self.name!r}"
        )


def _require(mapping: Mapping, key: str, kind: type, where: str):
    if key not in mapping:
        raise SchemaViolationError(f"{where}: missing required field {key!r}")
    value = mapping[key]
    if not isinstance(value, kind):
        raise SchemaViolationError(
            f"{where}: field {key!r} must be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _parse_index(value, n: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaViolationError(f"{where}: clause index must be an integer")
    if not 1 <= value <= n + 1:
        raise SchemaViolationError(
            f"{where}: clause index {value} out of range 1..{n + 1}"
        )
    return value


def _scenario_from_document(doc, source_name: str) -> Scenario:
    if not isinstance(doc, dict):
        raise SchemaViolationError(f"{source_name}: document must be a mapping")
    name = _require(doc, "name", str, source_name)
    domain_label = _require(doc, "domain", str, source_name)
    raw_atoms = _require(doc, "atoms", list, source_name)
    if not raw_atoms:
        raise SchemaViolationError(f"{source_name}: atoms list must be nonempty")

    atoms = []
    for pos_i, entry in enumerate(raw_atoms, start=1):
        where = f"{source_name}: atoms[{pos_i}]"
        if not isinstance(entry, dict):
            raise SchemaViolationError(f"{where}: each atom must be a mapping")
        symbol = _require(entry, "symbol", str, where)
        gloss = _require(entry, "gloss", str, where)
        args = tuple(entry.get("args") or ())
        if not all(isinstance(a, str) for a in args):
            raise SchemaViolationError(f"{where}: args must be strings")
        arity = entry.get("arity", len(args))
        if arity != len(args):
            raise SchemaViolationError(
                f"{where}: arity {arity} disagrees with {len(args)} args"
            )
        variables = frozenset(entry.get("variables") or ())
        unknown = variables - set(args)
        if unknown:
            raise SchemaViolationError(
                f"{where}: variables {sorted(unknown)} do not appear in args"
            )
        atoms.append(ScenarioAtom(symbol, arity, args, variables, gloss))

    grounding_raw = doc.get("grounding") or {}
    if not isinstance(grounding_raw, dict):
        raise SchemaViolationError(f"{source_name}: grounding must be a mapping")
    grounding = tuple(
        (str(k), tuple(str(c) for c in v)) for k, v in grounding_raw.items()
    )

    n = len(atoms)
    rule_texts_raw = doc.get("rule_texts") or {}
    if not isinstance(rule_texts_raw, dict):
        raise SchemaViolationError(f"{source_name}: rule_texts must be a mapping")
    rule_texts = tuple(
        (_parse_index(k, n, f"{source_name}: rule_texts"), str(v))
        for k, v in rule_texts_raw.items()
    )

    remediations = []
    for pos_i, entry in enumerate(doc.get("remediations") or [], start=1):
        where = f"{source_name}: remediations[{pos_i}]"
        if not isinstance(entry, dict):
            raise SchemaViolationError(f"{where}: each remediation must be a mapping")
        index = _parse_index(_require(entry, "index", int, where), n, where)
        text = _require(entry, "text", str, where)
        if not text.strip():
            raise SchemaViolationError(f"{where}: text must be nonempty")
        formal = entry.get("formal")
        remediations.append(RemediationRule(index, text, formal))

    priorities_raw = doc.get("priorities") or {}
    if not isinstance(priorities_raw, dict):
        raise SchemaViolationError(f"{source_name}: priorities must be a mapping")
    priorities = []
    for k, v in priorities_raw.items():
        index = _parse_index(k, n, f"{source_name}: priorities")
        if v not in PRIORITIES:
            raise SchemaViolationError(
                f"{source_name}: priority for index {index} must be one of {PRIORITIES}"
            )
        priorities.append((index, v))

    scenario = Scenario(
        name=name,
        domain_label=domain_label,
        atoms=tuple(atoms),
        grounding=grounding,
        rule_texts=rule_texts,
        remediations=tuple(remediations),
        priorities=tuple(priorities),
    )
    # Admission check up front: every ground instance must be a valid
    # literal list (this surfaces duplicate or complementary atoms here
    # rather than later, mid-pipeline).
    scenario.signatures()
    return scenario


def load_scenario_text(text: str, source_name: str = "<scenario>") -> Scenario:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        line = None
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            line = mark.line + 1
        raise ScenarioParseError(str(exc), line) from exc
    return _scenario_from_document(doc, source_name)


def load_scenario(source: Union[str, Path, IO[str]]) -> Scenario:
    """Load and validate a scenario from a YAML file path or open file."""
    if hasattr(source, "read"):
        return load_scenario_text(source.read(), getattr(source, "name", "<scenario>"))
    path = Path(source)
    return load_scenario_text(path.read_text(encoding="utf-8"), str(path))


def role_for_index(removed_index: int, n: int) -> str:
    """The structural reading of removing clause ``removed_index`` from an
    n-literal chain. Total over 1..n+1."""
    if not 1 <= removed_index <= n + 1:
        raise IndexError(f"removed index out of range: {removed_index}")
    if removed_index == 1:
        return ROLE_BASE
    if removed_index == n + 1:
        return ROLE_GLOBAL
    if n == 2:
        return ROLE_GENERIC
    if removed_index == 2:
        return ROLE_LOCAL
    if removed_index == n:
        return ROLE_TERMINAL
    return ROLE_INTERMEDIATE


_GENERIC_REMEDIATION = {
    ROLE_BASE: (
        "Add evidence requirements or preconditions before asserting the base "
        "predicate on its own."
    ),
    ROLE_LOCAL: (
        "Add thresholds or exceptions so the first conditional rule does not "
        "fire unconditionally."
    ),
    ROLE_INTERMEDIATE: (
        "Qualify the intermediate dependency with contextual conditions."
    ),
    ROLE_TERMINAL: (
        "Add qualifying criteria before the terminal obligation triggers "
        "automatically."
    ),
    ROLE_GLOBAL: (
        "Relax at least one upstream dependency, or add contextual qualifiers, "
        "so that the conditions no longer have to hold jointly."
    ),
    ROLE_GENERIC: (
        "Revise the flagged dependency so the remaining rules no longer force "
        "its negation."
    ),
}

_ROLE_SENTENCES = {
    ROLE_BASE: "The base assertion {focus} is overconstrained: the downstream "
    "dependencies leave it no consistent way to hold on its own.",
    ROLE_LOCAL: "The first conditional link breaks: {focus} cannot hold together "
    "with its trigger under the remaining rules.",
    ROLE_INTERMEDIATE: "An intermediate link of the dependency chain conflicts: "
    "{focus} is incompatible with its upstream conditions.",
    ROLE_TERMINAL: "The terminal obligation {focus} cannot coexist with the "
    "accumulated upstream conditions.",
    ROLE_GLOBAL: "The joint consistency constraint fails: all {count} conditions "
    "cannot hold at once, so the rule set as a whole is unsatisfiable.",
    ROLE_GENERIC: "The dependency chain as a whole rejects this clause: each of "
    "its branches is refuted by the remaining rules.",
}


@dataclass(frozen=True)
class Explanation:
    """A rendered reading of one certified theorem."""

    scenario: str
    permutation: tuple[str, ...]
    removed_index: int
    role_label: str
    narrative: str
    remediation: str
    provenance: str
    declared_priority: Optional[str] = None
    model_score: Optional[float] = None
    warnings: tuple[str, ...] = ()

    @property
    def theorem_ref(self) -> tuple[tuple[str, ...], int]:
        return (self.permutation, self.removed_index)

    @property
    def n(self) -> int:
        return len(self.permutation)


def _conjunct_phrase(lit: Literal, glosses: Mapping[str, str]) -> str:
    gloss = glosses.get(lit.symbol, lit.symbol)
    if lit.negated:
        return f"{lit.symbol} must fail"
    return f"{lit.symbol} must hold ({gloss})"


def verbalize(theorem: Theorem, scenario: Scenario) -> Explanation:
    """Deterministic template rendering of one certified theorem.

    Pure function: identical inputs yield byte-identical narratives.
    Raises UncertifiedTheoremError for anything not verified and
    ArityMismatchError when the scenario shape does not fit the theorem.
    """
    if theorem.certified != CERT_VERIFIED:
        raise UncertifiedTheoremError(
            f"theorem (removed index {theorem.removed_index}) is "
            f"{theorem.certified}; only verified theorems are explained"
        )
    ftsc = theorem.source
    glosses = scenario.gloss_map(ftsc.signature)
    i = theorem.removed_index
    n = ftsc.n
    role = role_for_index(i, n)
    clause = theorem.removed_clause

    if i <= n:
        focus_symbol = ftsc.permutation[i - 1]
    else:
        focus_symbol = ftsc.permutation[-1]
    focus = f"'{focus_symbol}' ({glosses.get(focus_symbol, focus_symbol)})"

    parts = [
        f"Dependency clause {i} of {n + 1} ({clause}) is a minimal conflict "
        f"source in scenario '{scenario.name}'.",
        _ROLE_SENTENCES[role].format(focus=focus, count=n),
    ]
    rule_text = scenario.rule_text_for(i)
    if rule_text:
        parts.append(f'It formalizes the rule: "{rule_text}"')
    conjuncts = "; ".join(_conjunct_phrase(l, glosses) for l in theorem.conclusion)
    parts.append(
        f"Removing clause {i} leaves the remaining {n} clauses jointly "
        f"satisfiable, yet they refute every branch of the removed clause: "
        f"{conjuncts}."
    )
    rule = scenario.remediation_for(i)
    remediation = rule.suggestion_text if rule else _GENERIC_REMEDIATION[role]
    parts.append(f"Suggested remediation: {remediation}")

    return Explanation(
        scenario=scenario.name,
        permutation=ftsc.permutation,
        removed_index=i,
        role_label=role,
        narrative=" ".join(parts),
        remediation=remediation,
        provenance=PROVENANCE_TEMPLATE,
        declared_priority=scenario.priority_for(i),
    )


# --- Ranking -----------------------------------------------------------

_PRIORITY_SCORES = {"High": 0.9, "Medium": 0.6, "Low": 0.3}


@dataclass(frozen=True)
class RankedEntry:
    explanation: Explanation
    priority: str
    score: float


@dataclass(frozen=True)
class RankedReport:
    entries: tuple[RankedEntry, ...]
    policy: str


class DefaultRankingPolicy:
    """Deterministic scoring from declared priorities.

    Declared priorities are authoritative and map straight to scores
    (High 0.9, Medium 0.6, Low 0.3). Within a (scenario, permutation)
    group that declares at least one priority, undeclared entries rate
    Low so the declarations keep their discriminating power. Only when a
    group declares nothing does the fallback heuristic apply: the joint
    consistency clause rates Medium, the earliest conditional clause
    rates High, and everything else rates Low. The heuristic is a
    configuration of this artifact, not a reproduction of any particular
    scoring scheme.
    """

    name = "default"

    def evaluate(self, explanations: Sequence[Explanation]) -> list[tuple[str, float]]:
        GroupKey = tuple[str, tuple[str, ...]]
        declared_groups: set[GroupKey] = set()
        earliest: dict[GroupKey, int] = {}
        for e in explanations:
            key = (e.scenario, e.permutation)
            if e.declared_priority is not None:
                declared_groups.add(key)
            elif 2 <= e.removed_index <= e.n:
                if key not in earliest or e.removed_index < earliest[key]:
                    earliest[key] = e.removed_index
        results = []
        for e in explanations:
            key = (e.scenario, e.permutation)
            if e.declared_priority is not None:
                priority = e.declared_priority
            elif key in declared_groups:
                priority = "Low"
            elif e.removed_index == e.n + 1:
                priority = "Medium"
            elif earliest.get(key) == e.removed_index:
                priority = "High"
            else:
                priority = "Low"
            results.append((priority, _PRIORITY_SCORES[priority]))
        return results


class ModelRankingPolicy:
    """Scores from an external model where available, clamped to [0, 1].

    Entries with no model score fall back to the default policy. Priority
    labels derive from score thresholds so the label ordering always
    agrees with the numeric ordering.
    """

    name = "external-model"

    def __init__(self, high_threshold: float = 0.75, medium_threshold: float = 0.45):
        self.high_threshold = high_threshold
        self.medium_threshold = medium_threshold

    def evaluate(self, explanations: Sequence[Explanation]) -> list[tuple[str, float]]:
        fallback = DefaultRankingPolicy().evaluate(explanations)
        results = []
        for e, (fb_priority, fb_score) in zip(explanations, fallback):
            if e.model_score is None:
                results.append((fb_priority, fb_score))
                continue
            score = min(1.0, max(0.0, float(e.model_score)))
            if score >= self.high_threshold:
                priority = "High"
            elif score >= self.medium_threshold:
                priority = "Medium"
            else:
                priority = "Low"
            results.append((priority, score))
        return results


def rank(
    explanations: Sequence[Explanation], policy=None
) -> RankedReport:
    """Order explanations by score, descending.

    Deterministic and input-order independent: ties break by scenario name
    and then by removed index ascending. Raises EmptyInputError on an
    empty list.
    """
    if not explanations:
        raise EmptyInputError("nothing to rank")
    if policy is None:
        policy = DefaultRankingPolicy()
    assessed = policy.evaluate(explanations)
    entries = [
        RankedEntry(e, priority, score)
        for e, (priority, score) in zip(explanations, assessed)
    ]
    entries.sort(
        key=lambda entry: (
            -entry.score,
            entry.explanation.scenario,
            entry.explanation.removed_index,
        )
    )
    return RankedReport(tuple(entries), policy.name)


# --- External model client ---------------------------------------------


def trace_summary(theorem: Theorem) -> str:
    """Versioned text summary of a theorem's proof trace for model prompts."""
    steps = theorem.trace.steps if theorem.trace else ()
    kinds = ", ".join(s.kind for s in steps) if steps else "none"
    return _TRACE_SUMMARY_TEMPLATE.format(
        version=PROMPT_VERSION,
        index=theorem.removed_index,
        total=theorem.source.n + 1,
        steps=len(steps),
        kinds=kinds,
    )


def build_model_request(theorem: Theorem, scenario: Scenario) -> dict:
    """The wire request: {scenario, clauses, removed_index, trace_summary}."""
    glosses = scenario.gloss_map(theorem.source.signature)
    return {
        "scenario": {
            "name": scenario.name,
            "domain": scenario.domain_label,
            "glosses": glosses,
        },
        "clauses": [
            [str(l) for l in clause.literals]
            for clause in theorem.source.clause_set.clauses
        ],
        "removed_index": theorem.removed_index,
        "trace_summary": trace_summary(theorem),
    }


class StaticModelClient:
    """Test/fixture client: replays a recorded response (or raises)."""

    def __init__(self, response: Optional[dict] = None, error: Optional[Exception] = None):
        self.response = response
        self.error = error
        self.requests: list[dict] = []

    def complete(self, request: dict) -> dict:
        self.requests.append(request)
        if self.error is not None:
            raise self.error
        return dict(self.response or {})


class HttpModelClient:
    """Minimal JSON-over-HTTP client.

    Endpoint and key come from the constructor or from the
    CONTRAGEN_MODEL_ENDPOINT / CONTRAGEN_MODEL_KEY environment variables.
    Any transport or decoding problem raises ModelClientError.
    """

    def __init__(
        self,
        endpoint: Optional[str] = None,
        api_key: Optional[str] = None,
        timeout: float = 10.0,
    ):
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV)
        self.api_key = api_key or os.environ.get(API_KEY_ENV)
        self.timeout = timeout

    @property
    def configured(self) -> bool:
        return bool(self.endpoint)

    def complete(self, request: dict) -> dict:
        if not self.endpoint:
            raise ModelClientError("no model endpoint configured")
        body = json.dumps(request).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        req = urllib.request.Request(self.endpoint, data=body, headers=headers)
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                payload = resp.read()
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise ModelClientError(f"model request failed: {exc}") from exc
        try:
            decoded = json.loads(payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ModelClientError(f"model response was not JSON: {exc}") from exc
        if not isinstance(decoded, dict):
            raise ModelClientError("model response must be a JSON object")
        return decoded


def _validate_model_response(response: dict) -> tuple[str, Optional[str], float]:
    narrative = response.get("narrative")
    if not isinstance(narrative, str) or not narrative.strip():
        raise ModelClientError("response field 'narrative' must be a nonempty string")
    remediation = response.get("remediation")
    if remediation is not None and not isinstance(remediation, str):
        raise ModelClientError("response field 'remediation' must be a string")
    score = response.get("score")
    if not isinstance(score, (int, float)) or isinstance(score, bool):
        raise ModelClientError("response field 'score' must be a number")
    return narrative, remediation, float(score)


def explain_via_model(
    theorem: Theorem, scenario: Scenario, client=None
) -> Explanation:
    """Explain through the external model, degrading safely to templates.

    The request carries the clause set, the removed index, and a versioned
    trace summary; the response must supply {narrative, remediation,
    score}. On any client failure the template explanation is returned
    with a warning recorded, so this function never raises for transport
    or schema problems. The theorem must still be certified.
    """
    template = verbalize(theorem, scenario)
    if client is None:
        client = HttpModelClient()
    if isinstance(client, HttpModelClient) and not client.configured:
        return replace(
            template,
            warnings=template.warnings
            + ("no model endpoint configured; template output used",),
        )
    try:
        response = client.complete(build_model_request(theorem, scenario))
        narrative, remediation, score = _validate_model_response(response)
    except Exception as exc:  # degradation contract: never fail the pipeline
        return replace(
            template,
            warnings=template.warnings
            + (f"external model unavailable ({exc}); template output used",),
        )
    return replace(
        template,
        narrative=narrative,
        remediation=remediation if remediation else template.remediation,
        provenance=PROVENANCE_MODEL,
        model_score=min(1.0, max(0.0, score)),
    )
