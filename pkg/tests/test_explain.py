"""Scenario loading, template verbalization, ranking, model-client degradation."""

import pytest

from contragen import (
    ArityMismatchError,
    DuplicateSymbolError,
    HttpModelClient,
    ModelClientError,
    ModelRankingPolicy,
    EmptyInputError,
    ScenarioParseError,
    SchemaViolationError,
    StaticModelClient,
    UncertifiedTheoremError,
    check_theorem,
    derive_theorems,
    explain_via_model,
    load_scenario,
    load_scenario_text,
    rank,
    role_for_index,
    verbalize,
)
from contragen.explain import (
    PROVENANCE_MODEL,
    PROVENANCE_TEMPLATE,
    ROLE_BASE,
    ROLE_GENERIC,
    ROLE_GLOBAL,
    ROLE_INTERMEDIATE,
    ROLE_LOCAL,
    ROLE_TERMINAL,
    build_model_request,
)

MINIMAL_SCENARIO = """
name: minimal
domain: Test
atoms:
  - symbol: OnlyFact
    gloss: the single fact
"""


def certified_theorems(scenario):
    ftsc = scenario.ftscs()[0]
    return ftsc, [check_theorem(t) for t in derive_theorems(ftsc)]


class TestLoadScenario:
    def test_healthcare_fixture(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "healthcare_data_sharing.yaml")
        assert scenario.n == 5
        assert [a.symbol for a in scenario.atoms] == [
            "HoldsData",
            "SharesData",
            "HasConsent",
            "Encrypts",
            "Retains",
        ]
        assert scenario.priority_for(3) == "High"
        assert scenario.remediation_for(3).suggestion_text == (
            "Require explicit consent or anonymization before sharing."
        )
        assert scenario.remediation_for(5).formal_annotation is not None

    def test_contract_fixture(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "contract_terms.yaml")
        assert [a.symbol for a in scenario.atoms] == [
            "ExclusiveSupply",
            "TimelyDelivery",
            "PenaltyForDelay",
            "TerminationWithoutCause",
            "FixedPricing",
        ]

    def test_duplicate_atom_rejected(self):
        text = """
name: dup
domain: Test
atoms:
  - {symbol: A, gloss: first}
  - {symbol: A, gloss: second}
"""
        with pytest.raises(DuplicateSymbolError):
            load_scenario_text(text)

    def test_yaml_error_carries_line(self):
        with pytest.raises(ScenarioParseError):
            load_scenario_text("name: [unclosed")

    @pytest.mark.parametrize(
        "mutation",
        [
            "name",  # missing name
            "atoms",  # missing atoms
        ],
    )
    def test_missing_required_field(self, mutation):
        base = {
            "name": "name: x",
            "atoms": "atoms:\n  - {symbol: A, gloss: g}",
        }
        text = "domain: Test\n"
        for key, chunk in base.items():
            if key != mutation:
                text += chunk + "\n"
        with pytest.raises(SchemaViolationError):
            load_scenario_text(text)

    def test_bad_priority_value(self):
        text = MINIMAL_SCENARIO + "priorities:\n  1: Urgent\n"
        with pytest.raises(SchemaViolationError):
            load_scenario_text(text)

    def test_remediation_index_range(self):
        text = MINIMAL_SCENARIO + "remediations:\n  - {index: 9, text: fix}\n"
        with pytest.raises(SchemaViolationError):
            load_scenario_text(text)

    def test_variable_not_in_args(self):
        text = """
name: bad
domain: Test
atoms:
  - {symbol: A, args: [x], variables: [y], gloss: g}
"""
        with pytest.raises(SchemaViolationError):
            load_scenario_text(text)


class TestRoles:
    def test_fixed_endpoints(self):
        assert role_for_index(1, 4) == ROLE_BASE
        assert role_for_index(5, 4) == ROLE_GLOBAL

    def test_interior_mapping_n4(self):
        assert role_for_index(2, 4) == ROLE_LOCAL
        assert role_for_index(3, 4) == ROLE_INTERMEDIATE
        assert role_for_index(4, 4) == ROLE_TERMINAL

    def test_two_literal_middle_is_generic(self):
        assert role_for_index(2, 2) == ROLE_GENERIC

    def test_totality(self):
        for n in range(1, 9):
            for i in range(1, n + 2):
                assert role_for_index(i, n)

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            role_for_index(0, 3)


class TestVerbalize:
    def test_medical_treatment_clause(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        explanation = verbalize(theorems[3], scenario)
        assert explanation.removed_index == 4
        assert explanation.role_label == ROLE_TERMINAL
        assert "RequiresAntibiotics" in explanation.narrative
        assert (
            "qualifying criteria before automatic antibiotic recommendation"
            in explanation.remediation.lower()
        )
        assert explanation.provenance == PROVENANCE_TEMPLATE

    def test_contract_termination_clause(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "contract_supply.yaml")
        _, theorems = certified_theorems(scenario)
        explanation = verbalize(theorems[3], scenario)
        assert explanation.remediation == (
            "Restrict termination rights to 'for cause' or require "
            "notice/compensation."
        )

    def test_minimal_scenario_generic_remediation(self):
        scenario = load_scenario_text(MINIMAL_SCENARIO)
        _, theorems = certified_theorems(scenario)
        explanation = verbalize(theorems[0], scenario)
        assert explanation.role_label == ROLE_BASE
        assert "base predicate" in explanation.remediation

    def test_rule_text_quoted(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        explanation = verbalize(theorems[1], scenario)
        assert "white-blood-cell count" in explanation.narrative

    def test_uncertified_rejected(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        ftsc = scenario.ftscs()[0]
        with pytest.raises(UncertifiedTheoremError):
            verbalize(derive_theorems(ftsc)[0], scenario)

    def test_arity_mismatch(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        other = load_scenario_text(MINIMAL_SCENARIO)
        _, theorems = certified_theorems(scenario)
        with pytest.raises(ArityMismatchError):
            verbalize(theorems[0], other)

    def test_deterministic(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        a = verbalize(theorems[2], scenario)
        b = verbalize(theorems[2], scenario)
        assert a == b
        assert a.narrative == b.narrative


class TestRank:
    def _explanations(self, scenario_dir, name, indices=None):
        scenario = load_scenario(scenario_dir / name)
        _, theorems = certified_theorems(scenario)
        chosen = theorems if indices is None else [
            t for t in theorems if t.removed_index in indices
        ]
        return [verbalize(t, scenario) for t in chosen]

    def test_declared_priorities_order(self, scenario_dir):
        # one scenario-shaped input with declarations on 3, 5, 6
        scenario = load_scenario(scenario_dir / "healthcare_data_sharing.yaml")
        from dataclasses import replace as dc_replace

        _, theorems = certified_theorems(scenario)
        explanations = [
            verbalize(t, scenario) for t in theorems if t.removed_index in (3, 5, 6)
        ]
        explanations = [
            dc_replace(e, declared_priority={3: "High", 5: "Medium", 6: "Low"}[e.removed_index])
            for e in explanations
        ]
        report = rank(explanations)
        assert [e.explanation.removed_index for e in report.entries] == [3, 5, 6]
        assert [e.priority for e in report.entries] == ["High", "Medium", "Low"]

    def test_single_entry(self, scenario_dir):
        explanations = self._explanations(scenario_dir, "medical.yaml", {2})
        report = rank(explanations)
        assert len(report.entries) == 1
        assert report.entries[0].score == pytest.approx(0.9)

    def test_tie_broken_by_removed_index(self, scenario_dir):
        explanations = self._explanations(scenario_dir, "medical.yaml", {1, 3, 4})
        report = rank(explanations)  # 3 is the earliest conditional; 1 and 4 tie on Low
        assert [e.explanation.removed_index for e in report.entries] == [3, 1, 4]
        assert report.entries[1].score == report.entries[2].score

    def test_input_order_irrelevant(self, scenario_dir):
        explanations = self._explanations(scenario_dir, "medical.yaml")
        forward = rank(explanations)
        backward = rank(list(reversed(explanations)))
        assert [e.explanation.removed_index for e in forward.entries] == [
            e.explanation.removed_index for e in backward.entries
        ]

    def test_priorities_never_inverted(self, scenario_dir):
        explanations = self._explanations(scenario_dir, "medical.yaml")
        report = rank(explanations)
        order = {"High": 0, "Medium": 1, "Low": 2}
        ranks = [order[e.priority] for e in report.entries]
        assert ranks == sorted(ranks)

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            rank([])

    def test_model_policy_clamps(self, scenario_dir):
        from dataclasses import replace as dc_replace

        explanations = self._explanations(scenario_dir, "medical.yaml", {1, 3})
        boosted = [
            dc_replace(explanations[0], model_score=7.5),
            dc_replace(explanations[1], model_score=-0.2),
        ]
        report = rank(boosted, policy=ModelRankingPolicy())
        assert report.entries[0].score == 1.0
        assert report.entries[1].score == 0.0
        assert report.entries[0].priority == "High"
        assert report.entries[1].priority == "Low"


class TestExplainViaModel:
    def test_fixture_roundtrip(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        client = StaticModelClient(
            {"narrative": "fixture text", "remediation": "fixture fix", "score": 0.8}
        )
        explanation = explain_via_model(theorems[2], scenario, client=client)
        assert explanation.narrative == "fixture text"
        assert explanation.remediation == "fixture fix"
        assert explanation.provenance == PROVENANCE_MODEL
        assert explanation.model_score == pytest.approx(0.8)
        # request carries the agreed wire schema
        request = client.requests[0]
        assert set(request) == {"scenario", "clauses", "removed_index", "trace_summary"}
        assert request["removed_index"] == 3

    def test_failing_client_degrades_to_template(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        client = StaticModelClient(error=ModelClientError("connection refused"))
        explanation = explain_via_model(theorems[2], scenario, client=client)
        assert explanation.provenance == PROVENANCE_TEMPLATE
        assert explanation.warnings
        assert "connection refused" in explanation.warnings[0]
        assert explanation.narrative == verbalize(theorems[2], scenario).narrative

    def test_schema_violation_degrades(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        client = StaticModelClient({"narrative": "", "score": "high"})
        explanation = explain_via_model(theorems[2], scenario, client=client)
        assert explanation.provenance == PROVENANCE_TEMPLATE
        assert explanation.warnings

    def test_unconfigured_endpoint_degrades(self, scenario_dir, monkeypatch):
        monkeypatch.delenv("CONTRAGEN_MODEL_ENDPOINT", raising=False)
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        explanation = explain_via_model(theorems[2], scenario)
        assert explanation.provenance == PROVENANCE_TEMPLATE
        assert "no model endpoint configured" in explanation.warnings[0]

    def test_unreachable_endpoint_degrades(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        client = HttpModelClient(endpoint="http://127.0.0.1:1/does-not-exist", timeout=0.2)
        explanation = explain_via_model(theorems[2], scenario, client=client)
        assert explanation.provenance == PROVENANCE_TEMPLATE
        assert explanation.warnings

    def test_uncertified_still_rejected(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        ftsc = scenario.ftscs()[0]
        client = StaticModelClient({"narrative": "x", "score": 0.5})
        with pytest.raises(UncertifiedTheoremError):
            explain_via_model(derive_theorems(ftsc)[0], scenario, client=client)

    def test_request_mentions_removed_clause(self, scenario_dir):
        scenario = load_scenario(scenario_dir / "medical.yaml")
        _, theorems = certified_theorems(scenario)
        request = build_model_request(theorems[3], scenario)
        assert request["removed_index"] == 4
        assert str(theorems[3].removed_index) in request["trace_summary"]
        assert len(request["clauses"]) == 5
