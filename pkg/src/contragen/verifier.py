"""Independent certification: satisfiability, minimality, entailment, replay.

Nothing in this module trusts generator metadata; every verdict is
recomputed from the clause lists. Satisfiability is decided two ways:

  * an exhaustive truth table for signatures up to TRUTH_TABLE_MAX_VARS
    symbols, bit-packed so each of the 2^n assignments is one bit of a
    big integer and each clause contributes its violated subcube with a
    handful of shifts;
  * a deterministic DPLL search (unit propagation, branch on the lowest
    unassigned signature index, true first) beyond that.

Both methods return the same witness when one exists: the model that is
lexicographically first under "lower signature index decided first, true
preferred". No clause learning, no heuristics, no randomness.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from .core import Clause, ClauseSet, Literal
from .generator import (
    CERT_FAILED,
    CERT_VERIFIED,
    STEP_ASSUME,
    STEP_DISCHARGE,
    STEP_EMPTY,
    STEP_PROPAGATE,
    STEP_UNIT,
    ProofTrace,
    Theorem,
)

TRUTH_TABLE_MAX_VARS = 16

METHOD_TRUTH_TABLE = "truth-table"
METHOD_DPLL = "dpll"


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Optional[dict[str, bool]]
    method: str

    @property
    def status(self) -> str:
        return "satisfiable" if self.satisfiable else "unsatisfiable"


@dataclass(frozen=True)
class MusReport:
    """Deletion-based minimality check: the set is minimal iff it is
    unsatisfiable and every single-clause deletion is satisfiable."""

    is_unsatisfiable: bool
    deletion_results: tuple[SatResult, ...]
    is_mus: bool


@dataclass(frozen=True)
class ReplayResult:
    """Outcome of replaying a proof trace; truthy iff every step was valid.

    ``established`` collects the literals the trace legitimately proved
    (units plus discharged conclusions). On failure, ``failed_step`` is the
    0-based index of the first invalid step and ``reason`` says why.
    """

    ok: bool
    failed_step: Optional[int]
    reason: Optional[str]
    established: frozenset[Literal]

    def __bool__(self) -> bool:
        return self.ok


@lru_cache(maxsize=None)
def _bit_pattern(n: int, j: int) -> int:
    """Bitmap over all 2^n assignment indices marking those with bit j set."""
    space = 1 << n
    width = 1 << (j + 1)
    block = ((1 << (1 << j)) - 1) << (1 << j)
    while width < space:
        block |= block << width
        width <<= 1
    return block


def _truth_table(clause_set: ClauseSet) -> SatResult:
    n = clause_set.signature.size
    space = 1 << n
    full = (1 << space) - 1
    violated = 0
    for ints in clause_set.int_clauses():
        pos_mask = 0
        neg_mask = 0
        for lit in ints:
            if lit > 0:
                pos_mask |= 1 << (lit - 1)
            else:
                neg_mask |= 1 << (-lit - 1)
        # Assignments violating the clause: all positive symbols false,
        # all negative symbols true; the rest free.
        block = 1 << neg_mask
        free = ((1 << n) - 1) & ~(pos_mask | neg_mask)
        j = 0
        while free:
            if free & 1:
                block |= block << (1 << j)
            free >>= 1
            j += 1
        violated |= block
        if violated == full:
            return SatResult(False, None, METHOD_TRUTH_TABLE)
    if violated == full:
        return SatResult(False, None, METHOD_TRUTH_TABLE)
    alive = full & ~violated
    # Preferred model: decide symbols in signature order, trying true first.
    chosen = 0
    for j in range(n):
        pattern = _bit_pattern(n, j)
        if alive & pattern:
            alive &= pattern
            chosen |= 1 << j
        else:
            alive &= ~pattern
    witness = {
        clause_set.signature.symbols[j]: bool(chosen >> j & 1) for j in range(n)
    }
    return SatResult(True, witness, METHOD_TRUTH_TABLE)


def _dpll(clause_set: ClauseSet) -> SatResult:
    clauses = clause_set.int_clauses()
    n = clause_set.signature.size

    def propagate(assign: dict[int, bool]) -> bool:
        """Unit propagation to fixpoint; False on a falsified clause."""
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned_lit = 0
                unassigned_count = 0
                satisfied = False
                for lit in clause:
                    val = assign.get(abs(lit))
                    if val is None:
                        unassigned_count += 1
                        if unassigned_count == 1:
                            unassigned_lit = lit
                    elif val == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if unassigned_count == 0:
                    return False
                if unassigned_count == 1:
                    assign[abs(unassigned_lit)] = unassigned_lit > 0
                    changed = True
        return True

    def satisfied_under(assign: dict[int, bool]) -> bool:
        return all(
            any(assign.get(abs(lit)) == (lit > 0) for lit in clause)
            for clause in clauses
        )

    def solve(assign: dict[int, bool]) -> Optional[dict[int, bool]]:
        if not propagate(assign):
            return None
        if satisfied_under(assign):
            return assign
        var = next(v for v in range(1, n + 1) if v not in assign)
        for value in (True, False):
            child = dict(assign)
            child[var] = value
            model = solve(child)
            if model is not None:
                return model
        return None

    model = solve({})
    if model is None:
        return SatResult(False, None, METHOD_DPLL)
    witness = {
        clause_set.signature.symbols[v - 1]: model.get(v, True)
        for v in range(1, n + 1)
    }
    return SatResult(True, witness, METHOD_DPLL)


def is_satisfiable(clause_set: ClauseSet, method: str = "auto") -> SatResult:
    """Decide satisfiability; ``method`` is "auto", "truth-table" or "dpll"."""
    if method == "auto":
        method = (
            METHOD_TRUTH_TABLE
            if clause_set.signature.size <= TRUTH_TABLE_MAX_VARS
            else METHOD_DPLL
        )
    if method == METHOD_TRUTH_TABLE:
        return _truth_table(clause_set)
    if method == METHOD_DPLL:
        return _dpll(clause_set)
    raise ValueError(f"unknown method: {method!r}")


def check_mus(clause_set: ClauseSet, method: str = "auto") -> MusReport:
    """Full deletion-based minimality check: one satisfiability call on the
    set and one per single-clause deletion."""
    overall = is_satisfiable(clause_set, method)
    deletions = tuple(
        is_satisfiable(clause_set.without(i), method)
        for i in range(len(clause_set.clauses))
    )
    is_unsat = not overall.satisfiable
    return MusReport(
        is_unsatisfiable=is_unsat,
        deletion_results=deletions,
        is_mus=is_unsat and all(r.satisfiable for r in deletions),
    )


def check_theorem(theorem: Theorem, method: str = "auto") -> Theorem:
    """Certify one entailment; returns a copy with ``certified`` set.

    Four conditions, all recomputed from the clause lists: the full set is
    unsatisfiable; the remainder is satisfiable; the stored conclusion is
    exactly the literal-wise negation of the removed clause; and each
    conclusion literal is entailed by the remainder (adding its negation
    as a unit makes the remainder unsatisfiable). Failure is reported in
    the certification state, never raised.
    """
    source = theorem.source.clause_set
    i = theorem.removed_index
    if not 1 <= i <= theorem.source.n + 1:
        return replace(theorem, certified=CERT_FAILED)
    removed = theorem.source.clause(i)
    remainder = source.without(i - 1)

    ok = not is_satisfiable(source, method).satisfiable
    ok = ok and is_satisfiable(remainder, method).satisfiable
    ok = ok and set(theorem.conclusion) == {l.negate() for l in removed.literals}
    if ok:
        for lit in theorem.conclusion:
            refuter = remainder.with_clause(Clause((lit.negate(),)))
            if is_satisfiable(refuter, method).satisfiable:
                ok = False
                break
    return replace(theorem, certified=CERT_VERIFIED if ok else CERT_FAILED)


def _falsified(clause: Clause, established: set[Literal]) -> bool:
    return all(l.negate() in established for l in clause.literals)


def replay_trace(trace: ProofTrace, premises: ClauseSet) -> ReplayResult:
    """Re-run a proof trace step by step against the given premise clauses.

    Local validity per step kind: a unit derivation cites a premise clause
    whose other literals are all falsified by earlier units; an assumption
    opens a scope (one at a time, units are not allowed inside it); a
    propagation is a unit derivation that may additionally use the
    assumption and earlier propagations; the empty-clause step cites a
    premise falsified outright; a discharge requires a reached
    contradiction and concludes the assumption's negation. A valid trace
    must be nonempty and must leave no assumption open.
    """

    def fail(step_index: Optional[int], reason: str) -> ReplayResult:
        return ReplayResult(False, step_index, reason, frozenset(units))

    units: set[Literal] = set()
    assumption: Optional[Literal] = None
    scoped: set[Literal] = set()
    contradicted = False

    if not trace.steps:
        return fail(None, "empty trace")

    for idx, step in enumerate(trace.steps):
        cited: Optional[Clause] = None
        if step.premise_index is not None:
            if not 0 <= step.premise_index < len(premises.clauses):
                return fail(idx, f"premise index out of range: {step.premise_index}")
            cited = premises.clauses[step.premise_index]

        if step.kind == STEP_UNIT:
            if assumption is not None:
                return fail(idx, "unit derivation inside an assumption scope")
            if step.literal is None or cited is None:
                return fail(idx, "unit derivation needs a literal and a premise")
            if step.literal not in cited.literals:
                return fail(idx, "derived literal does not occur in the cited clause")
            others = [l for l in cited.literals if l != step.literal]
            if not all(l.negate() in units for l in others):
                return fail(idx, "cited clause is not unit under established literals")
            units.add(step.literal)
        elif step.kind == STEP_ASSUME:
            if assumption is not None:
                return fail(idx, "nested assumption")
            if step.literal is None:
                return fail(idx, "assumption needs a literal")
            assumption = step.literal
            scoped = set()
            contradicted = False
        elif step.kind == STEP_PROPAGATE:
            if assumption is None:
                return fail(idx, "propagation outside an assumption scope")
            if step.literal is None or cited is None:
                return fail(idx, "propagation needs a literal and a premise")
            if step.literal not in cited.literals:
                return fail(idx, "derived literal does not occur in the cited clause")
            known = units | scoped | {assumption}
            others = [l for l in cited.literals if l != step.literal]
            if not all(l.negate() in known for l in others):
                return fail(idx, "cited clause is not unit under established literals")
            scoped.add(step.literal)
        elif step.kind == STEP_EMPTY:
            if assumption is None:
                return fail(idx, "empty-clause step outside an assumption scope")
            if cited is None:
                return fail(idx, "empty-clause step needs a premise")
            known = units | scoped | {assumption}
            if not _falsified(cited, known):
                return fail(idx, "cited clause is not fully falsified")
            contradicted = True
        elif step.kind == STEP_DISCHARGE:
            if assumption is None or not contradicted:
                return fail(idx, "discharge without a refuted assumption")
            if step.literal != assumption.negate():
                return fail(idx, "discharged literal must negate the assumption")
            units.add(step.literal)
            assumption = None
            scoped = set()
            contradicted = False
        else:
            return fail(idx, f"unknown step kind: {step.kind!r}")

    if assumption is not None:
        return fail(len(trace.steps) - 1, "assumption left undischarged")
    return ReplayResult(True, None, None, frozenset(units))
