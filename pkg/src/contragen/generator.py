"""Triangular contradiction construction, theorem derivation, proof traces.

Over distinct non-complementary literals x1..xn the generator emits the
clause chain

    C1     = x1
    Ct     = xt | ~x1 | ... | ~x(t-1)        for t = 2..n
    C(n+1) = ~x1 | ~x2 | ... | ~xn

known as a full triangular standard contradiction (FTSC). The first n
clauses force every xt true by unit propagation and the final clause
rejects exactly that model, so the conjunction is unsatisfiable, and
removing any single clause leaves a satisfiable remainder. For each
clause C the remainder entails ~C, and because the dependency chain is
fixed by construction the witnessing proof trace can be written down
directly, with no search:

  * removing Ci with i <= n: derive x1..x(i-1) as units, assume xi,
    propagate x(i+1)..xn, hit the empty clause on C(n+1), discharge the
    assumption as ~xi;
  * removing C(n+1): the units x1..xn are the whole conclusion.

Everything here is deterministic. ``enumerate_ftscs`` streams one
construction per permutation of the literals, in lexicographic order,
guarded by a cap because the permutation space grows factorially.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    Clause,
    ClauseSet,
    EmptyInputError,
    Literal,
    Signature,
)

# Trace step kinds.
STEP_UNIT = "unit-derivation"
STEP_ASSUME = "assumption"
STEP_PROPAGATE = "propagation"
STEP_EMPTY = "empty-clause"
STEP_DISCHARGE = "discharge"

# Certification states of a theorem.
CERT_UNCHECKED = "unchecked"
CERT_VERIFIED = "verified"
CERT_FAILED = "failed"

#: Permutation counts above this refuse to enumerate unless overridden.
DEFAULT_ENUMERATION_CAP = 10


class EnumerationCapExceededError(ValueError):
    """Enumeration refused: the permutation space is larger than the cap allows."""


@dataclass
class OpCounter:
    """Counts elementary construction work, for cost-shape measurements."""

    literal_emissions: int = 0
    clauses_built: int = 0


@dataclass(frozen=True)
class TraceStep:
    """One replayable inference step.

    ``premise_index`` is the 0-based position of the cited clause in the
    premise clause list (the source set minus the removed clause); it is
    None for assumption and discharge steps, which cite no clause.
    ``literal`` is the literal derived, assumed, or concluded; it is None
    for the empty-clause step.
    """

    kind: str
    literal: Optional[Literal]
    premise_index: Optional[int]


@dataclass(frozen=True)
class ProofTrace:
    steps: tuple[TraceStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


@dataclass(frozen=True)
class Ftsc:
    """A triangular contradiction: n+1 clauses over an n-literal ordering.

    ``permutation`` records the literal order the chain was built over
    (identical to the clause set's signature order). Clause t has exactly
    t literals for t <= n and the final clause has n, so the total literal
    count is n(n+3)/2.
    """

    clause_set: ClauseSet
    permutation: tuple[str, ...]
    n: int

    @property
    def signature(self) -> Signature:
        return self.clause_set.signature

    def clause(self, index: int) -> Clause:
        """The clause at 1-based ``index`` (1..n+1)."""
        if not 1 <= index <= self.n + 1:
            raise IndexError(f"clause index out of range: {index}")
        return self.clause_set.clauses[index - 1]

    def premises_without(self, removed_index: int) -> ClauseSet:
        """The remainder set after removing the 1-based ``removed_index``."""
        if not 1 <= removed_index <= self.n + 1:
            raise IndexError(f"removed index out of range: {removed_index}")
        return self.clause_set.without(removed_index - 1)


@dataclass(frozen=True)
class Theorem:
    """One canonical entailment: remainder(source, removed_index) entails
    the conjunction of ``conclusion``.

    ``conclusion`` lists the negations of the removed clause's literals,
    in the clause's canonical order. ``certified`` stays "unchecked" until
    the verifier confirms or refutes the entailment.
    """

    source: Ftsc
    removed_index: int
    conclusion: tuple[Literal, ...]
    trace: Optional[ProofTrace]
    certified: str = CERT_UNCHECKED

    @property
    def premises(self) -> ClauseSet:
        return self.source.premises_without(self.removed_index)

    @property
    def removed_clause(self) -> Clause:
        return self.source.clause(self.removed_index)


def build_ftsc(signature: Signature, *, counter: Optional[OpCounter] = None) -> Ftsc:
    """Instantiate the triangular schema over the signature's symbol order.

    Deterministic: the same signature always yields the identical value.
    Emits clauses already in canonical literal order.
    """
    n = signature.size
    if n == 0:
        raise EmptyInputError("cannot build over an empty signature")
    syms = signature.symbols
    clauses = []
    for t in range(1, n + 1):
        lits = [Literal(syms[j], True) for j in range(t - 1)]
        lits.append(Literal(syms[t - 1], False))
        clauses.append(Clause(tuple(lits)))
        if counter is not None:
            counter.literal_emissions += len(lits)
            counter.clauses_built += 1
    final = tuple(Literal(s, True) for s in syms)
    clauses.append(Clause(final))
    if counter is not None:
        counter.literal_emissions += len(final)
        counter.clauses_built += 1
    clause_set = ClauseSet(tuple(clauses), signature)
    return Ftsc(clause_set, syms, n)


def conclusion_for(ftsc: Ftsc, removed_index: int) -> tuple[Literal, ...]:
    """The conjunct list of the negated removed clause."""
    return tuple(l.negate() for l in ftsc.clause(removed_index).literals)


def build_proof_trace(ftsc: Ftsc, removed_index: int) -> ProofTrace:
    """Write down the search-free trace witnessing one entailment.

    Premise indices refer to positions in ``ftsc.premises_without(removed_index)``,
    so the trace replays against exactly the clause list the theorem keeps.
    """
    n = ftsc.n
    if not 1 <= removed_index <= n + 1:
        raise IndexError(f"removed index out of range: {removed_index}")
    syms = ftsc.permutation

    def premise_pos(t: int) -> int:
        # Position of clause t once the removed clause is dropped.
        return t - 1 if t < removed_index else t - 2

    steps: list[TraceStep] = []
    unit_upto = removed_index - 1 if removed_index <= n else n
    for t in range(1, unit_upto + 1):
        steps.append(TraceStep(STEP_UNIT, Literal(syms[t - 1]), premise_pos(t)))
    if removed_index <= n:
        assumed = Literal(syms[removed_index - 1])
        steps.append(TraceStep(STEP_ASSUME, assumed, None))
        for t in range(removed_index + 1, n + 1):
            steps.append(TraceStep(STEP_PROPAGATE, Literal(syms[t - 1]), premise_pos(t)))
        steps.append(TraceStep(STEP_EMPTY, None, premise_pos(n + 1)))
        steps.append(TraceStep(STEP_DISCHARGE, assumed.negate(), None))
    return ProofTrace(tuple(steps))


def derive_theorems(ftsc: Ftsc) -> list[Theorem]:
    """All n+1 canonical entailments of one construction, uncertified."""
    return [
        Theorem(
            source=ftsc,
            removed_index=i,
            conclusion=conclusion_for(ftsc, i),
            trace=build_proof_trace(ftsc, i),
            certified=CERT_UNCHECKED,
        )
        for i in range(1, ftsc.n + 2)
    ]


def enumerate_ftscs(
    signature: Signature,
    *,
    cap: Optional[int] = DEFAULT_ENUMERATION_CAP,
    counter: Optional[OpCounter] = None,
) -> Iterator[Ftsc]:
    """Stream one construction per permutation, in lexicographic order.

    Yields exactly n! values, pairwise distinct as clause sets. Lazy: sets
    are built one at a time, never materialized in bulk. Raises
    EnumerationCapExceededError up front when n exceeds ``cap``; pass
    ``cap=None`` (or a larger cap) to override deliberately.
    """
    n = signature.size
    if cap is not None and n > cap:
        raise EnumerationCapExceededError(
            f"{n} literals mean {n}! permutations; raise the cap or pass cap=None"
        )

    def generate() -> Iterator[Ftsc]:
        for order in itertools.permutations(range(n)):
            yield build_ftsc(signature.permuted(order), counter=counter)

    return generate()


def permutation_by_rank(signature: Signature, rank: int) -> Signature:
    """The rank-th signature permutation in lexicographic order (0-based)."""
    n = signature.size
    total = math.factorial(n)
    if not 0 <= rank < total:
        raise IndexError(f"permutation rank out of range: {rank} (n!={total})")
    available = list(range(n))
    order = []
    remainder = rank
    for k in range(n, 0, -1):
        step = math.factorial(k - 1)
        idx, remainder = divmod(remainder, step)
        order.append(available.pop(idx))
    return signature.permuted(order)


def closure_counts(n: int) -> tuple[int, int]:
    """(number of permutation clause sets, total entailments across them).

    The construction family is counted two ways: one clause set per
    permutation (n! of them) and n+1 entailments per clause set. Both
    figures are reported wherever closure size matters; neither is treated
    as the single canonical count.
    """
    f = math.factorial(n)
    return f, f * (n + 1)


def total_literals(n: int) -> int:
    """Closed form for the literal count of one construction: n(n+3)/2."""
    return n * (n + 3) // 2
