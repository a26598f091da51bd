# The medical walkthrough: build the triangular chain over four diagnostic
# predicates, derive all five entailments, and inspect a proof trace.
#
# The chain encodes "infection -> high WBC -> fever -> antibiotics" plus a
# final clause forbidding all four at once, so the conjunction contradicts
# itself. Removing any one clause leaves a satisfiable remainder that
# refutes exactly the removed clause.

from contragen import (
    build_ftsc,
    check_theorem,
    derive_theorems,
    pos,
    replay_trace,
    validate_input,
)

signature = validate_input(
    [pos(s) for s in ("Infection", "HighWBC", "Fever", "RequiresAntibiotics")]
)
ftsc = build_ftsc(signature)

print("dependency clauses:")
for t, clause in enumerate(ftsc.clause_set.clauses, start=1):
    print(f"  {t}: {clause}")

print("\nentailments (remainder proves the negation of the removed clause):")
for theorem in derive_theorems(ftsc):
    checked = check_theorem(theorem)
    conclusion = " & ".join(str(l) for l in theorem.conclusion)
    print(f"  remove {theorem.removed_index}: |- {conclusion}   [{checked.certified}]")

# The trace for removing clause 4 shows the no-search structure: derive the
# first three literals as units, assume the fourth, hit the final clause,
# discharge the assumption.
theorem = derive_theorems(ftsc)[3]
print(f"\ntrace for removal of clause {theorem.removed_index}:")
for step in theorem.trace.steps:
    cited = "" if step.premise_index is None else f"  (premise {step.premise_index})"
    print(f"  {step.kind:16s} {step.literal or ''}{cited}")

replayed = replay_trace(theorem.trace, ftsc.premises_without(4))
print("replay accepts the trace:", bool(replayed))
print("literals the trace establishes:", sorted(str(l) for l in replayed.established))
