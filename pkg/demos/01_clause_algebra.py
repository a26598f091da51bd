# Clause algebra basics: literals, clauses, clause sets, evaluation.
#
# Everything is an immutable value. Symbols are strings; a signature fixes
# their order, which drives canonical literal ordering inside clauses.

from contragen import (
    Clause,
    ClauseSet,
    canonicalize,
    evaluate_clause,
    evaluate_set,
    neg,
    pos,
    validate_input,
)

# Build a signature from input literals. The two admission checks run here:
# no duplicate symbol, no complementary pair.
signature = validate_input([pos("rain"), pos("wet_street"), pos("slippery")])
print("signature:", signature.symbols)

# Clauses are disjunctions. Canonicalization dedups and orders literals.
messy = Clause((neg("wet_street"), pos("rain"), neg("wet_street")))
print("canonical:", canonicalize(messy, signature))

# Evaluation under a total assignment.
clause = Clause((pos("wet_street"), neg("rain")))  # "rain implies wet street"
assignment = {"rain": True, "wet_street": True, "slippery": False}
print("rain -> wet_street under", assignment, "=>", evaluate_clause(clause, assignment))

# A clause set is a conjunction; evaluation needs the full signature covered.
rules = ClauseSet.build(
    [
        Clause((pos("rain"),)),
        Clause((pos("wet_street"), neg("rain"))),
        Clause((pos("slippery"), neg("wet_street"))),
    ],
    signature,
)
print("rules:", rules)
print("all rules hold:", evaluate_set(rules, {"rain": True, "wet_street": True, "slippery": True}))
print("all rules hold:", evaluate_set(rules, {"rain": True, "wet_street": False, "slippery": True}))

# Validation errors are specific.
from contragen import ComplementaryPairError

try:
    validate_input([pos("rain"), neg("rain")])
except ComplementaryPairError as exc:
    print("rejected:", exc)
