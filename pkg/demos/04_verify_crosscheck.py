# Independent certification: satisfiability both ways, minimality, and what
# happens when a theorem is tampered with.

import random
from dataclasses import replace

from contragen import (
    Clause,
    ClauseSet,
    Signature,
    build_ftsc,
    check_mus,
    check_theorem,
    derive_theorems,
    is_satisfiable,
    neg,
    pos,
    validate_input,
)

# The two decision procedures agree everywhere; the truth table is the
# default up to 16 variables, DPLL beyond.
rng = random.Random(11)
signature = Signature(tuple(f"v{i}" for i in range(1, 9)))
for trial in range(5):
    clauses = []
    for _ in range(rng.randint(3, 16)):
        width = rng.randint(1, 4)
        chosen = rng.sample(signature.symbols, width)
        clauses.append(Clause(tuple(pos(s) if rng.random() < 0.5 else neg(s) for s in chosen)))
    clause_set = ClauseSet.build(clauses, signature)
    tt = is_satisfiable(clause_set, "truth-table")
    dp = is_satisfiable(clause_set, "dpll")
    print(f"trial {trial}: truth-table={tt.status}  dpll={dp.status}  agree={tt.satisfiable == dp.satisfiable}")

# Minimality report for a triangular chain: the set is unsatisfiable and
# every single-clause deletion restores satisfiability, witness included.
ftsc = build_ftsc(validate_input([pos("a"), pos("b"), pos("c")]))
report = check_mus(ftsc.clause_set)
print("\nunsatisfiable:", report.is_unsatisfiable, " minimal:", report.is_mus)
for i, deletion in enumerate(report.deletion_results, start=1):
    print(f"  drop clause {i}: {deletion.status}, witness={deletion.witness}")

# Certification re-derives everything from the clause lists, so a flipped
# conclusion literal is caught even though the clause set is untouched.
theorem = derive_theorems(ftsc)[1]
print("\nhonest theorem:", check_theorem(theorem).certified)
tampered = replace(
    theorem,
    conclusion=tuple(l.negate() if l.symbol == "b" else l for l in theorem.conclusion),
)
print("tampered conclusion:", check_theorem(tampered).certified)
