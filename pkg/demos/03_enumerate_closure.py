# Permutation closure: one triangular chain per literal ordering.
#
# Three literals give 3! = 6 clause sets, pairwise distinct, streamed
# lazily in lexicographic order. Two closure figures matter: the number of
# clause sets (n!) and the number of entailments across them (n! * (n+1));
# both are reported because each counts something different.

from contragen import closure_counts, enumerate_ftscs, pos, validate_input

signature = validate_input([pos("a"), pos("b"), pos("c")])

seen = set()
for rank, ftsc in enumerate(enumerate_ftscs(signature)):
    seen.add(ftsc.clause_set.as_sets())
    print(f"perm {rank}: order={ftsc.permutation}")
    for clause in ftsc.clause_set.clauses:
        print(f"    {clause}")

sets_total, entailments_total = closure_counts(signature.size)
print(f"\ndistinct clause sets: {len(seen)} (expected {sets_total})")
print(f"entailments across the closure: {entailments_total}")

# The factorial guard: enumeration refuses large inputs unless overridden.
from contragen import EnumerationCapExceededError

big = validate_input([pos(f"x{i}") for i in range(1, 13)])
try:
    enumerate_ftscs(big)
except EnumerationCapExceededError as exc:
    print("\nguarded:", exc)

# Override deliberately and take just the first item; nothing else is built.
stream = enumerate_ftscs(big, cap=None)
print("first permutation under override:", next(stream).permutation[:3], "...")
