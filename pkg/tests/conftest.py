import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contragen import Clause, ClauseSet, Literal, Signature

SCENARIO_DIR = Path(__file__).parent.parent / "scenarios"


@pytest.fixture
def scenario_dir() -> Path:
    return SCENARIO_DIR


def random_clause_set(rng: random.Random, max_vars: int = 12) -> ClauseSet:
    """Seeded random clause set for oracle cross-checks."""
    n = rng.randint(1, max_vars)
    signature = Signature(tuple(f"v{i}" for i in range(1, n + 1)))
    clause_count = rng.randint(1, 3 * n)
    clauses = []
    for _ in range(clause_count):
        width = rng.randint(1, min(n, 4))
        symbols = rng.sample(signature.symbols, width)
        clauses.append(
            Clause(tuple(Literal(s, rng.random() < 0.5) for s in symbols))
        )
    return ClauseSet.build(clauses, signature)
