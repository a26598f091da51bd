"""Immutable clause algebra: literals, signatures, clauses, clause sets, evaluation.

Symbols are plain strings on the public surface. Internally a signature
interns each symbol to a small integer index, and ``ClauseSet.int_clauses``
exposes the signed-integer encoding (1-based, DIMACS style) that the
verifier's hot loops run on. All types are immutable values: once built
they can be shared freely between workers.

Ground first-order atoms are handled as opaque propositional symbols of
the shape ``Name(c1,c2)``; the arity of such a symbol is inferred from its
argument list so that parsing and construction agree everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

#: Truth assignment: maps symbol names to booleans. Partial during search,
#: total (covering the whole signature) during truth-table enumeration.
Assignment = Mapping[str, bool]


class ValidationError(ValueError):
    """An input literal list violates a construction constraint."""


class EmptyInputError(ValidationError):
    """The literal list was empty."""


class DuplicateSymbolError(ValidationError):
    def __init__(self, symbol: str):
        super().__init__(f"symbol appears more than once: {symbol!r}")
        self.symbol = symbol


class ComplementaryPairError(ValidationError):
    def __init__(self, symbol: str):
        super().__init__(f"both {symbol!r} and its negation appear in the input")
        self.symbol = symbol


class UnboundSymbolError(LookupError):
    """A symbol is missing from an assignment or signature."""

    def __init__(self, symbol: str):
        super().__init__(f"unbound symbol: {symbol!r}")
        self.symbol = symbol


@dataclass(frozen=True)
class Literal:
    """An atom or its negation. ``negate`` is an involution."""

    symbol: str
    negated: bool = False

    def negate(self) -> "Literal":
        return Literal(self.symbol, not self.negated)

    def __str__(self) -> str:
        return "~" + self.symbol if self.negated else self.symbol


def pos(symbol: str) -> Literal:
    return Literal(symbol, False)


def neg(symbol: str) -> Literal:
    return Literal(symbol, True)


_NEGATION_PREFIXES = ("~", "!", "¬")


def parse_literal(text: str) -> Literal:
    """Parse ``Symbol`` / ``~Symbol`` (also accepts ``!`` and ``¬`` prefixes)."""
    text = text.strip()
    negated = False
    while text[:1] in _NEGATION_PREFIXES:
        negated = not negated
        text = text[1:].strip()
    if not text:
        raise ValidationError("empty literal")
    return Literal(text, negated)


def _inferred_arity(symbol: str) -> int:
    # "Name(a,b)" -> 2, "Name" -> 0. Commas never occur in term names.
    if symbol.endswith(")") and "(" in symbol:
        inner = symbol[symbol.index("(") + 1 : -1]
        return inner.count(",") + 1 if inner else 0
    return 0


@dataclass(frozen=True)
class Signature:
    """Ordered universe of distinct atom symbols, with per-symbol arity.

    Order is significant: clause canonicalization and the triangular
    construction both key off the position of a symbol in the signature.
    """

    symbols: tuple[str, ...]
    arities: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.arities:
            object.__setattr__(
                self, "arities", tuple(_inferred_arity(s) for s in self.symbols)
            )
        if len(self.arities) != len(self.symbols):
            raise ValueError("arities must align one-to-one with symbols")
        index = {}
        for i, sym in enumerate(self.symbols):
            if sym in index:
                raise DuplicateSymbolError(sym)
            index[sym] = i
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index  # type: ignore[attr-defined]

    def index_of(self, symbol: str) -> int:
        try:
            return self._index[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise UnboundSymbolError(symbol) from None

    def arity_of(self, symbol: str) -> int:
        return self.arities[self.index_of(symbol)]

    def permuted(self, order: Sequence[int]) -> "Signature":
        """Reorder the symbols; ``order`` must be a permutation of 0..size-1."""
        if sorted(order) != list(range(self.size)):
            raise ValueError("order must be a permutation of the signature indices")
        return Signature(
            tuple(self.symbols[i] for i in order),
            tuple(self.arities[i] for i in order),
        )


def validate_input(
    literals: Sequence[Literal], arities: Optional[Sequence[int]] = None
) -> Signature:
    """Check the two admission constraints and build the signature.

    The constraints: no symbol occurs in both polarities (non-complementarity)
    and no symbol occurs twice (uniqueness). The signature preserves input
    order. Raises EmptyInputError, ComplementaryPairError or
    DuplicateSymbolError as appropriate.
    """
    if not literals:
        raise EmptyInputError("at least one input literal is required")
    seen: dict[str, bool] = {}
    for lit in literals:
        if not lit.symbol:
            raise ValidationError("literal symbols must be nonempty")
        if any(ch.isspace() for ch in lit.symbol):
            raise ValidationError(f"literal symbols must not contain whitespace: {lit.symbol!r}")
        if lit.symbol[0] in _NEGATION_PREFIXES:
            raise ValidationError(
                f"literal symbols must not start with a negation sign: {lit.symbol!r}"
            )
        if lit.symbol in seen:
            if seen[lit.symbol] != lit.negated:
                raise ComplementaryPairError(lit.symbol)
            raise DuplicateSymbolError(lit.symbol)
        seen[lit.symbol] = lit.negated
    return Signature(
        tuple(lit.symbol for lit in literals),
        tuple(arities) if arities is not None else (),
    )


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals. The empty clause evaluates to false everywhere."""

    literals: tuple[Literal, ...] = ()

    def is_empty(self) -> bool:
        return not self.literals

    def is_tautology(self) -> bool:
        lits = set(self.literals)
        return any(l.negate() in lits for l in self.literals)

    def as_set(self) -> frozenset[Literal]:
        return frozenset(self.literals)

    def symbols(self) -> tuple[str, ...]:
        return tuple(l.symbol for l in self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        return " | ".join(str(l) for l in self.literals) if self.literals else "⊥"


def canonicalize(clause: Clause, signature: Signature) -> Clause:
    """Drop duplicate literals and sort by (signature index, polarity).

    Idempotent; positive literals sort before negative ones on the same
    symbol. Every clause stored in a ClauseSet is kept in this form.
    """
    uniq = sorted(
        set(clause.literals),
        key=lambda l: (signature.index_of(l.symbol), l.negated),
    )
    return Clause(tuple(uniq))


ClauseLike = Union[Clause, Iterable[Literal]]


@dataclass(frozen=True)
class ClauseSet:
    """Ordered conjunction of clauses over a signature.

    Clause order is significant (theorem indexing relies on it) but
    ``set_equal`` compares two sets ignoring clause order and literal order.
    """

    clauses: tuple[Clause, ...]
    signature: Signature

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.symbol not in self.signature:
                    raise UnboundSymbolError(lit.symbol)

    @classmethod
    def build(cls, clauses: Iterable[ClauseLike], signature: Signature) -> "ClauseSet":
        """Construct with each clause canonicalized."""
        canon = []
        for c in clauses:
            clause = c if isinstance(c, Clause) else Clause(tuple(c))
            canon.append(canonicalize(clause, signature))
        return cls(tuple(canon), signature)

    def without(self, index: int) -> "ClauseSet":
        """Copy with the clause at 0-based ``index`` removed."""
        if not 0 <= index < len(self.clauses):
            raise IndexError(f"clause index out of range: {index}")
        return ClauseSet(
            self.clauses[:index] + self.clauses[index + 1 :], self.signature
        )

    def with_clause(self, clause: ClauseLike) -> "ClauseSet":
        c = clause if isinstance(clause, Clause) else Clause(tuple(clause))
        return ClauseSet(
            self.clauses + (canonicalize(c, self.signature),), self.signature
        )

    def as_sets(self) -> frozenset[frozenset[Literal]]:
        return frozenset(c.as_set() for c in self.clauses)

    def set_equal(self, other: "ClauseSet") -> bool:
        return self.as_sets() == other.as_sets()

    def int_clauses(self) -> tuple[tuple[int, ...], ...]:
        """Signed 1-based integer encoding, for solver loops."""
        idx = self.signature.index_of
        return tuple(
            tuple(-(idx(l.symbol) + 1) if l.negated else idx(l.symbol) + 1 for l in c)
            for c in self.clauses
        )

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __str__(self) -> str:
        return " & ".join(f"({c})" for c in self.clauses)


def evaluate_clause(clause: Clause, assignment: Assignment) -> bool:
    """True iff at least one literal is satisfied. Requires every clause
    symbol to be bound in the assignment."""
    for lit in clause.literals:
        if lit.symbol not in assignment:
            raise UnboundSymbolError(lit.symbol)
    return any(assignment[l.symbol] != l.negated for l in clause.literals)


def evaluate_set(clause_set: ClauseSet, assignment: Assignment) -> bool:
    """Conjunction semantics: true iff every clause evaluates true.
    Requires the assignment to cover the whole signature."""
    for symbol in clause_set.signature.symbols:
        if symbol not in assignment:
            raise UnboundSymbolError(symbol)
    return all(evaluate_clause(c, assignment) for c in clause_set.clauses)
