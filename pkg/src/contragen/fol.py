"""First-order surface: predicate atoms, finite grounding, triangular sets.

Atoms with variables are grounded against finite constant domains; each
ground atom then acts as an opaque propositional symbol ``Name(c1,...,ck)``
and flows through the propositional machinery unchanged. Substitution is
uniform per instance (one constant per variable across the whole atom
list), and there is no unification and no function symbols.

A variable that is still unsubstituted renders with a ``?`` sigil
(``Name(?p)``); ground symbols never contain ``?``, which is how the
export layer tells the two apart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import EmptyInputError, Literal, validate_input
from .generator import Ftsc, build_ftsc

VARIABLE = "variable"
CONSTANT = "constant"


class UnboundVariableError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"no domain entry for variable {name!r}")
        self.name = name


class EmptyDomainError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"domain for variable {name!r} is empty")
        self.name = name


@dataclass(frozen=True)
class Term:
    name: str
    kind: str = CONSTANT

    def __post_init__(self):
        if self.kind not in (VARIABLE, CONSTANT):
            raise ValueError(f"unknown term kind: {self.kind!r}")

    @property
    def is_variable(self) -> bool:
        return self.kind == VARIABLE

    def __str__(self) -> str:
        return "?" + self.name if self.is_variable else self.name


def var(name: str) -> Term:
    return Term(name, VARIABLE)


def const(name: str) -> Term:
    return Term(name, CONSTANT)


@dataclass(frozen=True)
class PredicateAtom:
    """A predicate applied to terms; arity is the argument count."""

    name: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> tuple[str, ...]:
        seen = []
        for t in self.args:
            if t.is_variable and t.name not in seen:
                seen.append(t.name)
        return tuple(seen)

    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self.args)

    def substituted(self, substitution: Mapping[str, str]) -> "PredicateAtom":
        return PredicateAtom(
            self.name,
            tuple(
                const(substitution[t.name])
                if t.is_variable and t.name in substitution
                else t
                for t in self.args
            ),
        )

    def symbol(self) -> str:
        """Propositional rendering: ``Name`` or ``Name(arg,...)``."""
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(t) for t in self.args)})"

    def __str__(self) -> str:
        return self.symbol()


def atom_literal(atom: PredicateAtom, negated: bool = False) -> Literal:
    return Literal(atom.symbol(), negated)


@dataclass(frozen=True)
class GroundingDomain:
    """Finite, nonempty constant lists per variable, in declaration order."""

    bindings: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        for name, constants in self.bindings:
            if not constants:
                raise EmptyDomainError(name)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Sequence[str]]) -> "GroundingDomain":
        return cls(tuple((k, tuple(v)) for k, v in mapping.items()))

    def constants_for(self, name: str) -> tuple[str, ...]:
        for key, constants in self.bindings:
            if key == name:
                return constants
        raise UnboundVariableError(name)


EMPTY_DOMAIN = GroundingDomain(())


def _shared_variables(atoms: Sequence[PredicateAtom]) -> tuple[str, ...]:
    seen: list[str] = []
    for atom in atoms:
        for name in atom.variables():
            if name not in seen:
                seen.append(name)
    return tuple(seen)


def ground_atoms(
    atoms: Sequence[PredicateAtom], domain: GroundingDomain = EMPTY_DOMAIN
) -> list[list[Literal]]:
    """Ground the atom list over every combination of constant choices.

    Variables are substituted uniformly within one instance. Instances are
    emitted in cartesian-product order over the variables' first occurrence
    and the domain's constant order, so output is deterministic. An atom
    list with no variables grounds to exactly one instance.
    """
    if not atoms:
        raise EmptyInputError("at least one atom is required")
    names = _shared_variables(atoms)
    pools = [domain.constants_for(v) for v in names]
    instances = []
    for combo in itertools.product(*pools):
        substitution = dict(zip(names, combo))
        instances.append(
            [atom_literal(atom.substituted(substitution)) for atom in atoms]
        )
    return instances


def build_fol_ftsc(
    atoms: Sequence[PredicateAtom], domain: GroundingDomain = EMPTY_DOMAIN
) -> list[Ftsc]:
    """One triangular construction per ground instance.

    Each instance's ground atoms pass the usual admission checks and are
    then treated as propositional literals; instances are independent of
    one another.
    """
    results = []
    for literals in ground_atoms(atoms, domain):
        signature = validate_input(literals, arities=[a.arity for a in atoms])
        results.append(build_ftsc(signature))
    return results
