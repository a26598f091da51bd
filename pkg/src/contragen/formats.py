"""DIMACS CNF and TPTP interchange.

DIMACS emission is deterministic: a comment block maps each variable index
to its symbol (``c var 3 Fever``), then the standard ``p cnf`` header,
then one zero-terminated clause line per clause in canonical literal
order. ``parse_dimacs`` inverts ``emit_dimacs`` exactly on its own output
and is tolerant of extra comments and blank lines elsewhere.

TPTP emission covers two dialects. In cnf mode each dependency clause
becomes a ``cnf(..., axiom, ...)`` formula, and each theorem becomes one
conjecture. A theorem's conclusion is a conjunction of unit literals,
which a single CNF clause cannot express, so conjectures are written as
``fof`` conjunction formulas alongside the cnf axioms (TPTP files may mix
annotated formula languages); provers can then discharge each conjunct.
In fof mode the clauses themselves are emitted as universally quantified
formulas over the scenario's variables, which requires scenario metadata.

Names are normalized to TPTP conventions: predicate and constant tokens
start lowercase, variables start uppercase, and any character outside
[A-Za-z0-9_] becomes an underscore.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .core import Clause, ClauseSet, Literal, Signature
from .generator import Ftsc, Theorem


class DimacsParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class HeaderMismatchError(ValueError):
    """Missing or malformed header, or header counts disagree with the body."""


class NonGroundClauseError(ValueError):
    """The set contains symbols with unsubstituted variables."""


class MissingScenarioMetadataError(ValueError):
    """fof emission needs the scenario's variable declarations."""


def _check_ground(clause_set: ClauseSet) -> None:
    for symbol in clause_set.signature.symbols:
        if "?" in symbol:
            raise NonGroundClauseError(
                f"symbol {symbol!r} contains an unsubstituted variable"
            )


def emit_dimacs(clause_set: ClauseSet) -> str:
    """Render a propositional or ground clause set as DIMACS CNF text."""
    _check_ground(clause_set)
    sig = clause_set.signature
    lines = []
    for i, symbol in enumerate(sig.symbols, start=1):
        lines.append(f"c var {i} {symbol}")
    lines.append(f"p cnf {sig.size} {len(clause_set.clauses)}")
    for ints in clause_set.int_clauses():
        lines.append(" ".join(str(l) for l in ints) + " 0")
    return "\n".join(lines) + "\n"


_VAR_COMMENT = re.compile(r"^c\s+var\s+(\d+)\s+(\S+)\s*$")
_HEADER = re.compile(r"^p\s+cnf\s+(\d+)\s+(\d+)\s*$")


def parse_dimacs(text: str) -> ClauseSet:
    """Parse DIMACS CNF text back into a clause set.

    Symbol names are recovered from ``c var`` comments when present;
    variables without one get a synthetic ``v<i>`` name. Raises
    HeaderMismatchError for a missing or malformed header or when the
    declared clause count disagrees with the body, and DimacsParseError
    (with the line number) for unreadable tokens, out-of-range variables,
    or an unterminated final clause.
    """
    names: dict[int, str] = {}
    num_vars: Optional[int] = None
    num_clauses: Optional[int] = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            match = _VAR_COMMENT.match(line)
            if match:
                names[int(match.group(1))] = match.group(2)
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise HeaderMismatchError(f"line {lineno}: duplicate header")
            match = _HEADER.match(line)
            if not match:
                raise HeaderMismatchError(f"line {lineno}: malformed header: {line!r}")
            num_vars = int(match.group(1))
            num_clauses = int(match.group(2))
            continue
        if num_vars is None:
            raise HeaderMismatchError(
                f"line {lineno}: clause data before the 'p cnf' header"
            )
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsParseError(f"unreadable token {token!r}", lineno) from None
            if value == 0:
                clauses.append(tuple(current))
                current = []
                continue
            if abs(value) > num_vars:
                raise DimacsParseError(
                    f"variable {abs(value)} exceeds declared count {num_vars}", lineno
                )
            current.append(value)

    if num_vars is None:
        raise HeaderMismatchError("no 'p cnf' header found")
    if current:
        raise DimacsParseError("final clause is not terminated by 0")
    if num_clauses != len(clauses):
        raise HeaderMismatchError(
            f"header declares {num_clauses} clauses, body has {len(clauses)}"
        )

    symbols = tuple(names.get(i, f"v{i}") for i in range(1, num_vars + 1))
    signature = Signature(symbols)
    built = [
        Clause(tuple(Literal(symbols[abs(v) - 1], v < 0) for v in ints))
        for ints in clauses
    ]
    return ClauseSet.build(built, signature)


# --- TPTP ---------------------------------------------------------------

_TOKEN_CLEANER = re.compile(r"[^A-Za-z0-9_]")


def _tptp_token(name: str, upper_first: bool) -> str:
    cleaned = _TOKEN_CLEANER.sub("_", name)
    if not cleaned:
        cleaned = "x"
    first = cleaned[0]
    if first.isdigit() or first == "_":
        cleaned = ("X" if upper_first else "x") + cleaned
    elif upper_first:
        cleaned = first.upper() + cleaned[1:]
    else:
        cleaned = first.lower() + cleaned[1:]
    return cleaned


def _split_ground_symbol(symbol: str) -> tuple[str, tuple[str, ...]]:
    if symbol.endswith(")") and "(" in symbol:
        head, _, inner = symbol[:-1].partition("(")
        args = tuple(a for a in inner.split(",") if a)
        return head, args
    return symbol, ()


def _tptp_atom_ground(symbol: str) -> str:
    head, args = _split_ground_symbol(symbol)
    functor = _tptp_token(head, upper_first=False)
    if not args:
        return functor
    rendered = ",".join(_tptp_token(a, upper_first=False) for a in args)
    return f"{functor}({rendered})"


def _tptp_literal_ground(lit: Literal) -> str:
    atom = _tptp_atom_ground(lit.symbol)
    return f"~{atom}" if lit.negated else atom


def _tptp_atom_scenario(atom) -> str:
    # ScenarioAtom: variables render uppercase, constants lowercase.
    functor = _tptp_token(atom.symbol, upper_first=False)
    if not atom.args:
        return functor
    rendered = ",".join(
        _tptp_token(a, upper_first=(a in atom.variables)) for a in atom.args
    )
    return f"{functor}({rendered})"


def emit_tptp(
    ftsc: Ftsc,
    theorems: Sequence[Theorem] = (),
    mode: str = "cnf",
    scenario=None,
) -> str:
    """Render a construction and its theorems as TPTP text.

    ``mode`` is "cnf" (ground clauses; requires a ground set) or "fof"
    (universally quantified scenario-level formulas; requires ``scenario``).
    """
    if mode not in ("cnf", "fof"):
        raise ValueError(f"unknown TPTP mode: {mode!r}")
    lines = [f"% dependency clauses: {ftsc.n + 1}, theorems: {len(theorems)}"]

    if mode == "cnf":
        _check_ground(ftsc.clause_set)
        for t, clause in enumerate(ftsc.clause_set.clauses, start=1):
            body = " | ".join(_tptp_literal_ground(l) for l in clause.literals)
            lines.append(f"cnf(dependency_{t}, axiom, ({body})).")
        for theorem in theorems:
            body = " & ".join(
                _tptp_literal_ground(l) for l in theorem.conclusion
            )
            lines.append(
                f"fof(entailment_{theorem.removed_index}, conjecture, ({body}))."
            )
        return "\n".join(lines) + "\n"

    # fof mode: rebuild each clause over the scenario's atom declarations.
    if scenario is None:
        raise MissingScenarioMetadataError("fof mode requires a scenario")
    if scenario.n != ftsc.n:
        raise MissingScenarioMetadataError(
            f"scenario declares {scenario.n} atoms, construction has {ftsc.n}"
        )
    scenario.gloss_map(ftsc.signature)  # raises unless scenario and set match
    # Map each ground symbol to its scenario atom (by matching instance).
    symbol_to_atom = {}
    for lits in scenario.instances():
        symbols = [l.symbol for l in lits]
        if set(symbols) == set(ftsc.signature.symbols):
            symbol_to_atom = {
                sym: scenario.atoms[pos] for pos, sym in enumerate(symbols)
            }
            break

    def render_clause(lits, joiner: str) -> str:
        rendered = []
        variables: list[str] = []
        for lit in lits:
            atom = symbol_to_atom[lit.symbol]
            for a in atom.args:
                if a in atom.variables and a not in variables:
                    variables.append(a)
            text = _tptp_atom_scenario(atom)
            rendered.append(f"~{text}" if lit.negated else text)
        body = f" {joiner} ".join(rendered)
        if variables:
            quant = ",".join(_tptp_token(v, upper_first=True) for v in variables)
            return f"! [{quant}] : ({body})"
        return f"({body})"

    for t, clause in enumerate(ftsc.clause_set.clauses, start=1):
        lines.append(f"fof(dependency_{t}, axiom, {render_clause(clause.literals, '|')}).")
    for theorem in theorems:
        lines.append(
            f"fof(entailment_{theorem.removed_index}, conjecture, "
            f"{render_clause(theorem.conclusion, '&')})."
        )
    return "\n".join(lines) + "\n"
