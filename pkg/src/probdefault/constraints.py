"""Conditional constraints, default theories, and their text formats.

A conditional constraint (psi | phi)[l, u] restricts the conditional
probability of psi given phi to the closed interval [l, u]; it is either
strict (hard knowledge) or defeasible (a default).  A default theory is a
pair (P, D) of strict and defeasible constraint sets; a knowledge base is a
conjunction of strict constraints describing the case at hand.

All bounds are exact rationals.  Defaults keep their insertion order in D,
which serves as their identity in every subset enumeration downstream.

Theory file format (suffix .pdt), line oriented:

    % comment to end of line
    strict  (bird | penguin)[1,1]
    default (fly | bird)[0.9,0.95]

Evidence text is `&`-separated strict constraints, or `true` for no
evidence.  Query text is a bare conditional `(psi | phi)`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import BoundsError, DefeasibleEvidenceError, ParseError
from .formula import Formula, atoms, format_formula, make_vocabulary, parse_formula

STRICT = "strict"
DEFEASIBLE = "defeasible"

_RATIONAL_RE = re.compile(r"-?(\d+/\d+|\d+\.?\d*|\.\d+)")


@dataclass(frozen=True)
class ConditionalConstraint:
    """One interval restriction (psi | phi)[l, u], strict or defeasible."""

    consequent: Formula
    antecedent: Formula
    lower: Fraction
    upper: Fraction
    kind: str = STRICT
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in (STRICT, DEFEASIBLE):
            raise ValueError(f"bad constraint kind {self.kind!r}")
        lo, up = self.lower, self.upper
        if not (0 <= lo <= up <= 1):
            raise BoundsError(
                f"bounds [{lo},{up}] must satisfy 0 <= l <= u <= 1", self.line
            )

    @property
    def is_strict(self) -> bool:
        return self.kind == STRICT

    def atom_names(self) -> frozenset[str]:
        return atoms(self.consequent) | atoms(self.antecedent)

    def __str__(self):
        return format_constraint(self)


@dataclass(frozen=True)
class DefaultTheory:
    """Generic knowledge: strict constraints P and defaults D."""

    strict: tuple[ConditionalConstraint, ...] = ()
    defaults: tuple[ConditionalConstraint, ...] = ()

    def __post_init__(self):
        for c in self.strict:
            if not c.is_strict:
                raise ValueError("P may contain only strict constraints")
        for d in self.defaults:
            if d.is_strict:
                raise ValueError("D may contain only defeasible constraints")

    def atom_names(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for c in self.strict + self.defaults:
            out |= c.atom_names()
        return out


@dataclass(frozen=True)
class KnowledgeBase:
    """Concrete evidence: a conjunction of strict constraints (empty = true)."""

    conjuncts: tuple[ConditionalConstraint, ...] = ()

    def __post_init__(self):
        for c in self.conjuncts:
            if not c.is_strict:
                raise DefeasibleEvidenceError(
                    "evidence must consist of strict constraints"
                )

    def atom_names(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for c in self.conjuncts:
            out |= c.atom_names()
        return out


def parse_rational(token: str, line: int | None = None) -> Fraction:
    """Exact rational from `p/q` or a finite decimal; 0.95 becomes 19/20."""
    token = token.strip()
    if _RATIONAL_RE.fullmatch(token) is None:
        raise ParseError(f"bad rational {token!r}", line)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line) from None


def _split_top_level(text: str, sep: str) -> list[str]:
    """Split on sep occurrences outside parentheses and brackets."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_constraint(
    text: str, kind: str = STRICT, line: int | None = None
) -> ConditionalConstraint:
    """Parse `(psi | phi)[l,u]`; the bar inside the parentheses is the
    conditional bar (disjunction is the keyword `v`)."""
    text = text.strip()
    m = re.fullmatch(r"\((?P<body>.*)\)\s*\[(?P<lo>[^,\]]*),(?P<up>[^,\]]*)\]", text, re.S)
    if m is None:
        raise ParseError(f"expected '(psi | phi)[l,u]', got {text!r}", line)
    body = m.group("body")
    if "||" in body:
        raise DefeasibleEvidenceError(
            "the defeasible bar '||' is not allowed here; use the 'default' keyword",
            line,
        )
    sides = _split_top_level(body, "|")
    if len(sides) != 2:
        raise ParseError(f"expected one conditional bar in {body!r}", line)
    return ConditionalConstraint(
        consequent=parse_formula(sides[0], line),
        antecedent=parse_formula(sides[1], line),
        lower=parse_rational(m.group("lo"), line),
        upper=parse_rational(m.group("up"), line),
        kind=kind,
        line=line,
    )


_LINE_RE = re.compile(r"(?P<kw>strict|default)\b(?P<rest>.*)", re.S)


def parse_theory(text: str) -> DefaultTheory:
    """Parse a theory file into (P, D), keeping source lines for diagnostics."""
    strict: list[ConditionalConstraint] = []
    defaults: list[ConditionalConstraint] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.fullmatch(line)
        if m is None:
            raise ParseError(
                f"expected 'strict' or 'default' declaration, got {line!r}", lineno
            )
        kind = STRICT if m.group("kw") == "strict" else DEFEASIBLE
        c = parse_constraint(m.group("rest"), kind, lineno)
        (strict if kind == STRICT else defaults).append(c)
    return DefaultTheory(strict=tuple(strict), defaults=tuple(defaults))


def parse_kb(text: str) -> KnowledgeBase:
    """Parse evidence: `&`-separated strict constraints, or `true`."""
    text = text.strip()
    if text == "true":
        return KnowledgeBase()
    if not text:
        raise ParseError("empty evidence; use 'true' for no evidence")
    conjuncts = []
    for part in _split_top_level(text, "&"):
        part = part.strip()
        if not part:
            raise ParseError(f"empty conjunct in evidence {text!r}")
        conjuncts.append(parse_constraint(part, STRICT))
    return KnowledgeBase(conjuncts=tuple(conjuncts))


def parse_query(text: str) -> tuple[Formula, Formula]:
    """Parse `(psi | phi)` into the (consequent, antecedent) pair."""
    text = text.strip()
    m = re.fullmatch(r"\((?P<body>.*)\)", text, re.S)
    if m is None:
        raise ParseError(f"expected '(psi | phi)', got {text!r}")
    sides = _split_top_level(m.group("body"), "|")
    if len(sides) != 2:
        raise ParseError(f"expected one conditional bar in query {text!r}")
    return parse_formula(sides[0]), parse_formula(sides[1])


def vocabulary_of(
    theory: DefaultTheory,
    kb: KnowledgeBase | None = None,
    query: Iterable[Formula] = (),
) -> tuple[str, ...]:
    """Sorted union of all atoms mentioned by theory, evidence, and query."""
    names = set(theory.atom_names())
    if kb is not None:
        names |= kb.atom_names()
    for f in query:
        names |= atoms(f)
    return make_vocabulary(names)


# ------------------------------------------------------------------
# Canonical printing (parse . format is the identity)
# ------------------------------------------------------------------


def format_rational(x: Fraction) -> str:
    return str(x)


def format_constraint(c: ConditionalConstraint) -> str:
    return (
        f"({format_formula(c.consequent)} | {format_formula(c.antecedent)})"
        f"[{format_rational(c.lower)},{format_rational(c.upper)}]"
    )


def format_theory(theory: DefaultTheory) -> str:
    lines = [f"strict {format_constraint(c)}" for c in theory.strict]
    lines += [f"default {format_constraint(d)}" for d in theory.defaults]
    return "\n".join(lines) + ("\n" if lines else "")


def format_kb(kb: KnowledgeBase) -> str:
    if not kb.conjuncts:
        return "true"
    return " & ".join(format_constraint(c) for c in kb.conjuncts)
