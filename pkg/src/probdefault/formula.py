"""Propositional syntax, possible worlds, and formula evaluation.

The core AST has only atoms, the constants true/false, negation, and
conjunction.  Disjunction, implication, and equivalence are parser sugar
expanded at parse time:

    f v g    ->  !(!f & !g)
    f => g   ->  !(f & !g)
    f <=> g  ->  !(!f & g) & !(f & !g)

A vocabulary is a sorted tuple of distinct atom names.  A world over a
vocabulary of n atoms is identified with an index in [0, 2^n): the atom at
sorted position i contributes bit i.  Worlds double as the variables of the
linear programs downstream, so this indexing fixes all LP variable orders.

Everything here is immutable and freely shareable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError, UnknownAtomError, VocabularyTooLargeError

# Explicit world enumeration keeps exact-rational LPs tractable; 2^16 worlds
# is the hard cap.
MAX_VOCAB_ATOMS = 16

ATOM_RE = re.compile(r"[a-z_][a-z0-9_]*")
_KEYWORDS = ("true", "false", "v")


class Formula:
    """Base class for the propositional AST."""

    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


TRUE = Const(True)
FALSE = Const(False)


def disj(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(Not(And(Not(left), right)), Not(And(left, Not(right))))


def atoms(f: Formula) -> frozenset[str]:
    """Set of atom names occurring in f."""
    found: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            found.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.sub)
        elif isinstance(node, And):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


# ------------------------------------------------------------------
# Parsing
# ------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<word>[a-z_][a-z0-9_]*)|(?P<op><=>|=>|!|&|\(|\)))"
)


def _tokenize(text: str, line: int | None) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r} in formula", line)
        tokens.append(m.group("word") or m.group("op"))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser.

    Precedence: ! > & > v > => > <=>, with => (and <=>) right-associative.
    """

    def __init__(self, tokens: list[str], line: int | None):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of formula", self.line)
        self.pos += 1
        return tok

    def parse(self) -> Formula:
        f = self.parse_iff()
        if self.peek() is not None:
            raise ParseError(f"unexpected token {self.peek()!r} in formula", self.line)
        return f

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        if self.peek() == "<=>":
            self.take()
            return iff(left, self.parse_iff())
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.peek() == "=>":
            self.take()
            return implies(left, self.parse_implies())
        return left

    def parse_or(self) -> Formula:
        f = self.parse_and()
        while self.peek() == "v":
            self.take()
            f = disj(f, self.parse_and())
        return f

    def parse_and(self) -> Formula:
        f = self.parse_unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.parse_unary())
        return f

    def parse_unary(self) -> Formula:
        tok = self.take()
        if tok == "!":
            return Not(self.parse_unary())
        if tok == "(":
            f = self.parse_iff()
            if self.take() != ")":
                raise ParseError("expected ')'", self.line)
            return f
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok in ("&", "v", "=>", "<=>", ")"):
            raise ParseError(f"unexpected token {tok!r} in formula", self.line)
        return Atom(tok)


def parse_formula(text: str, line: int | None = None) -> Formula:
    """Parse formula text into the core AST, expanding derived connectives."""
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty formula", line)
    return _Parser(tokens, line).parse()


def format_formula(f: Formula) -> str:
    """Canonical text for a core-AST formula; parse_formula inverts it."""
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.sub)
        if isinstance(f.sub, And):
            inner = f"({inner})"
        return "!" + inner
    if isinstance(f, And):
        return f"{format_formula(f.left)} & {format_formula(f.right)}"
    raise TypeError(f"not a formula: {f!r}")


# ------------------------------------------------------------------
# Worlds
# ------------------------------------------------------------------


def make_vocabulary(names: Iterable[str]) -> tuple[str, ...]:
    """Sorted, deduplicated vocabulary; validates names and the size cap."""
    vocab = tuple(sorted(set(names)))
    for name in vocab:
        if name in _KEYWORDS or ATOM_RE.fullmatch(name) is None:
            raise ParseError(f"invalid atom name {name!r}")
    if len(vocab) > MAX_VOCAB_ATOMS:
        raise VocabularyTooLargeError(
            f"{len(vocab)} atoms exceed the cap of {MAX_VOCAB_ATOMS}"
        )
    return vocab


@dataclass(frozen=True)
class World:
    """Total truth assignment, identified by its index in [0, 2^n)."""

    vocab: tuple[str, ...]
    index: int

    def value(self, name: str) -> bool:
        try:
            bit = self.vocab.index(name)
        except ValueError:
            raise UnknownAtomError(f"atom {name!r} not in vocabulary") from None
        return bool(self.index >> bit & 1)

    @property
    def assignment(self) -> dict[str, bool]:
        return {a: bool(self.index >> i & 1) for i, a in enumerate(self.vocab)}


def _check_vocab(vocab: tuple[str, ...]) -> None:
    if not 1 <= len(vocab) <= MAX_VOCAB_ATOMS:
        raise VocabularyTooLargeError(
            f"vocabulary size {len(vocab)} outside [1, {MAX_VOCAB_ATOMS}]"
        )
    if len(set(vocab)) != len(vocab):
        raise ParseError("vocabulary contains duplicate atoms")


def enumerate_worlds(vocab: Iterable[str]) -> list[World]:
    """All 2^n worlds in ascending index order."""
    vocab = tuple(vocab)
    _check_vocab(vocab)
    return [World(vocab, i) for i in range(1 << len(vocab))]


def evaluate(world: World, f: Formula) -> bool:
    """Standard truth-functional semantics; pure and deterministic."""
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Atom):
        return world.value(f.name)
    if isinstance(f, Not):
        return not evaluate(world, f.sub)
    if isinstance(f, And):
        return evaluate(world, f.left) and evaluate(world, f.right)
    raise TypeError(f"not a formula: {f!r}")


def truth_mask(f: Formula, vocab: tuple[str, ...]) -> int:
    """Bitmask over world indices: bit w is set iff world w satisfies f.

    Computed bottom-up with word-level boolean algebra on big integers, so
    all 2^n worlds are evaluated at once.
    """
    _check_vocab(vocab)
    n = len(vocab)
    full = (1 << (1 << n)) - 1

    def mask(node: Formula) -> int:
        if isinstance(node, Const):
            return full if node.value else 0
        if isinstance(node, Atom):
            try:
                bit = vocab.index(node.name)
            except ValueError:
                raise UnknownAtomError(
                    f"atom {node.name!r} not in vocabulary {vocab}"
                ) from None
            # Periodic pattern: 2^bit zeros then 2^bit ones, tiled by doubling.
            out = ((1 << (1 << bit)) - 1) << (1 << bit)
            width = 1 << (bit + 1)
            total = 1 << n
            while width < total:
                out |= out << width
                width <<= 1
            return out
        if isinstance(node, Not):
            return full & ~mask(node.sub)
        if isinstance(node, And):
            return mask(node.left) & mask(node.right)
        raise TypeError(f"not a formula: {node!r}")

    return mask(f)


def satisfying_indices(f: Formula, vocab: tuple[str, ...]) -> tuple[int, ...]:
    """Indices of worlds satisfying f, ascending."""
    m = truth_mask(f, vocab)
    return tuple(_iter_bits(m))


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
