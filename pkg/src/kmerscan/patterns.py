"""Motif expression parsing and literal expansion.

The dialect is deliberately tiny: one expression per line, top-level '|'
separating alternative branches of the *same* expression, and single-position
classes like ``(a|c|t)``. Anything richer (repetition, wildcards, nesting) is
a syntax error, because the matcher downstream works on finite literal sets.

    expr   := branch ('|' branch)*
    branch := atom+
    atom   := base | '(' base ('|' base)+ ')'
    base   := a | c | g | t          (case-insensitive)

Whitespace is permitted around '|' and at line edges; '#' starts a comment
line; blank lines are ignored.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .alphabet import BASES

DEFAULT_EXPANSION_CAP = 4096

# The classic regex-dna benchmark 8-mer motif set: each row pairs a motif with
# its reverse complement as two branches of one expression.
BUILTIN_PATTERN_TEXT = """\
agggtaaa | tttaccct
(c|g|t)gggtaaa | tttaccc(a|c|g)
a(a|c|t)ggtaaa | tttacc(a|g|t)t
ag(a|c|t)gtaaa | tttac(a|g|t)ct
agg(a|c|t)taaa | ttta(a|g|t)cct
aggg(a|c|g)aaa | ttt(c|g|t)ccct
agggt(c|g|t)aa | tt(a|c|g)accct
agggta(c|g|t)a | t(a|c|g)taccct
agggtaa(c|g|t) | (a|c|g)ttaccct
"""

# Previously published state count for an automaton over the builtin set,
# built by a different (undocumented) construction. Informational only: our
# raw suffix-closed trie DFA has more states, and neither value is asserted.
BUILTIN_DFA_REFERENCE_STATES = 137


class PatternSyntaxError(ValueError):
    """Raised for text outside the pattern grammar, with 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ExpansionLimitError(ValueError):
    """Raised when a single branch would expand past the literal cap."""


@dataclass(frozen=True)
class Branch:
    """One alternative of an expression: a fixed-length run of atoms.

    Each atom is a string of distinct bases in source order; length 1 means a
    plain base, length >= 2 a class like (a|c|t).
    """

    atoms: tuple[str, ...]

    def product_size(self) -> int:
        return math.prod(len(a) for a in self.atoms)

    def literals(self):
        """Yield the branch's literals, classes iterated in sorted base order."""
        for combo in itertools.product(*(sorted(a) for a in self.atoms)):
            yield "".join(combo)


@dataclass(frozen=True)
class Expression:
    id: int
    source: str
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class ExpressionSet:
    expressions: tuple[Expression, ...]

    def __len__(self) -> int:
        return len(self.expressions)


@dataclass(frozen=True)
class LiteralTable:
    """Flat (literal, expression id) pairs feeding the automaton builder."""

    literals: tuple[tuple[str, int], ...]
    n_expressions: int

    def __len__(self) -> int:
        return len(self.literals)


class _LineParser:
    """Char-by-char scanner for a single expression line (already lowercased)."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        col = (self.pos if pos is None else pos) + 1
        raise PatternSyntaxError(message, self.lineno, col)

    def peek(self) -> str | None:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def parse(self) -> tuple[Branch, ...]:
        branches = [self._parse_branch()]
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch is None:
                break
            if ch == "|":
                self.pos += 1
                branches.append(self._parse_branch())
            else:
                self.error(f"unexpected {ch!r}, expected '|' or end of line")
        return tuple(branches)

    def _parse_branch(self) -> Branch:
        self.skip_ws()
        start = self.pos
        atoms: list[str] = []
        while True:
            ch = self.peek()
            if ch is None or ch == "|" or ch in " \t":
                break
            if ch in BASES:
                atoms.append(ch)
                self.pos += 1
            elif ch == "(":
                atoms.append(self._parse_class())
            else:
                self.error(f"unexpected {ch!r}, expected a base a/c/g/t or '('")
        if not atoms:
            self.error("empty branch", start)
        return Branch(tuple(atoms))

    def _parse_class(self) -> str:
        open_pos = self.pos
        self.pos += 1  # consume '('
        bases: list[str] = []
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch is None:
                self.error("unterminated class", open_pos)
            if ch not in BASES:
                self.error(f"unexpected {ch!r} in class, expected a base a/c/g/t")
            if ch in bases:
                self.error(f"duplicate base {ch!r} in class")
            bases.append(ch)
            self.pos += 1
            self.skip_ws()
            ch = self.peek()
            if ch == "|":
                self.pos += 1
                continue
            if ch == ")":
                self.pos += 1
                break
            self.error("expected '|' or ')' in class" if ch is not None else "unterminated class")
        if len(bases) < 2:
            self.error("class needs at least 2 bases", open_pos)
        return "".join(bases)


def parse_expressions(text: str) -> ExpressionSet:
    """Parse pattern-file content into an ExpressionSet.

    Expression ids follow file order (0-based). Blank lines and '#' comment
    lines are skipped. Duplicate literals within one expression are rejected
    here, as long as the expression stays under the default expansion cap
    (oversized branches fail later in expand_to_literals anyway).
    """
    expressions: list[Expression] = []
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        stripped = raw_line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        line = raw_line.lower()
        branches = _LineParser(line, lineno).parse()
        _check_duplicates(branches, lineno)
        expressions.append(Expression(len(expressions), line.strip(), branches))
    return ExpressionSet(tuple(expressions))


def _check_duplicates(branches: tuple[Branch, ...], lineno: int) -> None:
    if any(b.product_size() > DEFAULT_EXPANSION_CAP for b in branches):
        return  # expansion will refuse this expression before duplicates matter
    seen: set[str] = set()
    for branch in branches:
        for lit in branch.literals():
            if lit in seen:
                raise PatternSyntaxError(f"duplicate literal {lit!r} in expression", lineno, 1)
            seen.add(lit)


def expand_to_literals(exprs: ExpressionSet, cap: int = DEFAULT_EXPANSION_CAP) -> LiteralTable:
    """Expand every branch to its literal cartesian product.

    Order: expressions by id, branches in source order, class choices in
    lexicographic order. A single branch whose product exceeds `cap` raises
    ExpansionLimitError.
    """
    pairs: list[tuple[str, int]] = []
    for expr in exprs.expressions:
        seen: set[str] = set()
        for branch in expr.branches:
            size = branch.product_size()
            if size > cap:
                raise ExpansionLimitError(
                    f"expression {expr.id} ({expr.source!r}): branch expands to "
                    f"{size} literals, cap is {cap}"
                )
            for lit in branch.literals():
                if lit in seen:
                    raise ValueError(
                        f"expression {expr.id}: duplicate literal {lit!r}"
                    )
                seen.add(lit)
                pairs.append((lit, expr.id))
    return LiteralTable(tuple(pairs), len(exprs))


def render_expression(expr: Expression) -> str:
    """Canonical text for one expression; parse(render(e)) preserves structure."""
    parts = []
    for branch in expr.branches:
        parts.append("".join(a if len(a) == 1 else "(" + "|".join(a) + ")" for a in branch.atoms))
    return " | ".join(parts)


def render_expression_set(exprs: ExpressionSet) -> str:
    return "\n".join(render_expression(e) for e in exprs.expressions) + "\n"


@lru_cache(maxsize=1)
def builtin_expression_set() -> ExpressionSet:
    """The compiled-in regex-dna 8-mer motif set (9 expressions, 50 literals)."""
    return parse_expressions(BUILTIN_PATTERN_TEXT)
