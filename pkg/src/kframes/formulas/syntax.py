"""Formula AST, derived connectives, parser and printer.

The core has four node types (``Var``, ``Bot``, ``Imp``, ``Dia``); every
other connective is an abbreviation that builds core nodes:

    ~a      = a -> false
    true    = false -> false
    a | b   = ~a -> b
    a & b   = ~(a -> ~b)
    [l]a    = ~<l>~a

The printer recognises these shapes again, so ``parse(to_text(f)) == f``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from ..errors import FormulaSyntaxError


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable indices are non-negative")


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    label: str
    body: Formula


BOT = Bot()
TOP = Imp(BOT, BOT)


def p(i: int) -> Var:
    return Var(i)


def Not(a):
    return Imp(a, BOT)


def Or(a, b):
    return Imp(Not(a), b)


def And(a, b):
    return Not(Imp(a, Not(b)))


def Box(label, a):
    return Not(Dia(str(label), Not(a)))


def disj(items) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``false``."""
    items = list(items)
    return reduce(Or, items) if items else BOT


def conj(items) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    items = list(items)
    return reduce(And, items) if items else TOP


# -- inspection -------------------------------------------------------------

def variables(f: Formula) -> tuple[int, ...]:
    """Sorted indices of the variables occurring in ``f``."""
    found = set()
    stack = [f]
    seen = set()
    while stack:
        g = stack.pop()
        if id(g) in seen:
            continue
        seen.add(id(g))
        if isinstance(g, Var):
            found.add(g.index)
        elif isinstance(g, Imp):
            stack += [g.left, g.right]
        elif isinstance(g, Dia):
            stack.append(g.body)
    return tuple(sorted(found))


def labels(f: Formula) -> tuple[str, ...]:
    found = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Imp):
            stack += [g.left, g.right]
        elif isinstance(g, Dia):
            found.add(g.label)
            stack.append(g.body)
    return tuple(sorted(found))


def size(f: Formula) -> int:
    if isinstance(f, Imp):
        return 1 + size(f.left) + size(f.right)
    if isinstance(f, Dia):
        return 1 + size(f.body)
    return 1


def depth(f: Formula) -> int:
    """Modal depth."""
    if isinstance(f, Imp):
        return max(depth(f.left), depth(f.right))
    if isinstance(f, Dia):
        return 1 + depth(f.body)
    return 0


def substitute_diamonds(f: Formula, rule) -> Formula:
    """Rebuild ``f`` bottom-up, replacing each ``Dia(l, b)`` by ``rule(l, b')``.

    ``b'`` is the already-translated body. Boolean structure is kept, so the
    result is compatible with every connective.
    """
    memo = {}

    def go(g):
        key = id(g)
        if key in memo:
            return memo[key][1]
        if isinstance(g, Imp):
            out = Imp(go(g.left), go(g.right))
        elif isinstance(g, Dia):
            out = rule(g.label, go(g.body))
        else:
            out = g
        memo[key] = (g, out)  # keep g alive so ids stay unique
        return out

    return go(f)


# -- printing ---------------------------------------------------------------

def _neg_body(f):
    """Return ``a`` if ``f`` is ``~a`` (and not ``true``), else None."""
    if isinstance(f, Imp) and f.right == BOT and f.left != BOT:
        return f.left
    return None


def _prints_as_sugar(f) -> bool:
    """``f`` is a negation that the printer shows as ``&`` or ``[l]``."""
    inner = _neg_body(f)
    if isinstance(inner, Dia):
        return _neg_body(inner.body) is not None
    if isinstance(inner, Imp):
        return _neg_body(inner.right) is not None
    return False


def _render(f, top=False) -> str:
    if isinstance(f, Var):
        return f"p{f.index}"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Dia):
        return f"<{f.label}>{_render(f.body)}"
    if f == TOP:
        return "true"
    inner = _neg_body(f)
    if inner is not None:
        # [l]a
        if isinstance(inner, Dia):
            a = _neg_body(inner.body)
            if a is not None:
                return f"[{inner.label}]{_render(a)}"
        # a & b
        if isinstance(inner, Imp):
            b = _neg_body(inner.right)
            if b is not None:
                s = f"{_render(inner.left)} & {_render(b)}"
                return s if top else f"({s})"
        return f"~{_render(inner)}"
    a = _neg_body(f.left)
    if a is not None and not _prints_as_sugar(f.left):
        s = f"{_render(a)} | {_render(f.right)}"
    else:
        s = f"{_render(f.left)} -> {_render(f.right)}"
    return s if top else f"({s})"


def to_text(f: Formula) -> str:
    """Concrete syntax; binary connectives are parenthesised except at top level."""
    return _render(f, top=True)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"->|[~&|()<>\[\]]|\w+")
_SPACE = re.compile(r"\s*")


def _tokenize(text):
    toks = []
    pos = _SPACE.match(text).end()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        toks.append((m.group(), pos))
        pos = _SPACE.match(text, m.end()).end()
    toks.append(("", len(text)))
    return toks


class _Parser:
    def __init__(self, text, alphabet):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.alphabet = None if alphabet is None else set(alphabet)

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def fail(self, msg):
        raise FormulaSyntaxError(msg, self.pos(), self.text)

    def take(self, tok):
        if self.peek() != tok:
            got = self.peek() or "end of input"
            self.fail(f"expected {tok!r}, found {got!r}")
        self.i += 1

    def formula(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.peek() == "|":
            self.i += 1
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.peek() == "&":
            self.i += 1
            f = And(f, self.unary())
        return f

    def label(self, close):
        tok, at = self.toks[self.i]
        if not tok or not re.fullmatch(r"\w+", tok):
            self.fail("expected a modality label")
        if self.alphabet is not None and tok not in self.alphabet:
            raise FormulaSyntaxError(f"unknown modality label {tok!r}", at, self.text)
        self.i += 1
        self.take(close)
        return tok

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.i += 1
            return Not(self.unary())
        if tok == "<":
            self.i += 1
            lab = self.label(">")
            return Dia(lab, self.unary())
        if tok == "[":
            self.i += 1
            lab = self.label("]")
            return Box(lab, self.unary())
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok == "(":
            self.i += 1
            f = self.formula()
            self.take(")")
            return f
        if tok == "false":
            self.i += 1
            return BOT
        if tok == "true":
            self.i += 1
            return TOP
        if re.fullmatch(r"p\d+", tok or ""):
            self.i += 1
            return Var(int(tok[1:]))
        self.fail(f"expected a formula, found {tok or 'end of input'!r}")


def parse(text: str, alphabet=None) -> Formula:
    """Parse concrete syntax; with ``alphabet`` given, foreign labels are rejected."""
    ps = _Parser(text, alphabet)
    f = ps.formula()
    if ps.peek() != "":
        ps.fail(f"unexpected {ps.peek()!r}")
    return f
