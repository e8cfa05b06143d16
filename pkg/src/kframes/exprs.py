"""Construction expressions such as ``semisum(rect(2,2), cluster(1,1)#bimodal)``.

Grammar::

    expr  := call ("#bimodal")?
    call  := name "(" [arg ("," arg)*] ")"
    arg   := expr | integer | identifier | "{" [integer ("," integer)*] "}"

Constructors (``k, m, n, h`` are positive integers, ``E`` expressions):

    cluster(n[, label])   chain(h[, strict][, label])   antichain(n)
    gap(n)                rect(k, m)                    saw(k)
    tack1(k)              tack2(k, m)
    product(E, E)         sum(I, E, ..., E)             semisum(E, E)
    union(E, E)           quotient(E, {..}, ...)        tilde(E)

``product`` of two unimodal frames over the same label renames them to
``1`` and ``2``. ``#bimodal`` adds a diagonal relation ``2`` to a unimodal
frame. Unlisted worlds of a ``quotient`` stay singletons.
"""

from __future__ import annotations

import re

from . import constructions as C
from .errors import ExpressionError, FrameError
from .frame import Frame

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(#)|([(),{}]))")


class _Blocks(tuple):
    pass


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    at = pos + len(text[pos:]) - len(text[pos:].lstrip())
                    raise ExpressionError(f"unexpected character {text[at]!r}", at)
                break
            kind = m.lastindex
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.toks.append((0, "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value):
        kind, tok, at = self.peek()
        if tok != value:
            raise ExpressionError(f"expected {value!r}, found {tok or 'end of input'!r}", at)
        self.i += 1

    def expr(self):
        kind, name, at = self.peek()
        if kind != 2:
            raise ExpressionError(f"expected a constructor name, found {name or 'end of input'!r}", at)
        self.i += 1
        self.take("(")
        args = []
        if self.peek()[1] != ")":
            args.append(self.arg())
            while self.peek()[1] == ",":
                self.i += 1
                args.append(self.arg())
        self.take(")")
        try:
            F = _build(name, args)
        except ExpressionError as e:
            if e.position is not None:
                raise
            raise ExpressionError(str(e), at) from None
        except (FrameError, TypeError, ValueError) as e:
            raise ExpressionError(f"{name}: {e}", at) from None
        if self.peek()[1] == "#":
            self.i += 1
            kind, word, wat = self.peek()
            if word != "bimodal":
                raise ExpressionError(f"unknown suffix {word!r}", wat)
            self.i += 1
            try:
                F = C.lift_bimodal(F)
            except FrameError as e:
                raise ExpressionError(str(e), wat) from None
        return F

    def arg(self):
        kind, tok, at = self.peek()
        if kind == 1:
            self.i += 1
            return int(tok)
        if tok == "{":
            self.i += 1
            items = []
            while self.peek()[1] != "}":
                k2, t2, a2 = self.peek()
                if k2 != 1:
                    raise ExpressionError("block members must be world indices", a2)
                items.append(int(t2))
                self.i += 1
                if self.peek()[1] == ",":
                    self.i += 1
            self.take("}")
            return _Blocks(items)
        if kind == 2:
            nxt = self.toks[self.i + 1][1]
            if nxt == "(":
                return self.expr()
            self.i += 1
            return tok
        raise ExpressionError(f"unexpected {tok or 'end of input'!r}", at)


def _ints(name, args, lo, hi):
    if not lo <= len(args) <= hi or not all(isinstance(a, int) for a in args[:lo]):
        raise ExpressionError(f"{name} expects {lo}{'' if lo == hi else f'-{hi}'} arguments")
    return args


def _frames(name, args, count=None):
    if count is not None and len(args) != count:
        raise ExpressionError(f"{name} expects {count} frame arguments")
    if not all(isinstance(a, Frame) for a in args):
        raise ExpressionError(f"{name} expects frame arguments")
    return args


def _product(F, G):
    if len(F.alphabet) == 1 and len(G.alphabet) == 1 and F.alphabet == G.alphabet:
        F, G = F.relabel({F.alphabet[0]: "1"}), G.relabel({G.alphabet[0]: "2"})
    return C.product(F, G)


def _build(name, args):
    if name == "cluster":
        _ints(name, args, 1, 2)
        return C.cluster(args[0], str(args[1]) if len(args) > 1 else "1")
    if name == "chain":
        _ints(name, args, 1, 3)
        strict = "strict" in args[1:]
        rest = [str(a) for a in args[1:] if a != "strict"]
        return C.chain(args[0], reflexive=not strict, label=rest[0] if rest else "1")
    if name == "antichain":
        return C.antichain(*_ints(name, args, 1, 1))
    if name == "gap":
        return C.gap_cluster(*_ints(name, args, 1, 1))
    if name == "rect":
        return C.rectangle(*_ints(name, args, 2, 2))
    if name == "saw":
        return C.saw(*_ints(name, args, 1, 1))
    if name == "tack1":
        return C.tack1(*_ints(name, args, 1, 1))
    if name == "tack2":
        return C.tack2(*_ints(name, args, 2, 2))
    if name == "product":
        return _product(*_frames(name, args, 2))
    if name == "semisum":
        return C.semi_ordered_sum(*_frames(name, args, 2))
    if name == "union":
        return C.disjoint_union(*_frames(name, args, 2))
    if name == "sum":
        parts = _frames(name, args)
        if len(parts) < 2:
            raise ExpressionError("sum expects an index frame and its summands")
        return C.sum_over(C.FrameFamily(parts[0], tuple(parts[1:])))
    if name == "tilde":
        return C.productivize(*_frames(name, args, 1))[0]
    if name == "quotient":
        if not args or not isinstance(args[0], Frame) or \
                not all(isinstance(b, _Blocks) for b in args[1:]):
            raise ExpressionError("quotient expects a frame followed by {..} blocks")
        F = args[0]
        return C.quotient(F, C.Equivalence.from_blocks(F.n, args[1:]))[0]
    raise ExpressionError(f"unknown constructor {name!r}")


def build(text: str) -> Frame:
    """Evaluate a construction expression."""
    ps = _Parser(text)
    F = ps.expr()
    kind, tok, at = ps.peek()
    if kind != 0:
        raise ExpressionError(f"unexpected {tok!r}", at)
    return F
