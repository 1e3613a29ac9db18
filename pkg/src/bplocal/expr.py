"""Parser for module expressions.

    expr := term ("+" term)* | "0"
    term := ["S^" int] inv* ("R" | "BP" | "BP_*") ["/" ("(" gen ("," gen)* ")" | "I" int)]
    inv  := gen "^-1"
    gen  := ("p" | "v" idx) ["^" (int | "inf")]

Whitespace is ignored.  The notation printed by ``render`` in either style is
accepted, so "Σ^{-2} v_1^{-1} BP_*/(p^∞)" parses as well.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass

from .errors import ExpressionError, TruncationExceeded
from .grading import RingDescriptor
from .modules import CCM, INF, ModuleSum, normalize

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>-?\d+)
  | (?P<inf>inf|∞)
  | (?P<base>BP_\*|BP|R)
  | (?P<susp>S|Σ)
  | (?P<gen>p|v_?(?=\d))
  | (?P<ideal>I(?=\d))
  | (?P<punct>[\^/(),+{}])
""", re.VERBOSE)


_NAMES = {"gen": "a generator (p or vN)", "num": "an integer", "base": "R",
          "end": "end of input", "inf": "inf"}


class NormalizationWarning(UserWarning):
    """A term of the expression normalized to the zero module."""


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            kind = m.lastgroup if m.lastgroup != "punct" else m.group()
            out.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: RingDescriptor):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        t = self.tok
        if t.kind != kind:
            want = _NAMES.get(kind, repr(kind))
            got = "end of input" if t.kind == "end" else repr(t.text)
            raise ExpressionError(f"expected {want}, got {got}", t.pos)
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def integer(self) -> int:
        braced = self.accept("{")
        val = int(self.take("num").text)
        if braced:
            self.take("}")
        return val

    def exponent(self):
        """After '^': int, inf, or -1 (returned as the string 'inv')."""
        braced = self.accept("{")
        t = self.tok
        if t.kind == "inf":
            self.i += 1
            val = INF
        else:
            val = int(self.take("num").text)
            if val == -1:
                val = "inv"
            elif val < 1:
                raise ExpressionError("exponent must be >= 1, -1 or inf", t.pos)
        if braced:
            self.take("}")
        return val

    def generator(self):
        t = self.take("gen")
        if t.text == "p":
            idx = 0
        else:
            idx = int(self.take("num").text)
            if idx < 1:
                raise ExpressionError("v indices start at 1; use p for v_0", t.pos)
        if idx > self.ring.truncation:
            raise TruncationExceeded(
                f"v_{idx} at position {t.pos} exceeds truncation "
                f"{self.ring.truncation}")
        e = 1
        if self.accept("^"):
            e = self.exponent()
        return idx, e, t.pos

    def term(self) -> CCM:
        start = self.tok.pos
        susp = 0
        if self.accept("susp"):
            self.take("^")
            susp = self.integer()
        inverted = []
        while self.tok.kind == "gen":
            idx, e, pos = self.generator()
            if e != "inv":
                raise ExpressionError("only inverses may precede R", pos)
            inverted.append(idx)
        self.take("base")
        exps = {}
        if self.accept("/"):
            if self.tok.kind == "ideal":
                self.i += 1
                t = self.tok
                k = int(self.take("num").text)
                if k < 1:
                    raise ExpressionError("I_k needs k >= 1", t.pos)
                if k - 1 > self.ring.truncation:
                    raise TruncationExceeded(
                        f"I{k} at position {t.pos} needs v_{k - 1}")
                exps = {i: 1 for i in range(k)}
            else:
                self.take("(")
                while True:
                    idx, e, pos = self.generator()
                    if e == "inv":
                        raise ExpressionError("cannot quotient by an inverse", pos)
                    if idx in exps:
                        raise ExpressionError("generator repeated", pos)
                    exps[idx] = e
                    if not self.accept(","):
                        break
                self.take(")")
        raw = CCM.make(susp, exps, inverted)
        if normalize(raw, self.ring) is None:
            warnings.warn(f"term at position {start} is zero: an inverted "
                          "generator also appears in the quotient",
                          NormalizationWarning, stacklevel=4)
        return raw

    def expr(self) -> ModuleSum:
        if self.tok.kind == "num" and self.tok.text == "0":
            self.i += 1
            self.take("end")
            return ModuleSum.zero(self.ring)
        terms = [self.term()]
        while self.accept("+"):
            terms.append(self.term())
        self.take("end")
        return ModuleSum.of(self.ring, terms)


def parse_expression(text: str, ring: RingDescriptor) -> ModuleSum:
    """Parse ``text`` into a normalized ModuleSum over ``ring``."""
    if not text.strip():
        raise ExpressionError("empty expression", 0)
    return _Parser(text, ring).expr()


def max_index(text: str) -> int:
    """Largest generator index mentioned (I_k counts as v_{k-1}); -1 if none."""
    best = -1
    toks = tokenize(text)
    for a, b in zip(toks, toks[1:]):
        if a.kind == "gen" and a.text == "p":
            best = max(best, 0)
        elif a.kind in ("gen", "ideal") and b.kind == "num":
            best = max(best, int(b.text) - (a.kind == "ideal"))
    return best
