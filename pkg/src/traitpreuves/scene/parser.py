"""Tokenizer, recursive-descent parser and pretty-printer for ``.scene`` files.

The language is line oriented: one statement per line, ``#`` starts a
comment. Numbers are exact: ``3``, ``-2/7`` and ``0.25`` all parse to
:class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction

from .. import kernel
from ..errors import ZeroDenominator
from . import nodes as N
from .nodes import SourceSpan


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{span.line}:{span.column}: {message}")
        self.span = span
        self.message = message


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, NUMBER, PATH, OP, NEWLINE, EOF
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, len(self.text))

    def describe(self) -> str:
        if self.kind == "NEWLINE":
            return "end of line"
        if self.kind == "EOF":
            return "end of input"
        return repr(self.text)


_TOKEN = re.compile(
    r"""
    (?P<space>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<PATH>[A-Za-z0-9_./-]*\.svg\b)
  | (?P<NUMBER>\d+\.\d+|\d+(?:/\d+)?)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<OP>[()\[\],:=-])
    """,
    re.VERBOSE,
)


def tokenize(text: str):
    tokens = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None:
                raise ParseError(SourceSpan(lineno, pos + 1, 1), f"unexpected character {line[pos]!r}")
            kind = m.lastgroup
            if kind not in ("space", "comment"):
                tokens.append(Token(kind, m.group(), lineno, pos + 1))
            pos = m.end()
        tokens.append(Token("NEWLINE", "", lineno, len(line.rstrip("\r")) + 1))
    last = tokens[-1]
    tokens.append(Token("EOF", "", last.line, last.column))
    return tokens


def _span_between(first: Token, last: Token) -> SourceSpan:
    if first.line != last.line:
        return first.span
    return SourceSpan(first.line, first.column, last.column + len(last.text) - first.column)


PAIRINGS = ("same", "crossed", "nearnear", "farfar", "nearfar", "farnear")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers ---------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(tok.span, f"expected {expected}, found {tok.describe()}")

    def expect_op(self, op: str) -> Token:
        if self.tok.kind == "OP" and self.tok.text == op:
            return self.advance()
        self.fail(f"'{op}'")

    def at_op(self, op: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == op

    def expect_keyword(self, word: str) -> Token:
        if self.tok.kind == "NAME" and self.tok.text == word:
            return self.advance()
        self.fail(f"'{word}'")

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "NAME" and self.tok.text == word

    def name(self) -> Token:
        if self.tok.kind == "NAME":
            return self.advance()
        self.fail("a name")

    def ref(self) -> N.Ref:
        t = self.name()
        return N.Ref(t.text, t.span)

    def number(self) -> Fraction:
        negative = False
        if self.at_op("-"):
            self.advance()
            negative = True
        if self.tok.kind != "NUMBER":
            self.fail("a number")
        t = self.advance()
        try:
            value = kernel.parse_rational(t.text)
        except ZeroDenominator:
            raise ParseError(t.span, "zero denominator") from None
        return -value if negative else value

    def integer(self) -> int:
        t = self.tok
        value = self.number()
        if value.denominator != 1:
            raise ParseError(t.span, "expected an integer")
        return int(value)

    def num_tuple(self, n: int) -> tuple:
        self.expect_op("(")
        out = [self.number()]
        for _ in range(n - 1):
            self.expect_op(",")
            out.append(self.number())
        self.expect_op(")")
        return tuple(out)

    def ref_list(self) -> tuple:
        self.expect_op("[")
        out = []
        if not self.at_op("]"):
            out.append(self.ref())
            while self.at_op(","):
                self.advance()
                out.append(self.ref())
        self.expect_op("]")
        return tuple(out)

    def option(self, key: str):
        self.expect_keyword(key)
        self.expect_op("=")

    def sized_list(self, key: str, n: int) -> tuple:
        self.option(key)
        start = self.tok
        refs = self.ref_list()
        if len(refs) != n:
            raise ParseError(start.span, f"expected {n} names in {key}")
        return refs

    # -- grammar ----------------------------------------------------------

    def scene(self) -> N.Scene:
        statements = []
        while self.tok.kind != "EOF":
            if self.tok.kind == "NEWLINE":
                self.advance()
                continue
            statements.append(self.statement())
            if self.tok.kind not in ("NEWLINE", "EOF"):
                self.fail("end of line")
        return N.Scene(tuple(statements))

    def statement(self):
        first = self.tok
        if first.kind != "NAME":
            self.fail("a statement")
        handler = {
            "point": self.point_decl,
            "line": self.line_decl,
            "circle": self.circle_decl,
            "conic": self.conic_decl,
            "check": self.check,
            "complete": self.complete,
            "moulton": self.moulton,
            "render": self.render,
        }.get(first.text)
        if handler is None:
            self.fail("a statement keyword")
        self.advance()
        node = handler()
        span = _span_between(first, self.toks[self.i - 1])
        return replace(node, span=span)

    def _decl_head(self):
        t = self.name()
        self.expect_op("=")
        return t.text

    def point_decl(self):
        name = self._decl_head()
        start = self.tok
        if self.at_keyword("meet"):
            self.advance()
            self.expect_op("(")
            a = self.ref()
            self.expect_op(",")
            b = self.ref()
            self.expect_op(")")
            expr = N.MeetOf(a, b)
        else:
            self.expect_op("(")
            x = self.number()
            if self.at_op(":"):
                self.advance()
                y = self.number()
                self.expect_op(":")
                z = self.number()
                self.expect_op(")")
                expr = N.PointHomogeneous(x, y, z)
            else:
                self.expect_op(",")
                y = self.number()
                self.expect_op(")")
                expr = N.PointLiteral(x, y)
        expr = replace(expr, span=_span_between(start, self.toks[self.i - 1]))
        return N.Declaration("point", name, expr)

    def line_decl(self):
        name = self._decl_head()
        start = self.tok
        nxt = self.toks[self.i + 1]
        if start.kind == "NAME" and start.text in ("x", "y") and nxt.kind == "OP" and nxt.text == "=":
            self.advance()
            self.advance()
            expr = N.AxisLine(start.text, self.number())
        elif self.at_keyword("join"):
            self.advance()
            self.expect_op("(")
            a = self.ref()
            self.expect_op(",")
            b = self.ref()
            self.expect_op(")")
            expr = N.JoinOf(a, b)
        elif self.at_keyword("polar") or self.at_keyword("tangent"):
            kind = self.advance().text
            self.expect_op("(")
            c = self.ref()
            self.expect_op(",")
            p = self.ref()
            self.expect_op(")")
            expr = N.PolarOf(kind, c, p)
        elif self.at_op("["):
            self.advance()
            u = self.number()
            self.expect_op(":")
            v = self.number()
            self.expect_op(":")
            w = self.number()
            self.expect_op("]")
            expr = N.LineHomogeneous(u, v, w)
        else:
            self.fail("a line expression")
        expr = replace(expr, span=_span_between(start, self.toks[self.i - 1]))
        return N.Declaration("line", name, expr)

    def circle_decl(self):
        name = self._decl_head()
        start = self.expect_op("(")
        self.expect_keyword("center")
        self.expect_op(":")
        cx, cy = self.num_tuple(2)
        self.expect_op(",")
        self.expect_keyword("r")
        self.expect_op(":")
        r_tok = self.tok
        r = self.number()
        if r <= 0:
            raise ParseError(r_tok.span, "expected a positive radius")
        self.expect_op(")")
        return N.Declaration("circle", name, N.CircleLiteral(cx, cy, r, _span_between(start, self.toks[self.i - 1])))

    def conic_decl(self):
        name = self._decl_head()
        start = self.expect_keyword("through")
        self.expect_op("(")
        pts = [self.ref()]
        while self.at_op(","):
            self.advance()
            pts.append(self.ref())
        end = self.expect_op(")")
        if len(pts) != 5:
            raise ParseError(_span_between(start, end), "expected 5 points")
        return N.Declaration("conic", name, N.ConicThrough(tuple(pts), _span_between(start, end)))

    def check(self):
        kind = self.name()
        word = kind.text
        if word in ("desargues", "converse"):
            return N.DesarguesCheck(word == "converse", tuple(self.ref() for _ in range(6)))
        if word == "involution":
            base = tuple(self.ref() for _ in range(4))
            self.expect_keyword("on")
            return N.InvolutionCheck(base, self.ref())
        if word == "example1":
            c1, c2 = self.ref(), self.ref()
            self.option("apex")
            apex = self.ref()
            self.option("pairing")
            p = self.name()
            if p.text not in PAIRINGS:
                self.fail("a pairing (" + ", ".join(PAIRINGS) + ")", p)
            self.option("secants")
            return N.Example1Check(c1, c2, apex, p.text, self.ref_list())
        if word == "section":
            carriers = self.sized_list("carriers", 4)
            first = self.sized_list("first", 4)
            second = self.sized_list("second", 4)
            return N.SectionCheck(carriers, first, second)
        if word == "collinear":
            return N.CollinearCheck(tuple(self.ref() for _ in range(3)))
        if word == "same":
            return N.SameCheck(self.ref(), self.ref())
        self.fail("a check kind", kind)

    def complete(self):
        self.expect_keyword("section")
        carriers = self.sized_list("carriers", 4)
        first = self.sized_list("first", 4)
        second = self.sized_list("second", 3)
        self.expect_keyword("as")
        return N.CompleteSection(carriers, first, second, self.name().text)

    def moulton(self):
        self.expect_keyword("check")
        box, budget = (Fraction(-4), Fraction(-4), Fraction(4), Fraction(4)), 100_000
        if self.at_keyword("box"):
            self.option("box")
            box = self.num_tuple(4)
        if self.at_keyword("budget"):
            self.option("budget")
            budget = self.integer()
        return N.MoultonCheck(box, budget)

    def render(self):
        if self.tok.kind != "PATH":
            self.fail("an .svg file name")
        path = self.advance().text
        self.option("viewport")
        start = self.tok
        vp = self.num_tuple(4)
        if not (vp[0] < vp[2] and vp[1] < vp[3]):
            raise ParseError(start.span, "expected xmin < xmax and ymin < ymax")
        return N.Render(path, vp)


def parse_scene(text: str) -> N.Scene:
    return _Parser(text).scene()


# -- pretty-printer -----------------------------------------------------------


def _num(q) -> str:
    return str(Fraction(q))


def _refs(refs, sep=" ") -> str:
    return sep.join(r.name for r in refs)


def _nums(values) -> str:
    return ", ".join(_num(v) for v in values)


def format_expr(e) -> str:
    if isinstance(e, N.PointLiteral):
        return f"({_num(e.x)}, {_num(e.y)})"
    if isinstance(e, N.PointHomogeneous):
        return f"({_num(e.x)}:{_num(e.y)}:{_num(e.z)})"
    if isinstance(e, N.MeetOf):
        return f"meet({e.a.name}, {e.b.name})"
    if isinstance(e, N.JoinOf):
        return f"join({e.a.name}, {e.b.name})"
    if isinstance(e, N.AxisLine):
        return f"{e.axis} = {_num(e.value)}"
    if isinstance(e, N.LineHomogeneous):
        return f"[{_num(e.u)}:{_num(e.v)}:{_num(e.w)}]"
    if isinstance(e, N.PolarOf):
        return f"{e.kind}({e.conic.name}, {e.point.name})"
    if isinstance(e, N.CircleLiteral):
        return f"(center: ({_num(e.cx)}, {_num(e.cy)}), r: {_num(e.r)})"
    if isinstance(e, N.ConicThrough):
        return f"through({_refs(e.points, ', ')})"
    raise TypeError(f"not an expression: {e!r}")


def format_statement(s) -> str:
    if isinstance(s, N.Declaration):
        return f"{s.kind} {s.name} = {format_expr(s.expr)}"
    if isinstance(s, N.DesarguesCheck):
        return f"check {'converse' if s.converse else 'desargues'} {_refs(s.points)}"
    if isinstance(s, N.InvolutionCheck):
        return f"check involution {_refs(s.base)} on {s.line.name}"
    if isinstance(s, N.Example1Check):
        return (
            f"check example1 {s.c1.name} {s.c2.name} apex={s.apex.name} "
            f"pairing={s.pairing} secants=[{_refs(s.secants, ', ')}]"
        )
    if isinstance(s, N.SectionCheck):
        return (
            f"check section carriers=[{_refs(s.carriers, ', ')}] "
            f"first=[{_refs(s.first, ', ')}] second=[{_refs(s.second, ', ')}]"
        )
    if isinstance(s, N.CollinearCheck):
        return f"check collinear {_refs(s.points)}"
    if isinstance(s, N.SameCheck):
        return f"check same {s.a.name} {s.b.name}"
    if isinstance(s, N.MoultonCheck):
        return f"moulton check box=({_nums(s.box)}) budget={s.budget}"
    if isinstance(s, N.CompleteSection):
        return (
            f"complete section carriers=[{_refs(s.carriers, ', ')}] "
            f"first=[{_refs(s.first, ', ')}] second=[{_refs(s.second, ', ')}] as {s.target}"
        )
    if isinstance(s, N.Render):
        return f"render {s.path} viewport=({_nums(s.viewport)})"
    raise TypeError(f"not a statement: {s!r}")


def format_scene(scene: N.Scene) -> str:
    return "".join(format_statement(s) + "\n" for s in scene.statements)
