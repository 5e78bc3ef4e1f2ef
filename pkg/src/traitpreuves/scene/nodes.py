"""AST of the scene language.

Every node carries a :class:`SourceSpan`, but spans never take part in
equality, so a pretty-printed and re-parsed scene compares equal to the
original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 0

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self):
        return f"{self.line}:{self.column}"


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    """A use of a previously declared name."""

    name: str
    span: SourceSpan = _span()


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class PointLiteral:
    x: Fraction
    y: Fraction
    span: SourceSpan = _span()


@dataclass(frozen=True)
class PointHomogeneous:
    x: Fraction
    y: Fraction
    z: Fraction
    span: SourceSpan = _span()


@dataclass(frozen=True)
class MeetOf:
    a: Ref
    b: Ref
    span: SourceSpan = _span()


@dataclass(frozen=True)
class JoinOf:
    a: Ref
    b: Ref
    span: SourceSpan = _span()


@dataclass(frozen=True)
class AxisLine:
    """``x = c`` or ``y = c``."""

    axis: str
    value: Fraction
    span: SourceSpan = _span()


@dataclass(frozen=True)
class LineHomogeneous:
    u: Fraction
    v: Fraction
    w: Fraction
    span: SourceSpan = _span()


@dataclass(frozen=True)
class PolarOf:
    """``polar(k, P)`` or ``tangent(k, P)``; the tangent requires P on k."""

    kind: str
    conic: Ref
    point: Ref
    span: SourceSpan = _span()


@dataclass(frozen=True)
class CircleLiteral:
    cx: Fraction
    cy: Fraction
    r: Fraction
    span: SourceSpan = _span()


@dataclass(frozen=True)
class ConicThrough:
    points: tuple
    span: SourceSpan = _span()


# -- statements --------------------------------------------------------------


@dataclass(frozen=True)
class Declaration:
    kind: str  # point | line | circle | conic
    name: str
    expr: object
    span: SourceSpan = _span()

    @property
    def is_construction(self) -> bool:
        return isinstance(self.expr, (MeetOf, JoinOf, PolarOf, ConicThrough))


@dataclass(frozen=True)
class DesarguesCheck:
    converse: bool
    points: tuple
    span: SourceSpan = _span()


@dataclass(frozen=True)
class InvolutionCheck:
    base: tuple
    line: Ref
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Example1Check:
    c1: Ref
    c2: Ref
    apex: Ref
    pairing: str
    secants: tuple
    span: SourceSpan = _span()


@dataclass(frozen=True)
class SectionCheck:
    carriers: tuple
    first: tuple
    second: tuple
    span: SourceSpan = _span()


@dataclass(frozen=True)
class CollinearCheck:
    points: tuple
    span: SourceSpan = _span()


@dataclass(frozen=True)
class SameCheck:
    a: Ref
    b: Ref
    span: SourceSpan = _span()


@dataclass(frozen=True)
class MoultonCheck:
    box: tuple
    budget: int
    span: SourceSpan = _span()


@dataclass(frozen=True)
class CompleteSection:
    carriers: tuple
    first: tuple
    second: tuple
    target: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Render:
    path: str
    viewport: tuple
    span: SourceSpan = _span()


CHECKS = (DesarguesCheck, InvolutionCheck, Example1Check, SectionCheck, CollinearCheck, SameCheck, MoultonCheck)


@dataclass(frozen=True)
class Scene:
    statements: tuple

    @property
    def declarations(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, Declaration) and not s.is_construction)

    @property
    def constructions(self) -> tuple:
        return tuple(
            s
            for s in self.statements
            if isinstance(s, CompleteSection) or (isinstance(s, Declaration) and s.is_construction)
        )

    @property
    def checks(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, CHECKS))

    @property
    def renders(self) -> tuple:
        return tuple(s for s in self.statements if isinstance(s, Render))
