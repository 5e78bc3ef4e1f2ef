"""Evaluation of a parsed scene: constructions in order, then each check.

Literals enter the chosen backend once, at declaration time. Every module
error raised while evaluating a statement is re-raised as an
:class:`EvaluationError` pointing at that statement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .. import conics, kernel, moulton, p2, theorems
from ..errors import BudgetExhausted, GeometryError
from ..kernel import DEFAULT_TOL, Tolerance
from ..p2 import LineP2, PointP2
from . import nodes as N
from .nodes import SourceSpan
from .parser import format_statement


class EvaluationError(Exception):
    def __init__(self, span: SourceSpan | None, message: str, cause: Exception | None = None):
        where = f"{span.line}:{span.column}: " if span else ""
        super().__init__(f"{where}{message}")
        self.span = span
        self.message = message
        self.cause = cause


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: object
    span: SourceSpan | None = field(default=None, compare=False)


@dataclass(frozen=True)
class InvolutionReport:
    pairs: tuple
    exchanged: bool


@dataclass(frozen=True)
class MoultonReport:
    witness: moulton.FailureWitness
    verified: bool
    euclidean: theorems.DesarguesVerdict


@dataclass(frozen=True)
class Circle:
    """A circle declaration: its conic plus the data needed to draw it."""

    conic: conics.Conic
    center: tuple
    radius: object


@dataclass(frozen=True)
class DrawnConic:
    conic: conics.Conic
    anchor: PointP2  # a point of the conic, for the rational parametrization


@dataclass
class Evaluation:
    env: dict
    outcomes: list
    backend: str


_PAIRINGS = {
    "same": theorems.SAME_PAIRINGS,
    "crossed": theorems.CROSSED_PAIRINGS,
    "nearnear": theorems.PairingSelector.NEAR_NEAR,
    "farfar": theorems.PairingSelector.FAR_FAR,
    "nearfar": theorems.PairingSelector.NEAR_FAR,
    "farnear": theorems.PairingSelector.FAR_NEAR,
}


class _Evaluator:
    def __init__(self, backend: str, tol: Tolerance):
        if backend not in (kernel.EXACT, kernel.APPROX):
            raise ValueError(f"unknown backend {backend!r}")
        self.backend = backend
        self.tol = tol
        self.env = {}

    def num(self, q: Fraction):
        return kernel.to_backend(q, self.backend)

    # -- name resolution --------------------------------------------------

    def lookup(self, ref: N.Ref, *kinds):
        if ref.name not in self.env:
            raise EvaluationError(ref.span, f"undeclared name '{ref.name}'")
        value = self.env[ref.name]
        if kinds and not isinstance(value, kinds):
            wanted = " or ".join(_kind_name(k) for k in kinds)
            raise EvaluationError(ref.span, f"'{ref.name}' is a {_kind_name(type(value))}, expected a {wanted}")
        return value

    def point(self, ref):
        return self.lookup(ref, PointP2)

    def line(self, ref):
        return self.lookup(ref, LineP2)

    def conic(self, ref) -> conics.Conic:
        value = self.lookup(ref, Circle, DrawnConic)
        return value.conic

    def bind(self, name: str, value, span):
        if name in self.env:
            raise EvaluationError(span, f"name '{name}' is already declared")
        self.env[name] = value

    # -- statements -------------------------------------------------------

    def expr(self, e):
        if isinstance(e, N.PointLiteral):
            return PointP2(self.num(e.x), self.num(e.y), self.num(1))
        if isinstance(e, N.PointHomogeneous):
            return PointP2(self.num(e.x), self.num(e.y), self.num(e.z))
        if isinstance(e, N.MeetOf):
            return p2.meet(self.line(e.a), self.line(e.b), self.tol)
        if isinstance(e, N.JoinOf):
            return p2.join(self.point(e.a), self.point(e.b), self.tol)
        if isinstance(e, N.AxisLine):
            one, zero = self.num(1), self.num(0)
            c = -self.num(e.value)
            return LineP2(one, zero, c) if e.axis == "x" else LineP2(zero, one, c)
        if isinstance(e, N.LineHomogeneous):
            return LineP2(self.num(e.u), self.num(e.v), self.num(e.w))
        if isinstance(e, N.PolarOf):
            c, p = self.conic(e.conic), self.point(e.point)
            if e.kind == "tangent":
                return conics.tangent_at(c, p, self.tol)
            return conics.polar(c, p, self.tol)
        if isinstance(e, N.CircleLiteral):
            center = (self.num(e.cx), self.num(e.cy))
            radius = self.num(e.r)
            return Circle(conics.conic_from_circle(center, radius), center, radius)
        if isinstance(e, N.ConicThrough):
            pts = [self.point(r) for r in e.points]
            return DrawnConic(conics.conic_through_five(pts, self.tol), pts[0])
        raise TypeError(f"unknown expression {e!r}")

    def statement(self, s):
        if isinstance(s, N.Declaration):
            self.bind(s.name, self.expr(s.expr), s.span)
            return None
        if isinstance(s, N.CompleteSection):
            carriers = tuple(self.line(r) for r in s.carriers)
            first = theorems.SectionQuadruplet(tuple(self.point(r) for r in s.first), carriers, admissible=True)
            second = [self.point(r) for r in s.second]
            self.bind(s.target, theorems.complete_section(carriers, first, *second, tol=self.tol), s.span)
            return None
        if isinstance(s, N.Render):
            return None
        return self.check(s)

    def check(self, s) -> CheckOutcome:
        name = format_statement(s).removeprefix("check ")
        tol = self.tol
        if isinstance(s, N.DesarguesCheck):
            pts = [self.point(r) for r in s.points]
            fn = theorems.check_desargues_converse if s.converse else theorems.check_desargues
            v = fn(*pts, tol=tol)
            return CheckOutcome(name, v.hypothesis_holds and v.conclusion_holds, v, s.span)
        if isinstance(s, N.InvolutionCheck):
            base = [self.point(r) for r in s.base]
            l = self.line(s.line)
            pairs = theorems.pencil_pairs(base, l, tol)
            ok = theorems.check_desargues_involution(base, l, tol)
            return CheckOutcome(name, ok, InvolutionReport(pairs, ok), s.span)
        if isinstance(s, N.Example1Check):
            c1, c2 = self.conic(s.c1), self.conic(s.c2)
            apex = self.point(s.apex)
            secants = [self.line(r) for r in s.secants]
            report = theorems.check_example1(c1, c2, apex, secants, _PAIRINGS[s.pairing], tol)
            return CheckOutcome(name, report.all_collinear, report, s.span)
        if isinstance(s, N.SectionCheck):
            carriers = tuple(self.line(r) for r in s.carriers)
            q1 = theorems.SectionQuadruplet(tuple(self.point(r) for r in s.first), carriers)
            q2 = theorems.SectionQuadruplet(tuple(self.point(r) for r in s.second), carriers)
            result = theorems.section_alignment(carriers, q1, q2, tol)
            return CheckOutcome(name, result.aligned, result, s.span)
        if isinstance(s, N.CollinearCheck):
            ok = p2.collinear(*(self.point(r) for r in s.points), tol)
            return CheckOutcome(name, ok, ok, s.span)
        if isinstance(s, N.SameCheck):
            ok = p2.same(self.point(s.a), self.point(s.b), tol)
            return CheckOutcome(name, ok, ok, s.span)
        if isinstance(s, N.MoultonCheck):
            # The Moulton plane is exact-only; the backend flag does not apply.
            try:
                w = moulton.find_desargues_failure(s.box, s.budget)
            except BudgetExhausted as exc:
                return CheckOutcome(name, False, str(exc), s.span)
            verified = moulton.verify_witness(w)
            euclid = moulton.euclidean_verdict(w)
            ok = verified and euclid.hypothesis_holds and euclid.conclusion_holds
            return CheckOutcome(name, ok, MoultonReport(w, verified, euclid), s.span)
        raise TypeError(f"unknown check {s!r}")


def _kind_name(t) -> str:
    return {PointP2: "point", LineP2: "line", Circle: "circle", DrawnConic: "conic"}.get(t, t.__name__)


def evaluate(scene: N.Scene, backend: str = kernel.EXACT, tol: Tolerance = DEFAULT_TOL) -> Evaluation:
    """Evaluate every statement in order; returns the environment and outcomes."""
    ev = _Evaluator(backend, tol)
    outcomes = []
    for s in scene.statements:
        try:
            out = ev.statement(s)
        except EvaluationError:
            raise
        except (GeometryError, ValueError) as exc:
            raise EvaluationError(s.span, f"{type(exc).__name__}: {exc}", exc) from exc
        if out is not None:
            outcomes.append(out)
    return Evaluation(ev.env, outcomes, backend)


def evaluate_scene(scene: N.Scene, backend: str = kernel.EXACT, tol: Tolerance = DEFAULT_TOL) -> list:
    return evaluate(scene, backend, tol).outcomes
