"""Randomized property suites, shared by the test suite and ``trait fuzz``.

Each suite draws ``count`` cases from a seeded generator and returns a
:class:`PropertyRun`. A case either passes or is recorded, by index, in
``failures``; the run never stops early.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import conics, generators, moulton, p2, p3, theorems
from .errors import GeometryError


@dataclass
class PropertyRun:
    name: str
    seed: int
    count: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.stats.items()))
        return f"{status} {self.name} seed={self.seed} count={self.count} failures={len(self.failures)}{extra} ({self.seconds:.2f}s)"


def _run(name, seed, count, case):
    rng = random.Random(seed)
    run = PropertyRun(name, seed, count)
    start = time.perf_counter()
    for i in range(count):
        try:
            ok = case(rng, run.stats)
        except GeometryError as exc:
            _bump(run.stats, "errors")
            run.failures.append((i, repr(exc)))
            continue
        if not ok:
            run.failures.append((i, None))
    run.seconds = time.perf_counter() - start
    return run


def _bump(stats, key, by=1):
    stats[key] = stats.get(key, 0) + by


def _desargues_case(rng, stats):
    inst = generators.perspective_configuration(rng, parallel_sides=rng.random() < 0.1)
    v = theorems.check_desargues(*inst.points)
    if any(m.at_infinity for m in v.side_meets):
        _bump(stats, "infinite_meets")
    return v.hypothesis_holds and v.conclusion_holds


def desargues(seed=0, count=1000) -> PropertyRun:
    return _run("desargues", seed, count, _desargues_case)


def _converse_case(rng, stats):
    v = theorems.check_desargues_converse(*generators.axial_configuration(rng))
    return v.hypothesis_holds and v.conclusion_holds


def converse(seed=0, count=1000) -> PropertyRun:
    return _run("converse", seed, count, _converse_case)


def _involution_case(rng, stats):
    base, line = generators.pencil_instance(rng)
    return theorems.check_desargues_involution(base, line)


def involution(seed=0, count=200) -> PropertyRun:
    return _run("involution", seed, count, _involution_case)


def _lift_case(rng, stats):
    inst = generators.perspective_configuration(rng)
    v = theorems.check_desargues(*inst.points)
    lift = p3.lift_desargues(*inst.points, center=inst.center, height=rng.randint(1, 5))
    back = tuple(p3.project(lift.projection, x) for x in lift.points)
    if back != inst.points:
        return False
    axis = p3.project_line(lift.projection, p3.meet_planes(*lift.planes))
    return axis == v.axis


def lift(seed=0, count=200) -> PropertyRun:
    return _run("lift", seed, count, _lift_case)


def radical_axis(cp: conics.CirclePair) -> p2.LineP2:
    (x1, y1), (x2, y2) = cp.center1, cp.center2
    r1, r2 = cp.radius1, cp.radius2
    return p2.LineP2(2 * (x2 - x1), 2 * (y2 - y1), x1 * x1 + y1 * y1 - r1 * r1 - x2 * x2 - y2 * y2 + r2 * r2)


def _circles_case(rng, stats):
    inst = generators.circle_instance(rng)
    cp = inst.pair
    same = theorems.check_example1(cp.circle1, cp.circle2, inst.apex, inst.secants, theorems.SAME_PAIRINGS)
    crossed = theorems.check_example1(cp.circle1, cp.circle2, inst.apex, inst.secants, theorems.CROSSED_PAIRINGS)
    axis = radical_axis(cp)
    return (
        same.all_collinear
        and all(m.at_infinity for m in same.meets)
        and crossed.all_collinear
        and all(p2.incident(m, axis) for m in crossed.meets)
    )


def example1_circles(seed=0, count=100) -> PropertyRun:
    return _run("example1-circles", seed, count, _circles_case)


def _conics_case(rng, stats):
    inst = generators.conic_pair_instance(rng)
    r = theorems.check_example1(inst.conic1, inst.conic2, inst.apex, inst.secants, theorems.CROSSED_PAIRINGS)
    stats["max_residual"] = max(stats.get("max_residual", 0.0), r.max_residual)
    return r.max_residual <= 1e-9


def example1_conics(seed=0, count=100) -> PropertyRun:
    return _run("example1-conics", seed, count, _conics_case)


def _sheet_case(rng, stats):
    inst = generators.sheet_instance(rng)
    a1, b1, c1, d1 = inst.second.points
    d = theorems.complete_section(inst.carriers, inst.first, a1, b1, c1)
    return d == d1 and theorems.verify_section_against_lift(inst.sheet, inst.projection, (a1, b1, c1, d))


def example2_lift(seed=0, count=200) -> PropertyRun:
    return _run("example2-lift", seed, count, _sheet_case)


def _moulton_point(rng):
    return moulton.MoultonPoint(generators.rational(rng, 6, 3), generators.rational(rng, 6, 3))


def _moulton_case(rng, stats):
    """Two points span one line; two lines share at most one point."""
    p, q = _moulton_point(rng), _moulton_point(rng)
    if p == q:
        return True
    l = moulton.m_line_through(p, q)
    if not (moulton.m_incident(p, l) and moulton.m_incident(q, l)):
        return False
    # Uniqueness: any other point of l spans the same line with p.
    x = p.x + generators.rational(rng, 3, 3)
    r = moulton.MoultonPoint(x, l.y_at(x)) if isinstance(l, moulton.Bent) else moulton.MoultonPoint(l.c, p.y + 1)
    if r != p and moulton.m_line_through(p, r) != l:
        return False
    s, t = _moulton_point(rng), _moulton_point(rng)
    if s == t:
        return True
    m = moulton.m_line_through(s, t)
    if m == l:
        return True
    x = moulton.m_meet(l, m)
    if x is None:
        _bump(stats, "parallel")
        return True
    return moulton.m_incident(x, l) and moulton.m_incident(x, m)


def moulton_axioms(seed=0, count=10_000) -> PropertyRun:
    return _run("moulton-axioms", seed, count, _moulton_case)


def _cross_ratio_case(rng, stats):
    a, b = generators.affine_point(rng), generators.affine_point(rng)
    if a == b:
        return True
    ts = set()
    while len(ts) < 2:
        t = generators.rational(rng, 5, 3)
        if t not in (0, 1):
            ts.add(t)
    quad = [a, b] + [p2.from_parameters((a, b), 1 - t, t) for t in sorted(ts)]
    before = p2.cross_ratio(*quad)
    h = generators.homography(rng)
    after = p2.cross_ratio(*(p2.apply_homography(h, x) for x in quad))
    return before == after


def cross_ratio(seed=0, count=500) -> PropertyRun:
    return _run("cross-ratio", seed, count, _cross_ratio_case)


SUITES = {
    "desargues": desargues,
    "converse": converse,
    "involution": involution,
    "lift": lift,
    "example1-circles": example1_circles,
    "example1-conics": example1_conics,
    "example2-lift": example2_lift,
    "moulton-axioms": moulton_axioms,
    "cross-ratio": cross_ratio,
}


def run_suite(name: str, seed: int = 0, count: int | None = None) -> PropertyRun:
    suite = SUITES[name]
    return suite(seed) if count is None else suite(seed, count)

