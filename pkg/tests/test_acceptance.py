"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""

import subprocess
import sys
from fractions import Fraction
from pathlib import Path

from traitpreuves import conics, moulton, p2, properties, theorems
from traitpreuves.p2 import PointP2, point
from traitpreuves.theorems import SectionQuadruplet

ROOT = Path(__file__).resolve().parent.parent
SCENES = sorted((ROOT / "scenes").glob("*.scene"))
BROKEN = Path(__file__).resolve().parent / "fixtures" / "broken.scene"
SEED = 42
F = Fraction


def _trait(*args):
    return subprocess.run([sys.executable, "-m", "traitpreuves", *args], capture_output=True, text=True)


def test_criterion_01_desargues_forward(criterion):
    run = properties.desargues(SEED, 1000)
    infinite = run.stats.get("infinite_meets", 0)
    ok = run.passed and infinite >= 50 and run.seconds < 5
    detail = f"{run.count} cases, {len(run.failures)} failures, {infinite} with infinite meets, {run.seconds:.2f}s"
    assert criterion(1, "Desargues forward", ok, detail)


def test_criterion_02_desargues_converse(criterion):
    run = properties.converse(SEED, 1000)
    ok = run.passed and run.seconds < 5
    assert criterion(2, "Desargues converse", ok, f"{run.count} cases, {len(run.failures)} failures, {run.seconds:.2f}s")


def test_criterion_03_worked_instance(criterion):
    v = theorems.check_desargues(point(1, 0), point(0, 1), point(1, 1), point(2, 0), point(0, 3), point(4, 4))
    meets = (point(4, -3), point(-8, 1), point(1, -2))
    ok = v.side_meets == meets and p2.collinear(*meets) and v.conclusion_holds
    assert criterion(3, "worked Desargues instance", ok, "side meets " + ", ".join(map(str, v.side_meets)))


def test_criterion_04_spatial_lift(criterion):
    run = properties.lift(SEED, 200)
    assert criterion(4, "spatial lift round trip and axis", run.passed, f"{run.count} cases, {len(run.failures)} failures")


def test_criterion_05_example1_circles(criterion):
    c1, c2 = conics.conic_from_circle((0, 0), 1), conics.conic_from_circle((4, 0), 2)
    apex = point(-4, 0)
    touch = [(F(3, 5), F(4, 5)), (F(4, 5), F(3, 5)), (F(5, 13), F(12, 13)), (F(12, 13), F(5, 13)), (F(8, 17), F(15, 17))]
    secants = [p2.join(apex, point(x, y)) for x, y in touch]
    same = theorems.check_example1(c1, c2, apex, secants, theorems.SAME_PAIRINGS)
    crossed = theorems.check_example1(c1, c2, apex, secants, theorems.CROSSED_PAIRINGS)
    at_infinity = all(m.coords[2] == 0 for m in same.meets)
    on_axis = all(8 * m.coords[0] - 13 * m.coords[2] == 0 for m in crossed.meets)
    specific = point(F(13, 8), F(1, 32)) in crossed.meets
    ok = len(secants) >= 5 and same.all_collinear and at_infinity and crossed.all_collinear and on_axis and specific
    detail = f"{len(secants)} secants, {len(same.meets)} same meets at infinity, {len(crossed.meets)} crossed meets on 8x-13z=0"
    assert criterion(5, "example 1 exact circles", ok, detail)


def test_criterion_06_example1_general_conics(criterion):
    run = properties.example1_conics(SEED, 100)
    worst = run.stats.get("max_residual", float("nan"))
    ok = run.passed and worst <= 1e-9
    assert criterion(6, "example 1 general conics, approx", ok, f"{run.count} pairs, max residual {worst:.2e}")


def test_criterion_07_example2(criterion):
    carriers = tuple(p2.LineP2(1, 0, -k) for k in range(4))
    first = SectionQuadruplet((point(0, 0), point(1, 1), point(2, 1), point(3, 0)), carriers, admissible=True)
    d1 = theorems.complete_section(carriers, first, point(0, 2), point(1, 2), point(2, 3))
    run = properties.example2_lift(SEED, 200)
    ok = d1 == point(3, 5) and run.passed
    assert criterion(7, "example 2 section completion", ok, f"D' = {d1}, {run.count} sheets, {len(run.failures)} failures")


def test_criterion_08_pencil_involution(criterion):
    run = properties.involution(SEED, 200)
    base = (point(1, 1), point(-1, 1), point(-1, -1), point(1, -1))
    inv = theorems.pencil_involution(base, p2.LineP2(0, 1, 0))
    reflection = all(p2.apply_involution(inv, point(t, 0)) == point(-t, 0) for t in (1, 2, F(-5, 3), 7))
    fixes = p2.apply_involution(inv, point(0, 0)) == point(0, 0) and p2.apply_involution(inv, PointP2(1, 0, 0)) == PointP2(1, 0, 0)
    ok = run.passed and reflection and fixes
    assert criterion(8, "pencil involution", ok, f"{run.count} pencils, {len(run.failures)} failures, square gives t -> -t")


def test_criterion_09_moulton(criterion):
    run = properties.moulton_axioms(SEED, 10_000)
    w = moulton.find_desargues_failure()
    verified = moulton.verify_witness(w)
    euclid = moulton.euclidean_verdict(w)
    ok = run.passed and verified and w.collinearity_defect > 0 and euclid.hypothesis_holds and euclid.conclusion_holds
    detail = f"{run.count} axiom cases, witness center {w.center} defect {w.collinearity_defect}, Euclidean cross-check holds"
    assert criterion(9, "Moulton plane", ok, detail)


def test_criterion_10_cross_ratio(criterion):
    run = properties.cross_ratio(SEED, 500)
    harmonic = p2.cross_ratio(PointP2(0, 0, 1), PointP2(1, 0, 0), PointP2(1, 0, 1), PointP2(-1, 0, 1))
    affine = p2.cross_ratio(*(point(t, 0) for t in range(4)))
    ok = run.passed and harmonic == -1 and affine == F(4, 3)
    assert criterion(10, "cross-ratio", ok, f"{run.count} homographies, harmonic {harmonic}, affine {affine}")


def test_criterion_11_scene_cli(criterion, tmp_path):
    checks = {path.name: _trait("check", str(path)).returncode for path in SCENES}
    corpus_ok = len(checks) == 7 and all(code == 0 for code in checks.values())
    renders = []
    for run in range(2):
        out = tmp_path / f"desargues-{run}.svg"
        _trait("render", str(ROOT / "scenes" / "desargues.scene"), "-o", str(out))
        renders.append(out.read_bytes())
    golden = (ROOT / "tests" / "golden" / "desargues.svg").read_bytes()
    golden_ok = renders[0] == renders[1] == golden
    broken = _trait("check", str(BROKEN))
    broken_ok = broken.returncode == 2 and f"{BROKEN}:3:16:" in broken.stderr
    ok = corpus_ok and golden_ok and broken_ok
    detail = f"{sum(c == 0 for c in checks.values())}/7 scenes pass, golden stable {golden_ok}, broken scene exit {broken.returncode}"
    assert criterion(11, "scene language and CLI", ok, detail)
