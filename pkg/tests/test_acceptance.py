"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import time

import numpy as np
import pytest

from loewnerweld.ads import (AdSBoundaryPoint, SpacelikePlane, graph_points,
                             is_positive_curve, isometry_act, isometry_act_coords,
                             plane_boundary_check, pleat_from_circular, pleat_from_welding,
                             signature_table)
from loewnerweld.curves import CurvePolyline, DrivingFunction, hausdorff
from loewnerweld.energy import arc_energy, loop_energy, loop_energy_driving
from loewnerweld.loewner import chord_energy_in_domain, dirichlet_energy, extract_driving, trace
from loewnerweld.mobius import TWO_PI, MobiusReal, mobius_apply
from loewnerweld.optcurve import (CurveProblem, minimize_curve, schwarzian_certificate,
                                  split_arcs)
from loewnerweld.optweld import WeldProblem, circular_fit_report, minimize_welding
from loewnerweld.weld import (WeldingSamples, align_weldings, c1_break_report,
                              fit_mobius_pieces, welding_from_curve, wrap)

from conftest import circle, perturbed_square, poly_curve, polygon, random_mobius, record

GENERIC = np.array([0, 2, 1 + 2j, -1 + 1j])
X = np.pi / 2 * np.arange(4)
Y = np.array([0.1, 1.9, 3.3, 4.9])
UNIT = np.exp(1j * np.linspace(0, TWO_PI, 4000))


def _rng():
    return np.random.default_rng(20240611)


def _monotone_violation(trace):
    return float(max(0.0, np.diff(trace).max()))


@pytest.fixture(scope="module")
def problem1():
    t = time.time()
    prob = CurveProblem(GENERIC, polygon(GENERIC, 160), tol=1e-3, max_sweeps=40)
    curve, trace, res = minimize_curve(prob)
    return prob, curve, trace, res, time.time() - t


@pytest.fixture(scope="module")
def problem2():
    t = time.time()
    w, curve, trace = minimize_welding(WeldProblem(X, Y, tol=1e-4, max_sweeps=20))
    return w, curve, trace, time.time() - t


def test_criterion_01_driving_round_trip():
    f = lambda t: 0.8 * np.sin(t)  # noqa: E731
    tt = np.linspace(0, 1, 20001)
    errs, t0 = [], time.time()
    for n in (1000, 2000, 4000):
        back = extract_driving(trace(DrivingFunction.from_callable(f, 1.0, n), n))
        errs.append(np.abs(back(tt) - f(tt)).max())
        if n == 2000:
            runtime = time.time() - t0
    ratios = [errs[0] / errs[1], errs[1] / errs[2]]
    ok = errs[1] < 1e-2 and min(ratios) >= 2 and runtime < 30
    record(1, ok, f"sup err {errs[1]:.2e} at 2000 steps, refinement ratios "
                  f"{ratios[0]:.2f} {ratios[1]:.2f}, {runtime:.1f} s")


def test_criterion_02_exact_energies():
    zero = dirichlet_energy(DrivingFunction(np.array([0.0, 1.0]), np.zeros(2)))
    lin = dirichlet_energy(DrivingFunction.from_callable(lambda t: 2 * t, 1.0, 1000))
    ok = zero == 0 and abs(lin - 2) <= 4 * np.finfo(float).eps
    record(2, ok, f"E(0) = {zero}, E(2t) - 2 = {lin - 2:.1e}")


def test_criterion_03_circle_law():
    c = circle(300)
    a, b = loop_energy(c).value, loop_energy_driving(c).value
    rng = _rng()
    worst = 0.0
    for _ in range(20):
        m = random_mobius(rng)
        d = CurvePolyline(mobius_apply(m, c.points), True)
        worst = max(worst, loop_energy(d).value, loop_energy_driving(d).value)
    ok = a < 1e-3 and b < 1e-3 and worst < 1e-3
    record(3, ok, f"circle {a:.1e} (Liouville) {b:.1e} (driving), "
                  f"worst of 20 Moebius images {worst:.1e}")


def test_criterion_04_cross_method():
    gaps = []
    for n in (200, 400, 800):
        c = poly_curve(n, 0.1)
        a, b = loop_energy(c).value, loop_energy_driving(c).value
        gaps.append(abs(a - b) / max(a, b, 0.1))
    ok = gaps[1] < 0.05 and gaps[2] <= gaps[0]
    record(4, ok, "relative gap at n = 200, 400, 800: " + " ".join(f"{g:.2e}" for g in gaps))


def test_criterion_05_additivity():
    n = 400
    p = poly_curve(n, 0.2).points
    i, j = n // 8, n // 2 + n // 8
    total = loop_energy(CurvePolyline(p, True)).value
    arc = CurvePolyline(p[i:j + 1])
    ia = arc_energy(arc).value
    ic = chord_energy_in_domain(CurvePolyline(np.concatenate([p[j:], p[:i + 1]])), arc)
    gap = abs(total - ia - ic) / total
    record(5, gap < 0.05, f"I^L {total:.5f}, I^A {ia:.5f}, I^C {ic:.5f}, relative gap {gap:.2e}")


def test_criterion_06_circle_recovery():
    t = time.time()
    roots = np.exp(0.5j * np.pi * np.arange(4))
    prob = CurveProblem(roots, perturbed_square(_rng()), tol=1e-3, max_sweeps=20)
    curve, trace, _ = minimize_curve(prob)
    dt = time.time() - t
    d = hausdorff(curve, UNIT, True, True)
    sweeps = len(trace) - 1
    ok = trace[-1] < 1e-3 and d < 1e-2 and sweeps <= 20 and dt < 120
    record(6, ok, f"energy {trace[-1]:.1e}, Hausdorff to circle {d:.1e}, "
                  f"{sweeps} sweeps, {dt:.0f} s")


def test_criterion_07_generic_points(problem1):
    _, curve, trace, res, dt = problem1
    w = welding_from_curve(curve)
    pieces = fit_mobius_pieces(w)
    jumps = c1_break_report(w, pieces)
    fit = max(r for _, r in pieces)
    viol = _monotone_violation(trace)
    ok = viol < 1e-3 and max(res) < 1e-3 and fit < 1e-3 and max(jumps) < 1e-2
    record(7, ok, f"monotone violation {viol:.1e}, geodesic residual {max(res):.1e}, "
                  f"Moebius fit {fit:.1e}, C1 jump {max(jumps):.1e}, {dt:.0f} s")


def test_criterion_08_schwarzian_certificate(problem1):
    curve = problem1[1]
    _, gap = schwarzian_certificate(curve, per_arc=20)
    ok = len(gap) == 20 * len(curve.marks) and gap.max() < 0.1
    record(8, ok, f"max relative Schwarzian gap {gap.max():.1e} over {len(gap)} samples")


def test_criterion_09_identity_and_mobius_constraints():
    rho = MobiusReal(1.3, 0.4, -0.2, 0.7).normalized()
    th = np.linspace(0, TWO_PI, 64, endpoint=False)
    out = []
    for y, ref in ((X, th), (rho.act_angle(X), rho.act_angle(th))):
        w, curve, trace = minimize_welding(WeldProblem(X, y))
        direct = float(np.abs(wrap(w(th) - ref)).max())
        ideal = WeldingSamples(th, ref)
        aligned = align_weldings(w, ideal)[2]
        out.append((trace[-1], direct, aligned))
    ok = all(e < 1e-3 and d < 1e-2 and a < 1e-2 for e, d, a in out)
    record(9, ok, "identity: energy {:.1e} err {:.1e} aligned {:.1e}; "
                  "Moebius: energy {:.1e} err {:.1e} aligned {:.1e}".format(*out[0], *out[1]))


def test_criterion_10_generic_constraints(problem2):
    w, curve, trace, dt = problem2
    rep = circular_fit_report(curve)
    res = max(r for _, r, _ in rep)
    ang = max(abs(a - np.pi) for _, _, a in rep)
    viol = _monotone_violation(trace)
    cons = float(np.abs(wrap(w(X) - Y)).max())
    ok = viol < 1e-3 and res < 1e-3 and ang < 0.05 and cons < 1e-2
    record(10, ok, f"monotone violation {viol:.1e}, circle residual {res:.1e}, "
                   f"joint angle error {ang:.1e}, constraint error {cons:.1e}, {dt:.0f} s")


def test_criterion_11_ads_algebra(problem1, problem2):
    _, g = signature_table()
    sig = np.array_equal(g, np.diag([-1.0, 1.0, 1.0, -1.0]))
    rng = _rng()

    def real():
        while True:
            m = rng.normal(size=(2, 2))
            if np.linalg.det(m) > 0.05:
                return MobiusReal.from_matrix(m)

    worst = max(plane_boundary_check(real(), x) for x in rng.uniform(0, TWO_PI, 10000))
    eq = 0.0
    for _ in range(200):
        a, b = real(), real()
        p = AdSBoundaryPoint(*rng.uniform(0, TWO_PI, 2))
        q1, q2 = isometry_act(a, b, p), isometry_act_coords(a, b, p)
        eq = max(eq, abs(wrap(q1.x - q2.x)), abs(wrap(q1.y - q2.y)))
        al = real()
        plane = SpacelikePlane(al).act(a, b)
        eq = max(eq, abs(plane.pairing(
            isometry_act_coords(a, b, SpacelikePlane(al).boundary_point(p.x)).representative)))
    w7 = welding_from_curve(problem1[1])
    w10 = problem2[0]
    pos = [is_positive_curve(graph_points(w.theta, w.image))[0] for w in (w7, w10)]
    # pleated planes of both optimizers: 4 faces + 2 triangles and 5 bending lines
    pp1 = pleat_from_welding(fit_mobius_pieces(w7), graph_points(w7.x, w7.y))
    arcs = split_arcs(problem2[1])
    pp2 = pleat_from_circular([(f, (a[0], a[-1]))
                               for (f, _, _), a in zip(circular_fit_report(problem2[1]), arcs)])
    shape = all(len(p.faces) == 6 and len(p.bending_lines) == 5 for p in (pp1, pp2))
    ok = sig and worst < 1e-12 and eq < 1e-12 and all(pos) and shape
    record(11, ok, f"signature exact {sig}, plane check {worst:.1e}, equivariance {eq:.1e}, "
                   f"positive {pos}, pleats {len(pp1.faces)}/{len(pp2.faces)} faces")


def test_criterion_12_mobius_invariance(problem1):
    prob, curve = problem1[0], problem1[1]
    m = random_mobius(_rng(), avoid=4.0)
    moved = CurveProblem(mobius_apply(m, prob.points),
                         CurvePolyline(mobius_apply(m, prob.initial.points), True,
                                       prob.initial.marks),
                         tol=prob.tol, max_sweeps=prob.max_sweeps)
    other = minimize_curve(moved, energy=False)[0]
    d = hausdorff(other, mobius_apply(m, curve.points), True, True)
    record(12, d < 1e-2, f"Hausdorff between transformed minimizers {d:.1e}")
