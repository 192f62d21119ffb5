import numpy as np
import pytest

from loewnerweld.curves import CurvePolyline, ValidationError, hausdorff
from loewnerweld.energy import loop_energy
from loewnerweld.optcurve import (CurveProblem, geodesic_replacement_step, geodesic_residual,
                                  join_arcs, minimize_curve, prepare_curve, split_arcs)

from conftest import circle, perturbed_square, polygon


def test_split_join_round_trip():
    c = circle(120, marks=(0, 30, 70))
    arcs = split_arcs(c)
    assert [len(a) for a in arcs] == [31, 41, 51]
    d = join_arcs(arcs)
    assert np.array_equal(d.points, c.points) and d.marks == c.marks


def test_problem_validation():
    c = circle(100, marks=(0, 50))
    with pytest.raises(ValidationError, match="misses point 1"):
        CurveProblem(np.array([1, 0.5j]), c)
    with pytest.raises(ValidationError):
        CurveProblem(np.array([1, -1, 1j]), c)
    with pytest.raises(ValidationError):
        CurveProblem(np.array([1, -1]), c, tol=0)


def test_circle_is_fixed_point():
    c = circle(400, marks=(0, 100, 200, 300))
    for k in range(4):
        d = geodesic_replacement_step(c, k)
        assert np.abs(np.abs(d.points) - 1).max() < 1e-10
        assert hausdorff(d, c, True, True) < 1e-3


def test_residuals_circle_and_square(rng):
    assert max(geodesic_residual(circle(400, marks=(0, 100, 200, 300)), 4000)) < 1e-6
    assert max(geodesic_residual(perturbed_square(rng))) > 1e-2


def test_step_decreases_energy(rng):
    c = prepare_curve(perturbed_square(rng), 120)
    e0 = loop_energy(c).value
    d = c
    for k in range(4):
        d = geodesic_replacement_step(d, k)
    e1 = loop_energy(d).value
    assert e1 < e0 - 1e-2
    assert np.allclose(d.marked_points, c.marked_points)


def test_step_keeps_cyclic_order_of_marks(rng):
    c = prepare_curve(perturbed_square(rng), 120)
    d = geodesic_replacement_step(c, 1)
    assert d.signed_area() > 0 and d.marks == c.marks


def test_three_points_give_circle():
    pts = np.array([0.0, 2.0, 1 + 1.5j])
    init = polygon(pts, 60)
    curve, trace, res = minimize_curve(CurveProblem(pts, init, per_arc=80))
    assert trace[-1] < 1e-3 and max(res) < 1e-3
    # circumcircle of the three points
    a, b, c = pts
    d = 2 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag) + c.real * (a.imag - b.imag))
    cen = ((abs(a) ** 2) * (b.imag - c.imag) + (abs(b) ** 2) * (c.imag - a.imag)
           + (abs(c) ** 2) * (a.imag - b.imag)) / d
    cen += 1j * ((abs(a) ** 2) * (c.real - b.real) + (abs(b) ** 2) * (a.real - c.real)
                 + (abs(c) ** 2) * (b.real - a.real)) / d
    assert np.abs(np.abs(curve.points - cen) - abs(a - cen)).max() < 1e-2
