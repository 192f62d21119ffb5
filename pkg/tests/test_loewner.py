import numpy as np
import pytest

from loewnerweld.confmap import map_arc_complement
from loewnerweld.curves import CurvePolyline, DrivingFunction, ValidationError
from loewnerweld.loewner import (chord_energy_in_domain, dirichlet_energy, extract_driving,
                                 trace)

from conftest import circle


def _sup_err(w, func):
    t = np.linspace(0, w.T, 4001)
    return np.abs(w(t) - func(t)).max()


def test_trace_zero_driving_tip():
    c = trace(DrivingFunction(np.array([0.0, 1.0]), np.zeros(2)), 200)
    assert abs(c.points[-1] - 2j) < 1e-12
    assert np.abs(c.points.real).max() < 1e-12
    # g_t(z) = sqrt(z^2 + 4t) gives tip 2i sqrt(t)
    t = np.linspace(0, 1, 201)
    assert np.abs(c.points - 2j * np.sqrt(t)).max() < 1e-12


def test_round_trip_linear():
    w = DrivingFunction.from_callable(lambda t: 1.0 * t, 1.0, 2000)
    back = extract_driving(trace(w, 2000))
    assert abs(back.T - 1.0) < 1e-3
    assert _sup_err(back, lambda t: t) < 1e-2


def test_round_trip_sine():
    w = DrivingFunction.from_callable(lambda t: 0.8 * np.sin(t), 1.0, 2000)
    back = extract_driving(trace(w, 2000))
    assert _sup_err(back, lambda t: 0.8 * np.sin(t)) < 1e-2


def test_scaling_of_trace():
    lam = 1.7
    w = DrivingFunction.from_callable(lambda t: 0.8 * np.sin(3 * t), 1.0, 400)
    a = trace(w, 400)
    b = trace(w.scaled(lam), 400)
    assert np.abs(b.points - lam * a.points).max() < 1e-3


def test_extract_vertical_segments():
    for h, T in ((2.0, 1.0), (4.0, 4.0)):
        seg = CurvePolyline(1j * np.linspace(0, h, 101))
        w = extract_driving(seg)
        assert abs(w.T - T) < 1e-12
        assert np.abs(w.values).max() < 1e-12


def test_extract_rejects_bad_chords():
    with pytest.raises(ValidationError):
        extract_driving(CurvePolyline(np.array([1j, 2j, 3j])))
    with pytest.raises(ValidationError):
        extract_driving(CurvePolyline(np.array([0, 1j, 1 - 1j])))


def test_capacity_grid_increasing():
    z = np.linspace(0, 1, 200)
    chord = CurvePolyline(z * (1 + 2j) + 0.3 * np.sin(8 * z) + 0j)
    chord = CurvePolyline(np.concatenate([[0], chord.points[1:]]))
    w = extract_driving(chord)
    assert np.all(np.diff(w.times) > 0)


def test_dirichlet_examples():
    assert dirichlet_energy(DrivingFunction(np.array([0.0, 1.0]), np.zeros(2))) == 0.0
    w = DrivingFunction.from_callable(lambda t: 2 * t, 1.0, 10)
    assert abs(dirichlet_energy(w) - 2.0) < 1e-14
    w = DrivingFunction(np.array([0.0, 1.0, 2.0]), np.array([0.0, 1.0, 1.0]))
    assert dirichlet_energy(w) == 0.5


def test_dirichlet_additivity_and_scaling(rng):
    t = np.concatenate([[0.0], np.sort(rng.uniform(0, 2, 30)), [2.0]])
    w = DrivingFunction(t, np.concatenate([[0.0], rng.normal(size=31)]))
    s = t[12]
    assert abs(dirichlet_energy(w) - dirichlet_energy(w.head(s))
               - dirichlet_energy(w.restrict(s))) < 1e-12
    assert abs(dirichlet_energy(w.scaled(2.3)) - dirichlet_energy(w)) < 1e-12 * dirichlet_energy(w)


def test_driving_validation():
    with pytest.raises(ValidationError, match="index 2"):
        DrivingFunction(np.array([0.0, 1.0, 0.5]), np.zeros(3))


def test_chord_energy_imaginary_axis():
    chord = CurvePolyline(1j * np.concatenate([[0], np.geomspace(1e-3, 1e3, 200)]))
    assert chord_energy_in_domain(chord) < 1e-10


def test_chord_energy_geodesic_of_disk():
    disk = circle(400)
    diam = CurvePolyline(np.linspace(-1, 1, 201) + 0j)
    assert chord_energy_in_domain(diam, disk) < 1e-6


def test_chord_energy_chart_independent():
    # a curved chord in H, measured directly and inside a scaled copy of the domain
    s = np.linspace(0, 1, 300)
    chord = CurvePolyline(np.concatenate([[0], (s[1:] * 2j + 0.3 * s[1:] ** 2)]))
    e1 = chord_energy_in_domain(chord)
    scaled = CurvePolyline(5.0 * chord.points)
    e2 = chord_energy_in_domain(scaled)
    assert e1 > 1e-4
    assert abs(e1 - e2) < 1e-6


def test_chord_energy_in_arc_complement_geodesic():
    arc = CurvePolyline(np.array([-1.0, 0, 1.0]) + 0j)
    chart = map_arc_complement(arc)
    geo = chart.backward.value(1j * np.geomspace(1e-4, 1e4, 300))
    chord = CurvePolyline(np.concatenate([[-1.0], geo[1:-1], [1.0]]))
    assert chord_energy_in_domain(chord, arc) < 1e-4
