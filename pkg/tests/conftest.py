import warnings

import numpy as np
import pytest

from loewnerweld.curves import CurvePolyline
from loewnerweld.mobius import MobiusComplex

warnings.filterwarnings("ignore", category=Warning, module="numba")


def circle(n=400, marks=(), center=0j, r=1.0, phase=0.0):
    t = phase + 2 * np.pi * np.arange(n) / n
    return CurvePolyline(center + r * np.exp(1j * t), True, marks)


def poly_curve(n=400, c=0.1):
    t = 2 * np.pi * np.arange(n) / n
    z = np.exp(1j * t)
    return CurvePolyline(z + c * z * z, True)


def random_mobius(rng, scale=2.0, avoid=1.6):
    """Random PSL(2,C) map with bounded coefficients whose pole stays off |z| < avoid."""
    while True:
        a, b, c, d = rng.uniform(-scale, scale, 4) + 1j * rng.uniform(-scale, scale, 4)
        m = MobiusComplex(a, b, c, d)
        if abs(m.det) < 0.3:
            continue
        if abs(c) < 1e-3 or abs(d / c) > avoid:
            return m.normalized()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def polygon(vertices, per_edge=40):
    """Closed polyline through the vertices, marked at each vertex."""
    v = np.asarray(vertices, dtype=complex)
    s = np.arange(per_edge) / per_edge
    pts = np.concatenate([a + s * (b - a) for a, b in zip(v, np.roll(v, -1))])
    return CurvePolyline(pts, True, tuple(per_edge * np.arange(len(v))))


def perturbed_square(rng, noise=0.2, per_edge=40):
    """Polygon through the 4th roots of unity with a noisy midpoint on each edge."""
    roots = np.exp(0.5j * np.pi * np.arange(4))
    mids = 0.5 * (roots + np.roll(roots, -1))
    mids = mids + noise * (rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)) / np.sqrt(2)
    c = polygon(np.ravel(np.stack([roots, mids], axis=1)), per_edge // 2)
    return CurvePolyline(c.points, True, c.marks[::2])


ACCEPTANCE = []


def record(criterion, ok, detail):
    """Register a pass/fail line for the acceptance summary and assert it."""
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
