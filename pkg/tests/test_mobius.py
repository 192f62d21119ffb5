import numpy as np
import pytest

from loewnerweld.mobius import (INF, TWO_PI, DegenerateError, MobiusComplex, MobiusReal,
                                chordal_distance, circline_image, circline_through, cross_ratio,
                                mobius_apply, mobius_from_triple, orientation_triple,
                                real_mobius_from_angles)

from conftest import random_mobius


def test_apply_examples():
    assert mobius_apply(MobiusComplex.identity(), 3 + 4j) == 3 + 4j
    assert mobius_apply(MobiusComplex(0, -1, 1, 0), 1) == -1
    cay = MobiusComplex(1, -1j, 1, 1j)
    assert abs(mobius_apply(cay, 1j)) < 1e-15


def test_apply_infinity_conventions():
    m = MobiusComplex(2, 1, 1, 3).normalized()
    assert abs(mobius_apply(m, INF) - 2) < 1e-14
    assert np.isinf(mobius_apply(m, -3))


def test_from_triple_examples():
    m = mobius_from_triple(0, 1, INF, 0, 1, INF)
    assert m.isclose(MobiusComplex.identity())
    m = mobius_from_triple(0, 1, INF, INF, 1, 0)
    assert m.isclose(MobiusComplex(0, 1, 1, 0).normalized())


def test_from_triple_random(rng):
    for _ in range(50):
        p = rng.normal(size=3) + 1j * rng.normal(size=3)
        q = rng.normal(size=3) + 1j * rng.normal(size=3)
        m = mobius_from_triple(*p, *q)
        assert chordal_distance(mobius_apply(m, p), q).max() < 1e-12


def test_from_triple_degenerate():
    with pytest.raises(DegenerateError):
        mobius_from_triple(0, 0, 1, 0, 1, INF)


def test_orientation_examples(rng):
    assert orientation_triple(0, TWO_PI / 3, 2 * TWO_PI / 3) == 1
    assert orientation_triple(0, 2 * TWO_PI / 3, TWO_PI / 3) == -1
    for _ in range(100):
        a = MobiusReal(*rng.normal(size=4))
        if np.linalg.det(a.matrix) < 0:
            a = MobiusReal(-a.a, a.b, -a.c, a.d)
        x = rng.uniform(0, TWO_PI, 3)
        assert orientation_triple(*a.act_angle(x)) == orientation_triple(*x)


def test_orientation_degenerate():
    with pytest.raises(DegenerateError):
        orientation_triple(1.0, 1.0, 2.0)


def test_circline_examples():
    c = circline_through(1, 1j, -1)
    assert abs(c.center) < 1e-14 and abs(c.radius - 1) < 1e-14
    assert circline_through(0, 1, 2).is_line
    c = circline_through(0, 1 + 1j, 2)
    assert abs(c.center - 1) < 1e-14 and abs(c.radius - 1) < 1e-14


def test_group_laws(rng):
    for _ in range(100):
        m = random_mobius(rng)
        assert (m @ m.inverse()).isclose(MobiusComplex.identity(), 1e-12)
        n = random_mobius(rng)
        z = rng.normal() + 1j * rng.normal()
        lhs = mobius_apply(m @ n, z)
        rhs = mobius_apply(m, mobius_apply(n, z))
        assert chordal_distance(lhs, rhs) < 1e-10


def test_circlines_map_to_circlines(rng):
    for _ in range(20):
        m = random_mobius(rng)
        c = circline_through(*(rng.normal(size=3) + 1j * rng.normal(size=3)))
        img = circline_image(m, c)
        pts = mobius_apply(m, c.sample(20))
        assert img.residual(pts).max() < 1e-9


def test_cross_ratio_invariance(rng):
    for _ in range(50):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        m = random_mobius(rng)
        a = cross_ratio(*z)
        b = cross_ratio(*mobius_apply(m, z))
        assert abs(a - b) < 1e-10 * max(1, abs(a))


def test_real_mobius_from_angles(rng):
    x = np.sort(rng.uniform(0, TWO_PI, 3))
    y = np.sort(rng.uniform(0, TWO_PI, 3))
    a = real_mobius_from_angles(x, y)
    d = np.angle(np.exp(1j * (a.act_angle(x) - y)))
    assert np.abs(d).max() < 1e-10
    assert a(1j).imag > 0


def test_normalized_determinant(rng):
    for _ in range(20):
        m = MobiusComplex(*(rng.normal(size=4) + 1j * rng.normal(size=4))).normalized()
        assert abs(m.det - 1) < 1e-12
