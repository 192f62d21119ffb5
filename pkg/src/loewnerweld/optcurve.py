"""Minimal-energy Jordan curves through marked points by geodesic arc replacement."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .confmap import geodesic_samples, map_arc_complement, zip_closed
from .curves import CurvePolyline, ValidationError, _to_polyline, hausdorff, resample_by_arclength
from .energy import loop_energy
from .mobius import chordal_distance

log = logging.getLogger(__name__)


def split_arcs(curve: CurvePolyline):
    """Arcs between consecutive marks, each including both end marks."""
    if not curve.closed or len(curve.marks) < 2:
        raise ValidationError("need a closed curve with at least two marks")
    m = list(curve.marks)
    if any(np.diff(m) <= 0):
        raise ValidationError("marks must be increasing along the curve")
    n = len(m)
    return [curve.arc(m[k], m[(k + 1) % n]) for k in range(n)]


def join_arcs(arcs) -> CurvePolyline:
    """Closed curve from arcs whose ends match; marks at the arc starts."""
    pts, marks = [], []
    for a in arcs:
        marks.append(sum(len(p) for p in pts))
        pts.append(np.asarray(a)[:-1])
    return CurvePolyline(np.concatenate(pts), True, tuple(marks))


def rest_of_curve(arcs, k):
    """Points of the curve minus arc k, from its head z_{k+1} around to its tail z_k."""
    n = len(arcs)
    order = [(k + 1 + j) % n for j in range(n - 1)]
    parts = [arcs[j][:-1] for j in order[:-1]] + [arcs[order[-1]]]
    return np.concatenate(parts)


def arc_geodesic(arcs, k, samples, cluster=0.5):
    """Hyperbolic geodesic from z_k to z_{k+1} in the complement of the other arcs."""
    rest = rest_of_curve(arcs, k)
    chart = map_arc_complement(rest)
    g = geodesic_samples(chart.backward, samples, cluster=cluster, a=rest[0], b=rest[-1])
    return g[::-1]


@dataclass
class CurveProblem:
    points: np.ndarray
    initial: CurvePolyline
    tol: float = 1e-3
    max_sweeps: int = 20
    per_arc: int = 160
    cluster: float = 0.5
    relax: float = 1.0

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        if len(self.points) < 2:
            raise ValidationError("need at least two points")
        if not self.tol > 0:
            raise ValidationError("tolerance must be positive")
        init = self.initial
        if not init.closed or len(init.marks) != len(self.points):
            raise ValidationError("initial curve must be closed with one mark per point")
        d = chordal_distance(init.marked_points, self.points)
        if np.max(d) > 1e-9:
            k = int(np.argmax(d))
            raise ValidationError(f"initial curve misses point {k} at its mark")


def prepare_curve(curve: CurvePolyline, per_arc: int, cluster=0.5) -> CurvePolyline:
    """Resample every arc between marks to ``per_arc`` points by arclength."""
    c = curve.rolled(curve.marks[0]) if curve.marks[0] else curve
    arcs = [resample_by_arclength(a, per_arc, cluster) for a in split_arcs(c)]
    return join_arcs(arcs)


def geodesic_replacement_step(curve: CurvePolyline, k: int, per_arc: int | None = None,
                              cluster=0.5, check=True, relax=1.0) -> CurvePolyline:
    """Replace arc k (from mark k to mark k+1) by the geodesic of the complement of the rest.

    ``relax`` > 1 over-relaxes: the new arc is old + relax * (geodesic - old),
    matched by normalized arclength.
    """
    arcs = split_arcs(curve)
    n = len(arcs)
    k = k % n
    samples = len(arcs[k]) if per_arc is None else per_arc
    geo = arc_geodesic(arcs, k, samples, cluster)
    if relax != 1.0:
        old = resample_by_arclength(arcs[k], samples, cluster)
        geo = old + relax * (geo - old)
    arcs[k] = geo
    out = join_arcs(arcs)
    if check:
        out.check_simple()
    return out


def geodesic_residual(curve: CurvePolyline, samples=4000):
    """Per arc, largest chordal distance of its vertices to the geodesic of the complement of the rest.

    The geodesic is sampled densely, so the chords of the curve itself do not
    enter: a polyline whose vertices lie on the geodesic has residual ~0.
    """
    arcs = split_arcs(curve)
    return [float(_to_polyline(arcs[k], arc_geodesic(arcs, k, samples), False).max())
            for k in range(len(arcs))]


def minimize_curve(problem: CurveProblem, energy=True):
    """Cyclic geodesic replacement sweeps.

    Returns (curve, energy_trace, residuals).  The sweep stops once the
    largest arc displacement in a sweep is below tol / 2; ``residuals`` are
    the final per-arc geodesic residuals.  ``converged`` is logged, and the
    last iterate is returned either way.
    """
    curve = prepare_curve(problem.initial, problem.per_arc, problem.cluster)
    n = len(curve.marks)
    trace = [loop_energy(curve).value] if energy else []
    converged = False
    for sweep in range(problem.max_sweeps):
        moved = 0.0
        for k in range(n):
            old = split_arcs(curve)[k]
            # the first sweep is a plain replacement, later ones over-relax
            curve = geodesic_replacement_step(curve, k, problem.per_arc, problem.cluster,
                                              relax=problem.relax if sweep else 1.0)
            moved = max(moved, hausdorff(old, split_arcs(curve)[k]))
        if energy:
            trace.append(loop_energy(curve).value)
        log.info("sweep %d: displacement %.3g", sweep + 1, moved)
        if moved < 0.5 * problem.tol:
            converged = True
            break
    if not converged:
        log.warning("minimize_curve: no convergence after %d sweeps", problem.max_sweeps)
    return curve, trace, geodesic_residual(curve)


def schwarzian_sides(curve: CurvePolyline, idx, offsets=(4, 16), degree=4):
    """S of the conformal map to the half-planes at curve vertices, from either side.

    On the polygon itself S is dominated by the vertices, so S is sampled
    along the normal at distances offsets[0]*h .. offsets[1]*h (h the mean
    edge length, the range shrunk to a third of the distance to the nearest
    mark) on each side and the polynomial fit is evaluated at the curve.  Returns (left, right) for the left and right sides of the
    given orientation.
    """
    cz = zip_closed(curve)
    F = cz.F
    p = curve.points
    n = len(p)
    idx = np.asarray(idx)
    h = np.mean(np.abs(np.diff(np.append(p, p[0]))))
    marks = curve.marked_points
    left = np.empty(len(idx), dtype=complex)
    right = np.empty(len(idx), dtype=complex)
    for i, j in enumerate(idx):
        t = p[(j + 1) % n] - p[j - 1]
        nrm = 1j * t / abs(t)
        top = h * (offsets[1] - 1)
        if len(marks):
            top = min(top, np.abs(marks - p[j]).min() / 3)
        s = np.linspace(top * offsets[0] / (offsets[1] - 1), top, offsets[1] - offsets[0])
        a = F.derivs(p[j] + s * nrm)[3]
        b = F.derivs(p[j] - s * nrm)[3]
        left[i] = np.polyval(np.polyfit(s, a, degree), 0.0)
        right[i] = np.polyval(np.polyfit(-s, b, degree), 0.0)
    return left, right


def schwarzian_certificate(curve: CurvePolyline, per_arc=20, margin=0.2):
    """Relative gap |S_in - S_out| / max(|S_in|, |S_out|) at interior samples of each arc.

    A minimizer has the same Schwarzian of its two uniformizing maps along
    the curve away from the marks.  Samples are taken on the middle
    1 - 2*margin of every arc.  Returns (indices, gaps).
    """
    m = list(curve.marks) + [curve.marks[0] + len(curve)]
    idx = []
    for a, b in zip(m[:-1], m[1:]):
        span = b - a
        lo, hi = a + margin * span, b - margin * span
        idx.append(np.round(np.linspace(lo, hi, per_arc)).astype(int) % len(curve))
    idx = np.concatenate(idx)
    sl, sr = schwarzian_sides(curve, idx)
    gap = np.abs(sl - sr) / np.maximum(np.maximum(np.abs(sl), np.abs(sr)), 1e-300)
    return idx, gap
