"""Chordal Loewner evolution in (H; 0, inf): tracing, driving extraction, energy."""
from __future__ import annotations

import numpy as np

from .curves import CurvePolyline, DrivingFunction, ValidationError
from .maps import Chain, Mob
from .mobius import chordal_distance, is_inf
from .zipper import Zipper, step_factors, tip_from_increment


def trace(w: DrivingFunction, steps_per_unit: int = 1000) -> CurvePolyline:
    """Curve generated by ``w``, sampled at n + 1 equally spaced capacity times.

    n = max(steps_per_unit, len(grid) - 1).  Each step is the exact geodesic
    slit whose driving increment is linear, so the trace is covariant under
    the Loewner scaling t -> lam^2 t, W -> lam W.
    """
    if steps_per_unit < 1:
        raise ValidationError("steps_per_unit must be positive")
    n = max(int(steps_per_unit), len(w.times) - 1)
    t = np.linspace(0.0, w.T, n + 1)
    W = w(t)
    dt = np.diff(t)
    dW = np.diff(W)
    tips = np.empty(n, dtype=complex)
    steps = []
    for j in range(n):
        a = tip_from_increment(dt[j], dW[j])
        tips[j] = W[j] + a
        steps.append(step_factors(a, W[j])[0])
    # pull every tip back through the earlier steps, latest first
    pts = tips.copy()
    for j in range(n - 2, -1, -1):
        z = pts[j + 1:]
        for f in reversed(steps[j]):
            z = f.inverse().value(z)
        pts[j + 1:] = z
    return CurvePolyline(np.concatenate([[complex(W[0])], pts]), closed=False)


def _zip_chord(points):
    p = np.asarray(points, dtype=complex)
    if is_inf(p[-1]):
        p = p[:-1]
    if abs(p[0].imag) > 1e-12 * max(1.0, abs(p[0])):
        raise ValidationError("chord must start on the real line")
    if np.any(p[1:].imag <= 0):
        i = int(np.flatnonzero(p[1:].imag <= 0)[0]) + 1
        raise ValidationError(f"chord leaves the upper half-plane at index {i}")
    z = Zipper()
    z.open_at_boundary(p[0].real)
    z.zip_points(p[1:] - p[0].real)
    return z


def extract_driving(chord: CurvePolyline, check=True) -> DrivingFunction:
    """Driving function of a chord in (H; p0, inf) from its polyline samples."""
    if check and not chord.has_infinity:
        chord.check_simple()
    z = _zip_chord(chord.points)
    t, v = z.driving
    return DrivingFunction(t, v - v[0])


def dirichlet_energy(w: DrivingFunction) -> float:
    """1/2 int W'^2 dt for the piecewise-linear interpolant (exact)."""
    return float(0.5 * np.sum(np.diff(w.values) ** 2 / np.diff(w.times)))


def _to_zero_infinity(a, b):
    """Real Moebius map of H sending the boundary points a, b to 0, inf."""
    if not np.isfinite(b):
        return Mob(1.0, -a, 0.0, 1.0)
    if not np.isfinite(a):
        return Mob(0.0, -1.0, 1.0, -b)
    # z -> (z - a)/(b - z) has determinant b - a
    return Mob(1.0, -a, -1.0, b) if b > a else Mob(-1.0, a, 1.0, -b)


def chord_energy_in_domain(chord: CurvePolyline, domain_boundary=None) -> float:
    """Chordal energy of ``chord`` in the domain it crosses, between its endpoints.

    ``domain_boundary`` is None for the upper half-plane, an open arc (the
    domain is its complement) or a closed curve (the domain is its bounded
    side).  The chord endpoints must lie on the boundary; the chord is mapped
    to (H; 0, inf) and the Dirichlet energy of its driving function returned.
    In the half-plane a chord whose last sample is interior is read as a
    truncated chord towards infinity.
    """
    from .confmap import map_arc_complement, zip_closed

    p = chord.points
    exact = {}
    if domain_boundary is None:
        chain = Chain()
    elif domain_boundary.closed:
        cz = zip_closed(domain_boundary)
        chain = cz.F
        # vertex 0 goes to infinity, the others to their left-side images
        exact = {0: np.inf, **{i + 1: v for i, v in enumerate(cz.left)}}
        verts = cz.points
    else:
        chain = map_arc_complement(domain_boundary).forward
        verts = domain_boundary.points
        exact = {0: 0.0, len(verts) - 1: np.inf}
    ends = []
    last = p[-1]
    if domain_boundary is None and not is_inf(last) and last.imag > 0:
        p = np.append(p, np.inf)
    for z in (p[0], p[-1]):
        hit = None
        if exact:
            d = chordal_distance(verts, z)
            k = int(np.argmin(d))
            if d[k] < 1e-12 and k in exact:
                hit = exact[k]
        if hit is not None:
            w = complex(hit)
        elif is_inf(z):
            w = np.inf if domain_boundary is None else chain.value(np.array([1e300 + 0j]))[0]
        else:
            with np.errstate(all="ignore"):
                w = chain.value(np.array([z]))[0]
        if not abs(w) < 1e10:
            w = np.inf
        if np.isfinite(w) and abs(w.imag) > 1e-6 * (1.0 + abs(w)):
            raise ValidationError("chord endpoint is not on the domain boundary")
        ends.append(w.real if np.isfinite(w) else np.inf)
    m = _to_zero_infinity(*ends)
    inner = m.value(chain.value(p[1:-1]))
    if np.any(inner.imag <= 0):
        raise ValidationError("chord leaves the domain")
    z = _zip_chord(np.concatenate([[0.0], inner]))
    t, v = z.driving
    return dirichlet_energy(DrivingFunction(t, v))
