"""Loewner energy of loops and arcs, by the rooted driving route and by the Liouville action."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .confmap import (ConformalChart, DiskCharts, geodesic_samples, map_arc_complement,
                      zip_closed, _far_point)
from .curves import CurvePolyline, ValidationError
from .maps import Chain, Mob
from .mobius import MobiusComplex, is_inf, mobius_apply
from .zipper import Zipper


@dataclass
class EnergyReport:
    value: float
    method: str
    resolution: dict = field(default_factory=dict)
    estimated_error: float = 0.0
    diverged: bool = False

    def __post_init__(self):
        self.value = max(float(self.value), 0.0)
        self.estimated_error = abs(float(self.estimated_error))

    def to_dict(self):
        return {"value": self.value, "method": self.method,
                "estimated_error": self.estimated_error,
                "resolution": self.resolution, "diverged": self.diverged}


def _tail_energies(points):
    """Energy of the rest of the loop after each vertex m >= 1, rooted at points[0]."""
    z = Zipper()
    z.open_circular(points[0], points[1], points[2])
    z.zip_points(z.chain.value(points[2:]))
    e = np.asarray(z.step_energy)
    # step s zips vertex s + 2; the tail after vertex m starts with step m - 1
    tails = np.concatenate([np.cumsum(e[::-1])[::-1], [0.0]])
    return np.concatenate([[tails[0]], tails])


def loop_energy_driving(curve: CurvePolyline, root_index: int = 0, epsilon=None) -> EnergyReport:
    """Rooted loop energy: chordal energy of the loop minus a short initial piece.

    The energy after the first epsilon of arclength is taken at epsilon and
    epsilon/2 and extrapolated linearly to 0; the spread is the error estimate.
    """
    if not curve.closed:
        raise ValidationError("loop energy needs a closed curve")
    if curve.has_infinity:
        raise ValidationError("closed curve must avoid infinity")
    c = curve.rolled(root_index % len(curve))
    L = c.length
    eps = L / 50.0 if epsilon is None else float(epsilon)
    if not 0 < eps < L / 10:
        raise ValidationError("epsilon must lie in (0, length/10)")
    s = c.arclength()[:-1]
    tails = _tail_energies(c.points)
    m1 = max(int(np.searchsorted(s, eps)), 1)
    m2 = max(int(np.searchsorted(s, eps / 2)), 1)
    e1, e2 = tails[m1], tails[m2]
    s1, s2 = s[m1], s[m2]
    if m1 == m2 or s1 == s2:
        value, err = e2, abs(e1 - e2)
    else:
        value = e2 - (e1 - e2) * s2 / (s1 - s2)
        err = abs(e1 - e2)
    return EnergyReport(value, "rooted-driving",
                        {"samples": len(c), "epsilon": [float(s1), float(s2)]}, err)


def _disk_integral(samples, r):
    """(1/pi) int_{|z|<r} |P|^2 dA from samples of P on |z| = r (Parseval)."""
    m = len(samples)
    a = np.fft.fft(samples) / m
    n = np.arange(m // 2)
    pos = np.sum(np.abs(a[:m // 2]) ** 2 * r * r / (n + 1))
    # negative frequencies would signal aliasing; they are reported, not summed
    return pos, float(np.sum(np.abs(a[m // 2:]) ** 2))


def _circle_integrals(pre_fn, levels, oversample, exterior):
    """I(r_j) for r_j = 1 - 2^-j, j in levels, for the disk or (by inversion) its exterior."""
    vals, alias = [], 0.0
    for j in levels:
        r = 1.0 - 2.0 ** -j
        m = int(oversample * 2 ** j)
        e = np.exp(2j * np.pi * np.arange(m) / m)
        if exterior:
            z = 1.0 / (r * e)
            q = pre_fn(z) * z * z
        else:
            q = pre_fn(r * e)
        v, al = _disk_integral(q, r)
        vals.append(v)
        alias = max(alias, al)
    return np.array(vals), alias


def beta_at_infinity(g: ConformalChart) -> complex:
    """lim g(z)/z for a chart of the exterior disk fixing infinity."""
    flip = Mob(0.0, 1.0, 1.0, 0.0)
    h = Chain([flip]) + g.forward + Chain([flip])
    d1 = h.derivs(np.array([0j]))[1][0]
    return 1.0 / d1


def liouville_action(f: ConformalChart, g: ConformalChart, radial_levels: int = 8,
                     angular_samples: int = 16) -> EnergyReport:
    """Universal Liouville action of the curve with disk charts f and g.

    The area integrals over |z| < r_j, r_j = 1 - 2^-j, are computed exactly
    from FFTs of f''/f' on the circles (angular_samples * 2^j points, likewise
    for g on 1/r_j); the annulus beyond the last circle is extrapolated from
    the last increment, and the error is the deviation of the increments
    from geometric decay.
    """
    if radial_levels < 3:
        raise ValidationError("need at least three radial levels")
    fp = lambda z: f.forward.derivs(z)[2]
    gp = lambda z: g.forward.derivs(z)[2]
    lv = [radial_levels - 2, radial_levels - 1, radial_levels]
    inner, a1 = _circle_integrals(fp, lv, angular_samples, False)
    outer, a2 = _circle_integrals(gp, lv, angular_samples, True)
    f0 = f.forward.derivs(np.array([0j]))
    if not (np.isfinite(f0[0][0]) and np.isfinite(f0[1][0])):
        raise ValidationError("f must be finite at 0")
    beta = beta_at_infinity(g)
    log_term = 4.0 * np.log(abs(f0[1][0]) / abs(beta))
    both = inner + outer
    t_last, t_prev = both[2] - both[1], both[1] - both[0]
    total = both[2] + t_last + log_term
    diverged = bool(t_last > 1e-3 and t_prev > 0 and t_last / t_prev > 0.8)
    return EnergyReport(total, "liouville",
                        {"radial_levels": radial_levels, "angular_samples": angular_samples,
                         "interior": float(2 * inner[2] - inner[1]),
                         "exterior": float(2 * outer[2] - outer[1]),
                         "log_term": float(log_term), "aliasing": max(a1, a2)},
                        abs(t_last - 0.5 * t_prev), diverged)


def loop_energy(curve: CurvePolyline, **kw) -> EnergyReport:
    """Loop energy of a closed curve by the Liouville action of its zipper charts."""
    dc = DiskCharts(zip_closed(curve))
    rep = liouville_action(dc.f, dc.g, **kw)
    rep.resolution["samples"] = len(curve)
    return rep


def close_with_geodesic(arc, samples=None):
    """The loop formed by an arc and the hyperbolic geodesic of its complement.

    Returns the closed curve moved by a Moebius map m so that it avoids
    infinity, together with m; the arc occupies indices 0 .. len(arc) - 1.
    """
    p = arc.points if isinstance(arc, CurvePolyline) else np.asarray(arc, dtype=complex)
    chart = map_arc_complement(p)
    n = len(p) if samples is None else samples
    eta = geodesic_samples(chart.backward, n, cluster=0.5, a=p[0], b=p[-1])
    loop = np.concatenate([p, eta[::-1][1:-1]])
    # the geodesic may pass through infinity between samples: always re-centre
    z0 = _far_point(loop)
    m = MobiusComplex(0, 1, 1, -z0).normalized()
    loop = mobius_apply(m, loop)
    return CurvePolyline(loop, True, (0, len(p) - 1)), m


def arc_energy(arc: CurvePolyline, **kw) -> EnergyReport:
    """Arc energy: loop energy of the arc closed up by its complementary geodesic."""
    if arc.closed:
        raise ValidationError("arc energy needs an open arc")
    loop, _ = close_with_geodesic(arc)
    rep = loop_energy(loop, **kw)
    rep.method = "liouville-arc"
    return rep


def schwarzian(chart: ConformalChart, z) -> np.ndarray:
    """S[f] = f'''/f' - 3/2 (f''/f')^2 from the chain-rule derivatives."""
    z = np.asarray(z, dtype=complex)
    out = chart.forward.derivs(np.atleast_1d(z))[3]
    return out if z.ndim else complex(out[0])
