"""Conformal charts built from zipper chains."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import CurvePolyline, ValidationError
from .maps import Chain, Mob
from .mobius import MobiusComplex, chordal_distance, is_inf, mobius_apply
from .zipper import Zipper


class ConformalChart:
    """A conformal map given by a forward chain and its inverse chain."""

    def __init__(self, forward: Chain, inverse: Chain, domain="", target=""):
        self.forward = forward
        self.backward = inverse
        self.domain = domain
        self.target = target

    @classmethod
    def mobius(cls, m: MobiusComplex, domain="", target=""):
        f = Mob(m.a, m.b, m.c, m.d)
        return cls(Chain([f]), Chain([f.inverse()]), domain, target)

    @classmethod
    def identity(cls):
        return cls(Chain(), Chain())

    def __call__(self, z):
        return self.forward.value(z)

    def inv(self, w):
        return self.backward.value(w)

    def derivs(self, z):
        """(f, f', f''/f', S[f]) at z."""
        return self.forward.derivs(z)

    def inv_derivs(self, w):
        return self.backward.derivs(w)

    def derivative(self, z):
        return self.forward.derivs(z)[1]

    def inverse(self):
        return ConformalChart(self.backward, self.forward, self.target, self.domain)

    def precompose(self, m: MobiusComplex):
        """The chart z -> self(m(z))."""
        f = Mob(m.a, m.b, m.c, m.d)
        return ConformalChart(Chain([f]) + self.forward, self.backward + Chain([f.inverse()]),
                              self.domain, self.target)

    def __len__(self):
        return len(self.forward)


def _as_points(arc):
    return arc.points if isinstance(arc, CurvePolyline) else np.asarray(arc, dtype=complex)


def _far_point(p):
    """A finite point well away from the finite samples of p."""
    fin = p[~is_inf(p)]
    c = fin.mean()
    r = np.abs(fin - c).max() + 1.0
    cand = c + r * np.exp(2j * np.pi * np.arange(16) / 16) * np.array([0.5, 1.5])[:, None]
    cand = np.concatenate([cand.ravel(), [c]])
    d = chordal_distance(cand[:, None], p[None, :]).min(axis=1)
    return cand[np.argmax(d)]


def _renormalize(p):
    """Moebius moving a point off the curve to infinity, if the samples contain infinity."""
    if not np.any(is_inf(p)):
        return None, p
    z0 = _far_point(p)
    m = MobiusComplex(0, 1, 1, -z0).normalized()
    return m, mobius_apply(m, p)


def _densify_short(p):
    if len(p) >= 3:
        return p
    return np.array([p[0], 0.5 * (p[0] + p[1]), p[1]])


def map_arc_complement(arc) -> ConformalChart:
    """Chart of the sphere minus an open arc onto H, tail -> 0 and head -> inf."""
    p = _as_points(arc)
    if len(p) < 2:
        raise ValidationError("an arc needs at least two points")
    if chordal_distance(p[0], p[-1]) < 1e-12:
        raise ValidationError("arc endpoints coincide")
    pre, p = _renormalize(p)
    p = _densify_short(p)
    q = p[::-1]
    z = Zipper()
    z.open_circular(q[0], q[1], q[2])
    z.zip_points(z.chain.value(q[2:]))
    z.chain.append(Mob(1.0, -z.W, 0.0, 1.0))
    chart = ConformalChart(z.chain, z.chain.inverse(), "arc complement", "H")
    if pre is not None:
        chart = chart.precompose(pre)
    return chart


@dataclass
class ClosedZip:
    """Closed-curve zipper: F maps the left side of the curve to H and the right side to H*.

    ``left``/``right`` are the real images of the vertices 1..N-1 from the two
    sides (vertex 0 goes to infinity); ``reversed`` records whether the input
    was clockwise and has been reversed.
    """

    F: Chain
    left: np.ndarray
    right: np.ndarray
    points: np.ndarray
    reversed: bool
    zipper: Zipper


def zip_closed(curve: CurvePolyline) -> ClosedZip:
    if not curve.closed:
        raise ValidationError("expected a closed curve")
    if curve.has_infinity:
        raise ValidationError("closed curve must avoid infinity")
    p = curve.points
    rev = curve.signed_area() < 0
    if rev:
        p = p[::-1]
    z = Zipper()
    z.open_circular(p[0], p[1], p[2])
    z.zip_points(z.chain.value(p[2:]))
    z.close()
    return ClosedZip(z.chain, z.left, z.right, p, rev, z)


def closed_chain(curve: CurvePolyline) -> Chain:
    """Chain taking the bounded side of a closed curve to H."""
    return zip_closed(curve).F


class DiskCharts:
    """f: D -> Omega (bounded side) and g: D* -> Omega* with g(inf) = inf."""

    def __init__(self, cz: ClosedZip):
        self.cz = cz
        F = cz.F
        c = cz.points.mean()
        q = complex(F.value(np.array([c]))[0])
        if not q.imag > 0:
            q = 1j
        p = _image_of_infinity(F)
        self.q, self.p = q, p
        cin = Mob(-q.conjugate(), q, -1.0, 1.0)
        dout = Mob(p, -p.conjugate(), 1.0, -1.0)
        self.f = ConformalChart(Chain([cin]) + F.inverse(1), F + Chain([cin.inverse()]), "D", "Omega")
        self.g = ConformalChart(Chain([dout]) + F.inverse(-1), F + Chain([dout.inverse()]),
                                "D*", "Omega*")
        self.cin, self.dout = cin, dout


def _image_of_infinity(F: Chain):
    """F(inf) for a chain whose first Moebius factor moves infinity to a finite point."""
    first = F.factors[0]
    rest = Chain()
    rest.factors = F.factors[1:]
    w = first.a / first.c
    return complex(rest.value(np.array([w]))[0])


def disk_charts_from_curve(curve: CurvePolyline):
    """(f, g) for a closed curve: f on the unit disk, g on its exterior, g(inf) = inf."""
    dc = DiskCharts(zip_closed(curve))
    return dc.f, dc.g


def geodesic_samples(inverse: Chain, n: int, cluster=0.5, a=None, b=None, decades=6.0,
                     dense=2000, center=None):
    """n points on the pullback of iR+ under a chart, from the preimage of 0 to that of inf.

    Samples are equally spaced in chordal arclength (with ``cluster`` pulling
    them toward the ends) and lie exactly on the pulled-back curve.  The
    heights scanned are 10^(c +- decades) around ``center`` (log10 of a
    typical height, found from the pullback when omitted).
    """
    if center is None:
        ly = np.linspace(-12.0, 12.0, 97)
        z = inverse.value(1j * 10.0 ** ly)
        s = np.concatenate([[0.0], np.cumsum(chordal_distance(z[:-1], z[1:]))])
        center = float(np.interp(0.5 * s[-1], s, ly))
    ly = np.linspace(center - decades, center + decades, dense)
    z = inverse.value(1j * 10.0 ** ly)
    step = chordal_distance(z[:-1], z[1:])
    s = np.concatenate([[0.0], np.cumsum(step)])
    u = np.linspace(0.0, 1.0, n)[1:-1]
    u = (1 - cluster) * u + cluster * 0.5 * (1 - np.cos(np.pi * u))
    target = u * s[-1]
    keep = np.concatenate([[True], np.diff(s) > 0])
    yt = np.interp(target, s[keep], ly[keep])
    mid = inverse.value(1j * 10.0 ** yt)
    a = inverse.value(np.array([0j]))[0] if a is None else a
    b = z[-1] if b is None else b
    return np.concatenate([[a], mid, [b]])


def hyperbolic_geodesic(chart: ConformalChart, a, b, samples: int = 200) -> CurvePolyline:
    """Pullback of the imaginary axis under a chart with a -> 0 and b -> inf."""
    wa = chart(np.array([complex(a)]))[0] if not is_inf(a) else None
    if wa is not None and abs(wa) > 1e-6:
        raise ValidationError("chart does not send the first endpoint to 0")
    pts = geodesic_samples(chart.backward, samples, a=complex(a), b=complex(b))
    return CurvePolyline(pts, closed=False)
