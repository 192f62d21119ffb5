"""Sampled curves and driving functions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mobius import chordal_distance, is_inf, mobius_apply


class ValidationError(ValueError):
    """Input data violates a structural invariant."""


class SelfIntersectionError(ValidationError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


@dataclass(frozen=True)
class DrivingFunction:
    """Samples of t -> W(t) on a capacity-time grid, linear in between."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        w = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", w)
        if t.ndim != 1 or t.shape != w.shape or len(t) < 2:
            raise ValidationError("times and values must be 1-d of equal length >= 2")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
            raise ValidationError("driving samples must be finite")
        bad = np.flatnonzero(np.diff(t) <= 0)
        if len(bad):
            raise ValidationError(f"times not strictly increasing at index {bad[0] + 1}")
        if t[0] != 0.0:
            raise ValidationError("time grid must start at 0")

    @property
    def T(self):
        return float(self.times[-1])

    def __call__(self, t):
        return np.interp(t, self.times, self.values)

    @classmethod
    def from_callable(cls, func, T, n):
        t = np.linspace(0.0, T, n + 1)
        w = np.asarray(func(t), dtype=float)
        return cls(t, w - w[0])

    def restrict(self, s):
        """Driving function of the tail after time s (additivity): t -> W(s+t) - W(s)."""
        keep = self.times > s
        t = np.concatenate([[s], self.times[keep]])
        w = np.concatenate([[self(s)], self.values[keep]])
        return DrivingFunction(t - s, w - w[0])

    def head(self, s):
        keep = self.times < s
        t = np.concatenate([self.times[keep], [s]])
        return DrivingFunction(t, self(t))

    def scaled(self, lam):
        """t -> lam W(t / lam^2) on [0, lam^2 T]."""
        return DrivingFunction(lam * lam * self.times, lam * self.values)


@dataclass(frozen=True)
class CurvePolyline:
    """Ordered samples of a curve or arc on the sphere, with marked indices."""

    points: np.ndarray
    closed: bool = False
    marks: tuple = field(default_factory=tuple)

    def __post_init__(self):
        p = np.asarray(self.points, dtype=complex).ravel()
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "marks", tuple(int(m) for m in self.marks))
        if len(p) < 2:
            raise ValidationError("a curve needs at least two points")
        for m in self.marks:
            if not 0 <= m < len(p):
                raise ValidationError(f"mark index {m} out of range")
        nxt = np.roll(p, -1) if self.closed else p[1:]
        cur = p if self.closed else p[:-1]
        same = np.flatnonzero(chordal_distance(cur, nxt) == 0)
        if len(same):
            raise ValidationError(f"consecutive points coincide at index {same[0]}")

    def __len__(self):
        return len(self.points)

    @property
    def has_infinity(self):
        return bool(np.any(is_inf(self.points)))

    @property
    def marked_points(self):
        return self.points[list(self.marks)]

    def segments(self):
        p = self.points
        if self.closed:
            return p, np.roll(p, -1)
        return p[:-1], p[1:]

    def arclength(self):
        """Cumulative Euclidean arclength at each sample (closed: plus total at end)."""
        a, b = self.segments()
        s = np.concatenate([[0.0], np.cumsum(np.abs(b - a))])
        return s

    @property
    def length(self):
        return float(self.arclength()[-1])

    def signed_area(self):
        p = self.points
        q = np.roll(p, -1)
        return 0.5 * float(np.sum((np.conj(p) * q).imag))

    def reversed(self):
        n = len(self.points)
        if self.closed:
            idx = (-np.arange(n)) % n
            inv = {int(i): k for k, i in enumerate(idx)}
            marks = [inv[m] for m in self.marks]
            if marks:
                root = marks[0]
                marks = [root] + sorted((m for m in marks[1:]), key=lambda m: (m - root) % n)
            return CurvePolyline(self.points[idx], True, tuple(marks))
        return CurvePolyline(self.points[::-1], False, tuple(n - 1 - m for m in self.marks))

    def rolled(self, start):
        """Closed curve re-rooted at index ``start``."""
        n = len(self.points)
        return CurvePolyline(np.roll(self.points, -start), True,
                             tuple((m - start) % n for m in self.marks))

    def transformed(self, m):
        return CurvePolyline(mobius_apply(m, self.points), self.closed, self.marks)

    def arc(self, i, j):
        """Open sub-arc from index i to index j following the orientation."""
        n = len(self.points)
        if self.closed:
            idx = (i + np.arange(((j - i) % n) + 1)) % n
        else:
            idx = np.arange(i, j + 1)
        return self.points[idx]

    def check_simple(self):
        """Raise SelfIntersectionError if two non-adjacent segments intersect."""
        pair = find_self_intersection(self.points, self.closed)
        if pair is not None:
            raise SelfIntersectionError(f"segments {pair[0]} and {pair[1]} intersect", pair)
        return self


def _orient(a, b, c):
    return ((b - a).conjugate() * (c - a)).imag


def find_self_intersection(points, closed, block=512):
    """First intersecting pair of non-adjacent segments, or None."""
    p = np.asarray(points, dtype=complex)
    if np.any(is_inf(p)):
        raise ValidationError("simplicity test needs finite points")
    a = p if closed else p[:-1]
    b = np.roll(p, -1) if closed else p[1:]
    m = len(a)
    for i0 in range(0, m, block):
        ia = np.arange(i0, min(i0 + block, m))
        A, B = a[ia][:, None], b[ia][:, None]
        C, D = a[None, :], b[None, :]
        d1 = _orient(A, B, C)
        d2 = _orient(A, B, D)
        d3 = _orient(C, D, A)
        d4 = _orient(C, D, B)
        # near-collinear pairs are not counted: their signs are rounding noise
        e1 = 1e-12 * np.abs(B - A) * np.maximum(np.abs(C - A), np.abs(D - A))
        e2 = 1e-12 * np.abs(D - C) * np.maximum(np.abs(A - C), np.abs(B - C))
        hit = ((d1 * d2 < 0) & (d3 * d4 < 0) & (np.minimum(abs(d1), abs(d2)) > e1)
               & (np.minimum(abs(d3), abs(d4)) > e2))
        jj = np.arange(m)[None, :]
        ii = ia[:, None]
        adjacent = (np.abs(ii - jj) <= 1)
        if closed:
            adjacent |= (np.abs(ii - jj) == m - 1)
        hit &= ~adjacent & (jj > ii)
        if hit.any():
            r, c = np.argwhere(hit)[0]
            return int(ia[r]), int(c)
    return None


def hausdorff(p, q, closed_p=False, closed_q=False):
    """Hausdorff distance between two polylines in the chordal metric.

    Point-to-segment distances are Euclidean, converted with the local
    chordal scale 2 / (1 + |z|^2); samples at infinity fall back to vertex
    distances.
    """
    p = np.asarray(p.points if isinstance(p, CurvePolyline) else p, dtype=complex)
    q = np.asarray(q.points if isinstance(q, CurvePolyline) else q, dtype=complex)
    return float(max(_to_polyline(p, q, closed_q).max(), _to_polyline(q, p, closed_p).max()))


def _to_polyline(p, q, closed, block=1024):
    """Chordal distance from each point of p to the polyline q."""
    out = np.empty(len(p))
    fin_q = ~is_inf(q)
    a = q if closed else q[:-1]
    b = np.roll(q, -1) if closed else q[1:]
    ok = ~(is_inf(a) | is_inf(b))
    a, b = a[ok], b[ok]
    ab = b - a
    L2 = np.maximum(np.abs(ab) ** 2, 1e-300)
    for i in range(0, len(p), block):
        z = p[i:i + block]
        zi = is_inf(z)
        zf = np.where(zi, 0, z)
        vert = chordal_distance(z[:, None], q[None, :]).min(axis=1)
        if len(a):
            t = np.clip(((zf[:, None] - a[None, :]) * np.conj(ab[None, :])).real / L2, 0, 1)
            d = np.abs(zf[:, None] - a[None, :] - t * ab[None, :]).min(axis=1)
            seg = 2.0 * d / (1.0 + np.abs(zf) ** 2)
            vert = np.where(zi | ~np.any(fin_q), vert, np.minimum(vert, seg))
        out[i:i + block] = vert
    return out


def resample_by_arclength(points, n, cluster=0.0):
    """n points along an open polyline; ``cluster`` in [0, 1) pulls samples toward both ends."""
    p = np.asarray(points, dtype=complex)
    s = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(p)))])
    u = np.linspace(0.0, 1.0, n)
    u = (1 - cluster) * u + cluster * 0.5 * (1 - np.cos(np.pi * u))
    target = u * s[-1]
    return np.interp(target, s, p.real) + 1j * np.interp(target, s, p.imag)
