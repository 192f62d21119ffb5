"""Matrix model of AdS^3, its boundary RP^1 x RP^1, space-like planes and pleated planes."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curves import ValidationError
from .mobius import (TWO_PI, Circline, DegenerateError, MobiusReal, angle_from_vector,
                     circline_through, orientation_triple, real_mobius_from_angles,
                     vector_from_angle)

ID = np.eye(2)
V = np.array([[0.0, 1.0], [1.0, 0.0]])
W = np.array([[1.0, 0.0], [0.0, -1.0]])
U = np.array([[0.0, -1.0], [1.0, 0.0]])
BASIS = {"Id": ID, "V": V, "W": W, "U": U}
J = U


def adj(a):
    a = np.asarray(a, dtype=float)
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])


def bilinear_22(a, b) -> float:
    """<A, B> = -1/2 Tr(A adj B); q(A) = <A, A> = -det A."""
    return float(-0.5 * np.trace(np.asarray(a, dtype=float) @ adj(b)))


def q22(a) -> float:
    return bilinear_22(a, a)


def signature_table():
    """Gram matrix of the basis Id, V, W, U."""
    names = list(BASIS)
    return names, np.array([[bilinear_22(BASIS[i], BASIS[j]) for j in names] for i in names]) + 0.0


def _pin(a):
    a = a / np.linalg.norm(a)
    flat = a.ravel()
    k = int(np.flatnonzero(np.abs(flat) > 1e-14)[0])
    return -a if flat[k] < 0 else a


@dataclass(frozen=True)
class AdSBoundaryPoint:
    """Boundary point (x, y) = (image, kernel) of a rank-one matrix, angles on RP^1."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(np.mod(self.x, TWO_PI)))
        object.__setattr__(self, "y", float(np.mod(self.y, TWO_PI)))

    @property
    def representative(self) -> np.ndarray:
        """v(x) (J v(y))^T, unit Frobenius norm, first nonzero entry positive."""
        return _pin(np.outer(vector_from_angle(self.x), J @ vector_from_angle(self.y)))

    @classmethod
    def from_matrix(cls, a):
        a = np.asarray(a, dtype=float)
        u, s, vt = np.linalg.svd(a)
        if s[0] == 0 or s[1] > 1e-10 * s[0]:
            raise ValidationError("boundary points need a rank-one matrix")
        return cls(angle_from_vector(u[:, 0]), angle_from_vector(vt[1]))


def isometry_act(alpha: MobiusReal, beta: MobiusReal, p: AdSBoundaryPoint) -> AdSBoundaryPoint:
    """(alpha, beta) . p = (alpha x, beta y), computed from alpha A beta^-1."""
    a = alpha.matrix @ p.representative @ np.linalg.inv(beta.matrix)
    return AdSBoundaryPoint.from_matrix(a)


def isometry_act_coords(alpha: MobiusReal, beta: MobiusReal, p: AdSBoundaryPoint):
    return AdSBoundaryPoint(alpha.act_angle(p.x), beta.act_angle(p.y))


def graph_points(x, y):
    return [AdSBoundaryPoint(a, b) for a, b in zip(np.ravel(x), np.ravel(y))]


@dataclass(frozen=True)
class SpacelikePlane:
    """P_[alpha] = {A : <alpha, A> = 0}; its boundary is the graph of alpha^-1."""

    alpha: MobiusReal

    def __post_init__(self):
        m = np.asarray(self.alpha.matrix, dtype=float)
        d = np.linalg.det(m)
        if not d > 0:
            raise ValidationError("a space-like plane needs det(alpha) > 0")
        object.__setattr__(self, "alpha", MobiusReal.from_matrix(m / np.sqrt(d)))

    def pairing(self, a) -> float:
        return bilinear_22(self.alpha.matrix, a)

    def boundary_point(self, x) -> AdSBoundaryPoint:
        return AdSBoundaryPoint(x, self.alpha.inverse().act_angle(x))

    def act(self, a: MobiusReal, b: MobiusReal) -> "SpacelikePlane":
        """(a, b) . P_[alpha] = P_[a alpha b^-1]."""
        return SpacelikePlane(MobiusReal.from_matrix(a.matrix @ self.alpha.matrix
                                                     @ np.linalg.inv(b.matrix)))

    def same_as(self, other: "SpacelikePlane", tol=1e-9) -> bool:
        a, b = self.alpha.matrix, other.alpha.matrix
        return min(np.abs(a - b).max(), np.abs(a + b).max()) < tol


def plane_boundary_check(alpha: MobiusReal, x) -> float:
    """|<alpha, A>| for the rank-one A of (x, alpha^-1 x), alpha normalized to det 1."""
    plane = SpacelikePlane(alpha)
    return abs(plane.pairing(plane.boundary_point(x).representative))


def _orient(a):
    """Orientation sign of angle triples along the last axis (vectorized)."""
    d2 = np.mod(a[..., 1] - a[..., 0], TWO_PI)
    d3 = np.mod(a[..., 2] - a[..., 0], TWO_PI)
    return np.where(d2 < d3, 1, -1)


def is_positive_curve(samples, brute_max=200):
    """True when every triple of samples has equally oriented x and y triples.

    Returns (ok, witness) with the lexicographically first violating index
    triple (None if positive).  The test itself is exact for any size: the
    samples sorted by x must have cyclically increasing y.  The witness is
    searched over all triples for up to ``brute_max`` samples.
    """
    x = np.array([p.x for p in samples])
    y = np.array([p.y for p in samples])
    n = len(x)
    if n < 3:
        raise ValidationError("need at least three samples")
    for name, a in (("x", x), ("y", y)):
        s = np.sort(a)
        if np.any(np.diff(np.append(s, s[0] + TWO_PI)) < 1e-14):
            raise ValidationError(f"coincident {name} coordinates")
    o = np.argsort(x)
    ys = y[o]
    d = np.mod(np.diff(np.append(ys, ys[0])), TWO_PI)
    ok = abs(d.sum() - TWO_PI) < 1e-9
    if ok:
        return True, None
    if n <= brute_max:
        for i in range(n - 2):
            for j in range(i + 1, n - 1):
                k = np.arange(j + 1, n)
                tx = np.stack([np.full(len(k), x[i]), np.full(len(k), x[j]), x[k]], axis=-1)
                ty = np.stack([np.full(len(k), y[i]), np.full(len(k), y[j]), y[k]], axis=-1)
                bad = np.flatnonzero(_orient(tx) != _orient(ty))
                if len(bad):
                    return False, (i, j, int(k[bad[0]]))
    # a triple along the sorted order that wraps more than once
    for s in range(n):
        tri = sorted(int(o[(s + t) % n]) for t in range(3))
        if orientation_triple(*x[tri]) != orientation_triple(*y[tri]):
            return False, tuple(tri)
    return False, None


# ------------------------------------------------------------ pleated planes --

def fan_triangulation(n):
    """Triangles (0, j, j+1) and the edges they use, boundary edges first."""
    tris = [(0, j, j + 1) for j in range(1, n - 1)]
    edges = [(k, (k + 1) % n) for k in range(n)] + [(0, j) for j in range(2, n - 1)]
    return tris, edges


@dataclass
class PleatedPlane:
    ambient: str
    faces: list
    face_kinds: list
    vertices: list
    bending_lines: list = field(default_factory=list)
    triangles: list = field(default_factory=list)
    triangulation: str = "fan from vertex 0"

    def to_dict(self):
        def face(f):
            if isinstance(f, SpacelikePlane):
                return {"alpha": np.asarray(f.alpha.matrix).tolist()}
            if f.is_line:
                return {"point": [f.point.real, f.point.imag],
                        "direction": [f.direction.real, f.direction.imag]}
            return {"center": [f.center.real, f.center.imag], "radius": f.radius}

        def vert(v):
            if isinstance(v, AdSBoundaryPoint):
                return [v.x, v.y]
            return [complex(v).real, complex(v).imag]

        return {"ambient": self.ambient,
                "faces": [dict(face(f), kind=k) for f, k in zip(self.faces, self.face_kinds)],
                "vertices": [vert(v) for v in self.vertices],
                "bending": [list(e) for e in self.bending_lines],
                "triangulation": [list(t) for t in self.triangles],
                "triangulation_rule": self.triangulation}


def pleat_from_welding(pieces, breakpoints, tol=1e-2) -> PleatedPlane:
    """Pleated space-like plane in AdS^3 bounded by the graph of a piecewise Moebius welding.

    Piece k (on [x_k, x_{k+1}]) has graph in the boundary of P_[m_k^-1]; the
    breakpoints are joined by a fan of ideal triangles, each in the plane
    through its three vertices.
    """
    ms = [p[0] if isinstance(p, tuple) else p for p in pieces]
    n = len(ms)
    if n != len(breakpoints):
        raise ValidationError("one breakpoint per piece expected")
    for k, m in enumerate(ms):
        a, b = breakpoints[k], breakpoints[(k + 1) % n]
        for p in (a, b) if n > 1 else (a,):
            err = abs(np.mod(m.act_angle(p.x) - p.y + np.pi, TWO_PI) - np.pi)
            if err > tol:
                raise ValidationError(f"piece {k} misses breakpoint ({p.x:.4g}, {p.y:.4g})")
    faces = [SpacelikePlane(m.inverse()) for m in ms]
    kinds = ["piece"] * n
    if n < 3 or all(f.same_as(faces[0], 1e-6) for f in faces):
        return PleatedPlane("AdS3", faces[:1], kinds[:1], list(breakpoints))
    tris, edges = fan_triangulation(n)
    for t in tris:
        xs = [breakpoints[i].x for i in t]
        ys = [breakpoints[i].y for i in t]
        try:
            m = real_mobius_from_angles(xs, ys)
        except DegenerateError as e:
            raise ValidationError(f"triangle {t} is not space-like: {e}") from None
        faces.append(SpacelikePlane(m.inverse()))
        kinds.append("triangle")
    return PleatedPlane("AdS3", faces, kinds, list(breakpoints), edges, tris)


def _tangent_line(c: Circline, z):
    t = c.direction if c.is_line else 1j * (z - c.center)
    return t / abs(t)


def _same_circline(a: Circline, b: Circline, tol=1e-6):
    if a.is_line != b.is_line:
        return False
    if a.is_line:
        return abs((a.direction.conjugate() * b.direction).imag) < tol and \
            b.distance(a.point) < tol
    return abs(a.center - b.center) < tol and abs(a.radius - b.radius) < tol


def pleat_from_circular(arcs, max_joint=0.2) -> PleatedPlane:
    """Pleated plane in H^3 bounded by a closed piecewise circular curve.

    ``arcs`` is a list of (Circline, (start, end)).  Each arc spans a
    hemisphere face; the breakpoints are joined by a fan of ideal triangles
    whose faces are the hemispheres over the circles through their vertices.
    """
    n = len(arcs)
    circ = [a[0] for a in arcs]
    ends = [(complex(a[1][0]), complex(a[1][1])) for a in arcs]
    verts = [e[0] for e in ends]
    for k in range(n):
        z = ends[k][1]
        if abs(z - ends[(k + 1) % n][0]) > 1e-8 * (1 + abs(z)):
            raise ValidationError(f"arc {k} does not end where arc {k + 1} starts")
        t1 = _tangent_line(circ[k], z)
        t2 = _tangent_line(circ[(k + 1) % n], z)
        ang = abs(np.angle(t1 * t2.conjugate()))
        ang = min(ang, np.pi - ang)
        if ang > max_joint:
            raise ValidationError(f"corner of {ang:.3g} rad at breakpoint {(k + 1) % n}")
    kinds = ["arc"] * n
    if all(_same_circline(c, circ[0]) for c in circ):
        return PleatedPlane("H3", circ[:1], kinds[:1], verts)
    tris, edges = fan_triangulation(n)
    faces = list(circ)
    for t in tris:
        faces.append(circline_through(*[verts[i] for i in t]))
        kinds.append("triangle")
    return PleatedPlane("H3", faces, kinds, verts, edges, tris)
