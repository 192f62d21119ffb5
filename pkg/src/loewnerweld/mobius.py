"""Möbius algebra on the Riemann sphere and on the circle RP^1.

Points of the sphere are complex numbers; the point at infinity is any value
for which ``np.isinf`` is true (``INF`` is the canonical one).  Points of RP^1
are angles on the unit circle, related to the boundary coordinate
``t in R u {inf}`` of the upper half-plane by the Cayley map.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

INF = complex(np.inf, 0.0)
TWO_PI = 2.0 * np.pi


class DegenerateError(ValueError):
    """Raised when points that must be distinct coincide."""


def is_inf(z):
    return np.isinf(np.real(z)) | np.isinf(np.imag(z))


def chordal_distance(z, w):
    """Chordal (stereographic) distance on the sphere; total, with diameter 2."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    zi, wi = is_inf(z), is_inf(w)
    zs = np.where(zi, 0.0, z)
    ws = np.where(wi, 0.0, w)
    finite = 2.0 * np.abs(zs - ws) / np.sqrt((1 + np.abs(zs) ** 2) * (1 + np.abs(ws) ** 2))
    one_inf = 2.0 / np.sqrt(1 + np.abs(np.where(zi, ws, zs)) ** 2)
    out = np.where(zi & wi, 0.0, np.where(zi | wi, one_inf, finite))
    return out if out.ndim else float(out)


def _canonical_sign(entries):
    for e in entries:
        if abs(e) > 1e-300:
            # first nonzero entry gets positive real part (ties: positive imag)
            if e.real < 0 or (e.real == 0 and e.imag < 0):
                return -1.0
            return 1.0
    return 1.0


@dataclass(frozen=True)
class MobiusComplex:
    """Element of PSL(2, C): z -> (a z + b) / (c z + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1]).normalized()

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def normalized(self):
        det = self.det
        if abs(det) == 0:
            raise DegenerateError("singular Möbius matrix")
        s = np.sqrt(complex(det))
        a, b, c, d = (complex(v) / s for v in (self.a, self.b, self.c, self.d))
        sign = _canonical_sign((a, b, c, d))
        return type(self)(sign * a, sign * b, sign * c, sign * d)

    def __call__(self, z):
        return mobius_apply(self, z)

    def __matmul__(self, other):
        return type(self).from_matrix(self.matrix @ other.matrix)

    def compose(self, other):
        """self o other."""
        return self @ other

    def inverse(self):
        return type(self)(self.d, -self.b, -self.c, self.a).normalized()

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return self.det / (self.c * z + self.d) ** 2

    def isclose(self, other, tol=1e-10):
        p, q = self.normalized().matrix, other.normalized().matrix
        return bool(min(np.abs(p - q).max(), np.abs(p + q).max()) < tol)


@dataclass(frozen=True)
class MobiusReal(MobiusComplex):
    """Element of PSL(2, R); preserves the upper half-plane."""

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            object.__setattr__(self, name, float(np.real(v)))

    @classmethod
    def from_matrix(cls, m):
        m = np.real(np.asarray(m, dtype=complex))
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1]).normalized()

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def normalized(self):
        det = self.a * self.d - self.b * self.c
        if det <= 0:
            raise DegenerateError("MobiusReal needs a positive determinant")
        s = np.sqrt(det)
        a, b, c, d = self.a / s, self.b / s, self.c / s, self.d / s
        sign = _canonical_sign((complex(a), complex(b), complex(c), complex(d)))
        return type(self)(sign * a, sign * b, sign * c, sign * d)

    def __matmul__(self, other):
        if isinstance(other, MobiusReal):
            return MobiusReal.from_matrix(self.matrix @ other.matrix)
        return MobiusComplex.from_matrix(self.matrix @ other.matrix)

    def inverse(self):
        return MobiusReal(self.d, -self.b, -self.c, self.a).normalized()

    def act_angle(self, theta):
        """Induced action on RP^1 stored as angles."""
        return angle_from_vector(self.matrix @ vector_from_angle(theta))

    def angle_derivative(self, theta):
        """d(act_angle)/d(theta)."""
        t = np.asarray(theta, dtype=float)
        v = vector_from_angle(t)
        w = self.matrix @ v
        # |v| = 1, det = 1: the angle speed scales by 1/|w|^2
        return 1.0 / np.sum(w * w, axis=0)


def mobius_apply(m, z):
    """Apply m to sphere points, with m(inf) = a/c and m(-d/c) = inf."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    zinf = is_inf(z)
    den = m.c * np.where(zinf, 0, z) + m.d
    num = m.a * np.where(zinf, 0, z) + m.b
    pole = (den == 0) & ~zinf
    with np.errstate(divide="ignore", invalid="ignore"):
        out[:] = num / np.where(pole, 1, den)
    out[pole] = INF
    if np.any(zinf):
        out[zinf] = INF if m.c == 0 else m.a / m.c
    return complex(out[0]) if scalar else out


def _to_01inf(p1, p2, p3):
    """Möbius sending p1, p2, p3 to 0, 1, inf."""
    pts = [complex(p) for p in (p1, p2, p3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal_distance(pts[i], pts[j]) < 1e-14:
                raise DegenerateError("triple has coincident points")
    z1, z2, z3 = pts
    if is_inf(z1):
        m = (0, z2 - z3, 1, -z3)
    elif is_inf(z2):
        m = (1, -z1, 1, -z3)
    elif is_inf(z3):
        m = (1, -z1, 0, z2 - z1)
    else:
        m = (z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
    return MobiusComplex(*m).normalized()


def mobius_from_triple(p1, p2, p3, q1, q2, q3):
    """Unique Möbius map with p_i -> q_i."""
    return _to_01inf(q1, q2, q3).inverse() @ _to_01inf(p1, p2, p3)


def cross_ratio(z1, z2, z3, z4):
    """(z1, z2; z3, z4) = (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))."""
    zs = [complex(z) for z in (z1, z2, z3, z4)]
    if not any(is_inf(z) for z in zs):
        z1, z2, z3, z4 = zs
        return (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3))
    m = mobius_from_triple(zs[1], zs[2], zs[3], 1, 0, INF)
    return complex(m(zs[0]))


# ---------------------------------------------------------------- RP^1 ----

def vector_from_angle(theta):
    """Unit spanning vector of the line in R^2 for the angle theta.

    theta -> t = -cot(theta/2) is the inverse Cayley map, and (t, 1) spans the
    same line as (-cos(theta/2), sin(theta/2)).
    """
    half = 0.5 * np.asarray(theta, dtype=float)
    return np.array([-np.cos(half), np.sin(half)])


def angle_from_vector(v):
    v = np.asarray(v, dtype=float)
    return np.mod(2.0 * np.arctan2(v[1], -v[0]), TWO_PI)


def angle_to_real(theta):
    """Boundary coordinate in R u {inf} (inf for theta = 0)."""
    theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    with np.errstate(divide="ignore", over="ignore"):
        return -1.0 / np.tan(0.5 * theta)


def real_to_angle(t):
    t = np.asarray(t, dtype=float)
    return np.mod(2.0 * np.arctan2(1.0, -t), TWO_PI)


def cayley(z):
    """Upper half-plane to unit disk, z -> (z - i)/(z + i)."""
    return mobius_apply(CAYLEY, z)


CAYLEY = MobiusComplex(1, -1j, 1, 1j).normalized()


def circle_mobius(m):
    """Conjugate a real Möbius map to the automorphism of the unit disk."""
    return CAYLEY @ m @ CAYLEY.inverse()


def orientation_triple(x1, x2, x3):
    """+1 if angles x1, x2, x3 are counterclockwise on the circle, else -1."""
    x1, x2, x3 = (float(np.mod(v, TWO_PI)) for v in (x1, x2, x3))
    d2, d3 = np.mod(x2 - x1, TWO_PI), np.mod(x3 - x1, TWO_PI)
    if min(d2, d3, abs(d2 - d3)) < 1e-14:
        raise DegenerateError("orientation of a degenerate triple")
    return 1 if d2 < d3 else -1


def real_mobius_from_angles(x, y):
    """The element of PSL(2,R) sending angles x_i to y_i (i = 1, 2, 3)."""
    if orientation_triple(*x) != orientation_triple(*y):
        raise DegenerateError("triples have opposite orientations")
    tx = [_angle_point(v) for v in x]
    ty = [_angle_point(v) for v in y]
    m = mobius_from_triple(*tx, *ty)
    mat = m.matrix
    # the map is real up to a common complex phase
    k = np.argmax(np.abs(mat))
    mat = mat / (mat.flat[k] / abs(mat.flat[k]))
    return MobiusReal.from_matrix(np.real(mat))


def _angle_point(theta):
    t = float(angle_to_real(theta))
    return INF if not np.isfinite(t) or abs(t) > 1e15 else complex(t)


# ------------------------------------------------------------- circlines --

@dataclass(frozen=True)
class Circline:
    """A circle (center, radius) or a line (point, unit direction) on the sphere."""

    center: complex | None = None
    radius: float | None = None
    point: complex | None = None
    direction: complex | None = None

    @property
    def is_line(self):
        return self.center is None

    def distance(self, z):
        """Euclidean distance of finite points to the circline."""
        z = np.asarray(z, dtype=complex)
        if self.is_line:
            rel = (z - self.point) * np.conj(self.direction)
            return np.abs(rel.imag)
        return np.abs(np.abs(z - self.center) - self.radius)

    def residual(self, z):
        """Spherical-metric residual of sphere points (infinity lies on lines)."""
        z = np.asarray(z, dtype=complex)
        zi = is_inf(z)
        zs = np.where(zi, 0, z)
        d = self.distance(zs)
        # chordal distance scale at z
        res = 2.0 * d / (1 + np.abs(zs) ** 2)
        if self.is_line:
            return np.where(zi, 0.0, res)
        return np.where(zi, 2.0 / np.sqrt(1 + abs(self.center) ** 2 + self.radius ** 2), res)

    def sample(self, n):
        if self.is_line:
            s = np.tan(np.linspace(-np.pi / 2, np.pi / 2, n + 2)[1:-1])
            return self.point + s * self.direction
        t = np.linspace(0, TWO_PI, n, endpoint=False)
        return self.center + self.radius * np.exp(1j * t)


def circline_through(p1, p2, p3, tol=1e-12):
    """Unique circline through three distinct sphere points."""
    pts = [complex(p) for p in (p1, p2, p3)]
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal_distance(pts[i], pts[j]) < 1e-14:
                raise DegenerateError("circline through coincident points")
    finite = [p for p in pts if not is_inf(p)]
    if len(finite) == 2:
        u = finite[1] - finite[0]
        return Circline(point=finite[0], direction=u / abs(u))
    z1, z2, z3 = finite
    cross = ((z2 - z1).conjugate() * (z3 - z1)).imag
    scale = max(abs(z2 - z1), abs(z3 - z1), abs(z3 - z2)) ** 2
    if abs(cross) <= tol * scale:
        u = z3 - z1 if abs(z3 - z1) > abs(z2 - z1) else z2 - z1
        return Circline(point=z1, direction=u / abs(u))
    # circumcenter
    a, b = z2 - z1, z3 - z1
    center = z1 + (abs(a) ** 2 * b - abs(b) ** 2 * a) / (2j * cross)
    return Circline(center=center, radius=float(abs(z1 - center)))


def circline_image(m, circ):
    """Image of a circline under a Möbius map (via three sample points)."""
    pts = circ.sample(3) if not circ.is_line else np.array(
        [circ.point, circ.point + circ.direction, INF])
    return circline_through(*mobius_apply(m, np.asarray(pts)))
