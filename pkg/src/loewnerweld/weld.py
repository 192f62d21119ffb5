"""Conformal weldings of Jordan curves: extraction, Moebius pieces, C^1 breaks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.optimize import least_squares

from .confmap import DiskCharts, zip_closed
from .curves import CurvePolyline, ValidationError
from .mobius import (TWO_PI, DegenerateError, MobiusReal, angle_from_vector,
                     real_mobius_from_angles, vector_from_angle)

PINS = np.array([0.0, TWO_PI / 3, 2 * TWO_PI / 3])


def wrap(a):
    """Angle difference in [-pi, pi)."""
    return np.mod(np.asarray(a) + np.pi, TWO_PI) - np.pi


def _cyclic_increasing(a):
    d = np.mod(np.diff(np.concatenate([a, a[:1]])), TWO_PI)
    return np.all(d > 0) and abs(d.sum() - TWO_PI) < 1e-9


@dataclass(frozen=True)
class WeldingSamples:
    """Samples theta -> image of an orientation preserving circle homeomorphism."""

    theta: np.ndarray
    image: np.ndarray
    x: np.ndarray | None = None
    y: np.ndarray | None = None

    def __post_init__(self):
        t = np.mod(np.asarray(self.theta, dtype=float), TWO_PI)
        h = np.mod(np.asarray(self.image, dtype=float), TWO_PI)
        object.__setattr__(self, "theta", t)
        object.__setattr__(self, "image", h)
        if t.ndim != 1 or t.shape != h.shape or len(t) < 3:
            raise ValidationError("theta and image must be 1-d of equal length >= 3")
        bad = np.flatnonzero(np.diff(t) <= 0)
        if len(bad):
            raise ValidationError(f"theta not strictly increasing at index {bad[0] + 1}")
        if not _cyclic_increasing(h):
            d = np.mod(np.diff(np.concatenate([h, h[:1]])), TWO_PI)
            i = int(np.argmin(d)) + 1
            raise ValidationError(f"image not cyclically increasing at index {i % len(h)}")
        if (self.x is None) != (self.y is None):
            raise ValidationError("breakpoints need both x and y")
        if self.x is not None:
            x = np.mod(np.asarray(self.x, dtype=float), TWO_PI)
            y = np.mod(np.asarray(self.y, dtype=float), TWO_PI)
            if x.shape != y.shape:
                raise ValidationError("x and y must have equal length")
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)

    def __len__(self):
        return len(self.theta)

    @property
    def has_breakpoints(self):
        return self.x is not None

    def _unwrapped(self):
        t = np.concatenate([self.theta - TWO_PI, self.theta, self.theta + TWO_PI])
        u = np.unwrap(self.image)
        u = u - TWO_PI * np.floor(u[0] / TWO_PI)
        h = np.concatenate([u - TWO_PI, u, u + TWO_PI])
        return t, h

    def __call__(self, theta):
        """Monotone (PCHIP) interpolation of the samples, periodic."""
        t, h = self._unwrapped()
        return np.mod(PchipInterpolator(t, h)(np.mod(theta, TWO_PI)), TWO_PI)

    def resampled(self, n):
        th = TWO_PI * np.arange(n) / n
        return WeldingSamples(th, self(th), self.x, self.y)

    def post(self, beta: MobiusReal):
        """beta o h."""
        y = None if self.y is None else beta.act_angle(self.y)
        return _sorted(self.theta, beta.act_angle(self.image), self.x, y)

    def pre(self, alpha: MobiusReal):
        """h o alpha^-1."""
        th = alpha.act_angle(self.theta)
        x = None if self.x is None else alpha.act_angle(self.x)
        return _sorted(th, self.image, x, self.y)

    def graph(self):
        return np.stack([self.theta, self.image], axis=1)


def _sorted(theta, image, x, y):
    theta = np.mod(theta, TWO_PI)
    o = np.argsort(theta)
    return WeldingSamples(theta[o], np.asarray(image)[o], x, y)


def normalize_welding(w: WeldingSamples) -> WeldingSamples:
    """Post-compose so that the pinned angles 0, 2pi/3, 4pi/3 are fixed."""
    beta = real_mobius_from_angles(w(PINS), PINS)
    return w.post(beta)


def welding_from_curve(curve: CurvePolyline, n_samples: int | None = None,
                       normalize=True, arc_samples=64) -> WeldingSamples:
    """Samples of h = g^-1 o f for a closed curve, ccw orientation.

    Vertex images come from the two real copies kept by the zipper; the last
    arc (mapped onto the positive axis by the closing square) is sampled with
    ``arc_samples`` extra points.  Marked points become breakpoints.
    """
    cz = zip_closed(curve)
    dc = DiskCharts(cz)
    n = len(cz.points)
    t = np.tan(0.5 * np.pi * (np.arange(1, arc_samples + 1) / (arc_samples + 1)))
    tail = t * (1.0 + np.abs(cz.left).min())
    xl = np.concatenate([cz.left, tail])
    xr = np.concatenate([cz.right, tail])
    th = np.concatenate([[0.0], np.angle(dc.cin.inverse().value(xl + 0j))])
    im = np.concatenate([[0.0], np.angle(dc.dout.inverse().value(xr + 0j))])
    th, im = np.mod(th, TWO_PI), np.mod(im, TWO_PI)
    x = y = None
    if curve.marks:
        idx = np.array(curve.marks)
        if cz.reversed:
            idx = np.mod(n - 1 - idx, n)
        x, y = th[idx], im[idx]
    o = np.argsort(th)
    th, im = th[o], im[o]
    keep = np.concatenate([[True], np.diff(th) > 1e-15])
    w = WeldingSamples(th[keep], im[keep], x, y)
    if n_samples:
        w = w.resampled(n_samples)
    return normalize_welding(w) if normalize else w


# ------------------------------------------------------------ Moebius fits --

def fit_real_mobius(theta, image):
    """PSL(2,R) map sending angles theta to image, least squares in projective form.

    M v(theta) must be parallel to v(image): det[M v, u] = 0 is linear in M,
    exact for noiseless Moebius data; a Gauss-Newton polish on the angle
    error follows.
    """
    v = vector_from_angle(theta)
    u = vector_from_angle(image)
    A = np.stack([v[0] * u[1], v[1] * u[1], -v[0] * u[0], -v[1] * u[0]], axis=1)
    m = np.linalg.svd(A)[2][-1].reshape(2, 2)
    if np.linalg.det(m) <= 0:
        raise DegenerateError("samples are not orientation preserving")
    m = MobiusReal.from_matrix(m)

    def res(p):
        mm = MobiusReal(p[0], p[1], p[2], p[3])
        return wrap(mm.act_angle(theta) - image)

    sol = least_squares(res, np.array([m.a, m.b, m.c, m.d]), method="lm", xtol=1e-15,
                        ftol=1e-15, gtol=1e-15)
    p = sol.x
    if p[0] * p[3] - p[1] * p[2] > 0:
        m2 = MobiusReal(*p).normalized()
        if np.abs(wrap(m2.act_angle(theta) - image)).max() <= \
                np.abs(wrap(m.act_angle(theta) - image)).max():
            m = m2
    return m


def _pieces(w: WeldingSamples):
    """Index sets of the samples on each breakpoint interval [x_k, x_{k+1}]."""
    if not w.has_breakpoints or len(w.x) < 1:
        raise ValidationError("breakpoints required")
    x = w.x
    n = len(x)
    out = []
    for k in range(n):
        a, b = x[k], x[(k + 1) % n]
        span = np.mod(b - a, TWO_PI) if n > 1 else TWO_PI
        rel = np.mod(w.theta - a, TWO_PI)
        tol = 1e-12
        idx = np.flatnonzero(rel <= span + tol)
        out.append(idx[np.argsort(rel[idx])])
    return out


def fit_mobius_pieces(w: WeldingSamples, min_samples=5):
    """Per breakpoint interval, the best PSL(2,R) fit and its sup angle residual."""
    out = []
    for k, idx in enumerate(_pieces(w)):
        if len(idx) < min_samples:
            raise ValidationError(f"piece {k} has {len(idx)} samples, need {min_samples}")
        m = fit_real_mobius(w.theta[idx], w.image[idx])
        r = float(np.abs(wrap(m.act_angle(w.theta[idx]) - w.image[idx])).max())
        out.append((m, r))
    return out


def c1_break_report(w: WeldingSamples, pieces):
    """|log(h'_+ / h'_-)| at each breakpoint from the adjacent Moebius pieces."""
    ms = [p[0] if isinstance(p, tuple) else p for p in pieces]
    n = len(ms)
    out = []
    for k in range(n):
        xk = w.x[k]
        left = ms[(k - 1) % n].angle_derivative(xk)
        right = ms[k].angle_derivative(xk)
        out.append(float(abs(np.log(right / left))))
    return out


# ---------------------------------------------------------------- alignment --

def align_weldings(w1: WeldingSamples, w2: WeldingSamples, n=256):
    """Best (alpha, beta) with beta o h1 o alpha^-1 ~ h2; returns (alpha, beta, sup error)."""
    th = TWO_PI * (np.arange(n) + 0.5) / n
    h2 = w2(th)

    def build(p):
        alpha_inv = real_mobius_from_angles(PINS, PINS + p)
        s = w1(alpha_inv.act_angle(th))
        beta = fit_real_mobius(s, h2)
        return alpha_inv, beta, wrap(beta.act_angle(s) - h2)

    def res(p):
        try:
            return build(p)[2]
        except DegenerateError:
            return np.full(n, np.pi)

    best = None
    for start in (np.zeros(3),):
        sol = least_squares(res, start, xtol=1e-12, ftol=1e-12)
        if best is None or sol.cost < best.cost:
            best = sol
    alpha_inv, beta, r = build(best.x)
    return alpha_inv.inverse(), beta, float(np.abs(r).max())


def constraint_residual(w: WeldingSamples, x, y):
    """Sup angle error of the best (alpha, beta) with alpha(X_k) = x_k, beta(Y_k) = y_k.

    (X_k, Y_k) are the breakpoints of w; the welding class meets the
    constraints h(x_k) = y_k exactly when both fits are exact.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = fit_real_mobius(w.x, x)
    b = fit_real_mobius(w.y, y)
    ra = np.abs(wrap(a.act_angle(w.x) - x)).max()
    rb = np.abs(wrap(b.act_angle(w.y) - y)).max()
    return float(max(ra, rb)), a, b


def constrained_representative(w: WeldingSamples, x, y) -> WeldingSamples:
    """The representative beta o h o alpha^-1 of the class of w that best meets h(x) = y."""
    _, a, b = constraint_residual(w, x, y)
    v = w.pre(a).post(b)
    return WeldingSamples(v.theta, v.image, np.mod(x, TWO_PI), np.mod(y, TWO_PI))
