"""Geodesic zipper with hydrodynamic normalization.

The curve is unzipped one vertex at a time.  Each step removes the arc of
the hyperbolic geodesic of H from the current base point to the current tip
image, with the map normalized as z + 2 dt / z + O(1/z^2) at infinity, so the
accumulated composition is exactly the Loewner map g_t of the zipped part and
the tip images are the driving values W(t).

For a tip a = x + iy (relative to the base point) the step has
    dW = 3x/2,    dt = (x^2 + 2 y^2) / 8,
which is inverted in closed form when tracing a driving function.
"""
from __future__ import annotations

import numpy as np

from . import _kernels as K
from .maps import Chain, Mob, NegSquare, RootI, SlitSqrt
from .mobius import mobius_from_triple


class ZipperError(ArithmeticError):
    """The discrete curve left the half-plane: not simple at this resolution."""


def step_factors(a, base):
    """Factors of the normalized step removing the geodesic arc from base to base + a.

    Returns (factors, dt, dW).
    """
    x, y = float(a.real), float(a.imag)
    if not y > 0:
        raise ZipperError(f"tip image {a!r} is not in the upper half-plane")
    r2 = x * x + y * y
    k = x / r2
    c = r2 / y
    s = 1.0 + (x / y) ** 2
    rs = np.sqrt(s)
    alpha = s * rs
    beta = -1.5 * c * c * k * rs
    first = Mob(1.0, -base, -k, 1.0 + k * base)
    post = np.array([[1.0 / alpha, base - beta / alpha], [0.0, 1.0]]) @ np.array(
        [[rs, 0.0], [k, rs]])
    last = Mob(post[0, 0], post[0, 1], post[1, 0], post[1, 1])
    return (first, SlitSqrt(c), last), (r2 + y * y) / 8.0, 1.5 * x


def tip_from_increment(dt, dW):
    """Relative tip a with step increments (dt, dW); inverse of the step formulas."""
    x = 2.0 * dW / 3.0
    y2 = (8.0 * dt - x * x) / 2.0
    if not y2 > 0:
        raise ZipperError("driving increment too large for the capacity step "
                          f"(dW^2 = {dW * dW:.3g} >= 18 dt = {18 * dt:.3g})")
    return complex(x, np.sqrt(y2))


def _real_step(factors, xs, side):
    first, slit, last = factors
    u = (first.a * xs + first.b) / (first.c * xs + first.d)
    sgn = np.where(u == 0, side, np.sign(u))
    v = sgn * np.sqrt(u * u + slit.c ** 2)
    return (last.a * v + last.b) / (last.c * v + last.d)


class Zipper:
    """Incremental zipper state.

    ``left``/``right`` hold the real boundary images of the two copies of
    every zipped vertex (left/right of the direction of travel).
    """

    def __init__(self):
        self.chain = Chain()
        self.W = 0.0
        self.t = 0.0
        self.times = [0.0]
        self.values = [0.0]
        self.step_energy = []
        self.left = np.empty(0)
        self.right = np.empty(0)
        self.closed = False

    # -- openings -------------------------------------------------------
    def open_at_boundary(self, p0):
        """Chord in H starting at the real point p0 (translated to 0)."""
        self.chain.append(Mob(1.0, -float(np.real(p0)), 0.0, 1.0))
        self._add_vertex()

    def open_circular(self, p0, p1, p2):
        """Slit the arc p0 -> p1 of the circline through p0, p1, p2.

        Sends p0 to infinity, p1 to 0 and p2 onto iR+; returns the Möbius part.
        """
        m = mobius_from_triple(p1, p0, p2, 0, np.inf, 1)
        self.chain.append(Mob.from_mobius(m))
        self.chain.append(RootI())
        self._add_vertex()
        return m

    def _add_vertex(self):
        self.left = np.append(self.left, self.W)
        self.right = np.append(self.right, self.W)

    # -- steps ----------------------------------------------------------
    def step(self, tip):
        """Zip to the tip (absolute coordinates, in H); returns the step factors."""
        factors, dt, dW = step_factors(complex(tip) - self.W, self.W)
        self.left = _real_step(factors, self.left, -1.0)
        self.right = _real_step(factors, self.right, 1.0)
        self.chain.extend(factors)
        self.t += dt
        self.W += dW
        self.times.append(self.t)
        self.values.append(self.W)
        self.step_energy.append(0.5 * dW * dW / dt)
        self._add_vertex()
        return factors

    def zip_points(self, pts, carry=None):
        """Zip the points in order (already in current coordinates).

        ``carry`` points are pushed through every step; their images are returned.
        """
        pts = np.array(pts, dtype=complex)
        carry = np.array([] if carry is None else carry, dtype=complex)
        if K.HAVE_NUMBA:
            return self._zip_compiled(pts, carry)
        for j in range(len(pts)):
            factors = self.step(pts[j])
            rest = pts[j + 1:]
            for f in factors:
                rest = f.value(rest)
                carry = f.value(carry)
            pts[j + 1:] = rest
        return carry

    def _zip_compiled(self, pts, carry):
        nv = len(self.left)
        left = np.concatenate([self.left, np.zeros(len(pts))])
        right = np.concatenate([self.right, np.zeros(len(pts))])
        tips, _, bad = K.zip_run(pts, float(self.W), left, right, nv, carry)
        n = len(pts) if bad < 0 else bad
        for j in range(n):
            factors, dt, dW = step_factors(tips[j], self.W)
            self.chain.extend(factors)
            self.t += dt
            self.W += dW
            self.times.append(self.t)
            self.values.append(self.W)
            self.step_energy.append(0.5 * dW * dW / dt)
        self.left, self.right = left[:nv + n], right[:nv + n]
        if bad >= 0:
            raise ZipperError(f"tip image {pts[bad]!r} is not in the upper half-plane "
                              f"(point {bad} of the zipped run)")
        return carry

    def close(self):
        """Open the last vertical ray from W to infinity: left side -> H, right -> H*."""
        self.chain.append(Mob(1.0, -self.W, 0.0, 1.0))
        self.chain.append(NegSquare())
        self.left = -(self.left - self.W) ** 2
        self.right = -(self.right - self.W) ** 2
        self.closed = True

    @property
    def driving(self):
        return np.array(self.times), np.array(self.values)
