"""Elementary conformal maps and derivative-carrying composition chains.

Each elementary map evaluates, at an array of points, the tuple

    (value, f', f''/f', S[f])

and a chain composes them with

    (f o g)'    = f'(g) g'
    P[f o g]    = P[f](g) g' + P[g]
    S[f o g]    = S[f](g) g'^2 + S[g]

which stays well scaled over thousands of factors.  Second and third
derivatives are recovered as f'' = P f' and f''' = (S + 3/2 P^2) f'.
"""
from __future__ import annotations

import numpy as np

from . import _kernels as K
from .mobius import MobiusComplex


class BranchError(ArithmeticError):
    """An evaluation point left the cut plane of a square-root factor."""


def _upper(r, ref):
    """Pick +-r in the closed upper half-plane; on the real axis follow sign(ref)."""
    flip = (r.imag < 0) | ((r.imag == 0) & (np.real(ref) < 0))
    return np.where(flip, -r, r)


class Mob:
    """Möbius factor z -> (a z + b)/(c z + d)."""

    kind = "mobius"

    def __init__(self, a, b, c, d):
        det = a * d - b * c
        if det == 0:
            raise ValueError("singular Möbius factor")
        s = np.sqrt(complex(det))
        self.a, self.b, self.c, self.d = a / s, b / s, c / s, d / s
        if all(abs(complex(v).imag) == 0 for v in (self.a, self.b, self.c, self.d)):
            self.a, self.b, self.c, self.d = (float(np.real(v)) for v in
                                              (self.a, self.b, self.c, self.d))

    @classmethod
    def from_mobius(cls, m: MobiusComplex):
        return cls(m.a, m.b, m.c, m.d)

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def to_mobius(self):
        return MobiusComplex(self.a, self.b, self.c, self.d).normalized()

    def value(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def derivs(self, z):
        den = self.c * z + self.d
        v = (self.a * z + self.b) / den
        return v, 1.0 / den ** 2, -2.0 * self.c / den, np.zeros_like(v)

    def inverse(self):
        return Mob(self.d, -self.b, -self.c, self.a)

    def then(self, other):
        """other o self, as a single factor."""
        m = other.matrix @ self.matrix
        return Mob(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


class SlitSqrt:
    """u -> sqrt(u^2 + c^2): removes the vertical slit [0, i c] from the upper half-plane."""

    kind = "slit"

    def __init__(self, c):
        self.c = float(c)

    def value(self, u):
        return _upper(np.sqrt(u * u + self.c ** 2), u)

    def derivs(self, u):
        c2 = self.c ** 2
        if np.any((u.real == 0) & (u.imag >= 0) & (u.imag <= self.c)):
            raise BranchError("evaluation on the slit of a square-root factor")
        v = self.value(u)
        v2 = v * v
        return v, u / v, c2 / (u * v2), -1.5 * c2 * (2.0 + c2 / (u * u)) / (v2 * v2)

    def inverse(self):
        return SlitSqrtInv(self.c)


class SlitSqrtInv:
    """w -> sqrt(w^2 - c^2) into the closed upper half-plane (grows the slit back)."""

    kind = "slit_inv"

    def __init__(self, c):
        self.c = float(c)

    def value(self, w):
        return _upper(np.sqrt(w * w - self.c ** 2), w)

    def derivs(self, w):
        c2 = self.c ** 2
        if np.any(w.imag < -1e-12 * (1 + np.abs(w))):
            raise BranchError("slit inverse evaluated below the real axis")
        v = self.value(w)
        v2 = v * v
        return v, w / v, -c2 / (w * v2), 1.5 * c2 * (2.0 - c2 / (w * w)) / (v2 * v2)

    def inverse(self):
        return SlitSqrt(self.c)


class RootI:
    """u -> i sqrt(u), principal branch: C minus (-inf, 0] onto the upper half-plane."""

    kind = "root"

    def value(self, u):
        return 1j * np.sqrt(u)

    def derivs(self, u):
        if np.any((u.imag == 0) & (u.real <= 0)):
            raise BranchError("principal square root evaluated on its cut")
        v = 1j * np.sqrt(u)
        return v, v / (2.0 * u), -0.5 / u, 0.375 / (u * u)

    def inverse(self):
        return RootIInv()


class RootIInv:
    """w -> -w^2, the inverse of RootI."""

    kind = "root_inv"

    def value(self, w):
        return -w * w

    def derivs(self, w):
        return -w * w, -2.0 * w, 1.0 / w, -1.5 / (w * w)

    def inverse(self):
        return RootI()


class NegSquare:
    """z -> -z^2: sends the quadrant left (right) of iR+ onto the upper (lower) half-plane."""

    kind = "negsq"

    def value(self, z):
        return -z * z

    def derivs(self, z):
        return -z * z, -2.0 * z, 1.0 / z, -1.5 / (z * z)

    def inverse(self, side=1):
        return NegSquareInv(side)


class NegSquareInv:
    """w -> sqrt(-w) in the closed upper half-plane.

    ``side`` says from which half-plane real inputs are approached: +1 gives
    the left copy (negative root), -1 the right copy.
    """

    kind = "negsq_inv"

    def __init__(self, side=1):
        self.side = 1 if side >= 0 else -1

    def value(self, w):
        r = np.sqrt(-w)
        r = np.where(r.imag < 0, -r, r)
        on_axis = r.imag == 0
        return np.where(on_axis, -self.side * np.abs(r.real), r)

    def derivs(self, w):
        v = self.value(w)
        return v, -0.5 / v, -0.5 / w, 0.375 / (w * w)

    def inverse(self):
        return NegSquare()


class Chain:
    """Composition of elementary factors, applied first to last."""

    def __init__(self, factors=()):
        self.factors = []
        self._packed = None
        for f in factors:
            self.append(f)

    def append(self, factor):
        self._packed = None
        if self.factors and factor.kind == "mobius" and self.factors[-1].kind == "mobius":
            self.factors[-1] = self.factors[-1].then(factor)
        else:
            self.factors.append(factor)
        return self

    def extend(self, factors):
        for f in factors:
            self.append(f)
        return self

    def __len__(self):
        return len(self.factors)

    def copy(self):
        c = Chain()
        c.factors = list(self.factors)
        return c

    def _pack(self):
        if self._packed is None:
            n = len(self.factors)
            code = np.empty(n, dtype=np.int64)
            par = np.zeros((n, 4), dtype=complex)
            for k, f in enumerate(self.factors):
                code[k] = _CODES[f.kind]
                if f.kind == "mobius":
                    par[k] = (f.a, f.b, f.c, f.d)
                elif f.kind in ("slit", "slit_inv"):
                    par[k, 0] = f.c
                elif f.kind == "negsq_inv":
                    par[k, 0] = f.side
            self._packed = (code, par)
        return self._packed

    def value(self, z):
        z = np.array(z, dtype=complex)
        if K.HAVE_NUMBA and len(self.factors):
            code, par = self._pack()
            out, _ = K.chain_value(code, par, z.ravel())
            return out.reshape(z.shape)
        for f in self.factors:
            z = f.value(z)
        return z

    def derivs(self, z):
        """Return value, first derivative, pre-Schwarzian f''/f' and Schwarzian."""
        z = np.array(z, dtype=complex)
        if K.HAVE_NUMBA and len(self.factors):
            code, par = self._pack()
            v, d1, pre, sch, bad = K.chain_derivs(code, par, z.ravel())
            if bad:
                raise BranchError("evaluation on the cut of a square-root factor")
            return tuple(a.reshape(z.shape) for a in (v, d1, pre, sch))
        d1 = np.ones_like(z)
        pre = np.zeros_like(z)
        sch = np.zeros_like(z)
        for f in self.factors:
            z, g1, gp, gs = f.derivs(z)
            sch = gs * d1 * d1 + sch
            pre = gp * d1 + pre
            d1 = g1 * d1
        return z, d1, pre, sch

    def inverse(self, side=1):
        inv = Chain()
        for f in reversed(self.factors):
            inv.append(f.inverse(side) if f.kind == "negsq" else f.inverse())
        return inv

    def __add__(self, other):
        return self.copy().extend(other.factors)


_CODES = {"mobius": K.MOB, "slit": K.SLIT, "slit_inv": K.SLIT_INV, "root": K.ROOT,
          "root_inv": K.ROOT_INV, "negsq": K.NEGSQ, "negsq_inv": K.NEGSQ_INV}
