"""Compiled evaluation of factor chains (numba)."""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit, prange
    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the system TBB is often too old; try it last
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

MOB, SLIT, SLIT_INV, ROOT, ROOT_INV, NEGSQ, NEGSQ_INV = range(7)


def set_threads():
    n = os.environ.get("LOEWNER_THREADS")
    if HAVE_NUMBA and n:
        try:
            numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))
        except ValueError:
            pass


if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _upper(r, ref):
        if r.imag < 0 or (r.imag == 0 and ref.real < 0):
            return -r
        return r

    @njit(cache=True, inline="always")
    def _dv(a, b):
        # numba raises on complex division by zero; follow numpy instead
        if b == 0:
            return complex(np.inf, 0.0) if a != 0 else complex(np.nan, 0.0)
        return a / b

    @njit(cache=True)
    def _apply(code, par, z, want):
        """Evaluate one point through the chain; want=1 also tracks derivatives."""
        d1 = 1.0 + 0j
        pre = 0j
        sch = 0j
        bad = 0
        for k in range(code.shape[0]):
            c = code[k]
            if c == MOB:
                a, b, cc, d = par[k, 0], par[k, 1], par[k, 2], par[k, 3]
                den = cc * z + d
                v = _dv(a * z + b, den)
                g1 = _dv(1.0 + 0j, den * den)
                gp = _dv(-2.0 * cc, den)
                gs = 0j
            elif c == SLIT:
                c2 = par[k, 0].real ** 2
                if z.real == 0 and 0 <= z.imag <= par[k, 0].real:
                    bad = 1
                v = _upper(np.sqrt(z * z + c2), z)
                v2 = v * v
                g1 = _dv(z, v)
                gp = _dv(c2 + 0j, z * v2)
                gs = _dv(-1.5 * c2 * (2.0 + _dv(c2 + 0j, z * z)), v2 * v2)
            elif c == SLIT_INV:
                c2 = par[k, 0].real ** 2
                v = _upper(np.sqrt(z * z - c2), z)
                v2 = v * v
                g1 = _dv(z, v)
                gp = _dv(-c2 + 0j, z * v2)
                gs = _dv(1.5 * c2 * (2.0 - _dv(c2 + 0j, z * z)), v2 * v2)
            elif c == ROOT:
                if z.imag == 0 and z.real <= 0:
                    bad = 1
                v = 1j * np.sqrt(z)
                g1 = _dv(v, 2.0 * z)
                gp = _dv(-0.5 + 0j, z)
                gs = _dv(0.375 + 0j, z * z)
            elif c == ROOT_INV or c == NEGSQ:
                v = -z * z
                g1 = -2.0 * z
                gp = _dv(1.0 + 0j, z)
                gs = _dv(-1.5 + 0j, z * z)
            else:
                r = np.sqrt(-z)
                if r.imag < 0:
                    r = -r
                if r.imag == 0:
                    r = -par[k, 0].real * abs(r.real) + 0j
                v = r
                g1 = _dv(-0.5 + 0j, v)
                gp = _dv(-0.5 + 0j, z)
                gs = _dv(0.375 + 0j, z * z)
            if want:
                sch = gs * d1 * d1 + sch
                pre = gp * d1 + pre
                d1 = g1 * d1
            z = v
        return z, d1, pre, sch, bad

    @njit(cache=True, parallel=True)
    def chain_value(code, par, z):
        out = np.empty_like(z)
        bad = np.zeros(z.shape[0], dtype=np.int64)
        for i in prange(z.shape[0]):
            v, _, _, _, b = _apply(code, par, z[i], 0)
            out[i] = v
            bad[i] = b
        return out, bad.sum()

    @njit(cache=True, parallel=True)
    def chain_derivs(code, par, z):
        n = z.shape[0]
        v = np.empty_like(z)
        d1 = np.empty_like(z)
        pre = np.empty_like(z)
        sch = np.empty_like(z)
        bad = np.zeros(n, dtype=np.int64)
        for i in prange(n):
            a, b, c, d, e = _apply(code, par, z[i], 1)
            v[i], d1[i], pre[i], sch[i], bad[i] = a, b, c, d, e
        return v, d1, pre, sch, bad.sum()

    @njit(cache=True)
    def _step_apply(z, W, k, c, m00, m01, m10, m11, side):
        u = _dv(z - W, 1.0 - k * (z - W))
        if side == 0:
            v = _upper(np.sqrt(u * u + c * c), u)
        else:
            ur = u.real
            sg = side if ur == 0 else (1.0 if ur > 0 else -1.0)
            v = sg * np.sqrt(ur * ur + c * c) + 0j
        return _dv(m00 * v + m01, m10 * v + m11)

    @njit(cache=True)
    def zip_run(pts, W, left, right, nv, carry):
        """Zip pts in order; returns relative tips (or the failing index) and final W.

        left/right hold nv vertex images and have room for len(pts) more.
        """
        n = pts.shape[0]
        tips = np.empty(n, dtype=np.complex128)
        for j in range(n):
            a = pts[j] - W
            x, y = a.real, a.imag
            if not y > 0:
                return tips, W, j
            tips[j] = a
            r2 = x * x + y * y
            k = x / r2
            c = r2 / y
            s = 1.0 + (x / y) ** 2
            rs = np.sqrt(s)
            alpha = s * rs
            beta = -1.5 * c * c * k * rs
            sh = W - beta / alpha
            m00 = rs / alpha + sh * k
            m01 = sh * rs
            m10 = k
            m11 = rs
            for i in range(j + 1, n):
                pts[i] = _step_apply(pts[i], W, k, c, m00, m01, m10, m11, 0)
            for i in range(carry.shape[0]):
                carry[i] = _step_apply(carry[i], W, k, c, m00, m01, m10, m11, 0)
            for i in range(nv + j):
                left[i] = _step_apply(left[i] + 0j, W, k, c, m00, m01, m10, m11, -1).real
                right[i] = _step_apply(right[i] + 0j, W, k, c, m00, m01, m10, m11, 1).real
            W = W + 1.5 * x
            left[nv + j] = W
            right[nv + j] = W
        return tips, W, -1

    set_threads()
