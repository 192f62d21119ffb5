"""Minimal-energy weldings with prescribed values h(x_k) = y_k by circular-arc straightening."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .confmap import _image_of_infinity, geodesic_samples, map_arc_complement
from .curves import CurvePolyline, ValidationError, resample_by_arclength
from .energy import loop_energy
from .maps import Chain, Mob
from .mobius import TWO_PI, Circline, MobiusComplex, mobius_apply
from .optcurve import join_arcs, prepare_curve, split_arcs
from .weld import (WeldingSamples, constrained_representative, constraint_residual,
                   welding_from_curve)

log = logging.getLogger(__name__)


def _check_cyclic(a, name):
    a = np.mod(np.asarray(a, dtype=float), TWO_PI)
    if a.ndim != 1 or len(a) < 3:
        raise ValidationError(f"{name} needs at least three angles")
    d = np.mod(np.diff(np.append(a, a[0])), TWO_PI)
    if np.any(d < 1e-9) or abs(d.sum() - TWO_PI) > 1e-9:
        raise ValidationError(f"{name} must be strictly cyclically increasing")
    return a


@dataclass
class WeldProblem:
    x: np.ndarray
    y: np.ndarray
    initial: CurvePolyline | None = None
    tol: float = 1e-3
    max_sweeps: int = 30
    per_arc: int = 160
    cluster: float = 0.5

    def __post_init__(self):
        self.x = _check_cyclic(self.x, "x")
        self.y = _check_cyclic(self.y, "y")
        if len(self.x) != len(self.y):
            raise ValidationError("x and y must have equal length")
        if not self.tol > 0:
            raise ValidationError("tolerance must be positive")
        if self.initial is None:
            self.initial = initial_constrained_curve(self.x, self.y)
        elif len(self.initial.marks) != len(self.x):
            raise ValidationError("initial curve needs one mark per constraint")


# ------------------------------------------------------------ initial curve --

def _circle_cr(a):
    """log |cross ratio| of (a_0, a_1; a_2, a_j) on the unit circle, j >= 3."""
    z = np.exp(1j * np.asarray(a))
    cr = (z[0] - z[2]) * (z[1] - z[3:]) / ((z[0] - z[3:]) * (z[1] - z[2]))
    return np.log(np.abs(cr))


def _poly_curve(x, c, n):
    """f(e^{it}) for f(z) = z + sum c_j z^{j+1}, with marks at t = x."""
    base = x[0] + TWO_PI * np.arange(n) / n
    t = np.sort(np.concatenate([base, x[0] + np.mod(x[1:] - x[0], TWO_PI)]))
    t = t[np.concatenate([[True], np.diff(t) > 1e-12])]
    marks = tuple(int(np.argmin(np.abs(t - (x[0] + np.mod(v - x[0], TWO_PI))))) for v in x)
    z = np.exp(1j * t)
    w = z.copy()
    for j, cj in enumerate(c):
        w = w + cj * z ** (j + 2)
    return CurvePolyline(w, True, marks)


def initial_constrained_curve(x, y, samples=400, degree=2) -> CurvePolyline:
    """A smooth closed curve whose welding sends x_k to y_k up to Moebius maps.

    The curve is f(circle) for a polynomial f(z) = z + c_1 z^2 + ..., so the
    inner angles of the marks are exactly x; the coefficients are fitted so
    that the cross ratios of the outer angles match those of y.
    """
    x = _check_cyclic(x, "x")
    y = _check_cyclic(y, "y")
    if len(x) != len(y):
        raise ValidationError("x and y must have equal length")
    target = _circle_cr(y) if len(y) > 3 else np.zeros(0)

    def curve(p):
        return _poly_curve(x, p[:degree] + 1j * p[degree:], samples)

    def res(p):
        c = curve(p)
        try:
            c.check_simple()
            w = welding_from_curve(c, normalize=False, arc_samples=8)
        except (ValidationError, ArithmeticError):
            return np.full(len(target), 10.0)
        return _circle_cr(w.y) - target

    p = np.zeros(2 * degree)
    if len(target) and np.abs(res(p)).max() > 1e-10:
        sol = least_squares(res, p, diff_step=1e-6, xtol=1e-12, ftol=1e-12)
        p = sol.x
        if np.abs(sol.fun).max() > 1e-4:
            raise ValidationError("could not build a curve meeting the constraints")
    out = curve(p)
    out.check_simple()
    return out


# ----------------------------------------------------------- straightening --

def _straight_arc(m: MobiusComplex, n, cluster):
    """n points of m(R+) from m(0) to m(inf), equally spaced up to clustering."""
    inv = Chain([Mob(-1j, 0.0, 0.0, 1.0), Mob(m.a, m.b, m.c, m.d)])
    return geodesic_samples(inv, n, cluster=cluster, a=m(0.0), b=m(np.inf))


def _bounded_frame(zr, pts):
    """Moebius sending zr to infinity, then centred and scaled to unit size."""
    m = MobiusComplex(0, 1, 1, -zr)
    q = mobius_apply(m, pts)
    c = q.mean()
    r = np.abs(q - c).max()
    return MobiusComplex(1 / r, -c / r, 0, 1) @ m


def arc_straighten_step(curve: CurvePolyline, k: int, w: WeldingSamples | None = None,
                        per_arc: int | None = None, cluster=0.5):
    """Replace arc k by a circular arc, keeping the welding off (x_k, x_{k+1}).

    The complement of arc k is mapped onto H with its ends at 0 and inf,
    the rest of the curve is pushed forward by z -> z^2 and closed by the
    positive axis; a Moebius map brings the result back to a bounded,
    counterclockwise curve.  Returns the new curve and its welding
    normalized against the breakpoints of ``w`` (when given).
    """
    if curve.signed_area() < 0:
        raise ValidationError("curve must be counterclockwise")
    arcs = split_arcs(curve)
    n = len(arcs)
    k = k % n
    chart = map_arc_complement(arcs[k])
    phi = chart.forward
    zr = _image_of_infinity(phi) ** 2
    new = []
    for j in range(n):
        if j == k:
            new.append(None)
            continue
        with np.errstate(all="ignore"):
            v = phi.value(arcs[j]) ** 2
        if j == (k + 1) % n:
            v[0] = np.inf
        if j == (k - 1) % n:
            v[-1] = 0.0
        inside = v[1:-1]
        if np.any(~np.isfinite(inside)) or np.any((inside.real > 0) & (np.abs(inside.imag) < 1e-14)):
            raise ArithmeticError(f"arc {j} meets the straightened arc")
        new.append(v)
    fin = np.concatenate([v[np.isfinite(v)] for v in new if v is not None])
    m = _bounded_frame(zr, fin)
    for j in range(n):
        if j != k:
            new[j] = mobius_apply(m, new[j])
    size = len(arcs[k]) if per_arc is None else per_arc
    new[k] = _straight_arc(m, size, cluster)
    if per_arc is not None:
        new = [a if j == k else resample_by_arclength(a, per_arc, cluster)
               for j, a in enumerate(new)]
    out = join_arcs(new)
    if out.signed_area() < 0:
        raise ArithmeticError("straightened curve lost its orientation")
    out.check_simple()
    wt = welding_from_curve(out, normalize=False)
    if w is not None and w.has_breakpoints:
        wt = constrained_representative(wt, w.x, w.y)
    return out, wt


# --------------------------------------------------------------- reporting --

def fit_circline(z):
    """Algebraic least-squares circline a|z|^2 + b x + c y + d = 0 (Kasa)."""
    z = np.asarray(z, dtype=complex)
    s = np.abs(z).max() + 1e-300
    u = z / s
    A = np.stack([np.abs(u) ** 2, u.real, u.imag, np.ones(len(u))], axis=1)
    a, b, c, d = np.linalg.svd(A)[2][-1]
    if abs(a) < 1e-12 * max(abs(b), abs(c)):
        nrm = b + 1j * c
        p = -d * nrm / abs(nrm) ** 2
        return Circline(point=p * s, direction=1j * nrm / abs(nrm))
    cen = -(b + 1j * c) / (2 * a)
    r2 = abs(cen) ** 2 - d / a
    return Circline(center=cen * s, radius=float(np.sqrt(max(r2, 0.0)) * s))


def _tangent(circ: Circline, p, forward):
    """Unit tangent of the circline at p, pointing along the traversal ``forward``."""
    t = circ.direction if circ.is_line else 1j * (p - circ.center)
    t = t / abs(t)
    return t if (t.conjugate() * forward).real >= 0 else -t


def circular_fit_report(curve: CurvePolyline):
    """Per arc: (best-fit circline, sup distance, angle at the arc's start mark).

    The angle is between the incoming and outgoing tangents seen from the
    mark, pi where the curve is smooth.
    """
    arcs = split_arcs(curve)
    fits = [fit_circline(a) for a in arcs]
    n = len(arcs)
    out = []
    for k in range(n):
        res = float(fits[k].distance(arcs[k]).max())
        prev = arcs[k - 1]
        t_in = _tangent(fits[k - 1], prev[-1], prev[-1] - prev[-2])
        t_out = _tangent(fits[k], arcs[k][0], arcs[k][1] - arcs[k][0])
        ang = float(abs(np.angle(-t_in * t_out.conjugate())))
        out.append((fits[k], res, ang))
    return out


# ------------------------------------------------------------ optimization --

def minimize_welding(problem: WeldProblem, energy=True):
    """Cyclic arc straightening until every arc is circular to ``tol``.

    Returns (welding, curve, energy_trace); the welding is normalized so that
    its breakpoints sit at x and y.
    """
    x, y = problem.x, problem.y
    curve = problem.initial
    if curve.signed_area() < 0:
        curve = curve.reversed()
    curve = prepare_curve(curve, problem.per_arc, problem.cluster)
    w = constrained_representative(welding_from_curve(curve, normalize=False), x, y)
    n = len(curve.marks)
    trace = [loop_energy(curve).value] if energy else []
    converged = False
    for sweep in range(problem.max_sweeps):
        for k in range(n):
            curve, w = arc_straighten_step(curve, k, w, problem.per_arc, problem.cluster)
        if energy:
            trace.append(loop_energy(curve).value)
        worst = max(r for _, r, _ in circular_fit_report(curve))
        log.info("sweep %d: circle residual %.3g", sweep + 1, worst)
        if worst < problem.tol:
            converged = True
            break
    if not converged:
        log.warning("minimize_welding: no convergence after %d sweeps", problem.max_sweeps)
    res = constraint_residual(welding_from_curve(curve, normalize=False), x, y)[0]
    log.info("constraint residual %.3g", res)
    return w, curve, trace
