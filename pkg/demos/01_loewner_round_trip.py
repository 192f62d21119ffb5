"""
Loewner traces and driving functions
====================================

Grow a curve from a driving function, read the driving function back off
the curve, and compare Dirichlet energies.
"""
import numpy as np

from loewnerweld import DrivingFunction, dirichlet_energy, extract_driving, trace

# a vertical slit: W = 0 grows the segment [0, 2i sqrt(t)]
zero = DrivingFunction(np.array([0.0, 1.0]), np.zeros(2))
print("tip of the zero trace:", trace(zero, 200).points[-1])

# a wiggly driving function and its round trip
f = lambda t: 0.8 * np.sin(t)  # noqa: E731
tt = np.linspace(0, 1, 20001)
for n in (500, 1000, 2000):
    w = DrivingFunction.from_callable(f, 1.0, n)
    back = extract_driving(trace(w, n))
    print(f"{n:5d} steps: sup |W_back - W| = {np.abs(back(tt) - f(tt)).max():.2e}, "
          f"capacity {back.T:.12f}")

# the energy of the piecewise-linear interpolant is exact
print("E(2t on [0,1]) =", dirichlet_energy(DrivingFunction.from_callable(lambda t: 2 * t, 1.0, 50)))
print("E(0.8 sin t)   =", dirichlet_energy(DrivingFunction.from_callable(f, 1.0, 2000)),
      " (exact 0.16 (1 + sin(2)/2) =", 0.16 * (1 + np.sin(2) / 2), ")")
