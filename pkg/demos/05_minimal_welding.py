"""
Minimal-energy weldings with prescribed values
==============================================

Find a welding with h(x_k) = y_k of least energy by replacing, one at a
time, the arcs between marks with circular arcs.  The limit is a piecewise
circular curve whose arcs meet tangentially.  Runs about half a minute.
"""
import numpy as np

from loewnerweld import WeldProblem, circular_fit_report, is_positive_curve, minimize_welding
from loewnerweld.ads import graph_points
from loewnerweld.weld import wrap

x = np.pi / 2 * np.arange(4)
y = np.array([0.1, 1.9, 3.3, 4.9])

w, curve, trace = minimize_welding(WeldProblem(x, y, tol=1e-4))
print("energy per sweep:", np.round(trace, 5))
print("constraint error:", np.abs(wrap(w(x) - y)).max())
for k, (fit, r, ang) in enumerate(circular_fit_report(curve)):
    kind = "line" if fit.is_line else f"circle r={fit.radius:.3f}"
    print(f"arc {k}: {kind}, fit residual {r:.1e}, angle at start mark {ang:.4f}")
print("graph of h is a positive curve:", is_positive_curve(graph_points(w.theta, w.image))[0])
