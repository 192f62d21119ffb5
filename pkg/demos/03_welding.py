"""
Conformal weldings
==================

The welding h = g^-1 o f of a closed curve, its invariance under Moebius
images, and the Moebius-piece fit used to certify minimizers.
"""
import numpy as np

from loewnerweld import CurvePolyline, MobiusComplex, fit_mobius_pieces, welding_from_curve
from loewnerweld.mobius import mobius_apply
from loewnerweld.weld import align_weldings, wrap

t = 2 * np.pi * np.arange(400) / 400
z = np.exp(1j * t)

# the circle welds to the identity once three angles are pinned
w = welding_from_curve(CurvePolyline(z, True))
print("circle: sup |h(theta) - theta| =", np.abs(wrap(w.image - w.theta)).max())

# a perturbed circle and a Moebius image of it share the welding class
c = CurvePolyline(z + 0.15 * z * z, True)
m = MobiusComplex(2.0, 1j, 0.3, 1.0).normalized()
w1 = welding_from_curve(c)
w2 = welding_from_curve(CurvePolyline(mobius_apply(m, c.points), True))
print("perturbed circle: sup |h - theta| =", np.abs(wrap(w1.image - w1.theta)).max())
print("after best PSL(2,R) x PSL(2,R) alignment with its Moebius image:",
      align_weldings(w1, w2)[2])

# marks become breakpoints; on a circle every piece is exactly Moebius
wm = welding_from_curve(CurvePolyline(z, True, (0, 100, 200, 300)))
for k, (mk, r) in enumerate(fit_mobius_pieces(wm)):
    print(f"piece {k}: residual {r:.1e}")
