"""
Anti-de Sitter boundary and pleated planes
==========================================

The 2x2 matrix model: the quadratic form -det, boundary points as rank-one
matrices, space-like planes bounded by graphs of Moebius maps, and the
pleated plane spanned by a piecewise Moebius welding.
"""
import numpy as np

from loewnerweld import AdSBoundaryPoint, MobiusReal, SpacelikePlane, pleat_from_welding
from loewnerweld.ads import plane_boundary_check, signature_table
from loewnerweld.mobius import real_mobius_from_angles

names, gram = signature_table()
print("basis", names)
print(gram)

# the graph of alpha^-1 bounds the plane P_[alpha]
alpha = MobiusReal(1.2, 0.3, -0.4, 0.9).normalized()
xs = np.linspace(0, 2 * np.pi, 1000, endpoint=False)
print("max |<alpha, A>| on the boundary graph:", max(plane_boundary_check(alpha, x) for x in xs))

# a piecewise Moebius welding through four breakpoints
x = np.array([0.3, 1.7, 3.4, 4.8])
y = np.array([0.1, 1.9, 3.3, 4.9])
pieces = [real_mobius_from_angles(x[[k, (k + 1) % 4, (k + 2) % 4]],
                                  y[[k, (k + 1) % 4, (k + 2) % 4]]) for k in range(4)]
pp = pleat_from_welding(pieces, [AdSBoundaryPoint(a, b) for a, b in zip(x, y)])
doc = pp.to_dict()
print("faces:", [f["kind"] for f in doc["faces"]])
print("bending lines:", doc["bending"], "triangles:", doc["triangulation"])
print("rule:", doc["triangulation_rule"])
print("a single Moebius piece gives a single plane:",
      len(pleat_from_welding([alpha] * 3, [AdSBoundaryPoint(a, alpha.act_angle(a))
                                            for a in (0.5, 2.0, 4.0)]).faces))
print("det of a normalized plane:", np.linalg.det(SpacelikePlane(alpha).alpha.matrix))
