"""
Loewner energy of Jordan curves
===============================

Two independent routes to the loop energy: the rooted driving function and
the Liouville-type integral over the two uniformizing maps.  Circles have
zero energy, the value is Moebius invariant, and it splits additively into
an arc energy and a chordal energy in the complement of that arc.
"""
import numpy as np

from loewnerweld import (CurvePolyline, MobiusComplex, arc_energy, chord_energy_in_domain,
                         loop_energy, loop_energy_driving)
from loewnerweld.mobius import mobius_apply

t = 2 * np.pi * np.arange(400) / 400
z = np.exp(1j * t)

# circles: both methods return (numerically) zero
circle = CurvePolyline(z, True)
m = MobiusComplex(1 + 1j, 0.5, 0.2, 1.0).normalized()
for name, c in (("unit circle", circle), ("Moebius image", CurvePolyline(mobius_apply(m, z), True))):
    print(f"{name:14s} Liouville {loop_energy(c).value:.2e}  driving {loop_energy_driving(c).value:.2e}")

# the image of the circle under z + c z^2
for coef in (0.1, 0.2):
    c = CurvePolyline(z + coef * z * z, True)
    a, b = loop_energy(c), loop_energy_driving(c)
    print(f"z + {coef} z^2: Liouville {a.value:.6f} (+- {a.estimated_error:.1e}), "
          f"driving {b.value:.6f}")

# additivity: I^L = I^A(arc) + I^C(rest in the complement of the arc)
p = z + 0.2 * z * z
i, j = 50, 250
arc = CurvePolyline(p[i:j + 1])
rest = CurvePolyline(np.concatenate([p[j:], p[:i + 1]]))
total = loop_energy(CurvePolyline(p, True)).value
ia, ic = arc_energy(arc).value, chord_energy_in_domain(rest, arc)
print(f"I^L = {total:.5f}, I^A + I^C = {ia:.5f} + {ic:.5f} = {ia + ic:.5f}")
