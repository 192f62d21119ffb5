"""Loewner energy, conformal weldings and their minimizers, with the AdS^3 boundary picture."""
from .curves import CurvePolyline, DrivingFunction, SelfIntersectionError, ValidationError
from .mobius import DegenerateError, MobiusComplex, MobiusReal
from .maps import BranchError
from .zipper import ZipperError
from .loewner import chord_energy_in_domain, dirichlet_energy, extract_driving, trace
from .confmap import (ConformalChart, disk_charts_from_curve, hyperbolic_geodesic,
                      map_arc_complement)
from .energy import (EnergyReport, arc_energy, liouville_action, loop_energy,
                     loop_energy_driving, schwarzian)
from .weld import WeldingSamples, c1_break_report, fit_mobius_pieces, welding_from_curve
from .optcurve import (CurveProblem, geodesic_replacement_step, geodesic_residual,
                       minimize_curve, schwarzian_certificate)
from .optweld import (WeldProblem, arc_straighten_step, circular_fit_report,
                      initial_constrained_curve, minimize_welding)
from .ads import (AdSBoundaryPoint, PleatedPlane, SpacelikePlane, bilinear_22, is_positive_curve,
                  isometry_act, plane_boundary_check, pleat_from_circular, pleat_from_welding)

__version__ = "0.1.0"
