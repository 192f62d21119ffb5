"""Command line entry point: ``loewnerweld <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import io
from .curves import ValidationError
from .mobius import DegenerateError

log = logging.getLogger("loewnerweld")


def _emit(args, doc):
    if getattr(args, "out", None):
        io.save(args.out, doc)
    else:
        sys.stdout.write(json.dumps(doc if isinstance(doc, dict) else doc.to_dict(), indent=1) + "\n")


def cmd_energy(args):
    from .energy import close_with_geodesic, loop_energy, loop_energy_driving
    c = io.load(args.curve, "curve")
    doc = {}
    if not c.closed:
        c, _ = close_with_geodesic(c)
        doc["note"] = "open arc: energies of the arc closed by its complementary geodesic"
    doc["liouville"] = loop_energy(c, radial_levels=args.levels).to_dict()
    doc["driving"] = loop_energy_driving(c).to_dict()
    _emit(args, doc)


def cmd_drive(args):
    from .loewner import dirichlet_energy, extract_driving
    w = extract_driving(io.load(args.curve, "curve"))
    log.info("Dirichlet energy %.6g", dirichlet_energy(w))
    _emit(args, io.driving_to_dict(w))


def cmd_trace(args):
    from .loewner import trace
    c = trace(io.load(args.driving, "driving"), args.steps)
    _emit(args, io.curve_to_dict(c))


def _piece_report(w):
    from .weld import c1_break_report, fit_mobius_pieces
    pieces = fit_mobius_pieces(w)
    return pieces, {"pieces": [{"matrix": np.asarray(m.matrix).tolist(), "residual": r}
                               for m, r in pieces],
                    "c1_jumps": c1_break_report(w, pieces)}


def cmd_weld(args):
    from .weld import welding_from_curve
    c = io.load(args.curve, "curve")
    w = welding_from_curve(c, args.samples)
    doc = io.welding_to_dict(w)
    if w.has_breakpoints and len(w.x) >= 2:
        doc["fit"] = _piece_report(w)[1]
    _emit(args, doc)


def cmd_opt_curve(args):
    from .optcurve import CurveProblem, minimize_curve
    pts = io.load(args.points, "points")
    init = io.load(args.init, "curve")
    prob = CurveProblem(pts, init, tol=args.tol, max_sweeps=args.max_sweeps, per_arc=args.per_arc)
    curve, trace, res = minimize_curve(prob)
    io.save(args.out, curve)
    if args.trace:
        io.write_text(args.trace, "sweep,energy\n" + "".join(f"{i},{e:.12g}\n"
                                                              for i, e in enumerate(trace)))
    if args.report:
        io.write_json(args.report, {"energy": trace[-1], "residuals": res,
                                    "sweeps": len(trace) - 1})


def cmd_opt_weld(args):
    from .optweld import WeldProblem, circular_fit_report, minimize_welding
    x, y = io.load(args.constraints, "constraints")
    init = io.load(args.init, "curve") if args.init else None
    prob = WeldProblem(x, y, init, tol=args.tol, max_sweeps=args.max_sweeps, per_arc=args.per_arc)
    w, curve, trace = minimize_welding(prob)
    io.save(args.out, w)
    if args.curve_out:
        io.save(args.curve_out, curve)
    if args.report:
        rep = circular_fit_report(curve)
        io.write_json(args.report, {"energy_trace": trace,
                                    "circle_residuals": [r for _, r, _ in rep],
                                    "joint_angles": [a for _, _, a in rep]})


def cmd_ads_check(args):
    from .ads import graph_points, is_positive_curve, plane_boundary_check
    w = io.load(args.welding, "welding")
    ok, wit = is_positive_curve(graph_points(w.theta, w.image))
    doc = {"positive": ok, "witness": wit}
    if w.has_breakpoints and len(w.x) >= 2:
        pieces, rep = _piece_report(w)
        th = np.linspace(0, 2 * np.pi, 64, endpoint=False)
        doc["plane_boundary"] = [max(plane_boundary_check(m.inverse(), t) for t in th)
                                 for m, _ in pieces]
        doc.update(rep)
    _emit(args, doc)
    return 0


def cmd_pleat(args):
    from .ads import AdSBoundaryPoint, pleat_from_circular, pleat_from_welding
    if args.welding:
        w = io.load(args.welding, "welding")
        if not w.has_breakpoints:
            raise ValidationError("welding needs breakpoints to pleat")
        pieces, _ = _piece_report(w)
        pp = pleat_from_welding(pieces, [AdSBoundaryPoint(a, b) for a, b in zip(w.x, w.y)])
    else:
        from .optcurve import split_arcs
        from .optweld import circular_fit_report
        c = io.load(args.curve, "curve")
        arcs = split_arcs(c)
        rep = circular_fit_report(c)
        pp = pleat_from_circular([(f, (a[0], a[-1])) for (f, _, _), a in zip(rep, arcs)])
    _emit(args, pp.to_dict())


def cmd_plot(args):
    if args.curve:
        c = io.load(args.curve, "curve")
        polys = [(c.points, c.closed)]
    else:
        w = io.load(args.welding, "welding")
        polys = [(w.theta + 1j * w.image, False)]
    io.write_text(args.out, io.svg_polyline(polys))


def build_parser():
    p = argparse.ArgumentParser(prog="loewnerweld", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("energy", help="loop or arc energy by both methods")
    s.add_argument("--curve", required=True)
    s.add_argument("--levels", type=int, default=8)
    s.add_argument("--out")
    s.set_defaults(func=cmd_energy)

    s = sub.add_parser("drive", help="driving function of a chord in H")
    s.add_argument("--curve", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_drive)

    s = sub.add_parser("trace", help="curve generated by a driving function")
    s.add_argument("--driving", required=True)
    s.add_argument("--steps", type=int, default=1000)
    s.add_argument("--out")
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("weld", help="welding of a closed curve and its Moebius pieces")
    s.add_argument("--curve", required=True)
    s.add_argument("--samples", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_weld)

    s = sub.add_parser("opt-curve", help="minimal-energy curve through points")
    s.add_argument("--points", required=True)
    s.add_argument("--init", required=True)
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--max-sweeps", type=int, default=40)
    s.add_argument("--per-arc", type=int, default=160)
    s.add_argument("--out", required=True)
    s.add_argument("--trace")
    s.add_argument("--report")
    s.set_defaults(func=cmd_opt_curve)

    s = sub.add_parser("opt-weld", help="minimal-energy welding with h(x_k) = y_k")
    s.add_argument("--constraints", required=True)
    s.add_argument("--init")
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--max-sweeps", type=int, default=30)
    s.add_argument("--per-arc", type=int, default=160)
    s.add_argument("--out", required=True)
    s.add_argument("--curve-out")
    s.add_argument("--report")
    s.set_defaults(func=cmd_opt_weld)

    s = sub.add_parser("ads-check", help="positivity of a welding graph and plane checks")
    s.add_argument("--welding", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_ads_check)

    s = sub.add_parser("pleat", help="pleated plane from a welding or a circular curve")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--welding")
    g.add_argument("--curve")
    s.add_argument("--out")
    s.set_defaults(func=cmd_pleat)

    s = sub.add_parser("plot", help="SVG polyline of a curve or welding graph")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--curve")
    g.add_argument("--welding")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        rc = args.func(args)
    except (ValidationError, DegenerateError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ArithmeticError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return 3
    return int(rc or 0)


if __name__ == "__main__":
    sys.exit(main())
