"""Command line: solve, kinetic, check and render.

Exit codes: 0 computed (any status), 2 input error, 3 oracle mismatch.
"""
import argparse
import json
import math
import os
import sys

import numpy as np

from .chains import ChainOrderError, Disks, build_convex_chains, fixed_orientation_tangents
from .generators import KINDS, feasible_radius, generate
from .hull import convex_hull
from .kinetic import FORMULA, PROSE, Chaser, as_trajectory, verify_stability
from .oracle import brute_force_shortest, max_point_distance, validate_segment
from .sweep import sweep_shortest_segment

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 2, 3


class InputError(ValueError):
    pass


# file formats -----------------------------------------------------------------

def _num(x):
    """JSON-safe float: repr round-trips doubles exactly, infinities become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def _pt(p):
    return [_num(p[0]), _num(p[1])]


def _read_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror))
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc))


def _radius(data, override, minimum=0.0):
    r = override if override is not None else data.get("r")
    if r is None:
        raise InputError("field 'r' missing (or pass --r)")
    try:
        r = float(r)
    except (TypeError, ValueError):
        raise InputError("field 'r' must be a number")
    if not math.isfinite(r) or r <= minimum:
        raise InputError("field 'r' must be finite and > %g (got %g)" % (minimum, r))
    return r


def _points(raw, field="points"):
    try:
        P = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise InputError("field '%s' must be a list of [x, y] pairs" % field)
    if P.ndim != 2 or P.shape[1] != 2 or len(P) == 0:
        raise InputError("field '%s' must be a non-empty list of [x, y] pairs" % field)
    if not np.all(np.isfinite(P)):
        raise InputError("field '%s' has non-finite coordinates" % field)
    return P


def load_instance(path, r=None):
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError("instance file must hold a JSON object")
    if "points" not in data:
        raise InputError("field 'points' missing")
    return _points(data["points"]), _radius(data, r)


def load_trajectories(path, r=None):
    """(T+1, n, 2) positions and r.  ``trajectories`` lists, per point, its
    positions at timestamps 0..T; ``timestamps`` is the count T + 1."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError("trajectory file must hold a JSON object")
    if "trajectories" not in data:
        raise InputError("field 'trajectories' missing")
    r = _radius(data, r)
    if r < 1:
        raise InputError("field 'r' must be >= 1 for kinetic runs (got %g)" % r)
    try:
        X = np.asarray(data["trajectories"], dtype=float)
    except (TypeError, ValueError):
        raise InputError("field 'trajectories' must be a list of position lists")
    if X.ndim != 3 or X.shape[2] != 2:
        raise InputError("field 'trajectories' must have shape [points][timestamps][2]")
    if "timestamps" in data and int(data["timestamps"]) != X.shape[1]:
        raise InputError("field 'timestamps' is %s but trajectories hold %d positions"
                         % (data["timestamps"], X.shape[1]))
    try:
        traj = as_trajectory(np.transpose(X, (1, 0, 2)))
    except ValueError as exc:
        raise InputError("field 'trajectories': %s" % exc)
    return traj, r


def result_json(points, r, res):
    out = {"status": res.status, "r": r, "endpoints": None, "length": _num(res.length),
           "max_point_distance": None, "orientation": None,
           "event_counts": {str(k): v for k, v in res.trace.counts.items()}}
    if res.segment is not None:
        out["endpoints"] = [_pt(res.segment.a), _pt(res.segment.b)]
        out["max_point_distance"] = max_point_distance(points, res.segment)
    if res.alpha is not None:
        out["orientation"] = res.alpha
    return out


def _write(obj, path):
    text = json.dumps(obj, indent=1)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as f:
            f.write(text + "\n")


# commands ---------------------------------------------------------------------

def cmd_solve(args):
    P, r = load_instance(args.input, args.r)
    res = sweep_shortest_segment(P, r)
    _write(result_json(P, r, res), args.output)
    if args.trace:
        _write(res.trace.to_json(), args.trace)
    return EXIT_OK


def cmd_kinetic(args):
    traj, r = load_trajectories(args.input, args.r)
    lo = 1.0 if args.t_start is None else args.t_start
    hi = float(traj.T) if args.t_end is None else args.t_end
    if not 1 <= lo <= hi <= traj.T:
        raise InputError("t-range [%g, %g] must lie inside [1, %d]" % (lo, hi, traj.T))
    if args.dt <= 0:
        raise InputError("--dt must be positive")
    ch = Chaser(traj, r, FORMULA if args.formula else PROSE)
    outputs = []
    k = int(round((hi - lo) / args.dt))
    for t in lo + args.dt * np.arange(k + 1):
        t = float(min(t, hi))
        o = ch.evaluate(t)
        outputs.append({"t": t, "status": "none" if o.value is None else "segment",
                        "endpoints": None if o.value is None
                        else [_pt(o.value.a), _pt(o.value.b)]})
    out = {"r": r, "timestamps": traj.T + 1, "interpolation": ch.interpolation,
           "outputs": outputs}
    # OPT is certified through D - 2r where possible; --verify solves it exactly
    rep = verify_stability(ch, r, dt=args.dt, exact_opt=args.verify, t_range=(lo, hi))
    out["report"] = rep.to_json()
    _write(out, args.output)
    return EXIT_OK


def _instances(args):
    if args.input:
        P, r = load_instance(args.input, args.r)
        yield "file", P, r
        return
    for s in range(args.seed, args.seed + args.seeds):
        P = generate(args.generate, args.n, seed=s)
        if args.r is not None:
            r = args.r
        elif args.generate == "collinear":
            D = float(np.ptp(P @ (P[1] - P[0]) / np.linalg.norm(P[1] - P[0])))
            r = D / 2 * np.random.default_rng(s).uniform(0.05, 0.95)
        else:
            r = feasible_radius(P, np.random.default_rng(s))
        yield "seed %d" % s, P, float(r)


def cmd_check(args):
    if not args.input and not args.generate:
        raise InputError("give an instance file or --generate")
    bad = 0
    total = 0
    for name, P, r in _instances(args):
        total += 1
        res = sweep_shortest_segment(P, r)
        status, L, seg = res.status, res.length, res.segment
        if args.inject_fault and total == 1:
            # harness self-test: corrupt the first answer
            status, L = "segment", (L * 1.01 + 1.0 if math.isfinite(L) else 1.0)
        ref = brute_force_shortest(P, r, k_orientations=args.k)
        if not ref.feasible or ref.value is None:
            ok = status == "none"
            err = 0.0 if ok else math.inf
        else:
            err = abs(L - ref.length) / max(1.0, abs(ref.length))
            ok = status != "none" and err <= args.tol and \
                validate_segment(P, r, seg, tol=1e-7 * max(1.0, float(np.abs(P).max())))
        bad += not ok
        print("%-10s n=%-4d r=%-10.6g sweep=%-22.17g oracle=%-22.17g rel=%.2e %s"
              % (name, len(P), r, L, ref.length, err, "ok" if ok else "MISMATCH"))
    print("%d/%d within tolerance" % (total - bad, total))
    return EXIT_MISMATCH if bad else EXIT_OK


# svg --------------------------------------------------------------------------

def _f(x):
    return "%.6f" % x


def _arc_path(arc):
    s, e = arc.start, arc.end
    big = 1 if arc.sweep > math.pi else 0
    flag = 1 if arc.winding == "ccw" else 0
    R = arc.circle.radius
    return "M %s %s A %s %s 0 %d %d %s %s" % (_f(s.x), _f(s.y), _f(R), _f(R), big, flag,
                                              _f(e.x), _f(e.y))


def render_svg(points, r, res, size=480, chased=None):
    """Points, one circle per hull vertex, tangents, chains and the answer;
    ``chased`` adds the kinetic output segment."""
    P = np.asarray(points, dtype=float)
    hull = convex_hull(P)
    V = hull.vertices
    lo = P.min(axis=0) - r * 1.2
    hi = P.max(axis=0) + r * 1.2
    span = float(max(hi - lo))
    stroke = span / 400
    body = []
    body.append('<g class="circles" fill="none" stroke="#9ab" stroke-width="%s">' % _f(stroke))
    for x, y in V:
        body.append('<circle cx="%s" cy="%s" r="%s"/>' % (_f(x), _f(y), _f(r)))
    body.append('</g>')
    if res.status == "segment" and res.alpha is not None and len(V) >= 3:
        disks = Disks(V, r)
        tp = fixed_orientation_tangents(disks, r, res.alpha)
        if tp is not None:
            ux, uy = math.cos(res.alpha), math.sin(res.alpha)
            for cls, line in (("tau1", tp.tau1), ("tau2", tp.tau2)):
                n, c = line.normal, line.offset
                m = (n[0] * c, n[1] * c)
                a = (m[0] - 2 * span * ux, m[1] - 2 * span * uy)
                b = (m[0] + 2 * span * ux, m[1] + 2 * span * uy)
                body.append('<line class="%s" x1="%s" y1="%s" x2="%s" y2="%s" stroke="#c84" '
                            'stroke-width="%s" stroke-dasharray="%s"/>'
                            % (cls, _f(a[0]), _f(a[1]), _f(b[0]), _f(b[1]), _f(stroke),
                               _f(4 * stroke)))
            try:
                S1, S2 = build_convex_chains(disks, r, tp, res.alpha)
                for S in (S1, S2):
                    arcs = S.arcs(disks, res.alpha, *((tp.owner1, tp.owner2) if S.side == 1
                                                      else (tp.owner2, tp.owner1)))
                    d = " ".join(_arc_path(a) for a in arcs)
                    body.append('<path class="chain S%d" d="%s" fill="none" stroke="#46a" '
                                'stroke-width="%s"/>' % (S.side, d, _f(2 * stroke)))
            except (ChainOrderError, ValueError):
                pass    # decorations only; the answer is still drawn
    ps = 3 * stroke
    pts = " ".join("M %s %s h %s v %s h %s z" % (_f(x - ps), _f(y - ps), _f(2 * ps),
                                                  _f(2 * ps), _f(-2 * ps)) for x, y in P)
    body.append('<path class="points" d="%s" fill="#222"/>' % pts)
    if res.status == "segment":
        a, b = res.segment
        body.append('<line class="segment" x1="%s" y1="%s" x2="%s" y2="%s" stroke="#d22" '
                    'stroke-width="%s"/>' % (_f(a.x), _f(a.y), _f(b.x), _f(b.y),
                                            _f(3 * stroke)))
    elif res.status == "point":
        a = res.segment.a
        body.append('<path class="point-answer" d="M %s %s l %s %s m 0 %s l %s %s" '
                    'stroke="#d22" stroke-width="%s"/>'
                    % (_f(a.x - 4 * ps), _f(a.y - 4 * ps), _f(8 * ps), _f(8 * ps),
                       _f(-8 * ps), _f(-8 * ps), _f(8 * ps), _f(stroke)))
    if chased is not None:
        a, b = chased
        body.append('<line class="chased" x1="%s" y1="%s" x2="%s" y2="%s" stroke="#2a4" '
                    'stroke-width="%s" stroke-dasharray="%s"/>'
                    % (_f(a.x), _f(a.y), _f(b.x), _f(b.y), _f(2 * stroke), _f(6 * stroke)))
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" '
            'viewBox="%s %s %s %s">\n<g transform="scale(1,-1)">'
            % (size, size, _f(lo[0]), _f(-(lo[1] + span)), _f(span), _f(span)))
    return head + "\n" + "\n".join(body) + "\n</g>\n</svg>\n"


def cmd_render(args):
    data = _read_json(args.input)
    if isinstance(data, dict) and "trajectories" in data:
        traj, r = load_trajectories(args.input, args.r)
        os.makedirs(args.output, exist_ok=True)
        step = args.dt if args.dt else 1.0
        k = int(round(traj.T / step))
        ch = Chaser(traj, r)
        for f in range(k + 1):
            t = f * step
            P = traj.at(t)
            chased = ch.evaluate(t).value if t >= 1 else None
            svg = render_svg(P, r, sweep_shortest_segment(P, r), chased=chased)
            with open(os.path.join(args.output, "frame_%04d.svg" % f), "w") as fh:
                fh.write(svg)
        return EXIT_OK
    P, r = load_instance(args.input, args.r)
    svg = render_svg(P, r, sweep_shortest_segment(P, r))
    if args.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        with open(args.output, "w") as fh:
            fh.write(svg)
    return EXIT_OK


# entry point ------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="repseg",
                                 description="Shortest representative segment tools")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="shortest segment of a static instance")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--r", type=float)
    p.add_argument("--trace", help="write the sweep event trace as JSON")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("kinetic", help="chasing output for moving points")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--r", type=float)
    p.add_argument("--t-start", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--dt", type=float, default=1.0 / 64)
    p.add_argument("--verify", action="store_true",
                   help="check every stability bound against exact optima")
    p.add_argument("--formula", action="store_true",
                   help="use the reversed interpolation coefficients")
    p.set_defaults(func=cmd_kinetic)

    p = sub.add_parser("check", help="sweep versus brute-force oracle")
    p.add_argument("input", nargs="?")
    p.add_argument("--generate", choices=KINDS)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--r", type=float)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=4096, help="oracle orientation grid")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt the first answer to test the harness")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="SVG of an instance or trajectory frames")
    p.add_argument("input")
    p.add_argument("output", help="SVG file, or a directory for trajectories")
    p.add_argument("--r", type=float)
    p.add_argument("--dt", type=float, help="frame spacing for trajectories (default 1)")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
