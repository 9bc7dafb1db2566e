"""Command-line front end: JSON persistence, certification, SVG rendering.

All machine output is JSON on stdout (deterministic for fixed argv and
seed, except for timing fields); human-readable summaries go to stderr.
Exit codes: 0 success, 1 failed check, 2 usage/input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import certifier, constructions, diophantine, odd_distances, planar, volume
from .errors import (InputError, ParameterError, SearchExhaustedError,
                     UnsupportedError)
from .geometry import Arrangement, Component, PNormSpace, SlabCut

SCHEMA_VERSION = 1
SVG_SCALE = 100.0


# ---------------------------------------------------------------- JSON schema

def _p_to_json(p: float):
    return "inf" if p == math.inf else p


def _p_from_json(v):
    if v == "inf":
        return math.inf
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    raise InputError(f"invalid norm exponent {v!r}")


def _p_arg(v: str) -> float:
    """Parse a --p command-line value ('inf' or a number)."""
    if v == "inf":
        return math.inf
    try:
        return float(v)
    except ValueError:
        raise InputError(f"invalid norm exponent {v!r}") from None


def _check_fields(obj: dict, allowed, where: str):
    unknown = set(obj) - set(allowed)
    if unknown:
        raise InputError(f"unknown fields {sorted(unknown)} in {where}")


def space_to_json(space: PNormSpace) -> dict:
    return {"d": space.d, "p": _p_to_json(space.p)}


def space_from_json(obj: dict) -> PNormSpace:
    _check_fields(obj, {"d", "p"}, "space")
    return PNormSpace(int(obj["d"]), _p_from_json(obj["p"]))


def arrangement_to_json(arr: Arrangement) -> dict:
    comps = []
    for c in arr.components:
        comps.append({
            "center": list(c.center),
            "diameter": c.diameter,
            "cuts": [{"functional": list(cut.functional),
                      "halfwidth": cut.halfwidth} for cut in c.cuts],
        })
    return {"version": SCHEMA_VERSION, "space": space_to_json(arr.space),
            "components": comps, "label": arr.label}


def arrangement_from_json(obj: dict) -> Arrangement:
    _check_fields(obj, {"version", "space", "components", "label"}, "arrangement")
    if obj.get("version") != SCHEMA_VERSION:
        raise InputError(f"unsupported schema version {obj.get('version')!r}")
    space = space_from_json(obj["space"])
    comps = []
    for entry in obj["components"]:
        _check_fields(entry, {"center", "diameter", "cuts"}, "component")
        cuts = []
        for cobj in entry.get("cuts", []):
            _check_fields(cobj, {"functional", "halfwidth"}, "cut")
            cuts.append(SlabCut(tuple(cobj["functional"]), float(cobj["halfwidth"])))
        comps.append(Component(space, tuple(entry["center"]),
                               float(entry["diameter"]), tuple(cuts)))
    return Arrangement(space, tuple(comps), label=obj.get("label", ""))


def pointset_to_json(ps: odd_distances.PointSet) -> dict:
    return {"dimension": ps.dimension, "points": [list(p) for p in ps.points]}


def pointset_from_json(obj: dict) -> odd_distances.PointSet:
    _check_fields(obj, {"dimension", "points"}, "point set")
    return odd_distances.PointSet(int(obj["dimension"]),
                                  tuple(tuple(p) for p in obj["points"]))


def _estimate_json(est: volume.VolumeEstimate) -> dict:
    return {"value": est.value, "stderr": est.stderr,
            "samples": est.samples, "method": est.method}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ----------------------------------------------------------------- subcommands

def _cmd_volume(args) -> int:
    space = PNormSpace(args.d, _p_arg(args.p))
    if args.shape == "ball":
        if args.mc_samples:
            comp = volume.ball(space, [0.0] * space.d, 1.0)
            est = volume.monte_carlo_volume(comp, args.mc_samples, args.seed)
        else:
            est = volume.ball_volume(space)
    else:
        if args.mc_samples:
            est = volume.monte_carlo_volume(volume.slice_component(space),
                                            args.mc_samples, args.seed)
        else:
            est = volume.slice_volume(space)
    _emit(_estimate_json(est))
    print(f"{args.shape} volume for d={space.d}, p={args.p}: {est.value:.9g} "
          f"({est.method})", file=sys.stderr)
    return 0


def _cmd_construct(args) -> int:
    space = PNormSpace(args.d, _p_arg(args.p))
    params = constructions.ConstructionParams(args.n, space, args.epsilon, args.k)
    if args.kind == "chain":
        arr = constructions.nested_chain(params)
    elif args.kind == "two":
        arr = constructions.two_component(params)
    elif args.kind == "parabola":
        arr = constructions.parabola(params)
    else:
        if args.prime is None:
            raise ParameterError("pgon needs --prime")
        arr = constructions.pgon(params, args.prime)
    doc = arrangement_to_json(arr)
    with open(args.output, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1)
        fh.write("\n")
    _emit({"label": arr.label, "n": arr.n, "output": args.output})
    print(f"wrote {arr.label} to {args.output}", file=sys.stderr)
    return 0


def _cmd_certify(args) -> int:
    with open(args.file) as fh:
        arr = arrangement_from_json(json.load(fh))
    cert = certifier.certify(arr, line_samples=args.lines, seed=args.seed)
    _emit(cert.to_json())
    print(f"certificate: {cert.verdict} (f={cert.f_verdict}, l={cert.l_verdict})",
          file=sys.stderr)
    return 0 if cert.verdict == "pass" else 1


def _cmd_search_k(args) -> int:
    basis = diophantine.sine_basis(args.prime)
    t0 = time.perf_counter()
    sol = diophantine.find_scaling(basis, args.epsilon, args.kmax)
    _emit({"k": sol.k, "residuals": list(sol.residuals),
           "epsilon": sol.epsilon, "timing_s": time.perf_counter() - t0})
    print(f"k={sol.k} for prime={args.prime}, epsilon={args.epsilon}",
          file=sys.stderr)
    return 0


def _cmd_odd_check(args) -> int:
    with open(args.file) as fh:
        ps = pointset_from_json(json.load(fh))
    failing = odd_distances.odd_distance_verify(ps, args.tolerance)
    if failing is None:
        _emit({"verdict": "pass", "points": len(ps.points)})
        print("all pairwise distances are odd integers", file=sys.stderr)
        return 0
    i, j, dist = failing
    _emit({"verdict": "fail", "pair": [i, j], "distance": dist})
    print(f"pair ({i}, {j}) has non-odd distance {dist}", file=sys.stderr)
    return 1


def _cmd_odd_search(args) -> int:
    sets = odd_distances.odd_set_search(args.d, args.n, args.max_odd,
                                        budget=args.budget)
    _emit({"found": [pointset_to_json(ps) for ps in sets]})
    print(f"found {len(sets)} embeddable odd-distance sets", file=sys.stderr)
    return 0


def _cmd_bounds(args) -> int:
    space = PNormSpace(args.d, _p_arg(args.p))
    table = certifier.bounds_table(space, [args.n])
    table = certifier.propagate_bounds(table, args.n, 2 * args.n)
    lam = volume.ball_volume(space).value
    _emit({
        "ball_volume": lam,
        "entries": {str(n): e for n, e in sorted(table.entries.items())},
        "chain_ok": table.chain_ok(),
    })
    print(f"bounds chain for n={args.n}, d={args.d}, p={args.p}", file=sys.stderr)
    return 0


def _cmd_render(args) -> int:
    with open(args.file) as fh:
        arr = arrangement_from_json(json.load(fh))
    if arr.space.d != 2:
        raise UnsupportedError("rendering is planar only (d = 2)")
    svg = render_svg(arr)
    with open(args.output, "w") as fh:
        fh.write(svg)
    _emit({"output": args.output, "components": arr.n})
    print(f"rendered {arr.n} components to {args.output}", file=sys.stderr)
    return 0


def render_svg(arr: Arrangement) -> str:
    """SVG 1.1 document: one clipped-disc path per component, centers marked."""
    boxes = [certifier.standard_box(c) for c in arr.components]
    x0 = min(b[0][0] for b in boxes) * SVG_SCALE
    x1 = max(b[0][1] for b in boxes) * SVG_SCALE
    y1 = -min(b[1][0] for b in boxes) * SVG_SCALE
    y0 = -max(b[1][1] for b in boxes) * SVG_SCALE
    w, h = x1 - x0, y1 - y0
    margin = 0.05 * max(w, h, 1.0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0 - margin:.2f} {y0 - margin:.2f} '
        f'{w + 2 * margin:.2f} {h + 2 * margin:.2f}">',
    ]
    for comp in arr.components:
        if arr.space.p == 2:
            d = planar.svg_path(comp, SVG_SCALE)
        else:
            poly = planar.clipped_pball_polygon(comp)
            if not poly:
                d = ""
            else:
                pts = [f"{SVG_SCALE * v[0]:.4f} {-SVG_SCALE * v[1]:.4f}"
                       for v in poly]
                d = "M " + " L ".join(pts) + " Z"
        if d:
            parts.append(f'<path d="{d}" fill="#9ecae1" stroke="#08519c" '
                         f'stroke-width="1"/>')
        cx, cy = comp.center
        parts.append(f'<circle cx="{SVG_SCALE * cx:.2f}" cy="{-SVG_SCALE * cy:.2f}" '
                     f'r="2" fill="#08519c"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="integralgap")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("volume", help="ball or slice volume")
    v.add_argument("shape", choices=["ball", "slice"])
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--p", required=True)
    v.add_argument("--mc-samples", type=int, default=0)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_cmd_volume)

    c = sub.add_parser("construct", help="build an arrangement")
    c.add_argument("kind", choices=["chain", "two", "parabola", "pgon"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--p", required=True)
    c.add_argument("--epsilon", type=float, required=True)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--prime", type=int, default=None)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=_cmd_construct)

    ce = sub.add_parser("certify", help="certify an arrangement file")
    ce.add_argument("file")
    ce.add_argument("--lines", type=int, default=1000)
    ce.add_argument("--seed", type=int, default=0)
    ce.set_defaults(func=_cmd_certify)

    sk = sub.add_parser("search-k", help="fractional-part scaling search")
    sk.add_argument("--prime", type=int, required=True)
    sk.add_argument("--epsilon", type=float, required=True)
    sk.add_argument("--kmax", type=int, required=True)
    sk.set_defaults(func=_cmd_search_k)

    odd = sub.add_parser("odd", help="odd integral distance point sets")
    osub = odd.add_subparsers(dest="odd_command", required=True)
    oc = osub.add_parser("check")
    oc.add_argument("file")
    oc.add_argument("--tolerance", type=float, default=1e-6)
    oc.set_defaults(func=_cmd_odd_check)
    osr = osub.add_parser("search")
    osr.add_argument("--d", type=int, required=True)
    osr.add_argument("--n", type=int, required=True)
    osr.add_argument("--max-odd", type=int, required=True)
    osr.add_argument("--budget", type=int, default=1_000_000)
    osr.set_defaults(func=_cmd_odd_search)

    b = sub.add_parser("bounds", help="volume bound chain and propagation")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--p", required=True)
    b.set_defaults(func=_cmd_bounds)

    r = sub.add_parser("render", help="render a planar arrangement to SVG")
    r.add_argument("file")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=_cmd_render)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except (InputError, ParameterError, UnsupportedError, SearchExhaustedError,
            FileNotFoundError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
