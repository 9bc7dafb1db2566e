"""Exact planar disc-with-half-plane-cuts machinery.

A Euclidean d=2 component is an open disc intersected with slabs, i.e.
with half-planes.  Its boundary decomposes into circular arcs and chord
segments; both the exact area (Green's theorem) and the SVG path are
derived from that decomposition.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import UnsupportedError

_EPS = 1e-13


def halfplanes_of(component):
    """(a, b) pairs with the region { x : a . (x - center) <= b }."""
    out = []
    for cut in component.cuts:
        f = np.asarray(cut.functional, dtype=float)
        out.append((f, cut.halfwidth))
        out.append((-f, cut.halfwidth))
    return out


def _clip_polygon(poly, a, b):
    """Sutherland-Hodgman clip of a CCW polygon by a . x <= b."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        dp = b - float(a @ p)
        dq = b - float(a @ q)
        if dp >= -_EPS:
            out.append(p)
            if dq < -_EPS and dp > _EPS:
                t = dp / (dp - dq)
                out.append(p + t * (q - p))
        elif dq >= -_EPS:
            t = dp / (dp - dq)
            out.append(p + t * (q - p))
    return out


def _point_in_poly(poly, x):
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        e = q - p
        if e[0] * (x[1] - p[1]) - e[1] * (x[0] - p[0]) < -_EPS:
            return False
    return True


def boundary_pieces(component):
    """Boundary of the clipped disc, centered at the origin.

    Returns a list of pieces, each ('seg', p, q) or ('arc', th0, th1)
    with th1 > th0 (CCW sweep on the circle of the ball radius), or the
    markers ('full',) / ('empty',).
    """
    space = component.space
    if space.d != 2 or space.p != 2:
        raise UnsupportedError("exact planar decomposition needs d = 2, p = 2")
    r = component.radius
    hps = halfplanes_of(component)
    if not hps:
        return [("full",)]
    side = 4.0 * r
    poly = [np.array(v, dtype=float) for v in
            [(-side, -side), (side, -side), (side, side), (-side, side)]]
    for a, b in hps:
        poly = [np.asarray(v) for v in _clip_polygon(poly, a, b)]
        if len(poly) < 3:
            return [("empty",)]

    # per edge: sub-segment inside the closed disc
    chords = []
    for i in range(len(poly)):
        p, q = poly[i], poly[(i + 1) % len(poly)]
        e = q - p
        A = float(e @ e)
        if A < _EPS:
            continue
        B = 2.0 * float(p @ e)
        C = float(p @ p) - r * r
        disc = B * B - 4 * A * C
        if disc <= 0:
            continue
        sq = math.sqrt(disc)
        t0 = max(0.0, (-B - sq) / (2 * A))
        t1 = min(1.0, (-B + sq) / (2 * A))
        if t1 - t0 > 1e-12:
            chords.append((p + t0 * e, p + t1 * e))

    if not chords:
        if _point_in_poly(poly, np.zeros(2)) and all(
                float(v @ v) >= r * r for v in poly):
            return [("full",)]
        if all(float(v @ v) <= r * r for v in poly):
            # polygon entirely inside the disc
            return [("seg", poly[i], poly[(i + 1) % len(poly)])
                    for i in range(len(poly))]
        return [("empty",)]

    pieces = []
    m = len(chords)
    for i in range(m):
        p, q = chords[i]
        pieces.append(("seg", p, q))
        nxt = chords[(i + 1) % m][0]
        if float((nxt - q) @ (nxt - q)) > 1e-20:
            th0 = math.atan2(q[1], q[0])
            th1 = math.atan2(nxt[1], nxt[0])
            while th1 <= th0:
                th1 += 2 * math.pi
            pieces.append(("arc", th0, th1))
    return pieces


def clipped_disc_area(component) -> float:
    """Exact area via Green's theorem over the boundary pieces."""
    r = component.radius
    pieces = boundary_pieces(component)
    if pieces and pieces[0][0] == "full":
        return math.pi * r * r
    if pieces and pieces[0][0] == "empty":
        return 0.0
    area = 0.0
    for piece in pieces:
        if piece[0] == "seg":
            _, p, q = piece
            area += 0.5 * (p[0] * q[1] - p[1] * q[0])
        else:
            _, th0, th1 = piece
            area += 0.5 * r * r * (th1 - th0)
    return area


def svg_path(component, scale: float, flip_y: bool = True) -> str:
    """SVG path data for the clipped disc (absolute coordinates)."""
    r = component.radius
    cx, cy = component.center
    sy = -1.0 if flip_y else 1.0

    def pt(x, y):
        return (scale * (cx + x), sy * scale * (cy + y))

    pieces = boundary_pieces(component)
    if pieces and pieces[0][0] == "empty":
        return ""
    if pieces and pieces[0][0] == "full":
        R = scale * r
        x0, y0 = pt(-r, 0.0)
        x1, y1 = pt(r, 0.0)
        return (f"M {x0:.4f} {y0:.4f} "
                f"A {R:.4f} {R:.4f} 0 1 {0 if flip_y else 1} {x1:.4f} {y1:.4f} "
                f"A {R:.4f} {R:.4f} 0 1 {0 if flip_y else 1} {x0:.4f} {y0:.4f} Z")

    cmds = []
    first = None
    for piece in pieces:
        if piece[0] == "seg":
            _, p, q = piece
            a = pt(p[0], p[1])
            b = pt(q[0], q[1])
            if first is None:
                first = a
                cmds.append(f"M {a[0]:.4f} {a[1]:.4f}")
            cmds.append(f"L {b[0]:.4f} {b[1]:.4f}")
        else:
            _, th0, th1 = piece
            b = pt(r * math.cos(th1), r * math.sin(th1))
            R = scale * r
            large = 1 if (th1 - th0) > math.pi else 0
            sweep = 0 if flip_y else 1
            if first is None:
                a = pt(r * math.cos(th0), r * math.sin(th0))
                first = a
                cmds.append(f"M {a[0]:.4f} {a[1]:.4f}")
            cmds.append(f"A {R:.4f} {R:.4f} 0 {large} {sweep} {b[0]:.4f} {b[1]:.4f}")
    cmds.append("Z")
    return " ".join(cmds)


def clipped_pball_polygon(component, segments: int = 512):
    """Polyline approximation for rendering non-Euclidean planar components."""
    space = component.space
    if space.d != 2:
        raise UnsupportedError("planar rendering needs d = 2")
    r = component.radius
    th = np.linspace(0, 2 * math.pi, segments, endpoint=False)
    V = np.stack([np.cos(th), np.sin(th)], axis=1)
    if space.p == math.inf:
        n = np.abs(V).max(axis=1)
    elif space.p == 1:
        n = np.abs(V).sum(axis=1)
    else:
        n = (np.abs(V) ** space.p).sum(axis=1) ** (1.0 / space.p)
    poly = [r * v / s for v, s in zip(V, n)]
    for a, b in halfplanes_of(component):
        poly = _clip_polygon(poly, np.asarray(a), b)
        if len(poly) < 3:
            return []
    return [np.asarray(component.center) + np.asarray(v) for v in poly]
