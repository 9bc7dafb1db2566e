"""Certification that an arrangement avoids integral distances.

Distance ranges between components are bracketed by sound outer bounds
(coordinate boxes, norming functionals and, in the plane, a support
function scan); line profiles check the two necessary conditions
(component diameter <= 1 and line intersections of total length <= 1)
plus mod-1 injectivity along sampled and critical lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import InputError, ParameterError, UnsupportedError
from .geometry import (Arrangement, Component, Line, PNormSpace, _pnorm,
                       _pnorm_rows, dual_functional, line_intersection,
                       sample_members, standard_box)
from .volume import ball_volume, slice_volume

# an overlap of mod-1 interval images below this length is treated as
# bisection noise (intervals are accurate to 1e-10)
MOD1_OVERLAP_TOL = 1e-7
# strict interval endpoints get this much slack before an integer counts
STRICT_SLACK = 1e-9


@dataclass(frozen=True)
class DistanceInterval:
    """Sound outer bounds on {dist(a, b) : a in A, b in B}.

    Strict flags record that the bound is an unattained infimum/supremum
    (always the case for open components).
    """

    lo: float
    hi: float
    lo_strict: bool = True
    hi_strict: bool = True

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo - 1e-12:
            raise InputError("need 0 <= lo <= hi")


def integer_free(interval: DistanceInterval) -> bool:
    """True iff no integer m >= 1 can be a distance inside the interval.

    Non-strict endpoints are rounded conservatively outward; strict
    endpoints exclude an integer sitting exactly on the bound.
    """
    lo, hi = interval.lo, interval.hi
    lo_eff = lo + STRICT_SLACK if interval.lo_strict else lo - 1e-12
    hi_eff = hi - STRICT_SLACK if interval.hi_strict else hi + 1e-12
    m = max(1, math.ceil(lo_eff))
    while m <= hi_eff:
        if m > lo_eff:
            return False
        m += 1
    return True


def component_diameter_bound(component: Component) -> float:
    """Sound upper bound on the component diameter (the ball dominates)."""
    return component.diameter


def sampled_diameter(component: Component, pairs: int, seed: int = 0) -> float:
    """Randomized lower bound on the component diameter."""
    rng = np.random.default_rng(seed)
    A = sample_members(component, pairs, rng)
    B = sample_members(component, pairs, rng)
    return float(_pnorm_rows(A - B, component.space.p).max())


def extent_along(component: Component, g: np.ndarray) -> float:
    """Sound upper bound on sup g . (x - center) over the component.

    Ball gives radius * dual_norm(g); each cut tightens via the
    inf-convolution bound min_t (|t| w + r ||g - t f||_q), valid because
    support functions of intersections are dominated by inf-convolutions.
    """
    space = component.space
    r = component.radius
    q = space.q
    gq = _pnorm(g, q)
    best = r * gq
    for cut in component.cuts:
        f = cut.f
        w = cut.halfwidth

        def val(t):
            return abs(t) * w + r * _pnorm(g - t * f, q)

        hi = 2.0 * r * gq / w + 1.0
        res = optimize.minimize_scalar(val, bounds=(-hi, hi), method="bounded",
                                       options={"xatol": 1e-12})
        best = min(best, float(res.fun))
    return best


def _box_interval(A: Component, B: Component):
    p = A.space.p
    boxA = standard_box(A)
    boxB = standard_box(B)
    gap, diff = [], []
    for (la, ha), (lb, hb) in zip(boxA, boxB):
        gap.append(max(0.0, lb - ha, la - hb))
        diff.append(max(hb - la, ha - lb))
    return _pnorm(np.array(gap), p), _pnorm(np.array(diff), p)


def _circle_point(theta, p):
    v = np.array([math.cos(theta), math.sin(theta)])
    return v / _pnorm(v, p)


def _planar_support_hi(dc: np.ndarray, p: float, R: float, W: float) -> float:
    """Sound upper bound on max ||dc + s||_p over the planar set
    { ||s||_p <= R, |f . s| <= W } with f the norming functional of dc.

    The max of a convex function over this convex set is attained on its
    boundary: chord faces contribute only their corner points, the two
    p-circle arcs are scanned on a fine grid with Lipschitz inflation.
    """
    space2 = PNormSpace(2, p)
    f = dual_functional(space2, dc)

    n = 400_000
    th = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    V = np.stack([np.cos(th), np.sin(th)], axis=1)
    norms = _pnorm_rows(V, p)
    S = R * V / norms[:, None]
    fs = S @ f
    mask = np.abs(fs) <= W
    best = 0.0
    if mask.any():
        vals = _pnorm_rows(dc[None, :] + S[mask], p)
        step = 2 * math.pi / n
        best = float(vals.max()) + step * 8.0 * R

    # corner points: |f . s| = W on the p-circle, by sign-change bisection
    corners = []
    for target in (W, -W):
        gvals = fs - target
        sign = np.signbit(gvals)
        idx = np.nonzero(sign[:-1] != sign[1:])[0]
        for i in idx:
            a, b = th[i], th[i + 1]
            for _ in range(60):
                m = 0.5 * (a + b)
                if (float(f @ (R * _circle_point(a, p))) - target) * \
                   (float(f @ (R * _circle_point(m, p))) - target) <= 0:
                    b = m
                else:
                    a = m
            s = R * _circle_point(0.5 * (a + b), p)
            corners.append(s)
    for s in corners:
        best = max(best, _pnorm(dc + s, p) + 1e-9)
    return best


def _is_planar_pair(A: Component, B: Component) -> bool:
    d = A.space.d
    if d == 2:
        return True
    dc = B.c - A.c
    if np.max(np.abs(dc[2:])) > 1e-12:
        return False
    for comp in (A, B):
        for cut in comp.cuts:
            if np.max(np.abs(cut.f[2:])) > 1e-12:
                return False
    return True


def pair_distance_interval(A: Component, B: Component) -> DistanceInterval:
    """Sound outer bounds on cross-component distances.

    Intersects coordinate-box bounds (sound by coordinate-wise
    monotonicity of p-norms), the norming-functional bound along the
    center line, the triangle-inequality bound, and, for planar pairs,
    a support-function scan.
    """
    space = A.space
    p = space.p
    if p < 1:
        raise UnsupportedError("distance certification requires p >= 1")
    dc = B.c - A.c
    delta = _pnorm(dc, p)
    rA, rB = A.radius, B.radius

    lo_box, hi_box = _box_interval(A, B)
    lo = lo_box
    hi = min(hi_box, delta + rA + rB)

    if delta > 0:
        g = dual_functional(space, dc)
        wA = extent_along(A, g)
        wB = extent_along(B, g)
        lo = max(lo, delta - wA - wB)
        if _is_planar_pair(A, B):
            dc2 = dc[:2]
            R = rA + rB
            W = wA + wB
            hi2 = _planar_support_hi(dc2, p, R, W)
            extra = space.d - 2
            if extra > 0:
                if p == math.inf:
                    hi_planar = max(hi2, R)
                else:
                    hi_planar = (hi2 ** p + extra * R ** p) ** (1.0 / p)
            else:
                hi_planar = hi2
            hi = min(hi, hi_planar)
    return DistanceInterval(max(0.0, lo), max(hi, max(0.0, lo)))


@dataclass(frozen=True)
class LineProfile:
    intervals: tuple  # (component index, t_lo, t_hi)
    total_length: float
    mod1_overlap: bool


def line_profile(arrangement: Arrangement, line: Line) -> LineProfile:
    """Per-component intersection intervals, total length, mod-1 overlap."""
    hits = []
    for i, comp in enumerate(arrangement.components):
        iv = line_intersection(comp, line)
        if iv is not None:
            hits.append((i, iv[0], iv[1]))
    total = sum(b - a for _, a, b in hits)
    overlap = False
    for u in range(len(hits)):
        _, a1, b1 = hits[u]
        if b1 - a1 > 1.0 + MOD1_OVERLAP_TOL:
            overlap = True
        for v in range(u + 1, len(hits)):
            _, a2, b2 = hits[v]
            m_lo = math.floor(a2 - b1) - 1
            m_hi = math.ceil(b2 - a1) + 1
            for m in range(m_lo, m_hi + 1):
                ol = min(b1, b2 - m) - max(a1, a2 - m)
                if ol > MOD1_OVERLAP_TOL:
                    overlap = True
    return LineProfile(tuple(hits), total, overlap)


def _cut_corners(component: Component):
    """d=2: boundary points where a cut hyperplane meets the ball sphere."""
    space = component.space
    r = component.radius
    out = []
    n = 2048
    th = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    V = np.stack([np.cos(th), np.sin(th)], axis=1)
    S = r * V / _pnorm_rows(V, space.p)[:, None]
    for cut in component.cuts:
        fs = S @ cut.f
        for target in (cut.halfwidth, -cut.halfwidth):
            g = fs - target
            sign = np.signbit(g)
            idx = np.nonzero(sign != np.roll(sign, -1))[0]
            for i in idx:
                a = th[i]
                b = th[(i + 1) % n] + (2 * math.pi if i == n - 1 else 0.0)

                def val(t):
                    v = np.array([math.cos(t), math.sin(t)])
                    return float(cut.f @ (r * v / _pnorm(v, space.p))) - target

                va = val(a)
                for _ in range(60):
                    m = 0.5 * (a + b)
                    if va * val(m) <= 0:
                        b = m
                    else:
                        a = m
                        va = val(a)
                t = 0.5 * (a + b)
                v = np.array([math.cos(t), math.sin(t)])
                out.append(component.c + r * v / _pnorm(v, space.p))
    return out


def critical_lines(arrangement: Arrangement, seed: int = 0, per_pair: int = 0):
    """Corner-to-corner lines (d=2) or boundary-sampled lines (d>=3)."""
    space = arrangement.space
    lines = []
    if space.d == 2:
        corners = [_cut_corners(c) for c in arrangement.components]
        for i in range(arrangement.n):
            for j in range(i + 1, arrangement.n):
                for a in corners[i]:
                    for b in corners[j]:
                        if _pnorm(b - a, space.p) > 1e-9:
                            lines.append(Line.through(space, a, b))
    else:
        rng = np.random.default_rng(seed)
        count = per_pair if per_pair > 0 else 10
        for i in range(arrangement.n):
            for j in range(i + 1, arrangement.n):
                Pi = sample_members(arrangement.components[i], count, rng)
                Pj = sample_members(arrangement.components[j], count, rng)
                for a, b in zip(Pi, Pj):
                    lines.append(Line.through(space, a, b))
    return lines


@dataclass(frozen=True)
class Certificate:
    diameter_ok: bool
    diameter_bounds: tuple
    pair_intervals: dict  # (i, j) -> (DistanceInterval, integer_free flag)
    lines_checked: int
    max_total_length: float
    mod1_injective: bool
    worst_line: Line | None
    f_verdict: str  # integral-avoidance certificate
    l_verdict: str  # necessary-conditions certificate
    verdict: str
    failing_check: str | None

    def to_json(self):
        pairs = {
            f"{i},{j}": {
                "lo": iv.lo, "hi": iv.hi,
                "lo_strict": iv.lo_strict, "hi_strict": iv.hi_strict,
                "integer_free": ok,
            }
            for (i, j), (iv, ok) in sorted(self.pair_intervals.items())
        }
        worst = None
        if self.worst_line is not None:
            worst = {"point": list(self.worst_line.point),
                     "direction": list(self.worst_line.direction)}
        return {
            "diameter_ok": self.diameter_ok,
            "diameter_bounds": list(self.diameter_bounds),
            "pair_intervals": pairs,
            "lines_checked": self.lines_checked,
            "max_total_length": self.max_total_length,
            "mod1_injective": self.mod1_injective,
            "worst_line": worst,
            "f_verdict": self.f_verdict,
            "l_verdict": self.l_verdict,
            "verdict": self.verdict,
            "failing_check": self.failing_check,
        }


def certify(arrangement: Arrangement, line_samples: int = 1000,
            seed: int = 0) -> Certificate:
    """Full certificate: diameters, pair distance intervals, line checks.

    Diameter < 1 for every component plus integer-free pair intervals is
    sufficient for integral-distance avoidance (f); the line checks
    certify the necessary-condition volume bound (l).
    """
    space = arrangement.space
    if space.p < 1:
        raise UnsupportedError("certification requires p >= 1")

    bounds = tuple(component_diameter_bound(c) for c in arrangement.components)
    diameter_ok = all(b < 1.0 for b in bounds)
    failing = None if diameter_ok else "component_diameter"

    pair_intervals = {}
    pairs_ok = True
    for i in range(arrangement.n):
        for j in range(i + 1, arrangement.n):
            iv = pair_distance_interval(arrangement.components[i],
                                        arrangement.components[j])
            ok = integer_free(iv)
            pair_intervals[(i, j)] = (iv, ok)
            if not ok:
                pairs_ok = False
                if failing is None:
                    failing = f"pair_interval_{i}_{j}"

    lines = critical_lines(arrangement, seed=seed)
    rng = np.random.default_rng(seed + 1)
    if arrangement.n >= 2:
        member_cache = [sample_members(c, max(line_samples // max(arrangement.n - 1, 1), 4), rng)
                        for c in arrangement.components]
        for _ in range(line_samples):
            i, j = sorted(rng.choice(arrangement.n, size=2, replace=False))
            a = member_cache[i][rng.integers(len(member_cache[i]))]
            b = member_cache[j][rng.integers(len(member_cache[j]))]
            lines.append(Line.through(space, a, b))
    else:
        comp = arrangement.components[0]
        pts = sample_members(comp, 2 * line_samples + 2, rng)
        for u in range(line_samples):
            a, b = pts[2 * u], pts[2 * u + 1]
            if _pnorm(b - a, space.p) > 1e-9:
                lines.append(Line.through(space, a, b))

    max_total = 0.0
    mod1_ok = True
    worst = None
    length_ok = True
    for line in lines:
        prof = line_profile(arrangement, line)
        if prof.total_length > max_total:
            max_total = prof.total_length
            worst = line
        if prof.total_length > 1.0 + 1e-8:
            length_ok = False
            worst = line
            if failing is None:
                failing = "line_total_length"
        if prof.mod1_overlap:
            mod1_ok = False
            worst = line
            if failing is None:
                failing = "line_mod1_overlap"

    f_pass = diameter_ok and pairs_ok and mod1_ok
    l_pass = diameter_ok and length_ok
    verdict = "pass" if (f_pass and l_pass) else "fail"
    return Certificate(
        diameter_ok=diameter_ok,
        diameter_bounds=bounds,
        pair_intervals=pair_intervals,
        lines_checked=len(lines),
        max_total_length=max_total,
        mod1_injective=mod1_ok,
        worst_line=worst,
        f_verdict="pass" if f_pass else "fail",
        l_verdict="pass" if l_pass else "fail",
        verdict=verdict,
        failing_check=None if verdict == "pass" else failing,
    )


@dataclass
class BoundsTable:
    """Volume bounds f(X, n), l(X, n) per component count n."""

    space: PNormSpace
    entries: dict = field(default_factory=dict)

    def chain_ok(self) -> bool:
        lam = ball_volume(self.space).value
        for n, e in self.entries.items():
            if not (e["f_lower"] <= e["f_upper"] + 1e-12
                    and e["f_upper"] <= e["l_upper"] + 1e-12
                    and e["l_lower"] <= e["l_upper"] + 1e-12
                    and lam <= e["f_lower"] + 1e-12
                    and e["l_upper"] <= n * lam + 1e-12):
                return False
        return True


def bounds_table(space: PNormSpace, ns) -> BoundsTable:
    """Initial table from the basic chain lambda(B) <= f <= l <= n lambda(B),
    the slice constructions (p > 1) and the Euclidean equality."""
    lam = ball_volume(space).value
    table = BoundsTable(space)
    lam_s = slice_volume(space).value if space.d >= 2 and space.p > 1 else None
    for n in ns:
        if n < 1:
            raise ParameterError("component counts must be >= 1")
        f_lower = lam
        l_lower = lam
        f_upper = n * lam
        l_upper = n * lam
        if n == 1:
            l_upper = lam
            f_upper = lam
        elif lam_s is not None:
            f_lower = max(f_lower, n * lam_s)
            l_lower = max(l_lower, n * lam_s)
            if space.p == 2:
                f_upper = n * lam_s  # Euclidean equality
        table.entries[n] = {"f_lower": f_lower, "f_upper": f_upper,
                            "l_lower": l_lower, "l_upper": l_upper}
    return table


def propagate_bounds(table: BoundsTable, from_n: int, to_k: int) -> BoundsTable:
    """Averaging propagation: an upper bound at n scales by k/n to k >= n."""
    if to_k < from_n:
        raise ParameterError("can only propagate to k >= n")
    if from_n not in table.entries:
        raise ParameterError(f"no table entry at n={from_n}")
    src = table.entries[from_n]
    factor = to_k / from_n
    lam = ball_volume(table.space).value
    dst = table.entries.get(to_k)
    if dst is None:
        dst = {"f_lower": lam, "f_upper": to_k * lam,
               "l_lower": lam, "l_upper": to_k * lam}
    dst = dict(dst)
    dst["f_upper"] = min(dst["f_upper"], factor * src["f_upper"])
    dst["l_upper"] = min(dst["l_upper"], factor * src["l_upper"])
    out = BoundsTable(table.space, dict(table.entries))
    out.entries[to_k] = dst
    return out
