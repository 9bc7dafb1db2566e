"""Core p-norm geometry: spaces, truncated balls, lines and extents.

All sets are open; membership uses strict inequalities throughout.
Values are immutable after construction and every operation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, ParameterError, UnsupportedError

# tolerances (see also certifier): bisection accuracy for line
# intersections and the dual-identity check tolerance
BISECTION_TOL = 1e-10
DUAL_TOL = 1e-10
PARALLEL_TOL = 1e-9


@dataclass(frozen=True)
class PNormSpace:
    """R^d with the p-norm; p may be math.inf."""

    d: int
    p: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.d}")
        if not (self.p > 0):
            raise ParameterError(f"exponent must be positive or inf, got {self.p}")

    @property
    def q(self) -> float:
        """Dual exponent: 1/p + 1/q = 1 (q = inf for p = 1 and vice versa)."""
        if self.p == math.inf:
            return 1.0
        if self.p == 1:
            return math.inf
        if self.p < 1:
            raise UnsupportedError("dual exponent undefined for p < 1")
        return self.p / (self.p - 1)

    def norm(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,):
            raise InputError(f"expected a vector of length {self.d}, got shape {x.shape}")
        return _pnorm(x, self.p)

    def dual_norm(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.d,):
            raise InputError(f"expected a vector of length {self.d}, got shape {x.shape}")
        return _pnorm(x, self.q)

    def norm_many(self, X: np.ndarray) -> np.ndarray:
        """Row-wise p-norms of an (n, d) array."""
        return _pnorm_rows(np.asarray(X, dtype=float), self.p)


def _pnorm(x: np.ndarray, p: float) -> float:
    a = np.abs(x)
    if p == math.inf:
        return float(a.max()) if a.size else 0.0
    if p == 1:
        return float(a.sum())
    if p == 2:
        return float(math.sqrt(float((a * a).sum())))
    m = float(a.max()) if a.size else 0.0
    if m == 0.0:
        return 0.0
    # scale to avoid overflow for large p
    return m * float(((a / m) ** p).sum()) ** (1.0 / p)


def _pnorm_rows(X: np.ndarray, p: float) -> np.ndarray:
    a = np.abs(X)
    if p == math.inf:
        return a.max(axis=1)
    if p == 1:
        return a.sum(axis=1)
    if p == 2:
        return np.sqrt((a * a).sum(axis=1))
    m = a.max(axis=1)
    safe = np.where(m > 0, m, 1.0)
    return m * ((a / safe[:, None]) ** p).sum(axis=1) ** (1.0 / p)


def dual_functional(space: PNormSpace, direction) -> np.ndarray:
    """Canonical norming functional: dual norm 1 and f . u = ||u||_p.

    For p in {1, inf} the tie-breaking is deterministic: sign vector for
    p = 1, signed first-maximal coordinate vector for p = inf.
    """
    u = np.asarray(direction, dtype=float)
    if u.shape != (space.d,):
        raise InputError(f"expected a vector of length {space.d}")
    if not np.any(u):
        raise InputError("zero direction has no norming functional")
    p = space.p
    if p == 1:
        return np.sign(u)
    if p == math.inf:
        i = int(np.argmax(np.abs(u)))
        f = np.zeros(space.d)
        f[i] = math.copysign(1.0, u[i])
        return f
    if p <= 1:
        raise UnsupportedError("norming functionals require p >= 1")
    n = _pnorm(u, p)
    return np.sign(u) * (np.abs(u) / n) ** (p - 1.0)


@dataclass(frozen=True)
class SlabCut:
    """Slab { x : |functional . (x - center)| < halfwidth }.

    The functional has dual norm 1, so the slab's width in the ambient
    norm is exactly 2 * halfwidth.
    """

    functional: tuple
    halfwidth: float

    def __post_init__(self):
        if not (self.halfwidth > 0):
            raise ParameterError("halfwidth must be positive")
        object.__setattr__(self, "functional", tuple(float(v) for v in self.functional))

    @property
    def f(self) -> np.ndarray:
        return np.asarray(self.functional, dtype=float)


def make_cut(space: PNormSpace, direction, halfwidth: float) -> SlabCut:
    """Cut perpendicular (in the duality sense) to `direction`."""
    return SlabCut(tuple(dual_functional(space, direction)), halfwidth)


@dataclass(frozen=True)
class Component:
    """Open truncated ball: open ball of `diameter` intersected with slabs."""

    space: PNormSpace
    center: tuple
    diameter: float
    cuts: tuple = ()

    def __post_init__(self):
        if not (self.diameter > 0):
            raise ParameterError("diameter must be positive")
        c = tuple(float(v) for v in self.center)
        if len(c) != self.space.d:
            raise InputError("center dimension mismatch")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "cuts", tuple(self.cuts))

    @property
    def radius(self) -> float:
        return self.diameter / 2.0

    @property
    def c(self) -> np.ndarray:
        return np.asarray(self.center, dtype=float)

    def membership(self, x) -> bool:
        y = np.asarray(x, dtype=float) - self.c
        if y.shape != (self.space.d,):
            raise InputError("point dimension mismatch")
        if _pnorm(y, self.space.p) >= self.radius:
            return False
        for cut in self.cuts:
            if abs(float(cut.f @ y)) >= cut.halfwidth:
                return False
        return True

    def membership_many(self, X: np.ndarray) -> np.ndarray:
        Y = np.asarray(X, dtype=float) - self.c
        m = _pnorm_rows(Y, self.space.p) < self.radius
        for cut in self.cuts:
            m &= np.abs(Y @ cut.f) < cut.halfwidth
        return m

    def margin(self, x) -> float:
        """Positive inside, negative outside; concave along any line."""
        y = np.asarray(x, dtype=float) - self.c
        m = self.radius - _pnorm(y, self.space.p)
        for cut in self.cuts:
            m = min(m, cut.halfwidth - abs(float(cut.f @ y)))
        return m


def ball(space: PNormSpace, center, diameter: float) -> Component:
    return Component(space, tuple(center), diameter)


@dataclass(frozen=True)
class Arrangement:
    """Finite list of components of one space; candidate avoiding set."""

    space: PNormSpace
    components: tuple
    label: str = ""

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ParameterError("an arrangement needs at least one component")
        for comp in comps:
            if comp.space != self.space:
                raise InputError("component space differs from arrangement space")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class Line:
    """Arc-length parameterized line x(t) = point + t * direction."""

    space: PNormSpace
    point: tuple
    direction: tuple

    def __post_init__(self):
        pt = tuple(float(v) for v in self.point)
        dr = np.asarray(self.direction, dtype=float)
        n = _pnorm(dr, self.space.p)
        if n == 0:
            raise InputError("line direction must be nonzero")
        if abs(n - 1.0) > 1e-9:
            dr = dr / n
        object.__setattr__(self, "point", pt)
        object.__setattr__(self, "direction", tuple(float(v) for v in dr))

    @classmethod
    def through(cls, space: PNormSpace, a, b) -> "Line":
        a = np.asarray(a, dtype=float)
        d = np.asarray(b, dtype=float) - a
        return cls(space, tuple(a), tuple(d))

    def at(self, t: float) -> np.ndarray:
        return np.asarray(self.point) + t * np.asarray(self.direction)


def line_intersection(component: Component, line: Line):
    """Open parameter interval of the line inside the component, or None.

    Bisection on the concave margin after bracketing; accuracy BISECTION_TOL.
    """
    c = component.c
    p0 = np.asarray(line.point)
    dr = np.asarray(line.direction)
    r = component.radius

    # cheap reject: Euclidean distance from center to line bounds the
    # p-norm distance within a sqrt(d) factor
    d2 = float(dr @ dr)
    t_e = float((c - p0) @ dr) / d2
    perp = c - p0 - t_e * dr
    if float(np.sqrt(perp @ perp)) > r * math.sqrt(component.space.d) + 1e-12:
        return None

    def mg(t):
        return component.margin(p0 + t * dr)

    # locate an interior point by ternary search on the concave margin
    v_e = _pnorm(p0 + t_e * dr - c, component.space.p)
    lo, hi = t_e - 2 * v_e - 2 * r - 1.0, t_e + 2 * v_e + 2 * r + 1.0
    t_in = None
    if mg(t_e) > 0:
        t_in = t_e
    else:
        a, b = lo, hi
        for _ in range(200):
            m1 = a + (b - a) / 3.0
            m2 = b - (b - a) / 3.0
            f1, f2 = mg(m1), mg(m2)
            if f1 > 0:
                t_in = m1
                break
            if f2 > 0:
                t_in = m2
                break
            if f1 < f2:
                a = m1
            else:
                b = m2
            if b - a < BISECTION_TOL:
                break
        if t_in is None:
            return None

    D = component.diameter

    def boundary(inside_t, outside_t):
        a, b = inside_t, outside_t
        for _ in range(80):
            m = 0.5 * (a + b)
            if mg(m) > 0:
                a = m
            else:
                b = m
            if abs(b - a) < BISECTION_TOL:
                break
        return 0.5 * (a + b)

    t_lo = boundary(t_in, t_in - D - 1e-6)
    t_hi = boundary(t_in, t_in + D + 1e-6)
    return (t_lo, t_hi)


def enclosing_box(component: Component, frame):
    """Sound outer intervals { f_i . (x - origin) : x in component }.

    f_i is the norming functional of frame direction i; the ball extent
    center +- radius is tightened by cuts parallel to f_i.
    """
    space = component.space
    dirs = [np.asarray(u, dtype=float) for u in frame]
    if len(dirs) != space.d:
        raise InputError("frame must contain d directions")
    M = np.stack(dirs)
    if np.linalg.matrix_rank(M, tol=1e-9) < space.d:
        raise InputError("degenerate frame")
    intervals = []
    for u in dirs:
        f = dual_functional(space, u)
        mid = float(f @ component.c)
        half = component.radius
        for cut in component.cuts:
            cf = cut.f
            if (np.max(np.abs(cf - f)) <= PARALLEL_TOL
                    or np.max(np.abs(cf + f)) <= PARALLEL_TOL):
                half = min(half, cut.halfwidth)
        intervals.append((mid - half, mid + half))
    return intervals


def standard_frame(space: PNormSpace):
    return [tuple(np.eye(space.d)[i]) for i in range(space.d)]


def standard_box(component: Component):
    return enclosing_box(component, standard_frame(component.space))


def sample_members(component: Component, count: int, rng) -> np.ndarray:
    """Uniform points of the component via rejection in its standard box."""
    box = standard_box(component)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    out = []
    got = 0
    # truncated ball fills a decent fraction of its box for moderate d
    while got < count:
        X = rng.uniform(lo, hi, size=(max(4 * count, 1024), component.space.d))
        X = X[component.membership_many(X)]
        out.append(X)
        got += len(X)
        if len(X) == 0 and got == 0 and sum(len(o) for o in out) == 0:
            # pathological aspect ratio; fall back to center jitter
            X = component.c + 0.0 * lo
            out.append(X[None, :])
            got += 1
    return np.concatenate(out)[:count]
