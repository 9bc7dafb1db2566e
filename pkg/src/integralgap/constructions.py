"""The four arrangement constructions: nested chain, two truncated balls,
parabola chain, and the scaled prime-gon."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import certifier
from .diophantine import _PREC, _frac_mp, _is_odd_prime
from .errors import ParameterError, SearchExhaustedError, UnsupportedError
from .geometry import (Arrangement, Component, PNormSpace, _pnorm, ball,
                       make_cut)

K_CAP = 1 << 20


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    space: PNormSpace
    epsilon: float
    k: int | None = None  # spacing scale; None = auto-search

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("need n >= 1 components")
        if not (0.0 < self.epsilon < 0.25):
            raise ParameterError("epsilon must lie in (0, 1/4)")
        if self.k is not None and self.k < 1:
            raise ParameterError("k must be a positive integer")


def _e(space: PNormSpace, i: int) -> np.ndarray:
    v = np.zeros(space.d)
    v[i] = 1.0
    return v


def nested_chain(params: ConstructionParams) -> Arrangement:
    """One ball of diameter 1-(n-1)eps and n-1 balls of diameter eps,
    tangent along a line, all inside an open ball of diameter 1."""
    n, space, eps = params.n, params.space, params.epsilon
    if eps >= 1.0 / n:
        raise ParameterError(f"nested chain needs epsilon < 1/n = {1.0 / n}")
    diameters = [1.0 - (n - 1) * eps] + [eps] * (n - 1)
    comps = []
    x = -0.5
    for D in diameters:
        center = x + D / 2.0
        c = np.zeros(space.d)
        c[0] = center
        comps.append(ball(space, tuple(c), D))
        x += D
    return Arrangement(space, tuple(comps), label=f"chain(n={n}, eps={eps})")


def min_separation_k(space: PNormSpace, epsilon: float) -> int:
    """Smallest k with ((1-eps)^p (d-1) + (k+1-2 eps)^p)^(1/p) <= k+1."""
    p, d = space.p, space.d
    if not (1.0 < p < math.inf):
        raise UnsupportedError("separation search needs 1 < p < inf")
    if not (0.0 < epsilon < 0.25):
        raise ParameterError("epsilon must lie in (0, 1/4)")
    side = (1.0 - epsilon) ** p * (d - 1)
    for k in range(1, 1_000_000):
        if (side + (k + 1 - 2 * epsilon) ** p) ** (1.0 / p) <= k + 1:
            return k
    raise SearchExhaustedError("no separation k found (is p too close to 1?)")


def _truncated(space, center, eps, cut_dirs) -> Component:
    cuts = tuple(make_cut(space, u, (0.5 - eps) / 2.0) for u in cut_dirs)
    return Component(space, tuple(center), 1.0 - eps, cuts)


def two_component(params: ConstructionParams) -> Arrangement:
    """Two truncated balls of diameter 1-eps and width 1/2-eps on the x1
    axis, centers k + 1/2 - eps apart."""
    space, eps = params.space, params.epsilon
    if not (1.0 < space.p < math.inf):
        raise UnsupportedError("two-component construction needs 1 < p < inf")
    k = params.k if params.k is not None else min_separation_k(space, eps)
    sep = k + 0.5 - eps
    e1 = _e(space, 0)
    a = _truncated(space, np.zeros(space.d), eps, [e1])
    b = _truncated(space, sep * e1, eps, [e1])
    return Arrangement(space, (a, b),
                       label=f"two(eps={eps}, k={k})")


def parabola(params: ConstructionParams) -> Arrangement:
    """n truncated balls with centers (i k, i k^2, 0, ...), cut along the
    y axis; k grows until the necessary-condition certificate passes."""
    n, space, eps = params.n, params.space, params.epsilon
    if space.p <= 1.0:
        raise UnsupportedError("parabola construction needs p > 1")
    if n < 2:
        raise ParameterError("parabola construction needs n >= 2")
    e2 = _e(space, 1)
    k = params.k if params.k is not None else 2
    while k <= K_CAP:
        comps = []
        for i in range(1, n + 1):
            c = np.zeros(space.d)
            c[0] = i * k
            c[1] = float(i * k) ** 2
            comps.append(_truncated(space, c, eps, [e2]))
        arr = Arrangement(space, tuple(comps),
                          label=f"parabola(n={n}, eps={eps}, k={k})")
        cert = certifier.certify(arr, line_samples=400, seed=7)
        if cert.l_verdict == "pass":
            return arr
        if params.k is not None:
            raise ParameterError(
                f"parabola with fixed k={params.k} fails the line certificate")
        k *= 2
    raise SearchExhaustedError(f"parabola spacing search exhausted at k={K_CAP}")


def _pgon_vertices(prime: int, n: int):
    return [np.array([math.cos(2 * math.pi * i / prime),
                      math.sin(2 * math.pi * i / prime)]) for i in range(n)]


def _unit_chords_mp(prime: int, n: int, p: float):
    """Pairwise unit-circumradius p-norm chord lengths, extended precision."""
    with mpmath.workprec(_PREC):
        vs = [(mpmath.cos(2 * mpmath.pi * i / prime),
               mpmath.sin(2 * mpmath.pi * i / prime)) for i in range(n)]
        out = {}
        for i in range(n):
            for j in range(i + 1, n):
                dx = abs(vs[i][0] - vs[j][0])
                dy = abs(vs[i][1] - vs[j][1])
                if p == math.inf:
                    out[(i, j)] = max(dx, dy)
                else:
                    pp = mpmath.mpf(p)
                    out[(i, j)] = (dx ** pp + dy ** pp) ** (1 / pp)
        return out


def _build_pgon(space: PNormSpace, n: int, prime: int, eps: float, k: int,
                verts) -> Arrangement:
    comps = []
    for i in range(n):
        c = np.zeros(space.d)
        c[:2] = k * verts[i]
        dirs = []
        for j in range(n):
            if j != i:
                u = np.zeros(space.d)
                u[:2] = verts[j] - verts[i]
                dirs.append(u)
        comps.append(_truncated(space, c, eps, dirs))
    return Arrangement(space, tuple(comps),
                       label=f"pgon(n={n}, prime={prime}, eps={eps}, k={k})")


def pgon(params: ConstructionParams, prime: int,
         k_max: int = 2_000_000) -> Arrangement:
    """n truncated balls at neighboring vertices of a regular prime-gon of
    circumradius k, one cut per occupied vertex pair.

    k is searched so that every occupied chord length lands in an
    integer-free window: fractional parts of k * chord - 1/2 + eps stay
    <= 2 eps, and the resulting pair distance intervals avoid integers.
    """
    n, space, eps = params.n, params.space, params.epsilon
    if not _is_odd_prime(prime):
        raise ParameterError(f"{prime} is not an odd prime")
    if prime < n:
        raise ParameterError("need prime >= n")
    if space.p <= 1.0:
        raise UnsupportedError("p-gon construction needs p > 1")
    verts = _pgon_vertices(prime, n)
    chords = {}
    for i in range(n):
        for j in range(i + 1, n):
            chords[(i, j)] = _pnorm(verts[j] - verts[i], space.p)

    if params.k is not None:
        return _build_pgon(space, n, prime, eps, params.k, verts)

    chords_mp = _unit_chords_mp(prime, n, space.p)
    shift = -0.5 + eps
    target = 2 * eps
    best = None
    for k in range(2, k_max + 1):
        ok = True
        worst = 0.0
        for delta in chords.values():
            res = (k * delta + shift) % 1.0
            worst = max(worst, res)
            if res > target + 1e-9:
                ok = False
                break
        if not ok:
            if best is None or worst < best[0]:
                best = (worst, k)
            continue
        with mpmath.workprec(_PREC):
            confirmed = all(
                float(_frac_mp(k * chords_mp[key] + mpmath.mpf(shift))) <= target
                for key in chords_mp)
        if not confirmed:
            continue
        arr = _build_pgon(space, n, prime, eps, k, verts)
        intervals_ok = True
        for i in range(n):
            for j in range(i + 1, n):
                iv = certifier.pair_distance_interval(arr.components[i],
                                                      arr.components[j])
                if not certifier.integer_free(iv):
                    intervals_ok = False
                    break
            if not intervals_ok:
                break
        if intervals_ok:
            return arr
    raise SearchExhaustedError(
        f"no certifiable scaling k <= {k_max} for prime={prime}, eps={eps}",
        best={"k": best[1] if best else None,
              "worst_residual": best[0] if best else None})
