"""Volumes of balls, slices and arrangements.

Closed forms via the Gamma function, slice volumes via quadrature,
exact planar areas, and a chunked deterministic Monte Carlo oracle.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import planar
from .errors import InputError, ParameterError, UnsupportedError
from .geometry import Arrangement, Component, PNormSpace, ball, make_cut, standard_box

MC_CHUNK = 1 << 17


@dataclass(frozen=True)
class VolumeEstimate:
    value: float
    stderr: float = 0.0
    samples: int = 0
    method: str = "closed_form"  # closed_form | quadrature | exact2d | monte_carlo

    def __post_init__(self):
        if self.method == "monte_carlo":
            if self.samples <= 0:
                raise ParameterError("monte_carlo estimates need samples > 0")
        elif self.stderr != 0.0:
            raise ParameterError("exact methods have stderr 0")


def ball_volume(space: PNormSpace) -> VolumeEstimate:
    """Volume of the open ball of diameter 1: Gamma(1/p+1)^d / Gamma(d/p+1)."""
    d, p = space.d, space.p
    if p == math.inf:
        return VolumeEstimate(1.0)
    if p == 1:
        return VolumeEstimate(1.0 / math.factorial(d))
    v = math.gamma(1.0 / p + 1.0) ** d / math.gamma(d / p + 1.0)
    return VolumeEstimate(v)


def cos_power_integral(d: int, upper: float) -> float:
    """Integral of cos^d over [0, upper], upper in [0, pi/2]."""
    if d < 0 or int(d) != d:
        raise ParameterError("power must be a nonnegative integer")
    if not (0.0 <= upper <= math.pi / 2 + 1e-12):
        raise InputError("upper limit must lie in [0, pi/2]")
    val, _ = integrate.quad(lambda th: math.cos(th) ** d, 0.0, upper,
                            epsabs=1e-13, epsrel=1e-13)
    return val


def cos_power_integral_recursive(d: int, upper: float) -> float:
    """Reduction-formula evaluation, used as an independent cross-check."""
    if d < 0 or int(d) != d:
        raise ParameterError("power must be a nonnegative integer")
    if not (0.0 <= upper <= math.pi / 2 + 1e-12):
        raise InputError("upper limit must lie in [0, pi/2]")
    if d == 0:
        return upper
    if d == 1:
        return math.sin(upper)
    head = math.cos(upper) ** (d - 1) * math.sin(upper) / d
    return head + (d - 1) / d * cos_power_integral_recursive(d - 2, upper)


def euclidean_slice_volume(d: int) -> VolumeEstimate:
    """Volume of the Euclidean slice: diameter-1 ball cut to width 1/2."""
    if d < 2:
        raise ParameterError("slice volume needs d >= 2")
    prefix = ball_volume(PNormSpace(d - 1, 2.0)).value
    return VolumeEstimate(prefix * cos_power_integral(d, math.pi / 6),
                          method="quadrature")


def diameter_width_bound(d: int, D: float, omega: float) -> float:
    """Euclidean upper bound on the volume of a convex body with
    diameter D and minimal width omega; equality for the spherical slice."""
    if not (0.0 < omega <= D):
        raise InputError("need 0 < omega <= D")
    prefix = ball_volume(PNormSpace(d - 1, 2.0)).value if d >= 2 else 1.0
    return prefix * D ** d * cos_power_integral(d, math.asin(omega / D))


def maxnorm_slice_volume(d: int) -> VolumeEstimate:
    """Slice in the maximum norm: unit cube cut to width 1/2 -> 1/2."""
    if d < 2:
        raise ParameterError("slice volume needs d >= 2")
    return VolumeEstimate(0.5)


def manhattan_slice_volume(d: int, convention: str = "axis") -> VolumeEstimate:
    """Slice in the Manhattan metric; the width direction is ambiguous.

    "axis": slab normal to a coordinate axis -> (1 - 2^-d) / d!.
    "diagonal": slab normal to the all-ones diagonal; exact 1/4 at d = 2,
    Monte Carlo otherwise.
    """
    if d < 2:
        raise ParameterError("slice volume needs d >= 2")
    if convention == "axis":
        return VolumeEstimate((1.0 - 2.0 ** (-d)) / math.factorial(d))
    if convention != "diagonal":
        raise ParameterError("convention must be 'axis' or 'diagonal'")
    if d == 2:
        return VolumeEstimate(0.25)
    comp = slice_component(PNormSpace(d, 1.0), direction=tuple([1.0] * d))
    return monte_carlo_volume(comp, samples=2_000_000, seed=20240)


def slice_component(space: PNormSpace, direction=None) -> Component:
    """The slice as a Component: diameter-1 ball, one centered cut of width 1/2."""
    if direction is None:
        direction = tuple(1.0 if i == 0 else 0.0 for i in range(space.d))
    cut = make_cut(space, direction, 0.25)
    return Component(space, tuple([0.0] * space.d), 1.0, (cut,))


def slice_volume(space: PNormSpace) -> VolumeEstimate:
    """Slice volume in the ambient norm (axis-cut convention for p = 1)."""
    if space.d < 2:
        raise ParameterError("slice volume needs d >= 2")
    if space.p == 2:
        return euclidean_slice_volume(space.d)
    if space.p == math.inf:
        return maxnorm_slice_volume(space.d)
    if space.p == 1:
        return manhattan_slice_volume(space.d)
    return monte_carlo_volume(slice_component(space), samples=4_000_000, seed=77)


def _worker_count() -> int:
    raw = os.environ.get("INTEGRALGAP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _component_mc(component: Component, samples: int, seed: int):
    box = standard_box(component)
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    box_vol = float(np.prod(hi - lo))
    d = component.space.d
    n_chunks = (samples + MC_CHUNK - 1) // MC_CHUNK

    def chunk_hits(i):
        count = min(MC_CHUNK, samples - i * MC_CHUNK)
        rng = np.random.default_rng([seed & 0x7FFFFFFFFFFFFFFF, i])
        X = lo + rng.random((count, d)) * (hi - lo)
        return int(component.membership_many(X).sum())

    workers = _worker_count()
    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(chunk_hits, range(n_chunks)))
    else:
        hits = sum(chunk_hits(i) for i in range(n_chunks))
    ratio = hits / samples
    err = box_vol * math.sqrt(max(ratio * (1.0 - ratio), 1e-300) / samples)
    return box_vol * ratio, err


def monte_carlo_volume(obj, samples: int, seed: int) -> VolumeEstimate:
    """Hit-ratio volume of a Component or Arrangement (components summed).

    Deterministic for a fixed seed; chunk seeds derive from (seed, index)
    so the result does not depend on worker count.
    """
    if samples < 1:
        raise ParameterError("samples must be >= 1")
    if isinstance(obj, Component):
        v, e = _component_mc(obj, samples, seed)
        return VolumeEstimate(v, e, samples, "monte_carlo")
    if isinstance(obj, Arrangement):
        total, var = 0.0, 0.0
        for i, comp in enumerate(obj.components):
            v, e = _component_mc(comp, samples, seed + 1000003 * i)
            total += v
            var += e * e
        return VolumeEstimate(total, math.sqrt(var), samples, "monte_carlo")
    raise InputError("expected a Component or an Arrangement")


def exact_area_2d(obj) -> VolumeEstimate:
    """Exact area of a clipped disc (or a sum over an arrangement), d=2, p=2."""
    if isinstance(obj, Arrangement):
        total = sum(exact_area_2d(c).value for c in obj.components)
        return VolumeEstimate(total, method="exact2d")
    if not isinstance(obj, Component):
        raise InputError("expected a Component or an Arrangement")
    if obj.space.d != 2 or obj.space.p != 2:
        raise UnsupportedError("exact areas are implemented for d = 2, p = 2 only")
    return VolumeEstimate(planar.clipped_disc_area(obj), method="exact2d")


def arrangement_volume(arr: Arrangement, samples: int = 1_000_000,
                       seed: int = 0) -> VolumeEstimate:
    """Exact area when available, Monte Carlo otherwise."""
    if arr.space.d == 2 and arr.space.p == 2:
        return exact_area_2d(arr)
    return monte_carlo_volume(arr, samples, seed)
