"""Chord factors of regular prime-gons and the fractional-part scaling search.

The chord factors 2 sin(j pi / prime) are evaluated in extended precision
(mpmath, 120-bit mantissa): fractional parts of k * alpha lose about
log2(k) bits, and k may reach 2^20.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ParameterError, SearchExhaustedError

_PREC = 120


def _is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def fractional_part(beta: float) -> float:
    """beta - floor(beta), in [0, 1) also for negative beta."""
    if not math.isfinite(beta):
        raise ParameterError("fractional part needs a finite argument")
    return beta - math.floor(beta)


def _frac_mp(x):
    return x - mpmath.floor(x)


@dataclass(frozen=True)
class SineBasis:
    """alphas[j-1] = 2 sin(j pi / prime), j = 1 .. (prime-1)/2, as mpf."""

    prime: int
    alphas: tuple

    @property
    def floats(self):
        return tuple(float(a) for a in self.alphas)


def sine_basis(prime: int) -> SineBasis:
    if not _is_odd_prime(prime):
        raise ParameterError(f"{prime} is not an odd prime")
    with mpmath.workprec(_PREC):
        alphas = tuple(2 * mpmath.sin(j * mpmath.pi / prime)
                       for j in range(1, (prime - 1) // 2 + 1))
    return SineBasis(prime, alphas)


@dataclass(frozen=True)
class ScalingSolution:
    k: int
    residuals: tuple
    epsilon: float


@dataclass(frozen=True)
class ScalingCheck:
    ok: bool
    residuals: tuple
    failing_j: int | None  # 1-based index of the first failing condition


def check_scaling(basis: SineBasis, k: int, epsilon: float,
                  js=None) -> ScalingCheck:
    """Evaluate {k * alpha_j - 1/2 + epsilon} <= 2 epsilon for each j.

    `js` restricts the conditions to a subset of 1-based chord indices
    (used by the p-gon construction when fewer vertices are occupied).
    """
    if k < 1:
        raise ParameterError("k must be >= 1")
    if not (0.0 < epsilon < 0.25):
        raise ParameterError("epsilon must lie in (0, 1/4)")
    idx = range(1, len(basis.alphas) + 1) if js is None else list(js)
    residuals = []
    failing = None
    with mpmath.workprec(_PREC):
        for j in idx:
            res = float(_frac_mp(k * basis.alphas[j - 1]
                                 - mpmath.mpf(1) / 2 + mpmath.mpf(epsilon)))
            residuals.append(res)
            if failing is None and res > 2 * epsilon:
                failing = j
    return ScalingCheck(failing is None, tuple(residuals), failing)


def find_scaling(basis: SineBasis, epsilon: float, k_max: int,
                 js=None) -> ScalingSolution:
    """Smallest k <= k_max with every fractional part <= 2 epsilon.

    Plain brute force; floats prescreen, mpmath confirms borderline cases.
    Raises SearchExhaustedError (carrying the best residual vector seen)
    when no k qualifies.
    """
    if k_max < 1:
        raise ParameterError("k_max must be >= 1")
    if not (0.0 < epsilon < 0.25):
        raise ParameterError("epsilon must lie in (0, 1/4)")
    alphas = basis.floats
    idx = list(range(1, len(alphas) + 1)) if js is None else list(js)
    shift = -0.5 + epsilon
    target = 2 * epsilon
    best = None  # (max residual, k, residuals)
    for k in range(1, k_max + 1):
        worst = 0.0
        ok = True
        for j in idx:
            res = (k * alphas[j - 1] + shift) % 1.0
            worst = max(worst, res)
            if res > target + 1e-9:
                ok = False
                break
        if ok:
            chk = check_scaling(basis, k, epsilon, js=idx)
            if chk.ok:
                return ScalingSolution(k, chk.residuals, epsilon)
            worst = max(chk.residuals)
        if best is None or worst < best[0]:
            best = (worst, k, None)
    res = check_scaling(basis, best[1], epsilon, js=idx).residuals if best else ()
    raise SearchExhaustedError(
        f"no k <= {k_max} satisfies the scaling system for epsilon={epsilon}",
        best={"k": best[1] if best else None, "residuals": res})


def independence_probe(basis, coeff_bound: int):
    """Scan integer combinations sum c_j alpha_j + c0 for near-vanishing.

    Returns None (no relation found: numerical evidence of rational
    independence, not a proof) or the witness tuple (c_1, ..., c_m, c0).
    """
    if coeff_bound < 1:
        raise ParameterError("coeff_bound must be >= 1")
    alphas = list(getattr(basis, "alphas", basis))
    m = len(alphas)
    with mpmath.workprec(_PREC):
        vals = [mpmath.mpf(a) for a in alphas]

        def scan(prefix, total):
            if len(prefix) == m:
                if all(c == 0 for c in prefix):
                    return None
                c0 = int(mpmath.nint(-total))
                if abs(total + c0) < mpmath.mpf("1e-12"):
                    return tuple(prefix) + (c0,)
                return None
            for c in range(-coeff_bound, coeff_bound + 1):
                hit = scan(prefix + [c], total + c * vals[len(prefix)])
                if hit is not None:
                    return hit
            return None

        return scan([], mpmath.mpf(0))
