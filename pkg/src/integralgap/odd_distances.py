"""Finite point sets with pairwise odd integral distances, and the bridge
from diameter-1/2 ball packings via dilation by 2."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import sympy

from .errors import InputError, ParameterError
from .geometry import Arrangement, _pnorm


@dataclass(frozen=True)
class PointSet:
    dimension: int
    points: tuple  # tuple of coordinate tuples

    def __post_init__(self):
        pts = tuple(tuple(float(v) for v in p) for p in self.points)
        for p in pts:
            if len(p) != self.dimension:
                raise InputError("point dimension mismatch")
        object.__setattr__(self, "points", pts)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def distance_matrix(self, p: float = 2.0) -> np.ndarray:
        X = self.array
        n = len(self.points)
        D = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = _pnorm(X[i] - X[j], p)
        return D


def odd_distance_verify(ps: PointSet, tolerance: float, p: float = 2.0):
    """None if every pairwise distance is within tolerance of an odd
    integer, else the first failing (i, j, distance).

    Fewer than two points pass trivially.  The norm exponent p is a
    forward-looking extension; the classical setting is p = 2.
    """
    if not (0.0 < tolerance < 0.5):
        raise ParameterError("tolerance must lie in (0, 0.5)")
    D = ps.distance_matrix(p)
    n = len(ps.points)
    for i in range(n):
        for j in range(i + 1, n):
            dist = D[i, j]
            nearest_odd = 2 * round((dist - 1) / 2) + 1
            if nearest_odd < 1 or abs(dist - nearest_odd) > tolerance:
                return (i, j, dist)
    return None


def half_integral_centers(arrangement: Arrangement):
    """Check all center distances lie in Z + 1/2; return the dilated-by-2
    PointSet (whose distances are then odd integers) on success.

    Returns (None, failing pair) when a distance is off the grid.
    """
    for comp in arrangement.components:
        if comp.cuts or abs(comp.diameter - 0.5) > 1e-12:
            raise ParameterError(
                "expected plain balls of diameter 1/2 (no cuts)")
    space = arrangement.space
    centers = [c.c for c in arrangement.components]
    n = len(centers)
    for i in range(n):
        for j in range(i + 1, n):
            dist = _pnorm(centers[i] - centers[j], space.p)
            if abs(dist - 0.5 - round(dist - 0.5)) > 1e-9 or dist < 0.5 - 1e-9:
                return None, (i, j, dist)
    dilated = PointSet(space.d, tuple(tuple(2.0 * c) for c in centers))
    return dilated, None


def _cayley_menger_det(sq: np.ndarray):
    """Cayley-Menger determinant; exact integer arithmetic when possible."""
    n = sq.shape[0]
    M = np.ones((n + 1, n + 1))
    M[0, 0] = 0.0
    M[1:, 1:] = sq
    if np.allclose(sq, np.round(sq), atol=0):
        return int(sympy.Matrix(M.astype(object)).det())
    return float(np.linalg.det(M))


def cayley_menger_embeddable(distances: np.ndarray, d: int,
                             rel_tol: float = 1e-8):
    """Does this distance matrix embed in Euclidean d-space?

    Decision via the Gram form (PSD with rank <= d); the reported
    residual is the normalized order-(d+2) Cayley-Menger determinant
    when n >= d+2, else the relative negative-eigenvalue mass.
    """
    D = np.asarray(distances, dtype=float)
    n = D.shape[0]
    if D.ndim != 2 or D.shape != (n, n):
        raise InputError("distance matrix must be square")
    if not np.allclose(D, D.T, atol=1e-12) or np.any(np.diag(D) != 0):
        raise InputError("distance matrix must be symmetric with zero diagonal")
    if n < 2:
        return True, 0.0
    if np.any(D[~np.eye(n, dtype=bool)] <= 0):
        raise InputError("off-diagonal distances must be positive")
    sq = D * D
    # Gram matrix anchored at point 0
    G = 0.5 * (sq[0, 1:][:, None] + sq[0, 1:][None, :] - sq[1:, 1:])
    eig = np.linalg.eigvalsh(G)
    scale = max(float(np.abs(eig).max()), 1e-300)
    neg = max(0.0, -float(eig.min())) / scale
    rank = int((eig > rel_tol * scale).sum())
    ok = neg <= rel_tol and rank <= d

    if n >= d + 2:
        sub = sq[: d + 2, : d + 2]
        det = _cayley_menger_det(sub)
        denom = float(np.mean(sub[~np.eye(d + 2, dtype=bool)])) ** (d + 1)
        residual = abs(float(det)) / max(denom, 1e-300)
        if n == d + 2:
            ok = ok and residual <= rel_tol
    else:
        residual = neg
    return ok, residual


def reconstruct_coordinates(distances: np.ndarray, d: int) -> np.ndarray:
    """Classical multidimensional scaling into d coordinates."""
    D = np.asarray(distances, dtype=float)
    n = D.shape[0]
    sq = D * D
    J = np.eye(n) - np.ones((n, n)) / n
    G = -0.5 * J @ sq @ J
    eig, vec = np.linalg.eigh(G)
    order = np.argsort(eig)[::-1][:d]
    lam = np.clip(eig[order], 0.0, None)
    return vec[:, order] * np.sqrt(lam)[None, :]


def odd_set_search(d: int, n: int, max_odd: int, budget: int = 1_000_000):
    """Enumerate odd distance matrices (entries <= max_odd), keep the
    Euclidean-embeddable ones, reconstruct and re-verify coordinates.

    Best-effort within `budget` candidate evaluations; results are
    canonicalized by their sorted distance multiset.
    """
    if n > d + 2:
        raise ParameterError(
            f"at most d+2 = {d + 2} points can have pairwise odd distances "
            f"in Euclidean {d}-space")
    if max_odd < 1 or max_odd % 2 == 0:
        raise ParameterError("max_odd must be a positive odd integer")
    if max_odd > 99:
        raise ParameterError("max_odd capped at 99")
    m = n * (n - 1) // 2

    def candidates():
        odds = list(range(1, max_odd + 1, 2))
        for top in odds:
            allowed = [v for v in odds if v <= top]
            for t in itertools.product(allowed, repeat=m):
                if max(t) == top:
                    yield t

    found = []
    seen = set()
    for count, entries in enumerate(candidates()):
        if count >= budget:
            break
        D = np.zeros((n, n))
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                D[i, j] = D[j, i] = entries[idx]
                idx += 1
        ok, _ = cayley_menger_embeddable(D, d)
        if not ok:
            continue
        X = reconstruct_coordinates(D, d)
        ps = PointSet(d, tuple(tuple(row) for row in X))
        if odd_distance_verify(ps, 1e-6) is not None:
            continue
        key = tuple(sorted(entries))
        if key in seen:
            continue
        seen.add(key)
        found.append(ps)
    found.sort(key=lambda ps: tuple(sorted(
        ps.distance_matrix()[np.triu_indices(len(ps.points), 1)])))
    return found
