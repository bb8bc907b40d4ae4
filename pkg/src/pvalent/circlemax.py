"""Maximum modulus of a polynomial on the unit circle.

Coarse equally spaced sampling locates the local maxima of the boundary
modulus; simultaneous ternary searches then shrink each bracket to an
angular resolution of 1e-10.  For polynomial data the boundary maximum
equals the supremum over the open disk (maximum-modulus principle), so
this routine also computes disk suprema.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError

DEFAULT_GRID = 4096
MIN_GRID = 8
ANGLE_RESOLUTION = 1e-10


@lru_cache(maxsize=8)
def _unit_circle(grid: int) -> np.ndarray:
    points = np.exp(2j * math.pi * np.arange(grid) / grid)
    points.flags.writeable = False
    return points


def _modulus_at(coeffs: np.ndarray, angles: np.ndarray) -> np.ndarray:
    return np.abs(npoly.polyval(np.exp(1j * angles), coeffs))


def _bracket_centers(values: np.ndarray, cap: int) -> np.ndarray:
    """Indices of circular local maxima, one representative per plateau."""
    ge_prev = values >= np.roll(values, 1)
    ge_next = values >= np.roll(values, -1)
    cand = np.flatnonzero(ge_prev & ge_next)
    if cand.size == 0 or cand.size == values.size:
        # flat modulus (constants, monomials): any sample is a maximiser
        return np.array([int(np.argmax(values))])
    breaks = np.flatnonzero(np.diff(cand) > 1)
    runs = np.split(cand, breaks + 1)
    if len(runs) > 1 and cand[0] == 0 and cand[-1] == values.size - 1:
        runs[0] = np.concatenate([runs[-1], runs[0]])
        runs.pop()
    reps = np.array([run[np.argmax(values[run])] for run in runs])
    if reps.size > cap:
        order = np.argsort(values[reps])[::-1]
        reps = np.sort(reps[order[:cap]])
    return reps


def max_modulus_on_circle(
    coeffs, grid: int = DEFAULT_GRID, resolution: float = ANGLE_RESOLUTION
) -> tuple[float, float]:
    """Return (max_t |p(e^{it})|, argmax t) for ascending coefficients `coeffs`.

    `grid` equally spaced samples bracket every local maximum; the brackets
    are refined together by ternary search until they are narrower than
    `resolution`.  The reported value is never below the best raw sample.
    Grids below 8 points are rejected as insufficient sampling.
    """
    if grid < MIN_GRID:
        raise DomainError(f"grid must be at least {MIN_GRID}, got {grid}")
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.size == 0 or not np.any(c):
        return 0.0, 0.0
    step = 2.0 * math.pi / grid
    vals = np.abs(npoly.polyval(_unit_circle(grid), c))
    raw_best = int(np.argmax(vals))

    reps = _bracket_centers(vals, cap=max(16, 4 * c.size))
    lo = (reps - 1) * step
    hi = (reps + 1) * step
    while float(np.max(hi - lo)) > resolution:
        third = (hi - lo) / 3.0
        m1 = lo + third
        m2 = hi - third
        f1 = _modulus_at(c, m1)
        f2 = _modulus_at(c, m2)
        smaller = f1 < f2
        lo = np.where(smaller, m1, lo)
        hi = np.where(smaller, hi, m2)
    mid = 0.5 * (lo + hi)
    fmid = _modulus_at(c, mid)
    best = int(np.argmax(fmid))

    if vals[raw_best] >= fmid[best]:
        return float(vals[raw_best]), float(step * raw_best)
    return float(fmid[best]), float(math.fmod(mid[best], 2.0 * math.pi))


def max_modulus(coeffs, grid: int = DEFAULT_GRID) -> float:
    """Convenience wrapper returning only the boundary maximum."""
    value, _ = max_modulus_on_circle(coeffs, grid)
    return value
