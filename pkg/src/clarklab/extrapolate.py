"""Radial sampling schedules and Richardson extrapolation.

Boundary quantities (radial limits, Julia quotients, angular derivatives)
are sampled along the geometric schedule r_k = 1 - 2^{-k}.  For regular
boundary points the error of such samples expands in powers of (1 - r),
so a Neville tableau with ratio 2 removes the leading terms.
"""

from __future__ import annotations

import numpy as np


def radial_schedule(k_min: int = 4, k_max: int = 20) -> np.ndarray:
    """Radii r_k = 1 - 2^{-k} for k = k_min .. k_max inclusive."""
    if k_max < k_min:
        raise ValueError("empty radial schedule")
    k = np.arange(k_min, k_max + 1)
    return 1.0 - 0.5 ** k


def richardson(values, ratio: float = 2.0, levels: int = 2):
    """Extrapolate a sequence v_k = L + c1*ratio^-k + c2*ratio^-2k + ...

    Args:
        values: samples along the schedule, shape (K, ...); extrapolation
            runs along the first axis so grids of sequences are handled in
            one call.
        ratio: geometric ratio of the sampling schedule.
        levels: number of error terms to eliminate (tableau columns).

    Returns:
        (limit, err_est): the deepest tableau entry and the magnitude of
        its last correction, both with the trailing shape of ``values``.
    """
    tableau = np.asarray(values)
    if tableau.shape[0] < 2:
        raise ValueError("need at least two samples to extrapolate")
    levels = min(levels, tableau.shape[0] - 1)
    prev_tail = tableau[-1]
    for j in range(1, levels + 1):
        factor = ratio ** j
        tableau = (factor * tableau[1:] - tableau[:-1]) / (factor - 1.0)
        err_est = np.abs(tableau[-1] - prev_tail)
        prev_tail = tableau[-1]
    limit = tableau[-1]
    return limit, err_est


def is_cauchy(values, tol: float) -> bool:
    """True when the last consecutive difference falls below ``tol``."""
    v = np.asarray(values)
    if v.shape[0] < 2:
        return False
    return bool(np.all(np.abs(v[-1] - v[-2]) < tol))
