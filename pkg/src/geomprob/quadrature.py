"""Error-controlled 1D quadrature.

Adaptive Simpson with Richardson extrapolation is the numeric oracle used
everywhere an integral has to be checked against a closed form, plus a
composite Simpson helper for integrands that are cheapest to evaluate on a
fixed grid (the angular integrals over line directions).
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

DEFAULT_TOL = 1e-12
DEFAULT_MAX_DEPTH = 40


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> tuple[float, float]:
    """Integrate f on [a, b] to absolute tolerance tol.

    Returns (value, error_estimate).  The estimate is the accumulated
    Richardson term, usually pessimistic by an order of magnitude.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, err = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, err

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def recurse(
        a: float,
        b: float,
        fa: float,
        fm: float,
        fb: float,
        whole: float,
        depth: int,
        tol: float,
    ) -> tuple[float, float]:
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = simpson(fa, flm, fm, 0.5 * (m - a))
        right = simpson(fm, frm, fb, 0.5 * (b - m))
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0, abs(delta) / 15.0
        lv, le = recurse(a, m, fa, flm, fm, left, depth + 1, 0.5 * tol)
        rv, re = recurse(m, b, fm, frm, fb, right, depth + 1, 0.5 * tol)
        return lv + rv, le + re

    fa = f(a)
    fb = f(b)
    fm = f(0.5 * (a + b))
    whole = simpson(fa, fm, fb, 0.5 * (b - a))
    return recurse(a, b, fa, fm, fb, whole, 0, tol)


def composite_simpson(values: np.ndarray, step: float) -> float:
    """Composite Simpson for samples on a uniform grid.

    values must hold an odd number of samples (an even number of intervals).
    """
    y = np.asarray(values, dtype=float)
    if y.ndim != 1 or y.size < 3 or y.size % 2 == 0:
        raise ValueError("composite_simpson needs an odd number of samples >= 3")
    return step / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum())
