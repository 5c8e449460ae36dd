"""Bracketed bisection, the only root finder this package needs."""

from __future__ import annotations

from typing import Callable


class BracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of f on [lo, hi] by bisection, to within xtol in the variable.

    Requires f(lo) and f(hi) to have opposite signs (an endpoint that is
    exactly zero is returned directly).
    """
    f_lo = f(lo)
    if f_lo == 0:
        return lo
    f_hi = f(hi)
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.6e}, f(hi)={f_hi:.6e}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= xtol:
            break
    return 0.5 * (lo + hi)
