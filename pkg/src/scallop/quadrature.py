"""Adaptive Simpson quadrature with absolute tolerance control."""

from __future__ import annotations

from typing import Callable

from .errors import QuadratureError


def _simpson(f: Callable[[float], float], a: float, fa: float, b: float, fb: float) -> tuple[float, float, float]:
    """One Simpson panel over [a, b]; returns (midpoint, f(midpoint), panel value)."""
    mid = 0.5 * (a + b)
    fm = f(mid)
    return mid, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(
    f: Callable[[float], float],
    a: float,
    fa: float,
    b: float,
    fb: float,
    mid: float,
    fm: float,
    whole: float,
    tol: float,
    depth: int,
) -> float:
    lmid, flm, left = _simpson(f, a, fa, mid, fm)
    rmid, frm, right = _simpson(f, mid, fm, b, fb)
    # Richardson: (S_left + S_right - S_whole)/15 estimates the refined error.
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson failed to reach tol={tol!r} on [{a!r}, {b!r}]"
        )
    return _adaptive(f, a, fa, mid, fm, lmid, flm, left, tol / 2.0, depth - 1) + _adaptive(
        f, mid, fm, b, fb, rmid, frm, right, tol / 2.0, depth - 1
    )


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 40,
) -> float:
    """Integrate f over [a, b] to absolute tolerance tol.

    Args:
        f: scalar integrand, smooth on [a, b].
        a, b: integration limits; b < a yields the signed (negative) integral.
        tol: absolute error target for the whole interval.
        max_depth: recursion limit before giving up.

    Returns:
        The integral value with Richardson extrapolation applied per panel.

    Raises:
        QuadratureError: the interval could not be refined to tolerance.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, tol=tol, max_depth=max_depth)
    fa, fb = f(a), f(b)
    mid, fm, whole = _simpson(f, a, fa, b, fb)
    return _adaptive(f, a, fa, b, fb, mid, fm, whole, tol, max_depth)
