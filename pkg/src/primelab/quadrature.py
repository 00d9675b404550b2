"""Adaptive Simpson quadrature with a per-interval relative error test."""

from __future__ import annotations

import math
from typing import Callable

from .exceptions import ConvergenceError


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    max_depth: int = 60,
) -> float:
    """Integrate ``f`` over ``[a, b]`` by recursive interval bisection.

    An interval is accepted once the two-panel Simpson value differs from the
    one-panel value by at most ``15 * rel_tol * |two-panel value|``, and the
    accepted value gets the usual Richardson correction. For an integrand of
    constant sign the local relative tests add up to a global relative error
    of about ``rel_tol``.

    Raises
    ------
    ConvergenceError
        If some interval still fails the test after ``max_depth`` bisections.
    """
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    stack = [(a, b, fa, fm, fb, whole, 0)]
    accepted = []
    while stack:
        lo, hi, flo, fmid, fhi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = f(0.5 * (lo + mid))
        fr = f(0.5 * (mid + hi))
        left = (mid - lo) * (flo + 4.0 * fl + fmid) / 6.0
        right = (hi - mid) * (fmid + 4.0 * fr + fhi) / 6.0
        both = left + right
        err = both - est
        if abs(err) <= 15.0 * rel_tol * abs(both):
            accepted.append(both + err / 15.0)
            continue
        if depth + 1 >= max_depth:
            raise ConvergenceError(
                f"adaptive Simpson did not reach rel_tol={rel_tol:g} on "
                f"[{lo!r}, {hi!r}] within {max_depth} bisections"
            )
        stack.append((mid, hi, fmid, fr, fhi, right, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, depth + 1))
    return math.fsum(accepted)
