"""Small scalar search helpers shared by the bound and certificate code."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(func, lo, hi, tol=1e-10, max_iter=500):
    """Minimize a unimodal ``func`` on ``[lo, hi]``.

    Returns ``(x, func(x))``. On ties the smaller abscissa is kept, which
    makes the search deterministic for flat objectives.
    """
    if hi < lo:
        raise ValueError("empty interval")
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = func(c), func(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = func(d)
    candidates = [(fc, c), (fd, d), (func(a), a), (func(b), b)]
    best_f, best_x = min(candidates, key=lambda p: (p[0], p[1]))
    return best_x, best_f


def scan_then_golden(func, lo, hi, points=200, tol=1e-10):
    """Grid scan followed by golden-section refinement around the best node.

    Guards against mild non-unimodality: the refinement bracket is the two
    grid cells adjacent to the best sampled point, and the returned value is
    never worse than the best sample.
    """
    if hi <= lo:
        return lo, func(lo)
    step = (hi - lo) / points
    xs = [lo + i * step for i in range(points + 1)]
    xs[-1] = hi
    vals = [func(x) for x in xs]
    i = min(range(len(xs)), key=lambda j: (vals[j], xs[j]))
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, len(xs) - 1)]
    x, fx = golden_section_min(func, a, b, tol=tol)
    if vals[i] < fx:
        return xs[i], vals[i]
    return x, fx


def bisect_increasing(func, target, lo, hi, tol=1e-12, max_iter=400):
    """Solve ``func(x) = target`` for nondecreasing ``func`` on ``[lo, hi]``."""
    flo = func(lo)
    if flo >= target:
        return lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = func(mid)
        if abs(fm - target) <= tol or hi - lo <= 1e-16 * max(1.0, abs(mid)):
            return mid
        if fm < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
