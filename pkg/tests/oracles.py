"""Independent oracles used to freeze expected values in the tests.

Nothing in here calls the code paths it is meant to check: the vertex
enumerator solves 2-variable programs geometrically, the joint-
distribution oracle decides dichotomic compatibility on tiny theories by
interval arithmetic over per-vertex outcome tables, and the bisection
oracle brackets the one-sided noise threshold through repeated
feasibility queries instead of the single maximizing program.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def best_vertex_2var(constraints, objective):
    """Maximize c.x over {x >= 0, a.x <= b rows} by enumerating vertices.

    ``constraints`` is a list of ((a1, a2), b) rows.  Returns
    (value, point) over all feasible intersections of two of the lines
    {a.x = b, x1 = 0, x2 = 0}; valid only for bounded 2-variable
    programs, which is all this oracle is used for.
    """
    lines = [((Fraction(a1), Fraction(a2)), Fraction(b)) for (a1, a2), b in constraints]
    lines.append(((ONE, ZERO), ZERO))
    lines.append(((ZERO, ONE), ZERO))

    def feasible(pt):
        x, y = pt
        if x < 0 or y < 0:
            return False
        return all(a1 * x + a2 * y <= b for (a1, a2), b in lines[: len(constraints)])

    best = None
    for ((p1, p2), bp), ((q1, q2), bq) in itertools.combinations(lines, 2):
        det = p1 * q2 - p2 * q1
        if det == 0:
            continue
        x = (bp * q2 - p2 * bq) / det
        y = (p1 * bq - bp * q1) / det
        if not feasible((x, y)):
            continue
        value = objective[0] * x + objective[1] * y
        if best is None or value > best[0]:
            best = (value, (x, y))
    return best


def _frechet_box(p, q):
    return max(ZERO, p + q - 1), min(p, q)


def _affine_dependencies(points):
    """Nullspace basis of the homogeneous point matrix (rows = points)."""
    k = len(points)
    rows = [list(pt) + [ONE if i == j else ZERO for j in range(k)]
            for i, pt in enumerate(points)]
    d = len(points[0])
    pivot_row = 0
    for col in range(d):
        sel = next((r for r in range(pivot_row, k) if rows[r][col] != 0), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pr = rows[pivot_row]
        for r in range(k):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col] / pr[col]
                rows[r] = [v - f * w for v, w in zip(rows[r], pr)]
        pivot_row += 1
    deps = []
    for r in range(pivot_row, k):
        if all(v == 0 for v in rows[r][:d]):
            deps.append(tuple(rows[r][d:]))
    return deps


def dichotomic_pair_compatible(M, N):
    """Exact yes/no for two dichotomic observables on a tiny theory.

    Works directly with the outcome tables at the extreme points: any
    candidate joint is pinned down by the probability g_v of the (first,
    first) outcome pair at each extreme point v, constrained to the
    Frechet box of the marginals there, and by one linear consistency
    identity per affine dependency among the extreme points.  Supports
    at most one dependency, which covers every theory with <= 4 extreme
    points whose points span the coordinate space.
    """
    theory = M.theory
    points = theory.extreme_points
    deps = _affine_dependencies(points)
    if len(deps) > 1:
        raise ValueError("oracle supports at most one affine dependency")
    boxes = []
    for v in points:
        p = sum(c * x for c, x in zip(M.effects[0].coeffs, v))
        q = sum(c * x for c, x in zip(N.effects[0].coeffs, v))
        boxes.append(_frechet_box(p, q))
    if not deps:
        return True  # every box is nonempty, any selection extends affinely
    dep = deps[0]
    low = sum(c * (lo if c > 0 else hi) for c, (lo, hi) in zip(dep, boxes))
    high = sum(c * (hi if c > 0 else lo) for c, (lo, hi) in zip(dep, boxes))
    return low <= 0 <= high


def bisect_noise_threshold(M, N, membership, tol=Fraction(1, 1000)):
    """Bracket sup{t : membership(M, N, t)} by bisection.

    ``membership(M, N, t)`` must decide whether M stays jointly
    measurable with a t-sharp noisy version of N.  Returns (lo, hi) with
    membership true at lo, false at hi (or hi == 1 if true there), and
    hi - lo <= tol.
    """
    lo, hi = ZERO, ONE
    if membership(M, N, hi):
        return hi, hi
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if membership(M, N, mid):
            lo = mid
        else:
            hi = mid
    return lo, hi
