"""Filtered-exact geometric predicates.

Orientation and in-circle tests are evaluated in floating point with a
static forward error bound; when the bound cannot certify the sign, the
determinant is recomputed in exact rational arithmetic (binary floats
convert to Fraction without loss).  The exact path fires essentially only
on degenerate inputs (collinear or cocircular quadruples such as integer
lattices), so the common case stays cheap.
"""

from __future__ import annotations

from fractions import Fraction

# Forward error coefficients for the float evaluation of the 2x2 / 3x3
# determinants below (machine epsilon 2^-53 style bounds).
_EPS = 1.1102230246251565e-16  # 2**-53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the signed area of triangle (a, b, c).

    Returns +1 if the triple is counterclockwise, -1 if clockwise,
    0 if exactly collinear.
    """
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return 1
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return -1
        detsum = -detleft - detright
    else:
        if detright > 0.0:
            return -1
        if detright < 0.0:
            return 1
        detsum = 0.0
    errbound = _CCW_BOUND * detsum
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _orient2d_exact(ax, ay, bx, by, cx, cy)


def _orient2d_exact(ax, ay, bx, by, cx, cy):
    ax, ay = Fraction(ax), Fraction(ay)
    bx, by = Fraction(bx), Fraction(by)
    cx, cy = Fraction(cx), Fraction(cy)
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """Sign of the in-circle determinant for d against CCW triangle (a, b, c).

    Returns +1 if d lies strictly inside the circumcircle, -1 strictly
    outside, 0 exactly on it.  The caller must pass (a, b, c) in
    counterclockwise order.
    """
    adx = ax - dx
    ady = ay - dy
    bdx = bx - dx
    bdy = by - dy
    cdx = cx - dx
    cdy = cy - dy

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady

    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy

    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    errbound = _ICC_BOUND * permanent
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy):
    ax, ay = Fraction(ax), Fraction(ay)
    bx, by = Fraction(bx), Fraction(by)
    cx, cy = Fraction(cx), Fraction(cy)
    dx, dy = Fraction(dx), Fraction(dy)
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    det = (
        (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady)
    )
    if det > 0:
        return 1
    if det < 0:
        return -1
    return 0


def circumcenter(ax, ay, bx, by, cx, cy):
    """Circumcenter of a non-degenerate triangle, computed in shifted floats."""
    bx_ = bx - ax
    by_ = by - ay
    cx_ = cx - ax
    cy_ = cy - ay
    d = 2.0 * (bx_ * cy_ - by_ * cx_)
    b2 = bx_ * bx_ + by_ * by_
    c2 = cx_ * cx_ + cy_ * cy_
    ux = (cy_ * b2 - by_ * c2) / d
    uy = (bx_ * c2 - cx_ * b2) / d
    return (ax + ux, ay + uy)
