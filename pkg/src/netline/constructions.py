"""Constructive correspondences with certified distortion bounds.

Both constructions operate on discretized continuum sets, so each result
carries the continuum bound and a separate additive discretization slack
(2 * step).  The slack is never folded into the bound: the certified
inequality is  value <= bound + slack,  and the slack term halves exactly
when the step halves.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .correspondence import (
    Correspondence,
    DistortionCertificate,
    FiniteMetricSpace,
    distortion,
)
from .errors import PreconditionError
from .geometry import PointSet, ScalarLike, as_scalar, sample, thicken
from .homotopy import f_map


class SegmentCorrespondence(NamedTuple):
    correspondence: Correspondence
    certificate: DistortionCertificate
    left: FiniteMetricSpace
    right: FiniteMetricSpace
    continuum_bound: Fraction
    slack: Fraction


def segment_correspondence(
    x: PointSet, r1: ScalarLike, r2: ScalarLike, step: ScalarLike
) -> SegmentCorrespondence:
    """Affinely pair the sampled r1- and r2-thickenings of a point set.

    For each source point p the segment [p - r1, p + r1] maps affinely onto
    [p - r2, p + r2]; sampled points are paired with the nearest sample of
    the affine image (ties to the smaller coordinate), in both directions so
    the result is doubly surjective.  Certified: value <= 2|r1 - r2| + slack.
    """
    rad1, rad2 = as_scalar(r1), as_scalar(r2)
    h = as_scalar(step)
    if rad1 < 0 or rad2 < 0:
        raise ValueError("radii must be nonnegative")
    if h <= 0:
        raise ValueError("step must be positive")

    s1 = sample(thicken(x, rad1), h)
    s2 = sample(thicken(x, rad2), h)
    pairs: set[tuple[int, int]] = set()

    for p in x.points:
        lo1, hi1 = p - rad1, p + rad1
        lo2, hi2 = p - rad2, p + rad2
        for ai, a in enumerate(s1.points):
            if lo1 <= a <= hi1:
                image = p + (a - p) * rad2 / rad1 if rad1 > 0 else p
                pairs.add((ai, s2.index_nearest(image)))
        for bi, b in enumerate(s2.points):
            if lo2 <= b <= hi2:
                preimage = p + (b - p) * rad1 / rad2 if rad2 > 0 else p
                pairs.add((s1.index_nearest(preimage), bi))

    corr = Correspondence.of(pairs, len(s1), len(s2))
    left = FiniteMetricSpace.from_line(s1)
    right = FiniteMetricSpace.from_line(s2)
    cert = distortion(corr, left, right)
    return SegmentCorrespondence(
        corr, cert, left, right, 2 * abs(rad1 - rad2), 2 * h
    )


class ExtendedCorrespondence(NamedTuple):
    correspondence: Correspondence
    certificate: DistortionCertificate
    left: FiniteMetricSpace
    right: FiniteMetricSpace
    base_distortion: Fraction
    bound: Fraction
    slack: Fraction


def extend_correspondence(
    r: Correspondence,
    x: PointSet,
    xn: PointSet,
    lam: ScalarLike,
    step: ScalarLike,
) -> ExtendedCorrespondence:
    """Extend a correspondence of point sets to their sampled thickenings.

    Ground sets are the original points united with samples of the
    lam/(1-lam)-thickenings.  Every uncovered point a near a source point p
    is paired by the shift rule with p' + (a - p) for the canonical (smallest)
    image p' of p, rounded to the nearest sample; symmetrically on the other
    side.  Requires dis r < lam/8, the working hypothesis under which the
    extension distorts by at most 5 * dis r (plus slack).
    """
    lam_v = as_scalar(lam)
    h = as_scalar(step)
    if not 0 < lam_v < 1:
        raise ValueError("lam must lie strictly between 0 and 1")
    if h <= 0:
        raise ValueError("step must be positive")
    if r.n_left != len(x) or r.n_right != len(xn):
        raise ValueError("correspondence shape does not match the point sets")

    base = distortion(
        r, FiniteMetricSpace.from_line(x), FiniteMetricSpace.from_line(xn)
    )
    if not base.value < lam_v / 8:
        raise PreconditionError(
            f"dis r = {base.value} is not below lam/8 = {lam_v / 8}; "
            "the 5x extension bound is only guaranteed under that hypothesis"
        )

    radius = f_map(lam_v)
    ground_left = PointSet.of(
        list(x.points) + list(sample(thicken(x, radius), h).points)
    )
    ground_right = PointSet.of(
        list(xn.points) + list(sample(thicken(xn, radius), h).points)
    )
    left_index = {p: k for k, p in enumerate(ground_left.points)}
    right_index = {p: k for k, p in enumerate(ground_right.points)}

    pairs: set[tuple[int, int]] = set()
    for i, j in r.pairs:
        pairs.add((left_index[x.points[i]], right_index[xn.points[j]]))

    covered_left = {a for a, _ in pairs}
    covered_right = {b for _, b in pairs}
    images = {i: min(r.image_of(i)) for i in range(len(x))}
    preimages = {j: min(r.preimage_of(j)) for j in range(len(xn))}

    for ai, a in enumerate(ground_left.points):
        if ai in covered_left:
            continue
        src = x.index_nearest(a)
        shifted = xn.points[images[src]] + (a - x.points[src])
        pairs.add((ai, ground_right.index_nearest(shifted)))

    for bi, b in enumerate(ground_right.points):
        if bi in covered_right:
            continue
        src = xn.index_nearest(b)
        shifted = x.points[preimages[src]] + (b - xn.points[src])
        pairs.add((ground_left.index_nearest(shifted), bi))

    corr = Correspondence.of(pairs, len(ground_left), len(ground_right))
    left = FiniteMetricSpace.from_line(ground_left)
    right = FiniteMetricSpace.from_line(ground_right)
    cert = distortion(corr, left, right)
    return ExtendedCorrespondence(
        corr, cert, left, right, base.value, 5 * base.value, 2 * h
    )
