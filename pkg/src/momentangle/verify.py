"""Randomized exact verification harnesses for the cluster geometry.

The evaluators in :mod:`momentangle.clusters` are pointwise and exact, so
their governing identities can be checked by sampling rational points and
evaluating predicates — no numerics, no tolerance anywhere except inside
the bisection gauge.  This module supplies the samplers, two aggregate
report builders used by the command line, and a deterministic constructor
for a tagging-map membership violation on complexes where some small
vertex set fails to be a face.
"""

import random
from fractions import Fraction

from .clusters import (
    DEFAULT_TOLERANCE,
    MembershipViolation,
    SuspensionPoint,
    anchored,
    cluster_radius,
    contract_toward_center,
    enumerate_balanced_splits,
    factor_tagging_map,
    in_cluster_region,
    in_split_region,
    normalized_spread,
    pinched_composite,
    radial_gauge,
    radial_gauge_inverse,
    split_center,
    tagging_homotopy,
    tagging_map,
)
from .complexes import full_mask, mask_vertices

DEFAULT_DENOMINATOR = 2**20


def sample_open_cube(rng, dims, denominator=DEFAULT_DENOMINATOR):
    """A uniform rational point strictly inside the cube, on a fixed grid."""
    top = denominator - 1
    return tuple(Fraction(rng.randint(-top, top), denominator) for _ in range(dims))


def sample_near(rng, center, spread=Fraction(1, 8), denominator=DEFAULT_DENOMINATOR):
    """A point perturbed around a split center, still inside the cube."""
    spread = Fraction(spread)
    if not 0 < spread < Fraction(1, 2):
        raise ValueError("spread must lie strictly between 0 and 1/2")
    top = denominator - 1
    return tuple(
        c + spread * Fraction(rng.randint(-top, top), denominator) for c in center
    )


def sample_smash_payload(rng, complex, denominator=DEFAULT_DENOMINATOR, end_bias=0.9):
    """A random point of the complex's smashed model.

    Picks a face, fills its coordinates from the open interval and the
    rest from the interval ends, favouring the non-basepoint end so that
    most samples are informative.
    """
    faces = sorted(complex.faces)
    sigma = rng.choice(faces)
    top = denominator - 1
    out = []
    for i in range(1, complex.n + 1):
        if sigma & (1 << i):
            out.append(Fraction(rng.randint(-top, top), denominator))
        elif rng.random() < end_bias:
            out.append(Fraction(1))
        else:
            out.append(Fraction(-1))
    return tuple(out)


def split_region_report(n, samples, seed, tol=DEFAULT_TOLERANCE, gauge_checks=200):
    """Sampled statistics for the split-region decomposition.

    Half the points are uniform over the cube, half are perturbed around
    split centers so the (small) regions are actually exercised.  Every
    counted breach is a failure of an exact predicate identity: regions
    overlapping, a region point outside the cluster region, or a cluster
    point missed by every region.  Gauge round trips are checked on the
    first ``gauge_checks`` tagged points and must reproduce the point
    exactly.
    """
    rng = random.Random(seed)
    splits = enumerate_balanced_splits(n)
    centers = [split_center(low, high, n) for low, high in splits]
    # the regions shrink with n (the spread bound is 1/(2n)), so perturb less
    spread = Fraction(1, 4 * n)
    report = {
        "n": n,
        "samples": samples,
        "splits": len(splits),
        "in_cluster": 0,
        "tagged": 0,
        "overlap_breaches": 0,
        "coverage_breaches": 0,
        "stray_tag_breaches": 0,
        "retraction_checked": 0,
        "retraction_breaches": 0,
        "gauge_trips": 0,
        "gauge_failures": 0,
    }
    times = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
    for k in range(samples):
        if centers and k % 2:
            y = sample_near(rng, centers[rng.randrange(len(centers))], spread)
        else:
            y = sample_open_cube(rng, n - 1)
        tags = [
            (low, high) for low, high in splits if in_split_region(y, low, high)
        ]
        clustered = in_cluster_region(y)
        if clustered:
            report["in_cluster"] += 1
        if len(tags) > 1:
            report["overlap_breaches"] += 1
        if clustered and not tags:
            report["coverage_breaches"] += 1
        if tags and not clustered:
            report["stray_tag_breaches"] += 1
        if tags:
            report["tagged"] += 1
            low, high = tags[0]
            if not _retraction_holds(y, low, high, n, times):
                report["retraction_breaches"] += 1
            report["retraction_checked"] += 1
            if report["gauge_trips"] < gauge_checks:
                w = radial_gauge(low, high, y, tol)
                if radial_gauge_inverse(low, high, w, tol) != y:
                    report["gauge_failures"] += 1
                report["gauge_trips"] += 1
    return report


def _retraction_holds(y, low, high, n, times):
    """Contraction closure plus the exact spread/radius scaling laws."""
    z = anchored(y)
    spread = normalized_spread(z)
    low_radii = {i: cluster_radius(z, low, i) for i in mask_vertices(low)}
    high_radii = {j: cluster_radius(z, high, j) for j in mask_vertices(high)}
    for t in times:
        yt = contract_toward_center(y, low, high, t)
        if not in_split_region(yt, low, high):
            return False
        zt = anchored(yt)
        if normalized_spread(zt) != (1 - t) * spread + t * Fraction(1, 2 * n):
            return False
        for i, radius in low_radii.items():
            if cluster_radius(zt, low, i) != (1 - t) * radius:
                return False
        for j, radius in high_radii.items():
            if cluster_radius(zt, high, j) != (1 - t) * radius:
                return False
    return True


def homotopy_report(complex, samples, seed, tol=DEFAULT_TOLERANCE):
    """Endpoint identities of the tagging homotopy on sampled points.

    Time 0 must reproduce the tagging map exactly.  Time 1 must agree
    with the pinched composite: basepoints match up, and on non-basepoint
    values the worst height/anchor deviation is recorded (the payload is
    compared exactly).  Membership violations are counted rather than
    raised, so the report is also useful on complexes that fail the
    neighbourliness hypothesis.
    """
    rng = random.Random(seed)
    n = complex.n
    splits = enumerate_balanced_splits(n)
    centers = [split_center(low, high, n) for low, high in splits]
    spread = Fraction(1, 4 * n)
    report = {
        "samples": samples,
        "start_mismatches": 0,
        "end_mismatches": 0,
        "end_compared": 0,
        "end_nonbasepoint": 0,
        "membership_violations": 0,
        "max_end_error": Fraction(0),
    }
    for k in range(samples):
        if centers and k % 2:
            params = sample_near(rng, centers[rng.randrange(len(centers))], spread)
        else:
            params = sample_open_cube(rng, n - 1)
        omega = SuspensionPoint(params, sample_smash_payload(rng, complex))
        try:
            start = tagging_homotopy(complex, omega, 0)
            if start != tagging_map(complex, omega):
                report["start_mismatches"] += 1
            for mid in (Fraction(1, 4), Fraction(3, 4)):
                tagging_homotopy(complex, omega, mid)
            end = tagging_homotopy(complex, omega, 1)
            composite = pinched_composite(complex, omega, tol)
        except MembershipViolation:
            report["membership_violations"] += 1
            continue
        report["end_compared"] += 1
        if end.is_basepoint or composite.is_basepoint:
            if end.is_basepoint != composite.is_basepoint:
                report["end_mismatches"] += 1
            continue
        report["end_nonbasepoint"] += 1
        error = max(
            abs(end.height - composite.height),
            max(abs(a - b) for a, b in zip(end.anchor, composite.anchor)),
        )
        if end.payload != composite.payload:
            report["end_mismatches"] += 1
        report["max_end_error"] = max(report["max_end_error"], error)
    return report


def find_tagging_violation(complex, tol=DEFAULT_TOLERANCE):
    """Deterministically build a point where a factor tagging map escapes.

    When some vertex set with at most a third of the vertices is not a
    face, the damping can strand exactly that set as the interior support
    of a level block, so the factor tagging map lands outside the blocked
    smash.  Returns the full witness (split, pre-gauge point, suspension
    point, failing block) or ``None`` when every small set is a face —
    including ambient sizes with no balanced splits at all.
    """
    n = complex.n
    m = n // 3
    if m == 0 or not enumerate_balanced_splits(n):
        return None
    small = [f for f in complex.minimal_non_faces if f.bit_count() <= m]
    if not small:
        return None
    culprit = min(small, key=lambda f: (f.bit_count(), f))
    # the culprit's block, padded with helper vertices to a legal size
    low = culprit
    for v in range(1, n + 1):
        if low.bit_count() == n // 3 + 1:
            break
        if v != n and not low & (1 << v):
            low |= 1 << v
    high = full_mask(n) ^ low
    helpers = sorted(mask_vertices(low ^ culprit))
    low_value = Fraction(0) if culprit & (1 << n) else Fraction(-1, 2)
    high_value = low_value + Fraction(1, 2)
    step = Fraction(1, 64 * n * n)
    values = {}
    for v in mask_vertices(culprit):
        values[v] = low_value
    for j, v in enumerate(helpers, start=1):
        # distinct offsets give every helper a positive cluster radius
        values[v] = low_value + j * step
    for v in mask_vertices(high):
        values[v] = high_value
    pre_gauge = tuple(values[v] for v in range(1, n))
    if not in_split_region(pre_gauge, low, high):
        raise AssertionError("constructed point missed its split region")
    params = radial_gauge(low, high, pre_gauge, tol)
    omega = SuspensionPoint(params, (Fraction(1),) * n)
    try:
        factor_tagging_map(complex, low, high, omega, tol)
    except MembershipViolation as exc:
        return {
            "low_block": low,
            "high_block": high,
            "culprit": culprit,
            "pre_gauge": pre_gauge,
            "params": params,
            "payload": omega.payload,
            "failed_block": exc.failed_block,
            "support": exc.support,
        }
    raise AssertionError("constructed point unexpectedly stayed inside")
