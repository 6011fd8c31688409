import itertools

import numpy as np
import pytest

from conftest import euclid_disk_family
from minkarr import (
    DEFAULT_TOL,
    Family,
    Homothet,
    NormBody,
    depth,
    gen_strict_family,
    is_strict,
    max_intersecting_strict_subfamily,
    strictness_violations,
)
from minkarr.arrangement import Violation


def brute_force_max(family, probes, tol=DEFAULT_TOL):
    """Plain combinations over every subset; no pruning, scalar predicates only."""
    from minkarr.geometry import contains, strictly_contains

    best = 0
    for q in probes:
        inside = [i for i, m in enumerate(family.members) if contains(family.body, m, q, tol)]
        for k in range(len(inside), best, -1):
            if any(
                not any(strictly_contains(family.body, family.members[i], family.members[j].center, tol)
                        for i, j in itertools.permutations(sub, 2))
                for sub in itertools.combinations(inside, k)
            ):
                best = k
                break
    return best


def test_pentagon_is_strict(pentagon_family):
    assert strictness_violations(pentagon_family) == []


def test_overlapping_pair_violates_both_ways():
    fam = euclid_disk_family([(0, 0), (0.5, 0)])
    assert set(strictness_violations(fam)) == {Violation(0, 1), Violation(1, 0)}


def test_cube_family_is_strict(cube_family):
    assert strictness_violations(cube_family(2)) == []
    assert strictness_violations(cube_family(3)) == []


def test_empty_family_rejected():
    with pytest.raises(ValueError):
        strictness_violations(Family(NormBody.euclidean(2), ()))


def test_family_dimension_check():
    with pytest.raises(ValueError):
        Family(NormBody.euclidean(2), (Homothet((0, 0, 0), 1),))


def test_depth_examples(pentagon_family, cube_family):
    rep = depth(pentagon_family, (0, 0))
    assert rep.depth == 5 and rep.containing_indices == (0, 1, 2, 3, 4)
    assert depth(pentagon_family, (100, 0)).depth == 0
    assert depth(cube_family(3), (0, 0, 0)).depth == 8
    with pytest.raises(ValueError):
        depth(pentagon_family, (0, 0, 0))


def test_oracle_pentagon(pentagon_family):
    res = max_intersecting_strict_subfamily(pentagon_family, [(0, 0), (3, 3)])
    assert res.size == 5
    assert res.indices == (0, 1, 2, 3, 4)
    assert res.probe == (0.0, 0.0)


def test_oracle_single_disk():
    fam = euclid_disk_family([(1, 2)])
    assert max_intersecting_strict_subfamily(fam, [(1, 2)]).size == 1


def test_oracle_pentagon_plus_center(pentagon_plus_center):
    probes = [m.center for m in pentagon_plus_center.members] + [(0.0, 0.0)]
    # frozen from an independent itertools/math.dist script: 5
    res = max_intersecting_strict_subfamily(pentagon_plus_center, probes)
    assert res.size == 5
    assert brute_force_max(pentagon_plus_center, probes) == 5
    assert depth(pentagon_plus_center, (0, 0)).depth == 6
    assert is_strict(pentagon_plus_center.subfamily(res.indices))


def test_oracle_size_cap():
    fam = euclid_disk_family([(3 * i, 0) for i in range(26)])
    with pytest.raises(ValueError):
        max_intersecting_strict_subfamily(fam, [(0, 0)])
    with pytest.raises(ValueError):
        max_intersecting_strict_subfamily(euclid_disk_family([(0, 0)]), [])


def test_oracle_tie_break_lexicographic():
    # 0 conflicts with 1 only; {0, 2} and {1, 2} both size 2, lexicographically first wins
    fam = Family(NormBody.euclidean(2), (Homothet((0, 0), 1), Homothet((0.3, 0), 1), Homothet((-0.4, 1.5), 1.2)))
    assert set(strictness_violations(fam)) == {Violation(0, 1), Violation(1, 0)}
    res = max_intersecting_strict_subfamily(fam, [(0.0, 0.5), (0.1, 0.4)])
    assert res.size == 2 and res.indices == (0, 2)


@pytest.mark.parametrize("seed", range(40))
def test_oracle_agrees_with_brute_force(seed):
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-2, 2, size=(7, 2))
    fam = Family(NormBody.euclidean(2), tuple(Homothet(p, r) for p, r in zip(pts, rng.uniform(0.3, 2.0, 7))))
    probes = [tuple(p) for p in rng.uniform(-2, 2, size=(10, 2))] + [m.center for m in fam.members]
    res = max_intersecting_strict_subfamily(fam, probes)
    assert res.size == brute_force_max(fam, probes)
    assert is_strict(fam.subfamily(res.indices))
    assert depth(fam.subfamily(res.indices), res.probe).depth == res.size


def test_equal_ratio_violations_are_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(200):
        pts = rng.uniform(0, 3, size=(6, 2))
        fam = euclid_disk_family(pts, radius=1.0)
        viol = set(strictness_violations(fam))
        for i, j in viol:
            assert (j, i) in viol


@pytest.mark.parametrize("body,ceiling", [
    (NormBody.euclidean(2), 5),
    (NormBody.linf(1), 2),
    (NormBody.linf(2), 4),
    (NormBody.linf(3), 8),
    (NormBody.euclidean(1), 3),
    (NormBody.regular_polygon(6), 9),
])
def test_random_strict_families_respect_ceiling(body, ceiling):
    rng = np.random.default_rng(2024)
    for _ in range(300):
        fam = gen_strict_family(rng, body, attempts=25)
        assert is_strict(fam)
        probes = np.vstack([np.zeros((1, body.dim)), fam.centers, rng.uniform(-0.3, 0.3, size=(20, body.dim))])
        for q in probes:
            assert depth(fam, q).depth <= ceiling
        res = max_intersecting_strict_subfamily(fam, [np.zeros(body.dim)])
        assert res.size >= depth(fam, np.zeros(body.dim)).depth  # the whole family is strict
