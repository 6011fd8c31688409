import math

import numpy as np
import pytest

from conftest import PENTAGON_SIDE
from minkarr import (
    NormBody,
    RandomSpec,
    check_hypothesis,
    depth,
    gen_counterexample,
    gen_hypercube_tight,
    gen_pentagon_tight,
    gen_random,
    global_ratio,
    make_certificate,
    strictness_violations,
    verify_certificate,
)
from minkarr.generators import tangent_frame, witness_counts
from minkarr.geometry import contains


def test_pentagon_tight():
    inst = gen_pentagon_tight()
    assert check_hypothesis(inst).all_satisfied
    assert global_ratio(inst) == 0.2
    pts = inst.red_points
    d = [math.dist(pts[i], pts[(i + 1) % 5]) for i in range(5)]
    assert d == pytest.approx([1.1755705045849463] * 5, rel=1e-14)
    assert min(d) > inst.red[0].ratio * (1 + 1e-9) + 1e-9
    assert PENTAGON_SIDE == pytest.approx(1.1755705045849463, rel=1e-15)
    assert strictness_violations(inst.family) == []


@pytest.mark.parametrize("d", range(1, 7))
def test_hypercube_tight(d):
    inst = gen_hypercube_tight(d)
    assert len(inst.red) == 2 ** d
    assert global_ratio(inst) == 2.0 ** -d
    assert depth(inst.family, (0.0,) * d).depth == 2 ** d
    assert check_hypothesis(inst).all_satisfied
    assert strictness_violations(inst.family) == []
    pts = inst.red_points
    dist = np.abs(pts[:, None, :] - pts[None, :, :]).max(axis=-1)
    assert set(np.unique(dist)) == {0.0, 2.0}


def test_hypercube_d1():
    inst = gen_hypercube_tight(1)
    assert sorted(r.center for r in inst.red) == [(-1.0,), (1.0,)]
    assert inst.blue == ((0.0,),)


def test_hypercube_range():
    for d in (0, 11):
        with pytest.raises(ValueError):
            gen_hypercube_tight(d)


def test_tight_instances_verify():
    for inst in [gen_pentagon_tight()] + [gen_hypercube_tight(d) for d in range(1, 7)]:
        cert = make_certificate(inst)
        assert verify_certificate(inst, cert)
        assert global_ratio(inst) == inst.lam / cert.depth_bound
        assert cert.max_blue_depth == cert.depth_bound


def test_counterexample_disk():
    inst, wit = gen_counterexample(NormBody.euclidean(2), 10, 0.01, 2000)
    assert len(inst.red) == 2000 and len(inst.blue) == 10
    blue = inst.blue_points
    assert np.all(blue[:, 1] == 0) and blue[:, 0].min() == -0.5 and blue[:, 0].max() == 0.5
    red = inst.red_points
    # J: top contact points of horizontal translates holding I; extent [-1/2, 1/2]
    # frozen from an independent grid sweep
    assert np.all(red[:, 1] == 1.0)
    assert -0.5 < red[:, 0].min() < red[:, 0].max() < 0.5
    assert len(np.unique(red[:, 0])) == 2000
    reds, blues = witness_counts(inst, wit)
    assert (reds == 1).all() and (blues == 10).all()
    for i in (0, 999, 1999):
        assert contains(inst.body, wit[i], inst.red[i].center)
    assert global_ratio(inst) == 0.005 < 0.01
    # red-centered homothets see no blue: the hypothesis fails as it must
    assert not check_hypothesis(inst).all_satisfied


def test_counterexample_single():
    inst, wit = gen_counterexample(NormBody.euclidean(2), 1, 2, 1)
    reds, blues = witness_counts(inst, wit)
    assert len(inst.red) == 1 and len(inst.blue) == 1
    assert reds.tolist() == [1] and blues.tolist() == [1]


@pytest.mark.parametrize("body", [
    NormBody.linf(2),
    NormBody.regular_polygon(6),
    NormBody.regular_polygon(8, phase=0.3),
    NormBody.polygon([(2, 0), (1, 1), (-2, 0), (-1, -1)]),
])
def test_counterexample_polygons(body):
    inst, wit = gen_counterexample(body, 3.5, 0.05, 200)
    reds, blues = witness_counts(inst, wit)
    assert (reds == 1).all() and (blues == 4).all()
    assert len(inst.blue) < 0.05 * len(inst.red)
    for i, w in enumerate(wit):
        assert blues[i] >= inst.lam * reds[i]


def test_tangent_frame_square():
    frame = tangent_frame(NormBody.linf(2))
    assert frame.touch.tolist() == [1.0, 1.0]
    assert frame.normal == pytest.approx([2 ** -0.5, 2 ** -0.5])
    assert frame.half_width == pytest.approx(2 ** 0.5)


def test_counterexample_errors():
    with pytest.raises(ValueError):
        gen_counterexample(NormBody.euclidean(2), 10, 0.01, 1000)  # 10 / 0.01 = 1000 not exceeded
    with pytest.raises(ValueError):
        gen_counterexample(NormBody.euclidean(3), 1, 1, 10)
    with pytest.raises(ValueError):
        gen_counterexample(NormBody.euclidean(2), 1, 1e-9, 10 ** 6)  # too small eps
    with pytest.raises(ValueError):
        gen_counterexample(NormBody.euclidean(2), 1, 0.5, 100_000)  # too dense for the tolerance


def test_random_single_red():
    inst = gen_random(RandomSpec(seed=1, n_red=1, lam=2.5))
    assert len(inst.red) == 1
    assert inst.blue == (inst.red[0].center,) * 3


def test_random_satisfies_and_is_deterministic():
    spec = RandomSpec(seed=42, n_red=100, dim=2, kind="euclidean", lam=1.0)
    a, b = gen_random(spec), gen_random(spec)
    assert a == b
    assert check_hypothesis(a).all_satisfied
    assert gen_random(RandomSpec(seed=43, n_red=100)) != a


@pytest.mark.parametrize("seed", range(50))
def test_random_always_satisfied(seed):
    spec = RandomSpec(seed=seed, n_red=40, dim=1 + seed % 3, kind=("euclidean", "linf")[seed % 2],
                      lam=(0.5, 1.0, 2.0, 1 / 3)[seed % 4], box_side=5.0)
    assert check_hypothesis(gen_random(spec)).all_satisfied


def test_random_spec_validation():
    with pytest.raises(ValueError):
        RandomSpec(radius_range=(2, 1))
    with pytest.raises(ValueError):
        RandomSpec(n_red=0)
    with pytest.raises(ValueError):
        RandomSpec(radius_range=(0, 1))
