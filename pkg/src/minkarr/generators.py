"""Concrete configurations: tight instances, the translate counterexample,
and seeded random instances."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .arrangement import Family
from .density import LAMBDA_SLACK, Instance
from .geometry import DEFAULT_TOL, Homothet, Kind, NormBody, TolerancePolicy, containment_matrix, gauge, gauges

# tight generators inflate unit ratios so boundary probes are robustly inside
TIGHT_INFLATION = 1e-6


def gen_pentagon_tight() -> Instance:
    """Five unit disks on the vertices of a regular pentagon, one blue point at its center."""
    ratio = 1.0 * (1 + TIGHT_INFLATION)
    red = [Homothet((math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)), ratio) for k in range(5)]
    return Instance(NormBody.euclidean(2), tuple(red), ((0.0, 0.0),), 1.0)


def gen_hypercube_tight(d: int) -> Instance:
    """Unit cubes centered at the ``2**d`` sign vectors, one blue point at the origin."""
    if not (1 <= d <= 10):
        raise ValueError(f"hypercube dimension must be in 1..10, got {d}")
    ratio = 1.0 * (1 + TIGHT_INFLATION)
    red = [Homothet(signs, ratio) for signs in itertools.product((-1.0, 1.0), repeat=d)]
    return Instance(NormBody.linf(d), tuple(red), ((0.0,) * d,), 1.0)


@dataclass(frozen=True)
class TangentFrame:
    """Where a planar body touches a supporting line at a single point.

    ``normal`` is the outward unit normal of the supporting line, ``touch``
    the unique contact point, ``along`` a unit vector parallel to the line and
    ``half_width`` the half-length of the chord through the center in
    direction ``along``.
    """

    normal: np.ndarray
    touch: np.ndarray
    along: np.ndarray
    half_width: float


def tangent_frame(body: NormBody) -> TangentFrame:
    if body.dim != 2:
        raise ValueError("the translate counterexample is planar; body must have dim 2")
    if body.kind is Kind.EUCLIDEAN:
        normal = np.array([0.0, 1.0])
        touch = normal.copy()
    else:
        verts = body.vertices if body.kind is Kind.POLYGON else ((1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0))
        v = np.asarray(verts, dtype=float)
        k = max(range(len(v)), key=lambda i: (v[i, 1], v[i, 0]))
        prev, cur, nxt = v[k - 1], v[k], v[(k + 1) % len(v)]
        n_in = np.array([cur[1] - prev[1], prev[0] - cur[0]])
        n_out = np.array([nxt[1] - cur[1], cur[0] - nxt[0]])
        normal = n_in / np.linalg.norm(n_in) + n_out / np.linalg.norm(n_out)
        if np.linalg.norm(normal) < 1e-12:
            raise ValueError("body has no uniquely tangent boundary point")
        normal /= np.linalg.norm(normal)
        touch = cur
    along = np.array([-normal[1], normal[0]])
    return TangentFrame(normal, touch, along, 1.0 / gauge(body, along))


def gen_counterexample(body: NormBody, lam: float, eps: float, n_red: int,
                       tol: TolerancePolicy = DEFAULT_TOL):
    """Red points whose own translates see many blue points, yet ``|B| < eps * |R|``.

    Take the line tangent to ``K`` at a single point ``t``, the segment ``I``
    made of the middle half of the chord through the center parallel to that
    line, and slide ``K`` parallel to the line while it still contains ``I``.
    The contact point sweeps a segment ``J``.  Reds go on ``J``, ``m =
    ceil(lam)`` blues on ``I``.  Each translate touches the tangent line only
    at its contact point, so it holds exactly one red and all ``m`` blues.

    Returns ``(instance, witnesses)`` where ``witnesses[i]`` is a unit-ratio
    translate (not centered at red ``i``) containing red ``i``.  The reds'
    own homothets in the instance are unit ratio and centered at the reds.
    """
    if not (lam > 0 and eps > 0):
        raise ValueError("lambda and eps must be positive")
    if n_red < 1:
        raise ValueError("n_red must be at least 1")
    m = max(1, math.ceil(lam - LAMBDA_SLACK))
    if not m < eps * n_red:
        raise ValueError(f"n_red={n_red} too small: need n_red > {m}/{eps} for |B| < eps * |R|")

    frame = tangent_frame(body)
    w = frame.half_width
    # reds strictly inside J, blues spread over I
    shifts = -w / 2 + w * np.arange(1, n_red + 1) / (n_red + 1)
    blue_s = np.zeros(1) if m == 1 else np.linspace(-w / 2, w / 2, m)
    red_pts = frame.touch[None, :] + shifts[:, None] * frame.along[None, :]
    blue_pts = blue_s[:, None] * frame.along[None, :]
    witness_centers = shifts[:, None] * frame.along[None, :]

    inst = Instance(
        body,
        tuple(Homothet(tuple(p), 1.0) for p in red_pts.tolist()),
        tuple(tuple(b) for b in blue_pts.tolist()),
        lam,
    )
    witnesses = tuple(Homothet(tuple(c), 1.0) for c in witness_centers.tolist())
    # reds are collinear and each (inflated) translate is convex, so if its
    # neighbours on the line are outside, every other red is too
    for step in (1, -1):
        lo, hi = (0, n_red - 1) if step == 1 else (1, n_red)
        if hi > lo and _pairwise_hits(body, witness_centers[lo:hi], red_pts[lo + step:hi + step], tol).any():
            raise ValueError(f"n_red={n_red} is too dense for the tolerance: some translate holds several reds")
    if not containment_matrix(body, witness_centers, np.ones(n_red), blue_pts, tol).all():
        raise ValueError("internal error: a witness translate misses blue points")
    return inst, witnesses


def _pairwise_hits(body, centers, points, tol):
    return gauges(body, points - centers) <= tol.inflate(1.0)


def witness_counts(inst: Instance, witnesses, tol: TolerancePolicy = DEFAULT_TOL):
    """Red and blue counts inside each witness translate."""
    centers = np.array([h.center for h in witnesses], dtype=float)
    ratios = np.array([h.ratio for h in witnesses], dtype=float)
    reds = containment_matrix(inst.body, centers, ratios, inst.red_points, tol).sum(axis=1)
    blues = containment_matrix(inst.body, centers, ratios, inst.blue_points, tol).sum(axis=1)
    return reds, blues


@dataclass(frozen=True)
class RandomSpec:
    seed: int = 0
    n_red: int = 20
    dim: int = 2
    kind: Kind = Kind.EUCLIDEAN
    radius_range: tuple = (0.5, 2.0)
    box_side: float = 10.0
    lam: float = 1.0
    vertices: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        lo, hi = self.radius_range
        if not (0 < lo <= hi):
            raise ValueError(f"radius_range must satisfy 0 < lo <= hi, got {self.radius_range}")
        if self.n_red < 1:
            raise ValueError("n_red must be at least 1")
        if not self.box_side > 0:
            raise ValueError("box_side must be positive")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")

    def body(self) -> NormBody:
        return NormBody(self.kind, self.dim, self.vertices)


def gen_random(spec: RandomSpec, tol: TolerancePolicy = DEFAULT_TOL) -> Instance:
    """Uniform random red homothets plus just enough blue points to satisfy the hypothesis.

    Blue points are only ever placed on red centers, so membership never
    depends on the tolerance.  Adding blue can only raise other members'
    counts, so one pass in index order reaches the fixed point.
    """
    rng = np.random.default_rng(spec.seed)
    body = spec.body()
    centers = rng.uniform(0.0, spec.box_side, size=(spec.n_red, spec.dim))
    ratios = rng.uniform(*spec.radius_range, size=spec.n_red)
    holds = containment_matrix(body, centers, ratios, centers, tol)  # [member, center]
    need = np.ceil(spec.lam * holds.sum(axis=1) - LAMBDA_SLACK).astype(int)
    have = np.zeros(spec.n_red, dtype=int)
    blue = []
    for i in range(spec.n_red):
        deficit = need[i] - have[i]
        if deficit > 0:
            blue.extend([tuple(centers[i].tolist())] * deficit)
            have += deficit * holds[:, i]
    red = tuple(Homothet(tuple(c), r) for c, r in zip(centers.tolist(), ratios.tolist()))
    return Instance(body, red, tuple(blue), spec.lam)


def _random_directions(rng, body: NormBody, k: int) -> np.ndarray:
    """``k`` random vectors of unit gauge."""
    if body.kind is Kind.LINF:
        v = rng.uniform(-1.0, 1.0, size=(k, body.dim))
    else:
        v = rng.normal(size=(k, body.dim))
    g = gauges(body, v)
    v[g == 0] = 1.0
    return v / gauges(body, v)[:, None]


def gen_strict_family(rng: np.random.Generator, body: NormBody, attempts: int = 40,
                      max_slack: float = 0.3, tol: TolerancePolicy = DEFAULT_TOL) -> Family:
    """Random strict arrangement whose members all contain the origin.

    Each proposal puts a center at norm distance ``r`` from the origin with a
    ratio in ``[r, r * (1 + max_slack)]``.  Proposals are accepted in order
    unless they would contain an accepted member's center or have their own
    center inside an accepted member.
    """
    r = rng.uniform(0.05, 1.0, size=attempts)
    centers = r[:, None] * _random_directions(rng, body, attempts)
    ratios = gauges(body, centers) * (1 + rng.uniform(0.0, max_slack, size=attempts))
    g = gauges(body, centers[:, None, :] - centers[None, :, :])
    lim = tol.deflate(ratios)
    clash = (g <= lim[:, None]) | (g <= lim[None, :])
    masks = [int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in clash]
    kept, taken = [], 0
    for i in range(attempts):
        if not masks[i] & taken:
            kept.append(i)
            taken |= 1 << i
    return Family(body, tuple(Homothet(tuple(centers[i].tolist()), float(ratios[i])) for i in kept))
