"""Points, norm bodies, gauges and containment predicates.

A norm body is the closed unit ball ``K`` of a norm on R^d.  A homothet
``p + rho*K`` is represented by its center ``p`` and ratio ``rho``.  All
containment tests go through :func:`contains` (inflated, boundary counts as
inside) or :func:`strictly_contains` (deflated), with the slack given by a
:class:`TolerancePolicy`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Point = tuple  # tuple[float, ...]


class Kind(str, Enum):
    EUCLIDEAN = "euclidean"
    LINF = "linf"
    POLYGON = "polygon"


def as_point(coords: Iterable[float], dim: int | None = None) -> Point:
    """Coerce ``coords`` to a tuple of finite floats, optionally checking its length."""
    pt = tuple(float(c) for c in coords)
    if not pt:
        raise ValueError("point must have at least one coordinate")
    if not all(math.isfinite(c) for c in pt):
        raise ValueError(f"point has non-finite coordinates: {pt}")
    if dim is not None and len(pt) != dim:
        raise ValueError(f"dimension mismatch: expected {dim}, got {len(pt)}")
    return pt


@dataclass(frozen=True)
class TolerancePolicy:
    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def __post_init__(self):
        for name in ("abs_eps", "rel_eps"):
            val = getattr(self, name)
            if not math.isfinite(val) or val < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {val}")

    def inflate(self, ratio):
        return ratio * (1.0 + self.rel_eps) + self.abs_eps

    def deflate(self, ratio):
        return ratio * (1.0 - self.rel_eps) - self.abs_eps


DEFAULT_TOL = TolerancePolicy()


@dataclass(frozen=True)
class NormBody:
    """Origin-symmetric convex unit ball.

    ``Polygon`` bodies live in the plane and are given by their vertices in
    counterclockwise order; the vertex list must be strictly convex and
    closed under ``v -> -v``.
    """

    kind: Kind
    dim: int
    vertices: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        if self.kind is Kind.POLYGON:
            if self.dim != 2:
                raise ValueError("polygon bodies are only supported in dimension 2")
            verts = tuple(as_point(v, 2) for v in self.vertices)
            object.__setattr__(self, "vertices", verts)
            _validate_polygon(verts)
        elif self.vertices:
            raise ValueError(f"{self.kind.value} body takes no vertices")

    @classmethod
    def euclidean(cls, dim: int = 2) -> "NormBody":
        return cls(Kind.EUCLIDEAN, dim)

    @classmethod
    def linf(cls, dim: int = 2) -> "NormBody":
        return cls(Kind.LINF, dim)

    @classmethod
    def polygon(cls, vertices: Sequence[Sequence[float]]) -> "NormBody":
        return cls(Kind.POLYGON, 2, tuple(tuple(v) for v in vertices))

    @classmethod
    def regular_polygon(cls, n_sides: int, phase: float = 0.0) -> "NormBody":
        """Regular ``n_sides``-gon with circumradius 1; ``n_sides`` must be even."""
        if n_sides < 4 or n_sides % 2:
            raise ValueError("a symmetric regular polygon needs an even number >= 4 of sides")
        angles = phase + 2 * np.pi * np.arange(n_sides) / n_sides
        verts = [(math.cos(a), math.sin(a)) for a in angles]
        # make v and -v bit-identical
        half = n_sides // 2
        verts[half:] = [(-x, -y) for x, y in verts[:half]]
        return cls.polygon(verts)

    @cached_property
    def _edges(self):
        """Sorted vertex angles in [0, 2pi) plus outward edge normals and offsets."""
        v = np.asarray(self.vertices, dtype=float)
        ang = np.mod(np.arctan2(v[:, 1], v[:, 0]), 2 * np.pi)
        start = int(np.argmin(ang))
        v = np.roll(v, -start, axis=0)
        ang = np.roll(ang, -start)
        nxt = np.roll(v, -1, axis=0)
        d = nxt - v
        normals = np.column_stack([d[:, 1], -d[:, 0]])
        offsets = np.einsum("ij,ij->i", normals, v)
        return ang, normals, offsets


def _validate_polygon(verts):
    m = len(verts)
    if m < 4:
        raise ValueError("symmetric polygon needs at least 4 vertices")
    v = np.asarray(verts)
    scale = float(np.abs(v).max())
    for i in range(m):
        a, b, c = v[i], v[(i + 1) % m], v[(i + 2) % m]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross <= 1e-12 * scale * scale:
            raise ValueError("polygon vertices must be strictly convex and counterclockwise")
    # winding number 1 around the origin: angles increase by exactly 2*pi
    ang = np.arctan2(v[:, 1], v[:, 0])
    total = np.sum(np.mod(np.diff(np.append(ang, ang[0])), 2 * np.pi))
    if not math.isclose(total, 2 * np.pi, rel_tol=1e-9):
        raise ValueError("polygon must wind once counterclockwise around the origin")
    for p in v:
        if not np.any(np.all(np.abs(v + p) <= 1e-12 * max(scale, 1.0), axis=1)):
            raise ValueError(f"polygon is not origin-symmetric: -{tuple(p)} missing")
    for i in range(m):
        a, b = v[i], v[(i + 1) % m]
        if a[0] * b[1] - a[1] * b[0] <= 0:
            raise ValueError("origin must lie strictly inside the polygon")


@dataclass(frozen=True)
class Homothet:
    """``center + ratio * K`` for the ambient norm body ``K``."""

    center: Point
    ratio: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        ratio = float(self.ratio)
        if not (math.isfinite(ratio) and ratio > 0):
            raise ValueError(f"homothety ratio must be positive and finite, got {self.ratio}")
        object.__setattr__(self, "ratio", ratio)

    @property
    def dim(self) -> int:
        return len(self.center)


def gauges(body: NormBody, vectors) -> np.ndarray:
    """Vectorized gauge: ``vectors`` has shape ``(..., dim)``."""
    v = np.asarray(vectors, dtype=float)
    if v.shape[-1] != body.dim:
        raise ValueError(f"dimension mismatch: body has dim {body.dim}, vectors {v.shape[-1]}")
    if body.kind is Kind.EUCLIDEAN:
        return np.sqrt(np.einsum("...i,...i->...", v, v))
    if body.kind is Kind.LINF:
        return np.abs(v).max(axis=-1)
    return _polygon_gauges(body, v)


def _polygon_gauges(body: NormBody, v: np.ndarray) -> np.ndarray:
    ang, normals, offsets = body._edges
    x, y = v[..., 0], v[..., 1]
    # fold onto the upper half plane; the body is symmetric, so this makes
    # gauge(v) == gauge(-v) bit for bit
    flip = (y < 0) | ((y == 0) & (x < 0))
    x = np.where(flip, -x, x)
    y = np.where(flip, -y, y)
    theta = np.arctan2(y, x)
    k = (np.searchsorted(ang, theta, side="right") - 1) % len(ang)
    n = normals[k]
    return np.maximum((n[..., 0] * x + n[..., 1] * y) / offsets[k], 0.0)


def gauge(body: NormBody, v: Sequence[float]) -> float:
    """Return ``||v||_K = min{t >= 0 : v in tK}``."""
    vec = np.asarray(v, dtype=float)
    if vec.shape != (body.dim,):
        raise ValueError(f"dimension mismatch: body has dim {body.dim}, vector has shape {vec.shape}")
    if body.kind is Kind.EUCLIDEAN:
        return math.hypot(*vec.tolist())
    if body.kind is Kind.LINF:
        return float(np.abs(vec).max())
    return float(_polygon_gauges(body, vec))


def contains(body: NormBody, h: Homothet, q: Sequence[float], tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Closed membership of ``q`` in ``h``, with the threshold inflated by ``tol``."""
    if len(h.center) != body.dim or len(q) != body.dim:
        raise ValueError("dimension mismatch between body, homothet and point")
    diff = [a - b for a, b in zip(q, h.center)]
    return gauge(body, diff) <= tol.inflate(h.ratio)


def strictly_contains(body: NormBody, h: Homothet, q: Sequence[float], tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Deflated membership: ``q`` is inside ``h`` by more than the tolerance."""
    if len(h.center) != body.dim or len(q) != body.dim:
        raise ValueError("dimension mismatch between body, homothet and point")
    diff = [a - b for a, b in zip(q, h.center)]
    return gauge(body, diff) <= tol.deflate(h.ratio)


def containment_matrix(body: NormBody, centers, ratios, points, tol: TolerancePolicy = DEFAULT_TOL,
                       deflated: bool = False) -> np.ndarray:
    """Boolean matrix ``M[i, j]`` = homothet ``i`` contains point ``j``.

    Uses the inflated predicate unless ``deflated`` is set.
    """
    c = np.asarray(centers, dtype=float).reshape(-1, body.dim)
    r = np.asarray(ratios, dtype=float).reshape(-1)
    p = np.asarray(points, dtype=float).reshape(-1, body.dim)
    thresh = tol.deflate(r) if deflated else tol.inflate(r)
    out = np.empty((len(c), len(p)), dtype=bool)
    step = max(1, _CHUNK // max(1, len(p) * body.dim))
    for lo in range(0, len(c), step):
        g = gauges(body, p[None, :, :] - c[lo:lo + step, None, :])
        out[lo:lo + step] = g <= thresh[lo:lo + step, None]
    return out


_CHUNK = 1 << 22
