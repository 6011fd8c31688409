"""Strict Minkowski arrangements: violation search, point depth, and a
brute-force search for the largest strict subfamily through a point."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Homothet,
    NormBody,
    Point,
    TolerancePolicy,
    as_point,
    containment_matrix,
)

MAX_EXHAUSTIVE_MEMBERS = 25


@dataclass(frozen=True)
class Family:
    body: NormBody
    members: tuple

    def __post_init__(self):
        members = tuple(m if isinstance(m, Homothet) else Homothet(*m) for m in self.members)
        for m in members:
            if m.dim != self.body.dim:
                raise ValueError(f"member center {m.center} does not have dimension {self.body.dim}")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    @cached_property
    def centers(self) -> np.ndarray:
        return np.array([m.center for m in self.members], dtype=float).reshape(-1, self.body.dim)

    @cached_property
    def ratios(self) -> np.ndarray:
        return np.array([m.ratio for m in self.members], dtype=float)

    def subfamily(self, indices: Sequence[int]) -> "Family":
        return Family(self.body, tuple(self.members[i] for i in indices))


class Violation(NamedTuple):
    """Member ``container_index`` contains the center of member ``center_index``."""

    container_index: int
    center_index: int


@dataclass(frozen=True)
class DepthReport:
    probe: Point
    depth: int
    containing_indices: tuple


def center_violation_matrix(f: Family, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """``V[i, j]`` is true when member ``i`` contains center ``j`` (deflated), ``i != j``."""
    v = containment_matrix(f.body, f.centers, f.ratios, f.centers, tol, deflated=True)
    np.fill_diagonal(v, False)
    return v


def strictness_violations(f: Family, tol: TolerancePolicy = DEFAULT_TOL) -> list[Violation]:
    """All ordered pairs ``(i, j)`` where member ``i`` contains the center of member ``j``.

    The test is deflated: a center on (or within tolerance of) the boundary of
    another member is not a violation.  An empty list means ``f`` is a strict
    Minkowski arrangement.
    """
    if not len(f):
        raise ValueError("family is empty")
    ii, jj = np.nonzero(center_violation_matrix(f, tol))
    return [Violation(int(i), int(j)) for i, j in zip(ii, jj)]


def is_strict(f: Family, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    return not center_violation_matrix(f, tol).any()


def depth(f: Family, probe: Sequence[float], tol: TolerancePolicy = DEFAULT_TOL) -> DepthReport:
    """Number of members containing ``probe`` (inflated predicate)."""
    q = as_point(probe, f.body.dim)
    if not len(f):
        return DepthReport(q, 0, ())
    hit = containment_matrix(f.body, f.centers, f.ratios, [q], tol)[:, 0]
    idx = tuple(int(i) for i in np.flatnonzero(hit))
    return DepthReport(q, len(idx), idx)


def depths(f: Family, probes, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Depth of every row of ``probes``; returns an integer array."""
    if not len(f):
        return np.zeros(len(probes), dtype=int)
    return containment_matrix(f.body, f.centers, f.ratios, probes, tol).sum(axis=0)


class OracleResult(NamedTuple):
    size: int
    indices: tuple
    probe: Point


def max_intersecting_strict_subfamily(f: Family, candidate_probes: Sequence[Sequence[float]],
                                      tol: TolerancePolicy = DEFAULT_TOL) -> OracleResult:
    """Largest subfamily that is strict and has a common point among ``candidate_probes``.

    For each probe, the members containing it form a conflict graph (an edge
    wherever one member contains the other's center); the answer for that
    probe is a maximum independent set, found by exhaustive branch and bound.
    Ties go to the lexicographically smallest index list, then the earliest
    probe.  The search is exhaustive over subsets, but only over the probes
    supplied.
    """
    if len(f) > MAX_EXHAUSTIVE_MEMBERS:
        raise ValueError(f"family has {len(f)} members; exhaustive search is capped at "
                         f"{MAX_EXHAUSTIVE_MEMBERS}")
    probes = [as_point(p, f.body.dim) for p in candidate_probes]
    if not probes:
        raise ValueError("candidate_probes must be nonempty")

    viol = center_violation_matrix(f, tol)
    conflict = viol | viol.T
    neighbours = [sum(1 << int(j) for j in np.flatnonzero(row)) for row in conflict]
    hits = containment_matrix(f.body, f.centers, f.ratios, probes, tol)

    best = OracleResult(0, (), probes[0])
    for k, probe in enumerate(probes):
        cand = [int(i) for i in np.flatnonzero(hits[:, k])]
        if len(cand) <= best.size:
            continue
        chosen = _max_independent(cand, neighbours)
        if len(chosen) > best.size or (len(chosen) == best.size and chosen < best.indices):
            best = OracleResult(len(chosen), chosen, probe)
    return best


def _max_independent(cand: list[int], neighbours: list[int]) -> tuple:
    """Lexicographically first maximum independent subset of ``cand`` (sorted)."""
    best: list[tuple] = [()]
    n = len(cand)

    def search(pos: int, chosen: list[int], banned: int):
        if len(chosen) + (n - pos) <= len(best[0]):
            return
        if pos == n:
            best[0] = tuple(chosen)
            return
        i = cand[pos]
        if not banned >> i & 1:
            chosen.append(i)
            search(pos + 1, chosen, banned | neighbours[i])
            chosen.pop()
        search(pos + 1, chosen, banned)

    search(0, [], 0)
    return best[0]
