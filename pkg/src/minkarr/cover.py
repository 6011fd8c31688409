"""Greedy selection of a covering strict Minkowski arrangement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrangement import Family
from .geometry import DEFAULT_TOL, TolerancePolicy, containment_matrix


@dataclass(frozen=True)
class CoverResult:
    selected_indices: tuple
    covered_by: dict

    def to_json(self) -> dict:
        return {
            "selected": list(self.selected_indices),
            "covered_by": {str(k): v for k, v in sorted(self.covered_by.items())},
        }


def greedy_order(f: Family) -> np.ndarray:
    """Indices sorted by non-increasing ratio, ties by smaller index."""
    return np.lexsort((np.arange(len(f)), -f.ratios))


def greedy_cover(f: Family, tol: TolerancePolicy = DEFAULT_TOL) -> CoverResult:
    """Pick members largest ratio first, skipping any whose center is already covered.

    Member ``i`` is assumed to be centered at the point it is responsible for
    covering.  The chosen members cover every center and no chosen member
    contains the center of another: a later pick has ratio at most that of
    every earlier pick and its center was outside all of them.
    """
    n = len(f)
    if not n:
        raise ValueError("family is empty")
    covered_by: dict[int, int] = {}
    selected: list[int] = []
    uncovered = np.ones(n, dtype=bool)
    for i in greedy_order(f):
        i = int(i)
        if not uncovered[i]:
            continue
        selected.append(i)
        rest = np.flatnonzero(uncovered)
        hit = containment_matrix(f.body, f.centers[i], f.ratios[i:i + 1], f.centers[rest], tol)[0]
        hit[rest == i] = True
        for j in rest[hit]:
            covered_by[int(j)] = i
        uncovered[rest[hit]] = False
    return CoverResult(tuple(selected), covered_by)
