"""Local-to-global blue/red density: hypothesis check, certificates, verification.

With red homothets ``K_i = p_i + rho_i K`` and blue points ``B``, the local
hypothesis asks ``|B & K_i| >= lam * |R & K_i|`` for every ``i``.  A
certificate records a greedy strict subfamily ``D'`` covering ``R`` and the
chain

    |R| <= sum_{D'} |R & K| <= sum_{D'} |B & K| / lam <= M |B| / lam

where ``M`` bounds the depth of any blue point in ``D'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arrangement import Family, is_strict
from .cover import greedy_cover
from .geometry import DEFAULT_TOL, Homothet, Kind, NormBody, TolerancePolicy, as_point, containment_matrix

# absorbs representation error of lam (e.g. 1/3) in blue >= lam * red
LAMBDA_SLACK = 1e-12


class HypothesisError(ValueError):
    """The local hypothesis fails for some red member."""


class DepthBoundError(ValueError):
    """A blue point lies in more selected members than the depth bound allows."""


@dataclass(frozen=True)
class Instance:
    body: NormBody
    red: tuple
    blue: tuple
    lam: float = 1.0

    def __post_init__(self):
        red = tuple(r if isinstance(r, Homothet) else Homothet(*r) for r in self.red)
        if not red:
            raise ValueError("instance needs at least one red point")
        for r in red:
            if r.dim != self.body.dim:
                raise ValueError(f"red point {r.center} does not have dimension {self.body.dim}")
        blue = tuple(as_point(b, self.body.dim) for b in self.blue)
        lam = float(self.lam)
        if not (math.isfinite(lam) and lam > 0):
            raise ValueError(f"lambda must be positive and finite, got {self.lam}")
        object.__setattr__(self, "red", red)
        object.__setattr__(self, "blue", blue)
        object.__setattr__(self, "lam", lam)

    @property
    def dim(self) -> int:
        return self.body.dim

    @property
    def family(self) -> Family:
        return Family(self.body, self.red)

    @property
    def red_points(self) -> np.ndarray:
        return np.array([r.center for r in self.red], dtype=float).reshape(-1, self.dim)

    @property
    def blue_points(self) -> np.ndarray:
        return np.array(self.blue, dtype=float).reshape(-1, self.dim)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.red], dtype=float)


@dataclass(frozen=True)
class HypothesisReport:
    per_member: tuple  # (red_count, blue_count, satisfied)
    all_satisfied: bool

    def failing(self) -> list[int]:
        return [i for i, (_, _, ok) in enumerate(self.per_member) if not ok]


@dataclass(frozen=True)
class Certificate:
    selected_indices: tuple
    per_selected: tuple  # (red_count, blue_count)
    depth_bound: int
    chain: tuple  # (sum red, sum blue / lam, M |B| / lam)
    max_blue_depth: int

    def to_json(self) -> dict:
        return {
            "selected": list(self.selected_indices),
            "per_selected": [list(p) for p in self.per_selected],
            "depth_bound": self.depth_bound,
            "chain": list(self.chain),
            "max_blue_depth": self.max_blue_depth,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Certificate":
        return cls(
            tuple(int(i) for i in doc["selected"]),
            tuple((int(r), int(b)) for r, b in doc["per_selected"]),
            int(doc["depth_bound"]),
            tuple(float(c) for c in doc["chain"]),
            int(doc["max_blue_depth"]),
        )


@dataclass
class CertificateCheck:
    ok: bool = True
    reasons: list = field(default_factory=list)

    def fail(self, reason: str):
        self.ok = False
        self.reasons.append(reason)

    def __bool__(self):
        return self.ok


def default_depth_bound(body: NormBody) -> int:
    """Known maximum size of an intersecting strict arrangement for ``body``.

    5 for the Euclidean disk, ``2**d`` for the cube, and the general ``3**d``
    ceiling otherwise.
    """
    if body.kind is Kind.EUCLIDEAN and body.dim == 2:
        return 5
    if body.kind is Kind.LINF:
        return 2 ** body.dim
    return 3 ** body.dim


def satisfies(blue_count, red_count, lam: float):
    return blue_count >= lam * red_count - LAMBDA_SLACK


def member_counts(inst: Instance, indices=None, tol: TolerancePolicy = DEFAULT_TOL):
    """Red and blue counts (with multiplicity) inside each listed red member."""
    idx = np.arange(len(inst.red)) if indices is None else np.asarray(indices, dtype=int)
    centers = inst.red_points[idx]
    ratios = inst.ratios[idx]
    reds = containment_matrix(inst.body, centers, ratios, inst.red_points, tol).sum(axis=1)
    if inst.blue:
        blues = containment_matrix(inst.body, centers, ratios, inst.blue_points, tol).sum(axis=1)
    else:
        blues = np.zeros(len(idx), dtype=int)
    return reds.astype(int), blues.astype(int)


def check_hypothesis(inst: Instance, tol: TolerancePolicy = DEFAULT_TOL) -> HypothesisReport:
    reds, blues = member_counts(inst, tol=tol)
    rows = tuple((int(r), int(b), bool(satisfies(b, r, inst.lam))) for r, b in zip(reds, blues))
    return HypothesisReport(rows, all(ok for _, _, ok in rows))


def global_ratio(inst: Instance) -> float:
    return len(inst.blue) / len(inst.red)


def blue_depths(inst: Instance, indices, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Depth of each blue point within the members ``indices``."""
    if not inst.blue or not len(indices):
        return np.zeros(len(inst.blue), dtype=int)
    idx = np.asarray(indices, dtype=int)
    hit = containment_matrix(inst.body, inst.red_points[idx], inst.ratios[idx], inst.blue_points, tol)
    return hit.sum(axis=0)


def make_certificate(inst: Instance, depth_bound: int | None = None,
                     tol: TolerancePolicy = DEFAULT_TOL) -> Certificate:
    """Run the greedy cover and record the counting chain.

    Raises :class:`HypothesisError` if some red member violates the local
    hypothesis and :class:`DepthBoundError` if a blue point is found in more
    than ``depth_bound`` selected members.
    """
    if depth_bound is None:
        depth_bound = default_depth_bound(inst.body)
    if depth_bound < 1:
        raise ValueError("depth_bound must be a positive integer")
    report = check_hypothesis(inst, tol)
    if not report.all_satisfied:
        raise HypothesisError(f"local hypothesis fails for red members {report.failing()}")

    sel = greedy_cover(inst.family, tol).selected_indices
    reds, blues = member_counts(inst, sel, tol)
    max_depth = int(blue_depths(inst, sel, tol).max(initial=0))
    if max_depth > depth_bound:
        raise DepthBoundError(f"a blue point lies in {max_depth} selected members, "
                              f"more than the depth bound {depth_bound}")
    chain = (
        float(reds.sum()),
        float(blues.sum()) / inst.lam,
        depth_bound * len(inst.blue) / inst.lam,
    )
    return Certificate(
        tuple(sel),
        tuple((int(r), int(b)) for r, b in zip(reds, blues)),
        int(depth_bound),
        chain,
        max_depth,
    )


def _leq(a, b, scale=1.0):
    return a <= b + 1e-9 * max(1.0, abs(scale))


def verify_certificate(inst: Instance, cert: Certificate, tol: TolerancePolicy = DEFAULT_TOL) -> CertificateCheck:
    """Recompute everything the certificate claims; never trusts its numbers."""
    out = CertificateCheck()
    n = len(inst.red)
    sel = list(cert.selected_indices)
    if not sel:
        out.fail("no members selected")
        return out
    if any(not (0 <= i < n) for i in sel) or len(set(sel)) != len(sel):
        out.fail("selected indices out of range or repeated")
        return out
    if cert.depth_bound < 1:
        out.fail("depth bound must be positive")
        return out

    fam = inst.family.subfamily(sel)
    if not is_strict(fam, tol):
        out.fail("selected members do not form a strict arrangement")
    covered = containment_matrix(inst.body, fam.centers, fam.ratios, inst.red_points, tol).any(axis=0)
    if not covered.all():
        out.fail(f"red points {np.flatnonzero(~covered).tolist()} are not covered")

    reds, blues = member_counts(inst, sel, tol)
    if len(cert.per_selected) != len(sel) or any(
            (r, b) != tuple(p) for r, b, p in zip(reds.tolist(), blues.tolist(), cert.per_selected)):
        out.fail("per-member counts do not match recomputation")
    for i, r, b in zip(sel, reds, blues):
        if not satisfies(b, r, inst.lam):
            out.fail(f"member {i} violates the local hypothesis ({b} blue < {inst.lam} * {r} red)")

    max_depth = int(blue_depths(inst, sel, tol).max(initial=0))
    if max_depth != cert.max_blue_depth:
        out.fail(f"recorded max blue depth {cert.max_blue_depth} != recomputed {max_depth}")
    if max_depth > cert.depth_bound:
        out.fail(f"blue depth {max_depth} exceeds depth bound {cert.depth_bound}")

    chain = (float(reds.sum()), float(blues.sum()) / inst.lam, cert.depth_bound * len(inst.blue) / inst.lam)
    if len(cert.chain) != 3 or any(not math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)
                                   for a, b in zip(chain, cert.chain)):
        out.fail(f"recorded chain {tuple(cert.chain)} != recomputed {chain}")
    scale = chain[-1]
    if not _leq(n, cert.chain[0], scale):
        out.fail(f"chain starts below |R| = {n}")
    for a, b in zip(cert.chain, cert.chain[1:]):
        if not _leq(a, b, scale):
            out.fail(f"chain is not non-decreasing: {tuple(cert.chain)}")
            break
    bound = inst.lam / cert.depth_bound
    if global_ratio(inst) < bound - LAMBDA_SLACK:
        out.fail(f"|B|/|R| = {global_ratio(inst)} is below lam/M = {bound}")
    return out
