"""Pragmatic null hypotheses and their set algebra.

A pragmatic null collects every parameter value within dissimilarity `delta`
of an anchor value. The shapes needed here are absolute-contrast bands
|w.theta - offset| <= delta, half-spaces, scalar intervals, the max-pairwise
band max_{i<j} |theta_i - theta_j| <= delta, and complements of any of them.
Null regions are closed by default; complements flip closedness. Boundary
comparisons use a 1e-12 tolerance throughout.
"""

from dataclasses import dataclass
from math import isinf
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NegativeDelta, NonpositiveNNT, ZeroContrast

BOUNDARY_TOL = 1e-12


class HypothesisRegion:
    """Common interface: membership tests plus dimension bookkeeping."""

    closed: bool

    def contains(self, point) -> bool:
        return bool(self.contains_many(np.atleast_2d(np.asarray(point, dtype=float)))[0])

    def contains_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (n, p) array (or (n,) when scalar)."""
        raise NotImplementedError

    @property
    def dimension(self) -> Optional[int]:
        raise NotImplementedError


def _as_points(points, dim):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        if dim == 1:
            pts = pts.reshape(-1, 1)
        else:
            pts = pts.reshape(1, -1)
    if pts.shape[1] != dim:
        raise DimensionMismatch(f"points have dimension {pts.shape[1]}, hypothesis has {dim}")
    return pts


@dataclass(frozen=True)
class Band(HypothesisRegion):
    """{theta : |weights . theta - offset| <= delta}."""

    weights: tuple
    offset: float
    delta: float
    closed: bool = True

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if self.delta < 0.0:
            raise NegativeDelta(f"delta must be nonnegative, got {self.delta}")
        if all(x == 0.0 for x in w):
            raise ZeroContrast("band weights are all zero")

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def contains_many(self, points) -> np.ndarray:
        pts = _as_points(points, self.dimension)
        dist = np.abs(pts @ np.asarray(self.weights) - self.offset)
        if self.closed:
            return dist <= self.delta + BOUNDARY_TOL
        return dist < self.delta - BOUNDARY_TOL


@dataclass(frozen=True)
class HalfSpace(HypothesisRegion):
    """{theta : weights . theta <= bound} (side="below") or >= (side="above")."""

    weights: tuple
    bound: float
    side: str = "below"
    closed: bool = True

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if self.side not in ("below", "above"):
            raise ValueError(f"side must be 'below' or 'above', got {self.side!r}")
        if all(x == 0.0 for x in w):
            raise ZeroContrast("half-space weights are all zero")

    @property
    def dimension(self) -> int:
        return len(self.weights)

    def contains_many(self, points) -> np.ndarray:
        pts = _as_points(points, self.dimension)
        val = pts @ np.asarray(self.weights)
        if self.side == "below":
            return val <= self.bound + BOUNDARY_TOL if self.closed else val < self.bound - BOUNDARY_TOL
        return val >= self.bound - BOUNDARY_TOL if self.closed else val > self.bound + BOUNDARY_TOL


@dataclass(frozen=True)
class Interval(HypothesisRegion):
    """Scalar hypothesis {phi : lo <= phi <= hi}."""

    lo: float
    hi: float
    closed: bool = True

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"interval bounds out of order: [{self.lo}, {self.hi}]")

    @property
    def dimension(self) -> int:
        return 1

    def contains_many(self, points) -> np.ndarray:
        pts = _as_points(points, 1)[:, 0]
        if self.closed:
            return (pts >= self.lo - BOUNDARY_TOL) & (pts <= self.hi + BOUNDARY_TOL)
        return (pts > self.lo + BOUNDARY_TOL) & (pts < self.hi - BOUNDARY_TOL)


@dataclass(frozen=True)
class MaxPairwiseBand(HypothesisRegion):
    """{theta in R^dim : max_{i<j} |theta_i - theta_j| <= delta}.

    Equals the intersection of all pairwise bands, which is what makes the
    consonance property testable on this shape.
    """

    delta: float
    dim: int
    closed: bool = True

    def __post_init__(self):
        if self.dim < 2:
            raise DimensionMismatch(f"max-pairwise band needs dim >= 2, got {self.dim}")
        if self.delta < 0.0:
            raise NegativeDelta(f"delta must be nonnegative, got {self.delta}")

    @property
    def dimension(self) -> int:
        return self.dim

    def contains_many(self, points) -> np.ndarray:
        pts = _as_points(points, self.dim)
        spread = pts.max(axis=1) - pts.min(axis=1)
        if self.closed:
            return spread <= self.delta + BOUNDARY_TOL
        return spread < self.delta - BOUNDARY_TOL


@dataclass(frozen=True)
class Complement(HypothesisRegion):
    """Set complement of the wrapped hypothesis."""

    inner: HypothesisRegion

    @property
    def closed(self) -> bool:
        return not self.inner.closed

    @property
    def dimension(self) -> Optional[int]:
        return self.inner.dimension

    def contains_many(self, points) -> np.ndarray:
        return ~self.inner.contains_many(points)


def build_pragmatic(anchor, dissimilarity, delta: float) -> HypothesisRegion:
    """Null region of values within `delta` of `anchor` under a dissimilarity.

    `dissimilarity` is either a weight vector (absolute contrast
    |w . theta - w . anchor| <= delta) or the string "max_pairwise"
    (largest pairwise coordinate gap at most delta). delta = 0 degenerates to
    the precise hypothesis.
    """
    if delta < 0.0:
        raise NegativeDelta(f"delta must be nonnegative, got {delta}")
    anchor_arr = np.atleast_1d(np.asarray(anchor, dtype=float))
    if isinstance(dissimilarity, str):
        if dissimilarity != "max_pairwise":
            raise ValueError(f"unknown dissimilarity {dissimilarity!r}")
        return MaxPairwiseBand(delta, anchor_arr.shape[0])
    w = np.atleast_1d(np.asarray(dissimilarity, dtype=float))
    if w.shape[0] != anchor_arr.shape[0]:
        raise DimensionMismatch("weights and anchor have different lengths")
    return Band(tuple(w), float(w @ anchor_arr), delta)


def nnt_to_delta(nnt: float) -> float:
    """Risk-difference threshold implied by a number needed to treat: 1/nnt."""
    if not nnt > 0.0:
        raise NonpositiveNNT(f"NNT must be positive, got {nnt}")
    return 1.0 / nnt


def complement(h: HypothesisRegion) -> HypothesisRegion:
    """Set complement; an involution that flips closedness.

    Complements of complements simplify structurally, and half-spaces flip
    into the opposite strict half-space rather than gaining a wrapper.
    """
    if isinstance(h, Complement):
        return h.inner
    if isinstance(h, HalfSpace):
        side = "above" if h.side == "below" else "below"
        return HalfSpace(h.weights, h.bound, side, closed=not h.closed)
    return Complement(h)


def is_whole_space(h: HypothesisRegion) -> bool:
    """True when the hypothesis places no constraint at all."""
    if isinstance(h, (Band, MaxPairwiseBand)):
        return isinf(h.delta)
    if isinstance(h, Interval):
        return isinf(h.lo) and h.lo < 0 and isinf(h.hi) and h.hi > 0
    return False


def _band_image_interval(h: Band):
    """Range of w.theta over the band, i.e. [offset - delta, offset + delta]."""
    return h.offset - h.delta, h.offset + h.delta


def _scalar_interval(h) -> Optional[tuple]:
    """(lo, hi) of the scalar set when h is a 1-D band or interval."""
    if isinstance(h, Interval):
        return h.lo, h.hi
    if isinstance(h, Band) and h.dimension == 1:
        w = h.weights[0]
        lo, hi = (h.offset - h.delta) / w, (h.offset + h.delta) / w
        return (lo, hi) if lo <= hi else (hi, lo)
    return None


def _interval_subset(inner, outer) -> bool:
    return inner[0] >= outer[0] - BOUNDARY_TOL and inner[1] <= outer[1] + BOUNDARY_TOL


def is_subset(h1: HypothesisRegion, h2: HypothesisRegion) -> Optional[bool]:
    """Three-valued subset test: True, False, or None when undecidable.

    Decidable pairs: scalar interval shapes against each other, bands with
    parallel weights, max-pairwise bands against contrast bands (the image of
    the max-pairwise band under a contrast w is exactly
    [-delta * sum|w|/2, delta * sum|w|/2]), and complements by duality.
    Everything else returns None rather than guessing.
    """
    if h1 == h2:
        return True
    if h1.dimension != h2.dimension:
        return None
    if is_whole_space(h2):
        return True
    if isinstance(h1, Complement) and isinstance(h2, Complement):
        return is_subset(h2.inner, h1.inner)
    if isinstance(h1, Complement) or isinstance(h2, Complement):
        return None

    s1, s2 = _scalar_interval(h1), _scalar_interval(h2)
    if s1 is not None and s2 is not None:
        return _interval_subset(s1, s2)

    if isinstance(h1, Band) and isinstance(h2, Band):
        w1 = np.asarray(h1.weights)
        w2 = np.asarray(h2.weights)
        if w1.shape != w2.shape:
            return None
        s = float(w2 @ w1) / float(w1 @ w1)
        if not np.allclose(w2, s * w1, atol=1e-12 * max(1.0, float(np.abs(w2).max()))):
            return None
        lo1, hi1 = _band_image_interval(h1)
        img = sorted((s * lo1, s * hi1))
        return _interval_subset(img, _band_image_interval(h2))

    if isinstance(h1, MaxPairwiseBand) and isinstance(h2, Band):
        w = np.asarray(h2.weights)
        if abs(float(w.sum())) > 1e-12 * float(np.abs(w).max()):
            # non-contrast weights: the image of the max-pairwise band under
            # w.theta is unbounded, so only an unconstrained band contains it
            return True if isinf(h2.delta) else False
        half_image = h1.delta * float(np.abs(w).sum()) / 2.0
        return _interval_subset((-half_image, half_image), _band_image_interval(h2))

    if isinstance(h1, Band) and isinstance(h2, MaxPairwiseBand):
        if h2.dim == 2:
            w = np.asarray(h1.weights)
            if abs(float(w.sum())) > 1e-12 * float(np.abs(w).max()):
                return False
            # w = (s, -s): theta_1 - theta_2 ranges over the band image / s
            s = h1.weights[0]
            lo, hi = sorted(((h1.offset - h1.delta) / s, (h1.offset + h1.delta) / s))
            return _interval_subset((lo, hi), (-h2.delta, h2.delta))
        return False  # bands in dim >= 3 contain unbounded-spread points

    if isinstance(h1, MaxPairwiseBand) and isinstance(h2, MaxPairwiseBand):
        if h1.dim != h2.dim:
            return None
        return h1.delta <= h2.delta + BOUNDARY_TOL

    return None
