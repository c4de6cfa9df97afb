"""Frequentist confidence regions and their one-dimensional reductions.

Three region shapes are supported: scalar intervals, ellipsoids for a vector
of group means, and grid regions obtained by inverting a p-value family.
`contrast_extent` and `project_ellipsoid` reduce the multivariate shapes to
the low-dimensional sets the decision rule actually compares.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateVariance,
    DimensionMismatch,
    EmptyGrid,
    InsufficientData,
    ZeroContrast,
)
from .quantiles import chi2_ppf, t_ppf

_SYM_TOL = 1e-10


@dataclass(frozen=True)
class IntervalRegion:
    """A scalar confidence interval [lower, upper] at confidence `level`."""

    lower: float
    upper: float
    level: float
    point_estimate: float

    def __post_init__(self):
        if not self.lower <= self.point_estimate <= self.upper:
            raise ValueError(
                f"point estimate {self.point_estimate} outside [{self.lower}, {self.upper}]"
            )
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")

    @property
    def dimension(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class EllipsoidRegion:
    """The set {mu : (center - mu)' P (center - mu) <= radius_sq}.

    `precision` is the inverse covariance of the center estimate, so for
    independent group means it is diag(n_i / s_i^2). `radius_sq` is the
    chi-square quantile matching `level`.
    """

    center: np.ndarray
    precision: np.ndarray
    radius_sq: float
    level: float
    _chol: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        center = np.atleast_1d(np.asarray(self.center, dtype=float)).copy()
        precision = np.asarray(self.precision, dtype=float).copy()
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "precision", precision)
        p = center.shape[0]
        if precision.shape != (p, p):
            raise DimensionMismatch(
                f"precision shape {precision.shape} does not match center length {p}"
            )
        if not np.allclose(precision, precision.T, atol=_SYM_TOL, rtol=0.0):
            raise ValueError("precision matrix is not symmetric within 1e-10")
        try:
            chol = np.linalg.cholesky(precision)
        except np.linalg.LinAlgError as exc:
            raise ValueError("precision matrix is not positive definite") from exc
        object.__setattr__(self, "_chol", chol)
        if not self.radius_sq > 0.0:
            raise ValueError(f"radius_sq must be positive, got {self.radius_sq}")
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        center.flags.writeable = False
        precision.flags.writeable = False

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    def covariance(self) -> np.ndarray:
        """Inverse of the precision matrix, computed through its Cholesky factor."""
        linv = np.linalg.solve(self._chol, np.eye(self.dimension))
        return linv.T @ linv

    def mahalanobis_sq(self, points: np.ndarray) -> np.ndarray:
        """(center - point)' P (center - point) for each row of `points`."""
        diff = np.atleast_2d(points) - self.center
        return np.einsum("ij,jk,ik->i", diff, self.precision, diff)


@dataclass(frozen=True, eq=False)
class GridRegion:
    """A confidence region represented by member points of a finite grid."""

    grid_points: np.ndarray
    membership: np.ndarray
    level: float

    def __post_init__(self):
        pts = np.asarray(self.grid_points, dtype=float).copy()
        mem = np.asarray(self.membership, dtype=bool).copy()
        if pts.shape[0] != mem.shape[0]:
            raise DimensionMismatch("membership length does not match grid length")
        object.__setattr__(self, "grid_points", pts)
        object.__setattr__(self, "membership", mem)
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level}")
        pts.flags.writeable = False
        mem.flags.writeable = False

    @property
    def dimension(self) -> int:
        return 1 if self.grid_points.ndim == 1 else self.grid_points.shape[1]

    def member_points(self) -> np.ndarray:
        return self.grid_points[self.membership]


def _clean_sample(sample, minimum, name):
    arr = np.asarray(sample, dtype=float).ravel()
    if arr.size < minimum:
        raise InsufficientData(f"{name} needs at least {minimum} observations, got {arr.size}")
    return arr


def welch_mean_diff_interval(sample_a, sample_b, level: float) -> IntervalRegion:
    """Confidence interval for mean(a) - mean(b) with unequal variances.

    Uses the Welch standard error and Satterthwaite degrees of freedom:
    df = (va/na + vb/nb)^2 / ((va/na)^2/(na-1) + (vb/nb)^2/(nb-1)).
    """
    a = _clean_sample(sample_a, 2, "sample_a")
    b = _clean_sample(sample_b, 2, "sample_b")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    na, nb = a.size, b.size
    va, vb = a.var(ddof=1), b.var(ddof=1)
    se2 = va / na + vb / nb
    if se2 <= 0.0:
        raise DegenerateVariance("both samples have zero variance")
    df = se2 * se2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    diff = a.mean() - b.mean()
    half = t_ppf((1.0 + level) / 2.0, df) * np.sqrt(se2)
    return IntervalRegion(diff - half, diff + half, level, diff)


def mean_vector_ellipsoid(groups, level: float) -> EllipsoidRegion:
    """Ellipsoidal confidence region for a vector of independent group means.

    Center is the per-group sample mean, precision diag(n_i / s_i^2), and the
    squared radius is the chi-square quantile at probability `level` with one
    degree of freedom per group.
    """
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    arrs = [_clean_sample(g, 2, f"group {i}") for i, g in enumerate(groups)]
    p = len(arrs)
    if p < 1:
        raise InsufficientData("at least one group is required")
    means = np.array([g.mean() for g in arrs])
    variances = np.array([g.var(ddof=1) for g in arrs])
    if np.any(variances <= 0.0):
        raise DegenerateVariance("every group needs a positive sample variance")
    ns = np.array([g.size for g in arrs], dtype=float)
    precision = np.diag(ns / variances)
    return EllipsoidRegion(means, precision, chi2_ppf(level, p), level)


def cohens_d_interval(sample_a, sample_b, level: float) -> IntervalRegion:
    """Confidence interval for the pooled-sd standardized mean difference.

    The point estimate is d = (mean(a) - mean(b)) / s_pooled and the standard
    error uses the large-sample form
    SE_d = sqrt((na+nb)/(na*nb) + d^2 / (2(na+nb))) with na+nb-2 t-df.
    """
    a = np.asarray(sample_a, dtype=float).ravel()
    b = np.asarray(sample_b, dtype=float).ravel()
    na, nb = a.size, b.size
    if na < 1 or nb < 1 or na + nb < 3:
        raise InsufficientData("needs na, nb >= 1 and na + nb >= 3")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    ssd = np.sum((a - a.mean()) ** 2) + np.sum((b - b.mean()) ** 2)
    pooled_var = ssd / (na + nb - 2)
    if pooled_var <= 0.0:
        raise DegenerateVariance("pooled standard deviation is zero")
    d = (a.mean() - b.mean()) / np.sqrt(pooled_var)
    n = na + nb
    se_d = np.sqrt(n / (na * nb) + d * d / (2.0 * n))
    half = t_ppf((1.0 + level) / 2.0, n - 2) * se_d
    return IntervalRegion(d - half, d + half, level, d)


def invert_pvalue_region(pvalue_fn, grid, alpha: float) -> GridRegion:
    """Region of grid points whose p-value strictly exceeds alpha.

    The boundary is excluded: membership is pvalue_fn(theta) > alpha, and the
    recorded confidence level is 1 - alpha.
    """
    pts = np.asarray(grid, dtype=float)
    if pts.size == 0:
        raise EmptyGrid("grid has no points")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    membership = np.fromiter(
        (float(pvalue_fn(theta)) > alpha for theta in pts), dtype=bool, count=pts.shape[0]
    )
    return GridRegion(pts, membership, 1.0 - alpha)


def contrast_extent(region, weights, offset: float = 0.0) -> IntervalRegion:
    """Exact range of weights . theta + offset over the region.

    For an ellipsoid the extrema are center value -/+ sqrt(radius_sq * w'P^-1 w),
    computed through the Cholesky factor of the precision matrix. The result
    keeps the region's confidence level.
    """
    w = np.atleast_1d(np.asarray(weights, dtype=float))
    if np.all(w == 0.0):
        raise ZeroContrast("contrast weights are all zero")
    if isinstance(region, IntervalRegion):
        if w.shape[0] != 1:
            raise DimensionMismatch(f"interval region is 1-D, got {w.shape[0]} weights")
        ends = sorted((w[0] * region.lower + offset, w[0] * region.upper + offset))
        return IntervalRegion(ends[0], ends[1], region.level, w[0] * region.point_estimate + offset)
    if isinstance(region, EllipsoidRegion):
        if w.shape[0] != region.dimension:
            raise DimensionMismatch(
                f"region is {region.dimension}-D, got {w.shape[0]} weights"
            )
        z = np.linalg.solve(region._chol, w)
        half = float(np.sqrt(region.radius_sq * (z @ z)))
        mid = float(w @ region.center) + offset
        return IntervalRegion(mid - half, mid + half, region.level, mid)
    raise DimensionMismatch(f"contrast_extent does not support {type(region).__name__}")


def project_ellipsoid(region: EllipsoidRegion, indices) -> EllipsoidRegion:
    """Shadow of the ellipsoid on two coordinates.

    A point (u, v) lies in the projection iff some completion of the dropped
    coordinates lies in the full ellipsoid; that shadow is itself an ellipse
    whose shape matrix is the (i, j) submatrix of the covariance P^-1, with
    the same radius_sq.
    """
    i, j = indices
    p = region.dimension
    if i == j or not (0 <= i < p) or not (0 <= j < p):
        raise DimensionMismatch(f"indices ({i}, {j}) invalid for a {p}-D region")
    cov = region.covariance()
    sub = cov[np.ix_([i, j], [i, j])]
    det = sub[0, 0] * sub[1, 1] - sub[0, 1] * sub[1, 0]
    prec2 = np.array([[sub[1, 1], -sub[0, 1]], [-sub[1, 0], sub[0, 0]]]) / det
    prec2 = 0.5 * (prec2 + prec2.T)
    return EllipsoidRegion(region.center[[i, j]], prec2, region.radius_sq, region.level)
