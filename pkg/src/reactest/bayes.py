"""Bayesian route: conjugate posteriors, HPD regions, and e-values.

The credible-region counterpart of the three-way rule thresholds the
posterior density at its empirical (1 - level) quantile over a draw cloud,
then applies the same membership decision as a grid-backed region. All
models here are conjugate (Normal-inverse-gamma for group means, Jeffreys
Beta for proportions), so densities are exact; no kernel estimation is used.
Draws must come from a seeded generator.
"""

from dataclasses import dataclass

import numpy as np

from .decision import Decision, decide
from .errors import EmptySample, InvalidCounts, TooFewDraws
from .hypotheses import HypothesisRegion
from .quantiles import lgamma
from .regions import GridRegion

MIN_DRAWS = 1000
DEFAULT_DRAWS = 50_000

_LOG_PI = 1.1447298858494002


@dataclass(frozen=True)
class NIGPosterior:
    """Normal-inverse-gamma over (mu, sigma^2), parameterized (m, k, a, b).

    m is the location, k the prior precision scale on mu, a the shape and b
    the rate of the inverse-gamma over sigma^2. The mu marginal is Student-t
    with 2a df, location m, scale sqrt(b / (a k)).
    """

    m: float
    k: float
    a: float
    b: float

    def __post_init__(self):
        if self.k <= 0.0 or self.a <= 0.0 or self.b <= 0.0:
            raise ValueError("k, a, b must all be positive")

    def mu_scale(self) -> float:
        return float(np.sqrt(self.b / (self.a * self.k)))

    def mu_logpdf(self, x) -> np.ndarray:
        """Log density of the Student-t marginal of mu, vectorized."""
        df = 2.0 * self.a
        scale = self.mu_scale()
        z = (np.asarray(x, dtype=float) - self.m) / scale
        const = (
            lgamma(0.5 * (df + 1.0))
            - lgamma(0.5 * df)
            - 0.5 * (np.log(df) + _LOG_PI)
            - np.log(scale)
        )
        return const - 0.5 * (df + 1.0) * np.log1p(z * z / df)

    def sample_mu(self, size: int, rng: np.random.Generator) -> np.ndarray:
        """Exact draws of mu: sigma^2 from the inverse gamma, then mu | sigma^2."""
        sigma_sq = 1.0 / rng.gamma(self.a, 1.0 / self.b, size)
        return rng.normal(self.m, np.sqrt(sigma_sq / self.k))


def nig_update(prior: NIGPosterior, sample) -> NIGPosterior:
    """Conjugate update of a Normal-inverse-gamma prior with Gaussian data."""
    y = np.asarray(sample, dtype=float).ravel()
    n = y.size
    if n == 0:
        raise EmptySample("cannot update with an empty sample")
    ybar = y.mean()
    ssd = float(np.sum((y - ybar) ** 2))
    k_new = prior.k + n
    m_new = (prior.k * prior.m + n * ybar) / k_new
    a_new = prior.a + 0.5 * n
    b_new = prior.b + 0.5 * ssd + 0.5 * prior.k * n * (ybar - prior.m) ** 2 / k_new
    return NIGPosterior(m_new, k_new, a_new, b_new)


@dataclass(frozen=True)
class BetaPosterior:
    """Beta(a, b) over a success probability."""

    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0.0 or self.b <= 0.0:
            raise ValueError("Beta parameters must be positive")

    @property
    def mean(self) -> float:
        return self.a / (self.a + self.b)

    def logpdf(self, x) -> np.ndarray:
        xs = np.asarray(x, dtype=float)
        const = lgamma(self.a + self.b) - lgamma(self.a) - lgamma(self.b)
        with np.errstate(divide="ignore"):
            return const + (self.a - 1.0) * np.log(xs) + (self.b - 1.0) * np.log1p(-xs)

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return rng.beta(self.a, self.b, size)


def beta_jeffreys_posterior(successes: int, trials: int) -> BetaPosterior:
    """Posterior under the Jeffreys Beta(1/2, 1/2) prior for a proportion."""
    if successes < 0 or trials < 0 or successes > trials:
        raise InvalidCounts(f"need 0 <= successes <= trials, got {successes}/{trials}")
    return BetaPosterior(successes + 0.5, trials - successes + 0.5)


@dataclass(frozen=True, eq=False)
class HPDRegion:
    """Highest-density region represented by a draw cloud and a threshold.

    Draws with log density at or above the threshold are the region members;
    by construction their fraction equals `level` up to quantile granularity.
    """

    samples: np.ndarray
    log_density_at_sample: np.ndarray
    threshold: float
    level: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        ld = np.asarray(self.log_density_at_sample, dtype=float)
        if samples.shape[0] != ld.shape[0]:
            raise ValueError("one log density per draw is required")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "log_density_at_sample", ld)

    @property
    def member_mask(self) -> np.ndarray:
        return self.log_density_at_sample >= self.threshold

    def member_points(self) -> np.ndarray:
        return self.samples[self.member_mask]

    def hull(self) -> tuple:
        """(min, max) of the retained draws; an interval summary for 1-D clouds."""
        pts = self.member_points()
        return float(pts.min()), float(pts.max())


def _eval_log_density(log_density, draws) -> np.ndarray:
    ld = np.asarray(log_density(draws), dtype=float)
    if ld.shape != (np.asarray(draws).shape[0],):
        raise ValueError("log_density must return one value per draw")
    return ld


def hpd_region(draws, log_density, level: float) -> HPDRegion:
    """Highest-density region from posterior draws and their exact density.

    The threshold is the empirical (1 - level) quantile of the log densities,
    so the retained fraction matches `level` within quantile granularity.
    """
    pts = np.asarray(draws, dtype=float)
    if pts.shape[0] < MIN_DRAWS:
        raise TooFewDraws(f"need at least {MIN_DRAWS} draws, got {pts.shape[0]}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    ld = _eval_log_density(log_density, pts)
    threshold = float(np.quantile(ld, 1.0 - level))
    return HPDRegion(pts, ld, threshold, level)


def e_value(theta0, draws, log_density) -> float:
    """Posterior probability that the density is below that of theta0.

    1 means theta0 sits at the mode, 0 that it is far in the tails; the value
    at the (1 - alpha) HPD boundary is alpha.
    """
    pts = np.asarray(draws, dtype=float)
    if pts.shape[0] < MIN_DRAWS:
        raise TooFewDraws(f"need at least {MIN_DRAWS} draws, got {pts.shape[0]}")
    ld = _eval_log_density(log_density, pts)
    point = np.asarray(theta0, dtype=float)
    ld0 = float(np.asarray(log_density(point.reshape(1, *point.shape)))[0])
    return float(1.0 - np.mean(ld >= ld0))


def breact_decide(hpd: HPDRegion, h: HypothesisRegion) -> Decision:
    """Three-way decision with the HPD draw cloud standing in for the region."""
    grid = GridRegion(hpd.samples, hpd.member_mask, hpd.level)
    return decide(grid, h)


def posterior_prob(h: HypothesisRegion, draws) -> float:
    """Fraction of posterior draws inside the hypothesis."""
    pts = np.asarray(draws, dtype=float)
    if pts.shape[0] == 0:
        raise EmptySample("no posterior draws")
    return float(np.mean(h.contains_many(pts)))


def proportion_pair_hpd(
    post_t: BetaPosterior,
    post_c: BetaPosterior,
    num_draws: int = DEFAULT_DRAWS,
    level: float = 0.95,
    rng=None,
) -> HPDRegion:
    """Joint HPD over (treatment, control) success probabilities.

    The joint density of two independent Beta posteriors is their product and
    stays analytic, so risk-difference hypotheses become half-spaces
    p_t - p_c <= delta over this 2-D cloud.
    """
    if rng is None:
        raise ValueError("a seeded numpy Generator is required for reproducibility")
    draws = np.column_stack([post_t.sample(num_draws, rng), post_c.sample(num_draws, rng)])

    def log_density(pts):
        pts2 = np.atleast_2d(np.asarray(pts, dtype=float))
        return post_t.logpdf(pts2[:, 0]) + post_c.logpdf(pts2[:, 1])

    return hpd_region(draws, log_density, level)


def group_means_hpd(
    posteriors, num_draws: int = DEFAULT_DRAWS, level: float = 0.95, rng=None
) -> HPDRegion:
    """Joint HPD for a vector of independent group means.

    Draws each mu_i from its Student-t marginal and thresholds the product of
    the marginal densities, which is the exact joint density under
    independence across groups.
    """
    if rng is None:
        raise ValueError("a seeded numpy Generator is required for reproducibility")
    draws = np.column_stack([post.sample_mu(num_draws, rng) for post in posteriors])

    def log_density(pts):
        pts2 = np.atleast_2d(np.asarray(pts, dtype=float))
        total = np.zeros(pts2.shape[0])
        for idx, post in enumerate(posteriors):
            total += post.mu_logpdf(pts2[:, idx])
        return total

    return hpd_region(draws, log_density, level)
