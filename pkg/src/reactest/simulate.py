"""Seeded Monte Carlo verification of the error-rate guarantees.

Replications run in fixed-size chunks, each chunk drawing from its own
counter-based Philox substream keyed by (seed, stream). Chunks are therefore
independent of execution order: serial and parallel runs, and reruns with
the same seed, produce bit-identical reports.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .decision import classify_extents
from .errors import DimensionMismatch, TooFewReps
from .hypotheses import BOUNDARY_TOL
from .quantiles import chi2_ppf, t_ppf_array

REPS_PER_CHUNK = 4096
_MASK64 = (1 << 64) - 1

ACCEPT, AGNOSTIC, REJECT = 0.0, 0.5, 1.0


def _chunk_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & _MASK64, stream & _MASK64]))


@dataclass(frozen=True)
class Scenario:
    """Gaussian data-generating model: one mean/sd/n triple per group."""

    group_means: tuple
    group_sds: tuple
    group_ns: tuple
    delta: float
    alpha: float

    def __post_init__(self):
        means = tuple(float(x) for x in self.group_means)
        sds = tuple(float(x) for x in self.group_sds)
        ns = tuple(int(x) for x in self.group_ns)
        object.__setattr__(self, "group_means", means)
        object.__setattr__(self, "group_sds", sds)
        object.__setattr__(self, "group_ns", ns)
        if not len(means) == len(sds) == len(ns):
            raise DimensionMismatch("group_means, group_sds, group_ns must have equal length")
        if any(s <= 0.0 for s in sds):
            raise ValueError("group sds must be positive")
        if any(n < 2 for n in ns):
            raise ValueError("group sizes must be at least 2")
        if self.delta < 0.0:
            raise ValueError("delta must be nonnegative")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")

    @property
    def num_groups(self) -> int:
        return len(self.group_means)

    def to_json_dict(self) -> dict:
        return {
            "group_means": list(self.group_means),
            "group_sds": list(self.group_sds),
            "group_ns": list(self.group_ns),
            "delta": self.delta,
            "alpha": self.alpha,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Scenario":
        return cls(
            tuple(data["group_means"]),
            tuple(data["group_sds"]),
            tuple(data["group_ns"]),
            float(data["delta"]),
            float(data["alpha"]),
        )


@dataclass(frozen=True)
class ErrorRateReport:
    """Monte Carlo decision rates for one scenario.

    For two-group runs the rates describe the single pairwise hypothesis and
    the fwer_* fields coincide with them. For multi-group runs type_i/type_ii
    equal fwer_i/fwer_ii (family-wise events over all pairwise bands plus the
    max-pairwise band) and the decision rates are averaged over the family.
    """

    type_i: float
    type_ii: float
    accept_rate: float
    reject_rate: float
    agnostic_rate: float
    fwer_i: float
    fwer_ii: float
    fwer_any: float
    reps: int
    seed: int

    def __post_init__(self):
        for name in ("type_i", "type_ii", "accept_rate", "reject_rate",
                     "agnostic_rate", "fwer_i", "fwer_ii", "fwer_any"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} outside [0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "type_i": self.type_i,
            "type_ii": self.type_ii,
            "accept_rate": self.accept_rate,
            "reject_rate": self.reject_rate,
            "agnostic_rate": self.agnostic_rate,
            "fwer_i": self.fwer_i,
            "fwer_ii": self.fwer_ii,
            "fwer_any": self.fwer_any,
            "reps": self.reps,
            "seed": self.seed,
        }


def _chunk_sizes(reps: int):
    full, rest = divmod(reps, REPS_PER_CHUNK)
    sizes = [REPS_PER_CHUNK] * full
    if rest:
        sizes.append(rest)
    return sizes


def _welch_codes(scenario: Scenario, rng: np.random.Generator, m: int) -> np.ndarray:
    """Decision codes (0, 1/2, 1) for m fresh Welch-interval replications."""
    (mu1, mu2), (sd1, sd2), (n1, n2) = (
        scenario.group_means, scenario.group_sds, scenario.group_ns)
    x = rng.normal(mu1, sd1, (m, n1))
    y = rng.normal(mu2, sd2, (m, n2))
    m1, m2 = x.mean(axis=1), y.mean(axis=1)
    v1, v2 = x.var(axis=1, ddof=1), y.var(axis=1, ddof=1)
    se2 = v1 / n1 + v2 / n2
    df = se2 * se2 / ((v1 / n1) ** 2 / (n1 - 1) + (v2 / n2) ** 2 / (n2 - 1))
    half = t_ppf_array(1.0 - scenario.alpha / 2.0, df) * np.sqrt(se2)
    diff = m1 - m2
    return classify_extents(diff - half, diff + half, -scenario.delta, scenario.delta)


def simulate_error_rates(
    scenario: Scenario, reps: int, seed: int, stream_base: int = 0
) -> ErrorRateReport:
    """Reject/accept/agnostic rates of the two-group Welch-interval test.

    Per replication the decision compares the 1 - alpha Welch interval for
    the mean difference against the band |diff| <= delta. A boundary truth
    (|mu1 - mu2| = delta) counts as inside the null.
    """
    if scenario.num_groups != 2:
        raise DimensionMismatch("this simulation needs exactly 2 groups")
    if reps < 1000:
        raise TooFewReps(f"need at least 1000 replications, got {reps}")
    counts = np.zeros(3, dtype=np.int64)  # accept, agnostic, reject
    for chunk, m in enumerate(_chunk_sizes(reps)):
        codes = _welch_codes(scenario, _chunk_rng(seed, stream_base + chunk), m)
        counts[0] += int(np.sum(codes == ACCEPT))
        counts[1] += int(np.sum(codes == AGNOSTIC))
        counts[2] += int(np.sum(codes == REJECT))
    accept_rate, agnostic_rate, reject_rate = (counts / reps).tolist()
    truth = scenario.group_means[0] - scenario.group_means[1]
    truth_in_null = abs(truth) <= scenario.delta + BOUNDARY_TOL
    type_i = reject_rate if truth_in_null else 0.0
    type_ii = accept_rate if not truth_in_null else 0.0
    return ErrorRateReport(
        type_i=type_i,
        type_ii=type_ii,
        accept_rate=accept_rate,
        reject_rate=reject_rate,
        agnostic_rate=agnostic_rate,
        fwer_i=type_i,
        fwer_ii=type_ii,
        fwer_any=type_i + type_ii,
        reps=reps,
        seed=seed,
    )


def simulate_fwer(
    scenario: Scenario, reps: int, seed: int, stream_base: int = 0
) -> ErrorRateReport:
    """Family-wise error rates over all pairwise bands plus the max-pairwise band.

    Each replication builds one mean-vector ellipsoid at level 1 - alpha and
    decides the whole family from it with no level correction. fwer_i is the
    rate of replications rejecting at least one true hypothesis, fwer_ii of
    accepting at least one false hypothesis, fwer_any of either.
    """
    p = scenario.num_groups
    if p < 3:
        raise DimensionMismatch("family-wise simulation needs at least 3 groups")
    if reps < 1000:
        raise TooFewReps(f"need at least 1000 replications, got {reps}")
    means = np.asarray(scenario.group_means)
    sds = np.asarray(scenario.group_sds)
    ns = np.asarray(scenario.group_ns, dtype=float)
    pairs = [(i, j) for i in range(p) for j in range(i + 1, p)]
    radius = chi2_ppf(1.0 - scenario.alpha, p)

    pair_truth = np.array(
        [abs(means[i] - means[j]) <= scenario.delta + BOUNDARY_TOL for i, j in pairs]
    )
    family_truth = np.append(pair_truth, pair_truth.all())

    n_hyp = len(pairs) + 1
    decision_counts = np.zeros((n_hyp, 3), dtype=np.int64)
    false_rej = 0
    false_acc = 0
    false_any = 0
    for chunk, m in enumerate(_chunk_sizes(reps)):
        rng = _chunk_rng(seed, stream_base + chunk)
        grp_mean = np.empty((m, p))
        grp_var = np.empty((m, p))
        for g in range(p):
            data = rng.normal(means[g], sds[g], (m, int(ns[g])))
            grp_mean[:, g] = data.mean(axis=1)
            grp_var[:, g] = data.var(axis=1, ddof=1)
        codes = np.empty((m, n_hyp))
        for idx, (i, j) in enumerate(pairs):
            mid = grp_mean[:, i] - grp_mean[:, j]
            half = np.sqrt(radius * (grp_var[:, i] / ns[i] + grp_var[:, j] / ns[j]))
            codes[:, idx] = classify_extents(
                mid - half, mid + half, -scenario.delta, scenario.delta)
        pair_codes = codes[:, :-1]
        max_code = np.full(m, AGNOSTIC)
        max_code[(pair_codes == ACCEPT).all(axis=1)] = ACCEPT
        max_code[(pair_codes == REJECT).any(axis=1)] = REJECT
        codes[:, -1] = max_code

        for h in range(n_hyp):
            decision_counts[h, 0] += int(np.sum(codes[:, h] == ACCEPT))
            decision_counts[h, 1] += int(np.sum(codes[:, h] == AGNOSTIC))
            decision_counts[h, 2] += int(np.sum(codes[:, h] == REJECT))
        rej_true = ((codes == REJECT) & family_truth).any(axis=1)
        acc_false = ((codes == ACCEPT) & ~family_truth).any(axis=1)
        false_rej += int(rej_true.sum())
        false_acc += int(acc_false.sum())
        false_any += int((rej_true | acc_false).sum())

    rates = decision_counts.mean(axis=0) / reps
    fwer_i = false_rej / reps
    fwer_ii = false_acc / reps
    return ErrorRateReport(
        type_i=fwer_i,
        type_ii=fwer_ii,
        accept_rate=float(rates[0]),
        reject_rate=float(rates[2]),
        agnostic_rate=float(rates[1]),
        fwer_i=fwer_i,
        fwer_ii=fwer_ii,
        fwer_any=false_any / reps,
        reps=reps,
        seed=seed,
    )


@dataclass(frozen=True)
class CurvePoint:
    n: int
    accept_rate: float
    reject_rate: float
    agnostic_rate: float


def consistency_curve(scenario: Scenario, n_grid, reps: int, seed: int) -> list:
    """Decision rates of the two-group test as the per-group sample size grows.

    n_grid must be increasing. Each grid point re-simulates with group sizes
    replaced by n, on its own substream block so points are independent.
    """
    ns = [int(n) for n in n_grid]
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("n_grid must be strictly increasing")
    if scenario.num_groups != 2:
        raise DimensionMismatch("consistency curves use the two-group test")
    points = []
    for idx, n in enumerate(ns):
        scn = dataclasses.replace(scenario, group_ns=(n,) * scenario.num_groups)
        report = simulate_error_rates(scn, reps, seed, stream_base=(idx + 1) << 32)
        points.append(CurvePoint(n, report.accept_rate, report.reject_rate, report.agnostic_rate))
    return points
