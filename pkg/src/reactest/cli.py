"""Command-line interface.

Subcommands: test (two-sample interval decision), family (shared ellipsoid,
all pairwise bands plus the max-pairwise band), meta (risk-difference forest
with pooling), simulate (seeded error-rate runs), bayes (credible-region
decisions under conjugate priors).

Exit codes: 0 success, 2 input/flag validation error, 3 computation error.
The seed comes from --seed, falling back to the REACT_SEED environment
variable, then 0.
"""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import bayes as bayes_mod
from . import meta as meta_mod
from . import svg as svg_mod
from .decision import check_coherence, decide_family
from .errors import ConfigError, ParseError, ReactError
from .hypotheses import (
    Band,
    Complement,
    HalfSpace,
    Interval,
    MaxPairwiseBand,
    nnt_to_delta,
)
from .regions import mean_vector_ellipsoid, welch_mean_diff_interval
from .simulate import Scenario, consistency_curve, simulate_error_rates, simulate_fwer


def _read_value_csv(path):
    """Single-column `value` file, or long-format `group,value`."""
    groups = {}
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise ParseError(f"{path}: empty file")
            header = [h.strip().lower() for h in header]
            if header == ["value"]:
                cols = {"value": 0}
                single = True
            elif set(header) == {"group", "value"}:
                cols = {name: header.index(name) for name in ("group", "value")}
                single = False
            else:
                raise ParseError(f"{path} line 1: expected header 'value' or 'group,value'")
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not c.strip() for c in row):
                    continue
                try:
                    value = float(row[cols["value"]])
                except (ValueError, IndexError) as exc:
                    raise ParseError(f"{path} line {lineno}: bad value field") from exc
                key = "value" if single else row[cols["group"]].strip()
                groups.setdefault(key, []).append(value)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not groups:
        raise ParseError(f"{path}: no data rows")
    return groups


def _read_studies_csv(path):
    expected = ["id", "events_t", "n_t", "events_c", "n_c"]
    studies = []
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip().lower() for h in header] != expected:
                raise ParseError(f"{path} line 1: expected header {','.join(expected)}")
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != 5:
                    raise ParseError(f"{path} line {lineno}: expected 5 fields, got {len(row)}")
                try:
                    studies.append(
                        meta_mod.StudySummary(
                            row[0].strip(), int(row[1]), int(row[2]), int(row[3]), int(row[4])
                        )
                    )
                except ValueError as exc:
                    raise ParseError(f"{path} line {lineno}: bad integer field") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not studies:
        raise ParseError(f"{path}: no data rows")
    return studies


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def hypothesis_from_json_dict(data):
    """Hypothesis from its JSON form: a variant tag plus numeric fields."""
    try:
        variant = data["variant"]
        if variant == "band":
            return Band(tuple(data["weights"]), float(data["offset"]), float(data["delta"]))
        if variant == "half_space":
            return HalfSpace(tuple(data["weights"]), float(data["bound"]), data.get("side", "below"))
        if variant == "interval":
            return Interval(float(data["lo"]), float(data["hi"]))
        if variant == "max_pairwise":
            return MaxPairwiseBand(float(data["delta"]), int(data["dimension"]))
        if variant == "complement":
            return Complement(hypothesis_from_json_dict(data["inner"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"hypothesis JSON missing field: {exc}") from exc
    raise ParseError(f"unknown hypothesis variant {data.get('variant')!r}")


def _resolve_seed(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("REACT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"REACT_SEED must be an integer, got {env!r}") from exc
    return 0


def _resolve_delta(args, allow_nnt_interval=False):
    """--delta or --nnt (exactly one). With allow_nnt_interval the NNT route
    returns the one-sided region [-1, 1/nnt]; otherwise a symmetric band margin."""
    has_delta = getattr(args, "delta", None) is not None
    has_nnt = getattr(args, "nnt", None) is not None
    if has_delta == has_nnt:
        raise ConfigError("exactly one of --delta or --nnt is required")
    if has_delta:
        return float(args.delta), False
    return nnt_to_delta(float(args.nnt)), True


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_test(args):
    groups = _read_value_csv(args.sample_a)
    if len(groups) != 1:
        raise ParseError(f"{args.sample_a}: expected a single-column value file")
    sample_a = next(iter(groups.values()))
    groups_b = _read_value_csv(args.sample_b)
    if len(groups_b) != 1:
        raise ParseError(f"{args.sample_b}: expected a single-column value file")
    sample_b = next(iter(groups_b.values()))

    level = args.level if args.level is not None else 1.0 - args.alpha
    interval = welch_mean_diff_interval(sample_a, sample_b, level)
    if args.hypothesis:
        null = hypothesis_from_json_dict(_read_json(args.hypothesis))
    else:
        delta, _ = _resolve_delta(args)
        null = Band((1.0,), 0.0, delta)
    results = decide_family(interval, [null], ids=["mean_difference"])
    if args.format == "csv":
        raise ConfigError("--format csv is not available for 'test'; use json or svg")
    if args.format == "svg":
        _emit(svg_mod.decisions_svg(results, title="two-sample decision"), args.out)
    else:
        _emit(_json_text(results[0].to_json_dict()), args.out)
    return 0


def _cmd_family(args):
    groups = _read_value_csv(args.data)
    if len(groups) < 2:
        raise ParseError(f"{args.data}: need at least two groups in group,value format")
    names = sorted(groups)
    delta, _ = _resolve_delta(args)
    region = mean_vector_ellipsoid([groups[name] for name in names], 1.0 - args.alpha)
    p = len(names)
    hypotheses = []
    ids = []
    for i in range(p):
        for j in range(i + 1, p):
            w = [0.0] * p
            w[i], w[j] = 1.0, -1.0
            hypotheses.append(Band(tuple(w), 0.0, delta))
            ids.append(f"|{names[i]} - {names[j]}| <= {delta:g}")
    hypotheses.append(MaxPairwiseBand(delta, p))
    ids.append(f"max pairwise gap <= {delta:g}")
    results = decide_family(region, hypotheses, ids=ids)
    report = check_coherence(results)
    payload = {
        "groups": names,
        "level": region.level,
        "results": [r.to_json_dict() for r in results],
        "coherence_violations": len(report.violations),
    }
    if args.format == "csv":
        raise ConfigError("--format csv is not available for 'family'; use json or svg")
    if args.format == "svg":
        _emit(svg_mod.decisions_svg(results, title="pairwise decisions, one shared region"), args.out)
    else:
        _emit(_json_text(payload), args.out)
    return 0


def _cmd_meta(args):
    studies = _read_studies_csv(args.studies)
    delta, _ = _resolve_delta(args)
    data = meta_mod.forest(
        studies, delta, args.alpha, pooling=args.pooling,
        zero_cell_correction=not args.no_zero_cell_correction,
    )
    if args.format == "svg":
        _emit(svg_mod.forest_svg(data), args.out)
    elif args.format == "csv":
        lines = ["id,effect,lower,upper,variance,decision,kind"]
        for row in data.rows:
            lines.append(
                f"{row.id},{row.effect!r},{row.lower!r},{row.upper!r},"
                f"{row.variance!r},{row.decision.label},{row.kind}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_text(data.to_json_dict()), args.out)
    return 0


def _cmd_simulate(args):
    if args.format == "svg":
        raise ConfigError("--format svg is not available for 'simulate'; use json or csv")
    seed = _resolve_seed(args)
    scenario = Scenario.from_json_dict(_read_json(args.scenario))
    if args.curve:
        try:
            n_grid = [int(tok) for tok in args.curve.split(",")]
        except ValueError as exc:
            raise ConfigError(f"--curve expects comma-separated integers, got {args.curve!r}") from exc
        points = consistency_curve(scenario, n_grid, args.reps, seed)
        if args.format == "csv":
            lines = ["n,accept_rate,reject_rate,agnostic_rate"]
            for pt in points:
                lines.append(f"{pt.n},{pt.accept_rate!r},{pt.reject_rate!r},{pt.agnostic_rate!r}")
            _emit("\n".join(lines) + "\n", args.out)
        else:
            payload = [
                {"n": pt.n, "accept_rate": pt.accept_rate,
                 "reject_rate": pt.reject_rate, "agnostic_rate": pt.agnostic_rate}
                for pt in points
            ]
            _emit(_json_text(payload), args.out)
        return 0
    if scenario.num_groups == 2:
        report = simulate_error_rates(scenario, args.reps, seed)
    else:
        report = simulate_fwer(scenario, args.reps, seed)
    _emit(_json_text(report.to_json_dict()), args.out)
    return 0


def _cmd_bayes(args):
    if args.format != "json":
        raise ConfigError(f"--format {args.format} is not available for 'bayes'; use json")
    seed = _resolve_seed(args)
    prior = _read_json(args.prior) if args.prior else {"family": "beta-jeffreys"}
    family = prior.get("family")
    rng = np.random.Generator(np.random.Philox(key=[seed & ((1 << 64) - 1), 0]))
    level = 1.0 - args.alpha
    if family == "nig":
        try:
            base = bayes_mod.NIGPosterior(
                float(prior["m"]), float(prior["k"]), float(prior["a"]), float(prior["b"])
            )
        except KeyError as exc:
            raise ParseError(f"nig prior JSON missing field {exc}") from exc
        groups = _read_value_csv(args.data)
        if len(groups) < 2:
            raise ParseError(f"{args.data}: need at least two groups in group,value format")
        names = sorted(groups)
        delta, _ = _resolve_delta(args)
        posteriors = [bayes_mod.nig_update(base, groups[name]) for name in names]
        hpd = bayes_mod.group_means_hpd(posteriors, args.draws, level, rng)
        results = []
        p = len(names)
        for i in range(p):
            for j in range(i + 1, p):
                w = [0.0] * p
                w[i], w[j] = 1.0, -1.0
                null = Band(tuple(w), 0.0, delta)
                decision = bayes_mod.breact_decide(hpd, null)
                results.append({
                    "hypothesis": f"|{names[i]} - {names[j]}| <= {delta:g}",
                    "decision": decision.label,
                    "posterior_probability": bayes_mod.posterior_prob(null, hpd.samples),
                    "level": level,
                })
        _emit(_json_text({"groups": names, "draws": args.draws, "results": results}), args.out)
        return 0
    if family == "beta-jeffreys":
        studies = _read_studies_csv(args.data)
        delta, _ = _resolve_delta(args)
        # risk difference <= delta as a half-space over the joint (p_t, p_c);
        # the -1 floor is automatic because both coordinates live in [0, 1]
        null = HalfSpace((1.0, -1.0), delta, "below")
        results = []
        for study in studies:
            post_t = bayes_mod.beta_jeffreys_posterior(study.events_treatment, study.n_treatment)
            post_c = bayes_mod.beta_jeffreys_posterior(study.events_control, study.n_control)
            hpd = bayes_mod.proportion_pair_hpd(post_t, post_c, args.draws, level, rng)
            decision = bayes_mod.breact_decide(hpd, null)
            results.append({
                "hypothesis": f"risk difference in [-1, {delta:g}]",
                "study": study.id,
                "decision": decision.label,
                "posterior_probability": bayes_mod.posterior_prob(null, hpd.samples),
                "level": level,
            })
        _emit(_json_text({"draws": args.draws, "results": results}), args.out)
        return 0
    raise ParseError(f"unknown prior family {family!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="react",
        description="Three-way hypothesis tests: accept, reject, or remain agnostic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_seed=False, with_delta=True):
        p.add_argument("--alpha", type=float, default=0.05, help="significance level")
        if with_delta:
            p.add_argument("--delta", type=float, default=None, help="equivalence margin")
            p.add_argument("--nnt", type=float, default=None,
                           help="number needed to treat; margin becomes 1/NNT")
        p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if with_seed:
            p.add_argument("--seed", type=int, default=None,
                           help="RNG seed (falls back to REACT_SEED, then 0)")

    p_test = sub.add_parser("test", help="two-sample mean-difference decision")
    p_test.add_argument("sample_a")
    p_test.add_argument("sample_b")
    p_test.add_argument("--level", type=float, default=None,
                        help="interval confidence level (default 1 - alpha)")
    p_test.add_argument("--hypothesis", default=None, help="hypothesis JSON file")
    common(p_test)
    p_test.set_defaults(func=_cmd_test)

    p_family = sub.add_parser("family", help="pairwise bands from one shared ellipsoid")
    p_family.add_argument("data", help="long-format CSV: group,value")
    common(p_family)
    p_family.set_defaults(func=_cmd_family)

    p_meta = sub.add_parser("meta", help="risk-difference forest with pooling")
    p_meta.add_argument("studies", help="CSV: id,events_t,n_t,events_c,n_c")
    p_meta.add_argument("--pooling", choices=("fixed", "random", "both"), default="both")
    p_meta.add_argument("--no-zero-cell-correction", action="store_true",
                        help="disable the 0.5 cell correction for zero-cell variances")
    common(p_meta)
    p_meta.set_defaults(func=_cmd_meta)

    p_sim = sub.add_parser("simulate", help="seeded Monte Carlo error rates")
    p_sim.add_argument("scenario", help="scenario JSON file")
    p_sim.add_argument("--reps", type=int, default=10000)
    p_sim.add_argument("--curve", default=None,
                       help="comma-separated n grid; emits decision-rate curves")
    common(p_sim, with_seed=True, with_delta=False)
    p_sim.set_defaults(func=_cmd_simulate)

    p_bayes = sub.add_parser("bayes", help="credible-region decisions (conjugate models)")
    p_bayes.add_argument("data", help="group CSV (nig) or studies CSV (beta-jeffreys)")
    p_bayes.add_argument("--prior", default=None,
                         help='prior JSON: {"family":"nig",...} or {"family":"beta-jeffreys"}')
    p_bayes.add_argument("--draws", type=int, default=bayes_mod.DEFAULT_DRAWS)
    common(p_bayes, with_seed=True)
    p_bayes.set_defaults(func=_cmd_bayes)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ReactError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
