"""Command-line interface.

Subcommands: run (single run), experiment (sweep -> CSV), verify (oracle and
invariant suite), distribution (literal-pair histogram vs the Poisson
reference), summarize (CSV -> box statistics and an n ln n fit).

Exit codes: 0 success, 1 invalid configuration or arguments, 2 I/O error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from random import Random

from . import harness
from .algorithms import (CONCAT_CROSSOVER, ONE_PLUS_ONE, STOP_ALL_EXPRESSED,
                         STOP_ALL_EXPRESSED_MINIMAL, STOP_BUDGET_ONLY)
from .fitness import Problem, accept, classify_leaves, evaluate
from .harness import ConfigError
from .individual import export_tree, parse_tree, random_individual
from .oracle import (brute_force_classify, brute_force_score,
                     literal_histogram, poisson_reference)
from .variation import hvl_prime

_PROBLEM_NAMES = ("majority", "plus-c-majority", "two-thirds-majority",
                  "two-thirds-super-majority")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad arguments; remap that to exit code 1
    (invalid configuration) while keeping --help at 0."""

    def exit(self, status: int = 0, message: str | None = None):
        if message:
            self._print_message(message, sys.stderr)
        sys.exit(1 if status else 0)


def _flag_values(args: argparse.Namespace, keys: dict[str, str]) -> dict[str, str]:
    """Collect explicitly-set CLI flags as config-file style strings."""
    out: dict[str, str] = {}
    for attr, key in keys.items():
        value = getattr(args, attr)
        if value is None:
            continue
        if isinstance(value, bool):
            out[key] = "true" if value else "false"
        else:
            out[key] = str(value)
    return out


def _add_problem_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--problem", choices=_PROBLEM_NAMES,
                     help="test function variant")
    sub.add_argument("--c", type=int, help="surplus margin for plus-c-majority")
    sub.add_argument("--algorithm", choices=(ONE_PLUS_ONE, CONCAT_CROSSOVER))
    sub.add_argument("--bloat-control", action=argparse.BooleanOptionalAction,
                     default=None, help="lexicographic parsimony pressure")
    sub.add_argument("--allow-substitutions",
                     action=argparse.BooleanOptionalAction, default=None,
                     help="include the substitution operator in mutations")
    sub.add_argument("--lambda", dest="lambda_", type=int,
                     help="population size for the crossover algorithm")
    sub.add_argument("--stop", choices=(STOP_ALL_EXPRESSED,
                                        STOP_ALL_EXPRESSED_MINIMAL,
                                        STOP_BUDGET_ONLY))
    sub.add_argument("--stop-scope", choices=("auto", "any", "all"))
    sub.add_argument("--eval-budget", type=int,
                     help="maximum number of fitness evaluations")


_RUN_FLAG_KEYS = {
    "problem": "problem", "c": "c", "algorithm": "algorithm",
    "bloat_control": "bloat_control",
    "allow_substitutions": "allow_substitutions", "lambda_": "lambda",
    "stop": "stop", "stop_scope": "stop_scope", "eval_budget": "eval_budget",
    "n": "n", "s_init": "s_init", "seed": "seed",
    "trace_stride": "trace_stride",
}

_EXPERIMENT_FLAG_KEYS = {
    "problem": "problem", "c": "c", "algorithm": "algorithm",
    "bloat_control": "bloat_control",
    "allow_substitutions": "allow_substitutions", "lambda_": "lambda",
    "stop": "stop", "stop_scope": "stop_scope", "eval_budget": "eval_budget",
    "n_values": "n_values", "repetitions": "repetitions",
    "s_init_rule": "s_init_rule", "master_seed": "master_seed",
    "output": "output_path", "trace_sampling": "trace_sampling",
}


def _cmd_run(args: argparse.Namespace) -> int:
    values = harness.parse_config_file(args.config) if args.config else {}
    values.update(_flag_values(args, _RUN_FLAG_KEYS))
    cfg = harness.build_run_config(values)
    record = harness.execute_run(cfg)
    row = harness.csv_row(cfg.n, 0, cfg, record)
    for key, field in zip(harness.CSV_HEADER.split(","), row.split(",")):
        if key != "run_id":
            print(f"{key}={field}")
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    values = harness.parse_config_file(args.spec) if args.spec else {}
    values.update(_flag_values(args, _EXPERIMENT_FLAG_KEYS))
    spec = harness.build_experiment_spec(values)
    if not spec.output_path:
        raise ConfigError("missing required key: output_path "
                          "(or pass --output)")
    results = harness.run_experiment(spec, workers=args.workers)
    print(f"wrote {len(results)} rows to {spec.output_path}")
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    rows = harness.read_rows(args.csv)
    if not rows:
        raise ConfigError(f"{args.csv}: no data rows")
    stats = harness.summarize(rows)
    for key, per_n in stats.items():
        parts = [f"{field}={'' if v is None else v}"
                 for field, v in zip(harness.GROUP_FIELDS, key)]
        print("group " + " ".join(parts))
        for n, box in per_n.items():
            runs = sum(1 for r in rows if harness.group_key(r) == key
                       and r["n"] == n)
            print(f"n={n} runs={runs} successes={box.success_count} "
                  f"min={box.min} q1={box.q1} median={box.median} "
                  f"q3={box.q3} max={box.max}")
        eligible = {n: box.median for n, box in per_n.items()
                    if n >= 2 and box.median > 0}
        if len(eligible) >= 2:
            fit = harness.fit_nlogn(eligible)
            print(f"fit w={fit.w}")
            for n, ratio in fit.ratios.items():
                print(f"ratio n={n} {ratio}")
    return 0


def _cmd_distribution(args: argparse.Namespace) -> int:
    n = args.n
    s_init = max(1, round(args.nu * n))
    ind = random_individual(n, s_init, Random(args.seed))
    hist = literal_histogram(ind)
    print(f"n={n} s_init={s_init} nu={s_init / n}")
    print("k l observed expected delta")
    for k in range(args.max_count + 1):
        for l in range(args.max_count + 1):
            observed = hist.get((k, l), 0) / n
            expected = poisson_reference(s_init / n, k, l)
            print(f"{k} {l} {observed:.6f} {expected:.6f} "
                  f"{observed - expected:+.6f}")
    return 0


def _verification_checks() -> list[tuple[str, bool, str]]:
    """Compact oracle-agreement and invariant suite for `verify`."""
    results: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        results.append((name, ok, detail))

    rng = Random(20260825)
    problems = [Problem("majority"), Problem("plus_c_majority", 2),
                Problem("two_thirds_majority"),
                Problem("two_thirds_super_majority")]

    score_bad = classify_bad = 0
    histogram_bad = 0
    for _ in range(250):
        n = rng.randrange(1, 13)
        ind = random_individual(n, rng.randrange(1, 41), rng)
        hist = literal_histogram(ind)
        if sum(hist.values()) != n:
            histogram_bad += 1
        for problem in problems:
            if evaluate(problem, ind) != brute_force_score(problem, ind):
                score_bad += 1
            if classify_leaves(problem, ind) != brute_force_classify(problem, ind):
                classify_bad += 1
    check("evaluate matches brute-force oracle", score_bad == 0,
          f"{score_bad} mismatches")
    check("classify matches brute-force oracle", classify_bad == 0,
          f"{classify_bad} mismatches")
    check("literal histogram partitions the variables", histogram_bad == 0,
          f"{histogram_bad} bad totals")

    ind = random_individual(8, 30, rng)
    steps_bad = 0
    for _ in range(500):
        ind = hvl_prime(ind, rng).offspring
        for problem in problems:
            if evaluate(problem, ind) != brute_force_score(problem, ind):
                steps_bad += 1
    check("oracle agreement along a mutation walk", steps_bad == 0,
          f"{steps_bad} mismatches")

    round_trip_ok = True
    for _ in range(50):
        ind = random_individual(rng.randrange(1, 6), rng.randrange(1, 12), rng)
        back = parse_tree(export_tree(ind), ind.n)
        if back.leaves != ind.leaves:
            round_trip_ok = False
    check("export/parse round trip", round_trip_ok)

    mono_bad = 0
    problem = Problem("two_thirds_majority")
    for _ in range(200):
        n = rng.randrange(1, 8)
        a = random_individual(n, rng.randrange(1, 15), rng)
        b = random_individual(n, rng.randrange(1, 15), rng)
        sa, sb = evaluate(problem, a), evaluate(problem, b)
        better = accept(problem, True, sa, sb)
        worse = accept(problem, True, sb, sa)
        if sa.value != sb.value or sa.size != sb.size:
            if better and worse:
                mono_bad += 1
        if sa.value > sb.value and not better:
            mono_bad += 1
    check("lexicographic acceptance is an order", mono_bad == 0,
          f"{mono_bad} violations")
    return results


def _cmd_verify(args: argparse.Namespace) -> int:
    failures = 0
    for name, ok, detail in _verification_checks():
        status = "ok" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        print(f"{status}: {name}{suffix}")
        if not ok:
            failures += 1
    if failures:
        print(f"{failures} check(s) failed")
        return 3
    print("all checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gpmajority",
                     description="Runtime benchmark for (1+1) GP and "
                                 "Concatenation Crossover GP on "
                                 "Majority-variant test functions.")
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="execute a single run and print it")
    run.add_argument("--config", help="key=value config file; flags override")
    _add_problem_flags(run)
    run.add_argument("--n", type=int, help="number of variables")
    run.add_argument("--s-init", type=int, help="initial tree size")
    run.add_argument("--seed", type=int, help="run seed")
    run.add_argument("--trace-stride", type=int,
                     help="record a trace point every this many evaluations")
    run.set_defaults(func=_cmd_run)

    exp = subs.add_parser("experiment", help="run a sweep and write a CSV")
    exp.add_argument("--spec", help="key=value spec file; flags override")
    _add_problem_flags(exp)
    exp.add_argument("--n-values", help="comma-separated problem sizes")
    exp.add_argument("--repetitions", type=int, help="runs per n")
    exp.add_argument("--s-init-rule",
                     help="initial size rule: fixed(v) or times_n(f)")
    exp.add_argument("--master-seed", type=int)
    exp.add_argument("--output", help="CSV destination path")
    exp.add_argument("--trace-sampling", type=int)
    exp.add_argument("--workers", type=int, default=1,
                     help="parallel worker processes (default 1)")
    exp.set_defaults(func=_cmd_experiment)

    ver = subs.add_parser("verify",
                          help="run the oracle and invariant suite")
    ver.set_defaults(func=_cmd_verify)

    dist = subs.add_parser("distribution",
                           help="literal-pair histogram of a random tree "
                                "vs the Poisson reference")
    dist.add_argument("--n", type=int, default=100000)
    dist.add_argument("--nu", type=float, default=1.0,
                      help="expected literal pairs per variable (s_init/n)")
    dist.add_argument("--seed", type=int, default=0)
    dist.add_argument("--max-count", type=int, default=2,
                      help="largest k and l to tabulate")
    dist.set_defaults(func=_cmd_distribution)

    summ = subs.add_parser("summarize",
                           help="box statistics and n ln n fit from a CSV")
    summ.add_argument("csv", help="CSV file produced by `experiment`")
    summ.set_defaults(func=_cmd_summarize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
