"""Whole-package acceptance checks.

Each test covers one acceptance criterion and prints a single PASS/FAIL
line (run with ``pytest -s`` to see them all; failures show theirs in the
captured-output section).  The two benchmark sweeps behind the box-plot
figures are written to artifacts/*.csv as a side effect so the plotting
package can consume real harness output.
"""

import math
import time
from dataclasses import replace
from itertools import product
from pathlib import Path
from random import Random

import pytest

from gpmajority import harness
from gpmajority.algorithms import (
    CONCAT_CROSSOVER,
    ONE_PLUS_ONE,
    RunConfig,
    concatenation_crossover_gp,
    one_plus_one_gp,
)
from gpmajority.fitness import (
    MAJORITY,
    NEGATIVE_CRITICAL,
    PLUS_C,
    POSITIVE_CRITICAL,
    REDUNDANT,
    SUPER,
    TWO_THIRDS,
    Problem,
    accept,
    classify_leaves,
    deletion_stable,
    evaluate,
    expressed,
)
from gpmajority.individual import Literal, join, make_individual, random_individual
from gpmajority.oracle import (
    brute_force_classify,
    brute_force_score,
    literal_histogram,
    poisson_reference,
)
from gpmajority.variation import hvl_prime

ARTIFACTS = Path(__file__).resolve().parent.parent / "artifacts"
TIMES_TEN = harness.parse_s_init_rule("times_n(10)")
VARIANTS = (Problem(MAJORITY), Problem(PLUS_C, 2), Problem(TWO_THIRDS),
            Problem(SUPER))


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: {criterion} ({detail})")


def _sweep(base: RunConfig, n_values, reps: int, master_seed: int):
    spec = harness.ExperimentSpec(base=base, n_values=n_values,
                                  repetitions=reps, s_init_rule=TIMES_TEN,
                                  master_seed=master_seed)
    return harness.run_experiment(spec)


def _median_evals(rows, n: int) -> float:
    evals = sorted(rec.evaluations_used for rn, _, _, rec in rows if rn == n)
    return harness.quantile(evals, 0.5)


@pytest.fixture(scope="module")
def plus_c_benchmark():
    """plus-c-majority sweep (c=2, s_init=10n): with and without parsimony."""
    base = RunConfig(problem=Problem(PLUS_C, 2), n=100, s_init=1,
                     algorithm=ONE_PLUS_ONE, bloat_control=True,
                     eval_budget=1_000_000, seed=0)
    with_bloat = _sweep(base, (100,), 100, 11)
    without = _sweep(replace(base, bloat_control=False), (100, 300), 100, 12)
    ARTIFACTS.mkdir(exist_ok=True)
    harness.write_csv(str(ARTIFACTS / "plus_c_runtimes.csv"),
                      with_bloat + without)
    return with_bloat, without


@pytest.fixture(scope="module")
def two_thirds_benchmark():
    """two-thirds-majority sweep (s_init=10n): with and without parsimony."""
    base = RunConfig(problem=Problem(TWO_THIRDS), n=100, s_init=1,
                     algorithm=ONE_PLUS_ONE, bloat_control=True,
                     eval_budget=1_000_000, seed=0)
    with_bloat = _sweep(base, (100, 300, 500), 100, 13)
    without = _sweep(replace(base, bloat_control=False), (100,), 100, 14)
    ARTIFACTS.mkdir(exist_ok=True)
    harness.write_csv(str(ARTIFACTS / "two_thirds_runtimes.csv"),
                      with_bloat + without)
    return with_bloat, without


def test_fast_scoring_matches_brute_force_oracle():
    # 10^4 random individuals plus 10^4 consecutive mutation-chain steps,
    # every one compared exactly against the rescan-everything oracle,
    # within a one-minute wall-clock budget.
    rng = Random(20240817)
    started = time.perf_counter()
    mismatch = None
    log_cap = math.log(500)
    for i in range(10_000):
        n = rng.randint(1, 50)
        size = max(1, min(500, round(math.exp(rng.uniform(0.0, log_cap)))))
        ind = random_individual(n, size, rng)
        problem = VARIANTS[i % 4]
        if (evaluate(problem, ind) != brute_force_score(problem, ind)
                or classify_leaves(problem, ind) != brute_force_classify(problem, ind)):
            mismatch = f"random individual #{i} ({problem.kind}, n={n})"
            break
    if mismatch is None:
        for problem, steps in zip(VARIANTS, (3000, 3000, 3000, 1000)):
            current = random_individual(25, 50, rng)
            incumbent = evaluate(problem, current)
            for step in range(steps):
                offspring = hvl_prime(current, rng).offspring
                candidate = evaluate(problem, offspring)
                if (candidate != brute_force_score(problem, offspring)
                        or classify_leaves(problem, offspring)
                        != brute_force_classify(problem, offspring)):
                    mismatch = f"chain step {step} ({problem.kind})"
                    break
                if accept(problem, True, candidate, incumbent):
                    current, incumbent = offspring, candidate
            if mismatch is not None:
                break
    elapsed = time.perf_counter() - started
    ok = mismatch is None and elapsed < 60.0
    _report("fast scorer and leaf classifier agree exactly with the brute-force oracle",
            ok, f"20000 comparisons in {elapsed:.1f}s (limit 60s)"
            + ("" if mismatch is None else f"; first mismatch at {mismatch}"))
    assert ok, mismatch or f"too slow: {elapsed:.1f}s"


def test_initial_literal_counts_match_poisson_limit():
    # One fresh tree with s_init = n = 10^5: the per-variable literal-count
    # histogram must sit within 0.01 of the independent-Poisson limit.
    n = 100_000
    ind = random_individual(n, n, Random(20240817))
    hist = literal_histogram(ind)
    worst = 0.0
    for k, l in product(range(3), range(3)):
        share = hist.get((k, l), 0) / n
        worst = max(worst, abs(share - poisson_reference(1.0, k, l)))
    empty = hist.get((0, 0), 0) / n
    ok = worst <= 0.01 and abs(empty - 0.3679) <= 0.01
    _report("fresh random trees match the Poisson literal-count limit",
            ok, f"max bucket deviation {worst:.4f} (tol 0.01), "
                f"empty-variable share {empty:.4f} vs 0.3679")
    assert ok


def test_plus_c_with_bloat_control_stalls_below_budget(plus_c_benchmark):
    with_bloat, _ = plus_c_benchmark
    failures = sum(1 for *_, rec in with_bloat if not rec.success)
    ok = failures >= 95
    _report("parsimony pressure freezes plus-c-majority short of the optimum",
            ok, f"{failures}/100 runs at n=100 exhausted the 10^6 budget, need >= 95")
    assert ok, failures


def test_plus_c_without_bloat_control_solves_quickly(plus_c_benchmark):
    _, without = plus_c_benchmark
    wins_100 = sum(rec.success for rn, _, _, rec in without if rn == 100)
    med_100 = _median_evals(without, 100)
    med_300 = _median_evals(without, 300)
    ok = (wins_100 == 100 and 8_000 <= med_100 <= 19_000
          and 34_000 <= med_300 <= 76_000)
    _report("without parsimony pressure plus-c-majority is solved quickly",
            ok, f"n=100: {wins_100}/100 solved, median {med_100:.0f}evals "
                f"(want [8000,19000]); n=300 median {med_300:.0f} (want [34000,76000])")
    assert ok, (wins_100, med_100, med_300)


def test_two_thirds_medians_scale_like_n_log_n(two_thirds_benchmark):
    with_bloat, without = two_thirds_benchmark
    med = {n: _median_evals(with_bloat, n) for n in (100, 300, 500)}
    med_off = _median_evals(without, 100)
    fit = harness.fit_nlogn(med)
    ok = (3_500 <= med[100] <= 6_500 and 21_000 <= med[500] <= 40_000
          and 11_500 <= med_off <= 22_000 and 5.0 <= fit.w <= 15.0)
    _report("two-thirds-majority runtimes scale like w * n log n",
            ok, f"bloat-on medians n=100 {med[100]:.0f} (want [3500,6500]), "
                f"n=500 {med[500]:.0f} (want [21000,40000]); bloat-off n=100 "
                f"{med_off:.0f} (want [11500,22000]); fitted w {fit.w:.2f} (want [5,15])")
    assert ok, (med, med_off, fit.w)


def test_super_without_bloat_control_keeps_unexpressed_variables():
    # Expectation: negative literals pile up faster than value-improving
    # insertions clear them, so most runs should still have an unexpressed
    # variable when the budget runs out.
    held = 0
    for seed in range(50):
        cfg = RunConfig(problem=Problem(SUPER), n=100, s_init=100,
                        algorithm=ONE_PLUS_ONE, bloat_control=False,
                        eval_budget=1_000_000, seed=seed)
        if one_plus_one_gp(cfg).unexpressed_count >= 1:
            held += 1
    ok = held >= 40
    _report("without parsimony pressure super-majority keeps unexpressed variables",
            ok, f"{held}/50 runs ended with >= 1 unexpressed variable, need >= 40")
    assert ok, held


def test_super_with_bloat_control_expresses_everything():
    wins = 0
    for seed in range(50):
        cfg = RunConfig(problem=Problem(SUPER), n=50, s_init=25,
                        algorithm=ONE_PLUS_ONE, bloat_control=True,
                        eval_budget=884_000, seed=seed)
        wins += one_plus_one_gp(cfg).success
    ok = wins >= 45
    _report("with parsimony pressure super-majority expresses every variable",
            ok, f"{wins}/50 runs expressed all 50 variables within 884000 evals, need >= 45")
    assert ok, wins


def test_crossover_solves_what_a_single_chain_cannot():
    # Concatenation crossover restarts the search from fresh material each
    # generation; a single parsimony-pressured chain freezes instead.
    def _count(problem: Problem, algorithm: str) -> int:
        wins = 0
        for seed in range(100):
            cfg = RunConfig(problem=problem, n=100, s_init=50,
                            algorithm=algorithm, bloat_control=True,
                            eval_budget=2_000_000, seed=seed,
                            lambda_=19 if algorithm == CONCAT_CROSSOVER else None)
            record = (concatenation_crossover_gp(cfg)
                      if algorithm == CONCAT_CROSSOVER else one_plus_one_gp(cfg))
            wins += record.success
        return wins

    xo_plus_c = _count(Problem(PLUS_C, 2), CONCAT_CROSSOVER)
    xo_two_thirds = _count(Problem(TWO_THIRDS), CONCAT_CROSSOVER)
    single_plus_c = _count(Problem(PLUS_C, 2), ONE_PLUS_ONE)
    ok = xo_plus_c >= 95 and xo_two_thirds >= 95 and single_plus_c <= 5
    _report("crossover with parsimony pressure solves both variants a single chain cannot",
            ok, f"crossover plus-c {xo_plus_c}/100 (need >= 95), crossover "
                f"two-thirds {xo_two_thirds}/100 (need >= 95), single-chain "
                f"plus-c {single_plus_c}/100 (need <= 5)")
    assert ok, (xo_plus_c, xo_two_thirds, single_plus_c)


def test_super_crossover_without_substitution_expresses_all_members():
    wins = 0
    for seed in range(100):
        cfg = RunConfig(problem=Problem(SUPER), n=50, s_init=25,
                        algorithm=CONCAT_CROSSOVER, bloat_control=True,
                        allow_substitution=False, eval_budget=1_000_000,
                        seed=seed, lambda_=16)
        wins += concatenation_crossover_gp(cfg).success
    ok = wins >= 90
    _report("insert/delete-only crossover expresses all variables in every member",
            ok, f"{wins}/100 runs finished with the whole population fully "
                f"expressed, need >= 90")
    assert ok, wins


def test_structural_invariants_hold(tmp_path):
    rng = Random(77)

    # (a) every leaf gets exactly one of the three classes
    partition_ok = True
    for i in range(1000):
        n = rng.randint(1, 30)
        ind = random_individual(n, rng.randint(1, 60), rng)
        labels = classify_leaves(VARIANTS[i % 4], ind)
        known = sum(labels.count(lab) for lab in
                    (POSITIVE_CRITICAL, NEGATIVE_CRITICAL, REDUNDANT))
        if len(labels) != ind.size or known != ind.size:
            partition_ok = False
            break

    # (b) two-thirds class-count bounds: c- <= r and c+ <= 2r + value
    bounds_ok = True
    tt = Problem(TWO_THIRDS)
    for _ in range(1000):
        n = rng.randint(1, 30)
        ind = random_individual(n, rng.randint(1, 60), rng)
        labels = classify_leaves(tt, ind)
        c_plus = labels.count(POSITIVE_CRITICAL)
        c_minus = labels.count(NEGATIVE_CRITICAL)
        redundant = labels.count(REDUNDANT)
        if c_minus > redundant or c_plus > 2 * redundant + evaluate(tt, ind).value:
            bounds_ok = False
            break

    # (c) joining deletion-stable trees expresses exactly the union of the
    # inputs' expressed variables (exhaustive over count profiles <= 4, n <= 3)
    join_ok = True
    join_pairs = 0
    for problem in [tt] + [Problem(PLUS_C, c) for c in (1, 2, 3, 4)]:
        for n in (1, 2, 3):
            stable = []
            for profile in product(product(range(5), range(5)), repeat=n):
                leaves = []
                for var, (p, m) in enumerate(profile, start=1):
                    leaves += [Literal(var, True)] * p + [Literal(var, False)] * m
                if not leaves:
                    continue
                ind = make_individual(n, leaves)
                if deletion_stable(problem, ind):
                    stable.append(ind)
            for a in stable:
                for b in stable:
                    joined = join(a, b)
                    join_pairs += 1
                    for var in range(1, n + 1):
                        pa, ma = a.counts.get(var, (0, 0))
                        pb, mb = b.counts.get(var, (0, 0))
                        pj, mj = joined.counts.get(var, (0, 0))
                        if expressed(problem, pj, mj) != (
                                expressed(problem, pa, ma)
                                or expressed(problem, pb, mb)):
                            join_ok = False
    join_ok = join_ok and join_pairs > 100

    # (d) an accepted chain is lexicographically monotone under parsimony
    cfg = RunConfig(problem=Problem(TWO_THIRDS), n=10, s_init=30,
                    algorithm=ONE_PLUS_ONE, bloat_control=True,
                    eval_budget=5_000, seed=3, trace_stride=1)
    trace = one_plus_one_gp(cfg).trace
    chain_ok = trace is not None and len(trace) >= 2
    if chain_ok:
        for prev, cur in zip(trace, trace[1:]):
            if cur.value < prev.value or (cur.value == prev.value
                                          and cur.size > prev.size):
                chain_ok = False
                break

    # (e) rerunning an experiment reproduces the CSV byte for byte
    base = RunConfig(problem=Problem(TWO_THIRDS), n=5, s_init=10,
                     algorithm=ONE_PLUS_ONE, bloat_control=True,
                     eval_budget=20_000, seed=0)
    spec = harness.ExperimentSpec(base=base, n_values=(5, 8), repetitions=3,
                                  s_init_rule=TIMES_TEN, master_seed=99,
                                  output_path=str(tmp_path / "a.csv"))
    harness.run_experiment(spec)
    harness.run_experiment(replace(spec, output_path=str(tmp_path / "b.csv")))
    bytes_ok = (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    checks = {
        "leaf-class partition": partition_ok,
        "two-thirds class bounds": bounds_ok,
        "join expression union": join_ok,
        "monotone accepted chain": chain_ok,
        "byte-identical CSV rerun": bytes_ok,
    }
    ok = all(checks.values())
    _report("structural invariants hold end to end", ok,
            "all five sub-checks passed" if ok
            else "failed: " + ", ".join(k for k, v in checks.items() if not v))
    assert ok, [k for k, v in checks.items() if not v]
