"""Runtime benchmark for (1+1) GP and Concatenation Crossover GP on
Majority-variant test functions."""

from .algorithms import (CONCAT_CROSSOVER, ONE_PLUS_ONE, STOP_ALL_EXPRESSED,
                         STOP_ALL_EXPRESSED_MINIMAL, STOP_BUDGET_ONLY,
                         RunConfig, RunRecord, TracePoint,
                         concatenation_crossover_gp, local_search,
                         local_search_budget, one_plus_one_gp,
                         resolved_lambda, resolved_stop_scope)
from .fitness import (MAJORITY, NEGATIVE_CRITICAL, PLUS_C, POSITIVE_CRITICAL,
                      PROBLEM_KINDS, REDUNDANT, SUPER, TWO_THIRDS, Problem,
                      Score, accept, classify_leaves, deletion_stable,
                      evaluate, expressed, format_problem, parse_problem)
from .harness import (BoxStats, ConfigError, ExperimentSpec, FitResult,
                      SInitRule, box_stats, derive_run_seed, execute_run,
                      fit_nlogn, parse_s_init_rule, quantile, read_rows,
                      run_experiment, summarize, write_csv)
from .individual import (Individual, Literal, export_tree, join,
                         literal_from_str, make_individual, parse_tree,
                         random_individual, random_leaf)
from .oracle import (brute_force_classify, brute_force_score,
                     literal_histogram, poisson_reference)
from .variation import (DELETE, INSERT, NOOP, SUBSTITUTE, MutationOutcome,
                        hvl_prime)

__version__ = "0.1.0"

__all__ = [
    "CONCAT_CROSSOVER", "ONE_PLUS_ONE", "STOP_ALL_EXPRESSED",
    "STOP_ALL_EXPRESSED_MINIMAL", "STOP_BUDGET_ONLY", "RunConfig",
    "RunRecord", "TracePoint", "concatenation_crossover_gp", "local_search",
    "local_search_budget", "one_plus_one_gp", "resolved_lambda",
    "resolved_stop_scope",
    "MAJORITY", "NEGATIVE_CRITICAL", "PLUS_C", "POSITIVE_CRITICAL",
    "PROBLEM_KINDS", "REDUNDANT", "SUPER", "TWO_THIRDS", "Problem", "Score",
    "accept", "classify_leaves", "deletion_stable", "evaluate", "expressed",
    "format_problem", "parse_problem",
    "BoxStats", "ConfigError", "ExperimentSpec", "FitResult", "SInitRule",
    "box_stats", "derive_run_seed", "execute_run", "fit_nlogn",
    "parse_s_init_rule", "quantile", "read_rows", "run_experiment",
    "summarize", "write_csv",
    "Individual", "Literal", "export_tree", "join", "literal_from_str",
    "make_individual", "parse_tree", "random_individual", "random_leaf",
    "brute_force_classify", "brute_force_score", "literal_histogram",
    "poisson_reference",
    "DELETE", "INSERT", "NOOP", "SUBSTITUTE", "MutationOutcome", "hvl_prime",
]
