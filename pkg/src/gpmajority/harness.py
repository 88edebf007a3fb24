"""Experiment configuration, seeded batch execution, statistics, CSV I/O.

Per-run seeds derive from (master_seed, n, repetition), so a spec reproduces
the same CSV bytes no matter how runs are scheduled.  Failed runs record
evaluations = eval_budget and success=false and enter the box statistics
as-is, i.e. they sit at the budget line like the pinned boxes in runtime
plots of bloat-control failures.
"""

from __future__ import annotations

import csv
import hashlib
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .algorithms import (CONCAT_CROSSOVER, ONE_PLUS_ONE, RunConfig, RunRecord,
                         concatenation_crossover_gp, one_plus_one_gp,
                         resolved_lambda)
from .fitness import PLUS_C, Problem, format_problem, parse_problem

CSV_HEADER = ("run_id,n,problem,c,algorithm,bloat_control,allow_substitutions,"
              "lambda,s_init,eval_budget,seed,evaluations,success,"
              "final_value_num,final_value_den_pow2,final_size,unexpressed")


class ConfigError(ValueError):
    """Invalid configuration (CLI exit code 1)."""


@dataclass(frozen=True)
class SInitRule:
    kind: str       # fixed | times_n
    value: int

    def apply(self, n: int) -> int:
        return self.value if self.kind == "fixed" else self.value * n


def parse_s_init_rule(text: str) -> SInitRule:
    text = text.strip()
    for kind in ("fixed", "times_n"):
        if text.startswith(kind + "(") and text.endswith(")"):
            body = text[len(kind) + 1:-1]
            try:
                value = int(body)
            except ValueError:
                raise ConfigError(f"bad s_init_rule argument {body!r}") from None
            if value < 1:
                raise ConfigError("s_init_rule argument must be >= 1")
            return SInitRule(kind, value)
    raise ConfigError(f"bad s_init_rule {text!r}; expected fixed(v) or times_n(f)")


@dataclass(frozen=True)
class ExperimentSpec:
    base: RunConfig                 # template; n, s_init and seed are ignored
    n_values: tuple[int, ...]
    repetitions: int
    s_init_rule: SInitRule
    master_seed: int
    output_path: str | None = None
    trace_sampling: int | None = None

    def validate(self) -> None:
        if not self.n_values:
            raise ConfigError("n_values must be non-empty")
        if any(n < 1 for n in self.n_values):
            raise ConfigError("all n values must be >= 1")
        if self.repetitions < 1:
            raise ConfigError("repetitions must be >= 1")
        probe = replace(self.base, n=self.n_values[0],
                        s_init=self.s_init_rule.apply(self.n_values[0]),
                        seed=0, trace_stride=self.trace_sampling)
        try:
            probe.validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None


def derive_run_seed(master_seed: int, n: int, repetition: int) -> int:
    digest = hashlib.blake2b(f"{master_seed}:{n}:{repetition}".encode(),
                             digest_size=8).digest()
    return int.from_bytes(digest, "big")


def iter_run_configs(spec: ExperimentSpec):
    """(n, repetition, RunConfig) in the deterministic CSV order."""
    for n in sorted(spec.n_values):
        s_init = spec.s_init_rule.apply(n)
        for rep in range(spec.repetitions):
            yield n, rep, replace(spec.base, n=n, s_init=s_init,
                                  seed=derive_run_seed(spec.master_seed, n, rep),
                                  trace_stride=spec.trace_sampling)


def execute_run(cfg: RunConfig) -> RunRecord:
    if cfg.algorithm == ONE_PLUS_ONE:
        return one_plus_one_gp(cfg)
    return concatenation_crossover_gp(cfg)


def _value_as_dyadic(value) -> tuple[int, int]:
    """(numerator, e) with value = numerator / 2^e, reduced."""
    if isinstance(value, Fraction):
        den = value.denominator
        e = den.bit_length() - 1
        if (1 << e) != den:
            raise AssertionError(f"non-dyadic score value {value}")
        return value.numerator, e
    return int(value), 0


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def csv_row(n: int, rep: int, cfg: RunConfig, record: RunRecord) -> str:
    num, den_pow2 = _value_as_dyadic(record.final_value)
    lam = resolved_lambda(cfg)
    c = cfg.problem.c if cfg.problem.kind == PLUS_C else ""
    fields = (
        f"n{n}-r{rep}", n, format_problem(cfg.problem), c, cfg.algorithm,
        _bool_str(cfg.bloat_control), _bool_str(cfg.allow_substitution),
        lam if lam is not None else "", cfg.s_init, cfg.eval_budget, cfg.seed,
        record.evaluations_used, _bool_str(record.success), num, den_pow2,
        record.final_size, record.unexpressed_count,
    )
    return ",".join(str(f) for f in fields)


def run_experiment(spec: ExperimentSpec, workers: int = 1):
    """Execute the sweep; returns [(n, rep, cfg, record)] in CSV order and
    writes spec.output_path when set (byte-identical across reruns)."""
    spec.validate()
    jobs = list(iter_run_configs(spec))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(execute_run, [cfg for _, _, cfg in jobs],
                                    chunksize=1))
    else:
        records = [execute_run(cfg) for _, _, cfg in jobs]
    results = [(n, rep, cfg, rec)
               for (n, rep, cfg), rec in zip(jobs, records)]
    if spec.output_path:
        write_csv(spec.output_path, results)
    return results


def write_csv(path: str, results) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for n, rep, cfg, record in results:
            fh.write(csv_row(n, rep, cfg, record) + "\n")


def read_rows(path: str) -> list[dict]:
    """Parse a harness CSV back into typed row dicts."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        expected = CSV_HEADER.split(",")
        if reader.fieldnames != expected:
            raise ConfigError(f"CSV columns {reader.fieldnames} do not match "
                              f"the harness schema")
        rows = []
        for raw in reader:
            rows.append({
                "run_id": raw["run_id"],
                "n": int(raw["n"]),
                "problem": raw["problem"],
                "c": int(raw["c"]) if raw["c"] else None,
                "algorithm": raw["algorithm"],
                "bloat_control": raw["bloat_control"] == "true",
                "allow_substitutions": raw["allow_substitutions"] == "true",
                "lambda": int(raw["lambda"]) if raw["lambda"] else None,
                "s_init": int(raw["s_init"]),
                "eval_budget": int(raw["eval_budget"]),
                "seed": int(raw["seed"]),
                "evaluations": int(raw["evaluations"]),
                "success": raw["success"] == "true",
                "final_value_num": int(raw["final_value_num"]),
                "final_value_den_pow2": int(raw["final_value_den_pow2"]),
                "final_size": int(raw["final_size"]),
                "unexpressed": int(raw["unexpressed"]),
            })
        return rows


@dataclass(frozen=True)
class BoxStats:
    min: float
    q1: float
    median: float
    q3: float
    max: float
    success_count: int


def quantile(sorted_values, p: float) -> float:
    """Rank p*(N-1) with linear interpolation between order statistics."""
    if not sorted_values:
        raise ConfigError("empty group has no quantiles")
    h = p * (len(sorted_values) - 1)
    lo = math.floor(h)
    frac = h - lo
    if frac == 0.0:
        return float(sorted_values[lo])
    return sorted_values[lo] + (sorted_values[lo + 1] - sorted_values[lo]) * frac


def box_stats(evaluations, successes) -> BoxStats:
    vals = sorted(evaluations)
    if not vals:
        raise ConfigError("empty group has no statistics")
    return BoxStats(
        min=float(vals[0]),
        q1=quantile(vals, 0.25),
        median=quantile(vals, 0.5),
        q3=quantile(vals, 0.75),
        max=float(vals[-1]),
        success_count=sum(1 for s in successes if s),
    )


GROUP_FIELDS = ("problem", "c", "algorithm", "bloat_control",
                "allow_substitutions", "lambda")


def group_key(row: dict) -> tuple:
    return tuple(row[f] for f in GROUP_FIELDS)


def summarize(rows) -> dict[tuple, dict[int, BoxStats]]:
    """BoxStats per (configuration group, n) over the evaluations column."""
    grouped: dict[tuple, dict[int, list[dict]]] = {}
    for row in rows:
        grouped.setdefault(group_key(row), {}).setdefault(row["n"], []).append(row)
    out: dict[tuple, dict[int, BoxStats]] = {}
    for key in sorted(grouped, key=repr):
        out[key] = {}
        for n in sorted(grouped[key]):
            members = grouped[key][n]
            out[key][n] = box_stats([r["evaluations"] for r in members],
                                    [r["success"] for r in members])
    return out


@dataclass(frozen=True)
class FitResult:
    w: float
    ratios: dict[int, float]


def fit_nlogn(medians: dict[int, float]) -> FitResult:
    """w = median over n of median(n) / (n ln n), plus the per-n ratios."""
    if len(medians) < 2:
        raise ConfigError("fit_nlogn needs medians for at least 2 distinct n")
    ratios = {}
    for n, med in sorted(medians.items()):
        if n < 2:
            raise ConfigError("fit_nlogn needs n >= 2 (ln n must be positive)")
        if med <= 0:
            raise ConfigError("fit_nlogn needs positive medians")
        ratios[n] = med / (n * math.log(n))
    w = quantile(sorted(ratios.values()), 0.5)
    return FitResult(w, ratios)


# ---------------------------------------------------------------------------
# flat key=value config files

_RUN_KEYS = {"problem", "c", "algorithm", "bloat_control", "allow_substitutions",
             "lambda", "stop", "stop_scope", "n", "s_init", "eval_budget",
             "seed", "trace_stride"}
_EXPERIMENT_KEYS = {"problem", "c", "algorithm", "bloat_control",
                    "allow_substitutions", "lambda", "stop", "stop_scope",
                    "n_values", "repetitions", "s_init_rule", "eval_budget",
                    "master_seed", "output_path", "trace_sampling"}


def parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _parse_bool(key: str, text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _build_problem(values: dict[str, str]) -> Problem:
    name = values.get("problem")
    if not name:
        raise ConfigError("missing required key: problem")
    c = _parse_int("c", values["c"]) if "c" in values else 1
    try:
        return parse_problem(name, c)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _check_keys(values: dict[str, str], allowed: set[str]) -> None:
    unknown = sorted(set(values) - allowed)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")


def build_run_config(values: dict[str, str]) -> RunConfig:
    _check_keys(values, _RUN_KEYS)
    for key in ("algorithm", "n", "s_init", "eval_budget", "seed"):
        if key not in values:
            raise ConfigError(f"missing required key: {key}")
    cfg = RunConfig(
        problem=_build_problem(values),
        n=_parse_int("n", values["n"]),
        s_init=_parse_int("s_init", values["s_init"]),
        algorithm=values["algorithm"],
        bloat_control=_parse_bool("bloat_control",
                                  values.get("bloat_control", "false")),
        allow_substitution=_parse_bool("allow_substitutions",
                                       values.get("allow_substitutions", "true")),
        lambda_=_parse_int("lambda", values["lambda"]) if "lambda" in values else None,
        eval_budget=_parse_int("eval_budget", values["eval_budget"]),
        stop=values.get("stop", "all_expressed"),
        stop_scope=values.get("stop_scope", "auto"),
        seed=_parse_int("seed", values["seed"]),
        trace_stride=_parse_int("trace_stride", values["trace_stride"])
        if "trace_stride" in values else None,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def build_experiment_spec(values: dict[str, str]) -> ExperimentSpec:
    _check_keys(values, _EXPERIMENT_KEYS)
    for key in ("algorithm", "n_values", "repetitions", "s_init_rule",
                "eval_budget", "master_seed"):
        if key not in values:
            raise ConfigError(f"missing required key: {key}")
    try:
        n_values = tuple(int(tok) for tok in values["n_values"].split(",") if tok.strip())
    except ValueError:
        raise ConfigError(f"n_values: expected comma-separated integers, "
                          f"got {values['n_values']!r}") from None
    base = RunConfig(
        problem=_build_problem(values),
        n=max(n_values) if n_values else 1,
        s_init=1,
        algorithm=values["algorithm"],
        bloat_control=_parse_bool("bloat_control",
                                  values.get("bloat_control", "false")),
        allow_substitution=_parse_bool("allow_substitutions",
                                       values.get("allow_substitutions", "true")),
        lambda_=_parse_int("lambda", values["lambda"]) if "lambda" in values else None,
        eval_budget=_parse_int("eval_budget", values["eval_budget"]),
        stop=values.get("stop", "all_expressed"),
        stop_scope=values.get("stop_scope", "auto"),
        seed=0,
    )
    spec = ExperimentSpec(
        base=base,
        n_values=n_values,
        repetitions=_parse_int("repetitions", values["repetitions"]),
        s_init_rule=parse_s_init_rule(values["s_init_rule"]),
        master_seed=_parse_int("master_seed", values["master_seed"]),
        output_path=values.get("output_path"),
        trace_sampling=_parse_int("trace_sampling", values["trace_sampling"])
        if "trace_sampling" in values else None,
    )
    spec.validate()
    return spec
