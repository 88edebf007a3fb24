"""Box-plot figures for benchmark CSVs written by the gpmajority harness.

This package talks to the benchmark only through its CSV schema and command
line.  Statistics are recomputed here with the same quantile rule (rank
p*(N-1), linear interpolation between order statistics) so the numbers
printed next to a figure match `gpmajority summarize` character for
character.  Whiskers span the full min..max range of each group.
"""

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")  # file output only; never touch a display
import matplotlib.pyplot as plt  # noqa: E402

CSV_COLUMNS = (
    "run_id", "n", "problem", "c", "algorithm", "bloat_control",
    "allow_substitutions", "lambda", "s_init", "eval_budget", "seed",
    "evaluations", "success", "final_value_num", "final_value_den_pow2",
    "final_size", "unexpressed",
)
GROUP_FIELDS = ("problem", "c", "algorithm", "bloat_control",
                "allow_substitutions", "lambda")


class FigureError(ValueError):
    """Bad figure request (missing columns, empty groups, bad values)."""


@dataclass(frozen=True)
class Overlay:
    w: float
    label: str


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    output_path: str
    group_keys: tuple[str, ...] = ("algorithm", "bloat_control")
    overlays: tuple[Overlay, ...] = ()
    only: tuple[str, ...] = ()      # "column=text" row filters, CSV spelling


def read_rows(path: str) -> list[dict]:
    """Parse a harness CSV into typed row dicts, checking the schema."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise FigureError(f"CSV columns {reader.fieldnames} do not match "
                              f"the harness schema {list(CSV_COLUMNS)}")
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
    if not rows:
        raise FigureError(f"{path}: no data rows")
    return rows


def _csv_text(value) -> str:
    """A typed cell back in its CSV spelling (for --only comparisons)."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def apply_filters(rows: list[dict], only) -> list[dict]:
    for selector in only:
        column, sep, text = selector.partition("=")
        if not sep:
            raise FigureError(f"bad filter {selector!r}; expected column=text")
        if column not in CSV_COLUMNS:
            raise FigureError(f"unknown column {column!r} in filter {selector!r}")
        rows = [r for r in rows if _csv_text(r[column]) == text]
        if not rows:
            raise FigureError(f"empty group: no rows match {selector!r}")
    return rows


def quantile(sorted_values, p: float) -> float:
    """Rank p*(N-1) with linear interpolation between order statistics."""
    if not sorted_values:
        raise FigureError("empty group has no quantiles")
    h = p * (len(sorted_values) - 1)
    lo = math.floor(h)
    frac = h - lo
    if frac == 0.0:
        return float(sorted_values[lo])
    return sorted_values[lo] + (sorted_values[lo + 1] - sorted_values[lo]) * frac


def group_key(row: dict) -> tuple:
    return tuple(row[f] for f in GROUP_FIELDS)


def stats_lines(rows: list[dict]) -> list[str]:
    """Per-(configuration group, n) box statistics over the evaluations
    column, formatted exactly like `gpmajority summarize`."""
    grouped: dict[tuple, dict[int, list[dict]]] = {}
    for row in rows:
        grouped.setdefault(group_key(row), {}).setdefault(row["n"], []).append(row)
    lines = []
    for key in sorted(grouped, key=repr):
        parts = [f"{fld}={'' if v is None else v}"
                 for fld, v in zip(GROUP_FIELDS, key)]
        lines.append("group " + " ".join(parts))
        for n in sorted(grouped[key]):
            members = grouped[key][n]
            vals = sorted(r["evaluations"] for r in members)
            successes = sum(1 for r in members if r["success"])
            lines.append(f"n={n} runs={len(members)} successes={successes} "
                         f"min={float(vals[0])} q1={quantile(vals, 0.25)} "
                         f"median={quantile(vals, 0.5)} q3={quantile(vals, 0.75)} "
                         f"max={float(vals[-1])}")
    return lines


def build_figure(rows: list[dict], spec: FigureSpec):
    """One box per (n, group) with min/max whiskers, plus w*n*ln(n) overlays."""
    for column in spec.group_keys:
        if column not in CSV_COLUMNS:
            raise FigureError(f"unknown group column {column!r}")
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault(tuple(row[k] for k in spec.group_keys), []).append(row)

    ns = sorted({row["n"] for row in rows})
    slot = (min(b - a for a, b in zip(ns, ns[1:]))
            if len(ns) > 1 else max(ns[0] * 0.4, 1.0))
    width = 0.7 * slot / max(len(groups), 1)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]

    fig, ax = plt.subplots(figsize=(7.5, 5))
    for gi, gk in enumerate(sorted(groups, key=repr)):
        per_n: dict[int, list[int]] = {}
        for row in groups[gk]:
            per_n.setdefault(row["n"], []).append(row["evaluations"])
        stats, positions = [], []
        for n in sorted(per_n):
            vals = sorted(per_n[n])
            stats.append({"med": quantile(vals, 0.5),
                          "q1": quantile(vals, 0.25),
                          "q3": quantile(vals, 0.75),
                          "whislo": float(vals[0]),
                          "whishi": float(vals[-1])})
            positions.append(n + (gi - (len(groups) - 1) / 2) * width * 1.15)
        color = colors[gi % len(colors)]
        drawn = ax.bxp(stats, positions=positions, widths=width,
                       showfliers=False, patch_artist=True,
                       boxprops={"facecolor": color, "alpha": 0.45},
                       medianprops={"color": "black"})
        label = ", ".join(f"{k}={_csv_text(v) or 'none'}"
                          for k, v in zip(spec.group_keys, gk))
        drawn["boxes"][0].set_label(label)

    for overlay in spec.overlays:
        if len(ns) > 1:
            lo, hi = ns[0], ns[-1]
            xs = [lo + (hi - lo) * i / 200 for i in range(201)]
        else:
            xs = ns
        ax.plot(xs, [overlay.w * x * math.log(x) for x in xs],
                label=overlay.label)

    ax.set_xlabel("n, number of variables")
    ax.set_ylabel("number of evaluations")
    ax.set_xticks(ns)
    ax.set_xticklabels(str(n) for n in ns)
    ax.legend(loc="best")
    fig.tight_layout()
    return fig


def render_boxplot(spec: FigureSpec) -> str:
    """Write the figure to spec.output_path and print the box statistics;
    returns the output path."""
    rows = apply_filters(read_rows(spec.csv_path), spec.only)
    fig = build_figure(rows, spec)
    try:
        fig.savefig(spec.output_path)
    finally:
        plt.close(fig)
    for line in stats_lines(rows):
        print(line)
    return spec.output_path
