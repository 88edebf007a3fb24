"""Box-plot rendering for gpmajority benchmark CSVs."""

from .figures import (
    CSV_COLUMNS,
    GROUP_FIELDS,
    FigureError,
    FigureSpec,
    Overlay,
    apply_filters,
    build_figure,
    quantile,
    read_rows,
    render_boxplot,
    stats_lines,
)

__all__ = [
    "CSV_COLUMNS",
    "GROUP_FIELDS",
    "FigureError",
    "FigureSpec",
    "Overlay",
    "apply_filters",
    "build_figure",
    "quantile",
    "read_rows",
    "render_boxplot",
    "stats_lines",
]
