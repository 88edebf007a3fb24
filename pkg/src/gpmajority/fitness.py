"""Majority-variant fitness functions and exact acceptance.

Every variant factors through the per-variable counts (s_plus, s_minus):

  majority                   expressed iff s+ >= 1 and s+ >= s-
  plus_c_majority            expressed iff s+ >= s- + c
  two_thirds_majority        expressed iff s >= 1 and 3 s+ >= 2 s
  two_thirds_super_majority  same predicate; value sums f_i = 2 - 2^(s- - s+)
                             over expressed variables, exactly

Counting variants score the number of expressed variables (an int);
SuperMajority scores an exact dyadic rational (fractions.Fraction).  All
comparisons are exact -- plateau dynamics decide every runtime result, so a
floating-point tie breaking the wrong way would silently change acceptance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .individual import Individual

MAJORITY = "majority"
PLUS_C = "plus_c_majority"
TWO_THIRDS = "two_thirds_majority"
SUPER = "two_thirds_super_majority"

PROBLEM_KINDS = (MAJORITY, PLUS_C, TWO_THIRDS, SUPER)

# external (CLI / config / CSV) spellings
_KIND_TO_NAME = {
    MAJORITY: "majority",
    PLUS_C: "plus-c-majority",
    TWO_THIRDS: "two-thirds-majority",
    SUPER: "two-thirds-super-majority",
}
_NAME_TO_KIND = {v: k for k, v in _KIND_TO_NAME.items()}

POSITIVE_CRITICAL = "positive_critical"
NEGATIVE_CRITICAL = "negative_critical"
REDUNDANT = "redundant"


@dataclass(frozen=True)
class Problem:
    kind: str
    c: int = 1

    def __post_init__(self):
        if self.kind not in PROBLEM_KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        if self.kind == PLUS_C and self.c < 1:
            raise ValueError("plus_c_majority requires c >= 1")


def parse_problem(name: str, c: int = 1) -> Problem:
    kind = _NAME_TO_KIND.get(name)
    if kind is None:
        raise ValueError(f"unknown problem name {name!r} "
                         f"(expected one of {sorted(_NAME_TO_KIND)})")
    return Problem(kind, c)


def format_problem(problem: Problem) -> str:
    return _KIND_TO_NAME[problem.kind]


@dataclass(frozen=True)
class Score:
    value: "int | Fraction"     # exact, dyadic for SuperMajority
    size: int


def expressed(problem: Problem, s_plus: int, s_minus: int) -> bool:
    if s_plus < 0 or s_minus < 0:
        raise ValueError("counts must be non-negative")
    kind = problem.kind
    if kind == MAJORITY:
        return s_plus >= 1 and s_plus >= s_minus
    if kind == PLUS_C:
        return s_plus >= s_minus + problem.c
    # 2/3 test, exact integers: 3 s+ >= 2 (s+ + s-)  <=>  s+ >= 2 s-
    return s_plus >= 1 and s_plus >= 2 * s_minus


def evaluate(problem: Problem, ind: Individual) -> Score:
    if problem.kind != SUPER:
        value = 0
        for p, m in ind.counts.values():
            if expressed(problem, p, m):
                value += 1
        return Score(value, ind.size)
    # single shared power-of-two denominator, one Fraction at the end
    ds = [p - m for p, m in ind.counts.values() if p >= 1 and p >= 2 * m]
    if not ds:
        return Score(Fraction(0), ind.size)
    dmax = max(ds)
    num = sum((2 << dmax) - (1 << (dmax - d)) for d in ds)
    return Score(Fraction(num, 1 << dmax), ind.size)


def accept(problem: Problem, bloat_control: bool, candidate: Score,
           incumbent: Score) -> bool:
    """Candidate replaces incumbent?  Exact, ties accepted.

    Without bloat control: value >=.  With bloat control the size acts as a
    lexicographic second-order term: strictly better value, or equal value
    and size <=.  Equal value and equal size accepts, which keeps neutral
    substitutions possible (they drive genetic drift on the plateaus).
    """
    if candidate.value != incumbent.value:
        return candidate.value > incumbent.value
    return (not bloat_control) or candidate.size <= incumbent.size


def _leaf_classes_for_var(problem: Problem, p: int, m: int) -> tuple[str, str]:
    """(class of a positive leaf, class of a negative leaf) for counts (p, m).

    Classes are decided by the fitness change of physically deleting one such
    leaf; because fitness factors through counts this is a pure function of
    (p, m).  Entries for leaves that do not exist (p == 0 / m == 0) are
    unused by callers.
    """
    if problem.kind == SUPER:
        if p >= 1 and p >= 2 * m:
            # every literal of an expressed variable shifts f_i = 2 - 2^(m-p)
            return POSITIVE_CRITICAL, NEGATIVE_CRITICAL
        pos = REDUNDANT  # removing x_i from an unexpressed variable: f_i stays 0
        neg = NEGATIVE_CRITICAL if (p >= 1 and p >= 2 * (m - 1)) else REDUNDANT
        return pos, neg
    e = expressed(problem, p, m)
    if e:
        pos = REDUNDANT if expressed(problem, p - 1, m) else POSITIVE_CRITICAL
        neg = REDUNDANT  # dropping a negative can only help; value already counts it
    else:
        pos = REDUNDANT  # monotone in s+: still unexpressed after deletion
        neg = NEGATIVE_CRITICAL if (m >= 1 and expressed(problem, p, m - 1)) else REDUNDANT
    return pos, neg


def classify_leaves(problem: Problem, ind: Individual) -> list[str]:
    """Per-leaf class in leaf order, O(size + variables)."""
    table = {var: _leaf_classes_for_var(problem, p, m)
             for var, (p, m) in ind.counts.items()}
    return [table[leaf.var][0 if leaf.positive else 1] for leaf in ind.leaves]


def deletion_stable(problem: Problem, ind: Individual) -> bool:
    """No redundant and no negative-critical leaf: no single deletion would
    be accepted under bloat control."""
    for var, (p, m) in ind.counts.items():
        pos, neg = _leaf_classes_for_var(problem, p, m)
        if p >= 1 and pos != POSITIVE_CRITICAL:
            return False
        if m >= 1 and neg != POSITIVE_CRITICAL:
            return False
    return True
