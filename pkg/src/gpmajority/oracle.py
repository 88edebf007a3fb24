"""Slow, independent reference implementations used to validate fast paths.

Everything here recomputes from the raw leaf sequence: full rescans, physical
deletions, no sharing with the incremental code beyond the type definitions.
Being slow and obvious is the point.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

from .fitness import (MAJORITY, NEGATIVE_CRITICAL, PLUS_C, POSITIVE_CRITICAL,
                      REDUNDANT, SUPER, Problem, Score)
from .individual import Individual


def _score_leaf_list(problem: Problem, n: int, leaves) -> "int | Fraction":
    pos = [0] * (n + 1)
    neg = [0] * (n + 1)
    for var, positive in leaves:
        if positive:
            pos[var] += 1
        else:
            neg[var] += 1
    kind = problem.kind
    if kind == SUPER:
        total = Fraction(0)
        for var in range(1, n + 1):
            p = pos[var]
            m = neg[var]
            if p >= 1 and 3 * p >= 2 * (p + m):
                total += 2 - Fraction(1, 2 ** (p - m))
        return total
    value = 0
    for var in range(1, n + 1):
        p = pos[var]
        m = neg[var]
        if kind == MAJORITY:
            ok = p >= 1 and p >= m
        elif kind == PLUS_C:
            ok = p >= m + problem.c
        else:
            ok = p >= 1 and 3 * p >= 2 * (p + m)
        if ok:
            value += 1
    return value


def brute_force_score(problem: Problem, ind: Individual) -> Score:
    """Recount everything from the leaf sequence and apply the definitions."""
    return Score(_score_leaf_list(problem, ind.n, ind.leaves), ind.size)


def brute_force_classify(problem: Problem, ind: Individual) -> list[str]:
    """Class per leaf by actually deleting it and re-scoring."""
    n = ind.n
    work = list(ind.leaves)
    base = _score_leaf_list(problem, n, work)
    classes = []
    for idx in range(len(work)):
        leaf = work.pop(idx)
        after = _score_leaf_list(problem, n, work)
        work.insert(idx, leaf)
        if after < base:
            classes.append(POSITIVE_CRITICAL)
        elif after > base:
            classes.append(NEGATIVE_CRITICAL)
        else:
            classes.append(REDUNDANT)
    return classes


def poisson_reference(nu: float, k: int, l: int) -> float:
    """Expected fraction of variables with (s+, s-) = (k, l) in a random tree
    of size nu * n: e^-nu (nu/2)^(k+l) / (k! l!)."""
    if nu <= 0:
        raise ValueError("nu must be positive")
    if k < 0 or l < 0:
        raise ValueError("counts must be non-negative")
    return math.exp(-nu) * (nu / 2.0) ** (k + l) / (math.factorial(k) * math.factorial(l))


def literal_histogram(ind: Individual) -> dict[tuple[int, int], int]:
    """N_{k,l}: how many of the n variables have exactly (k, l) literals.
    Includes the (0, 0) bucket, so the values always sum to n."""
    hist: Counter = Counter()
    for p, m in ind.counts.values():
        hist[(p, m)] += 1
    absent = ind.n - len(ind.counts)
    if absent:
        hist[(0, 0)] += absent
    return dict(hist)
