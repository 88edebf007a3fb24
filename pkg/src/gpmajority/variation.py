"""HVL-Prime mutation: substitute / insert / delete, single application.

The operation is chosen uniformly (1/3 each; insert and delete 1/2 each when
substitutions are disabled).  Draw order is fixed so outcomes reproduce from
(parent, seed, flag): operation, then leaf position, then literal, then the
insertion side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .individual import Individual, Literal, random_leaf

SUBSTITUTE = "substitute"
INSERT = "insert"
DELETE = "delete"
NOOP = "noop"


@dataclass(frozen=True)
class MutationOutcome:
    offspring: Individual
    op_kind: str                    # substitute | insert | delete | noop
    position: int | None            # leaf index in the parent (insert: target)
    old_literal: Literal | None
    new_literal: Literal | None
    side: str | None                # insert only: "left" | "right"


def _bump(counts: dict, leaf: Literal, delta: int) -> None:
    p, m = counts.get(leaf.var, (0, 0))
    if leaf.positive:
        p += delta
    else:
        m += delta
    if p == 0 and m == 0:
        counts.pop(leaf.var, None)
    else:
        counts[leaf.var] = (p, m)


def hvl_prime(parent: Individual, rng, allow_substitution: bool = True) -> MutationOutcome:
    """One HVL-Prime application; the parent is never modified."""
    size = parent.size
    if allow_substitution:
        op = (SUBSTITUTE, INSERT, DELETE)[rng.randrange(3)]
    else:
        op = (INSERT, DELETE)[rng.randrange(2)]

    if op == SUBSTITUTE:
        idx = rng.randrange(size)
        new = random_leaf(parent.n, rng)  # may redraw the same literal
        old = parent.leaves[idx]
        leaves = parent.leaves.copy()
        leaves[idx] = new
        counts = dict(parent.counts)
        _bump(counts, old, -1)
        _bump(counts, new, +1)
        offspring = Individual(parent.n, leaves, counts)
        return MutationOutcome(offspring, SUBSTITUTE, idx, old, new, None)

    if op == INSERT:
        idx = rng.randrange(size)
        new = random_leaf(parent.n, rng)
        side = "left" if rng.random() < 0.5 else "right"
        leaves = parent.leaves.copy()
        leaves.insert(idx if side == "left" else idx + 1, new)
        counts = dict(parent.counts)
        _bump(counts, new, +1)
        offspring = Individual(parent.n, leaves, counts)
        return MutationOutcome(offspring, INSERT, idx, None, new, side)

    # delete
    if size == 1:
        # no sibling to promote; offspring identical, still costs one
        # evaluation when the caller scores it
        offspring = Individual(parent.n, parent.leaves.copy(), dict(parent.counts))
        return MutationOutcome(offspring, NOOP, None, None, None, None)
    idx = rng.randrange(size)
    old = parent.leaves[idx]
    leaves = parent.leaves.copy()
    del leaves[idx]
    counts = dict(parent.counts)
    _bump(counts, old, -1)
    offspring = Individual(parent.n, leaves, counts)
    return MutationOutcome(offspring, DELETE, idx, old, None, None)
