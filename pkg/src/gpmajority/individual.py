"""GP individuals over the literal terminal set {x_1, ~x_1, ..., x_n, ~x_n}.

The join symbol J is the only inner node and has arity 2, so a tree with s
leaves has s - 1 inner nodes and the fitness of every Majority variant
depends only on the leaf multiset.  Individuals therefore store the ordered
leaf sequence plus the per-variable literal counts; no node graph is kept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple


class Literal(NamedTuple):
    var: int            # variable index in [1, n]
    positive: bool      # True for x_i, False for ~x_i

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"


_LITERAL_RE = re.compile(r"^(~?)x(\d+)$")


def literal_from_str(text: str) -> Literal:
    m = _LITERAL_RE.match(text)
    if not m:
        raise ValueError(f"not a literal token: {text!r}")
    var = int(m.group(2))
    if var < 1:
        raise ValueError(f"variable index must be >= 1: {text!r}")
    return Literal(var, m.group(1) == "")


def counts_from_leaves(leaves) -> dict[int, tuple[int, int]]:
    """Histogram of (s_plus, s_minus) per variable, zero pairs omitted."""
    counts: dict[int, list[int]] = {}
    for leaf in leaves:
        pair = counts.get(leaf.var)
        if pair is None:
            pair = [0, 0]
            counts[leaf.var] = pair
        pair[0 if leaf.positive else 1] += 1
    return {v: (p[0], p[1]) for v, p in counts.items()}


@dataclass
class Individual:
    """Leaf sequence plus its literal-count histogram.

    counts maps var -> (s_plus, s_minus) and is kept exactly equal to the
    histogram of leaves; variables not occurring are absent from the map.
    Treat instances as immutable once handed out.
    """

    n: int
    leaves: list[Literal]
    counts: dict[int, tuple[int, int]] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.leaves:
            raise ValueError("individual must have at least one leaf")
        for leaf in self.leaves:
            if not 1 <= leaf.var <= self.n:
                raise ValueError(f"leaf {leaf} outside variable range 1..{self.n}")
        if self.counts is None:
            self.counts = counts_from_leaves(self.leaves)

    @property
    def size(self) -> int:
        return len(self.leaves)

    def count_pair(self, var: int) -> tuple[int, int]:
        return self.counts.get(var, (0, 0))


def make_individual(n: int, leaves) -> Individual:
    return Individual(n, list(leaves))


def random_leaf(n: int, rng) -> Literal:
    k = rng.randrange(2 * n)
    return Literal((k >> 1) + 1, (k & 1) == 0)


def random_individual(n: int, s_init: int, rng) -> Individual:
    """Random tree of exactly s_init leaves.

    Starts from one uniformly random leaf and performs s_init - 1 insertions
    in HVL-Prime style: uniform target leaf, uniform new literal, fair coin
    for the side.  Draw order per insertion: target index, literal, side.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if s_init < 1:
        raise ValueError("s_init must be >= 1")
    leaves = [random_leaf(n, rng)]
    for _ in range(s_init - 1):
        idx = rng.randrange(len(leaves))
        lit = random_leaf(n, rng)
        if rng.random() < 0.5:
            leaves.insert(idx, lit)
        else:
            leaves.insert(idx + 1, lit)
    return Individual(n, leaves)


def join(a: Individual, b: Individual) -> Individual:
    """Concatenation: a new J node over both trees; leaf order a then b."""
    if a.n != b.n:
        raise ValueError(f"join requires equal n, got {a.n} and {b.n}")
    counts = dict(a.counts)
    for var, (p, m) in b.counts.items():
        ap, am = counts.get(var, (0, 0))
        counts[var] = (ap + p, am + m)
    return Individual(a.n, a.leaves + b.leaves, counts)


def export_tree(ind: Individual) -> str:
    """Canonical left-deep comb over the leaf sequence.

    [l1, l2, l3] renders as (J (J l1 l2) l3).  Any shape is
    fitness-equivalent; a deterministic one round-trips through parse_tree.
    """
    leaves = ind.leaves
    if len(leaves) == 1:
        return str(leaves[0])
    parts = ["(J " * (len(leaves) - 1), str(leaves[0])]
    for leaf in leaves[1:]:
        parts.append(f" {leaf})")
    return "".join(parts)


def parse_tree(text: str, n: int | None = None) -> Individual:
    """Inverse of export_tree; accepts any binary J-tree over literal tokens.

    When n is omitted it defaults to the largest variable index present.
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse_node() -> list[Literal]:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens) or tokens[pos] != "J":
                raise ValueError("expected J after '('")
            pos += 1
            left = parse_node()
            right = parse_node()
            if pos >= len(tokens) or tokens[pos] != ")":
                raise ValueError("expected ')' closing J node")
            pos += 1
            return left + right
        if tok in (")", "J"):
            raise ValueError(f"unexpected token {tok!r}")
        return [literal_from_str(tok)]

    leaves = parse_node()
    if pos != len(tokens):
        raise ValueError("trailing tokens after tree")
    if n is None:
        n = max(leaf.var for leaf in leaves)
    return Individual(n, leaves)
