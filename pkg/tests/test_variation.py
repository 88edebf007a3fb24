"""HVL-Prime mutation operator: shapes, bookkeeping, reproducibility, rates."""

import random

from gpmajority.individual import (Literal, counts_from_leaves, make_individual,
                                   random_individual)
from gpmajority.variation import DELETE, INSERT, NOOP, SUBSTITUTE, hvl_prime


def test_substitute_keeps_size():
    parent = make_individual(3, [Literal(1, True), Literal(2, False)])
    rng = random.Random(0)
    for _ in range(50):
        out = hvl_prime(parent, rng)
        if out.op_kind == SUBSTITUTE:
            child = out.offspring
            assert child.size == parent.size
            assert child.leaves[out.position] == out.new_literal
            assert parent.leaves[out.position] == out.old_literal
            others = [l for i, l in enumerate(child.leaves) if i != out.position]
            assert others == [l for i, l in enumerate(parent.leaves)
                              if i != out.position]


def test_insert_grows_by_one_next_to_target():
    parent = make_individual(3, [Literal(1, True), Literal(2, False),
                                 Literal(3, True)])
    rng = random.Random(1)
    for _ in range(80):
        out = hvl_prime(parent, rng)
        if out.op_kind == INSERT:
            child = out.offspring
            assert child.size == parent.size + 1
            at = out.position if out.side == "left" else out.position + 1
            assert child.leaves[at] == out.new_literal
            assert child.leaves[:at] + child.leaves[at + 1:] == parent.leaves


def test_delete_shrinks_by_one():
    parent = make_individual(3, [Literal(1, True), Literal(2, False),
                                 Literal(3, True)])
    rng = random.Random(2)
    for _ in range(80):
        out = hvl_prime(parent, rng)
        if out.op_kind == DELETE:
            child = out.offspring
            assert child.size == parent.size - 1
            assert parent.leaves[out.position] == out.old_literal
            assert child.leaves == parent.leaves[:out.position] + \
                parent.leaves[out.position + 1:]


def test_delete_on_single_leaf_is_noop():
    parent = make_individual(2, [Literal(1, True)])
    rng = random.Random(3)
    seen_noop = False
    for _ in range(60):
        out = hvl_prime(parent, rng)
        if out.op_kind == NOOP:
            seen_noop = True
            assert out.offspring.leaves == parent.leaves
            assert out.offspring is not parent
    assert seen_noop


def test_parent_never_modified():
    rng = random.Random(4)
    parent = random_individual(5, 12, rng)
    frozen_leaves = list(parent.leaves)
    frozen_counts = dict(parent.counts)
    for _ in range(300):
        hvl_prime(parent, rng)
    assert parent.leaves == frozen_leaves
    assert parent.counts == frozen_counts


def test_offspring_counts_stay_consistent():
    # long unselected mutation chain: the incremental count map never drifts
    # from the recounted histogram
    rng = random.Random(5)
    ind = random_individual(10, 1, rng)
    for step in range(10_000):
        ind = hvl_prime(ind, rng).offspring
        if step % 500 == 0:
            assert ind.counts == counts_from_leaves(ind.leaves)
    assert ind.counts == counts_from_leaves(ind.leaves)


def test_reproducible_from_seed():
    parent = random_individual(6, 9, random.Random(10))
    a = hvl_prime(parent, random.Random(99))
    b = hvl_prime(parent, random.Random(99))
    assert a == b


def test_substitution_flag_disables_substitute():
    parent = random_individual(4, 6, random.Random(11))
    rng = random.Random(12)
    kinds = {hvl_prime(parent, rng, allow_substitution=False).op_kind
             for _ in range(200)}
    assert SUBSTITUTE not in kinds
    assert kinds == {INSERT, DELETE}


def test_operation_and_position_frequencies():
    # 3*10^5 mutations of a fixed size-100 parent over n=10: operations at
    # 1/3 each (5 sigma ~ 0.005), substitute positions uniform at 1/100
    # (5 sigma on 10^5 hits ~ 0.005 absolute on a 0.01 frequency... use counts)
    rng = random.Random(20240601)
    parent = random_individual(10, 100, rng)
    draws = 300_000
    op_counts = {SUBSTITUTE: 0, INSERT: 0, DELETE: 0}
    pos_counts = [0] * parent.size
    for _ in range(draws):
        out = hvl_prime(parent, rng)
        op_counts[out.op_kind] += 1
        if out.op_kind == SUBSTITUTE:
            pos_counts[out.position] += 1
    for op, count in op_counts.items():
        assert abs(count / draws - 1 / 3) < 0.005, op
    subs = op_counts[SUBSTITUTE]
    # each position ~ Binomial(subs, 1/100); 5 sigma
    sigma = (0.01 * 0.99 / subs) ** 0.5
    for pos, count in enumerate(pos_counts):
        assert abs(count / subs - 0.01) < 5 * sigma, pos


def test_insert_side_is_a_fair_coin():
    rng = random.Random(20240602)
    parent = random_individual(5, 10, rng)
    left = total = 0
    for _ in range(100_000):
        out = hvl_prime(parent, rng)
        if out.op_kind == INSERT:
            total += 1
            left += out.side == "left"
    assert abs(left / total - 0.5) < 5 * (0.25 / total) ** 0.5
