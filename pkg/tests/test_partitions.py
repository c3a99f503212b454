"""Ordered partitions, subpartitions, runs, and the run-size oracle."""

import itertools

import pytest

from tuhf import (
    Order,
    OrderedPartition,
    OrderedSubpartition,
    compare,
    compose,
    format_partition,
    interleaved_runs,
    ordered_partitions,
    parse_partition,
    psize_oracle,
    restrict_prefix,
    runs_of,
)
from tuhf.partitions import (
    HypothesisViolated,
    OutOfRange,
    RankOrderViolation,
    Run,
    ShapeMismatch,
    UnequalBlockSizes,
)


def from_blocks(*blocks):
    return OrderedPartition.from_blocks(blocks)


# -- validation ---------------------------------------------------------

def test_validate_standard_pattern():
    p = from_blocks((1, 3), (2, 4))
    assert p.block(1) == (1, 3)
    assert p.block(2) == (2, 4)


def test_validate_rank_order_violation():
    # blocks {1,4},{2,3}: at rank 2 the first block holds 4 > 3
    with pytest.raises(RankOrderViolation):
        from_blocks((1, 4), (2, 3))


def test_validate_unequal_block_sizes():
    with pytest.raises(UnequalBlockSizes):
        from_blocks((1,), (2, 3, 4))


# -- compare ------------------------------------------------------------

def test_compare_nest_below_standard():
    nest_p = from_blocks((1, 2), (3, 4))
    std_p = from_blocks((1, 3), (2, 4))
    # element 2 sits in block 1 on the left, block 2 on the right
    assert compare(nest_p, std_p) is Order.LESS
    assert compare(std_p, nest_p) is Order.GREATER
    assert compare(std_p, std_p) is Order.EQUAL


def test_compare_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compare(from_blocks((1, 2), (3, 4)), from_blocks((1, 2, 3), (4, 5, 6)))


def test_compare_total_order_exhaustive():
    # all ordered partitions of 1..6 into 2 blocks; pairwise verdicts
    # must be antisymmetric, transitive, and total
    ps = list(ordered_partitions(6, 2))
    assert len(ps) == 5  # ballot sequences: Catalan(3)
    for a, b in itertools.product(ps, ps):
        v = compare(a, b)
        back = compare(b, a)
        if v is Order.EQUAL:
            assert a == b and back is Order.EQUAL
        elif v is Order.LESS:
            assert back is Order.GREATER
        else:
            assert back is Order.LESS
    for a, b, c in itertools.product(ps, ps, ps):
        if compare(a, b) is not Order.GREATER and compare(b, c) is not Order.GREATER:
            assert compare(a, c) is not Order.GREATER


def test_enumerator_matches_brute_force():
    # independent oracle: filter every assignment of 1..6 into 3 labeled
    # blocks through the validating constructor
    found = set()
    for assign in itertools.product((1, 2, 3), repeat=6):
        try:
            found.add(OrderedPartition.from_assignment(assign, 3))
        except Exception:
            continue
    assert found == set(ordered_partitions(6, 3))


# -- restrict_prefix ----------------------------------------------------

def test_restrict_prefix_examples():
    p = from_blocks((1, 3), (2, 4))
    sub = restrict_prefix(p, 2)
    assert sub.blocks == ((1,), (2,))

    q = from_blocks((1, 2, 5, 6), (3, 4, 7, 8))
    sub = restrict_prefix(q, 5)
    assert sub.blocks == ((1, 2, 5), (3, 4))

    full = restrict_prefix(q, 8)
    assert full.blocks == ((1, 2, 5, 6), (3, 4, 7, 8))


def test_restrict_prefix_out_of_range():
    p = from_blocks((1, 3), (2, 4))
    with pytest.raises(OutOfRange):
        restrict_prefix(p, 0)
    with pytest.raises(OutOfRange):
        restrict_prefix(p, 5)


def test_subpartition_invariants_checked():
    # sizes must be weakly decreasing
    with pytest.raises(Exception):
        OrderedSubpartition(((1,), (2, 3)))


# -- runs ---------------------------------------------------------------

def test_runs_of_examples():
    assert runs_of((1, 3, 4, 7)) == (Run(1, 1), Run(3, 4), Run(7, 7))
    assert runs_of(()) == ()
    assert runs_of((1, 2, 5, 6)) == (Run(1, 2), Run(5, 6))


def test_runs_cover_and_are_maximal():
    s = (2, 3, 4, 8, 10, 11)
    runs = runs_of(s)
    flat = [e for run in runs for e in run.elements()]
    assert flat == list(s)
    for a, b in zip(runs, runs[1:]):
        assert a.hi + 1 < b.lo  # maximality: no two runs touch


def test_interleaved_runs_examples():
    std_p = from_blocks((1, 3), (2, 4))
    grid = interleaved_runs(std_p)
    assert grid == ((Run(1, 1), Run(2, 2)), (Run(3, 3), Run(4, 4)))

    nest_p = from_blocks((1, 2), (3, 4))
    assert interleaved_runs(nest_p) == ((Run(1, 2), Run(3, 4)),)

    alt_p = from_blocks((1, 2, 5, 6), (3, 4, 7, 8))
    assert interleaved_runs(alt_p) == (
        (Run(1, 2), Run(3, 4)),
        (Run(5, 6), Run(7, 8)),
    )


def test_interleaved_runs_with_empty_cells():
    # {1,4},{2,5},{3,6}: each block splits into singletons one apart
    p = from_blocks((1, 4), (2, 5), (3, 6))
    grid = interleaved_runs(p)
    assert grid == (
        (Run(1, 1), Run(2, 2), Run(3, 3)),
        (Run(4, 4), Run(5, 5), Run(6, 6)),
    )


# -- run-size oracle ----------------------------------------------------

def test_psize_single_run_trivial():
    p = from_blocks((1, 2), (3, 4))
    # R = first block, S = its two singleton... the image {1,2} is one
    # run; split it as S_1, S_2 of size 1 each
    assert psize_oracle((Run(1, 1),), (Run(1, 1), Run(2, 2)), p) is True


def test_psize_worked_example():
    # R = ({1},{2,3}) against the nest doubling of 1..3: image runs of
    # size two chunk into S_1..S_3 with |S_1| = |S_2| = 2, and the
    # source sizes 1 <= 2 come out ordered
    theta = from_blocks((1, 2), (3, 4), (5, 6))
    r_runs = (Run(1, 1), Run(2, 3))
    s_runs = (Run(1, 2), Run(3, 4), Run(5, 6))
    assert psize_oracle(r_runs, s_runs, theta) is True


def test_psize_adjacent_source_runs_are_legal():
    # {1} and {2,3} touch; the hypotheses ask for R_1 < R_2, not a gap
    theta = from_blocks((1, 2), (3, 4), (5, 6))
    psize_oracle((Run(1, 1), Run(2, 3)), (Run(1, 2), Run(3, 4), Run(5, 6)), theta)


def test_psize_hypothesis_violations():
    theta = from_blocks((1, 2), (3, 4), (5, 6))
    with pytest.raises(HypothesisViolated):
        psize_oracle((), (Run(1, 2),), theta)  # no source runs
    with pytest.raises(HypothesisViolated):
        # wrong target count: n runs need n+1 targets
        psize_oracle((Run(1, 1), Run(2, 3)), (Run(1, 2), Run(3, 6)), theta)
    with pytest.raises(HypothesisViolated):
        # first n target sizes must agree
        psize_oracle(
            (Run(1, 1), Run(2, 3)), (Run(1, 1), Run(2, 4), Run(5, 6)), theta
        )
    with pytest.raises(HypothesisViolated):
        # image of the sources must equal the union of the targets
        psize_oracle(
            (Run(1, 1), Run(2, 2)), (Run(1, 1), Run(2, 2), Run(3, 3)), theta
        )
    with pytest.raises(HypothesisViolated):
        # overlapping source runs
        psize_oracle(
            (Run(1, 2), Run(2, 3)), (Run(1, 2), Run(3, 4), Run(5, 6)), theta
        )


# -- compose ------------------------------------------------------------

def test_compose_identity():
    p = from_blocks((1, 3), (2, 4))
    ident = from_blocks((1,), (2,))
    assert compose(p, ident) == p


def test_compose_standard_chain():
    inner = from_blocks((1, 3), (2, 4))  # standard 2 -> 4
    outer = from_blocks((1, 5), (2, 6), (3, 7), (4, 8))  # standard 4 -> 8
    assert compose(outer, inner) == from_blocks((1, 3, 5, 7), (2, 4, 6, 8))


def test_compose_nest_chain():
    inner = from_blocks((1, 2), (3, 4))
    outer = from_blocks((1, 2), (3, 4), (5, 6), (7, 8))
    assert compose(outer, inner) == from_blocks((1, 2, 3, 4), (5, 6, 7, 8))


def test_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        compose(from_blocks((1, 2), (3, 4)), from_blocks((1, 2), (3, 4)))


def test_compose_associative_concrete():
    a = from_blocks((1, 2), (3, 4))
    b = from_blocks((1, 3), (2, 4), (5, 7), (6, 8))
    c = from_blocks(*[(i, i + 8) for i in range(1, 9)])
    assert compose(compose(c, b), a) == compose(c, compose(b, a))


# -- serialization ------------------------------------------------------

def test_format_parse_round_trip():
    p = from_blocks((1, 2, 5, 6), (3, 4, 7, 8))
    text = format_partition(p)
    assert text == "m=8 n=2 blocks=1,2,5,6;3,4,7,8"
    assert parse_partition(text) == p


def test_parse_rejects_garbage():
    with pytest.raises(Exception):
        parse_partition("m=4 n=2 blocks=1,2;3")  # sizes differ
    with pytest.raises(Exception):
        parse_partition("blocks=1,2;3,4")
