"""Ordered partitions, ordered subpartitions, and runs.

The diagonal image of a unital triangularity-preserving embedding
T_n -> T_m is an ordered partition of {1..m}: block i collects the
diagonal slots hit by the i-th minimal projection, every block has
m/n elements, and the l-th smallest entries strictly increase from
block to block.  That rank-order condition *is* triangularity, and
scanning the ground set for the first element whose block index
differs induces a total order on same-shape partitions.

Runs -- maximal integer intervals -- are the finer decomposition used
to recognize interval-form actions: a block splits into runs, the runs
of all blocks interleave into a row grid, and the sizes of runs that an
embedding stretches over consecutive targets can only grow.  The three
supporting operations (prefix restriction, interleaving, run-size
monotonicity) live here so they can be exercised independently of any
matrix algebra.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DomainError, FormatError


class InvalidPartition(DomainError):
    """Raw data does not describe an ordered (sub)partition."""


class UnequalBlockSizes(InvalidPartition):
    """Ordered-partition blocks must all have the same size."""


class RankOrderViolation(InvalidPartition):
    """The l-th smallest entries fail to increase across blocks i < j."""

    def __init__(self, block_i: int, block_j: int, rank: int) -> None:
        self.block_i = block_i
        self.block_j = block_j
        self.rank = rank
        super().__init__(
            f"rank {rank} of block {block_i} is not below rank {rank} of block {block_j}"
        )


class ShapeMismatch(DomainError):
    """Operands do not have compatible dimensions."""


class OutOfRange(DomainError):
    """An index argument falls outside its documented range."""


class HypothesisViolated(DomainError):
    """A stated hypothesis of the run-size oracle fails."""

    def __init__(self, which: str) -> None:
        self.which = which
        super().__init__(which)


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass(frozen=True)
class OrderedPartition:
    """Equal-size blocks of {1..m} with strictly increasing rank entries.

    ``blocks[i]`` is the sorted tuple of ground elements in block i+1.
    Construction validates the full invariant; adjacent blocks suffice
    for the rank check because rankwise comparison is transitive.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise InvalidPartition("a partition needs at least one block")
        size = len(self.blocks[0])
        for b in self.blocks:
            if len(b) != size:
                raise UnequalBlockSizes(
                    f"block sizes differ: {sorted({len(x) for x in self.blocks})}"
                )
        if size == 0:
            raise InvalidPartition("blocks must be nonempty")
        m = size * len(self.blocks)
        seen = [False] * (m + 1)
        for b in self.blocks:
            prev = 0
            for x in b:
                if not isinstance(x, int) or not 1 <= x <= m:
                    raise InvalidPartition(f"element {x!r} outside 1..{m}")
                if x <= prev:
                    raise InvalidPartition("block elements must be sorted and distinct")
                if seen[x]:
                    raise InvalidPartition(f"element {x} occurs twice")
                seen[x] = True
                prev = x
        for i in range(len(self.blocks) - 1):
            a, b = self.blocks[i], self.blocks[i + 1]
            for l in range(size):
                if a[l] >= b[l]:
                    raise RankOrderViolation(i + 1, i + 2, l + 1)

    # -- construction --------------------------------------------------

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "OrderedPartition":
        return cls(tuple(tuple(sorted(b)) for b in blocks))

    @classmethod
    def from_assignment(
        cls, assign: Sequence[int], block_count: Optional[int] = None
    ) -> "OrderedPartition":
        """Build from a 1-based element -> block array, validating fully."""
        if not assign:
            raise InvalidPartition("empty assignment")
        n = block_count if block_count is not None else max(assign)
        if n < 1:
            raise InvalidPartition(f"bad block count {n}")
        buckets: list[list[int]] = [[] for _ in range(n)]
        for pos, b in enumerate(assign, 1):
            if not isinstance(b, int) or not 1 <= b <= n:
                raise InvalidPartition(f"assignment value {b!r} outside 1..{n}")
            buckets[b - 1].append(pos)
        return cls.from_blocks(buckets)

    # -- shape ----------------------------------------------------------

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def ground_size(self) -> int:
        return self.block_count * self.block_size

    def block(self, i: int) -> tuple[int, ...]:
        """The sorted elements of block i (1-based)."""
        if not 1 <= i <= self.block_count:
            raise OutOfRange(f"block index {i} outside 1..{self.block_count}")
        return self.blocks[i - 1]

    def assignment(self) -> tuple[int, ...]:
        out = [0] * self.ground_size
        for i, b in enumerate(self.blocks, 1):
            for x in b:
                out[x - 1] = i
        return tuple(out)

    def block_of(self, element: int) -> int:
        if not 1 <= element <= self.ground_size:
            raise OutOfRange(f"element {element} outside 1..{self.ground_size}")
        for i, b in enumerate(self.blocks, 1):
            if element in b:
                return i
        raise AssertionError("unreachable: partition covers the ground set")


def compare(a: OrderedPartition, b: OrderedPartition) -> Order:
    """Total order on same-shape partitions.

    The first ground element assigned to different blocks decides:
    whichever partition puts it in the earlier block is the smaller.
    """
    if a.ground_size != b.ground_size or a.block_count != b.block_count:
        raise ShapeMismatch(
            f"cannot compare shapes {a.block_count}|{a.ground_size} "
            f"and {b.block_count}|{b.ground_size}"
        )
    if a.blocks == b.blocks:
        return Order.EQUAL
    for x, y in zip(a.assignment(), b.assignment()):
        if x != y:
            return Order.LESS if x < y else Order.GREATER
    return Order.EQUAL


@dataclass(frozen=True)
class OrderedSubpartition:
    """Disjoint sorted blocks with weakly decreasing sizes.

    Empty blocks may only trail (and are normalized away); for i < j the
    l-th smallest entries must increase for every rank l up to |block j|.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for b in self.blocks:
            prev = None
            for x in b:
                if prev is not None and x <= prev:
                    raise InvalidPartition("block elements must be sorted and distinct")
                if x in seen:
                    raise InvalidPartition(f"element {x} occurs twice")
                seen.add(x)
                prev = x
        for i in range(len(self.blocks) - 1):
            a, b = self.blocks[i], self.blocks[i + 1]
            if len(a) < len(b):
                raise InvalidPartition("block sizes must be weakly decreasing")
            for l in range(len(b)):
                if a[l] >= b[l]:
                    raise RankOrderViolation(i + 1, i + 2, l + 1)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "OrderedSubpartition":
        rows = [tuple(sorted(b)) for b in blocks]
        while rows and not rows[-1]:
            rows.pop()
        return cls(tuple(rows))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)


def restrict_prefix(p: OrderedPartition, m_prime: int) -> OrderedSubpartition:
    """Intersect every block with {1..m_prime}.

    The result is an ordered subpartition: sizes weakly decrease and the
    surviving rank entries stay ordered, because each block's l-th entry
    only grows with the block index.
    """
    if not 1 <= m_prime <= p.ground_size:
        raise OutOfRange(f"prefix bound {m_prime} outside 1..{p.ground_size}")
    return OrderedSubpartition.from_blocks(
        tuple(x for x in b if x <= m_prime) for b in p.blocks
    )


@dataclass(frozen=True)
class Run:
    """A nonempty integer interval lo..hi."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty run {self.lo}..{self.hi}")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def elements(self) -> range:
        return range(self.lo, self.hi + 1)

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi


def runs_of(s: Iterable[int]) -> tuple[Run, ...]:
    """Decompose a set of integers into maximal runs, in increasing order."""
    xs = sorted(set(s))
    out: list[Run] = []
    for x in xs:
        if out and x == out[-1].hi + 1:
            out[-1] = Run(out[-1].lo, x)
        else:
            out.append(Run(x, x))
    return tuple(out)


def interleaved_runs(p: OrderedPartition) -> tuple[tuple[Optional[Run], ...], ...]:
    """Arrange all blocks' runs on a row grid in global interval order.

    Cell (j, i) holds the run of block i placed on row j, or None.  Runs
    are placed greedily in increasing interval order, starting a new row
    only when a run's block column has already been passed; rows are as
    short as possible and the greedy shortest assignment is unique.  Two
    runs of one block are never adjacent in global order (the gap between
    them belongs to other blocks), so at most block_count - 2 consecutive
    cells can be empty and cell (1, 1) is always occupied.
    """
    k = p.block_count
    items: list[tuple[Run, int]] = []
    for i, b in enumerate(p.blocks, 1):
        for run in runs_of(b):
            items.append((run, i))
    items.sort(key=lambda rc: rc[0].lo)
    rows: list[list[Optional[Run]]] = []
    next_col = k + 1
    for run, i in items:
        if i < next_col:
            rows.append([None] * k)
        rows[-1][i - 1] = run
        next_col = i + 1
    return tuple(tuple(row) for row in rows)


def psize_oracle(
    r_runs: Sequence[Run],
    s_runs: Sequence[Run],
    unit_embedding: OrderedPartition,
) -> bool:
    """Run-size monotonicity oracle.

    Hypotheses (each checked, naming the offender on failure): the n
    source runs R_1 < ... < R_n live in 1..r where r is the embedding's
    block count; the n+1 target runs S_1 < ... < S_{n+1} live in 1..s;
    |S_1| = ... = |S_n| >= 1; the embedding maps the union of the R_i
    exactly onto the union of the S_j; and the image of R_i contains
    S_i.  Returns whether |R_1| <= ... <= |R_n| -- which the hypotheses
    force, a fact the test suite checks exhaustively.
    """
    r = unit_embedding.block_count
    s = unit_embedding.ground_size
    n = len(r_runs)
    if n < 1:
        raise HypothesisViolated("need at least one source run")
    if len(s_runs) != n + 1:
        raise HypothesisViolated(f"need {n + 1} target runs, got {len(s_runs)}")
    for runs, bound, label in ((r_runs, r, "source"), (s_runs, s, "target")):
        prev_hi = 0
        for run in runs:
            if run.lo <= prev_hi:
                raise HypothesisViolated(f"{label} runs must be disjoint and increasing")
            if not 1 <= run.lo <= run.hi <= bound:
                raise HypothesisViolated(f"{label} run {run.lo}..{run.hi} outside 1..{bound}")
            prev_hi = run.hi
    head_size = s_runs[0].size
    for run in s_runs[:n]:
        if run.size != head_size:
            raise HypothesisViolated("the first n target runs must have equal sizes")
    image: set[int] = set()
    for run in r_runs:
        for x in run.elements():
            image.update(unit_embedding.block(x))
    target: set[int] = set()
    for run in s_runs:
        target.update(run.elements())
    if image != target:
        raise HypothesisViolated("embedding image of the source union must equal the target union")
    for i, run in enumerate(r_runs[:n]):
        img_i: set[int] = set()
        for x in run.elements():
            img_i.update(unit_embedding.block(x))
        if not set(s_runs[i].elements()) <= img_i:
            raise HypothesisViolated(f"target run {i + 1} must lie in the image of source run {i + 1}")
    sizes = [run.size for run in r_runs]
    return all(sizes[i] <= sizes[i + 1] for i in range(n - 1))


def compose(outer: OrderedPartition, inner: OrderedPartition) -> OrderedPartition:
    """Composite partition: block i is the union of outer blocks over inner block i."""
    if outer.block_count != inner.ground_size:
        raise ShapeMismatch(
            f"outer has {outer.block_count} blocks but inner ground is {inner.ground_size}"
        )
    blocks = []
    for b in inner.blocks:
        acc: list[int] = []
        for e in b:
            acc.extend(outer.blocks[e - 1])
        acc.sort()
        blocks.append(tuple(acc))
    return OrderedPartition(tuple(blocks))


def ordered_partitions(m: int, n: int) -> Iterator[OrderedPartition]:
    """Enumerate every ordered partition of {1..m} into n blocks.

    Walks assignment words under the ballot condition (each prefix holds
    at least as many entries of block i as of block i+1), which is
    exactly the rank-order invariant.
    """
    if m < 1 or n < 1 or m % n:
        raise InvalidPartition(f"no ordered partitions of {m} into {n} equal blocks")
    size = m // n
    counts = [0] * n
    word: list[int] = []

    def walk(pos: int) -> Iterator[OrderedPartition]:
        if pos == m:
            yield OrderedPartition.from_assignment(list(word), n)
            return
        for b in range(n):
            if counts[b] < size and (b == 0 or counts[b] < counts[b - 1]):
                counts[b] += 1
                word.append(b + 1)
                yield from walk(pos + 1)
                word.pop()
                counts[b] -= 1

    return walk(0)


# -- text form --------------------------------------------------------

def format_partition(p: OrderedPartition) -> str:
    body = ";".join(",".join(str(x) for x in b) for b in p.blocks)
    return f"m={p.ground_size} n={p.block_count} blocks={body}"


def parse_partition(text: str) -> OrderedPartition:
    """Parse ``m=<int> n=<int> blocks=<semicolon-separated comma lists>``."""
    parts = text.strip().split()
    if len(parts) != 3:
        raise FormatError(f"expected three fields in partition text, got {len(parts)}")
    fields = {}
    for part, key in zip(parts, ("m", "n", "blocks")):
        prefix = key + "="
        if not part.startswith(prefix):
            raise FormatError(f"expected field {key}=..., got {part!r}")
        fields[key] = part[len(prefix):]
    try:
        m = int(fields["m"])
        n = int(fields["n"])
        blocks = [
            [int(x) for x in group.split(",")] for group in fields["blocks"].split(";")
        ]
    except ValueError as exc:
        raise FormatError(f"bad partition text: {exc}") from None
    p = OrderedPartition.from_blocks(blocks)
    if p.ground_size != m or p.block_count != n:
        raise FormatError(
            f"declared shape m={m} n={n} does not match blocks "
            f"(m={p.ground_size} n={p.block_count})"
        )
    return p
