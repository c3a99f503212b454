"""Regular embeddings between upper-triangular matrix algebras.

A unital embedding T_k -> T_k' that carries partial permutation
matrices to partial permutation matrices is determined, up to the
canonical choice made here, by where the k diagonal matrix units land:
an ordered partition of {1..k'} into k blocks.  Off-diagonal units are
sent by *rank pairing* -- the m-th smallest element of block i is paired
with the m-th smallest of block j -- which is the unique choice that is
order-compatible in every block and keeps images upper triangular.

The three classical patterns all arise from tensoring with identity
factors: ``standard`` is I_mult (x) A, ``nest`` is A (x) I_mult, and
``alternating`` is I_s (x) A (x) I_t.  Each constructor builds its block
formula directly so the tensor identities relating them stay honest,
independently checkable facts rather than definitions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import partitions
from .errors import DomainError
from .partitions import Order, OrderedPartition, ShapeMismatch


class IndexOutOfRange(DomainError):
    """A matrix-unit index is outside 1..k_from."""


class LowerTriangularRequest(DomainError):
    """Asked for the image of a strictly lower-triangular unit."""


@dataclass(frozen=True)
class RegularEmbedding:
    """A rank-paired embedding T_{k_from} -> T_{k_to}.

    ``diag`` is the ordered partition of {1..k_to} whose i-th block is
    the diagonal support of the image of the i-th diagonal unit.  The
    partition's own rank-order invariant is exactly the condition that
    rank pairing maps upper-triangular units to upper-triangular sums.
    """

    k_from: int
    k_to: int
    diag: OrderedPartition

    def __post_init__(self) -> None:
        if self.k_from < 1 or self.k_to < 1 or self.k_to % self.k_from:
            raise ShapeMismatch(
                f"embedding needs k_from | k_to, got {self.k_from} -> {self.k_to}"
            )
        if self.diag.block_count != self.k_from or self.diag.ground_size != self.k_to:
            raise ShapeMismatch(
                f"partition shape {self.diag.block_count}|{self.diag.ground_size} "
                f"does not match embedding {self.k_from} -> {self.k_to}"
            )

    @property
    def multiplicity(self) -> int:
        return self.k_to // self.k_from


def standard(k: int, mult: int) -> RegularEmbedding:
    """The I_mult (x) A pattern: block i = {i, i+k, ..., i+(mult-1)k}."""
    if k < 1 or mult < 1:
        raise ShapeMismatch(f"need k, mult >= 1, got k={k} mult={mult}")
    blocks = tuple(tuple(i + a * k for a in range(mult)) for i in range(1, k + 1))
    return RegularEmbedding(k, k * mult, OrderedPartition(blocks))


def nest(k: int, mult: int) -> RegularEmbedding:
    """The A (x) I_mult refinement pattern: block i = {(i-1)mult+1 .. i*mult}."""
    if k < 1 or mult < 1:
        raise ShapeMismatch(f"need k, mult >= 1, got k={k} mult={mult}")
    blocks = tuple(
        tuple(range((i - 1) * mult + 1, i * mult + 1)) for i in range(1, k + 1)
    )
    return RegularEmbedding(k, k * mult, OrderedPartition(blocks))


def alternating(k: int, s_mult: int, t_mult: int) -> RegularEmbedding:
    """The I_s (x) A (x) I_t pattern.

    Block i holds {a*k*t + (i-1)*t + b : 0 <= a < s, 1 <= b <= t}: the
    t-fold inflation of slot i repeated in each of the s outer copies.
    Degenerate factors recover the other constructors: alternating(k,s,1)
    equals standard(k,s) and alternating(k,1,t) equals nest(k,t).
    """
    if k < 1 or s_mult < 1 or t_mult < 1:
        raise ShapeMismatch(
            f"need k, s_mult, t_mult >= 1, got k={k} s={s_mult} t={t_mult}"
        )
    blocks = tuple(
        tuple(
            a * k * t_mult + (i - 1) * t_mult + b
            for a in range(s_mult)
            for b in range(1, t_mult + 1)
        )
        for i in range(1, k + 1)
    )
    return RegularEmbedding(k, k * s_mult * t_mult, OrderedPartition(blocks))


def identity_embedding(k: int) -> RegularEmbedding:
    return standard(k, 1)


def image_of_unit(e: RegularEmbedding, i: int, j: int) -> tuple[tuple[int, int], ...]:
    """Rank-paired image of the matrix unit (i, j), i <= j.

    Returns the pairs (i_m, j_m) with i_m the m-th smallest of block i
    and j_m the m-th smallest of block j, in rank order.  Every pair has
    i_m <= j_m by the partition's rank-order invariant.
    """
    if not (1 <= i <= e.k_from and 1 <= j <= e.k_from):
        raise IndexOutOfRange(f"unit ({i},{j}) outside 1..{e.k_from}")
    if i > j:
        raise LowerTriangularRequest(f"unit ({i},{j}) lies below the diagonal")
    return tuple(zip(e.diag.block(i), e.diag.block(j)))


def compose_embeddings(
    outer: RegularEmbedding, inner: RegularEmbedding
) -> RegularEmbedding:
    """The embedding applying ``inner`` first, then ``outer``."""
    if inner.k_to != outer.k_from:
        raise ShapeMismatch(
            f"cannot compose {outer.k_from}->{outer.k_to} after {inner.k_from}->{inner.k_to}"
        )
    return RegularEmbedding(
        inner.k_from, outer.k_to, partitions.compose(outer.diag, inner.diag)
    )


class EmbeddingOrder(enum.Enum):
    LESS = "less"
    EQUAL_ON_PROJECTIONS = "equal-on-projections"
    GREATER = "greater"


_ORDER_MAP = {
    Order.LESS: EmbeddingOrder.LESS,
    Order.EQUAL: EmbeddingOrder.EQUAL_ON_PROJECTIONS,
    Order.GREATER: EmbeddingOrder.GREATER,
}


def compare_embeddings(a: RegularEmbedding, b: RegularEmbedding) -> EmbeddingOrder:
    """Order two same-shape embeddings by their diagonal partitions.

    Partition equality only certifies agreement on diagonal projections,
    hence the middle verdict's name.
    """
    if (a.k_from, a.k_to) != (b.k_from, b.k_to):
        raise ShapeMismatch(
            f"cannot compare {a.k_from}->{a.k_to} with {b.k_from}->{b.k_to}"
        )
    return _ORDER_MAP[partitions.compare(a.diag, b.diag)]


def regularize(raw: Mapping[int, Iterable[int]]) -> RegularEmbedding:
    """Canonical regular embedding from diagonal-unit image sets.

    ``raw`` maps each diagonal index 1..k to the set of diagonal slots
    its image occupies.  The sets must form an ordered partition (equal
    sizes, rank-ordered); off-diagonal images are then fixed by rank
    pairing, the unique triangularity-compatible completion.
    """
    k = len(raw)
    if sorted(raw) != list(range(1, k + 1)):
        raise partitions.InvalidPartition(
            f"diagonal indices must be exactly 1..{k}, got {sorted(raw)}"
        )
    diag = OrderedPartition.from_blocks(raw[i] for i in range(1, k + 1))
    return RegularEmbedding(k, diag.ground_size, diag)


def tensor_embed(ephi: RegularEmbedding, epsi: RegularEmbedding) -> RegularEmbedding:
    """Tensor product of embeddings, row-major on (outer, inner) indices.

    The diagonal unit indexed (i, a) -- stored at position (i-1)*j + a
    for ephi: k -> k' and epsi: j -> j' -- maps to the slots
    {(i''-1)*j' + b : i'' in ephi block i, b in epsi block a}.
    """
    j_from, j_to = epsi.k_from, epsi.k_to
    blocks = []
    for i in range(1, ephi.k_from + 1):
        phi_block = ephi.diag.block(i)
        for a in range(1, j_from + 1):
            psi_block = epsi.diag.block(a)
            blocks.append(
                tuple(
                    sorted((i2 - 1) * j_to + b for i2 in phi_block for b in psi_block)
                )
            )
    return RegularEmbedding(
        ephi.k_from * j_from, ephi.k_to * j_to, OrderedPartition(tuple(blocks))
    )
