"""Combinatorics of the complete r-dimensional hypercube.

Spanning binomial tree of a sub-hypercube: write a member ``v`` by its
relative address ``x`` (the bits of ``v`` at the root's free positions,
lowest free position first). The children of ``v`` set one more free bit at
every relative position strictly below the lowest set bit of ``x``; the root
(``x == 0``) gets a child for every free position. Children are listed in
ascending position order, which makes the depth-first preorder enumerate
relative addresses 0, 1, 2, ... in numeric order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from hyperkube import _kernels
from hyperkube.errors import NotInSubHypercube
from hyperkube.keywords import NodeId, check_dimension


@dataclass(frozen=True)
class Hypercube:
    r: int

    def __post_init__(self):
        check_dimension(self.r)

    @property
    def node_count(self) -> int:
        return 1 << self.r

    def __contains__(self, node: NodeId) -> bool:
        return isinstance(node, NodeId) and node.r == self.r

    def __iter__(self) -> Iterator[NodeId]:
        return (NodeId(b, self.r) for b in range(self.node_count))

    def __len__(self) -> int:
        return self.node_count


@dataclass(frozen=True)
class SubHypercube:
    """Nodes whose ids contain every set bit of ``root``."""

    root: NodeId

    @property
    def r(self) -> int:
        return self.root.r

    @property
    def free_positions(self) -> list[int]:
        return _kernels.free_positions(self.root.bits, self.root.r)

    @property
    def size(self) -> int:
        return 1 << (self.root.r - self.root.popcount())

    def __contains__(self, w: NodeId) -> bool:
        return contains(self, w)

    def members(self) -> list[NodeId]:
        """All members in spanning-binomial-tree preorder."""
        return [NodeId(b, self.r) for b in _kernels.sbt_preorder(self.root.bits, self.r)]


def hamming(u: NodeId, v: NodeId) -> int:
    u.same_dimension(v)
    return _kernels.hamming(u.bits, v.bits)


def neighbors(u: NodeId) -> list[NodeId]:
    """The r neighbours of ``u``, ordered by flipped bit position."""
    return [NodeId(u.bits ^ (1 << i), u.r) for i in range(u.r)]


def contains(sub: SubHypercube, w: NodeId) -> bool:
    sub.root.same_dimension(w)
    return sub.root.bits & w.bits == sub.root.bits


def sbt_children(sub: SubHypercube, v: NodeId) -> list[NodeId]:
    if not contains(sub, v):
        raise NotInSubHypercube(f"{v} is not in the sub-hypercube rooted at {sub.root}")
    return [NodeId(b, v.r) for b in _kernels.sbt_children(sub.root.bits, v.bits, v.r)]
