"""A complete hypercube of logical nodes with lazily allocated index tables."""

from __future__ import annotations

from typing import Iterable, Iterator

from hyperkube.errors import ResourceLimitExceeded
from hyperkube.index import IndexNode, ObjectRef
from hyperkube.keywords import KeywordSet, NodeId, check_dimension, one
from hyperkube.topology import Hypercube

DEFAULT_MAX_DIMENSION = 20


class Network:
    """All ``2**r`` logical nodes. A node's table is created on first write."""

    def __init__(self, r: int, max_dimension: int = DEFAULT_MAX_DIMENSION):
        check_dimension(r)
        if r > max_dimension:
            raise ResourceLimitExceeded(f"r={r} exceeds the configured bound of {max_dimension}")
        self.r = r
        self.hypercube = Hypercube(r)
        self._nodes: dict[int, IndexNode] = {}

    @property
    def node_count(self) -> int:
        return self.hypercube.node_count

    def __repr__(self) -> str:
        return f"Network(r={self.r}, populated={len(self._nodes)})"

    def _bits(self, node: NodeId | int) -> int:
        if isinstance(node, NodeId):
            node.same_dimension(NodeId(0, self.r))
            return node.bits
        if not 0 <= node < self.node_count:
            raise ValueError(f"node {node} out of range for r={self.r}")
        return node

    def node(self, node: NodeId | int) -> IndexNode:
        bits = self._bits(node)
        found = self._nodes.get(bits)
        if found is None:
            found = self._nodes[bits] = IndexNode(NodeId(bits, self.r))
        return found

    def peek(self, bits: int) -> IndexNode | None:
        """The node's table if it has ever been written, else None."""
        return self._nodes.get(bits)

    def populated_nodes(self) -> Iterator[IndexNode]:
        return iter(self._nodes.values())

    def publish(self, keywords: Iterable[str], obj: str) -> tuple[NodeId, bool]:
        """Store ``obj`` on the node responsible for ``keywords``."""
        ks = KeywordSet(keywords)
        owner = one(ks, self.r)
        return owner, self.node(owner).publish(ks, obj)

    def published(self) -> Iterator[tuple[KeywordSet, ObjectRef]]:
        for node in self._nodes.values():
            for entry in node.entries():
                for obj in entry.objects:
                    yield entry.keyword_set, obj
