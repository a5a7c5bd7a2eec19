"""Query routing: greedy Hamming forwarding, then Pin or Superset resolution.

Superset resolution walks the spanning binomial tree of the responsible
node's sub-hypercube depth first, stopping once the limit is met. Each tree
edge taken forward costs one hop; returning along an edge is free.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from typing import Iterable

from hyperkube import _kernels
from hyperkube.errors import EmptyKeywordSet
from hyperkube.index import ObjectRef
from hyperkube.keywords import KeywordSet, NodeId, keyword_bits
from hyperkube.network import Network


class SearchKind(enum.Enum):
    PIN = "pin"
    SUPERSET = "superset"


class Origin(enum.Enum):
    USER = "User"
    NODE = "Node"


@dataclass(frozen=True)
class Query:
    kind: SearchKind
    keywords: KeywordSet
    start: NodeId
    limit: int | None = None
    origin: Origin = Origin.USER

    def __post_init__(self):
        object.__setattr__(self, "keywords", KeywordSet(self.keywords))
        if not self.keywords:
            raise EmptyKeywordSet("query keyword set is empty")
        if self.kind is SearchKind.SUPERSET and self.limit is not None and self.limit < 1:
            raise ValueError(f"superset limit must be >= 1, got {self.limit}")


@dataclass
class HopTrace:
    path: list[NodeId]
    traversal: list[NodeId] = field(default_factory=list)

    @property
    def routing_hops(self) -> int:
        return len(self.path) - 1

    @property
    def traversal_hops(self) -> int:
        return len(self.traversal)

    @property
    def total_hops(self) -> int:
        return self.routing_hops + self.traversal_hops

    def to_dict(self) -> dict:
        return {
            "path": [str(n) for n in self.path],
            "traversal": [str(n) for n in self.traversal],
            "routing_hops": self.routing_hops,
            "traversal_hops": self.traversal_hops,
            "total_hops": self.total_hops,
        }


@dataclass
class QueryResult:
    objects: list[ObjectRef]
    trace: HopTrace

    def to_dict(self) -> dict:
        return {"objects": list(self.objects), "trace": self.trace.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def route_to_responsible(
    network: Network, start: NodeId, keywords: Iterable[str]
) -> tuple[NodeId, list[NodeId]]:
    """Forward greedily to the node responsible for ``keywords``.

    Among neighbours closer to the target the one flipping the lowest
    differing bit wins, so the path length always equals the Hamming distance.
    """
    ks = KeywordSet(keywords)
    if not ks:
        raise EmptyKeywordSet("query keyword set is empty")
    r = network.r
    start.same_dimension(NodeId(0, r))
    target = keyword_bits(ks, r)
    path = [NodeId(b, r) for b in _kernels.greedy_path(start.bits, target)]
    return path[-1], path


def execute_pin(network: Network, query: Query) -> QueryResult:
    if query.kind is not SearchKind.PIN:
        raise ValueError("execute_pin needs a PIN query")
    responsible, path = route_to_responsible(network, query.start, query.keywords)
    node = network.peek(responsible.bits)
    objects = node.pin_lookup(query.keywords) if node is not None else []
    return QueryResult(objects, HopTrace(path))


def execute_superset(network: Network, query: Query) -> QueryResult:
    if query.kind is not SearchKind.SUPERSET:
        raise ValueError("execute_superset needs a SUPERSET query")
    responsible, path = route_to_responsible(network, query.start, query.keywords)
    # Legs inside the sub-hypercube are node-originated and never re-route.
    leg = replace(query, origin=Origin.NODE)
    traversal: list[int] = []
    objects = _collect(network, responsible.bits, responsible.bits, leg, query.limit, traversal)
    r = network.r
    return QueryResult(objects, HopTrace(path, [NodeId(b, r) for b in traversal]))


def _collect(
    network: Network, root: int, v: int, query: Query, remaining: int | None, traversal: list[int]
) -> list[ObjectRef]:
    if root & v != root:
        raise AssertionError(f"traversal left the sub-hypercube at {v:b}")
    node = network.peek(v)
    found = node.superset_lookup(query.keywords, remaining) if node is not None else []
    if remaining is not None:
        remaining -= len(found)
    for child in _kernels.sbt_children(root, v, network.r):
        if remaining is not None and remaining <= 0:
            break
        traversal.append(child)
        sub = _collect(network, root, child, query, remaining, traversal)
        found.extend(sub)
        if remaining is not None:
            remaining -= len(sub)
    return found


def execute(network: Network, query: Query) -> QueryResult:
    if query.kind is SearchKind.PIN:
        return execute_pin(network, query)
    return execute_superset(network, query)
