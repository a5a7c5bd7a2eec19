"""Per-node index tables and the local Pin / Superset lookups.

Matching always compares keyword sets, never bit patterns, so keywords that
collide on a bit position cannot produce false matches.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from hyperkube.errors import EmptyKeywordSet, InvalidObjectRef, ParseError, WrongOwner
from hyperkube.keywords import KeywordSet, NodeId, keyword_bits

TRYTE_ALPHABET = "9ABCDEFGHIJKLMNOPQRSTUVWXYZ"
ROOT_LENGTH = 81
_ROOT_RE = re.compile(r"[9A-Z]{81}")


class ObjectRef(str):
    """Root of a MAM message: exactly 81 trytes from ``[9A-Z]``."""

    __slots__ = ()

    def __new__(cls, root: str) -> "ObjectRef":
        if isinstance(root, ObjectRef):
            return root
        if not isinstance(root, str) or not _ROOT_RE.fullmatch(root):
            raise InvalidObjectRef(f"not an 81-tryte root: {root!r}")
        return super().__new__(cls, root)


@dataclass
class IndexEntry:
    keyword_set: KeywordSet
    objects: list[ObjectRef] = field(default_factory=list)


class IndexNode:
    """One logical node and its keyword-set -> objects table."""

    __slots__ = ("node_id", "_entries", "_sorted")

    def __init__(self, node_id: NodeId):
        self.node_id = node_id
        self._entries: dict[KeywordSet, IndexEntry] = {}
        self._sorted: list[IndexEntry] | None = None

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"IndexNode({self.node_id}, entries={len(self._entries)})"

    def entries(self) -> list[IndexEntry]:
        """Entries in canonical keyword-set order."""
        if self._sorted is None:
            self._sorted = sorted(self._entries.values(), key=lambda e: e.keyword_set.canonical())
        return self._sorted

    def _check_owner(self, keywords: KeywordSet) -> None:
        if not keywords:
            raise EmptyKeywordSet("keyword set is empty")
        bits = keyword_bits(keywords, self.node_id.r)
        if bits != self.node_id.bits:
            raise WrongOwner(
                f"{keywords!r} belongs to {NodeId(bits, self.node_id.r)}, not {self.node_id}"
            )

    def publish(self, keywords: Iterable[str], obj: str) -> bool:
        """Store ``obj`` under ``keywords``. Returns False if it was already there."""
        ks = KeywordSet(keywords)
        ref = ObjectRef(obj)
        self._check_owner(ks)
        entry = self._entries.get(ks)
        if entry is None:
            entry = self._entries[ks] = IndexEntry(ks)
            self._sorted = None
        elif ref in entry.objects:
            return False
        entry.objects.append(ref)
        return True

    def pin_lookup(self, keywords: Iterable[str]) -> list[ObjectRef]:
        ks = KeywordSet(keywords)
        self._check_owner(ks)
        entry = self._entries.get(ks)
        return list(entry.objects) if entry else []

    def superset_lookup(self, keywords: Iterable[str], limit: int | None = None) -> list[ObjectRef]:
        """Up to ``limit`` objects whose keyword set contains ``keywords``.

        ``limit=None`` means unbounded. A node outside the sub-hypercube of
        ``keywords`` simply has no matches.
        """
        ks = KeywordSet(keywords)
        if not ks:
            raise EmptyKeywordSet("keyword set is empty")
        if limit is not None and limit < 1:
            raise ValueError(f"limit must be >= 1, got {limit}")
        found: list[ObjectRef] = []
        if not self._entries:
            return found
        for entry in self.entries():
            if ks <= entry.keyword_set:
                found.extend(entry.objects)
                if limit is not None and len(found) >= limit:
                    return found[:limit]
        return found

    def snapshot_records(self) -> Iterator[dict]:
        for entry in self.entries():
            yield {
                "node": str(self.node_id),
                "keywords": list(entry.keyword_set.canonical()),
                "objects": list(entry.objects),
            }


def dump_snapshot(nodes: Iterable[IndexNode], path: str | Path) -> None:
    """Write index tables as JSON Lines, one record per entry."""
    with open(path, "w", encoding="utf-8") as fh:
        for node in sorted(nodes, key=lambda n: n.node_id.bits):
            for record in node.snapshot_records():
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def load_snapshot(path: str | Path) -> dict[NodeId, IndexNode]:
    nodes: dict[NodeId, IndexNode] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                node_id = NodeId.parse(record["node"])
                keywords = record["keywords"]
                objects = record["objects"]
            except (ValueError, KeyError, TypeError) as exc:
                raise ParseError(str(exc), lineno) from exc
            node = nodes.get(node_id)
            if node is None:
                node = nodes[node_id] = IndexNode(node_id)
            for obj in objects:
                node.publish(keywords, obj)
    return nodes
