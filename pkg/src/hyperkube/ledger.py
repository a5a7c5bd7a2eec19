"""Mock ledger: seeded MAM-style roots and JSON Lines fixture files.

Nothing here talks to a Tangle node. Roots only share the syntax of real MAM
roots (81 trytes over ``[9A-Z]``), so a live adapter can replace this later.
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Iterable

from hyperkube.errors import EmptyKeywords, InvalidKeyword, InvalidObjectRef, InvalidRoot, ParseError
from hyperkube.index import ROOT_LENGTH, TRYTE_ALPHABET, ObjectRef
from hyperkube.keywords import KeywordSet


class MockLedger:
    def __init__(self, seed: int = 0):
        self.seed = seed
        self.issued = 0
        self._rng = random.Random(seed)
        self._seen: set[str] = set()

    def next_root(self) -> ObjectRef:
        while True:
            root = "".join(self._rng.choices(TRYTE_ALPHABET, k=ROOT_LENGTH))
            if root not in self._seen:
                break
        self._seen.add(root)
        self.issued += 1
        return ObjectRef(root)


def load_fixture(path: str | Path) -> list[tuple[KeywordSet, ObjectRef]]:
    """Read ``{"keywords": [...], "root": "..."}`` records, one per line."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", lineno) from exc
            if not isinstance(record, dict) or "keywords" not in record or "root" not in record:
                raise ParseError('expected an object with "keywords" and "root"', lineno)
            keywords = record["keywords"]
            if not isinstance(keywords, list):
                raise ParseError('"keywords" must be a list', lineno)
            try:
                ks = KeywordSet(keywords)
            except InvalidKeyword as exc:
                raise ParseError(str(exc), lineno) from exc
            if not ks:
                raise EmptyKeywords("keyword list is empty", lineno)
            try:
                root = ObjectRef(record["root"])
            except InvalidObjectRef as exc:
                raise InvalidRoot(str(exc), lineno) from exc
            pairs.append((ks, root))
    return pairs


def write_fixture(pairs: Iterable[tuple[Iterable[str], str]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for keywords, root in pairs:
            record = {"keywords": list(KeywordSet(keywords).canonical()), "root": str(root)}
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
