"""Small-scale self checks used by ``hyperkube verify``.

Query results are compared with an exhaustive scan over the publication log,
which never touches the network's index tables.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations

from hyperkube.keywords import KeywordSet, NodeId, hash_keyword, keyword_bits
from hyperkube.ledger import MockLedger
from hyperkube.network import Network
from hyperkube.routing import Query, SearchKind, execute_pin, execute_superset
from hyperkube.simulator import vocabulary
from hyperkube.topology import SubHypercube, contains, hamming, sbt_children

MAX_VERIFY_DIMENSION = 5


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


def brute_pin(log, keywords) -> Counter:
    ks = KeywordSet(keywords)
    return Counter(o for k, o in log if k == ks)


def brute_superset(log, keywords) -> Counter:
    ks = KeywordSet(keywords)
    return Counter(o for k, o in log if ks <= k)


def collision_pairs(words, r: int) -> list[tuple[str, str]]:
    """Pairs of distinct keywords sharing a bit position."""
    return [(a, b) for a, b in combinations(words, 2) if hash_keyword(a, r) == hash_keyword(b, r)]


def sbt_walk(root: NodeId) -> list[tuple[NodeId, NodeId]]:
    """Tree edges reached breadth first from ``root``."""
    sub = SubHypercube(root)
    edges = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for c in sbt_children(sub, v):
            edges.append((v, c))
            queue.append(c)
    return edges


def check_sbt_coverage(r: int) -> Check:
    for bits in range(1 << r):
        root = NodeId(bits, r)
        sub = SubHypercube(root)
        edges = sbt_walk(root)
        visited = Counter([root] + [c for _, c in edges])
        expected = {w for w in (NodeId(b, r) for b in range(1 << r)) if contains(sub, w)}
        if set(visited) != expected or any(n != 1 for n in visited.values()):
            return Check("sbt_coverage", False, f"root {root} does not span its sub-hypercube once")
        bad = [(v, c) for v, c in edges if hamming(v, c) != 1]
        if bad:
            return Check("sbt_coverage", False, f"root {root}: non-hypercube edge {bad[0]}")
    return Check("sbt_coverage", True, f"all {1 << r} roots at r={r} spanned exactly once")


def build_workload(r: int, objects: int, queries: int, vocab: int, seed: int):
    """Publish random objects; return (network, log, query keyword sets)."""
    rng = random.Random(f"verify:{seed}")
    words = vocabulary(vocab)
    ledger = MockLedger(seed)
    network = Network(r)
    log = []
    for _ in range(objects):
        ks = KeywordSet(rng.sample(words, rng.randint(1, min(3, vocab))))
        obj = ledger.next_root()
        network.publish(ks, obj)
        log.append((ks, obj))
    # Repeat a few (K, o) pairs to exercise idempotent publishing.
    for ks, obj in rng.sample(log, min(5, len(log))):
        network.publish(ks, obj)

    query_sets = []
    for a, b in collision_pairs(words, r)[: queries // 4]:
        query_sets += [KeywordSet([a]), KeywordSet([b])]
    while len(query_sets) < queries:
        if rng.random() < 0.5:
            source = sorted(rng.choice(log)[0])
            query_sets.append(KeywordSet(rng.sample(source, rng.randint(1, len(source)))))
        else:
            query_sets.append(KeywordSet(rng.sample(words, rng.randint(1, min(3, vocab)))))
    return network, log, query_sets[:queries], rng


def run_all(r: int, objects: int, queries: int, vocab: int, seed: int) -> list[Check]:
    network, log, query_sets, rng = build_workload(r, objects, queries, vocab, seed)
    starts = [NodeId(rng.randrange(1 << r), r) for _ in query_sets]
    pin_bad = superset_bad = length_bad = limit_bad = 0
    for ks, start in zip(query_sets, starts):
        pin = execute_pin(network, Query(SearchKind.PIN, ks, start))
        if Counter(pin.objects) != brute_pin(log, ks):
            pin_bad += 1
        if pin.trace.routing_hops != hamming(start, NodeId(keyword_bits(ks, r), r)):
            length_bad += 1
        full = execute_superset(network, Query(SearchKind.SUPERSET, ks, start, None))
        if Counter(full.objects) != brute_superset(log, ks):
            superset_bad += 1
        for limit in (1, 3, 10):
            limited = execute_superset(network, Query(SearchKind.SUPERSET, ks, start, limit))
            if len(limited.objects) > limit or limited.objects != full.objects[: len(limited.objects)]:
                limit_bad += 1
                break

    n = len(query_sets)
    return [
        Check("pin_oracle", pin_bad == 0, f"{n - pin_bad}/{n} queries match the exhaustive scan"),
        Check("superset_oracle", superset_bad == 0,
              f"{n - superset_bad}/{n} queries match the exhaustive scan"),
        Check("routing_length", length_bad == 0, f"{n - length_bad}/{n} routes equal Hamming distance"),
        Check("superset_limit", limit_bad == 0, f"{n - limit_bad}/{n} queries honour limit and prefix order"),
        check_sbt_coverage(r),
    ]
