"""Seeded hop-count experiments over a complete hypercube network.

Two workloads are available:

``synthetic``
    Keywords come from ``kw0000 .. kwNNNN``. Object keyword sets have a size
    drawn uniformly from ``keywords_per_object``; query sets from
    ``query_keywords``. Superset queries are, with probability
    ``match_bias``, a subset of some published object's keyword set.

``aligned``
    One keyword per bit position (the first ``kwNNNN`` hashing to it), so the
    keyword hash is injective. Object and query keyword sets are uniformly
    random non-empty subsets of that vocabulary, i.e. uniformly random
    non-zero node ids. The size ranges and ``match_bias`` are ignored.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Sequence

from hyperkube.errors import InsufficientData
from hyperkube.index import ObjectRef
from hyperkube.keywords import KeywordSet, NodeId, check_dimension, hash_keyword
from hyperkube.ledger import MockLedger
from hyperkube.network import DEFAULT_MAX_DIMENSION, Network
from hyperkube.routing import Query, QueryResult, SearchKind, execute

Z_95 = 1.96
WORKLOADS = ("synthetic", "aligned")


@dataclass(frozen=True)
class ExperimentConfig:
    r: int
    object_count: int
    search_kind: SearchKind = SearchKind.PIN
    query_count: int = 1
    repetitions: int = 50
    limit: int = 10
    seed: int = 42
    vocabulary_size: int = 1000
    keywords_per_object: tuple[int, int] = (1, 5)
    query_keywords: tuple[int, int] = (1, 3)
    match_bias: float = 0.5
    workload: str = "synthetic"

    def __post_init__(self):
        check_dimension(self.r)
        if self.workload not in WORKLOADS:
            raise ValueError(f"workload must be one of {WORKLOADS}, got {self.workload!r}")
        object.__setattr__(self, "search_kind", SearchKind(self.search_kind))
        object.__setattr__(self, "keywords_per_object", tuple(self.keywords_per_object))
        object.__setattr__(self, "query_keywords", tuple(self.query_keywords))
        for name in ("object_count", "query_count", "repetitions", "limit", "vocabulary_size"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        for name in ("keywords_per_object", "query_keywords"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ValueError(f"{name} must satisfy 1 <= min <= max, got ({lo}, {hi})")
            if hi > self.vocabulary_size:
                raise ValueError(f"{name} max {hi} exceeds vocabulary size {self.vocabulary_size}")
        if not 0.0 <= self.match_bias <= 1.0:
            raise ValueError(f"match_bias must be in [0, 1], got {self.match_bias}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["search_kind"] = self.search_kind.value
        d["keywords_per_object"] = list(self.keywords_per_object)
        d["query_keywords"] = list(self.query_keywords)
        return d


@dataclass(frozen=True)
class StatsSummary:
    mean: float
    stddev: float
    ci95: tuple[float, float]
    n: int


@dataclass(frozen=True)
class Publication:
    keywords: KeywordSet
    obj: ObjectRef
    owner: NodeId


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    repetition_means: list[float]
    traversal_means: list[float]
    summary: StatsSummary
    traversal_summary: StatsSummary
    queries_per_repetition: int
    traces: list[list[QueryResult]] = field(default_factory=list, repr=False)


def vocabulary(size: int) -> list[str]:
    width = max(4, len(str(size - 1)))
    return [f"kw{i:0{width}d}" for i in range(size)]


@lru_cache(maxsize=64)
def aligned_vocabulary(r: int) -> tuple[str, ...]:
    """Keyword ``i`` of the result hashes to bit position ``i``."""
    by_position: dict[int, str] = {}
    i = 0
    while len(by_position) < r:
        word = f"kw{i:04d}"
        by_position.setdefault(hash_keyword(word, r), word)
        i += 1
    return tuple(by_position[p] for p in range(r))


def workload_vocabulary(config: ExperimentConfig) -> list[str]:
    if config.workload == "aligned":
        return list(aligned_vocabulary(config.r))
    return vocabulary(config.vocabulary_size)


def _random_subset(rng: random.Random, words: Sequence[str]) -> KeywordSet:
    while True:
        picked = [w for w in words if rng.random() < 0.5]
        if picked:
            return KeywordSet(picked)


def build_network(r: int, seed: int = 0, max_dimension: int = DEFAULT_MAX_DIMENSION) -> Network:
    """A complete hypercube with empty tables. Construction uses no randomness;
    ``seed`` is accepted so every stage of an experiment has the same shape."""
    return Network(r, max_dimension=max_dimension)


def populate(network: Network, config: ExperimentConfig) -> list[Publication]:
    rng = random.Random(f"populate:{config.seed}")
    ledger = MockLedger(config.seed)
    words = workload_vocabulary(config)
    lo, hi = config.keywords_per_object
    log = []
    for _ in range(config.object_count):
        if config.workload == "aligned":
            ks = _random_subset(rng, words)
        else:
            ks = KeywordSet(rng.sample(words, rng.randint(lo, hi)))
        obj = ledger.next_root()
        owner, _stored = network.publish(ks, obj)
        log.append(Publication(ks, obj, owner))
    return log


def _query_keywords(
    rng: random.Random, config: ExperimentConfig, words: list[str], log: Sequence[Publication]
) -> KeywordSet:
    if config.workload == "aligned":
        return _random_subset(rng, words)
    lo, hi = config.query_keywords
    size = rng.randint(lo, hi)
    biased = config.search_kind is SearchKind.SUPERSET and log and rng.random() < config.match_bias
    if biased:
        source = sorted(rng.choice(log).keywords)
        return KeywordSet(rng.sample(source, min(size, len(source))))
    return KeywordSet(rng.sample(words, size))


def run_trial(
    network: Network, config: ExperimentConfig, trial_index: int, log: Sequence[Publication] = ()
) -> list[QueryResult]:
    """Run ``config.query_count`` random queries.

    ``log`` is the publication log; superset queries draw their biased share
    from it (no bias is applied when it is empty).
    """
    cell = f"{config.r}:{config.object_count}:{config.search_kind.value}"
    rng = random.Random(f"trial:{cell}:{config.seed ^ trial_index}")
    words = workload_vocabulary(config)
    limit = config.limit if config.search_kind is SearchKind.SUPERSET else None
    results = []
    for _ in range(config.query_count):
        ks = _query_keywords(rng, config, words, log)
        start = NodeId(rng.randrange(network.node_count), network.r)
        results.append(execute(network, Query(config.search_kind, ks, start, limit)))
    return results


def summarize(values: Sequence[float]) -> StatsSummary:
    """Mean, sample standard deviation and normal 95% interval of repetition means."""
    n = len(values)
    if n < 2:
        raise InsufficientData(f"need at least 2 repetitions, got {n}")
    mean = statistics.fmean(values)
    stddev = statistics.stdev(values)
    return StatsSummary(mean, stddev, confidence_interval(mean, stddev, n), n)


def confidence_interval(mean: float, stddev: float, n: int) -> tuple[float, float]:
    half = Z_95 * stddev / math.sqrt(n)
    return (mean - half, mean + half)


def run_experiment(config: ExperimentConfig, keep_traces: bool = False) -> ExperimentResult:
    network = build_network(config.r, config.seed)
    log = populate(network, config)
    means, traversal_means, kept = [], [], []
    for trial in range(config.repetitions):
        results = run_trial(network, config, trial, log)
        means.append(statistics.fmean(res.trace.total_hops for res in results))
        traversal_means.append(statistics.fmean(res.trace.traversal_hops for res in results))
        if keep_traces:
            kept.append(results)
    return ExperimentResult(
        config=config,
        repetition_means=means,
        traversal_means=traversal_means,
        summary=summarize(means),
        traversal_summary=summarize(traversal_means),
        queries_per_repetition=config.query_count,
        traces=kept,
    )
