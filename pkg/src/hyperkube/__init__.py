"""Hypercube-structured DHT for multi-keyword search over ledger object roots."""

from hyperkube._kernels import BACKEND
from hyperkube.index import IndexNode, ObjectRef
from hyperkube.keywords import Keyword, KeywordSet, NodeId, hash_keyword, one
from hyperkube.ledger import MockLedger, load_fixture, write_fixture
from hyperkube.network import Network
from hyperkube.routing import (
    HopTrace,
    Query,
    QueryResult,
    SearchKind,
    execute,
    execute_pin,
    execute_superset,
    route_to_responsible,
)
from hyperkube.simulator import ExperimentConfig, StatsSummary, run_experiment, summarize
from hyperkube.topology import Hypercube, SubHypercube, contains, hamming, neighbors, sbt_children

__version__ = "0.1.0"
