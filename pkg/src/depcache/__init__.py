"""Dependency-aware caching: feasible-cache model, online eviction policies,
exact offline oracles, workload generators, and an experiment harness.

Items live in a DAG where an edge (u, v) means "u depends on v"; a cache is
feasible when it is closed under dependencies and within capacity.  Serving a
request materialises the requested item's full dependency closure.
"""

from .baselines import ClassicLru, RandomMark
from .bucketing import Bucketing
from .buckets import Bucket, BucketPool, pick_uniform, reset_buckets
from .bypass import BucketingBypass, threshold
from .cache import CacheState, evict, fetch, is_evictable, maximal_cached
from .dag import (
    DependencyDag,
    TauOrder,
    build_dag,
    compute_tau,
    harmonic,
    load_dag,
    max_antichain_bruteforce,
    save_dag,
)
from .errors import (
    AllItemsPruned,
    AlreadyCached,
    CacheFull,
    CycleDetected,
    DepCacheError,
    DuplicateEdge,
    EmptyBucket,
    EmptyPool,
    EmptyUniverse,
    InvalidArgument,
    InvalidCapacity,
    InvalidHeight,
    InvalidId,
    InvalidParameters,
    MissingDependencies,
    NotCached,
    RequestTooLarge,
    StateSpaceTooLarge,
    TooLarge,
    UnsupportedDag,
    WouldBreakFeasibility,
)
from .harness import (
    CSV_HEADER,
    ExperimentConfig,
    ResultRow,
    config_from_mapping,
    parse_config_file,
    run_experiment,
    rows_to_csv,
    write_csv,
)
from .opt_oracle import (
    enumerate_feasible,
    naive_opt_cost,
    naive_opt_cost_bypass,
    opt_cost,
    opt_cost_bypass,
)
from .policy import POLICY_NAMES, OnlinePolicy, PhaseLog, RequestOutcome, make_policy
from .recursive_lru import RecursiveLru
from .workload import (
    TOWARD_LEAVES,
    TOWARD_ROOT,
    Trace,
    gen_balanced_tree,
    gen_geometric_trace,
    gen_lower_bound_instance,
    gen_lower_bound_trace,
    gen_zipf_trace,
    load_trace,
    random_dag,
    random_trace,
    save_trace,
)

__version__ = "0.1.0"

__all__ = [
    "AllItemsPruned",
    "AlreadyCached",
    "Bucket",
    "BucketPool",
    "Bucketing",
    "BucketingBypass",
    "CSV_HEADER",
    "CacheFull",
    "CacheState",
    "ClassicLru",
    "CycleDetected",
    "DepCacheError",
    "DependencyDag",
    "DuplicateEdge",
    "EmptyBucket",
    "EmptyPool",
    "EmptyUniverse",
    "ExperimentConfig",
    "InvalidArgument",
    "InvalidCapacity",
    "InvalidHeight",
    "InvalidId",
    "InvalidParameters",
    "MissingDependencies",
    "NotCached",
    "OnlinePolicy",
    "POLICY_NAMES",
    "PhaseLog",
    "RandomMark",
    "RecursiveLru",
    "RequestOutcome",
    "RequestTooLarge",
    "ResultRow",
    "StateSpaceTooLarge",
    "TOWARD_LEAVES",
    "TOWARD_ROOT",
    "TauOrder",
    "TooLarge",
    "Trace",
    "UnsupportedDag",
    "WouldBreakFeasibility",
    "build_dag",
    "compute_tau",
    "config_from_mapping",
    "enumerate_feasible",
    "evict",
    "fetch",
    "gen_balanced_tree",
    "gen_geometric_trace",
    "gen_lower_bound_instance",
    "gen_lower_bound_trace",
    "gen_zipf_trace",
    "harmonic",
    "is_evictable",
    "load_dag",
    "load_trace",
    "make_policy",
    "max_antichain_bruteforce",
    "maximal_cached",
    "naive_opt_cost",
    "naive_opt_cost_bypass",
    "opt_cost",
    "opt_cost_bypass",
    "parse_config_file",
    "pick_uniform",
    "random_dag",
    "random_trace",
    "reset_buckets",
    "run_experiment",
    "rows_to_csv",
    "save_dag",
    "save_trace",
    "threshold",
    "write_csv",
]
