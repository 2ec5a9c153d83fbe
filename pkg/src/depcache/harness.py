"""Experiment harness: run policies over instances and emit CSV rows.

One row per (policy, k, repetition).  Repetition r uses seed
``base_seed + r`` for both the trace generator (when traces are generated
rather than loaded) and the policy's random choices, so runs are
reproducible and byte-stable while repetitions stay independent.  Rows are
collected fully before any output is written and are sorted by
(policy, k, seed).

When the oracle is enabled each row carries the exact offline optimum --
the bypassing optimum for the bypassing policy, the serving optimum
otherwise -- and the cost/optimum ratio.  With the oracle off those two
fields are empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dag import DependencyDag, load_dag
from .errors import InvalidArgument
from .opt_oracle import opt_cost, opt_cost_bypass
from .policy import make_policy
from .workload import (
    TOWARD_ROOT,
    Trace,
    gen_balanced_tree,
    gen_geometric_trace,
    gen_lower_bound_instance,
    gen_lower_bound_trace,
    gen_zipf_trace,
    load_trace,
)

CSV_HEADER = "policy,k,seed,trace_len,total_cost,cost_per_request,phases,clean,stale,bypasses,opt_cost,ratio"

DAG_GENERATORS = ("tree", "lower-bound")
TRACE_GENERATORS = ("zipf", "geometric", "lower-bound")


@dataclass
class ExperimentConfig:
    """Everything one experiment needs; see module docstring for seeding."""

    policies: list[str]
    ks: list[int]
    reps: int = 1
    base_seed: int = 0
    oracle: bool = False
    csv_path: str | None = None
    # graph source: a file path, or a generator name plus parameters
    dag_path: str | None = None
    dag_gen: str | None = None
    height: int | None = None
    orientation: str = TOWARD_ROOT
    lb_l: int | None = None
    # trace source: a file path, or a generator name plus parameters
    trace_path: str | None = None
    trace_gen: str | None = None
    a: float = 4.0
    p: float = 10 / 1024
    length: int = 5000
    phases: int = 100
    per_level_mass: bool = False


@dataclass
class ResultRow:
    policy: str
    k: int
    seed: int
    trace_len: int
    total_cost: int
    cost_per_request: float
    phases: int
    clean: int
    stale: int
    bypasses: int
    opt_cost: int | None = None
    ratio: float | None = None

    def csv_fields(self) -> list[str]:
        return [
            self.policy,
            str(self.k),
            str(self.seed),
            str(self.trace_len),
            str(self.total_cost),
            str(self.cost_per_request),
            str(self.phases),
            str(self.clean),
            str(self.stale),
            str(self.bypasses),
            "" if self.opt_cost is None else str(self.opt_cost),
            "" if self.ratio is None else str(self.ratio),
        ]


def _resolve_dag(config: ExperimentConfig, k: int) -> DependencyDag:
    if config.dag_path is not None:
        return load_dag(config.dag_path)
    if config.dag_gen == "tree":
        if config.height is None:
            raise InvalidArgument("tree graphs need a height")
        return gen_balanced_tree(config.height, config.orientation)
    if config.dag_gen == "lower-bound":
        if config.lb_l is None:
            raise InvalidArgument("lower-bound graphs need l")
        dag, _ = gen_lower_bound_instance(k, config.lb_l)
        return dag
    raise InvalidArgument("no graph source configured")


def _resolve_trace(config: ExperimentConfig, k: int, seed: int) -> Trace:
    if config.trace_path is not None:
        return load_trace(config.trace_path)
    if config.trace_gen == "zipf":
        if config.height is None:
            raise InvalidArgument("zipf traces need a height")
        return gen_zipf_trace(
            config.height, config.a, config.length, k, seed,
            orientation=config.orientation, per_level_mass=config.per_level_mass,
        )
    if config.trace_gen == "geometric":
        if config.height is None:
            raise InvalidArgument("geometric traces need a height")
        return gen_geometric_trace(
            config.height, config.p, config.length, k, seed,
            orientation=config.orientation,
        )
    if config.trace_gen == "lower-bound":
        if config.lb_l is None:
            raise InvalidArgument("lower-bound traces need l")
        return gen_lower_bound_trace(k, config.lb_l, config.phases, seed)
    raise InvalidArgument("no trace source configured")


def run_experiment(config: ExperimentConfig) -> list[ResultRow]:
    rows: list[ResultRow] = []
    opt_memo: dict[tuple, int] = {}
    dag_memo: dict[int, DependencyDag] = {}
    file_trace: Trace | None = None
    for k in config.ks:
        if k not in dag_memo:
            dag_memo[k] = _resolve_dag(config, k)
        dag = dag_memo[k]
        for rep in range(config.reps):
            seed = config.base_seed + rep
            if config.trace_path is not None:
                if file_trace is None:
                    file_trace = _resolve_trace(config, k, seed)
                trace = file_trace
            else:
                trace = _resolve_trace(config, k, seed)
            for policy_name in config.policies:
                policy = make_policy(policy_name, dag, k, seed)
                for v in trace.items:
                    policy.serve(v)
                opt: int | None = None
                ratio: float | None = None
                if config.oracle:
                    bypassing = policy_name == "bucketing_bypass"
                    key = (k, bypassing, tuple(trace.items))
                    if key not in opt_memo:
                        fn = opt_cost_bypass if bypassing else opt_cost
                        opt_memo[key] = fn(dag, k, trace.items)
                    opt = opt_memo[key]
                    if opt > 0:
                        ratio = policy.total_cost / opt
                n = len(trace.items)
                rows.append(
                    ResultRow(
                        policy=policy_name,
                        k=k,
                        seed=seed,
                        trace_len=n,
                        total_cost=policy.total_cost,
                        cost_per_request=policy.total_cost / n if n else 0.0,
                        phases=policy.phase_count,
                        clean=policy.clean_fetches,
                        stale=policy.stale_fetches,
                        bypasses=policy.bypass_count,
                        opt_cost=opt,
                        ratio=ratio,
                    )
                )
    rows.sort(key=lambda r: (r.policy, r.k, r.seed))
    return rows


def rows_to_csv(rows: list[ResultRow]) -> str:
    lines = [CSV_HEADER]
    lines += [",".join(r.csv_fields()) for r in rows]
    return "\n".join(lines) + "\n"


def write_csv(rows: list[ResultRow], path: str) -> None:
    text = rows_to_csv(rows)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --- flat key=value config files ----------------------------------------


def parse_config_file(path: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidArgument(f"config line without '=': {line!r}")
            key, _, value = line.partition("=")
            mapping[key.strip()] = value.strip()
    return mapping


def _as_bool(value: str) -> bool:
    low = value.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise InvalidArgument(f"not a boolean: {value!r}")


def config_from_mapping(mapping: dict[str, str]) -> ExperimentConfig:
    """Build a config from flat key=value pairs (file or CLI supplied).

    ``dag`` and ``trace`` hold either a generator name (``tree``,
    ``lower-bound``; ``zipf``, ``geometric``, ``lower-bound``) or a file
    path; ``policies`` and ``k`` take comma-separated lists.
    """
    m = dict(mapping)
    if "policies" not in m or "k" not in m:
        raise InvalidArgument("config needs at least 'policies' and 'k'")
    config = ExperimentConfig(
        policies=[s.strip() for s in m["policies"].split(",") if s.strip()],
        ks=[int(s) for s in m["k"].split(",") if s.strip()],
    )
    dag_src = m.get("dag")
    if dag_src is not None:
        if dag_src in DAG_GENERATORS:
            config.dag_gen = dag_src
        else:
            config.dag_path = dag_src
    trace_src = m.get("trace")
    if trace_src is not None:
        if trace_src in TRACE_GENERATORS:
            config.trace_gen = trace_src
        else:
            config.trace_path = trace_src
    if "reps" in m:
        config.reps = int(m["reps"])
    if "seed" in m:
        config.base_seed = int(m["seed"])
    if "oracle" in m:
        config.oracle = _as_bool(m["oracle"])
    if "csv" in m:
        config.csv_path = m["csv"]
    if "height" in m:
        config.height = int(m["height"])
    if "orientation" in m:
        config.orientation = m["orientation"]
    if "l" in m:
        config.lb_l = int(m["l"])
    if "a" in m:
        config.a = float(m["a"])
    if "p" in m:
        config.p = float(m["p"])
    if "length" in m:
        config.length = int(m["length"])
    if "phases" in m:
        config.phases = int(m["phases"])
    if "per_level_mass" in m:
        config.per_level_mass = _as_bool(m["per_level_mass"])
    return config
