"""Seeded spanning-forest experiments over the four master-query models.

Trial ``t`` of an experiment with master seed ``s`` uses the derived seed
``derive_seed(s, t)`` both to draw its graph (for random families) and to
drive the algorithm, so any single trial can be rerun on its own.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .connectivity import clog2, find_spanning_forest, master_query_budget, rounds_progress_trace
from .graph import WeightedGraph, connected_components, generate, is_spanning_forest
from .oracles import MODELS, QueryOracle, master_from_matvec
from .quantum import ChargePolicy, master_from_bis, master_from_cut
from .seeding import derive_seed

ADAPTERS = ("master", "matvec", "cut-quantum", "bis-quantum")
FAMILIES = ("cycle", "path", "star", "complete", "edgeless", "erdos_renyi", "disjoint_union")


def build_adapter(graph: WeightedGraph, model: str, seed: int = 0,
                  policy: ChargePolicy | None = None, cross_mode: str = "cut"):
    """``(oracle, adapter)``: the ledger-holding oracle and the master-capable view of it."""
    if model == "master":
        oracle = QueryOracle(graph, models=("master",))
        return oracle, oracle
    if model == "matvec":
        oracle = QueryOracle(graph, models=("matvec",))
        return oracle, master_from_matvec(oracle)
    if model == "cut-quantum":
        oracle = QueryOracle(graph, models=("cut", "cross"), cross_mode=cross_mode)
        return oracle, master_from_cut(oracle, policy)
    if model == "bis-quantum":
        oracle = QueryOracle(graph, models=("bis",))
        return oracle, master_from_bis(oracle, policy, derive_seed(seed, 0))
    raise ValueError(f"unknown model {model!r}; choose from {ADAPTERS}")


def master_calls(oracle: QueryOracle, adapter) -> int:
    """Master queries issued by the algorithm, whichever model answered them."""
    return oracle.ledger.master if adapter is oracle else adapter.calls


@dataclass(frozen=True)
class TrialTask:
    trial: int
    seed: int
    model: str
    n: int
    family: str | None = None
    graph: WeightedGraph | None = None
    policy: ChargePolicy | None = None
    trace: bool = False
    p: float | None = None
    max_weight: int = 1


@dataclass
class TrialRecord:
    trial: int
    seed: int
    n: int
    m: int
    success: bool
    forest_size: int
    components: int
    master_calls: int
    ledger: dict
    corrupted: int = 0
    q_trace: list | None = None
    wall_time: float = 0.0


def trial_graph(task: TrialTask) -> WeightedGraph:
    if task.graph is not None:
        return task.graph
    return generate(task.family, task.n, task.seed, p=task.p, max_weight=task.max_weight)


def run_trial(task: TrialTask) -> TrialRecord:
    g = trial_graph(task)
    oracle, adapter = build_adapter(g, task.model, task.seed, task.policy)
    start = time.perf_counter()
    trace = None
    if task.trace:
        forest, trace = rounds_progress_trace(adapter, g.n, task.seed)
    else:
        forest = find_spanning_forest(adapter, g.n, task.seed)
    elapsed = time.perf_counter() - start
    return TrialRecord(
        trial=task.trial,
        seed=task.seed,
        n=g.n,
        m=g.m,
        success=is_spanning_forest(g, forest),
        forest_size=len(forest),
        components=len(connected_components(g)),
        master_calls=master_calls(oracle, adapter),
        ledger=oracle.ledger.as_dict(),
        corrupted=getattr(adapter, "corrupted", 0),
        q_trace=trace,
        wall_time=elapsed,
    )


def _stats(values) -> dict:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return {"min": 0, "mean": 0.0, "max": 0}
    return {"min": int(arr.min()), "mean": float(arr.mean()), "max": int(arr.max())}


@dataclass
class ExperimentReport:
    n: int
    family: str
    model: str
    trials: int
    successes: int
    seed: int
    forest_sizes: list
    aggregates: dict
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["records"] = [asdict(r) for r in self.records]
        return out


def run_experiment(*, model: str = "master", seed: int = 0, trials: int = 1,
                   family: str | None = None, n: int | None = None,
                   graph: WeightedGraph | None = None, threads: int = 1,
                   policy: ChargePolicy | None = None, trace: bool = False,
                   p: float | None = None, max_weight: int = 1) -> ExperimentReport:
    """Run ``trials`` seeded spanning-forest trials and aggregate their ledgers."""
    if model not in ADAPTERS:
        raise ValueError(f"unknown model {model!r}; choose from {ADAPTERS}")
    if graph is None:
        if family is None or n is None:
            raise ValueError("give either a graph or a family and n")
        label = family
    else:
        n = graph.n
        label = "file"
    tasks = [TrialTask(t, derive_seed(seed, t), model, n, family, graph, policy, trace, p, max_weight)
             for t in range(trials)]
    start = time.perf_counter()
    if threads > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(run_trial, tasks))
    else:
        records = [run_trial(t) for t in tasks]
    records.sort(key=lambda r: r.trial)
    aggregates = {"master_calls": _stats([r.master_calls for r in records])}
    for model_name in MODELS:
        aggregates[model_name] = _stats([r.ledger[model_name] for r in records])
    return ExperimentReport(
        n=n,
        family=label,
        model=model,
        trials=trials,
        successes=sum(r.success for r in records),
        seed=seed,
        forest_sizes=[r.forest_size for r in records],
        aggregates=aggregates,
        records=records,
        wall_time=time.perf_counter() - start,
    )


def scaling_rows(*, family: str, n_list, model: str = "master", seed: int = 0,
                 trials: int = 1, threads: int = 1) -> list[dict]:
    """One row per ``n``: mean master queries and their ratio to ``ceil(log2 n)^4``."""
    rows = []
    for n in n_list:
        rep = run_experiment(model=model, seed=seed, trials=trials, family=family, n=n,
                             threads=threads)
        mean = rep.aggregates["master_calls"]["mean"]
        rows.append({
            "n": n,
            "trials": trials,
            "successes": rep.successes,
            "mean_master_queries": mean,
            "max_master_queries": rep.aggregates["master_calls"]["max"],
            "normalized": mean / clog2(n) ** 4 if n > 1 else math.nan,
            "budget": master_query_budget(n),
        })
    return rows
