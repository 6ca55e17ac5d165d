"""Charged classical simulations of the quantum master-query subroutines.

No quantum state is simulated.  Each adapter computes the exact answer the
quantum subroutine would learn, ``A z o (1 - z)`` thresholded to its support,
and bills the underlying oracle's ledger the subroutine's query cost:

* cut queries: a Bernstein-Vazirani style learner over ``Z_K`` with
  ``K = 2 M n`` needs ``ceil(log2 K)`` cross queries, each of which costs three
  cut queries when cross queries are cut-backed;
* BIS queries: Belovs' group-testing learner uses ``ceil(c_bel sqrt(n))`` OR
  queries per attempt, repeated ``ceil(c_rep ln n)`` times for error reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .oracles import QueryOracle, as_bool_matrix, as_bool_vector


@dataclass(frozen=True)
class ChargePolicy:
    c_bel: float = 2.0
    c_rep: float = 1.0
    inject_failures: bool = False

    def bv_cost(self, K: int) -> int:
        """Cross queries per learned vector with entries in ``Z_K``."""
        return max(1, math.ceil(math.log2(K)))

    def repetitions(self, n: int) -> int:
        return max(1, math.ceil(self.c_rep * math.log(n))) if n > 1 else 1

    def belovs_cost(self, n: int) -> int:
        """BIS queries per simulated master query."""
        return max(1, math.ceil(self.c_bel * math.sqrt(n))) * self.repetitions(n)

    def failure_rate(self, n: int) -> float:
        return 1.0 / n**3 if self.inject_failures else 0.0


class CutMaster:
    """Master queries over cut-query access, for integer weights below ``M``."""

    def __init__(self, oracle: QueryOracle, policy: ChargePolicy | None = None):
        graph = oracle.reveal()
        if not graph.is_integral():
            raise ValueError("quantum cut simulation needs integer weights")
        self.oracle = oracle
        self.policy = policy or ChargePolicy()
        self.n = oracle.n
        self.ledger = oracle.ledger
        self.M = graph.max_weight_bound
        self.K = 2 * self.M * self.n
        self.calls = 0

    @property
    def cost_per_query(self) -> dict[str, int]:
        bits = self.policy.bv_cost(self.K)
        if self.oracle.cross_mode == "cut":
            return {"cut": 3 * bits}
        return {"cross": bits}

    def master_query(self, z) -> np.ndarray:
        z = as_bool_vector(z, self.n, "z")
        return self.master_batch(z[:, None])[:, 0]

    def master_batch(self, Z) -> np.ndarray:
        Z = as_bool_matrix(Z, self.n)
        q = Z.shape[1]
        for model, cost in self.cost_per_query.items():
            self.oracle._require(model)
            self.oracle.ledger.charge(model, cost * q)
        self.calls += q
        x = self.oracle._masked_product(Z)
        return np.asarray(x > 0, dtype=bool)

    def reveal(self) -> WeightedGraph:
        return self.oracle.reveal()


class BisMaster:
    """Master queries over BIS access on a simple graph.

    With ``policy.inject_failures`` each query is, independently with
    probability ``1/n^3``, answered with one coordinate outside ``supp(z)``
    flipped.  ``corrupted`` counts those events.
    """

    def __init__(self, oracle: QueryOracle, policy: ChargePolicy | None = None, seed=None):
        if not oracle.reveal().is_simple():
            raise ValueError("BIS simulation needs a simple graph")
        self.oracle = oracle
        self.policy = policy or ChargePolicy()
        self.n = oracle.n
        self.ledger = oracle.ledger
        self.rng = np.random.default_rng(seed)
        self.calls = 0
        self.corrupted = 0

    @property
    def cost_per_query(self) -> int:
        return self.policy.belovs_cost(self.n)

    def master_query(self, z) -> np.ndarray:
        z = as_bool_vector(z, self.n, "z")
        return self.master_batch(z[:, None])[:, 0]

    def master_batch(self, Z) -> np.ndarray:
        Z = as_bool_matrix(Z, self.n)
        q = Z.shape[1]
        self.oracle._require("bis")
        self.oracle.ledger.charge("bis", self.cost_per_query * q)
        self.calls += q
        ans = np.asarray(self.oracle._masked_product(Z) > 0, dtype=bool)
        rate = self.policy.failure_rate(self.n)
        if rate > 0:
            hit = np.flatnonzero(self.rng.random(q) < rate)
            for col in hit:
                free = np.flatnonzero(~Z[:, col])
                if len(free):
                    i = free[self.rng.integers(len(free))]
                    ans[i, col] = not ans[i, col]
                    self.corrupted += 1
        return ans

    def reveal(self) -> WeightedGraph:
        return self.oracle.reveal()


def master_from_cut(oracle: QueryOracle, policy: ChargePolicy | None = None) -> CutMaster:
    return CutMaster(oracle, policy)


def master_from_bis(oracle: QueryOracle, policy: ChargePolicy | None = None, seed=None) -> BisMaster:
    return BisMaster(oracle, policy, seed)
