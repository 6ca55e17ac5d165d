"""Metered query access to a hidden graph.

A :class:`QueryOracle` owns the hidden graph and a :class:`QueryLedger`.  Every
query model charges the ledger exactly as documented on its method; algorithms
never touch the graph any other way.

Besides the single-vector methods, oracles expose ``*_batch`` variants that
take a Boolean ``n x q`` matrix whose columns are ``q`` independent queries.
They return the same answers and charge the same amount as ``q`` single calls;
they exist only because evaluating non-adaptive query rounds column by column
in Python is slow.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy import sparse

from .graph import WeightedGraph, num_slots

MODELS = ("matvec", "master", "cut", "cross", "bis", "linear")

_INT64_SAFE = 2**62


class QueryModelDisabled(RuntimeError):
    pass


@dataclass
class QueryLedger:
    matvec: int = 0
    master: int = 0
    cut: int = 0
    cross: int = 0
    bis: int = 0
    linear: int = 0

    def charge(self, model: str, count: int = 1) -> None:
        if model not in MODELS:
            raise KeyError(model)
        if count < 0:
            raise ValueError("ledger counters only increase")
        setattr(self, model, getattr(self, model) + int(count))

    def __getitem__(self, model: str) -> int:
        if model not in MODELS:
            raise KeyError(model)
        return getattr(self, model)

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @property
    def total(self) -> int:
        return sum(self.as_dict().values())


def as_bool_vector(x, n: int, name: str = "x") -> np.ndarray:
    arr = np.asarray(x)
    if arr.shape != (n,):
        raise ValueError(f"{name} must have shape ({n},), got {arr.shape}")
    if arr.dtype != bool:
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError(f"{name} must be a 0/1 vector")
        arr = arr.astype(bool)
    return arr


def as_bool_matrix(X, n: int) -> np.ndarray:
    arr = np.asarray(X)
    if arr.ndim != 2 or arr.shape[0] != n:
        raise ValueError(f"query batch must have shape ({n}, q), got {arr.shape}")
    if arr.dtype != bool:
        if not np.all((arr == 0) | (arr == 1)):
            raise ValueError("query batch must be 0/1")
        arr = arr.astype(bool)
    return arr


def _or_product(indptr: np.ndarray, indices: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Boolean product ``[P]_{>0} v X`` for a CSR 0/1 pattern ``P``, via packed bits."""
    n, q = X.shape
    if q == 0:
        return np.zeros((n, 0), dtype=bool)
    packed = np.packbits(X, axis=1)
    out = np.zeros_like(packed)
    deg = np.diff(indptr)
    nonempty = np.flatnonzero(deg)
    if len(nonempty):
        out[nonempty] = np.bitwise_or.reduceat(packed[indices], indptr[nonempty], axis=0)
    return np.unpackbits(out, axis=1, count=q).astype(bool)


class QueryOracle:
    """The only access path to a hidden weighted graph.

    ``models`` restricts which query types are answered.  ``cross_mode`` is
    ``"cut"`` (each cross query is paid for with three cut queries) or
    ``"native"`` (one cross charge).
    """

    def __init__(self, graph: WeightedGraph, models=MODELS, cross_mode: str = "cut"):
        if cross_mode not in ("cut", "native"):
            raise ValueError("cross_mode must be 'cut' or 'native'")
        unknown = set(models) - set(MODELS)
        if unknown:
            raise ValueError(f"unknown query models {sorted(unknown)}")
        self._graph = graph
        self.n = graph.n
        self.models = frozenset(models)
        self.cross_mode = cross_mode
        self.ledger = QueryLedger()

        n = graph.n
        iu, iv = graph.edge_arrays()
        ws, self._scale = graph.scaled_weights()
        self._iu, self._iv = iu, iv
        self._w = ws
        rows = np.concatenate([iu, iv])
        cols = np.concatenate([iv, iu])
        pattern = sparse.csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        pattern.sort_indices()
        self._indptr = pattern.indptr.astype(np.int64)
        self._indices = pattern.indices.astype(np.int64)
        wmax = max(ws, default=0)
        self._int64 = wmax * max(n, 1) < _INT64_SAFE
        if self._int64:
            data = np.array(ws + ws, dtype=np.int64)
            self._W = sparse.csr_matrix((data, (rows, cols)), shape=(n, n))
            self._w_arr = np.array(ws, dtype=np.int64)
        else:
            self._W = None
            self._w_arr = np.array(ws, dtype=object)

    def reveal(self) -> WeightedGraph:
        """The hidden graph, for verifiers and instrumentation only."""
        return self._graph

    def _require(self, model: str) -> None:
        if model not in self.models:
            raise QueryModelDisabled(f"{model} queries are disabled on this oracle")

    def _matvec_scaled(self, X: np.ndarray) -> np.ndarray:
        """``(A * scale) @ X`` as exact integers; no charge."""
        if self._int64:
            return np.asarray(self._W @ X.astype(np.int64))
        out = np.zeros((self.n, X.shape[1]), dtype=object)
        for a, b, w in zip(self._iu, self._iv, self._w):
            out[a] += w * X[b].astype(object)
            out[b] += w * X[a].astype(object)
        return out

    def _masked_product(self, X: np.ndarray) -> np.ndarray:
        """Exact ``A z o (1 - z)`` per column, as scaled integers; no charge.

        Used only by charged classical simulations of quantum subroutines.
        """
        Y = self._matvec_scaled(X)
        Y[X] = 0
        return Y

    @property
    def scale(self) -> int:
        return self._scale

    # --- matrix-vector -------------------------------------------------
    def matvec_query(self, x) -> np.ndarray:
        """``A x`` as an object array of Fractions; charges one matvec."""
        self._require("matvec")
        x = as_bool_vector(x, self.n)
        y = self._matvec_scaled(x[:, None])[:, 0]
        self.ledger.charge("matvec")
        return np.array([Fraction(int(v), self._scale) for v in y], dtype=object)

    def matvec_batch(self, X) -> tuple[np.ndarray, int]:
        """``(Y, scale)`` with ``A X = Y / scale`` exactly; charges ``q`` matvecs."""
        self._require("matvec")
        X = as_bool_matrix(X, self.n)
        Y = self._matvec_scaled(X)
        self.ledger.charge("matvec", X.shape[1])
        return Y, self._scale

    # --- master ----------------------------------------------------------
    def master_query(self, x) -> np.ndarray:
        """``[A x]_{>0} o (1 - x)``; charges one master query."""
        x = as_bool_vector(x, self.n)
        return self.master_batch(x[:, None])[:, 0]

    def master_batch(self, X) -> np.ndarray:
        self._require("master")
        X = as_bool_matrix(X, self.n)
        ans = _or_product(self._indptr, self._indices, X) & ~X
        self.ledger.charge("master", X.shape[1])
        return ans

    # --- cut / cross / bis -------------------------------------------------
    def _cut_value(self, z: np.ndarray) -> Fraction:
        crossing = z[self._iu] != z[self._iv]
        return Fraction(int(self._w_arr[crossing].sum()), self._scale)

    def cut_query(self, z) -> Fraction:
        """``(1 - z)^T A z``; charges one cut query."""
        self._require("cut")
        z = as_bool_vector(z, self.n, "z")
        self.ledger.charge("cut")
        return self._cut_value(z)

    def cross_query(self, y, z) -> Fraction:
        """``y^T A z`` for disjoint ``y`` and ``z``.

        In ``cut`` mode this issues the three cut queries of the identity
        ``y^T A z = ((1-y)^T A y + (1-z)^T A z - (1-(y+z))^T A (y+z)) / 2``.
        """
        y = as_bool_vector(y, self.n, "y")
        z = as_bool_vector(z, self.n, "z")
        if np.any(y & z):
            raise ValueError("cross query needs disjoint y and z")
        if self.cross_mode == "cut":
            return (self.cut_query(y) + self.cut_query(z) - self.cut_query(y | z)) / 2
        self._require("cross")
        self.ledger.charge("cross")
        return self._cross_value(y, z)

    def _cross_value(self, y: np.ndarray, z: np.ndarray) -> Fraction:
        hit = (y[self._iu] & z[self._iv]) | (y[self._iv] & z[self._iu])
        return Fraction(int(self._w_arr[hit].sum()), self._scale)

    def bis_query(self, y, z) -> int:
        """``[y^T A z]_{>0}`` on a simple graph; charges one BIS query."""
        self._require("bis")
        if not self._graph.is_simple():
            raise ValueError("BIS queries need a simple graph")
        y = as_bool_vector(y, self.n, "y")
        z = as_bool_vector(z, self.n, "z")
        if np.any(y & z):
            raise ValueError("BIS query needs disjoint y and z")
        self.ledger.charge("bis")
        hit = (y[self._iu] & z[self._iv]) | (y[self._iv] & z[self._iu])
        return int(hit.any())

    # --- linear ------------------------------------------------------------
    def linear_query(self, x) -> Fraction:
        """``<w, x>`` over the lexicographic slot order; charges one linear query."""
        self._require("linear")
        x = list(x)
        if len(x) != num_slots(self.n):
            raise ValueError(f"linear query needs {num_slots(self.n)} coordinates, got {len(x)}")
        self.ledger.charge("linear")
        total = Fraction(0)
        for slot, w in enumerate(self._graph.weight_vector()):
            if w:
                total += w * Fraction(x[slot])
        return total


class MatvecMaster:
    """Master queries answered by one matrix-vector query each.

    ``[A x]_{>0} o (1 - x)`` is read off ``A x`` by exact positivity.
    """

    def __init__(self, oracle: QueryOracle):
        self.oracle = oracle
        self.n = oracle.n
        self.ledger = oracle.ledger
        self.calls = 0

    def master_query(self, x) -> np.ndarray:
        x = as_bool_vector(x, self.n)
        return self.master_batch(x[:, None])[:, 0]

    def master_batch(self, X) -> np.ndarray:
        X = as_bool_matrix(X, self.n)
        Y, _ = self.oracle.matvec_batch(X)
        self.calls += X.shape[1]
        return np.asarray(Y > 0, dtype=bool) & ~X

    def reveal(self) -> WeightedGraph:
        return self.oracle.reveal()


def master_from_matvec(oracle: QueryOracle) -> MatvecMaster:
    return MatvecMaster(oracle)
