"""Learning a simple graph with a single linear query."""

from __future__ import annotations

from fractions import Fraction

from ..graph import WeightedGraph, make_graph, num_slots, slots


def learn_simple_graph_one_query(oracle, n: int | None = None) -> WeightedGraph:
    """Query ``x(slot_j) = 2^j``; bit ``j`` of the answer is the edge in slot ``j``.

    Only valid for 0/1 weights; any other answer raises ``ValueError``, but a
    non-simple graph whose weighted sum happens to be a small integer decodes
    silently to the wrong graph.
    """
    n = oracle.n if n is None else n
    m = num_slots(n)
    answer = oracle.linear_query([1 << j for j in range(m)])
    answer = Fraction(answer)
    if answer.denominator != 1 or answer < 0 or answer >= 1 << m:
        raise ValueError(f"answer {answer} is not a {m}-bit integer; hidden graph is not simple")
    bits = int(answer)
    return make_graph(n, [(u, v, 1) for j, (u, v) in enumerate(slots(n)) if bits >> j & 1])
