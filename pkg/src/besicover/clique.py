"""Maximum clique by branch and bound with a greedy-colouring bound.

Graphs are adjacency lists of Python-int bitsets: bit ``j`` of ``adj[i]``
is set iff ``i`` and ``j`` are adjacent.  No self loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = ["CliqueResult", "max_clique", "max_independent_set", "complement"]


@dataclass
class CliqueResult:
    nodes: list[int]
    exact: bool
    expansions: int

    @property
    def size(self) -> int:
        return len(self.nodes)


class _Stop(Exception):
    pass


def _greedy_clique(adj: Sequence[int], P: int) -> list[int]:
    best: list[int] = []
    verts = []
    x = P
    while x:
        low = x & -x
        verts.append(low.bit_length() - 1)
        x ^= low
    for start in sorted(verts, key=lambda v: -(adj[v] & P).bit_count())[:8]:
        clique = [start]
        cand = adj[start] & P
        while cand:
            v = max(_iter_bits(cand), key=lambda u: (adj[u] & cand).bit_count())
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def max_clique(adj: Sequence[int], budget: int = 10**7, within: int | None = None) -> CliqueResult:
    """Exact maximum clique unless more than ``budget`` subproblems are expanded.

    On budget exhaustion the best clique found is returned with ``exact=False``
    (a lower bound).
    """
    n = len(adj)
    P0 = (1 << n) - 1 if within is None else within
    if P0 == 0:
        return CliqueResult([], True, 0)
    best = _greedy_clique(adj, P0)
    count = 0

    def colour(P: int):
        order: list[int] = []
        bounds: list[int] = []
        c = 0
        U = P
        while U:
            c += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~low & ~adj[v]
                U &= ~low
                order.append(v)
                bounds.append(c)
        return order, bounds

    def expand(R: list[int], P: int):
        nonlocal best, count
        count += 1
        if count > budget:
            raise _Stop
        order, bounds = colour(P)
        for idx in range(len(order) - 1, -1, -1):
            if len(R) + bounds[idx] <= len(best):
                return
            v = order[idx]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    exact = True
    try:
        expand([], P0)
    except _Stop:
        exact = False
    return CliqueResult(sorted(best), exact, count)


def complement(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    return [full & ~a & ~(1 << i) for i, a in enumerate(adj)]


def max_independent_set(adj: Sequence[int], budget: int = 10**7) -> CliqueResult:
    return max_clique(complement(adj), budget)
