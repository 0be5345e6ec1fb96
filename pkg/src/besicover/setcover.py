"""Greedy and exact (branch-and-bound) set cover on Python-int bitsets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

__all__ = ["SetCoverSolution", "greedy_set_cover", "exact_set_cover"]


@dataclass
class SetCoverSolution:
    chosen: list[int]
    exact: bool
    lower_bound: int
    nodes: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.chosen)


def greedy_set_cover(universe: int, sets: Sequence[int]) -> list[int]:
    """Largest-gain selection; ties go to the lowest index."""
    U = universe
    chosen = []
    while U:
        best, gain = -1, 0
        for i, s in enumerate(sets):
            g = (s & U).bit_count()
            if g > gain:
                best, gain = i, g
        if best < 0:
            raise ValueError("sets do not cover the universe")
        chosen.append(best)
        U &= ~sets[best]
    return chosen


class _BudgetExceeded(Exception):
    pass


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def exact_set_cover(universe: int, sets: Sequence[int], budget: int = 200_000) -> SetCoverSolution:
    """Minimum-cardinality cover of ``universe`` by members of ``sets``.

    Iterative deepening from a lower bound up to the greedy size, with
    failure memoisation on the uncovered set.  Lower bounds are the larger of
    a volume bound and a greedy packing of elements no two of which share a
    candidate set.  If more than ``budget`` nodes are expanded the best cover
    found so far is returned with ``exact=False``.
    """
    first_index: dict[int, int] = {}
    for i, s in enumerate(sets):
        m = s & universe
        if m and m not in first_index:
            first_index[m] = i
    masks = sorted(first_index, key=lambda m: (-m.bit_count(), first_index[m]))
    kept: list[int] = []
    for m in masks:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    cover_all = 0
    for m in kept:
        cover_all |= m
    if cover_all & universe != universe:
        raise ValueError("sets do not cover the universe")
    if universe == 0:
        return SetCoverSolution([], True, 0)

    greedy = greedy_set_cover(universe, kept)
    elems = _bits(universe)
    elem_sets = {e: sum(1 << i for i, m in enumerate(kept) if m >> e & 1) for e in elems}
    order = sorted(elems, key=lambda e: (elem_sets[e].bit_count(), e))

    def lower_bound(U: int) -> int:
        used = 0
        count = 0
        for e in order:
            if U >> e & 1 and not elem_sets[e] & used:
                count += 1
                used |= elem_sets[e]
        gain = max((m & U).bit_count() for m in kept)
        vol = -(-U.bit_count() // gain)
        return max(count, vol)

    failed: dict[int, int] = {}
    nodes = 0

    def feasible(U: int, k: int):
        nonlocal nodes
        if U == 0:
            return []
        if k == 0 or failed.get(U, -1) >= k:
            return None
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if lower_bound(U) > k:
            failed[U] = max(failed.get(U, -1), k)
            return None
        e = next(x for x in order if U >> x & 1)
        opts = _bits(elem_sets[e])
        residual = {i: kept[i] & U for i in opts}
        opts.sort(key=lambda i: -residual[i].bit_count())
        pruned = []
        for i in opts:
            r = residual[i]
            if any(r & ~residual[j] == 0 and r != residual[j] for j in pruned):
                continue
            if any(r == residual[j] for j in pruned):
                continue
            pruned.append(i)
        for i in pruned:
            sub = feasible(U & ~kept[i], k - 1)
            if sub is not None:
                return [i] + sub
        failed[U] = max(failed.get(U, -1), k)
        return None

    lb = lower_bound(universe)
    best = greedy
    exact = True
    proven = lb
    try:
        for k in range(lb, len(greedy)):
            sol = feasible(universe, k)
            if sol is not None:
                best = sol
                break
            proven = k + 1
    except _BudgetExceeded:
        exact = False
    chosen = sorted(first_index[kept[i]] for i in best)
    return SetCoverSolution(chosen, exact, len(best) if exact else proven, nodes)
