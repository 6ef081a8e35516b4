"""Polynomial-time greedy approximations with certified ratios.

- greedy_parent_sets: repeatedly commit the highest-scoring feasible parent
  set; (k+1)-approximation under in-degree bound k.
- greedy_arcs_additive: repeatedly commit the best feasible single arc on
  additive scores; 2-approximation under in-degree bound k.
- greedy_density_comp: commit parent sets by per-arc density f/|D| under a
  per-component arc budget q; 2q-approximation.

Feasibility is maintained with a union-find over skeleton components, so
stale heap candidates can be discarded permanently: components only merge,
in-degrees and component arc counts only grow.
"""

from __future__ import annotations

import heapq
import time

from .errors import PreconditionError
from .model import (
    Instance,
    Polytree,
    SolveResult,
    UnionFind,
    is_additive_consistent,
    iter_bits,
    nodes_of,
)


class ForestState:
    """Union-find plus per-component arc counts, in-degrees, assigned flags."""

    def __init__(self, n: int):
        self.uf = UnionFind(n)
        self.comp_arcs = [0] * n  # valid at roots only
        self.indegree = [0] * n
        self.assigned = [False] * n
        self.parent_sets = [0] * n

    def roots(self, nodes) -> list[int]:
        return [self.uf.find(v) for v in nodes]

    def distinct_components(self, nodes) -> bool:
        roots = self.roots(nodes)
        return len(set(roots)) == len(roots)

    def arcs_after_merge(self, nodes, new_arcs: int) -> int:
        """Arc count of the component formed by merging `nodes` components."""
        return sum(self.comp_arcs[r] for r in set(self.roots(nodes))) + new_arcs

    def commit(self, v: int, mask: int) -> None:
        members = [v] + list(iter_bits(mask))
        total = self.arcs_after_merge(members, mask.bit_count())
        for u in members[1:]:
            self.uf.union(v, u)
        self.comp_arcs[self.uf.find(v)] = total
        self.indegree[v] += mask.bit_count()
        self.assigned[v] = True
        self.parent_sets[v] |= mask


def _result(instance, state, total, algorithm, t0, extras) -> SolveResult:
    return SolveResult(
        score=total,
        polytree=Polytree(tuple(state.parent_sets)),
        algorithm=algorithm,
        n=instance.n,
        names=instance.names,
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
        extras=extras,
    )


def greedy_parent_sets(instance: Instance, audit: bool = False) -> SolveResult:
    """Highest-score-first parent-set greedy; (k_eff+1)-approximation."""
    t0 = time.perf_counter()
    state = ForestState(instance.n)
    heap = []
    for v, fam in enumerate(instance.families):
        for mask, s in fam.entries:
            if mask and s > 0:
                heapq.heappush(heap, (-s, v, nodes_of(mask), mask))
    total = 0.0
    skipped = []
    while heap:
        negs, v, _, mask = heapq.heappop(heap)
        if state.assigned[v] or not state.distinct_components(
            [v] + list(iter_bits(mask))
        ):
            if audit:
                skipped.append((v, mask))
            continue
        state.commit(v, mask)
        total += -negs
    if audit:
        for v, mask in skipped:
            assert state.assigned[v] or not state.distinct_components(
                [v] + list(iter_bits(mask))
            ), "discarded candidate became feasible again"
    extras = {"ratio_bound": instance.k_eff + 1}
    return _result(instance, state, total, "greedy", t0, extras)


def greedy_arcs_additive(instance: Instance, k: int, audit: bool = False) -> SolveResult:
    """Best-arc-first greedy on additive scores; 2-approximation under k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not is_additive_consistent(instance):
        raise PreconditionError("instance is not additive")
    t0 = time.perf_counter()
    state = ForestState(instance.n)
    heap = []
    for v, fam in enumerate(instance.families):
        for mask, s in fam.entries:
            if mask.bit_count() == 1 and s > 0:
                u = mask.bit_length() - 1
                heapq.heappush(heap, (-s, v, u))
    total = 0.0
    skipped = []
    while heap:
        negs, v, u = heapq.heappop(heap)
        if state.indegree[v] >= k or state.uf.find(u) == state.uf.find(v):
            if audit:
                skipped.append((v, u))
            continue
        state.commit(v, 1 << u)
        state.assigned[v] = False  # arc greedy may extend a node's parents later
        total += -negs
    if audit:
        for v, u in skipped:
            assert state.indegree[v] >= k or state.uf.find(u) == state.uf.find(v), (
                "discarded arc became feasible again"
            )
    extras = {"ratio_bound": 2, "k": k}
    return _result(instance, state, total, "greedy-additive", t0, extras)


def greedy_density_comp(instance: Instance, q: int, audit: bool = False) -> SolveResult:
    """Density-first parent-set greedy under a per-component arc budget q.

    Candidates are ordered by omega = f_v(D_v)/|D_v| (ties: larger raw score,
    then smaller node, then lex smaller set); a candidate is feasible if its
    nodes sit in pairwise distinct components and the merged component would
    hold at most q arcs.  2q-approximation against the component-constrained
    optimum.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    t0 = time.perf_counter()
    state = ForestState(instance.n)
    heap = []
    for v, fam in enumerate(instance.families):
        for mask, s in fam.entries:
            if mask and s > 0:
                omega = s / mask.bit_count()
                heapq.heappush(heap, (-omega, -s, v, nodes_of(mask), mask))
    total = 0.0
    skipped = []

    def feasible(v, mask):
        members = [v] + list(iter_bits(mask))
        if state.assigned[v] or not state.distinct_components(members):
            return False
        return state.arcs_after_merge(members, mask.bit_count()) <= q

    while heap:
        _, negs, v, _, mask = heapq.heappop(heap)
        if not feasible(v, mask):
            if audit:
                skipped.append((v, mask))
            continue
        state.commit(v, mask)
        total += -negs
    if audit:
        for v, mask in skipped:
            assert not feasible(v, mask), "discarded candidate became feasible again"
    extras = {"ratio_bound": 2 * q, "q": q}
    return _result(instance, state, total, "greedy-density", t0, extras)
