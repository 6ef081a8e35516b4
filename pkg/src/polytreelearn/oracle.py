"""Independent brute-force ground truth for every problem variant.

brute_force enumerates one family entry per node (odometer over family
indices, realized as a depth-first search with cycle and score-bound
pruning that never prunes ties), so it is the single source of truth the
solvers and approximations are tested against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import PreconditionError, RefusalError
from .model import (
    NEG_INF,
    Instance,
    Polytree,
    SolveResult,
    UnionFind,
    is_additive_consistent,
    iter_bits,
    nodes_of,
)
from .scoreio import GraphInput, SetFamilyInput

ENUMERATION_GUARD = 10**7


@dataclass(frozen=True)
class ConstraintSet:
    k: Optional[int] = None
    q: Optional[int] = None
    require_connected: bool = False


def _effective_families(instance: Instance, constraints: ConstraintSet):
    """Explicit entries, plus additively derived sets for additive instances.

    For additive instances the candidate parents are the nodes with a finite
    singleton score; non-positive singletons are dropped unless connectivity
    is required (removing a non-positive arc never hurts the optimum and
    cannot violate k or q, but it can disconnect the skeleton).
    """
    caps = [c for c in (constraints.k, instance.k) if c is not None]
    size_cap = min(caps) if caps else None
    out = []
    for v, fam in enumerate(instance.families):
        entries = {}
        for mask, s in fam.entries:
            if size_cap is not None and mask.bit_count() > size_cap:
                continue
            entries[mask] = s
        if instance.additive:
            singles = []
            for u in range(instance.n):
                if u == v:
                    continue
                s = fam.score_of(1 << u)
                if s == NEG_INF:
                    continue
                if s > 0 or constraints.require_connected:
                    singles.append((u, s))
            cap = size_cap if size_cap is not None else len(singles)
            for size in range(1, cap + 1):
                for combo in combinations(singles, size):
                    mask = 0
                    total = 0.0
                    for u, s in combo:
                        mask |= 1 << u
                        total += s
                    if mask not in entries or total > entries[mask]:
                        entries[mask] = total
        out.append(sorted(entries.items(), key=lambda e: nodes_of(e[0])))
    return out


def brute_force(instance: Instance, constraints: ConstraintSet = ConstraintSet()) -> SolveResult:
    """Exhaustive optimum over all parent-set assignments.

    Ties are broken toward the lexicographically smallest arc list (arcs
    sorted by (child, parent)).
    """
    t0 = time.perf_counter()
    n = instance.n
    fams = _effective_families(instance, constraints)
    size = 1
    for entries in fams:
        size *= max(len(entries), 1)
        if size > ENUMERATION_GUARD:
            raise RefusalError(
                f"assignment space exceeds the enumeration guard {ENUMERATION_GUARD}"
            )

    # suffix bound for pruning; safe because ties use strict comparison
    sufmax = [0.0] * (n + 1)
    for v in range(n - 1, -1, -1):
        best = max((s for _, s in fams[v]), default=0.0)
        sufmax[v] = sufmax[v + 1] + best

    best_score = NEG_INF
    best_arcs: Optional[tuple] = None
    best_masks: Optional[tuple] = None
    chosen = [0] * n
    q = constraints.q
    visited = 0

    def arcs_of(masks):
        out = []
        for child, mask in enumerate(masks):
            for parent in iter_bits(mask):
                out.append((parent, child))
        out.sort(key=lambda a: (a[1], a[0]))
        return tuple(out)

    def dfs(v, par, comp_arcs, cur):
        nonlocal best_score, best_arcs, best_masks, visited
        visited += 1
        if cur + sufmax[v] < best_score:
            return
        if v == n:
            if constraints.require_connected:
                roots = {_find(par, x) for x in range(n)}
                if len(roots) != 1:
                    return
            masks = tuple(chosen)
            if cur > best_score:
                best_score, best_arcs, best_masks = cur, arcs_of(masks), masks
            elif cur == best_score:
                arcs = arcs_of(masks)
                if best_arcs is None or arcs < best_arcs:
                    best_arcs, best_masks = arcs, masks
            return
        for mask, s in fams[v]:
            if mask == 0:
                chosen[v] = 0
                dfs(v + 1, par, comp_arcs, cur + s)
                continue
            npar = list(par)
            ncomp = dict(comp_arcs) if q is not None else comp_arcs
            ok = True
            for u in iter_bits(mask):
                ru, rv = _find(npar, u), _find(npar, v)
                if ru == rv:
                    ok = False
                    break
                npar[ru] = rv
                if q is not None:
                    total = ncomp.pop(ru, 0) + ncomp.pop(rv, 0) + 1
                    if total > q:
                        ok = False
                        break
                    ncomp[rv] = total
            if not ok:
                continue
            chosen[v] = mask
            dfs(v + 1, npar, ncomp, cur + s)
        chosen[v] = 0

    dfs(0, list(range(n)), {} if q is not None else None, 0.0)
    if best_masks is None:
        best_masks = (0,) * n
    return SolveResult(
        score=best_score,
        polytree=Polytree(best_masks),
        algorithm="brute",
        n=n,
        names=instance.names,
        states_visited=visited,
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
        extras={
            key: value
            for key, value in (
                ("k", constraints.k),
                ("q", constraints.q),
                ("connected", constraints.require_connected or None),
            )
            if value is not None
        },
    )


def _find(par, x):
    while par[x] != x:
        par[x] = par[par[x]]
        x = par[x]
    return x


def max_weight_forest_additive(instance: Instance) -> SolveResult:
    """Kruskal-style oracle for additive scores without an in-degree bound.

    Undirected weight of {u, v} is max(f_v({u}), f_u({v})); positive edges
    are added greedily under union-find and each chosen edge is oriented
    toward its better direction.  With unbounded in-degrees any orientation
    of any forest is feasible, so this equals the true optimum; that
    equality is itself verified against brute_force in the test suite.
    """
    if instance.k is not None:
        raise RefusalError("in-degree bound set; use brute_force instead")
    if not is_additive_consistent(instance):
        raise PreconditionError("instance is not additive")
    t0 = time.perf_counter()
    n = instance.n
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            fwd = instance.families[v].score_of(1 << u)  # u -> v
            rev = instance.families[u].score_of(1 << v)  # v -> u
            w = max(fwd, rev)
            if w > 0:
                edges.append((w, u, v, fwd >= rev))
    edges.sort(key=lambda e: (-e[0], e[1], e[2]))
    uf = UnionFind(n)
    parent_sets = [0] * n
    total = 0.0
    for w, u, v, forward in edges:
        if uf.union(u, v):
            if forward:
                parent_sets[v] |= 1 << u
            else:
                parent_sets[u] |= 1 << v
            total += w
    return SolveResult(
        score=total,
        polytree=Polytree(tuple(parent_sets)),
        algorithm="max-weight-forest",
        n=n,
        names=instance.names,
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


def brute_mis(graph: GraphInput) -> int:
    """Exact maximum independent set size by branching on the lowest node."""
    if graph.n > 20:
        raise RefusalError("brute_mis is capped at 20 nodes")
    adj = [0] * graph.n
    for u, v in graph.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    def rec(cand: int) -> int:
        if cand == 0:
            return 0
        low = cand & -cand
        v = low.bit_length() - 1
        without = rec(cand ^ low)
        with_v = 1 + rec(cand & ~(adj[v] | low))
        return max(without, with_v)

    return rec((1 << graph.n) - 1)


def brute_set_partition(family: SetFamilyInput) -> bool:
    """True iff at most t pairwise-disjoint sets cover the universe."""
    if len(family.sets) > 20:
        raise RefusalError("brute_set_partition is capped at 20 sets")
    full = (1 << family.n) - 1
    containing = [[] for _ in range(family.n)]
    for s in family.sets:
        for e in iter_bits(s):
            containing[e].append(s)

    def rec(covered: int, used: int) -> bool:
        if covered == full:
            return True
        if used >= family.t:
            return False
        remaining = (~covered) & full
        e = (remaining & -remaining).bit_length() - 1
        for s in containing[e]:
            if s & covered:
                continue
            if rec(covered | s, used + 1):
                return True
        return False

    return rec(0, 0)
