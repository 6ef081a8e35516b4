"""Exact solvers: 3^n dynamic programming over (S, T) subset pairs,
and a state-pruned variant for bounded in-degree.

Q[S, T] is the best score of a connected polytree on node set S in which
only nodes of T may have nonempty parent sets.  The recursion picks a node
v in T and a candidate parent set D_v:

  - if D_v is disjoint from T, the predecessor state is (S \\ D_v, T \\ {v});
  - if D_v meets T in exactly one node u, it is
    (S \\ ((D_v u {v}) \\ {u}), T \\ {v});
  - otherwise the move is infeasible.

The pruned variant refuses to expand states with |S| - |T| beyond
k * (floor(log2 n) + slack), which is sound because some depth-first
ordering of any connected polytree keeps at most O(log n) nodes with
unfinished parent sets open at any time, each holding at most k parents.

States are addressed by a base-3 index (per node: 0 = outside S,
1 = in S but not T, 2 = in T), maintained incrementally along the
recursion.  Up to 3^n ~ 130M states the memo is a flat array of doubles
(nearly every (S, T) pair is reachable on normalized instances, where a
hash map would need gigabytes); beyond that a hash map keyed by the index
takes over.  Choices are not stored: the traceback re-runs the candidate
scan along the optimal path, which costs O(n) state evaluations.
"""

from __future__ import annotations

import time
from array import array
from typing import Optional

from .errors import PreconditionError, RefusalError
from .model import (
    NEG_INF,
    Instance,
    Polytree,
    SolveResult,
    iter_bits,
    make_family,
)

MAX_FULL_DP_NODES = 25
_ARRAY_MEMO_LIMIT = 3**17  # ~1 GB of doubles
_NAN = float("nan")


def connectify(instance: Instance) -> tuple[Instance, int]:
    """Reduce to connected-polytree learning by adding an auxiliary node.

    The auxiliary node can only take the empty parent set; every original
    entry S is doubled into S and S u {aux} with the same score, so any
    disconnected optimum can hook its components onto the auxiliary node
    for free.  An in-degree bound, if present, grows by one.
    """
    n = instance.n
    aux = n
    aux_bit = 1 << aux
    fams = []
    for f in instance.families:
        pairs = []
        for mask, s in f.entries:
            pairs.append((mask, s))
            pairs.append((mask | aux_bit, s))
        fams.append(make_family(f.node, pairs))
    fams.append(make_family(aux, [(0, 0.0)]))
    aux_name = "_connector"
    while aux_name in instance.names:
        aux_name += "_"
    return (
        Instance(
            n + 1,
            tuple(fams),
            instance.names + (aux_name,),
            None if instance.k is None else instance.k + 1,
            instance.q,
            False,
        ),
        aux,
    )


def state_bound(k: int, n: int, slack: int) -> int:
    """Cap on |S| - |T| for the pruned dynamic program: k*(floor(log2 n)+slack)."""
    if k < 1 or n < 1:
        raise ValueError("state_bound requires k >= 1 and n >= 1")
    return k * ((n.bit_length() - 1) + slack)


class DpEngine:
    """Memoized Q[S, T] evaluation over one connectified instance.

    `bound`, when given, activates the |S| - |T| state filter.  Exposed for
    table inspection in tests; the solver entry points below drive it.
    """

    def __init__(self, cinst: Instance, bound: Optional[int] = None):
        self.n = n = cinst.n
        self.bound = bound
        self.pow3 = pow3 = [3**i for i in range(n + 1)]
        self.fam = fam = [
            tuple(
                (mask, s, sum(pow3[u] for u in iter_bits(mask)))
                for mask, s in f.entries
            )
            for f in cinst.families
        ]
        size = pow3[n]
        self.arr: Optional[array] = None
        self.dct: Optional[dict] = None
        if size <= _ARRAY_MEMO_LIMIT:
            self.arr = array("d", [_NAN]) * size
        else:
            self.dct = {}
        self.states_visited = 0
        self.states_pruned = 0

        arr, dct, bnd = self.arr, self.dct, bound
        visited = 0
        pruned = 0
        neg_inf = NEG_INF

        # The hot path below inlines memo hits for child states (an array
        # read plus NaN test) instead of recursing, and lets -inf flow
        # through the max unchecked: s + (-inf) never beats any best.
        def solve(S: int, T: int, idx: int,
                  arr=arr, dct=dct, bnd=bnd, neg_inf=neg_inf,
                  fam=fam, pow3=pow3) -> float:
            nonlocal visited, pruned
            if arr is not None:
                cached = arr[idx]
                if cached == cached:  # NaN marks unvisited
                    return cached
            else:
                cached = dct.get(idx)
                if cached is not None:
                    return cached
            if bnd is not None and S.bit_count() - T.bit_count() > bnd:
                pruned += 1
                return neg_inf
            best = neg_inf
            if T & (T - 1) == 0:
                v = T.bit_length() - 1
                rest = S ^ T
                for mask, s, _ in fam[v]:
                    if mask == rest:
                        best = s
                        break
            elif arr is not None:
                notS = ~S
                Tm = T
                while Tm:
                    lowbit = Tm & -Tm
                    Tm ^= lowbit
                    v = lowbit.bit_length() - 1
                    T2 = T ^ lowbit
                    pv = pow3[v]
                    idx_v = idx - pv
                    for mask, s, sum3 in fam[v]:
                        if mask & notS:
                            continue
                        inter = mask & T
                        if not inter:
                            rm = mask
                            ci = idx_v - sum3
                        elif inter & (inter - 1):
                            continue
                        else:
                            rm = (mask | lowbit) ^ inter
                            ci = idx_v - pv - sum3 + pow3[inter.bit_length() - 1]
                        sub = arr[ci]
                        if sub != sub:
                            sub = solve(S ^ rm, T2, ci)
                        val = s + sub
                        if val > best:
                            best = val
            else:
                notS = ~S
                Tm = T
                while Tm:
                    lowbit = Tm & -Tm
                    Tm ^= lowbit
                    v = lowbit.bit_length() - 1
                    T2 = T ^ lowbit
                    pv = pow3[v]
                    idx_v = idx - pv
                    for mask, s, sum3 in fam[v]:
                        if mask & notS:
                            continue
                        inter = mask & T
                        if not inter:
                            rm = mask
                            ci = idx_v - sum3
                        elif inter & (inter - 1):
                            continue
                        else:
                            rm = (mask | lowbit) ^ inter
                            ci = idx_v - pv - sum3 + pow3[inter.bit_length() - 1]
                        sub = dct.get(ci)
                        if sub is None:
                            sub = solve(S ^ rm, T2, ci)
                        val = s + sub
                        if val > best:
                            best = val
            if arr is not None:
                arr[idx] = best
            else:
                dct[idx] = best
            visited += 1
            return best

        def snapshot() -> tuple[int, int]:
            return visited, pruned

        self._solve = solve
        self._snapshot = snapshot

    def index_of(self, S: int, T: int) -> int:
        idx = 0
        for i in iter_bits(S):
            idx += self.pow3[i]
        for i in iter_bits(T):
            idx += self.pow3[i]
        return idx

    def value(self, S: int, T: int) -> float:
        """Q[S, T]; T must be a nonempty subset of S."""
        if T == 0 or T & ~S:
            raise ValueError("need nonempty T with T subset of S")
        out = self._solve(S, T, self.index_of(S, T))
        self.states_visited, self.states_pruned = self._snapshot()
        return out

    def traceback(self, S: int, T: int) -> list[int]:
        """Parent sets of an optimal connected polytree for state (S, T).

        Re-runs the candidate scan at each state on the path, taking the
        first maximizer (smallest node, then lex smallest parent set),
        which matches the strict-improvement order of the value pass.
        """
        pow3, fam = self.pow3, self.fam
        parent_sets = [0] * self.n
        idx = self.index_of(S, T)
        q = self._solve(S, T, idx)
        if q == NEG_INF:
            raise ValueError("traceback started from an infeasible state")
        while True:
            if T & (T - 1) == 0:
                v = T.bit_length() - 1
                parent_sets[v] = S ^ T
                self.states_visited, self.states_pruned = self._snapshot()
                return parent_sets
            found = False
            for v in iter_bits(T):
                lowbit = 1 << v
                T2 = T ^ lowbit
                idx_v = idx - pow3[v]
                for mask, s, sum3 in fam[v]:
                    if mask & ~S:
                        continue
                    inter = mask & T
                    if not inter:
                        S2, ci = S ^ mask, idx_v - sum3
                    elif inter & (inter - 1):
                        continue
                    else:
                        u = inter.bit_length() - 1
                        rm = (mask | lowbit) ^ inter
                        S2, ci = S ^ rm, idx_v - pow3[v] - sum3 + pow3[u]
                    sub = self._solve(S2, T2, ci)
                    if sub != NEG_INF and s + sub == q:
                        parent_sets[v] = mask
                        S, T, idx, q = S2, T2, ci, sub
                        found = True
                        break
                if found:
                    break
            assert found, "no predecessor reproduces the memoized value"
            self.states_visited, self.states_pruned = self._snapshot()

    def table(self) -> dict[tuple[int, int], float]:
        """All computed finite-or--inf states as {(S, T): value} (test aid)."""
        out = {}
        if self.dct is not None:
            for idx, val in self.dct.items():
                S = T = 0
                rem = idx
                for i in range(self.n):
                    rem, digit = divmod(rem, 3)
                    if digit:
                        S |= 1 << i
                    if digit == 2:
                        T |= 1 << i
                out[(S, T)] = val
            return out
        for S in range(1 << self.n):
            T = S
            while T:
                val = self.arr[self.index_of(S, T)]
                if val == val:
                    out[(S, T)] = val
                T = (T - 1) & S
        return out


def _check_preconditions(instance: Instance, force: bool) -> None:
    if instance.n > MAX_FULL_DP_NODES and not force:
        raise RefusalError(
            f"n={instance.n} exceeds the exact-DP cap of {MAX_FULL_DP_NODES} "
            "(pass force=True / --force to override)"
        )
    for f in instance.families:
        if not f.has_empty():
            raise PreconditionError(
                f"family of node {f.node} has no empty-set entry; "
                "run normalize() first"
            )


def _run(instance: Instance, algorithm: str, slack: Optional[int],
         force: bool, keep_engine: bool) -> SolveResult:
    _check_preconditions(instance, force)
    t0 = time.perf_counter()
    cinst, aux = connectify(instance)
    n = cinst.n
    full = (1 << n) - 1

    bound = None
    if slack is not None:
        bound = state_bound(max(cinst.k_eff, 1), n, slack)
    engine = DpEngine(cinst, bound)
    best = engine.value(full, full)
    # best >= 0 always: every node can hang off the auxiliary node for 0.
    parent_sets = engine.traceback(full, full)
    aux_bit = 1 << aux
    stripped = tuple(m & ~aux_bit for m in parent_sets[:instance.n])
    runtime_ms = (time.perf_counter() - t0) * 1000.0

    extras = {}
    if slack is not None:
        extras["slack"] = slack
        extras["state_bound"] = bound
        extras["states_pruned"] = engine.states_pruned
    if keep_engine:
        extras["engine"] = engine
        extras["aux"] = aux
    return SolveResult(
        score=best,
        polytree=Polytree(stripped),
        algorithm=algorithm,
        n=instance.n,
        names=instance.names,
        states_visited=engine.states_visited,
        runtime_ms=runtime_ms,
        extras=extras,
    )


def solve_full_dp(instance: Instance, force: bool = False,
                  keep_engine: bool = False) -> SolveResult:
    """Optimal polytree by the 3^n dynamic program with traceback."""
    return _run(instance, "dp", None, force, keep_engine)


def solve_pruned_dp(instance: Instance, slack: int = 2, force: bool = False,
                    keep_engine: bool = False) -> SolveResult:
    """The same dynamic program, refusing states with |S| - |T| over the bound.

    With the default slack the result matches solve_full_dp on all
    cross-validation suites; with degenerate slack it may undershoot but
    never exceeds the full DP.
    """
    if slack < 0:
        raise ValueError("slack must be >= 0")
    return _run(instance, "dp-pruned", slack, force, keep_engine)
