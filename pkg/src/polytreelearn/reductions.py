"""Hardness constructions as executable instance generators.

Each reduction returns the produced score instance together with a
certificate describing node roles and the predicate that ties the optimal
polytree score back to the source combinatorial problem.  The test suites
evaluate those predicates with the exact solvers against the brute-force
combinatorial oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError, RefusalError
from .model import Instance, make_instance
from .scoreio import GraphInput, SetFamilyInput

CONSTRUCTION_GUARD = 10**6


@dataclass(frozen=True)
class ReductionCertificate:
    kind: str
    roles: tuple[str, ...]  # one role per produced node index
    predicate: str  # human-readable statement of the iff-claim
    params: dict

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "roles": list(self.roles),
            "predicate": self.predicate,
            "params": self.params,
        }


def _disjoint_unions(sets: tuple[int, ...], budget: int) -> dict[int, int]:
    """All unions of at most `budget` pairwise-disjoint sets, union -> #elements.

    Includes the empty union.  Enumeration is index-increasing with early
    disjointness pruning; duplicate unions collapse.
    """
    found: dict[int, int] = {0: 0}

    def rec(start: int, union: int, used: int):
        if used == budget:
            return
        for i in range(start, len(sets)):
            s = sets[i]
            if s & union:
                continue
            merged = union | s
            if merged not in found:
                found[merged] = merged.bit_count()
            if len(found) > CONSTRUCTION_GUARD:
                raise RefusalError("reduction construction exceeds the size guard")
            rec(i + 1, merged, used + 1)

    rec(0, 0, 0)
    return found


def reduce_set_partition(
    source: SetFamilyInput, epsilon_inv: int
) -> tuple[Instance, ReductionCertificate]:
    """Set-partitioning lower-bound construction.

    Produces universe nodes, ceil(t/epsilon_inv) choice nodes, and one
    connecting node p.  Each choice node may take {p} plus a union of at
    most epsilon_inv pairwise-disjoint source sets (the last choice node
    uses the remainder budget), scored by the number of universe elements
    in the set.  The optimal polytree score is n' exactly when at most t
    disjoint source sets cover the universe.
    """
    if epsilon_inv < 1:
        raise PreconditionError("epsilon_inv must be >= 1")
    n_prime = source.n
    t = source.t
    if t < 1:
        raise PreconditionError("budget t must be >= 1")
    k_prime = max((s.bit_count() for s in source.sets), default=0)
    if n_prime ** max(k_prime * epsilon_inv, 1) > CONSTRUCTION_GUARD:
        raise RefusalError("reduction construction exceeds the size guard")

    t_prime = math.ceil(t / epsilon_inv)
    p = n_prime + t_prime  # connecting node is last
    p_bit = 1 << p

    families = [[(0, 0.0)] for _ in range(n_prime)]  # universe nodes
    budgets = [epsilon_inv] * (t_prime - 1) + [t - (t_prime - 1) * epsilon_inv]
    for budget in budgets:
        pairs = [(0, 0.0)]
        for union, count in _disjoint_unions(source.sets, budget).items():
            pairs.append((union | p_bit, float(count)))
        families.append(pairs)
    families.append([(0, 0.0)])  # connecting node

    names = (
        [f"u{i}" for i in range(n_prime)]
        + [f"s{j + 1}" for j in range(t_prime)]
        + ["p"]
    )
    instance = make_instance(families, names=names)
    roles = ("universe",) * n_prime + ("choice",) * t_prime + ("connecting",)
    cert = ReductionCertificate(
        kind="set_partition",
        roles=roles,
        predicate="optimal polytree score equals n' iff <= t disjoint sets cover the universe",
        params={"n_prime": n_prime, "t": t, "t_prime": t_prime, "epsilon_inv": epsilon_inv},
    )
    return instance, cert


def reduce_independent_set(graph: GraphInput) -> tuple[Instance, ReductionCertificate]:
    """Independent-set construction: optimum equals the largest independent set.

    Nodes are the graph vertices, one node per edge, and an auxiliary node
    p; the only positive scores are f_v(E_v u {p}) = 1 for graph vertices v,
    where E_v are v's incident edge nodes.
    """
    nv = graph.n
    m = len(graph.edges)
    p = nv + m
    p_bit = 1 << p

    incident = [0] * nv
    for j, (a, b) in enumerate(graph.edges):
        incident[a] |= 1 << (nv + j)
        incident[b] |= 1 << (nv + j)

    families = []
    for v in range(nv):
        families.append([(0, 0.0), (incident[v] | p_bit, 1.0)])
    for _ in range(m + 1):  # edge nodes and p
        families.append([(0, 0.0)])

    names = (
        [f"v{i}" for i in range(nv)] + [f"e{j}" for j in range(m)] + ["p"]
    )
    instance = make_instance(families, names=names)
    roles = ("vertex",) * nv + ("edge",) * m + ("connecting",)
    cert = ReductionCertificate(
        kind="independent_set",
        roles=roles,
        predicate="optimal polytree score equals the maximum independent set size",
        params={"graph_n": nv, "graph_m": m},
    )
    return instance, cert


def reduce_independent_set_comp(
    graph: GraphInput,
) -> tuple[Instance, int, ReductionCertificate]:
    """Component-bounded variant: pad each E_v with dummies to size q = d+1.

    A single choice fills its component with exactly q arcs, while two
    adjacent vertices choosing would share an edge node and pile 2q arcs
    into one component.  Under the per-component arc bound q, the
    component-constrained optimum therefore equals the maximum independent
    set size.  (Padding to size d would leave degree-1 graphs unblocked:
    with q arcs counted per component, 2d exceeds d+1 only for d >= 2.)
    """
    d = graph.max_degree
    if d < 1:
        raise PreconditionError("graph must have maximum degree >= 1")
    pad_to = d + 1
    nv = graph.n
    m = len(graph.edges)

    incident = [0] * nv
    degree = [0] * nv
    for j, (a, b) in enumerate(graph.edges):
        incident[a] |= 1 << (nv + j)
        incident[b] |= 1 << (nv + j)
        degree[a] += 1
        degree[b] += 1

    next_dummy = nv + m
    dummy_count = sum(pad_to - degree[v] for v in range(nv))
    parent_masks = []
    for v in range(nv):
        mask = incident[v]
        for _ in range(pad_to - degree[v]):
            mask |= 1 << next_dummy
            next_dummy += 1
        parent_masks.append(mask)

    families = []
    for v in range(nv):
        families.append([(0, 0.0), (parent_masks[v], 1.0)])
    for _ in range(m + dummy_count):
        families.append([(0, 0.0)])

    names = (
        [f"v{i}" for i in range(nv)]
        + [f"e{j}" for j in range(m)]
        + [f"d{i}" for i in range(dummy_count)]
    )
    instance = make_instance(families, names=names, q=d + 1)
    roles = ("vertex",) * nv + ("edge",) * m + ("dummy",) * dummy_count
    cert = ReductionCertificate(
        kind="independent_set_comp",
        roles=roles,
        predicate=(
            "component-constrained optimal score equals the maximum "
            "independent set size"
        ),
        params={"graph_n": nv, "graph_m": m, "q": d + 1, "dummies": dummy_count},
    )
    return instance, d + 1, cert
