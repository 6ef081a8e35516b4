"""Core domain types for score-based polytree learning.

Nodes are dense integer indices in [0, n).  Node sets are plain Python
integers used as bitmasks, which natively handle any n.  Scores are 64-bit
floats with float('-inf') as the absorbing "not a potential parent set"
sentinel (the non-zero encoding: unspecified sets score -inf, not 0).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterator, Optional

NEG_INF = float("-inf")


class NormalizationWarning(UserWarning):
    """Raised when normalization has to invent or shift family entries."""


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(nodes) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def nodes_of(mask: int) -> tuple[int, ...]:
    """Ascending tuple of node indices in the mask (also the lex sort key)."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class UnionFind:
    """Disjoint-set forest with union by size and path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class ParentSetFamily:
    """Candidate parent sets for one node with their local scores.

    Entries are canonically sorted by the ascending-index tuple of the
    parent set, so the empty set (if present) comes first.
    """

    node: int
    entries: tuple[tuple[int, float], ...]

    def score_of(self, mask: int) -> float:
        for m, s in self.entries:
            if m == mask:
                return s
        return NEG_INF

    def masks(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.entries)

    def has_empty(self) -> bool:
        return bool(self.entries) and self.entries[0][0] == 0


def make_family(node: int, pairs) -> ParentSetFamily:
    """Build a canonical family: duplicates collapse to the max score."""
    best: dict[int, float] = {}
    for mask, score in pairs:
        if mask & (1 << node):
            raise ValueError(f"node {node} contained in its own parent set")
        cur = best.get(mask)
        if cur is None or score > cur:
            best[mask] = float(score)
    entries = tuple(sorted(best.items(), key=lambda e: nodes_of(e[0])))
    return ParentSetFamily(node, entries)


@dataclass(frozen=True)
class Instance:
    """A polytree-learning instance in the non-zero encoding.

    k bounds the in-degree, q bounds the number of arcs per skeleton
    component; both are optional.  If `additive` is set, scores of parent
    sets not listed explicitly derive from the singleton entries.
    """

    n: int
    families: tuple[ParentSetFamily, ...]
    names: tuple[str, ...]
    k: Optional[int] = None
    q: Optional[int] = None
    additive: bool = False

    @property
    def k_eff(self) -> int:
        return max(
            (len(nodes_of(m)) for f in self.families for m, _ in f.entries),
            default=0,
        )

    def entry_score(self, v: int, mask: int) -> float:
        s = self.families[v].score_of(mask)
        if s == NEG_INF and mask and self.additive:
            s = 0.0
            for u in iter_bits(mask):
                su = self.families[v].score_of(1 << u)
                if su == NEG_INF:
                    return NEG_INF
                s += su
        return s

    def name_of(self, v: int) -> str:
        return self.names[v]


def make_instance(families_pairs, names=None, k=None, q=None, additive=False) -> Instance:
    """Build an Instance from per-node iterables of (parents, score) pairs.

    Parents may be given as bitmasks or iterables of node indices.
    """
    n = len(families_pairs)
    fams = []
    for v, pairs in enumerate(families_pairs):
        norm_pairs = []
        for parents, score in pairs:
            mask = parents if isinstance(parents, int) else mask_of(parents)
            if mask >> n:
                raise ValueError(f"parent index out of range for node {v}")
            norm_pairs.append((mask, score))
        fams.append(make_family(v, norm_pairs))
    if names is None:
        names = tuple(f"v{i}" for i in range(n))
    else:
        names = tuple(names)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("names must be unique, one per node")
    if k is not None:
        if k < 1:
            raise ValueError("k must be >= 1")
        for f in fams:
            for m, _ in f.entries:
                if len(nodes_of(m)) > k:
                    raise ValueError(
                        f"family of node {f.node} has an entry larger than k={k}"
                    )
    if q is not None and q < 1:
        raise ValueError("q must be >= 1")
    return Instance(n, tuple(fams), names, k, q, additive)


@dataclass(frozen=True)
class Polytree:
    """One (possibly empty) parent set per node, as bitmasks."""

    parent_sets: tuple[int, ...]

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """(parent, child) pairs sorted by (child, parent)."""
        out = []
        for child, mask in enumerate(self.parent_sets):
            for parent in iter_bits(mask):
                out.append((parent, child))
        out.sort(key=lambda a: (a[1], a[0]))
        return tuple(out)

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self.parent_sets)


def empty_polytree(n: int) -> Polytree:
    return Polytree((0,) * n)


@dataclass
class SolveResult:
    """Outcome of a solver or approximation run."""

    score: float
    polytree: Polytree
    algorithm: str
    n: int
    names: tuple[str, ...]
    states_visited: int = 0
    runtime_ms: float = 0.0
    extras: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# operations

def normalize(instance: Instance) -> Instance:
    """Shift every family so that the empty parent set scores exactly 0.

    A family without an explicit empty-set entry gets one with score 0 and a
    NormalizationWarning is emitted.  All other entries are preserved.
    """
    fams = []
    for f in instance.families:
        if f.has_empty():
            shift = f.entries[0][1]
            if shift == 0.0:
                fams.append(f)
            else:
                fams.append(make_family(f.node, [(m, s - shift) for m, s in f.entries]))
        else:
            warnings.warn(
                f"family of node {f.node} ({instance.names[f.node]}) lacks an "
                "empty-set entry; inserting one with score 0",
                NormalizationWarning,
                stacklevel=2,
            )
            fams.append(make_family(f.node, ((0, 0.0),) + f.entries))
    return Instance(
        instance.n, tuple(fams), instance.names, instance.k, instance.q, instance.additive
    )


def score(instance: Instance, polytree: Polytree) -> float:
    """Sum of the chosen local scores; -inf if any choice is not available."""
    total = 0.0
    for v, mask in enumerate(polytree.parent_sets):
        if mask >> instance.n:
            raise ValueError(f"parent index out of range for node {v}")
        s = instance.entry_score(v, mask)
        if s == NEG_INF:
            return NEG_INF
        total += s
    return total


def validate_polytree(n: int, parent_sets) -> tuple[bool, Optional[str]]:
    """Check that the skeleton is a forest, via union-find on undirected edges."""
    uf = UnionFind(n)
    for child, mask in enumerate(parent_sets):
        if mask >> n or mask < 0:
            raise ValueError(f"parent index out of range for node {child}")
        for parent in iter_bits(mask):
            if not uf.union(parent, child):
                return False, f"edge {parent}-{child} closes a skeleton cycle"
    return True, None


def skeleton_components(n: int, parent_sets) -> int:
    uf = UnionFind(n)
    comps = n
    for child, mask in enumerate(parent_sets):
        for parent in iter_bits(mask):
            if uf.union(parent, child):
                comps -= 1
    return comps


def check_constraints(instance: Instance, polytree: Polytree) -> tuple[bool, Optional[str]]:
    """Check the in-degree bound k and the per-component arc bound q."""
    if instance.k is not None:
        for v, mask in enumerate(polytree.parent_sets):
            if mask.bit_count() > instance.k:
                return False, (
                    f"node {v} has in-degree {mask.bit_count()} > k={instance.k}"
                )
    if instance.q is not None:
        uf = UnionFind(instance.n)
        for child, mask in enumerate(polytree.parent_sets):
            for parent in iter_bits(mask):
                uf.union(parent, child)
        arcs_per_comp: dict[int, int] = {}
        for child, mask in enumerate(polytree.parent_sets):
            root = uf.find(child)
            arcs_per_comp[root] = arcs_per_comp.get(root, 0) + mask.bit_count()
        for root, cnt in arcs_per_comp.items():
            if cnt > instance.q:
                return False, (
                    f"component of node {root} has {cnt} arcs > q={instance.q}"
                )
    return True, None


def is_additive_consistent(instance: Instance, tol: float = 1e-9) -> bool:
    """True iff every multi-parent entry equals the sum of its singletons."""
    for f in instance.families:
        for mask, s in f.entries:
            if mask.bit_count() < 2:
                continue
            total = 0.0
            for u in iter_bits(mask):
                su = f.score_of(1 << u)
                if su == NEG_INF:
                    return False
                total += su
            if abs(total - s) > tol:
                return False
    return True
