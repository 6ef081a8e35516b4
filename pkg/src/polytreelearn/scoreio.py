"""Text formats: score files, graphs, set families, and result records.

The score-file grammar mirrors the per-variable parent-set exchange format
used by exact BN solvers:

    line 1:  variable count n
    per variable:  "name m" followed by m lines "score p parent_1 ... parent_p"

Graphs are "n m" followed by m undirected edges "u v"; set families are
"n m t" followed by m lines "size e_1 ... e_size".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ParseError
from .model import Instance, SolveResult, iter_bits, make_instance


@dataclass(frozen=True)
class GraphInput:
    n: int
    edges: tuple[tuple[int, int], ...]

    def degree(self, v: int) -> int:
        return sum(1 for a, b in self.edges if v in (a, b))

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)


@dataclass(frozen=True)
class SetFamilyInput:
    n: int  # universe size
    sets: tuple[int, ...]  # each a bitmask over [0, n)
    t: int  # budget: number of disjoint sets allowed


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next_tokens(self):
        while self.pos < len(self.lines):
            self.pos += 1
            tokens = self.lines[self.pos - 1].split()
            if tokens:
                return tokens, self.pos
        raise ParseError("unexpected end of input", self.pos)


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


def _float(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected score, got {tok!r}", lineno) from None


def parse_scores(text: str) -> Instance:
    """Parse a score file into an Instance (names in declaration order)."""
    src = _Lines(text)
    tokens, lineno = src.next_tokens()
    if len(tokens) != 1:
        raise ParseError("expected a single variable count on the first line", lineno)
    n = _int(tokens[0], lineno, "variable count")
    if n < 0:
        raise ParseError("variable count must be non-negative", lineno)

    names: list[str] = []
    raw: list[list[tuple[list[str], int]]] = []
    for _ in range(n):
        tokens, lineno = src.next_tokens()
        if len(tokens) != 2:
            raise ParseError("expected 'name m' variable header", lineno)
        name, m_tok = tokens
        if name in names:
            raise ParseError(f"duplicate variable name {name!r}", lineno)
        m = _int(m_tok, lineno, "parent-set count")
        names.append(name)
        records = []
        for _ in range(m):
            tokens, lineno = src.next_tokens()
            records.append((tokens, lineno))
        raw.append(records)

    index = {name: i for i, name in enumerate(names)}
    families_pairs = []
    for records in raw:
        pairs = []
        for tokens, lineno in records:
            score = _float(tokens[0], lineno)
            p = _int(tokens[1], lineno, "parent count")
            parents = tokens[2:]
            if len(parents) != p:
                raise ParseError(
                    f"parent count {p} does not match {len(parents)} names", lineno
                )
            mask = 0
            for pname in parents:
                if pname not in index:
                    raise ParseError(f"unknown parent name {pname!r}", lineno)
                mask |= 1 << index[pname]
            pairs.append((mask, score))
        families_pairs.append(pairs)
    return make_instance(families_pairs, names=names)


def _fmt(x: float) -> str:
    if x == -math.inf:
        return "-inf"
    if x == int(x) and abs(x) < 2**53:
        return str(int(x)) + ".0"
    return repr(x)


def write_scores(instance: Instance) -> str:
    """Serialize an Instance; parse_scores(write_scores(I)) == canonical I."""
    out = [str(instance.n)]
    for v, fam in enumerate(instance.families):
        out.append(f"{instance.names[v]} {len(fam.entries)}")
        for mask, s in fam.entries:
            parents = [instance.names[u] for u in iter_bits(mask)]
            out.append(" ".join([_fmt(s), str(len(parents))] + parents))
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> GraphInput:
    src = _Lines(text)
    tokens, lineno = src.next_tokens()
    if len(tokens) != 2:
        raise ParseError("expected 'n m' graph header", lineno)
    n = _int(tokens[0], lineno, "node count")
    m = _int(tokens[1], lineno, "edge count")
    edges = []
    seen = set()
    for _ in range(m):
        tokens, lineno = src.next_tokens()
        if len(tokens) != 2:
            raise ParseError("expected edge 'u v'", lineno)
        u = _int(tokens[0], lineno, "endpoint")
        v = _int(tokens[1], lineno, "endpoint")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in edge {u} {v}", lineno)
        if u == v:
            raise ParseError(f"self-loop at node {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append(key)
    return GraphInput(n, tuple(edges))


def parse_set_family(text: str) -> SetFamilyInput:
    src = _Lines(text)
    tokens, lineno = src.next_tokens()
    if len(tokens) != 3:
        raise ParseError("expected 'n m t' family header", lineno)
    n = _int(tokens[0], lineno, "universe size")
    m = _int(tokens[1], lineno, "set count")
    t = _int(tokens[2], lineno, "budget")
    if t > n:
        raise ParseError(f"budget t={t} exceeds universe size {n}", lineno)
    sets = []
    for _ in range(m):
        tokens, lineno = src.next_tokens()
        size = _int(tokens[0], lineno, "set size")
        elems = tokens[1:]
        if len(elems) != size:
            raise ParseError(
                f"set size {size} does not match {len(elems)} elements", lineno
            )
        if size == 0:
            raise ParseError("sets must be nonempty", lineno)
        mask = 0
        for tok in elems:
            e = _int(tok, lineno, "element")
            if not 0 <= e < n:
                raise ParseError(f"element {e} out of universe [0, {n})", lineno)
            mask |= 1 << e
        sets.append(mask)
    return SetFamilyInput(n, tuple(sets), t)


def result_record(result: SolveResult) -> dict:
    arcs = [
        [result.names[p], result.names[c]]
        for p, c in sorted(result.polytree.arcs, key=lambda a: (a[1], a[0]))
    ]
    record = {
        "score": result.score if result.score != -math.inf else "-inf",
        "arcs": arcs,
        "algorithm": result.algorithm,
        "n": result.n,
        "states_visited": result.states_visited,
        "runtime_ms": result.runtime_ms,
    }
    for key in sorted(result.extras):
        record[key] = result.extras[key]
    return record


def write_result(result: SolveResult) -> str:
    """Deterministic UTF-8 JSON record for a SolveResult."""
    return json.dumps(result_record(result)) + "\n"
