"""Seeded random and adversarial instance generators.

All generators emit integer-valued scores and normalized families (the
empty set always scores 0) so oracle-equivalence tests can compare exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from .model import Instance, make_instance, mask_of


@dataclass(frozen=True)
class GenConfig:
    n: int
    max_parent_size: int = 2
    sets_per_node: int = 2
    score_low: int = -5
    score_high: int = 10
    seed: int = 0
    additive: bool = False

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError("need n >= 2")
        if not 1 <= self.max_parent_size < self.n:
            raise ValueError("need 1 <= max_parent_size < n")
        if self.score_low > self.score_high:
            raise ValueError("need score_low <= score_high")
        if self.sets_per_node < 1:
            raise ValueError("need sets_per_node >= 1")
        max_size = 1 if self.additive else self.max_parent_size
        available = sum(comb(self.n - 1, s) for s in range(1, max_size + 1))
        if self.sets_per_node > available:
            raise ValueError(
                f"cannot draw {self.sets_per_node} distinct parent sets "
                f"from {available} available"
            )


def random_instance(cfg: GenConfig) -> Instance:
    """Seed-deterministic instance: each node gets the empty set (score 0)
    plus sets_per_node distinct random parent sets with integer scores."""
    cfg.validate()
    rng = random.Random(cfg.seed)
    families = []
    for v in range(cfg.n):
        others = [u for u in range(cfg.n) if u != v]
        pairs = [(0, 0.0)]
        seen = {0}
        while len(pairs) < cfg.sets_per_node + 1:
            if cfg.additive:
                size = 1
            else:
                size = rng.randint(1, cfg.max_parent_size)
            mask = mask_of(rng.sample(others, size))
            if mask in seen:
                continue
            seen.add(mask)
            pairs.append((mask, float(rng.randint(cfg.score_low, cfg.score_high))))
        families.append(pairs)
    return make_instance(families, additive=cfg.additive)


def adversarial_hub(k: int, hub_score: float, ring_score: float) -> Instance:
    """Worst-case family for the parent-set greedy.

    Node 0 (the hub) may take all of a_1..a_k at once for hub_score; each
    a_i may take a_{i+1} for ring_score.  The greedy grabs the hub set and
    blocks every ring arc, while the chain of k-1 ring arcs is optimal
    whenever (k-1)*ring_score > hub_score.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if not hub_score > ring_score > 0:
        raise ValueError("need hub_score > ring_score > 0")
    families = [[(0, 0.0), (mask_of(range(1, k + 1)), float(hub_score))]]
    for i in range(1, k):
        families.append([(0, 0.0), (1 << (i + 1), float(ring_score))])
    families.append([(0, 0.0)])  # a_k
    names = ["c"] + [f"a{i}" for i in range(1, k + 1)]
    return make_instance(families, names=names)
