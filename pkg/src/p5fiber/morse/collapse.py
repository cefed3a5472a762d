"""Collapse certificates for finite simplicial complexes, and an independent replay checker."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..homology import simplicial_chain_complex


@dataclass
class Certificate:
    steps: list  # [(free face, coface)] as sorted tuples
    vertex: tuple
    seed: int
    attempt: int

    status = "certified"

    def to_dict(self):
        return {
            "status": self.status,
            "seed": self.seed,
            "attempt": self.attempt,
            "final_vertex": list(self.vertex),
            "steps": [[list(a), list(b)] for a, b in self.steps],
        }


@dataclass
class Inconclusive:
    betti_gf2: list
    betti_q: list
    remaining: int
    attempts: int
    notes: list = field(default_factory=list)

    status = "inconclusive"

    def to_dict(self):
        return {
            "status": self.status,
            "betti_gf2": self.betti_gf2,
            "betti_q": self.betti_q,
            "remaining_simplices": self.remaining,
            "attempts": self.attempts,
        }


def closure(simplices):
    out = set()
    for s in simplices:
        s = tuple(sorted(s))
        n = len(s)
        for m in range(1, 1 << n):
            out.add(tuple(s[k] for k in range(n) if m >> k & 1))
    return out


def _facets_of(s):
    return [s[:k] + s[k + 1:] for k in range(len(s))] if len(s) > 1 else []


def collapse_once(K, rng):
    """Greedy collapse of the closed complex K (set of sorted tuples).

    Lowest-dimensional free faces first, ties broken by ``rng``. Returns the
    step list and what is left.
    """
    K = set(K)
    cof = {s: set() for s in K}
    for t in K:
        for s in _facets_of(t):
            cof[s].add(t)
    free = {s for s in K if len(cof[s]) == 1}
    steps = []
    while free:
        low = min(len(s) for s in free)
        ties = sorted(s for s in free if len(s) == low)
        s = ties[rng.randrange(len(ties))]
        (t,) = cof[s]
        steps.append((s, t))
        for x in (t, s):
            K.discard(x)
            free.discard(x)
            del cof[x]
            for r in _facets_of(x):
                if r in cof:
                    cof[r].discard(x)
                    if len(cof[r]) == 1:
                        free.add(r)
                    else:
                        free.discard(r)
    return steps, K


def betti_numbers(simplices):
    cc = simplicial_chain_complex(closure(simplices), signed=True)
    if not cc.counts:
        return [], []
    return cc.betti("GF2"), cc.betti("Q")


def certify_contractible(simplices, seed=0, restarts=64):
    """Collapse to a single vertex with seeded restarts; Inconclusive if every attempt sticks."""
    K = closure(simplices)
    best = None
    if K:
        for attempt in range(restarts):
            rng = random.Random(seed * 1000003 + attempt)
            steps, rest = collapse_once(K, rng)
            if len(rest) == 1:
                (v,) = rest
                return Certificate(steps, v, seed, attempt)
            if best is None or len(rest) < best:
                best = len(rest)
    gf2, q = betti_numbers(K)
    return Inconclusive(gf2, q, best or 0, restarts if K else 0)


def replay(simplices, steps):
    """Independent check that ``steps`` collapses the complex generated by ``simplices`` to a point.

    Every step must remove a face together with its only proper coface in the
    current complex. Returns True or raises ValueError naming the bad step.
    """
    current = set()
    for s in simplices:
        s = sorted(set(s))
        for m in range(1, 1 << len(s)):
            current.add(frozenset(s[k] for k in range(len(s)) if m >> k & 1))
    for n, (a, b) in enumerate(steps):
        a, b = frozenset(a), frozenset(b)
        if a not in current or b not in current:
            raise ValueError(f"step {n}: simplex already removed")
        if not (a < b and len(b) == len(a) + 1):
            raise ValueError(f"step {n}: not a codimension-1 pair")
        above = [c for c in current if a < c]
        if above != [b]:
            raise ValueError(f"step {n}: face is not free ({len(above)} cofaces)")
        current.discard(a)
        current.discard(b)
    if len(current) != 1 or len(next(iter(current))) != 1:
        raise ValueError(f"{len(current)} simplices remain, not a single vertex")
    return True
