"""Co-orientation states, partition moves, square goodness and the partition survey.

A co-orientation state is a 16-bit int: bit F set means facet F of the copy
is co-oriented outward, i.e. the circle map increases along the dual edge
leaving the copy through F. Crossing a facet of color i flips every facet
whose color lies in the block of i.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import polytope as P
from .coloring import Coloring
from .complexes import is_affine
from .homology import gf2_rank

OUT, IN = "out", "in"


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Blocks of colors 1..c, each sorted, ordered by their smallest element."""

    blocks: tuple
    c: int

    def __post_init__(self):
        flat = sorted(x for b in self.blocks for x in b)
        if flat != list(range(1, self.c + 1)):
            raise PartitionError(f"blocks {self.blocks} do not partition 1..{self.c}")
        if any(not b for b in self.blocks):
            raise PartitionError("empty block")

    @classmethod
    def make(cls, blocks, c=None):
        blocks = [tuple(sorted(b)) for b in blocks if b]
        c = c or max(max(b) for b in blocks)
        return cls(tuple(sorted(blocks)), c)

    @classmethod
    def parse(cls, text, c=None):
        """``'1,5|2,6|3,7|4,8'``; colors missing from the string become singletons when c is given."""
        try:
            blocks = [[int(x) for x in part.split(",") if x.strip()] for part in text.split("|")]
        except ValueError:
            raise PartitionError(f"bad partition string {text!r}") from None
        seen = [x for b in blocks for x in b]
        if len(seen) != len(set(seen)):
            raise PartitionError(f"color repeated in {text!r}")
        if c is not None:
            blocks += [[x] for x in range(1, c + 1) if x not in seen]
        return cls.make(blocks, c)

    @classmethod
    def from_rgs(cls, rgs):
        blocks = {}
        for color, b in enumerate(rgs, 1):
            blocks.setdefault(b, []).append(color)
        return cls.make(blocks.values(), len(rgs))

    @classmethod
    def singletons(cls, c):
        return cls.make([[i] for i in range(1, c + 1)], c)

    @classmethod
    def modular(cls, c, m):
        """i ~ j iff i = j mod m."""
        return cls.make([[i for i in range(1, c + 1) if i % m == r] for r in range(m)], c)

    def block_of(self, color):
        for b in self.blocks:
            if color in b:
                return b
        raise PartitionError(f"color {color} not in partition")

    def same_block(self, i, j):
        return j in self.block_of(i)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def restricted_growth_strings(n):
    """All set partitions of n elements as restricted growth strings, lexicographically."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(k, m):
        if k == n:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[k] = v
            yield from rec(k + 1, max(m, v))

    a[0] = 0
    yield from rec(1, 0)


def all_partitions(c):
    return [Partition.from_rgs(r) for r in restricted_growth_strings(c)]


def bell_triangle(n):
    """Bell number B(n) from the Bell triangle (independent of the enumerator)."""
    row = [1]
    for _ in range(n):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[0]


def partition_flip_masks(col, partition):
    """For each color (index color-1): facets whose color is in its block."""
    masks = []
    for color in range(1, col.palette_size + 1):
        block = set(partition.block_of(color))
        masks.append(sum(1 << f for f in range(P.NFACETS) if col[f] in block))
    return tuple(masks)


@dataclass(frozen=True)
class CoorientationSystem:
    coloring: Coloring
    partition: Partition
    base_state: int
    flip_masks: tuple = None
    _table: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.flip_masks is None:
            object.__setattr__(self, "flip_masks", partition_flip_masks(self.coloring, self.partition))
        if len(self.flip_masks) != self.coloring.palette_size:
            raise ValueError("one flip mask per color required")
        if not 0 <= self.base_state < 1 << P.NFACETS:
            raise ValueError("base state must be a 16-bit mask")

    def with_base(self, base_state):
        return CoorientationSystem(self.coloring, self.partition, base_state, self.flip_masks)

    def with_flip_masks(self, masks):
        return CoorientationSystem(self.coloring, self.partition, self.base_state, tuple(masks))

    def flip_of(self, facet):
        """Facets flipped when crossing ``facet``."""
        return self.flip_masks[self.coloring[facet] - 1]

    def state_at(self, label):
        s = self._table.get(label)
        if s is None:
            s = self.base_state
            k = 0
            x = label
            while x:
                if x & 1:
                    s ^= self.flip_masks[k]
                x >>= 1
                k += 1
            self._table[label] = s
        return s

    def outward(self, label, facet):
        return bool(self.state_at(label) >> facet & 1)

    def direction(self, label, facet):
        """+1 if the map increases along the edge leaving ``label`` through ``facet``."""
        return 1 if self.outward(label, facet) else -1

    def states_dict(self, label):
        s = self.state_at(label)
        return {P.facet_label(f): OUT if s >> f & 1 else IN for f in range(P.NFACETS)}


def state_at(sys, label):
    return sys.state_at(label)


def state_along_path(sys, path):
    """State reached from the base by crossing the facets in ``path`` one at a time."""
    s = sys.base_state
    for f in path:
        s ^= sys.flip_of(f)
    return s


def edge_orientation(sys, label, facet):
    """``(source, target)`` copy labels of the edge dual to ``facet`` at ``label``.

    Raises if the two sides disagree (the crossing must flip the facet itself).
    """
    other = label ^ sys.coloring.bit(facet)
    here = sys.outward(label, facet)
    there = sys.outward(other, facet)
    if here == there:
        raise ValueError(f"edge ({label}, {P.facet_label(facet)}) is not well oriented")
    return (label, other) if here else (other, label)


def edge_well_defined(sys, label, facet):
    other = label ^ sys.coloring.bit(facet)
    return sys.outward(label, facet) != sys.outward(other, facet)


def classify_square(sys, label, F, G):
    """'good' iff opposite edges of the square on facets F, G are parallel."""
    parallel_f = not sys.flip_of(G) >> F & 1
    parallel_g = not sys.flip_of(F) >> G & 1
    return "good" if parallel_f and parallel_g else "bad"


def square_oracle(sys, label, F, G):
    """Brute force: orient the four boundary edges, lift around the square, test an affine fit.

    Returns ``(good, wrap)``; ``wrap`` is the winding of the boundary loop.
    """
    col = sys.coloring
    i, j = col.bit(F), col.bit(G)
    corners = {(0, 0): label, (1, 0): label ^ i, (0, 1): label ^ j, (1, 1): label ^ i ^ j}

    def inc(a, b, facet):
        src, _ = edge_orientation(sys, corners[a], facet)
        return 1 if src == corners[a] else -1

    v00 = 0
    v10 = v00 + inc((0, 0), (1, 0), F)
    v11 = v10 + inc((1, 0), (1, 1), G)
    v01 = v00 + inc((0, 0), (0, 1), G)
    wrap = v01 + inc((0, 1), (1, 1), F) - v11
    if wrap:
        return False, wrap
    return is_affine(((0, 0), (1, 0), (0, 1), (1, 1)), (v00, v10, v01, v11)), 0


def bad_facet_pairs(sys):
    out = []
    for i, j in P.adjacency_graph()[1]:
        if classify_square(sys, 0, i, j) == "bad":
            out.append((i, j))
    return out


def flip_span_basis(masks):
    """Reduced GF(2) basis of the span of the flip masks, keyed by pivot (lowest) bit."""
    basis = {}
    for m in masks:
        while m:
            low = (m & -m).bit_length() - 1
            if low in basis:
                m ^= basis[low]
            else:
                for k in list(basis):
                    if basis[k] >> low & 1:
                        basis[k] ^= m
                basis[low] = m
                break
    return basis


def canonical_base(sys, base_state):
    """Representative of ``base_state`` modulo the span of the flip masks (pivot bits cleared)."""
    basis = flip_span_basis(sys.flip_masks)
    for low in sorted(basis):
        if base_state >> low & 1:
            base_state ^= basis[low]
    return base_state


def base_state_representatives(masks, strategy="auto", samples=4096, seed=0, c=None):
    """Base states modulo the flip-mask span: exhaustive, or a seeded random sample.

    Returns ``(array of states, strategy actually used, quotient size)``.
    """
    basis = flip_span_basis(masks)
    free = [k for k in range(P.NFACETS) if k not in basis]
    quotient = 1 << len(free)
    if strategy == "auto":
        strategy = "exhaustive" if (c is not None and c <= 8) or quotient <= samples else "sample"
    if strategy == "exhaustive":
        idx = np.arange(quotient, dtype=np.int64)
    elif strategy == "sample":
        rng = np.random.default_rng(seed)
        idx = np.unique(rng.integers(0, quotient, size=min(samples, quotient), dtype=np.int64))
    else:
        raise ValueError(f"unknown base-state strategy {strategy!r}")
    states = np.zeros_like(idx)
    for pos, k in enumerate(free):
        states |= ((idx >> pos) & 1) << k
    return states, strategy, quotient


def nonzero_cusp_directions(col, partition):
    """For each ideal vertex, the star pairs whose colors share a block.

    The restriction to any cusp over p has a nonzero degree along the
    direction of a pair (F0, F1) iff their colors share a block and the base
    state co-orients F0 and F1 differently; other directions always have
    degree 0. (Valid when the map extends over every square.)
    """
    out = []
    for p in P.ideal_vertices():
        out.append([(a, b) for a, b in P.star_pairs(p) if partition.same_block(col[a], col[b])])
    return out


def family_check_cliques(col, bad_pairs):
    """Every clique holding a bad pair holds exactly one, and each bad pair lies in a 5-clique."""
    bad = {tuple(sorted(p)) for p in bad_pairs}
    if not bad:
        return True
    in_five = set()
    for clique in P.all_cliques():
        pairs = [(a, b) for k, a in enumerate(clique) for b in clique[k + 1:] if (a, b) in bad]
        if len(pairs) > 1:
            return False
        if len(clique) == 5:
            in_five.update(pairs)
    return in_five == bad


def evaluate_partition(col, partition, strategy="auto", samples=4096, seed=0):
    """One survey row: bad squares, family check and the cusp condition over base states."""
    sys = CoorientationSystem(col, partition, 0)
    bad = bad_facet_pairs(sys)
    n_bad_squares = len(bad) * (1 << col.palette_size) // 4
    dirs = nonzero_cusp_directions(col, partition)
    states, used, quotient = base_state_representatives(
        sys.flip_masks, strategy, samples, seed, col.palette_size
    )
    bits = (states[:, None] >> np.arange(P.NFACETS)) & 1
    extend = np.ones(len(states), dtype=bool)
    for a, b in bad:
        extend &= bits[:, a] == bits[:, b]
    ok = extend.copy()
    for pairs in dirs:
        hit = np.zeros(len(states), dtype=bool)
        for a, b in pairs:
            hit |= bits[:, a] != bits[:, b]
        ok &= hit
    witness = None
    if ok.any():
        witness = base_state_string(int(states[np.argmax(ok)]))
    return {
        "partition": str(partition),
        "blocks": len(partition.blocks),
        "bad_facet_pairs": len(bad),
        "bad_squares": n_bad_squares,
        "family_check": family_check_cliques(col, bad),
        "extendable": bool(extend.any()),
        "cusp_condition": bool(ok.any()),
        "base_states_examined": int(len(states)),
        "base_state_quotient": int(quotient),
        "strategy": used,
        "witness": witness,
    }


def _survey_chunk(args):
    col, chunk, strategy, samples, seed = args
    rows = []
    for k, rgs in chunk:
        rows.append(evaluate_partition(col, Partition.from_rgs(rgs), strategy, samples, derive_seed(seed, k)))
    return rows


def derive_seed(seed, *parts):
    import hashlib

    h = hashlib.sha256(repr((seed,) + parts).encode()).digest()
    return int.from_bytes(h[:8], "big")


def survey_partitions(col, strategy="auto", samples=4096, seed=0, jobs=1):
    """Evaluate every partition of the palette, in restricted-growth-string order."""
    items = list(enumerate(restricted_growth_strings(col.palette_size)))
    if jobs <= 1:
        return _survey_chunk((col, items, strategy, samples, seed))
    n = max(1, len(items) // (jobs * 4))
    chunks = [items[k:k + n] for k in range(0, len(items), n)]
    rows = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_survey_chunk, [(col, ch, strategy, samples, seed) for ch in chunks]):
            rows.extend(part)
    return rows


def survey_summary(rows):
    both = [r["partition"] for r in rows if r["bad_squares"] == 0 and r["cusp_condition"]]
    return {
        "partitions": len(rows),
        "without_bad_squares": sum(1 for r in rows if r["bad_squares"] == 0),
        "family_check_pass": sum(1 for r in rows if r["bad_squares"] and r["family_check"]),
        "cusp_condition_pass": sum(1 for r in rows if r["cusp_condition"]),
        "no_bad_squares_and_cusp_condition": both,
    }


SURVEY_FIELDS = [
    "partition",
    "blocks",
    "bad_facet_pairs",
    "bad_squares",
    "family_check",
    "extendable",
    "cusp_condition",
    "base_states_examined",
    "base_state_quotient",
    "strategy",
    "witness",
]


def survey_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SURVEY_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r[k] is None else r[k]) for k in SURVEY_FIELDS})
    return buf.getvalue()


def survey_json(rows):
    return json.dumps({"summary": survey_summary(rows), "rows": rows}, indent=2, sort_keys=True)


# -- base-state I/O --------------------------------------------------------------


def base_state_string(state):
    """16 characters in canonical facet order, '1' = outward."""
    return "".join("1" if state >> f & 1 else "0" for f in range(P.NFACETS))


def parse_base_state(text):
    """Either a 16-char 0/1 string or 16 lines ``<signs> out|in``."""
    text = text.strip()
    if len(text) == P.NFACETS and set(text) <= {"0", "1"}:
        return sum(1 << f for f, ch in enumerate(text) if ch == "1")
    state, seen = 0, set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in (OUT, IN):
            raise ValueError(f"line {lineno}: expected '<signs> out|in'")
        f = P.parse_facet(parts[0])
        if f in seen:
            raise ValueError(f"line {lineno}: facet listed twice")
        seen.add(f)
        if parts[1] == OUT:
            state |= 1 << f
    if len(seen) != P.NFACETS:
        raise ValueError(f"base state lists {len(seen)} facets")
    return state


def base_state_text(state):
    return "".join(f"{P.facet_label(f)} {OUT if state >> f & 1 else IN}\n" for f in range(P.NFACETS))


def find_base_states(col, partition, strategy="auto", samples=4096, seed=0):
    """Representative base states that extend over every square and make every cusp class nonzero."""
    sys = CoorientationSystem(col, partition, 0)
    bad = bad_facet_pairs(sys)
    dirs = nonzero_cusp_directions(col, partition)
    states, _, _ = base_state_representatives(sys.flip_masks, strategy, samples, seed, col.palette_size)
    bits = (states[:, None] >> np.arange(P.NFACETS)) & 1
    ok = np.ones(len(states), dtype=bool)
    for a, b in bad:
        ok &= bits[:, a] == bits[:, b]
    for pairs in dirs:
        hit = np.zeros(len(states), dtype=bool)
        for a, b in pairs:
            hit |= bits[:, a] != bits[:, b]
        ok &= hit
    return [int(s) for s in states[ok]]


def flip_rank(sys):
    return gf2_rank(sys.flip_masks)
