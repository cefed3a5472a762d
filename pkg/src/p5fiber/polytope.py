"""Combinatorics of the right-angled hyperbolic 5-polytope with 16 facets.

A facet is the hyperplane ``eps . x = 1`` in the Klein model, for a sign
vector ``eps`` in {+1,-1}^5 with an even number of -1 entries. Facets are
stored as 5-bit masks of their -1 positions and indexed in ascending mask
order; everything downstream works with these indices 0..15.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

DIM = 5
MASKS = tuple(m for m in range(1 << DIM) if bin(m).count("1") % 2 == 0)
NFACETS = len(MASKS)
INDEX = {m: i for i, m in enumerate(MASKS)}


class PairClass(str, Enum):
    EQUAL = "equal"
    ORTHOGONAL = "orthogonal"
    IDEAL_TANGENT = "ideal_tangent"


@dataclass(frozen=True, order=True)
class FacetVector:
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < 32 or bin(self.mask).count("1") % 2:
            raise ValueError(f"not an even sign vector: mask {self.mask}")

    @classmethod
    def from_signs(cls, signs):
        signs = tuple(signs)
        if len(signs) != DIM or any(s not in (1, -1) for s in signs):
            raise ValueError(f"bad sign vector {signs!r}")
        return cls(sum(1 << i for i, s in enumerate(signs) if s == -1))

    @classmethod
    def parse(cls, text):
        """Parse ``'++--+'``; accepts ASCII ``-`` or the minus sign U+2212."""
        text = text.strip().replace("−", "-")
        if len(text) != DIM or set(text) - {"+", "-"}:
            raise ValueError(f"bad sign string {text!r}")
        return cls.from_signs(1 if ch == "+" else -1 for ch in text)

    @property
    def signs(self):
        return tuple(-1 if self.mask >> i & 1 else 1 for i in range(DIM))

    @property
    def index(self):
        return INDEX[self.mask]

    def __str__(self):
        return "".join("-" if self.mask >> i & 1 else "+" for i in range(DIM))


@dataclass(frozen=True, order=True)
class IdealVertex:
    """The boundary point ``sign * e_axis`` (axis counted from 1)."""

    axis: int
    sign: int

    def __post_init__(self):
        if self.axis not in range(1, DIM + 1) or self.sign not in (1, -1):
            raise ValueError(f"bad ideal vertex {self.axis}, {self.sign}")

    @property
    def point(self):
        return tuple(self.sign if i == self.axis - 1 else 0 for i in range(DIM))

    def __str__(self):
        return ("+" if self.sign > 0 else "-") + f"e{self.axis}"


def facets():
    return [FacetVector(m) for m in MASKS]


def facet_label(i):
    return str(FacetVector(MASKS[i]))


def parse_facet(text):
    return FacetVector.parse(text).index


def hamming(i, j):
    return bin(MASKS[i] ^ MASKS[j]).count("1")


def minkowski_pairing(F, G):
    """Exact Lorentzian pairing of the facet normals (eps, 1): eps_F . eps_G - 1."""
    a, b = FacetVector(F.mask).signs, FacetVector(G.mask).signs
    return sum(x * y for x, y in zip(a, b)) - 1


def classify_pair(F, G):
    if F == G:
        return PairClass.EQUAL
    d = bin(F.mask ^ G.mask).count("1")
    if d == 2:
        return PairClass.ORTHOGONAL
    if d == 4:
        return PairClass.IDEAL_TANGENT
    raise ValueError(f"odd Hamming distance between {F} and {G}")


@lru_cache(maxsize=None)
def adjacency():
    """Tuple of neighbour bit sets: bit j of ``adjacency()[i]`` iff facets i, j are orthogonal."""
    return tuple(
        sum(1 << j for j in range(NFACETS) if hamming(i, j) == 2) for i in range(NFACETS)
    )


def adjacent(i, j):
    return bool(adjacency()[i] >> j & 1)


def adjacency_graph():
    """``(vertices, edges)`` with edges as sorted index pairs."""
    adj = adjacency()
    edges = [(i, j) for i in range(NFACETS) for j in range(i + 1, NFACETS) if adj[i] >> j & 1]
    return list(range(NFACETS)), edges


def ideal_tangent_pairs():
    return [(i, j) for i in range(NFACETS) for j in range(i + 1, NFACETS) if hamming(i, j) == 4]


@lru_cache(maxsize=None)
def _all_cliques():
    adj = adjacency()
    out = []

    def extend(clique, candidates):
        out.append(tuple(clique))
        while candidates:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            extend(clique + [v], candidates & adj[v])

    for v in range(NFACETS):
        extend([v], adj[v] & ~((1 << (v + 1)) - 1))
    return tuple(sorted(out, key=lambda c: (len(c), c)))


def cliques(k):
    """All pairwise-orthogonal k-subsets of facets, as sorted index tuples."""
    if not 1 <= k <= NFACETS:
        raise ValueError("k must lie in 1..16")
    return [c for c in _all_cliques() if len(c) == k]


def all_cliques():
    """Every nonempty clique, ordered by size then lexicographically."""
    return list(_all_cliques())


def common_neighbours(facet_set):
    acc = (1 << NFACETS) - 1
    for f in facet_set:
        acc &= adjacency()[f]
    return acc


def ideal_vertices():
    return [IdealVertex(axis, sign) for axis in range(1, DIM + 1) for sign in (1, -1)]


def ideal_vertex_star(p):
    """Facet indices through the ideal point p: those with eps . p = 1."""
    bit = 1 << (p.axis - 1)
    want = 0 if p.sign > 0 else bit
    return [i for i, m in enumerate(MASKS) if m & bit == want]


def star_pairs(p):
    """The 4 pairs of facets of a cusp star that do not meet (opposite faces of the section cube).

    Returned as ``(low, high)`` index pairs sorted; a pair is the two star facets
    at Hamming distance 4.
    """
    star = ideal_vertex_star(p)
    pairs = sorted({tuple(sorted((i, j))) for i in star for j in star if hamming(i, j) == 4})
    assert len(pairs) == 4
    return pairs


@dataclass(frozen=True)
class Symmetry:
    """``eps -> flips * (eps permuted)`` with ``(g eps)[perm[i]] = flips[perm[i]] * eps[i]``."""

    permutation: tuple
    flips: tuple

    def __post_init__(self):
        if sorted(self.permutation) != list(range(DIM)):
            raise ValueError("not a permutation of 0..4")
        if len(self.flips) != DIM or any(f not in (1, -1) for f in self.flips):
            raise ValueError("bad flips")
        if self.flips.count(-1) % 2:
            raise ValueError("odd number of sign flips")

    def apply_signs(self, signs):
        out = [0] * DIM
        for i, s in enumerate(signs):
            out[self.permutation[i]] = s
        return tuple(f * s for f, s in zip(self.flips, out))

    def apply(self, facet_index):
        v = FacetVector.from_signs(self.apply_signs(FacetVector(MASKS[facet_index]).signs))
        return v.index

    def facet_permutation(self):
        return tuple(self.apply(i) for i in range(NFACETS))

    def compose(self, other):
        """``self ∘ other`` (apply other first)."""
        perm = tuple(self.permutation[other.permutation[i]] for i in range(DIM))
        moved = [0] * DIM
        for i in range(DIM):
            moved[self.permutation[i]] = other.flips[i]
        flips = tuple(a * b for a, b in zip(self.flips, moved))
        return Symmetry(perm, flips)

    def apply_ideal_vertex(self, p):
        signs = [0] * DIM
        signs[p.axis - 1] = p.sign
        out = [0] * DIM
        for i, s in enumerate(signs):
            out[self.permutation[i]] = s
        out = [f * s for f, s in zip(self.flips, out)]
        axis = next(i for i, s in enumerate(out) if s)
        return IdealVertex(axis + 1, out[axis])


def identity_symmetry():
    return Symmetry(tuple(range(DIM)), (1,) * DIM)


@lru_cache(maxsize=None)
def _symmetries():
    flips = [f for f in itertools.product((1, -1), repeat=DIM) if f.count(-1) % 2 == 0]
    return tuple(Symmetry(p, f) for p in itertools.permutations(range(DIM)) for f in flips)


def symmetry_group():
    return list(_symmetries())


@lru_cache(maxsize=None)
def symmetry_facet_permutations():
    return tuple(g.facet_permutation() for g in _symmetries())


def is_automorphism(perm):
    _, edges = adjacency_graph()
    es = set(edges)
    return all(tuple(sorted((perm[i], perm[j]))) in es for i, j in edges)


def to_dot():
    _, edges = adjacency_graph()
    lines = ["graph P5 {"]
    for i in range(NFACETS):
        lines.append(f'  {i} [label="{facet_label(i)}"];')
    for i, j in edges:
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def census():
    """Facet / adjacency / clique / symmetry counts as a JSON-ready dict."""
    _, edges = adjacency_graph()
    degrees = [bin(a).count("1") for a in adjacency()]
    cl = all_cliques()
    counts = {str(k): sum(1 for c in cl if len(c) == k) for k in range(1, 6)}
    return {
        "facets": [facet_label(i) for i in range(NFACETS)],
        "facet_count": NFACETS,
        "degrees": degrees,
        "orthogonal_pairs": len(edges),
        "ideal_tangent_pairs": len(ideal_tangent_pairs()),
        "clique_counts": counts,
        "max_clique": max(len(c) for c in cl),
        "ideal_vertices": [str(p) for p in ideal_vertices()],
        "symmetry_order": len(_symmetries()),
    }


def to_json():
    data = census()
    data["edges"] = [[facet_label(i), facet_label(j)] for i, j in adjacency_graph()[1]]
    data["cliques"] = {
        str(k): [[facet_label(i) for i in c] for c in cliques(k)] for k in range(1, 6)
    }
    data["pair_classes"] = [
        [facet_label(i), facet_label(j), classify_pair(FacetVector(MASKS[i]), FacetVector(MASKS[j])).value]
        for i in range(NFACETS)
        for j in range(i + 1, NFACETS)
    ]
    return json.dumps(data, indent=2, sort_keys=True)
