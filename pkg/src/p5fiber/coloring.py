"""Facet colorings, the induced map to (Z/2)^c, and torsion detection."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from . import polytope as P


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """Colors in 1..c for the 16 facets, indexed in canonical facet order."""

    colors: tuple
    palette_size: int

    def __post_init__(self):
        if len(self.colors) != P.NFACETS:
            raise ColoringError(f"need {P.NFACETS} colors, got {len(self.colors)}")
        if self.palette_size < 1:
            raise ColoringError("palette size must be positive")
        bad = [c for c in self.colors if not 1 <= c <= self.palette_size]
        if bad:
            raise ColoringError(f"colors {bad} outside 1..{self.palette_size}")

    def __getitem__(self, facet):
        return self.colors[facet]

    def bit(self, facet):
        """The basis vector e_{col(facet)} as an int bit."""
        return 1 << (self.colors[facet] - 1)

    def facets_of_color(self, color):
        return [f for f, c in enumerate(self.colors) if c == color]

    @property
    def used_colors(self):
        return sorted(set(self.colors))

    def relabel(self, facet_perm):
        """Coloring transported by a facet permutation: new[perm[f]] = old[f]."""
        new = [0] * P.NFACETS
        for f, c in enumerate(self.colors):
            new[facet_perm[f]] = c
        return Coloring(tuple(new), self.palette_size)

    def to_text(self):
        return "".join(f"{P.facet_label(f)} {c}\n" for f, c in enumerate(self.colors))

    def to_dict(self):
        return {
            "palette_size": self.palette_size,
            "colors": {P.facet_label(f): c for f, c in enumerate(self.colors)},
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def identity_coloring():
    return Coloring(tuple(range(1, P.NFACETS + 1)), P.NFACETS)


def constant_coloring(c=1):
    return Coloring((1,) * P.NFACETS, c)


def parse_coloring(text, palette_size=None):
    """Read the ``<sign-string> <color>`` line format (blank lines and # comments skipped)."""
    colors = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ColoringError(f"line {lineno}: expected '<signs> <color>'")
        try:
            f = P.parse_facet(parts[0])
            c = int(parts[1])
        except ValueError as exc:
            raise ColoringError(f"line {lineno}: {exc}") from None
        if f in colors:
            raise ColoringError(f"line {lineno}: facet {parts[0]} listed twice")
        if c < 1:
            raise ColoringError(f"line {lineno}: colors must be positive")
        colors[f] = c
    if len(colors) != P.NFACETS:
        raise ColoringError(f"coloring lists {len(colors)} facets, need {P.NFACETS}")
    seq = tuple(colors[f] for f in range(P.NFACETS))
    return Coloring(seq, palette_size or max(seq))


def load_coloring(path, palette_size=None):
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        seq = tuple(data["colors"][P.facet_label(f)] for f in range(P.NFACETS))
        return Coloring(seq, palette_size or data.get("palette_size") or max(seq))
    return parse_coloring(text, palette_size)


def is_proper(col):
    adj = P.adjacency()
    return all(
        col[i] != col[j] for i in range(P.NFACETS) for j in range(i + 1, P.NFACETS) if adj[i] >> j & 1
    )


def induced_homomorphism(col):
    """The map r_F -> e_{col(F)}; returned callable sends a word (facet indices) to a bit vector."""

    def evaluate(word):
        v = 0
        for f in word:
            v ^= col.bit(f)
        return v

    return evaluate


def coxeter_presentation():
    """Generators (facet indices) and the commuting pairs of the right-angled Coxeter group."""
    return {"generators": list(range(P.NFACETS)), "commuting_pairs": P.adjacency_graph()[1]}


def torsion_witness(col):
    """A clique whose reflections multiply to a torsion element of the kernel, or None.

    Torsion classes are represented by products over cliques; the element
    ``r_{F1}...r_{Fn}`` of order 2 lies in the kernel when the images of the
    clique's generators are linearly dependent, i.e. some nonempty sub-clique
    maps to zero. Scanning minimal dependent sub-cliques over cliques of size
    at most 5 finds one whenever it exists.
    """
    phi = induced_homomorphism(col)
    for clique in P.all_cliques():
        n = len(clique)
        for sub in range(1, 1 << n):
            word = [clique[k] for k in range(n) if sub >> k & 1]
            if phi(word) == 0:
                return tuple(word)
    return None


def search_colorings(c, seed=0, limit=1, accept=None, prune=None):
    """Proper colorings with palette 1..c by seeded backtracking.

    Facets are assigned in canonical order; facet 0 always gets color 1 and
    the remaining colors are tried in an order shuffled once by ``seed``.
    ``prune(partial)`` may reject a partial assignment (a list with None for
    unassigned facets); ``accept(coloring)`` filters complete ones.
    """
    if c < 1:
        raise ColoringError("palette size must be positive")
    rng = random.Random(seed)
    order = list(range(1, c + 1))
    rng.shuffle(order)
    adj = P.adjacency()
    assign = [None] * P.NFACETS
    found = []

    def rec(f):
        if len(found) >= limit:
            return
        if f == P.NFACETS:
            col = Coloring(tuple(assign), c)
            if accept is None or accept(col):
                found.append(col)
            return
        banned = {assign[g] for g in range(f) if adj[f] >> g & 1}
        choices = [1] if f == 0 else order
        for colour in choices:
            if colour in banned:
                continue
            assign[f] = colour
            if prune is None or not prune(assign):
                rec(f + 1)
            assign[f] = None
            if len(found) >= limit:
                return

    rec(0)
    return found


def cusp_census_pruner(large, small):
    """Prune partial colorings that cannot reach ``large`` rainbow stars plus ``small`` 4-color stars.

    The rank of a star's color set is its number of distinct colors, so a
    cusp count of this type needs every star to be rainbow (8 colors)
    or to use exactly 4 colors.
    """
    stars = [P.ideal_vertex_star(p) for p in P.ideal_vertices()]

    def prune(assign):
        repeated = 0
        for star in stars:
            seen = [assign[f] for f in star if assign[f] is not None]
            distinct = len(set(seen))
            if distinct < len(seen):
                repeated += 1
                if distinct > 4:
                    return True
        return repeated > small

    return prune


def search_profile_colorings(seed=0, limit=1, accept=None):
    """8-colorings with 8 rainbow cusp stars and 2 stars using 4 colors (40 cusps)."""
    from .tessellation import cusp_rank_profile

    def ok(col):
        if sorted(cusp_rank_profile(col)) != [4, 4] + [8] * 8:
            return False
        return accept is None or accept(col)

    return search_colorings(8, seed=seed, limit=limit, accept=ok, prune=cusp_census_pruner(8, 2))
