"""The manifold built from 2^c colored copies of the polytope, and its cusps.

Copies are labelled by bit vectors ``lam`` in (Z/2)^c stored as ints; facet
F of copy ``lam`` is glued to facet F of copy ``lam ^ e_col(F)``. Nothing is
materialised: queries are computed from the coloring on demand.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from . import polytope as P
from .coloring import Coloring, ColoringError, is_proper
from .complexes import build_complex, cube_coords, cube_face_map
from .homology import gf2_rank


class TorusCheckError(RuntimeError):
    """A cusp section failed the closed 4-torus checks."""


@dataclass(frozen=True)
class Tessellation:
    coloring: Coloring

    def __post_init__(self):
        if not is_proper(self.coloring):
            raise ColoringError("coloring is not proper: the kernel has torsion")

    @property
    def c(self):
        return self.coloring.palette_size

    @property
    def copies(self):
        return 1 << self.c

    def glue(self, label, facet):
        return label ^ self.coloring.bit(facet), facet

    def glued_pair_count(self):
        return self.copies * P.NFACETS // 2

    def glued_pairs(self):
        """One representative ``(label, facet)`` per glued pair (the smaller label)."""
        for lam in range(self.copies):
            for f in range(P.NFACETS):
                if lam < lam ^ self.coloring.bit(f):
                    yield lam, f

    def stats(self):
        return {
            "palette_size": self.c,
            "copies": self.copies,
            "glued_facet_pairs": self.glued_pair_count(),
            "colors_used": len(self.coloring.used_colors),
        }


@dataclass(frozen=True)
class Cusp:
    base_vertex: P.IdealVertex
    orbit: frozenset
    rank: int
    periods: tuple
    modulus: int | None
    size_class: str
    coloring: Coloring = field(compare=False, repr=False)

    @property
    def representative(self):
        return min(self.orbit)

    @property
    def tiles(self):
        return len(self.orbit)

    def to_dict(self):
        return {
            "base_vertex": str(self.base_vertex),
            "representative": format(self.representative, f"0{self.coloring.palette_size}b"),
            "orbit_size": len(self.orbit),
            "rank": self.rank,
            "periods": list(self.periods),
            "modulus": self.modulus,
            "size_class": self.size_class,
        }


def star_generators(col, p):
    return sorted({col.bit(f) for f in P.ideal_vertex_star(p)})


def cusp_rank_profile(col):
    """GF(2) rank of the star colors at each ideal vertex, in ideal-vertex order."""
    return [gf2_rank(star_generators(col, p)) for p in P.ideal_vertices()]


def _closure(start, gens):
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x ^ g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def cusp_orbits(t):
    """All cusps: for each ideal vertex, orbits of copies under its star colors.

    Orbits come from an explicit breadth-first closure; their sizes and number
    are cross-checked against the GF(2) rank of the star colors.
    """
    col = t.coloring
    out = []
    for p in P.ideal_vertices():
        gens = star_generators(col, p)
        r = gf2_rank(gens)
        periods = tuple(2 if col[a] == col[b] else 4 for a, b in P.star_pairs(p))
        size = 1
        for k in periods:
            size *= k
        rect = size == 1 << r
        modulus = periods[0] if rect and len(set(periods)) == 1 else None
        size_class = {4: "large", 2: "small"}.get(modulus, "irregular")
        remaining = set(range(t.copies))
        found = 0
        while remaining:
            lam = min(remaining)
            orbit = _closure(lam, gens)
            remaining -= orbit
            if len(orbit) != 1 << r:
                raise AssertionError(f"orbit size {len(orbit)} != 2^{r} at {p}")
            out.append(Cusp(p, frozenset(orbit), r, periods, modulus, size_class, col))
            found += 1
        if found != 1 << (t.c - r):
            raise AssertionError(f"{found} cusps over {p}, rank formula gives {1 << (t.c - r)}")
    return out


def cusp_census(t):
    cusps = cusp_orbits(t)
    by_class = {}
    for cu in cusps:
        by_class[cu.size_class] = by_class.get(cu.size_class, 0) + 1
    return {
        "total": len(cusps),
        "by_class": dict(sorted(by_class.items())),
        "cusps": [cu.to_dict() for cu in cusps],
    }


def cusp_census_json(t):
    return json.dumps(cusp_census(t), indent=2, sort_keys=True)


def cusp_section_complex(cusp, verify=True):
    """Tiling of the cusp section by one 4-cube per orbit element.

    Cells are ``(label, S)`` with S a set of star facets meeting in a face of
    the tile; ``(label, S)`` is identified with ``(label ^ e_col(F), S)`` for F
    in S. Free coordinates of a cell are the directions untouched by S.
    """
    col = cusp.coloring
    pairs = P.star_pairs(cusp.base_vertex)
    direction = {}
    for a, pr in enumerate(pairs):
        for w, f in enumerate(pr):
            direction[f] = (a, w)

    def canon(lam, S):
        mask = 0
        for f in S:
            mask |= col.bit(f)
        return lam & ~mask, S

    def describe(key):
        lam, S = key
        used = {direction[f][0] for f in S}
        free = [a for a in range(4) if a not in used]
        m = len(free)
        faces = []
        for pos, a in enumerate(free):
            for w in (0, 1):
                S2 = tuple(sorted(S + (pairs[a][w],)))
                faces.append((canon(lam, S2), cube_face_map(m, pos, w)))
        return m, cube_coords(m), faces

    cx = build_complex([(lam, ()) for lam in sorted(cusp.orbit)], describe)
    if verify:
        verify_torus(cx, cusp.tiles)
    return cx


def verify_torus(cx, tiles=None):
    """Closed 4-torus battery; returns the GF(2) Betti numbers or raises TorusCheckError."""
    counts = cx.counts()
    if len(counts) != 5:
        raise TorusCheckError(f"section has dimension {len(counts) - 1}")
    if tiles is not None and counts[4] != tiles:
        raise TorusCheckError(f"{counts[4]} top cells, expected {tiles}")
    co = cx.cofaces()
    for i in cx.by_dim[3]:
        n = sum(m for _, m in co[i])
        if n != 2:
            raise TorusCheckError(f"3-cell {cx[i].key} lies in {n} top cells")
    chi = cx.euler_characteristic()
    if chi != 0:
        raise TorusCheckError(f"Euler characteristic {chi}")
    b = cx.chain_complex().betti("GF2")
    if b != [1, 4, 6, 4, 1]:
        raise TorusCheckError(f"GF(2) Betti numbers {b}")
    return b
