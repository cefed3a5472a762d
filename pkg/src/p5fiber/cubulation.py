"""The cube complex dual to the tessellation by polytope copies.

A k-cube is a class of ``(label, S)`` with S a k-clique of facets, where
``(label, S) ~ (label ^ e_col(F), S)`` for F in S. The canonical base label
has every bit of the colors in S cleared; in that frame the slot with
coordinates x sits at copy ``label | sum(x_F * e_col(F))``, so face maps never
reverse a coordinate.
"""
from __future__ import annotations

import json

from . import polytope as P
from .complexes import build_complex, cube_coords, cube_face_map, vertex_link as _vertex_link
from .tessellation import Tessellation


def color_mask(col, S):
    m = 0
    for f in S:
        m |= col.bit(f)
    return m


def canonical(col, label, S):
    """Canonical representative of the cube class of ``(label, S)``."""
    S = tuple(sorted(S))
    return label & ~color_mask(col, S), S


def translates(col, label, S):
    """All 2^k labels identified with ``label`` for the facet set S."""
    out = [label]
    for f in S:
        b = col.bit(f)
        out += [x ^ b for x in out]
    return out


class Cubulation:
    """The cubulation together with its tessellation; ``complex`` is the CellComplex."""

    def __init__(self, tess):
        if not isinstance(tess, Tessellation):
            tess = Tessellation(tess)
        self.tess = tess
        self.coloring = col = tess.coloring
        cliques = [()] + P.all_cliques()

        def describe(key):
            lam, S = key
            k = len(S)
            faces = []
            for a, h in enumerate(S):
                sub = S[:a] + S[a + 1:]
                for w in (0, 1):
                    mu = lam ^ (col.bit(h) if w else 0)
                    faces.append((canonical(col, mu, sub), cube_face_map(k, a, w)))
            return k, cube_coords(k), faces

        keys = []
        for S in sorted(cliques, key=len):
            mask = color_mask(col, S)
            keys += [(lam, tuple(S)) for lam in range(tess.copies) if lam & mask == 0]
        self.complex = build_complex(keys, describe)

    # -- queries --------------------------------------------------------------

    def cell_index(self, label, S):
        return self.complex.index[canonical(self.coloring, label, S)]

    def vertex_index(self, label):
        return self.complex.index[(label, ())]

    def slot_label(self, i, slot):
        lam, S = self.complex[i].key
        for j, f in enumerate(S):
            if slot >> j & 1:
                lam |= self.coloring.bit(f)
        return lam

    def squares(self):
        return [self.complex[i].key for i in self.complex.by_dim[2]]

    def cells_of_dim(self, k):
        return [self.complex[i].key for i in self.complex.by_dim[k]]

    def expected_counts(self):
        """2^c * N_k / 2^k from clique counts."""
        n = self.tess.copies
        return [n] + [n * len(P.cliques(k)) >> k for k in range(1, 6)]


def build_cubulation(tess):
    return Cubulation(tess)


def cell_census(cx):
    """Counts per dimension and Euler characteristic of a CellComplex or Cubulation."""
    cx = getattr(cx, "complex", cx)
    counts = cx.counts()
    return {"counts": counts, "euler_characteristic": sum((-1) ** k * n for k, n in enumerate(counts))}


def vertex_link(cub, label):
    """Link at a copy, as a simplicial complex on facet indices (the direction of each edge)."""
    cx = cub.complex
    v = cub.vertex_index(label)
    raw = _vertex_link(cx, v)
    return {frozenset(cx[e].key[1][0] for e, _ in simplex) for simplex in raw}


def one_skeleton_components(cub):
    """Connected components of the 1-skeleton, as sorted lists of copy labels."""
    col = cub.coloring
    gens = sorted({col.bit(f) for f in range(P.NFACETS)})
    seen = set()
    comps = []
    for lam in range(cub.tess.copies):
        if lam in seen:
            continue
        comp = {lam}
        stack = [lam]
        while stack:
            x = stack.pop()
            for g in gens:
                y = x ^ g
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def boundary_compatibility(cub, cusp):
    """Check the dual torus of a cusp sits in the cubulation: one vertex and one 4-cube per tile."""
    col = cub.coloring
    star = set(P.ideal_vertex_star(cusp.base_vertex))
    top = [S for S in P.cliques(4) if set(S) <= star]
    cubes = {canonical(col, lam, S) for lam in cusp.orbit for S in top}
    missing = [c for c in cubes if c not in cub.complex.index]
    return {
        "vertices": len(cusp.orbit),
        "top_cubes": len(cubes),
        "missing": len(missing),
        "ok": not missing and len(cubes) == len(cusp.orbit),
    }


def cell_to_dict(cub, i):
    lam, S = cub.complex[i].key
    return {
        "base": format(lam, f"0{cub.tess.c}b"),
        "facets": [P.facet_label(f) for f in S],
        "dim": len(S),
    }


def census_json(cub):
    data = cell_census(cub)
    data["expected_counts"] = cub.expected_counts()
    data["components"] = len(one_skeleton_components(cub))
    return json.dumps(data, indent=2, sort_keys=True)
