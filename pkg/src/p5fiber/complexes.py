"""Polyhedral cell complexes with explicit local coordinates.

Every cell is a convex polytope described in its own frame by the
coordinates of its vertex *slots*. A face is attached through a slot map
(face slot i sits at slot ``slot_map[i]`` of the cell), which fixes the
affine inclusion. Slots of different cells may name the same global vertex,
so self-glued cells such as the one-vertex torus are allowed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .homology import ChainComplex


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class Cell:
    key: object
    dim: int
    coords: tuple
    vertices: tuple
    faces: tuple  # ((face index, slot map), ...)


class CellComplex:
    def __init__(self, cells):
        self.cells = list(cells)
        self.index = {c.key: i for i, c in enumerate(self.cells)}
        if len(self.index) != len(self.cells):
            raise ComplexError("duplicate cell keys")
        top = max((c.dim for c in self.cells), default=-1)
        self.by_dim = [[] for _ in range(top + 1)]
        for i, c in enumerate(self.cells):
            self.by_dim[c.dim].append(i)
        self.pos = {}
        for level in self.by_dim:
            for j, i in enumerate(level):
                self.pos[i] = j
        self._edges_at = {}
        self._edge_pairs = {}
        self._cofaces = None

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, i):
        return self.cells[i]

    @property
    def dim(self):
        return len(self.by_dim) - 1

    def counts(self):
        return [len(level) for level in self.by_dim]

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def vertex_ids(self):
        return list(self.by_dim[0]) if self.by_dim else []

    def cofaces(self):
        """``cofaces()[i]`` = list of (cell index, multiplicity) having cell i as a codim-1 face."""
        if self._cofaces is None:
            co = [dict() for _ in self.cells]
            for i, c in enumerate(self.cells):
                for f, _ in c.faces:
                    co[f][i] = co[f].get(i, 0) + 1
            self._cofaces = [sorted(d.items()) for d in co]
        return self._cofaces

    def chain_complex(self, signed=False):
        counts = self.counts()
        gf2 = [[0] * counts[0]] if counts else []
        for k in range(1, len(counts)):
            rows = []
            for i in self.by_dim[k]:
                r = 0
                for f, _ in self.cells[i].faces:
                    r ^= 1 << self.pos[f]
                rows.append(r)
            gf2.append(rows)
        sgn = None
        if signed:
            sgn = [[{} for _ in range(counts[0])]] if counts else []
            for k in range(1, len(counts)):
                sgn.append([self.signed_boundary(i) for i in self.by_dim[k]])
        return ChainComplex(counts, gf2, sgn)

    def signed_boundary(self, i):
        """Integral boundary of cell i over positions in the (dim-1) level."""
        cell = self.cells[i]
        out = {}
        for f, smap in cell.faces:
            s = incidence_sign(cell, self.cells[f], smap)
            j = self.pos[f]
            out[j] = out.get(j, 0) + s
        return {j: v for j, v in out.items() if v}

    def edges_at(self, i, slot):
        """Edge corners ``(edge index, slot)`` of cell i emanating from the given slot."""
        key = (i, slot)
        hit = self._edges_at.get(key)
        if hit is not None:
            return hit
        cell = self.cells[i]
        if cell.dim == 1:
            res = frozenset([(i, slot)])
        else:
            acc = set()
            for f, smap in cell.faces:
                for fs, cs in enumerate(smap):
                    if cs == slot:
                        acc |= self.edges_at(f, fs)
            res = frozenset(acc)
        self._edges_at[key] = res
        return res

    def edge_slot_pairs(self, i):
        """Pairs of slots of cell i joined by an edge of the cell."""
        hit = self._edge_pairs.get(i)
        if hit is not None:
            return hit
        cell = self.cells[i]
        if cell.dim == 0:
            res = frozenset()
        elif cell.dim == 1:
            res = frozenset([(0, 1)])
        else:
            acc = set()
            for f, smap in cell.faces:
                for a, b in self.edge_slot_pairs(f):
                    acc.add(tuple(sorted((smap[a], smap[b]))))
            res = frozenset(acc)
        self._edge_pairs[i] = res
        return res

    def check_faces(self):
        """Each k-cell has only (k-1)-faces; slot maps are injective. Returns problems found."""
        problems = []
        for i, c in enumerate(self.cells):
            for f, smap in c.faces:
                if self.cells[f].dim != c.dim - 1:
                    problems.append((i, f, "dimension"))
                if len(set(smap)) != len(smap):
                    problems.append((i, f, "slot map not injective"))
        return problems


# -- exact affine helpers ---------------------------------------------------


def _frac(v):
    return tuple(Fraction(x) for x in v)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _independent_basis(vectors):
    """Greedy indices of a maximal linearly independent subfamily."""
    chosen, reduced = [], []
    for idx, v in enumerate(vectors):
        w = list(v)
        for piv, r in reduced:
            if w[piv]:
                t = w[piv] / r[piv]
                w = [a - t * b for a, b in zip(w, r)]
        nz = next((k for k, x in enumerate(w) if x), None)
        if nz is not None:
            chosen.append(idx)
            reduced.append((nz, w))
    return chosen


def solve(A, b):
    """Exact solution x of A x = b (A list of rows) or None when inconsistent."""
    rows = [list(map(Fraction, r)) + [Fraction(y)] for r, y in zip(A, b)]
    n = len(A[0]) if A else 0
    piv_cols = []
    r = 0
    for col in range(n):
        p = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                t = rows[k][col]
                rows[k] = [x - t * y for x, y in zip(rows[k], rows[r])]
        piv_cols.append(col)
        r += 1
    for k in range(r, len(rows)):
        if rows[k][n]:
            return None
    x = [Fraction(0)] * n
    for k, col in enumerate(piv_cols):
        x[col] = rows[k][n]
    return x


def affine_fit(points, values):
    """Coefficients (c0, c1..cn) of an affine function matching values at points, or None."""
    A = [[1, *p] for p in points]
    return solve(A, values)


def _det(m):
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                t = m[r][c] / m[c][c]
                m[r] = [a - t * b for a, b in zip(m[r], m[c])]
    return det


@lru_cache(maxsize=None)
def _basis_of(coords):
    pts = [_frac(p) for p in coords]
    diffs = [_sub(p, pts[0]) for p in pts[1:]]
    return tuple(k + 1 for k in _independent_basis(diffs))


def incidence_sign(cell, face, slot_map):
    """Orientation sign of ``face`` in the boundary of ``cell`` (outward normal first)."""
    pts = [_frac(p) for p in cell.coords]
    qb = _basis_of(cell.coords)
    if len(qb) != cell.dim:
        raise ComplexError(f"cell {cell.key} has affine dimension {len(qb)} != {cell.dim}")
    basis = [_sub(pts[s], pts[0]) for s in qb]
    centroid = tuple(sum(c) / len(pts) for c in zip(*pts))
    fb = _basis_of(face.coords)
    origin = pts[slot_map[0]]
    vecs = [_sub(origin, centroid)] + [_sub(pts[slot_map[s]], origin) for s in fb]
    # coordinates of each vector in the cell basis
    At = [list(col) for col in zip(*basis)]  # ambient x dim
    mat = []
    for v in vecs:
        x = solve(At, v)
        if x is None:
            raise ComplexError("face vector outside the cell span")
        mat.append(x)
    d = _det(mat)
    if d == 0:
        raise ComplexError(f"degenerate face {face.key} of {cell.key}")
    return 1 if d > 0 else -1


@lru_cache(maxsize=None)
def _interpolation(coords):
    """Weights expressing each slot value of an affine function through the basis slots."""
    pts = [tuple(Fraction(c) for c in p) for p in coords]
    basis = (0,) + _basis_of(coords)
    n = len(pts[0])
    # rows: [1, p] for basis points; solve for each slot a combination of basis rows
    B = [[Fraction(1), *pts[s]] for s in basis]
    At = [list(col) for col in zip(*B)]  # (n+1) x len(basis)
    weights = []
    for p in pts:
        w = solve(At, [Fraction(1), *p])
        if w is None:
            raise ComplexError(f"slot {p} outside the affine span of its cell")
        weights.append(tuple(w))
    return basis, tuple(weights), n


def is_affine(coords, vals):
    basis, weights, _ = _interpolation(tuple(coords))
    bv = [vals[s] for s in basis]
    return all(sum(w * b for w, b in zip(ws, bv)) == v for ws, v in zip(weights, vals))


# -- construction -------------------------------------------------------------


def cube_coords(k):
    """Slot coordinates of [0,1]^k: slot s has coordinate j equal to bit j of s."""
    return tuple(tuple(s >> j & 1 for j in range(k)) for s in range(1 << k))


def build_complex(top_keys, describe):
    """Build a complex from the downward closure of ``top_keys``.

    ``describe(key)`` returns ``(dim, coords, faces)`` where ``faces`` is a
    list of ``(face_key, to_cell)`` and ``to_cell`` maps a face slot
    coordinate to the matching coordinate in this cell's frame.
    """
    cells = []
    index = {}
    pending = {}

    def add(key):
        if key in index:
            return index[key]
        if key in pending:
            raise ComplexError(f"cyclic face structure at {key!r}")
        pending[key] = True
        dim, coords, face_specs = describe(key)
        coords = tuple(tuple(c) for c in coords)
        where = {c: s for s, c in enumerate(coords)}
        if len(where) != len(coords):
            raise ComplexError(f"repeated slot coordinates in {key!r}")
        faces = []
        for fkey, to_cell in face_specs:
            fi = add(fkey)
            fcell = cells[fi]
            smap = []
            for fc in fcell.coords:
                c = tuple(to_cell(fc))
                if c not in where:
                    raise ComplexError(f"face {fkey!r} slot {fc} maps to {c}, not a slot of {key!r}")
                smap.append(where[c])
            faces.append((fi, tuple(smap)))
        idx = len(cells)
        if dim == 0:
            verts = (idx,)
        else:
            verts = [None] * len(coords)
            for fi, smap in faces:
                fv = cells[fi].vertices
                for fs, cs in enumerate(smap):
                    if verts[cs] is None:
                        verts[cs] = fv[fs]
                    elif verts[cs] != fv[fs]:
                        raise ComplexError(f"inconsistent vertex at slot {cs} of {key!r}")
            if any(v is None for v in verts):
                raise ComplexError(f"slot of {key!r} lies on no face")
            verts = tuple(verts)
        cells.append(Cell(key, dim, coords, verts, tuple(faces)))
        index[key] = idx
        del pending[key]
        return idx

    for key in top_keys:
        add(key)
    return CellComplex(cells)


def cube_face_map(k, position, side, flips=()):
    """``to_cell`` for the face of a k-cube fixing coordinate ``position`` at ``side``.

    ``flips`` lists face-frame coordinate positions reversed relative to the cell.
    """
    flips = frozenset(flips)

    def to_cell(fc):
        fc = [1 - x if j in flips else x for j, x in enumerate(fc)]
        return tuple(fc[:position]) + (side,) + tuple(fc[position:])

    return to_cell


def torus_complex(n):
    """The one-vertex cubulation of R^n / Z^n: one k-cube per k-subset of coordinates."""

    def describe(key):
        labels = key
        k = len(labels)
        faces = []
        for a in range(k):
            sub = labels[:a] + labels[a + 1:]
            for w in (0, 1):
                faces.append((sub, cube_face_map(k, a, w)))
        return k, cube_coords(k), faces

    return build_complex([tuple(range(n))], describe)


def standard_cube(k):
    """A single k-cube with all its faces (faces keyed by (fixed coords, free coords))."""

    def describe(key):
        fixed, free = key
        m = len(free)
        faces = []
        for a, lab in enumerate(free):
            for w in (0, 1):
                nf = tuple(sorted(fixed + ((lab, w),)))
                faces.append(((nf, free[:a] + free[a + 1:]), cube_face_map(m, a, w)))
        return m, cube_coords(m), faces

    return build_complex([((), tuple(range(k)))], describe)


def grid_torus(n, size):
    """R^n / (size Z)^n cubulated by unit cubes, as a cell complex with distinct corners."""

    def describe(key):
        base, labels = key
        k = len(labels)
        faces = []
        for a, lab in enumerate(labels):
            sub = labels[:a] + labels[a + 1:]
            for w in (0, 1):
                b = list(base)
                b[lab] = (b[lab] + w) % size
                faces.append(((tuple(b), sub), cube_face_map(k, a, w)))
        return k, cube_coords(k), faces

    tops = [(base, tuple(range(n))) for base in product(range(size), repeat=n)]
    return build_complex(tops, describe)


def corners_by_vertex(cx):
    """Map global vertex -> list of corners ``(cell, slot)`` of positive-dimensional cells."""
    out = {v: [] for v in cx.vertex_ids()}
    for i, c in enumerate(cx.cells):
        if c.dim == 0:
            continue
        for s, v in enumerate(c.vertices):
            out[v].append((i, s))
    return out


def corner_simplex(cx, i, slot):
    """Link simplex of a corner: its emanating edge corners. Requires a simple corner."""
    edges = cx.edges_at(i, slot)
    if len(edges) != cx[i].dim:
        raise ComplexError(f"corner {slot} of {cx[i].key} is not simple ({len(edges)} edges)")
    return edges


def vertex_link(cx, v, corners=None):
    """Abstract simplicial complex (set of frozensets of edge corners) of the link at v."""
    if corners is None:
        corners = [(i, s) for i, c in enumerate(cx.cells) if c.dim for s, w in enumerate(c.vertices) if w == v]
    return {corner_simplex(cx, i, s) for i, s in corners}
