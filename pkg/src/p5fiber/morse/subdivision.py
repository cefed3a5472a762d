"""Bad squares, their product families, and the prism subdivision.

A bad square C on facets {F, G} is admissible when every cube containing it
splits as C x D with D and the mixed squares good and every parallel copy
C x {x} bad. Such cubes are cut into T x E pieces, T a face of the four
triangles obtained by cutting C along its diagonals.

Cells of the subdivided complex are keyed by:

* ``(label, S)``: an untouched cube (canonical base, facet tuple);
* ``("piece", label, S, kind)`` with kind ``("center",)``, ``("half", a, b)``
  (half-diagonal from corner (x_F, x_G) = (a, b) to the center) or
  ``("tri", L, w)`` (triangle on the side x_L = w), all in the frame of the
  cube ``(label, S)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..complexes import build_complex, cube_coords
from ..cubulation import Cubulation, canonical
from ..game import classify_square, square_oracle

HALF = Fraction(1, 2)


class FamilyViolation(RuntimeError):
    def __init__(self, message, cube=None):
        super().__init__(message)
        self.cube = cube


class SubdivisionError(RuntimeError):
    pass


@dataclass
class BadFamily:
    square: tuple
    cubes: list
    parallel_bad: bool = True


@dataclass
class MixedComplex:
    """Subdivided complex plus the data needed to evaluate the circle map on it."""

    complex: object
    cubulation: Cubulation
    bad_pairs: frozenset
    families: list = field(default_factory=list)

    @property
    def coloring(self):
        return self.cubulation.coloring

    def frame(self, i):
        """``(label, S)`` of the ambient cube whose coordinates the cell uses."""
        key = self.complex[i].key
        if key[0] == "piece":
            return key[1], key[2]
        return key

    def is_piece(self, i):
        return self.complex[i].key[0] == "piece"

    def center_vertices(self):
        return [i for i in self.complex.by_dim[0] if self.complex[i].key[0] == "piece"]

    def original_vertices(self):
        return [i for i in self.complex.by_dim[0] if self.complex[i].key[0] != "piece"]


def _pairs_in(S, bad):
    return [(a, b) for k, a in enumerate(S) for b in S[k + 1:] if (a, b) in bad]


def bad_squares(cub, sys):
    return [key for key in cub.squares() if classify_square(sys, key[0], *key[1]) == "bad"]


def find_bad_families(cub, sys):
    """Check every bad square's containing cubes split as C x D with all parallel copies bad.

    Uses the brute-force square oracle for each square involved, so the result
    does not rely on the block rule used by ``classify_square``. Raises
    FamilyViolation naming the first offending cube.
    """
    col = cub.coloring
    oracle = {}

    def good(label, F, G):
        key = canonical(col, label, (F, G))
        hit = oracle.get(key)
        if hit is None:
            hit = oracle[key] = square_oracle(sys, key[0], *key[1])[0]
        return hit

    cubes_by_pair = {}
    for k in range(2, cub.complex.dim + 1):
        for i in cub.complex.by_dim[k]:
            lam, S = cub.complex[i].key
            for a in range(len(S)):
                for b in range(a + 1, len(S)):
                    cubes_by_pair.setdefault((S[a], S[b]), []).append((lam, S))

    families = []
    for lam, (F, G) in bad_squares(cub, sys):
        if good(lam, F, G):
            raise FamilyViolation(f"square ({lam}, {F}, {G}) classified bad but oracle says good")
        containing = []
        for mu, S in cubes_by_pair[(F, G)]:
            if canonical(col, lam, S) != (mu, S):
                continue
            D = [h for h in S if h not in (F, G)]
            corners = [mu]
            for h in D:
                corners += [x | col.bit(h) for x in corners]
            for x in corners:
                if good(x, F, G):
                    raise FamilyViolation(f"parallel copy of bad square is good in cube {(mu, S)}", (mu, S))
                for a in range(len(S)):
                    for b in range(a + 1, len(S)):
                        pair = (S[a], S[b])
                        if pair == (F, G):
                            continue
                        for y in (x, x | col.bit(F), x | col.bit(G), x | col.bit(F) | col.bit(G)):
                            if not good(y, *pair):
                                raise FamilyViolation(
                                    f"cube {(mu, S)} has a second bad square on {pair}", (mu, S)
                                )
            containing.append((mu, S))
        if not any(len(S) == 5 for _, S in containing):
            raise FamilyViolation(f"bad square ({lam}, {F}, {G}) lies in no 5-cube")
        families.append(BadFamily((lam, (F, G)), containing))
    return families


def subdivide(cub, sys, families=None):
    """Replace every cube containing a bad square by prisms; other cubes are untouched."""
    if families is None:
        families = find_bad_families(cub, sys)
    col = cub.coloring
    bad = frozenset(f.square[1] for f in families)

    def bad_pair(S):
        pairs = _pairs_in(S, bad)
        if len(pairs) > 1:
            raise SubdivisionError(f"cube facets {S} contain two bad pairs; no product splitting")
        return pairs[0] if pairs else None

    def insert(fc, pos, value):
        return tuple(fc[:pos]) + (value,) + tuple(fc[pos:])

    def cube_key(label, S):
        S = tuple(S)
        if bad_pair(S):
            raise SubdivisionError(f"face {S} of an untouched cell contains a bad pair")
        return canonical(col, label, S)

    def describe(key):
        if key[0] != "piece":
            lam, S = key
            k = len(S)
            faces = []
            for a, h in enumerate(S):
                sub = S[:a] + S[a + 1:]
                for w in (0, 1):
                    mu = lam | col.bit(h) if w else lam
                    faces.append((cube_key(mu, sub), lambda fc, a=a, w=w: insert(fc, a, w)))
            return k, cube_coords(k), faces

        _, lam, S, kind = key
        F, G = bad_pair(S)
        pF, pG = S.index(F), S.index(G)
        dpos = [p for p in range(len(S)) if p not in (pF, pG)]
        nD = len(dpos)

        def point(xf, xg, dbits):
            x = [0] * len(S)
            x[pF], x[pG] = xf, xg
            for j, p in enumerate(dpos):
                x[p] = dbits >> j & 1
            return tuple(x)

        if kind[0] == "center":
            square_pts = [(HALF, HALF)]
        elif kind[0] == "half":
            square_pts = [(kind[1], kind[2]), (HALF, HALF)]
        else:
            L, w = kind[1], kind[2]
            side = [(w, 0), (w, 1)] if L == F else [(0, w), (1, w)]
            square_pts = side + [(HALF, HALF)]
        coords = [point(xf, xg, d) for d in range(1 << nD) for xf, xg in square_pts]
        dim = nD + len(square_pts) - 1

        faces = []
        # faces moving along D
        for p in dpos:
            h = S[p]
            sub = S[:p] + S[p + 1:]
            for w in (0, 1):
                mu = lam | col.bit(h) if w else lam
                fl, fS = canonical(col, mu, sub)
                faces.append((("piece", fl, fS, kind), lambda fc, p=p, w=w: insert(fc, p, w)))
        if kind[0] == "half":
            a, b = kind[1], kind[2]
            sub = tuple(h for h in S if h not in (F, G))
            mu = lam | (col.bit(F) if a else 0) | (col.bit(G) if b else 0)

            def corner_map(fc, a=a, b=b):
                x = list(fc)
                for pos, val in sorted(((pF, a), (pG, b))):
                    x.insert(pos, val)
                return tuple(x)

            faces.append((cube_key(mu, sub), corner_map))
            faces.append((("piece", lam, S, ("center",)), lambda fc: tuple(fc)))
        elif kind[0] == "tri":
            L, w = kind[1], kind[2]
            pL = S.index(L)
            sub = S[:pL] + S[pL + 1:]
            mu = lam | col.bit(L) if w else lam
            faces.append((cube_key(mu, sub), lambda fc, p=pL, w=w: insert(fc, p, w)))
            for xf, xg in ([(w, 0), (w, 1)] if L == F else [(0, w), (1, w)]):
                faces.append((("piece", lam, S, ("half", xf, xg)), lambda fc: tuple(fc)))
        return dim, coords, faces

    keys = []
    for k in range(cub.complex.dim + 1):
        for i in cub.complex.by_dim[k]:
            lam, S = cub.complex[i].key
            if bad_pair(S) is None:
                keys.append((lam, S))
            else:
                F, G = bad_pair(S)
                keys.append(("piece", lam, S, ("center",)))
                for a in (0, 1):
                    for b in (0, 1):
                        keys.append(("piece", lam, S, ("half", a, b)))
                for L in (F, G):
                    for w in (0, 1):
                        keys.append(("piece", lam, S, ("tri", L, w)))
    cx = build_complex(keys, describe)
    return MixedComplex(cx, cub, bad, families)


def shared_face_report(mx):
    """Faces shared between pieces and untouched cubes must themselves be untouched cubes."""
    cx = mx.complex
    co = cx.cofaces()
    bad = []
    for i, c in enumerate(cx.cells):
        if c.key[0] == "piece":
            continue
        touching = [j for j, _ in co[i] if cx[j].key[0] == "piece"]
        if touching and any(a in c.key[1] and b in c.key[1] for a, b in mx.bad_pairs):
            bad.append(c.key)
    return {"violations": bad, "ok": not bad}
