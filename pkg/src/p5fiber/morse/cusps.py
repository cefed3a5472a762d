"""Degrees of the circle-valued map along the coordinate loops of a cusp torus."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .. import polytope as P


class CuspLoopError(RuntimeError):
    pass


@dataclass(frozen=True)
class CuspClass:
    base_vertex: str
    representative: int
    size_class: str
    vector: tuple
    gcd: int

    @property
    def normalized(self):
        if not self.gcd:
            return self.vector
        return tuple(v // self.gcd for v in self.vector)

    @property
    def pattern(self):
        nz = [v for v in self.vector if v]
        if not nz:
            return "zero"
        if len(nz) == 1:
            return "projection"
        if len(nz) == len(self.vector) and len({abs(v) for v in nz}) == 1:
            return "summation"
        return "other"

    def to_dict(self):
        return {
            "base_vertex": self.base_vertex,
            "representative": self.representative,
            "size_class": self.size_class,
            "vector": list(self.vector),
            "gcd": self.gcd,
            "normalized": list(self.normalized),
            "pattern": self.pattern,
        }


def loop_degree(sys, start, pair):
    """Walk from tile ``start`` across the high facet, then the low one, alternately, until closed."""
    col = sys.coloring
    lo, hi = pair
    label, deg, n = start, 0, 0
    while True:
        facet = hi if n % 2 == 0 else lo
        deg += sys.direction(label, facet)
        label ^= col.bit(facet)
        n += 1
        if label == start and n % 2 == 0:
            return deg, n
        if n > 64:
            raise CuspLoopError("loop does not close")


def _parity(col, label, pair):
    mask = col.bit(pair[0]) | col.bit(pair[1])
    return bin(label & mask).count("1") % 2


def cusp_restriction_class(cusp, sys):
    """Degree vector over the 4 directions of the cusp torus, checked on every parallel loop.

    Loops starting in tiles of opposite parity along a direction run the
    other way, so their degree must be the negative.
    """
    col = sys.coloring
    rep = cusp.representative
    vector = []
    for pair in P.star_pairs(cusp.base_vertex):
        ref, _ = loop_degree(sys, rep, pair)
        ref_par = _parity(col, rep, pair)
        for tile in sorted(cusp.orbit):
            d, _ = loop_degree(sys, tile, pair)
            want = ref if _parity(col, tile, pair) == ref_par else -ref
            if d != want:
                raise CuspLoopError(
                    f"parallel loops at {cusp.base_vertex} disagree: {d} vs {want} from tile {tile}"
                )
        vector.append(ref)
    g = 0
    for v in vector:
        g = gcd(g, v)
    return CuspClass(str(cusp.base_vertex), rep, cusp.size_class, tuple(vector), g)


def cusp_classes(cusps, sys):
    return [cusp_restriction_class(c, sys) for c in cusps]


def pattern_check(classes):
    """Large cusps must project onto one factor, small cusps must be summation-type."""
    bad = []
    for k in classes:
        want = {"large": "projection", "small": "summation"}.get(k.size_class)
        if want and k.pattern != want:
            bad.append(k.to_dict())
    return {"ok": not bad and all(k.pattern != "zero" for k in classes), "violations": bad}
