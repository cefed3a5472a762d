"""Exact linear algebra for chain complexes: GF(2) and rational ranks, Betti numbers.

GF(2) vectors are Python ints used as bit sets (bit ``i`` is row ``i``).
Rational boundary columns are sparse ``{row: int}`` dicts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


class BoundaryError(ValueError):
    """Raised when a boundary of a boundary does not vanish."""


def gf2_rank(rows):
    """Rank over GF(2) of a matrix given as an iterable of int bit-rows."""
    basis = {}
    rank = 0
    for r in rows:
        while r:
            h = r.bit_length() - 1
            p = basis.get(h)
            if p is None:
                basis[h] = r
                rank += 1
                break
            r ^= p
    return rank


def gf2_matrix_to_rows(matrix):
    """Pack a dense 0/1 matrix (list of lists) into int rows."""
    rows = []
    for line in matrix:
        r = 0
        for j, x in enumerate(line):
            if x & 1:
                r |= 1 << j
        rows.append(r)
    return rows


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def rational_rank(columns):
    """Rank over Q of an integer matrix given as sparse columns ``{row: int}``.

    Fraction-free elimination: a column is reduced against a pivot column by
    ``c <- p[j] * c - c[j] * p`` and then divided by the gcd of its entries,
    so every intermediate stays integral and small.
    """
    pivots = {}
    rank = 0
    for col in columns:
        c = {k: v for k, v in col.items() if v}
        while c:
            j = max(c)
            p = pivots.get(j)
            if p is None:
                g = 0
                for v in c.values():
                    g = gcd(g, v)
                if g > 1:
                    c = {k: v // g for k, v in c.items()}
                pivots[j] = c
                rank += 1
                break
            a, b = p[j], c[j]
            new = {}
            for k in c.keys() | p.keys():
                v = a * c.get(k, 0) - b * p.get(k, 0)
                if v:
                    new[k] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {k: v // g for k, v in new.items()}
            c = new
    return rank


@dataclass
class ChainComplex:
    """Graded boundary data.

    ``counts[k]`` is the number of k-cells. ``gf2[k][i]`` is the GF(2)
    boundary of the i-th k-cell as a bit set over (k-1)-cells (``gf2[0]`` is
    all zeros). ``signed[k][i]``, when present, is the integral boundary as a
    ``{face: coefficient}`` dict.
    """

    counts: list
    gf2: list
    signed: list | None = None
    _checked: set = field(default_factory=set, repr=False)

    @property
    def top_dim(self):
        return len(self.counts) - 1

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.counts))

    def check_gf2(self):
        for k in range(2, len(self.counts)):
            lower = self.gf2[k - 1]
            for i, col in enumerate(self.gf2[k]):
                acc = 0
                for r in _bits(col):
                    acc ^= lower[r]
                if acc:
                    raise BoundaryError(f"d∘d != 0 over GF(2) at cell {i} of dimension {k}")
        self._checked.add("GF2")

    def check_signed(self):
        if self.signed is None:
            raise ValueError("no integral boundary data")
        for k in range(2, len(self.counts)):
            lower = self.signed[k - 1]
            for i, col in enumerate(self.signed[k]):
                acc = {}
                for r, a in col.items():
                    for s, b in lower[r].items():
                        acc[s] = acc.get(s, 0) + a * b
                if any(acc.values()):
                    raise BoundaryError(f"d∘d != 0 over Z at cell {i} of dimension {k}")
        self._checked.add("Q")

    def ranks(self, field="GF2"):
        """``ranks[k]`` = rank of the boundary map out of k-chains."""
        out = [0] * (len(self.counts) + 1)
        for k in range(1, len(self.counts)):
            if field == "GF2":
                out[k] = gf2_rank(self.gf2[k])
            elif field == "Q":
                out[k] = rational_rank(self.signed[k])
            else:
                raise ValueError(f"unknown field {field!r}")
        return out

    def betti(self, field="GF2"):
        if field not in self._checked:
            if field == "GF2":
                self.check_gf2()
            else:
                self.check_signed()
        rk = self.ranks(field)
        return [self.counts[k] - rk[k] - rk[k + 1] for k in range(len(self.counts))]


def betti(complex_, field="GF2"):
    """Betti numbers of anything exposing ``chain_complex()`` (or a ChainComplex)."""
    cc = complex_ if isinstance(complex_, ChainComplex) else complex_.chain_complex(signed=field == "Q")
    return cc.betti(field)


def euler_characteristic(complex_):
    cc = complex_ if isinstance(complex_, ChainComplex) else complex_.chain_complex()
    return cc.euler_characteristic()


def simplicial_chain_complex(simplices, signed=False):
    """Chain complex of an abstract simplicial complex given by all of its simplices."""
    simplices = {frozenset(s) for s in simplices if s}
    if not simplices:
        return ChainComplex([], [], [] if signed else None)
    top = max(len(s) for s in simplices) - 1
    bydim = [sorted((tuple(sorted(s)) for s in simplices if len(s) == k + 1)) for k in range(top + 1)]
    index = [{s: i for i, s in enumerate(level)} for level in bydim]
    gf2 = [[0] * len(bydim[0])]
    sgn = [[{} for _ in bydim[0]]] if signed else None
    for k in range(1, top + 1):
        rows, srows = [], []
        for s in bydim[k]:
            r = 0
            d = {}
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                i = index[k - 1][face]
                r ^= 1 << i
                d[i] = d.get(i, 0) + (-1) ** j
            rows.append(r)
            srows.append(d)
        gf2.append(rows)
        if signed:
            sgn.append(srows)
    return ChainComplex([len(level) for level in bydim], gf2, sgn)


def dump_triplets(cc, k, field="GF2"):
    """Sparse ``row col value`` lines of the k-th boundary matrix, for debugging."""
    lines = []
    if field == "GF2":
        for c, col in enumerate(cc.gf2[k]):
            for r in _bits(col):
                lines.append(f"{r} {c} 1")
    else:
        for c, col in enumerate(cc.signed[k]):
            for r, v in sorted(col.items()):
                lines.append(f"{r} {c} {v}")
    return "\n".join(lines)
