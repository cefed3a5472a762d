"""The piecewise-linear circle-valued map on the (subdivided) cubulation.

Values are stored per cell as a lift to R of the slot values in the cell's
own frame; lifts of a cell and of its faces differ by an integer multiple of
the period. Original vertices go to 0, edges wrap by +-1 according to the
co-orientation, square centers go to ``lo + center * (hi - lo)`` over the
corners of their square.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from ..complexes import is_affine, solve

HALF = Fraction(1, 2)


class MorseError(RuntimeError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


@dataclass
class PLMap:
    complex: object
    values: dict  # cell index -> tuple of lifted slot values
    period: Fraction = Fraction(1)
    center_value: Fraction = HALF
    meta: dict = field(default_factory=dict)

    def slot_values(self, i):
        return self.values[i]

    def vertex_value(self, v):
        return self.values[v][0] % self.period

    def vertex_image(self):
        return sorted({self.vertex_value(v) for v in self.complex.by_dim[0]})

    def edge_increment(self, e):
        a, b = self.values[e]
        return b - a

    def up(self, e, slot):
        """True if f increases along edge e leaving its endpoint at ``slot``."""
        a = self.values[e][slot]
        b = self.values[e][1 - slot]
        return b > a


def _frame(cell):
    key = cell.key
    if key[0] == "piece":
        return key[1], key[2]
    return key


def _corner_value(sys, label, S, x):
    """Lift at the corner x (0/1 entries) of cube (label, S), walking the coordinates in order."""
    col = sys.coloring
    v, cur = 0, label
    for a, h in enumerate(S):
        if x[a] == 1:
            v += sys.direction(cur, h)
            cur ^= col.bit(h)
    return v


def lifted_values(cx, sys, bad_pairs=frozenset(), center=HALF):
    """Per-cell lifted slot values, computed cell by cell in the cell's frame."""
    center = Fraction(center)
    if not 0 < center < 1:
        raise ValueError("center value must lie strictly between 0 and 1")
    values = {}
    for i, cell in enumerate(cx.cells):
        lam, S = _frame(cell)
        pair = next(((a, b) for a, b in bad_pairs if a in S and b in S), None)
        out = []
        for x in cell.coords:
            if all(c in (0, 1) for c in x):
                out.append(Fraction(_corner_value(sys, lam, S, x)))
                continue
            pF, pG = S.index(pair[0]), S.index(pair[1])
            corners = []
            for a in (0, 1):
                for b in (0, 1):
                    y = list(x)
                    y[pF], y[pG] = a, b
                    corners.append(_corner_value(sys, lam, S, y))
            v00, v01, v10, v11 = corners
            if not (v00 == v11 and v01 == v10 and abs(v01 - v00) == 1):
                raise MorseError(f"square {pair} of cell {cell.key} is not a saddle", cell.key)
            lo, hi = min(corners), max(corners)
            out.append(lo + center * (hi - lo))
        values[i] = tuple(out)
    return values


def build_pl_map(mx, sys, center=HALF, verify=True):
    """PL map on a MixedComplex (or on a plain Cubulation, which fails on bad squares)."""
    cx = getattr(mx, "complex", mx)
    bad = getattr(mx, "bad_pairs", frozenset())
    f = PLMap(cx, lifted_values(cx, sys, bad, center), Fraction(1), Fraction(center))
    if verify:
        f.meta["checks"] = verify_morse(f)
    return f


def affine_gradient(coords, vals):
    """Exact affine coefficients (c0, c1..cn) through the cell's slots, or None."""
    if not is_affine(coords, vals):
        return None
    return solve([[1, *p] for p in coords], list(vals))


def verify_morse(f):
    """Check the three Morse conditions cell by cell plus lift compatibility along faces.

    Raises MorseError at the first failure; returns counts of checked cells.
    """
    cx = f.complex
    checked = [0] * (cx.dim + 1)
    for i, cell in enumerate(cx.cells):
        vals = f.values[i]
        if cell.dim >= 1:
            if not is_affine(cell.coords, vals):
                raise MorseError(f"no affine extension on cell {cell.key}", cell.key)
            if len(set(vals)) == 1:
                raise MorseError(f"map constant on cell {cell.key}", cell.key)
        for fi, smap in cell.faces:
            fv = f.values[fi]
            shifts = {vals[cs] - fv[fs] for fs, cs in enumerate(smap)}
            if len(shifts) != 1:
                raise MorseError(f"face {cx[fi].key} of {cell.key} carries a different map", cell.key)
            k = shifts.pop()
            if k % f.period:
                raise MorseError(f"face lift of {cell.key} shifted by non-period {k}", cell.key)
        checked[cell.dim] += 1
    image = f.vertex_image()
    return {
        "affine": True,
        "nonconstant": True,
        "discrete_image": [str(v) for v in image],
        "cells_checked": checked,
    }
