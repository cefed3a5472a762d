"""Level sets of a PL circle-valued map, sliced cell by cell in exact arithmetic."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

from ..homology import ChainComplex
from .plmap import PLMap


class RegularValueError(ValueError):
    pass


def primitive_lift(f):
    """Lift f to R/dZ with d the gcd of the periods of all 1-skeleton cycles.

    Returns a new PLMap with ``period = d`` (None if f lifts to R), whose
    cell lifts agree with vertex potentials found by breadth-first search.
    """
    cx = f.complex
    if f.period is None:
        return f
    adj = {v: [] for v in cx.by_dim[0]}
    for e in cx.by_dim[1] if cx.dim >= 1 else []:
        u, w = cx[e].vertices
        inc = f.values[e][1] - f.values[e][0]
        adj[u].append((w, inc))
        adj[w].append((u, -inc))
    phi = {}
    d = 0
    for root in cx.by_dim[0]:
        if root in phi:
            continue
        phi[root] = f.values[root][0]
        stack = [root]
        while stack:
            u = stack.pop()
            for w, inc in adj[u]:
                if w not in phi:
                    phi[w] = phi[u] + inc
                    stack.append(w)
                else:
                    gap = phi[u] + inc - phi[w]
                    if gap.denominator != 1 or gap % f.period:
                        raise RegularValueError("edge lifts are not compatible with the period")
                    d = gcd(d, int(gap / f.period))
    period = f.period * d if d else None
    values = {}
    for i, cell in enumerate(cx.cells):
        vals = f.values[i]
        shift = phi[cell.vertices[0]] - vals[0]
        values[i] = tuple(v + shift for v in vals)
    g = PLMap(cx, values, period, f.center_value, {"potentials": phi})
    return g


@dataclass
class FiberComplex:
    cells: list  # (ambient cell index, level) in order
    dims: list
    faces: list  # per cell, list of fiber cell indices
    period: object
    t: Fraction
    meta: dict = field(default_factory=dict)

    def counts(self):
        top = max(self.dims, default=-1)
        return [self.dims.count(k) for k in range(top + 1)]

    def euler_characteristic(self):
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def chain_complex(self):
        counts = self.counts()
        pos, seen = {}, [0] * len(counts)
        for i, k in enumerate(self.dims):
            pos[i] = seen[k]
            seen[k] += 1
        gf2 = [[0] * counts[0]] if counts else []
        for k in range(1, len(counts)):
            gf2.append([])
        for i, k in enumerate(self.dims):
            if k == 0:
                continue
            r = 0
            for j in self.faces[i]:
                r ^= 1 << pos[j]
            gf2[k].append(r)
        return ChainComplex(counts, gf2)

    def components(self):
        parent = list(range(len(self.cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, fs in enumerate(self.faces):
            for j in fs:
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
        return len({find(i) for i in range(len(self.cells))})

    def betti(self):
        return self.chain_complex().betti("GF2")

    def summary(self):
        b = self.betti()
        return {
            "t": str(self.t),
            "period": None if self.period is None else str(self.period),
            "counts": self.counts(),
            "pi0": self.components(),
            "betti_gf2": b,
            "euler_from_counts": self.euler_characteristic(),
            "euler_from_betti": sum((-1) ** k * x for k, x in enumerate(b)),
        }


def _levels(lo, hi, t, period):
    if period is None:
        return [t] if lo < t < hi else []
    n0 = ceil((lo - t) / period)
    n1 = floor((hi - t) / period)
    out = [t + n * period for n in range(n0, n1 + 1)]
    return [y for y in out if lo < y < hi]


def level_set(f, t=Fraction(1, 4)):
    """Slice every cell of positive dimension by ``f = t`` (mod the period)."""
    cx = f.complex
    t = Fraction(t)
    for v in cx.by_dim[0]:
        x = f.values[v][0]
        if (x == t) if f.period is None else ((x - t) % f.period == 0):
            raise RegularValueError(f"t = {t} is the value of vertex {cx[v].key}")
    index = {}
    order = []
    for k in range(1, cx.dim + 1):
        for i in cx.by_dim[k]:
            vals = f.values[i]
            for y in _levels(min(vals), max(vals), t, f.period):
                index[(i, y)] = len(order)
                order.append((i, y))
    faces = []
    for i, y in order:
        vals = f.values[i]
        out = []
        for fi, smap in cx[i].faces:
            fv = f.values[fi]
            if cx[fi].dim == 0:
                continue
            k = vals[smap[0]] - fv[0]
            j = index.get((fi, y - k))
            if j is not None:
                out.append(j)
        faces.append(out)
    dims = [cx[i].dim - 1 for i, _ in order]
    return FiberComplex(order, dims, faces, f.period, t)


def slice_vertices(f, i, y):
    """Exact points (in cell i's frame) where the edges of cell i cross level y."""
    cx = f.complex
    cell = cx[i]
    vals = f.values[i]
    pts = []
    for a, b in sorted(cx.edge_slot_pairs(i)):
        va, vb = vals[a], vals[b]
        if min(va, vb) < y < max(va, vb):
            s = (y - va) / (vb - va)
            pa, pb = cell.coords[a], cell.coords[b]
            pts.append(tuple(Fraction(p) + s * (Fraction(q) - Fraction(p)) for p, q in zip(pa, pb)))
    return sorted(pts)


def fiber_to_dict(fib, f, coordinates=False):
    cx = f.complex
    cells = []
    for n, (i, y) in enumerate(fib.cells):
        entry = {"id": n, "dim": fib.dims[n], "ambient": repr(cx[i].key), "level": str(y), "faces": fib.faces[n]}
        if coordinates:
            entry["vertices"] = [[str(c) for c in p] for p in slice_vertices(f, i, y)]
        cells.append(entry)
    return {"summary": fib.summary(), "cells": cells}
