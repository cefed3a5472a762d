"""Vertex links of the subdivided complex and their ascending / descending parts.

Every corner of a cube, of a triangle x cube or of a segment x cube is
simple, so a corner contributes one simplex spanned by its emanating edges;
link vertices are edge corners ``(edge, slot)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..complexes import corner_simplex, corners_by_vertex


@dataclass
class LinkComplex:
    vertex: int
    labels: tuple  # link vertex id -> (edge index, slot)
    simplices: frozenset  # every link simplex (one per corner), as sorted tuples of ids
    up: frozenset
    down: frozenset

    def ascending(self):
        """Full subcomplex on the edges along which f increases (f attains its minimum at v)."""
        return frozenset(s for s in self.simplices if all(x in self.up for x in s))

    def descending(self):
        return frozenset(s for s in self.simplices if all(x in self.down for x in s))

    def classify(self, s):
        if all(x in self.up for x in s):
            return "ascending"
        if all(x in self.down for x in s):
            return "descending"
        return "neither"


def all_corners(cx):
    return corners_by_vertex(cx)


def vertex_link(cx, f, v, corners):
    simplices = [corner_simplex(cx, i, s) for i, s in corners]
    labels = tuple(sorted({e for s in simplices for e in s}))
    ids = {e: k for k, e in enumerate(labels)}
    up = frozenset(ids[e] for e in labels if f.up(*e))
    down = frozenset(ids[e] for e in labels if not f.up(*e))
    return LinkComplex(
        v, labels, frozenset(tuple(sorted(ids[e] for e in s)) for s in simplices), up, down
    )


def ascending_link(cx, f, v, corners=None):
    if corners is None:
        corners = corners_by_vertex(cx)[v]
    return vertex_link(cx, f, v, corners).ascending()


def descending_link(cx, f, v, corners=None):
    if corners is None:
        corners = corners_by_vertex(cx)[v]
    return vertex_link(cx, f, v, corners).descending()
