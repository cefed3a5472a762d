"""Small complexes with known answers: tori, single cubes, and linear maps on them."""
from __future__ import annotations

from fractions import Fraction

from .complexes import grid_torus, standard_cube, torus_complex
from .morse.plmap import PLMap


def linear_values(cx, weights, frame):
    """Slot values of ``x -> sum w_j x_j``; ``frame(key)`` gives (offset, labels) of the cell."""
    values = {}
    for i, cell in enumerate(cx.cells):
        offset, labels = frame(cell.key)
        values[i] = tuple(
            Fraction(offset) + sum(Fraction(weights[lab]) * x for lab, x in zip(labels, p))
            for p in cell.coords
        )
    return values


def torus(n):
    """One-vertex cubulation of the n-torus."""
    return torus_complex(n)


def torus_map(n, weights=None):
    """f = sum w_j x_j as a map to R/Z on the one-vertex n-torus (default all weights 1)."""
    cx = torus_complex(n)
    weights = weights or [1] * n
    return PLMap(cx, linear_values(cx, weights, lambda key: (0, key)), Fraction(1))


def grid_torus_map(n, size, weights=None):
    cx = grid_torus(n, size)
    weights = weights or [1] * n

    def frame(key):
        base, labels = key
        return sum(Fraction(w) * b for w, b in zip(weights, base)), labels

    return PLMap(cx, linear_values(cx, weights, frame), Fraction(1))


def cube(k):
    return standard_cube(k)


def cube_map(k, weights=None):
    """f = sum w_j x_j on [0,1]^k, real valued (no period)."""
    cx = standard_cube(k)
    weights = weights or [1] * k

    def frame(key):
        fixed, free = key
        return sum(Fraction(weights[lab]) * w for lab, w in fixed), free

    return PLMap(cx, linear_values(cx, weights, frame), None)


FIXTURES = {
    "T2": lambda: torus_map(2),
    "T4": lambda: torus_map(4),
    "cube2": lambda: cube_map(2),
    "cube3": lambda: cube_map(3),
    "cube5": lambda: cube_map(5),
}
