"""Circle-valued Morse maps on a cubulated hyperbolic 5-manifold built from colored copies of a right-angled polytope."""

__version__ = "0.1.0"
