"""Exact computations for regular graphs with connections and axial functions.

Submodules: graph, axial, morse, scalars, linalg, polys, interpolation,
cross_section, polytope, zoo, io, render, cli.
"""

__version__ = "0.1.0"
