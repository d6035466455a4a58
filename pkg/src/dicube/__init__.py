"""Finite cubical sets over the symmetric cube category.

Combinatorial models of directed spaces: finite distributive lattices and
their edgewise subdivision, the symmetric cube category, truncated cubical
sets, fundamental category presentations, and directed homotopy invariants
(connected components, loop monoids, monoid-valued 1-cohomology, directed
homotopy classes of maps), each backed by independent brute-force oracles.
"""

__version__ = "0.1.0"
