"""weylkit: exact-arithmetic verification toolkit for rank <= 3 reductive

groups: spherical pairs, multiplicity-free modules, torus fibrations over
flag manifolds, and equivariant antiholomorphic involutions."""

__version__ = "0.1.0"
