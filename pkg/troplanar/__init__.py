"""Tropical planarity toolkit: lattice polygons, unimodular triangulations,
skeletons of smooth tropical plane curves and the genus <= 6 classifier."""

__version__ = "0.1.0"
