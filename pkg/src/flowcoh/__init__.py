"""Flow-polytope volumes, Kostant partition functions and the cohomology of
special multiple weight varieties, in exact rational arithmetic."""

__version__ = "0.1.0"
