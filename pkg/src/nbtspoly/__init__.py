"""Exact polytopes of bipartite correlations under no-backwards-in-time signalling."""
__version__ = "0.1.0"
