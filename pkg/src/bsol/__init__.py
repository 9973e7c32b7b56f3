"""Exact engine for Bulgarian solitaire orbits and their rational limits."""

__version__ = "0.1.0"
