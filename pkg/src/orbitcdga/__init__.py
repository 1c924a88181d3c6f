"""Diagrams of rational CDGAs over subgroup lattices of finite abelian groups."""

__version__ = "0.1.0"
