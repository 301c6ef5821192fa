"""Exact homological algebra for cochain complexes of finitely generated abelian groups."""

__version__ = "0.1.0"
