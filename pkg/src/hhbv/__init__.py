"""Exact Hochschild cohomology of group rings of finitely generated abelian
groups, with cup product, Gerstenhaber bracket, Connes operator and the
Batalin-Vilkovisky operator."""

__version__ = "0.1.0"
