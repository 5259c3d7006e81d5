"""Realize finitely generated abelian groups as class groups of elliptic Dedekind domains."""

__version__ = "0.1.0"
