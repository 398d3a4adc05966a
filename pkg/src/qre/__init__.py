"""Exact workbench for reflection-equation algebras, quantum spheres and
their Cayley-Hamilton identities."""

__version__ = "0.1.0"
