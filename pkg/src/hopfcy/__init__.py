"""Exact Calabi-Yau decisions for pointed Hopf algebras of finite Cartan
type, their cocycle deformations, cleft objects, and crossed products."""

__version__ = "0.1.0"
