"""Gonality upper bounds for Noether-problem quotient varieties of finite abelian groups."""

__version__ = "0.1.0"
