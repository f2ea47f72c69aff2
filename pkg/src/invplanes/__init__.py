"""Exact two-dimensional invariant subspaces and super-eigenvalues."""

from .field import GF, QQ, Field, FieldElement, FieldError, QSqrt

__version__ = "0.1.0"
