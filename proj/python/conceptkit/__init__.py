"""Executable models of concepts: lattices, similarity spaces, manifolds and group invariance."""

from ._conceptkit import *  # noqa: F401,F403

__version__ = "0.1.0"
