"""Brauer configuration toolkit: configurations from ciphertexts, music
scores or raw polygon lists, their quiver invariants, classical ciphers
with the coincidence-index attack, and note-point diagrams."""

__version__ = "0.1.0"
