"""Witness-producing constructions for oriented-cycle subdivisions in
chromatic digraphs, with brute-force cross-checks."""

__version__ = "0.1.0"
