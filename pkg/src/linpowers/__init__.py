"""Betti numbers of powers of monomial ideals with linear powers, and
bounded analysis of their Rees ideals."""

__version__ = "0.1.0"
