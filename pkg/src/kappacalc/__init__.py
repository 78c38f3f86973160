"""Exact intersection-theory calculations for KSBA moduli of Campedelli and Burniat surfaces."""

__version__ = "0.1.0"
