"""Quantum-optical back-action of above-threshold ionization (desk-scale simulator)."""

__version__ = "0.1.0"
