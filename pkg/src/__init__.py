"""Attribute Autonomy Sim - Seeded simulation of an agent autonomous with regard to its attributes."""

__version__ = "0.1.0"
