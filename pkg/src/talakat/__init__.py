"""Talakat: a bullet-hell boss-level description language, deterministic
simulator, search-based evaluation agent, and Constrained MAP-Elites level
generator."""

__version__ = "0.1.0"
