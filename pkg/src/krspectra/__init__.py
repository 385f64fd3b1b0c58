"""Kirillov-Reshetikhin crystals, exact commuting families, and wall spectra."""

__version__ = "0.1.0"
