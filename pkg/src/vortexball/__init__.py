"""Oscillating-viscosity vortices, vortex balls, spinor drive and a continued-fraction moment."""

__version__ = "0.1.0"
