"""Effectus theory at desk scale: effect algebras, three model categories,
their logic, measurement and duality layers, and executable law suites."""
__version__ = "0.1.0"
