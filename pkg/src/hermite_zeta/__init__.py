"""Hurwitz zeta via Hermite's integral, with executable identity checks."""
