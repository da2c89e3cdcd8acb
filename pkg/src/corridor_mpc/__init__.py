"""Corridor-tracking MPC for multi-spacecraft on-orbit inspection.

Tracks passive relative orbits around a chief vehicle in a nearly circular
orbit while two barrier constraints (position and velocity corridors),
tightened by sampled-data margins, keep each inspector provably safe
between control samples.
"""

__version__ = "0.1.0"
