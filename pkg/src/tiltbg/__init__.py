"""tiltbg: exact numerical invariants of tilt stability on polarized
threefolds, with certified Bogomolov-Gieseker type inequality checks
specialized to Fano threefolds."""

__version__ = "0.1.0"
