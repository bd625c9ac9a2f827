"""Explicit descent via 4-isogeny on v^2 = u^3 + (t^2+2)u^2 + u."""

__version__ = "0.1.0"
