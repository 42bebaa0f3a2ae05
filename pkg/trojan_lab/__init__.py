"""
Numerical laboratory for Trojan, Hildan and semi-classical orbit mechanics.

The computational core lives in trojan_lab.mechanics; this package adds the
command line, run configuration and table emitters.
"""

from .const import VERSION

__version__ = VERSION
