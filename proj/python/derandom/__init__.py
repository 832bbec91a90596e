"""Uniform splitters, bisectors, mapping families, and universal sets.

Thin wrapper around the compiled ``_derandom`` extension; every construction
returns a ``Family`` whose validity can be re-checked with the ``verify_*``
oracles.
"""

from ._derandom import *  # noqa: F401,F403
