"""physkit: numerical toolkit for the standard methods of mathematical physics.

Subpackages are imported lazily by name::

    from physkit import specfun, fuchsia, greens, divsum, harmonic
    from physkit import distrib, contour, finhilb
"""

__version__ = "0.1.0"

__all__ = [
    "specfun",
    "fuchsia",
    "greens",
    "divsum",
    "harmonic",
    "distrib",
    "contour",
    "finhilb",
    "errors",
]
