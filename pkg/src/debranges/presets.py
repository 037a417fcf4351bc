"""Ready-made generators so every demonstration run is one command.

``pw``   exp(-1j*pi*z)        constant kernel diagonal (cardinal-series case)
``pw2``  exp(-2j*pi*z)        the product pw*pw
``poly`` (z + 1j)*exp(-1j*pi*z)  one lower half-plane root; phi' = pi + 1/(x^2+1)

Pairs for product-space work: ``pw`` is the self-paired cardinal case whose
product nodes at alpha = 0 are the half-integers; ``poly`` pairs the root
case with the pure exponential and satisfies phi'_F <= phi'_E on the line.
"""

import math

from .hb import HermiteBiehlerFunction

__all__ = ["PRESETS", "PRESET_PAIRS", "preset_hb", "preset_pair"]

_PW = HermiteBiehlerFunction(exp_coefficient=math.pi)
_PW2 = HermiteBiehlerFunction(exp_coefficient=2.0 * math.pi)
_POLY = HermiteBiehlerFunction(exp_coefficient=math.pi, roots=(-1j,))

PRESETS = {"pw": _PW, "pw2": _PW2, "poly": _POLY}

PRESET_PAIRS = {"pw": (_PW, _PW), "poly": (_POLY, _PW)}


def preset_hb(name):
    """Single generator by preset name; KeyError lists the known names."""
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; known presets: {sorted(PRESETS)}"
        ) from None


def preset_pair(name):
    """(E, F) pair by preset name; KeyError lists the known names."""
    try:
        return PRESET_PAIRS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset pair {name!r}; known pairs: {sorted(PRESET_PAIRS)}"
        ) from None
