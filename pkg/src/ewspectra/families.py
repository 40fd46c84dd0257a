"""Built-in one-parameter spectrum families used by the CLI and tests."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .spectra import Spectrum

GOLDEN = (1 + np.sqrt(5)) / 2


def double_pair_23(c: float) -> Spectrum:
    """((1+sqrt 5)/2, (1+sqrt 5)/2, 1, 1, c, c) on dims (2, 3)."""
    return Spectrum([GOLDEN, GOLDEN, 1.0, 1.0, c, c], (2, 3))


def flat_band_33(c: float) -> Spectrum:
    """(1, 1, 1, 1, 1, 1, -1, -1, c) on dims (3, 3)."""
    return Spectrum([1, 1, 1, 1, 1, 1, -1, -1, c], (3, 3))


# name -> (builder, membership mode that the family's threshold refers to)
FAMILIES: dict[str, tuple[Callable[[float], Spectrum], str]] = {
    "example-4.2": (double_pair_23, "conv2n"),
    "example-5.3": (flat_band_33, "convdbp"),
}
