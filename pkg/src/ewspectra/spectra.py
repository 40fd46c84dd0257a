"""Spectrum vectors, sorting conventions, and the scalar tail summaries.

Every membership test in this package consumes eigenvalue vectors through
the helpers here, so all of them inherit the same permutation-insensitive
semantics: a spectrum is a multiset tagged with bipartite dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real eigenvalue vector of an operator on an (m, n) bipartite space.

    ``values`` has length m*n and is deliberately unordered; every consumer
    must return the same answer for any permutation of the entries and for
    either factor-order convention (see :meth:`swapped`).
    """

    values: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("spectrum values must be a 1-D real vector")
        m, n = self.dims
        m, n = int(m), int(n)
        if m < 1 or n < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        if vals.size != m * n:
            raise ValueError(
                f"expected {m * n} values for dims ({m}, {n}), got {vals.size}"
            )
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "dims", (m, n))

    @property
    def m(self) -> int:
        return self.dims[0]

    @property
    def n(self) -> int:
        return self.dims[1]

    def swapped(self) -> "Spectrum":
        """Same multiset of eigenvalues with the factor dimensions exchanged."""
        return Spectrum(self.values, (self.dims[1], self.dims[0]))

    def scaled(self, t: float) -> "Spectrum":
        return Spectrum(self.values * float(t), self.dims)


@dataclass(frozen=True, eq=False)
class SortedSpectrum(Spectrum):
    """A spectrum whose ``values`` are stored in non-increasing order."""

    def __post_init__(self):
        super().__post_init__()
        v = self.values
        if v.size > 1 and np.any(np.diff(v) > 0):
            raise ValueError("SortedSpectrum values must be non-increasing")


def sort_descending(s: Spectrum) -> SortedSpectrum:
    """Non-increasing rearrangement of ``s`` (ties keep their relative order)."""
    vals = np.sort(s.values, kind="stable")[::-1]
    return SortedSpectrum(vals, s.dims)


def descending_values(s: Spectrum | np.ndarray) -> np.ndarray:
    """Values of ``s`` sorted non-increasing, as a plain array."""
    vals = s.values if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    if isinstance(s, SortedSpectrum):
        return vals
    return np.sort(vals, kind="stable")[::-1]


def ascending_values(s: Spectrum | np.ndarray) -> np.ndarray:
    """Values of ``s`` sorted non-decreasing, as a plain array."""
    return descending_values(s)[::-1]


def partial_sums(s: Spectrum | np.ndarray) -> np.ndarray:
    """Suffix sums of the descending sort: output[k] = sum(values[k:])."""
    vals = descending_values(s)
    return np.cumsum(vals[::-1])[::-1]


def tail_sums_s123(s: Spectrum | np.ndarray) -> tuple[float, float, float]:
    """The first three suffix sums (s1, s2, s3) of the descending sort.

    s_k drops the largest k-1 entries, so s1 is the full sum.
    """
    p = partial_sums(s)
    if p.size < 3:
        raise ValueError("spectrum must have at least 3 entries for s1, s2, s3")
    return float(p[0]), float(p[1]), float(p[2])


def negative_part_sum(s: Spectrum | np.ndarray) -> float:
    """Sum of the strictly negative entries (exact zeros count as non-negative)."""
    vals = s.values if isinstance(s, Spectrum) else np.asarray(s, dtype=float)
    return float(vals[vals < 0].sum())
