"""Shared generators and independent oracles for the test suite."""

from __future__ import annotations

import numpy as np

from ewspectra.appt import is_appt
from ewspectra.spectra import Spectrum


def random_admissible_22(rng: np.random.Generator, include_boundary: bool = True) -> np.ndarray:
    """Random 4-vector satisfying the three two-qubit inequalities."""
    top = np.sort(np.abs(rng.standard_normal(3)) * rng.uniform(0.5, 3.0))[::-1]
    mu1, mu2, mu3 = top
    lo = max(-mu2, -np.sqrt(mu1 * mu3))
    if include_boundary and rng.random() < 0.15:
        mu4 = lo
    else:
        mu4 = rng.uniform(lo, mu3)
    vals = np.array([mu1, mu2, mu3, mu4])
    return rng.permutation(vals)


def random_appt_spectrum(rng: np.random.Generator, dims: tuple[int, int]) -> np.ndarray:
    """Random absolutely-PPT state spectrum, by mixing toward uniform."""
    mn = dims[0] * dims[1]
    lam = np.sort(rng.dirichlet(np.ones(mn)))[::-1]
    uniform = np.full(mn, 1.0 / mn)
    if is_appt(Spectrum(lam, dims)):
        return lam
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = (lo + hi) / 2
        if is_appt(Spectrum((1 - mid) * lam + mid * uniform, dims)):
            hi = mid
        else:
            lo = mid
    out = (1 - hi) * lam + hi * uniform
    assert is_appt(Spectrum(out, dims))
    return out


def all_linear_extensions(m: int):
    """Every linear extension of the product dominance order, unfiltered."""
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i, m + 1)]
    preds = {
        q: [p for p in pairs if p != q and p[0] <= q[0] and p[1] <= q[1]]
        for q in pairs
    }
    placed: list[tuple[int, int]] = []
    placed_set: set[tuple[int, int]] = set()

    def extend():
        if len(placed) == len(pairs):
            yield tuple(placed)
            return
        for q in pairs:
            if q in placed_set:
                continue
            if all(p in placed_set for p in preds[q]):
                placed.append(q)
                placed_set.add(q)
                yield from extend()
                placed.pop()
                placed_set.remove(q)

    yield from extend()


def charpoly_sign(a: np.ndarray, t: float) -> float:
    """Sign of det(A - t I), an eigensolver-independent locator."""
    d = a.shape[0]
    sign, logdet = np.linalg.slogdet(a - t * np.eye(d))
    return float(sign)
