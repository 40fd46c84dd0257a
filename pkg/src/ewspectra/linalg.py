"""Dense Hermitian linear algebra on bipartite operators.

The composite index convention is fixed throughout the package: row index
r = i*n + k for factor indices i in [0, m) and k in [0, n) (row-major on
the first factor).  Randomness always flows through an explicit seed or
:class:`numpy.random.Generator`; the generator algorithm is numpy's PCG64,
so sampled datasets reproduce across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-9


def _herm_residual(a: np.ndarray) -> float:
    return float(np.abs(a - a.conj().T).max())


@dataclass(frozen=True, eq=False)
class BipartiteOperator:
    """Complex Hermitian matrix on C^m (x) C^n with declared factor dims."""

    entries: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        m, n = int(self.dims[0]), int(self.dims[1])
        if m < 1 or n < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        d = m * n
        if a.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix for dims ({m}, {n})")
        scale = max(1.0, float(np.abs(a).max()) if a.size else 1.0)
        if _herm_residual(a) > HERMITICITY_TOL * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "dims", (m, n))

    @property
    def m(self) -> int:
        return self.dims[0]

    @property
    def n(self) -> int:
        return self.dims[1]

    def as_tensor(self) -> np.ndarray:
        """View as a (m, n, m, n) tensor indexed [i, k, j, l]."""
        m, n = self.dims
        return self.entries.reshape(m, n, m, n)


def partial_transpose(op: BipartiteOperator) -> BipartiteOperator:
    """Transpose on the second tensor factor only (an involution)."""
    t = op.as_tensor()
    m, n = op.dims
    out = t.transpose(0, 3, 2, 1).reshape(m * n, m * n)
    return BipartiteOperator(out, op.dims)


def eigvals_hermitian(a: BipartiteOperator | np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian (or real symmetric) matrix, descending.

    Raises ValueError when the symmetry residual exceeds tolerance.
    """
    mat = a.entries if isinstance(a, BipartiteOperator) else np.asarray(a)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("expected a square matrix")
    scale = max(1.0, float(np.abs(mat).max()) if mat.size else 1.0)
    if _herm_residual(mat) > HERMITICITY_TOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    vals = np.linalg.eigvalsh((mat + mat.conj().T) / 2)
    return vals[::-1]


def min_eig(s: np.ndarray | BipartiteOperator) -> float:
    """Smallest eigenvalue of a Hermitian/symmetric matrix."""
    return float(eigvals_hermitian(s)[-1])


def is_psd(s: np.ndarray | BipartiteOperator, tol: float = PSD_TOL) -> bool:
    return min_eig(s) >= -tol


def psd_project(s: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) positive semidefinite matrix to a symmetric input."""
    a = np.asarray(s)
    sym = (a + a.conj().T) / 2
    vals, vecs = np.linalg.eigh(sym)
    clipped = np.clip(vals, 0.0, None)
    out = (vecs * clipped) @ vecs.conj().T
    out = (out + out.conj().T) / 2
    if not np.iscomplexobj(a):
        out = out.real
    return out


def random_psd(d: int, rank: int, rng: int | np.random.Generator) -> np.ndarray:
    """Random complex PSD matrix G @ G^dagger with G a d x rank standard
    complex Gaussian matrix (Wishart-style, unitarily invariant)."""
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    gen = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    g = (gen.standard_normal((d, rank)) + 1j * gen.standard_normal((d, rank))) / np.sqrt(2)
    w = g @ g.conj().T
    return (w + w.conj().T) / 2


def kron_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product vector a (x) b in the composite index convention."""
    return np.kron(np.asarray(a), np.asarray(b))
