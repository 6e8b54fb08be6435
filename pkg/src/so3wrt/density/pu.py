"""Projective unitary utilities."""

from __future__ import annotations

import numpy as np

UNITARY_TOL = 1e-9


class NotUnitaryError(ValueError):
    pass


def _check_unitary(U: np.ndarray, name: str) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"{name} must be a square matrix")
    dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if dev >= UNITARY_TOL:
        raise NotUnitaryError(f"{name} is not unitary (deviation {dev:.2e})")
    return U


def pu_distance(U, V) -> float:
    """min over phases of |e^{ia}U - e^{ib}V| (Frobenius) = sqrt(2n - 2|tr(U*V)|)."""
    U = _check_unitary(U, "U")
    V = _check_unitary(V, "V")
    if U.shape != V.shape:
        raise ValueError(f"dimension mismatch: {U.shape} vs {V.shape}")
    n = U.shape[0]
    return float(np.sqrt(max(0.0, 2 * n - 2 * abs(np.trace(U.conj().T @ V)))))


def pu_distance_grid(U, V, samples: int = 10**6, chunk: int = 1 << 16) -> float:
    """Brute-force oracle: minimize the Frobenius norm |U - e^{it}V| over a uniform grid of t."""
    U = np.asarray(U, dtype=complex).ravel()
    V = np.asarray(V, dtype=complex).ravel()
    if U.shape != V.shape:
        raise ValueError("dimension mismatch")
    best = np.inf
    for start in range(0, samples, chunk):
        t = 2 * np.pi * np.arange(start, min(samples, start + chunk)) / samples
        d = U[None, :] - np.exp(1j * t)[:, None] * V[None, :]
        best = min(best, float((d.real ** 2 + d.imag ** 2).sum(axis=1).min()))
    return float(np.sqrt(best))


def permute_conjugate(U, i: int, j: int) -> np.ndarray:
    """P^-1 U P for the transposition P swapping basis vectors i and j."""
    U = np.asarray(U)
    n = U.shape[0]
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices ({i}, {j}) out of range for dimension {n}")
    perm = np.arange(n)
    perm[[i, j]] = perm[[j, i]]
    return U[np.ix_(perm, perm)]


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with phase correction."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
