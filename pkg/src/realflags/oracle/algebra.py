"""Compact matrix Lie algebras as real vector spaces with -1/2 tr(XY)."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy.linalg import orth

# Global tolerances.
EIG_GAP = 1e-4
SNAP_TOL = 1e-6
RANK_TOL = 1e-8
IDENTITY_TOL = 1e-12
MARGINAL = (1e-9, 1e-7)


def inner(X: np.ndarray, Y: np.ndarray) -> float:
    return float(-0.5 * np.trace(X @ Y).real)


def bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def su_basis(m: int) -> list[np.ndarray]:
    """Orthonormal basis of su(m) for -1/2 tr(XY)."""
    out = []
    for j in range(m):
        for k in range(j + 1, m):
            e = np.zeros((m, m), dtype=complex)
            e[j, k], e[k, j] = 1, -1
            out.append(e)
            f = np.zeros((m, m), dtype=complex)
            f[j, k] = f[k, j] = 1j
            out.append(f)
    for k in range(1, m):
        h = np.zeros(m)
        h[:k] = 1
        h[k] = -k
        h *= np.sqrt(2.0 / (k * (k + 1)))
        out.append(np.diag(1j * h))
    return out


class RealLieAlgebra:
    """A real Lie algebra of m x m skew-Hermitian matrices with an orthonormal basis."""

    def __init__(self, basis: Sequence[np.ndarray], name: str = ""):
        self.basis = np.array(basis, dtype=complex)
        self.name = name
        self.dim, self.size = self.basis.shape[0], self.basis.shape[1]
        # -1/2 Re tr(X B_k) = -1/2 Re sum_ij X_ij (B_k)_ji
        self._dual = -0.5 * self.basis.transpose(0, 2, 1).reshape(self.dim, -1)
        gram = self.coords_many(self.basis)
        if not np.allclose(gram, np.eye(self.dim), atol=1e-12):
            raise ValueError("basis is not orthonormal for -1/2 tr(XY)")

    @classmethod
    def su(cls, m: int) -> "RealLieAlgebra":
        return cls(su_basis(m), f"su({m})")

    @classmethod
    def direct_sum(cls, parts: Sequence["RealLieAlgebra"]) -> "RealLieAlgebra":
        total = sum(p.size for p in parts)
        basis, off = [], 0
        for p in parts:
            for b in p.basis:
                big = np.zeros((total, total), dtype=complex)
                big[off:off + p.size, off:off + p.size] = b
                basis.append(big)
            off += p.size
        return cls(basis, "+".join(p.name for p in parts))

    def coords(self, X: np.ndarray) -> np.ndarray:
        return (self._dual @ X.reshape(-1)).real

    def coords_many(self, Xs: np.ndarray) -> np.ndarray:
        """Columns are the coordinates of the stacked matrices."""
        Xs = np.asarray(Xs)
        return (self._dual @ Xs.reshape(Xs.shape[0], -1).T).real

    def matrix(self, c: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(c, dtype=float), self.basis, axes=1)

    def ad(self, X: np.ndarray) -> np.ndarray:
        return self.coords_many(np.array([bracket(X, b) for b in self.basis]))

    def linear_map(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return self.coords_many(np.array([f(b) for b in self.basis]))

    def Ad(self, g: np.ndarray) -> np.ndarray:
        ginv = np.linalg.inv(g)
        return self.coords_many(g @ self.basis @ ginv)


def intersect(U: np.ndarray, V: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of span(U) n span(V) for orthonormal column blocks."""
    if U.shape[1] == 0 or V.shape[1] == 0:
        return np.zeros((U.shape[0], 0))
    u, s, vt = np.linalg.svd(U.T @ V)
    keep = s > 1 - tol
    if not keep.any():
        return np.zeros((U.shape[0], 0))
    return orth(U @ u[:, keep])


def complement(U: np.ndarray, inside: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(U) inside span(inside)."""
    if U.shape[1] == 0:
        return inside
    proj = inside - U @ (U.T @ inside)
    if proj.size == 0:
        return proj
    u, s, _ = np.linalg.svd(proj, full_matrices=False)
    return u[:, s > 1e-8]


def restrict_nullspace(ops: Sequence[np.ndarray], inside: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis of {v in span(inside) : op v = 0 for every op}."""
    if inside.shape[1] == 0:
        return inside
    stacked = np.vstack([op @ inside for op in ops])
    # absolute threshold: the ops are O(1), and a relative one breaks when stacked ~ 0
    _, s, vt = np.linalg.svd(stacked)
    full = np.zeros(inside.shape[1])
    full[: s.shape[0]] = s
    coeff = vt[full < tol].T
    if coeff.shape[1] == 0:
        return np.zeros((inside.shape[0], 0))
    return orth(inside @ coeff)
