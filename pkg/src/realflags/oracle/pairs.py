"""Concrete commuting involution pairs on su(m) and their abelian subspaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError
from ..exact import ExactVector
from ..flags import PairCatalogueEntry, catalogue_entry
from ..rootsys import RootSystem, build_root_system
from ..triads import PiPoint, SymmetricTriad, direct_sum
from .algebra import IDENTITY_TOL, RealLieAlgebra, bracket, complement, restrict_nullspace


@dataclass
class MatrixPair:
    """su(m) (or a block sum) with two involutions and a chart of a.

    ``a_chart[k]`` is the matrix of the k-th chart unit vector; the chart inner
    product is ``metric_scale`` times the standard dot product.  Roots are read
    as functionals through the standard dot product, so the element of a dual
    to a root ``l`` is ``l / metric_scale``.  ``torus_frame`` conjugates the
    diagonal torus onto a maximal torus containing a.
    """

    name: str
    size: int
    algebra: RealLieAlgebra
    theta0: np.ndarray
    theta1: np.ndarray
    theta0_fn: Callable[[np.ndarray], np.ndarray]
    theta1_fn: Callable[[np.ndarray], np.ndarray]
    a_chart: np.ndarray
    space: tuple[ExactVector, ...]
    metric_scale: Fraction
    triad: SymmetricTriad | None = None
    restricted: RootSystem | None = None
    entry: PairCatalogueEntry | None = None
    torus_frame: np.ndarray | None = None

    @property
    def congruent(self) -> bool:
        return self.restricted is not None

    @property
    def chart_dim(self) -> int:
        return self.a_chart.shape[0]

    def embed(self, v) -> np.ndarray:
        """Matrix of a chart vector (no factor pi)."""
        c = np.array([float(x) for x in v], dtype=float)
        if c.shape[0] != self.chart_dim:
            raise DomainError(f"{self.name}: chart vectors have {self.chart_dim} coordinates, got {c.shape[0]}")
        return np.tensordot(c, self.a_chart, axes=1)

    def embed_point(self, H: PiPoint) -> np.ndarray:
        return np.pi * self.embed(H.q)

    def root_matrix(self, root: ExactVector) -> np.ndarray:
        """The element of a metrically dual to ``root``."""
        return self.embed(root / self.metric_scale)

    def torus_matrix(self, v: ExactVector) -> np.ndarray:
        d = np.diag(1j * np.array([float(x) for x in v]))
        U = self.torus_frame
        return U @ d @ U.conj().T

    def a_basis(self) -> np.ndarray:
        """Orthonormal coordinate columns spanning a."""
        cols = np.array([self.algebra.coords(self.embed(b)) for b in self.space]).T
        q, _ = np.linalg.qr(cols)
        return q

    def subspace(self, label: str) -> np.ndarray:
        """Orthonormal coordinate basis of k0, p0, k1, p1 or their intersections ('p0&p1')."""
        signs = {"k": 1.0, "p": -1.0}
        parts = label.split("&")
        basis = np.eye(self.algebra.dim)
        for part in parts:
            theta = self.theta0 if part[1] == "0" else self.theta1
            ops = [theta - signs[part[0]] * np.eye(self.algebra.dim)]
            basis = restrict_nullspace(ops, basis)
        return basis


def _involution_matrix(alg: RealLieAlgebra, f) -> np.ndarray:
    return alg.linear_map(f)


def _finish(pair: MatrixPair) -> MatrixPair:
    alg = pair.algebra
    a = pair.a_basis()
    mats = [alg.matrix(c) for c in a.T]
    for X in mats:
        for Y in mats:
            if np.linalg.norm(bracket(X, Y)) > 1e-10:
                raise AssertionError(f"{pair.name}: a is not abelian")
    p01 = pair.subspace("p0&p1")
    if np.linalg.norm(a - p01 @ (p01.T @ a)) > 1e-10:
        raise AssertionError(f"{pair.name}: a is not inside p0 n p1")
    rest = complement(a, p01)
    if rest.shape[1]:
        ads = [alg.ad(X) for X in mats]
        central = restrict_nullspace(ads, rest)
        if central.shape[1]:
            raise AssertionError(f"{pair.name}: a is not maximal abelian in p0 n p1")
    return pair


def _conj(X):
    return X.conj()


def build_pair(name: str, n: int) -> MatrixPair:
    """Matrix model of a catalogue pair, or ``su-n-so-congruent`` (theta1 = theta0)."""
    if name == "su-n-so-congruent":
        return _congruent(n)
    entry = catalogue_entry(name, n)
    if name == "su2n-so-sp":
        m = 2 * n
        alg = RealLieAlgebra.su(m)
        J = np.block([[np.zeros((n, n)), -np.eye(n)], [np.eye(n), np.zeros((n, n))]])
        Jinv = np.linalg.inv(J)

        def theta1(X):
            return Jinv @ X.conj() @ J

        chart = []
        for k in range(n):
            d = np.zeros((m, m), dtype=complex)
            d[k, k] = d[n + k, n + k] = 1j
            chart.append(d)
        frame = np.eye(m, dtype=complex)
        scale = Fraction(1)
    else:
        m = n
        alg = RealLieAlgebra.su(m)
        I1 = np.diag([1.0] + [-1.0] * (m - 1))

        def theta1(X):
            return I1 @ X @ I1

        d = np.zeros((m, m), dtype=complex)
        d[0, 1] = d[1, 0] = 1j
        chart = [d]
        frame = np.eye(m, dtype=complex)
        frame[:2, :2] = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        scale = Fraction(1)
    pair = MatrixPair(
        name, n, alg,
        _involution_matrix(alg, _conj), _involution_matrix(alg, theta1), _conj, theta1,
        np.array(chart), entry.triad.a_basis, scale, triad=entry.triad, entry=entry, torus_frame=frame,
    )
    return _finish(pair)


def _congruent(n: int) -> MatrixPair:
    """(SU(n), SO(n)) with theta1 = theta0; a is the diagonal, R = A_{n-1}."""
    if n < 2:
        raise DomainError("su-n-so-congruent needs n >= 2")
    alg = RealLieAlgebra.su(n)
    chart = []
    for k in range(n):
        d = np.zeros((n, n), dtype=complex)
        d[k, k] = 1j
        chart.append(d)
    space = tuple(ExactVector.unit(n, i) - ExactVector.unit(n, i + 1) for i in range(n - 1))
    theta = _involution_matrix(alg, _conj)
    pair = MatrixPair(
        "su-n-so-congruent", n, alg, theta, theta.copy(), _conj, _conj, np.array(chart), space,
        Fraction(1, 2), restricted=build_root_system("A", n - 1), torus_frame=np.eye(n, dtype=complex),
    )
    return _finish(pair)


def direct_sum_pairs(pairs: Sequence[MatrixPair]) -> MatrixPair:
    """Block-diagonal sum of non-congruent pairs with a common chart metric."""
    pairs = list(pairs)
    if not pairs or any(p.congruent or p.triad is None for p in pairs):
        raise DomainError("direct sums need at least one non-congruent pair")
    if len({p.metric_scale for p in pairs}) != 1:
        raise DomainError("factors must share one chart metric")
    alg = RealLieAlgebra.direct_sum([p.algebra for p in pairs])
    total = alg.size
    offsets = np.cumsum([0] + [p.algebra.size for p in pairs])
    chart_total = sum(p.chart_dim for p in pairs)

    def blockwise(attr):
        def f(X):
            out = np.zeros_like(X)
            for p, o in zip(pairs, offsets):
                s = slice(o, o + p.algebra.size)
                out[s, s] = getattr(p, attr)(X[s, s])
            return out
        return f

    chart, space = [], []
    coff = 0
    for p, o in zip(pairs, offsets):
        for A in p.a_chart:
            big = np.zeros((total, total), dtype=complex)
            big[o:o + p.algebra.size, o:o + p.algebra.size] = A
            chart.append(big)
        for b in p.space:
            space.append(ExactVector([0] * coff + list(b.coords) + [0] * (chart_total - coff - b.ambient_dim)))
        coff += p.chart_dim
    frame = np.zeros((total, total), dtype=complex)
    for p, o in zip(pairs, offsets):
        frame[o:o + p.algebra.size, o:o + p.algebra.size] = p.torus_frame
    t0, t1 = blockwise("theta0_fn"), blockwise("theta1_fn")
    pair = MatrixPair(
        "+".join(f"{p.name}[{p.size}]" for p in pairs), 0, alg,
        alg.linear_map(t0), alg.linear_map(t1), t0, t1, np.array(chart), tuple(space),
        pairs[0].metric_scale, triad=direct_sum([p.triad for p in pairs]), torus_frame=frame,
    )
    return _finish(pair)


def involution_residuals(pair: MatrixPair) -> dict[str, float]:
    """theta_i^2 = 1, isometry, bracket preservation, and commutation residuals."""
    alg = pair.algebra
    eye = np.eye(alg.dim)
    out = {}
    for label, T, f in (("theta0", pair.theta0, pair.theta0_fn), ("theta1", pair.theta1, pair.theta1_fn)):
        out[f"{label}^2 = id"] = float(np.abs(T @ T - eye).max())
        out[f"{label} isometry"] = float(np.abs(T.T @ T - eye).max())
        worst = 0.0
        for X in alg.basis:
            for Y in alg.basis:
                worst = max(worst, float(np.abs(f(bracket(X, Y)) - bracket(f(X), f(Y))).max()))
        out[f"{label} automorphism"] = worst
    out["theta0 theta1 = theta1 theta0"] = float(np.abs(pair.theta0 @ pair.theta1 - pair.theta1 @ pair.theta0).max())
    return out


def is_commuting(pair: MatrixPair) -> bool:
    return involution_residuals(pair)["theta0 theta1 = theta1 theta0"] < IDENTITY_TOL


__all__ = ["MatrixPair", "build_pair", "direct_sum_pairs", "involution_residuals", "is_commuting"]
