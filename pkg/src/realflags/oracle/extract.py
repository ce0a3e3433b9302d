"""Numerical extraction of the triad and of dim(p0 n Ad(exp H) p1)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.linalg import expm, orth

from ..errors import ClusteringAmbiguity, DomainError, NumericallyMarginal
from ..exact import ExactVector, in_span, solve
from ..triads import PiPoint, SymmetricTriad, predicted_intersection_dimension
from .algebra import EIG_GAP, MARGINAL, RANK_TOL, SNAP_TOL, complement, restrict_nullspace
from .pairs import MatrixPair

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def generic_point(pair: MatrixPair) -> ExactVector:
    """sum_k b_k / p_k over the a-basis with distinct primes p_k."""
    q = ExactVector.zero(pair.chart_dim)
    for b, p in zip(pair.space, _PRIMES[1:]):
        q = q + Fraction(1, p) * b
    return q


def snap(x: float, max_denominator: int = 1000) -> Fraction:
    f = Fraction(x).limit_denominator(max_denominator)
    if abs(float(f) - x) > SNAP_TOL:
        raise ClusteringAmbiguity(f"value {x!r} does not snap to a rational within {SNAP_TOL}")
    return f


def _root_from_functional(pair: MatrixPair, values: np.ndarray) -> ExactVector:
    """Snap the functional values <root, b_k> and solve for the root in span(a)."""
    exact = [snap(float(v)) for v in values]
    gram = [[a.dot(b) for b in pair.space] for a in pair.space]
    coeffs = solve(gram, exact)
    root = ExactVector.zero(pair.chart_dim)
    for c, b in zip(coeffs, pair.space):
        root = root + c * b
    # exact re-verification of the snapped candidate
    assert in_span(root, pair.space)
    for b, v in zip(pair.space, values):
        if abs(float(root.dot(b)) - float(v)) > SNAP_TOL:
            raise ClusteringAmbiguity(f"snapped root {root} misses the measured value {v}")
    return root


def centralizer(pair: MatrixPair) -> np.ndarray:
    alg = pair.algebra
    ads = [alg.ad(pair.embed(b)) for b in pair.space]
    return restrict_nullspace(ads, np.eye(alg.dim))


def extract_triad(pair: MatrixPair, H: ExactVector | None = None) -> SymmetricTriad:
    """Sigma~, Sigma, W and the multiplicities m, n read off the matrix model.

    The roots come from the spectrum of ad(H)^2 on the orthogonal complement
    of the centralizer of a; theta0 theta1 splits each root block into
    eps = +1 (Sigma) and eps = -1 (W).  For a congruent pair every block is
    eps = +1 and the result is returned with W empty.
    """
    alg = pair.algebra
    H = generic_point(pair) if H is None else H
    Hm = pair.embed(H)
    adH = alg.ad(Hm)
    cent = centralizer(pair)
    V = complement(cent, np.eye(alg.dim))
    sq = V.T @ (adH @ adH) @ V
    sq = (sq + sq.T) / 2
    evals, evecs = np.linalg.eigh(sq)
    mags = np.sqrt(np.clip(-evals, 0, None))
    if (mags < EIG_GAP).any():
        raise ClusteringAmbiguity("a root vanishes on the sample point; choose a different generic H")
    order = np.argsort(mags)
    clusters: list[list[int]] = [[order[0]]]
    for i in order[1:]:
        if mags[i] - mags[clusters[-1][-1]] < EIG_GAP:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    eps_op = pair.theta0 @ pair.theta1
    ads = [alg.ad(pair.embed(b)) for b in pair.space]
    sigma, w, m, n = [], [], {}, {}
    for cl in clusters:
        spread = mags[cl].max() - mags[cl].min()
        if spread > 1e-8:
            raise ClusteringAmbiguity(
                f"eigenvalue cluster of width {spread:.2e} near {mags[cl].mean():.6f}; choose a different generic H"
            )
        E = V @ evecs[:, cl]
        aH = float(mags[cl].mean())
        values = []
        for adb in ads:
            block = E.T @ (adb @ adH) @ E
            val = -np.trace(block) / len(cl)
            if np.abs(block + val * np.eye(len(cl))).max() > 1e-8:
                raise ClusteringAmbiguity("two roots share |<root, H>|; choose a different generic H")
            values.append(val / aH)
        root = _root_from_functional(pair, np.array(values))
        if root.dot(H) <= 0:
            raise ClusteringAmbiguity("sign resolution failed")
        eps = E.T @ eps_op @ E
        ev = np.linalg.eigvalsh((eps + eps.T) / 2)
        if np.abs(np.abs(ev) - 1).max() > 1e-8:
            raise AssertionError("theta0 theta1 is not +-1 on a root block")
        plus, minus = int((ev > 0).sum()), int((ev < 0).sum())
        if plus % 2 or minus % 2:
            raise AssertionError("odd real dimension for a root block")
        for r in (root, -root):
            if plus:
                sigma.append(r)
                m[r] = plus // 2
            if minus:
                w.append(r)
                n[r] = minus // 2
    if pair.congruent:
        return SymmetricTriad.from_sets(sigma, [], m=m, n={}, space=pair.space, name="extracted")
    return SymmetricTriad.from_sets(sigma, w, m=m, n=n, space=pair.space, name="extracted")


def graded_dimension(triad: SymmetricTriad) -> int:
    """Real dimension covered by the root blocks: sum over positive roots of 2(m + n)."""
    total = sum(2 * triad.m[r] for r in triad.sigma_plus)
    total += sum(2 * triad.n[r] for r in triad.w_plus)
    return total


def adjoint_of_point(pair: MatrixPair, H: PiPoint, factor: float = 1.0) -> np.ndarray:
    """Ad(exp(factor * H)) on algebra coordinates, exponentiated in the defining representation."""
    g = expm(factor * pair.embed_point(H))
    return pair.algebra.Ad(g)


def _intersection(P0: np.ndarray, V: np.ndarray, tol: float = RANK_TOL) -> tuple[int, np.ndarray, np.ndarray]:
    M = np.hstack([P0, V])
    u, s, vt = np.linalg.svd(M)
    full = np.zeros(M.shape[1])
    full[: s.shape[0]] = s
    lo, hi = MARGINAL
    marginal = full[(full > lo) & (full < hi)]
    if marginal.size:
        raise NumericallyMarginal(f"singular value {marginal[0]:.3e} is numerically marginal; perturb H")
    null = vt[full < tol].T
    basis = orth(P0 @ null[: P0.shape[1]]) if null.shape[1] else np.zeros((P0.shape[0], 0))
    return null.shape[1], basis, full


def intersection_dimension(pair: MatrixPair, H: PiPoint) -> int:
    """dim(p0 n Ad(exp H) p1) from the singular values of [P0 | Ad P1]."""
    return intersection_space(pair, H).shape[1]


def intersection_space(pair: MatrixPair, H: PiPoint) -> np.ndarray:
    if H.ambient_dim != pair.chart_dim:
        raise DomainError(f"H has {H.ambient_dim} coordinates, chart has {pair.chart_dim}")
    P0 = pair.subspace("p0")
    P1 = pair.subspace("p1")
    V = adjoint_of_point(pair, H) @ P1
    dim, basis, _ = _intersection(P0, V)
    assert basis.shape[1] == dim
    return basis


def predicted_dimension(pair: MatrixPair, H: PiPoint) -> int:
    """The symbolic prediction, congruent or not."""
    if pair.congruent:
        R = pair.restricted
        dim = len(pair.space)
        dim += sum(R.multiplicity[r] for r in R.positive if H.pairing(r).denominator == 1)
        return dim
    return predicted_intersection_dimension(pair.triad, H)


__all__ = [
    "adjoint_of_point",
    "centralizer",
    "extract_triad",
    "generic_point",
    "graded_dimension",
    "intersection_dimension",
    "intersection_space",
    "predicted_dimension",
    "snap",
]
