"""Certification reports: each check records a residual, its threshold and the verdict."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import expm, polar

from ..errors import DomainError, NumericallyMarginal
from ..exact import ExactVector
from ..flags import BasePoint
from ..triads import (
    PiPoint,
    _is_int,
    fundamental_cell,
    gamma_contains,
    is_regular,
    st_point,
    st_point_direct_sum,
)
from .algebra import bracket, restrict_nullspace
from .extract import (
    adjoint_of_point,
    centralizer,
    extract_triad,
    generic_point,
    graded_dimension,
    intersection_dimension,
    intersection_space,
    predicted_dimension,
)
from .pairs import MatrixPair, involution_residuals

BRACKET_TOL = 1e-9
ROTATION_TOL = 1e-8
EXP_TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float
    passed: bool
    detail: str = ""
    mode: str = "below"

    @classmethod
    def below(cls, name: str, residual: float, threshold: float, detail: str = "") -> "Check":
        return cls(name, float(residual), threshold, bool(residual < threshold), detail)

    @classmethod
    def above(cls, name: str, residual: float, threshold: float, detail: str = "") -> "Check":
        """Negative controls: the residual must exceed the threshold."""
        return cls(name, float(residual), threshold, bool(residual > threshold), detail or "expected to exceed", "above")

    @classmethod
    def equal(cls, name: str, got, expected, detail: str = "") -> "Check":
        ok = got == expected
        return cls(name, 0.0 if ok else 1.0, 0.5, ok, detail or f"got {got}, expected {expected}", "equal")


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def worst(self) -> float:
        """Largest residual among the upper-bound checks."""
        return max((c.residual for c in self.checks if c.mode == "below"), default=0.0)

    def to_dict(self) -> dict:
        return {
            "checks": [
                {
                    "detail": c.detail,
                    "mode": c.mode,
                    "name": c.name,
                    "passed": c.passed,
                    "residual": c.residual,
                    "threshold": c.threshold,
                }
                for c in self.checks
            ],
            "meta": self.meta,
            "passed": self.passed,
            "seed": self.seed,
            "title": self.title,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [self.title + (f" (seed {self.seed})" if self.seed is not None else "")]
        lines.append(f"{'check':<{width}}  {'residual':>10}  {'threshold':>9}  result")
        for c in self.checks:
            lines.append(
                f"{c.name:<{width}}  {c.residual:>10.2e}  {c.threshold:>9.0e}  {'PASS' if c.passed else 'FAIL'}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _norm(pair: MatrixPair, X: np.ndarray) -> float:
    """Norm for -1/2 tr(XY)."""
    return float(np.linalg.norm(pair.algebra.coords(X)))


def _as_matrix(pair: MatrixPair, p) -> np.ndarray:
    if isinstance(p, BasePoint):
        return pair.embed(p.vector)
    if isinstance(p, ExactVector):
        return pair.embed(p)
    return np.asarray(p)


# --------------------------------------------------------------------------


def verify_involutions(pair: MatrixPair) -> Report:
    rep = Report(f"involutions of {pair.name}")
    for name, val in involution_residuals(pair).items():
        rep.add(Check.below(name, val, 1e-12))
    return rep


def verify_extraction(pair: MatrixPair) -> Report:
    """Numerically extracted triad against the symbolic one."""
    rep = Report(f"triad extraction for {pair.name} (size {pair.size})")
    got = extract_triad(pair)
    cent = centralizer(pair).shape[1]
    rep.add(Check.equal("graded dimension = dim g - dim centralizer", graded_dimension(got), pair.algebra.dim - cent))
    if pair.congruent:
        R = pair.restricted
        rep.add(Check.equal("roots = R", set(got.sigma), set(R.roots)))
        rep.add(Check.equal("multiplicities", dict(got.m), {r: R.multiplicity[r] for r in R.roots}))
    else:
        ref = pair.triad
        rep.add(Check.equal("Sigma~", got.sigma_tilde, ref.sigma_tilde))
        rep.add(Check.equal("Sigma", got.sigma, ref.sigma))
        rep.add(Check.equal("W", got.w, ref.w))
        rep.add(Check.equal("m", dict(got.m), dict(ref.m)))
        rep.add(Check.equal("n", dict(got.n), dict(ref.n)))
    # eigenvalue residual: ad(H)^2 = -<root,H>^2 on each recovered block
    alg = pair.algebra
    Hq = generic_point(pair)
    adH = alg.ad(pair.embed(Hq))
    worst = 0.0
    for r in got.sigma_tilde:
        if not r.lex_positive():
            continue
        # ad(b) ad(b') = -<r,b><r,b'> on the root block; mixed products separate r from roots with equal |<r,b>|
        ads = [alg.ad(pair.embed(b)) for b in pair.space]
        vals = [float(r.dot(b)) for b in pair.space]
        ops = [
            ads[k] @ ads[l] + vals[k] * vals[l] * np.eye(alg.dim)
            for k in range(len(ads)) for l in range(k, len(ads))
        ]
        block = restrict_nullspace(ops, np.eye(alg.dim))
        res = adH @ adH @ block + float(r.dot(Hq)) ** 2 * block
        worst = max(worst, float(np.abs(res).max()) if block.size else 1.0)
    rep.add(Check.below("root eigenvalue residual", worst, ROTATION_TOL))
    return rep


def _regular_flag(pair: MatrixPair, H: PiPoint) -> bool:
    if pair.congruent:
        return all(not _is_int(H.pairing(r)) for r in pair.restricted.roots)
    return is_regular(pair.triad, H).regular


def random_rational_points(pair: MatrixPair, count: int, seed: int, denominators=(1, 2, 3, 4, 5, 6, 8, 12)) -> list[PiPoint]:
    """Seeded exact points sum c_k b_k with small-denominator coefficients."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        q = ExactVector.zero(pair.chart_dim)
        for b in pair.space:
            d = int(rng.choice(denominators))
            p = int(rng.integers(-2 * d, 2 * d + 1))
            q = q + Fraction(p, d) * b
        out.append(PiPoint(q))
    return out


def verify_dimension_grid(pair: MatrixPair, count: int = 200, seed: int = 0) -> Report:
    """dim(p0 n Ad(exp H) p1) against the symbolic formula on seeded exact points."""
    rep = Report(f"intersection dimensions for {pair.name} (size {pair.size})", seed=seed)
    dim_a = len(pair.space)
    mism = marginal = iff_fail = singular = 0
    for H in random_rational_points(pair, count, seed):
        try:
            got = intersection_dimension(pair, H)
        except NumericallyMarginal:
            marginal += 1
            continue
        want = predicted_dimension(pair, H)
        regular = _regular_flag(pair, H)
        singular += not regular
        mism += got != want
        iff_fail += (got == dim_a) != regular
    rep.meta.update({"points": count, "singular points": singular})
    rep.add(Check.equal("numerical dimension = symbolic formula", mism, 0, f"{mism} mismatches of {count}"))
    rep.add(Check.equal("dim = dim a iff regular", iff_fail, 0, f"{iff_fail} disagreements"))
    rep.add(Check.equal("numerically marginal points", marginal, 0))
    return rep


def verify_commutative_lemma(pair: MatrixPair, points: Sequence, H: PiPoint, x0) -> Report:
    """Pairwise brackets of intersection points and brackets against p0 n Ad(a) p1."""
    rep = Report(f"commutativity of L0 n Ad(a)L1 for {pair.name}")
    alg = pair.algebra
    x0m = _as_matrix(pair, x0)
    spec0 = np.sort(np.linalg.eigvalsh(-1j * x0m))
    inter = intersection_space(pair, H)
    mats = []
    worst_member = 0.0
    for k, p in enumerate(points):
        X = _as_matrix(pair, p)
        spec = np.sort(np.linalg.eigvalsh(-1j * X))
        if np.abs(spec - spec0).max() > 1e-8:
            raise DomainError(f"point #{k} ({p}) is not in the orbit of x0: eigenvalues differ")
        c = alg.coords(X)
        off = float(np.linalg.norm(c - inter @ (inter.T @ c)))
        if off > 1e-8:
            raise DomainError(f"point #{k} ({p}) is not in p0 n Ad(a) p1 (distance {off:.2e})")
        worst_member = max(worst_member, off)
        mats.append(X)
    pairwise = max((_norm(pair, bracket(X, Y)) for X in mats for Y in mats), default=0.0)
    against = max((_norm(pair, bracket(X, alg.matrix(v))) for X in mats for v in inter.T), default=0.0)
    rep.meta["points"] = len(mats)
    rep.add(Check.below("membership in p0 n Ad(a)p1", worst_member, 1e-8))
    rep.add(Check.below("max |[x, y]| over point pairs", pairwise, BRACKET_TOL))
    rep.add(Check.below("max |[x, v]|, v in p0 n Ad(a)p1", against, BRACKET_TOL))
    return rep


def verify_antipodal_set(pair: MatrixPair, torus_points: Sequence[ExactVector], seed: int = 0) -> Report:
    """W(Delta)x0 commutes pairwise; a random conjugate of x0 outside it does not."""
    rep = Report(f"maximal antipodal set in {pair.name}", seed=seed)
    mats = [pair.torus_matrix(v) for v in torus_points]
    pairwise = max((_norm(pair, bracket(X, Y)) for X in mats for Y in mats), default=0.0)
    rep.add(Check.below("max |[x, y]| on W(Delta)x0", pairwise, BRACKET_TOL))
    rng = np.random.default_rng(seed)
    g = expm(pair.algebra.matrix(rng.normal(size=pair.algebra.dim)))
    extra = g @ mats[0] @ np.linalg.inv(g)
    rep.add(Check.above("max |[g x0 g^-1, y]| for a random g", max(_norm(pair, bracket(extra, Y)) for Y in mats), 1e-3))
    return rep


def _root_spaces(pair: MatrixPair, root: ExactVector, kind: str) -> tuple[np.ndarray, np.ndarray, int]:
    alg = pair.algebra
    if kind == "w":
        xs, ys = pair.subspace("k0&p1"), pair.subspace("p0&k1")
        expected = pair.triad.n.get(root, 0)
    else:
        xs, ys = pair.subspace("k0&k1"), pair.subspace("p0&p1")
        if pair.congruent:
            expected = pair.restricted.multiplicity.get(root, 0)
        else:
            expected = pair.triad.m.get(root, 0)
    ads = [alg.ad(pair.embed(b)) for b in pair.space]
    vals = [float(root.dot(b)) for b in pair.space]
    ops = [ads[k] @ ads[l] + vals[k] * vals[l] * np.eye(alg.dim) for k in range(len(ads)) for l in range(k, len(ads))]
    return restrict_nullspace(ops, xs), restrict_nullspace(ops, ys), expected


def verify_rotation_formulas(pair: MatrixPair, root: ExactVector, H: PiPoint, kind: str | None = None) -> Report:
    """Paired bases (X_i, Y_i) of a root class and the bracket / rotation identities at H.

    ``kind`` is ``"w"`` (X in k0 n p1, Y in p0 n k1) or ``"sigma"`` (S in k0 n k1,
    T in p0 n p1; for a congruent pair this is k and p).  Y is obtained from X
    by the polar factor of the ad-intertwiner at a generic point.
    """
    if kind is None:
        kind = "sigma" if pair.congruent or root not in set(pair.triad.w) else "w"
    if kind not in ("w", "sigma"):
        raise DomainError("kind must be 'w' or 'sigma'")
    if pair.congruent and kind == "w":
        raise DomainError("a congruent pair has no W roots")
    alg = pair.algebra
    X, Y, expected = _root_spaces(pair, root, kind)
    label = "X,Y" if kind == "w" else "S,T"
    rep = Report(f"rotation identities ({label}) for root {root} of {pair.name}")
    rep.meta.update({"kind": kind, "root": root.to_strings(), "H": H.q.to_strings()})
    if expected == 0 or X.shape[1] != expected or Y.shape[1] != expected:
        raise DomainError(
            f"root {root} has block dimensions {X.shape[1]}, {Y.shape[1]}; expected multiplicity {expected}"
        )
    g = generic_point(pair)
    ag = float(root.dot(g))
    if abs(ag) < 1e-9:
        raise DomainError("intertwiner is rank deficient: root vanishes at the generic point")
    T = Y.T @ alg.ad(pair.embed(g)) @ X / ag
    if np.linalg.svd(T, compute_uv=False).min() < 1e-6:
        raise DomainError("intertwiner is rank deficient: wrong root or degenerate point")
    Q, _ = polar(T)
    Y = Y @ Q
    rep.add(Check.below("orthonormal X", np.abs(X.T @ X - np.eye(expected)).max(), ROTATION_TOL))
    rep.add(Check.below("orthonormal Y", np.abs(Y.T @ Y - np.eye(expected)).max(), ROTATION_TOL))
    Hm = pair.embed_point(H)
    aH = np.pi * float(H.pairing(root))
    AdH = adjoint_of_point(pair, H)
    rootm = pair.root_matrix(root)
    c, s = np.cos(aH), np.sin(aH)
    r_h = r_rot = r_br = 0.0
    for i in range(expected):
        Xi, Yi = alg.matrix(X[:, i]), alg.matrix(Y[:, i])
        r_h = max(r_h, _norm(pair, bracket(Hm, Xi) - aH * Yi), _norm(pair, bracket(Hm, Yi) + aH * Xi))
        r_rot = max(
            r_rot,
            float(np.linalg.norm(AdH @ X[:, i] - (c * X[:, i] + s * Y[:, i]))),
            float(np.linalg.norm(AdH @ Y[:, i] - (-s * X[:, i] + c * Y[:, i]))),
        )
        r_br = max(r_br, _norm(pair, bracket(Xi, Yi) - rootm) / _norm(pair, rootm))
    rep.add(Check.below("[H, X] = <a,H> Y and [H, Y] = -<a,H> X", r_h, ROTATION_TOL))
    rep.add(Check.below("Ad(exp H) rotation by <a,H>", r_rot, ROTATION_TOL))
    rep.add(Check.below("[X, Y] = a (relative)", r_br, ROTATION_TOL))
    return rep


def rotation_root_classes(pair: MatrixPair) -> list[tuple[ExactVector, str]]:
    """One (root, kind) per positive root class."""
    if pair.congruent:
        return [(r, "sigma") for r in pair.restricted.positive]
    return [(r, "sigma") for r in pair.triad.sigma_plus] + [(a, "w") for a in pair.triad.w_plus]


def verify_all_rotations(pair: MatrixPair, H: PiPoint) -> Report:
    rep = Report(f"rotation identities for {pair.name} (size {pair.size})")
    for root, kind in rotation_root_classes(pair):
        sub = verify_rotation_formulas(pair, root, H, kind)
        for c in sub.checks:
            rep.add(Check(f"{kind} {root}: {c.name}", c.residual, c.threshold, c.passed, c.detail, c.mode))
    return rep


def verify_lemma_regularity(pair: MatrixPair, n: int | Sequence[int]) -> Report:
    """Ad(exp(4n H0)) = identity for the st_point H0, with a non-Gamma negative control."""
    triad = pair.triad
    if triad is None:
        raise DomainError("verify_lemma_regularity needs a non-congruent pair")
    if triad.is_direct_sum:
        ns = list(n) if isinstance(n, (list, tuple)) else [n] * len(triad.components)
        H0, total = st_point_direct_sum(triad, ns)
    else:
        total = int(n)
        H0 = st_point(triad, total)
    rep = Report(f"(theta0 theta1')^(2n) = id for {pair.name}, n = {total}")
    rep.meta.update({"n": total, "H0": H0.q.to_strings()})
    eye = np.eye(pair.algebra.dim)
    big = adjoint_of_point(pair, H0, 4.0 * total)
    rep.add(Check.below("|Ad(exp(4n H0)) - id|", np.abs(big - eye).max(), EXP_TOL))
    rep.add(Check.equal("dim(p0 n Ad(exp H0) p1) = dim a", intersection_dimension(pair, H0), len(pair.space)))
    rep.add(Check.equal("n H0 in Gamma (exact)", gamma_contains(triad, H0 * total), True))
    two = adjoint_of_point(pair, H0, 2.0)
    inv2 = np.linalg.matrix_power(np.linalg.inv(two), 2)
    rep.add(Check.below(
        "Ad(exp 4nH0) = (Ad(exp 2H0)^-2)^-n",
        np.abs(np.linalg.matrix_power(np.linalg.inv(inv2), total) - big).max(),
        EXP_TOL,
    ))
    control = _non_gamma_point(triad)
    rep.add(Check.equal("control point outside Gamma (exact)", gamma_contains(triad, control), False))
    dev = np.abs(adjoint_of_point(pair, control, 4.0) - eye).max()
    rep.add(Check.above("|Ad(exp 4 H') - id| for H' outside Gamma", dev, 1e-3))
    return rep


def _non_gamma_point(triad) -> PiPoint:
    """H_1 when m_1 >= 2, otherwise H_1 / 2 (both lie outside Gamma)."""
    parts = [c for _, c in triad.components] if triad.is_direct_sum else [triad]
    coords: list[Fraction] = []
    for comp in parts:
        cell = fundamental_cell(comp)
        h = cell.h_basis[0]
        if gamma_contains(comp, h):
            h = h * Fraction(1, 2)
        coords.extend(h.q.coords)
    return PiPoint(ExactVector(coords))


__all__ = [
    "Check",
    "Report",
    "random_rational_points",
    "rotation_root_classes",
    "verify_all_rotations",
    "verify_antipodal_set",
    "verify_commutative_lemma",
    "verify_dimension_grid",
    "verify_extraction",
    "verify_involutions",
    "verify_lemma_regularity",
    "verify_rotation_formulas",
]
