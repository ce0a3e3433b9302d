"""Symmetric triads: axiom checking, regular points, cells, the lattice Gamma.

Points of the abelian subspace are handled as :class:`PiPoint` (``H = pi * q``
with ``q`` rational), so every membership test below is exact rational
arithmetic on ``<lambda, q>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .exact import ExactVector, format_fraction, in_span, rank, row_basis, solve, sorted_vectors
from .rootsys import (
    dynkin_components,
    indecomposable,
    reflection_closure,
    simple_roots_lex,
)

HALF = Fraction(1, 2)


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def _is_half_odd(x: Fraction) -> bool:
    """x in 1/2 + Z."""
    return (x - HALF).denominator == 1


@dataclass(frozen=True, order=True)
class PiPoint:
    """A point ``H = pi * q`` of the abelian subspace; ``q`` is exact."""

    q: ExactVector

    @classmethod
    def parse(cls, text: str) -> "PiPoint":
        return cls(ExactVector.parse(text))

    @classmethod
    def of(cls, *coords) -> "PiPoint":
        return cls(ExactVector(coords))

    def pairing(self, root: ExactVector) -> Fraction:
        """<root, H> / pi."""
        return root.dot(self.q)

    def __add__(self, other: "PiPoint") -> "PiPoint":
        return PiPoint(self.q + other.q)

    def __sub__(self, other: "PiPoint") -> "PiPoint":
        return PiPoint(self.q - other.q)

    def __mul__(self, k) -> "PiPoint":
        return PiPoint(self.q * k)

    __rmul__ = __mul__

    @property
    def ambient_dim(self) -> int:
        return self.q.ambient_dim

    def __str__(self) -> str:
        return f"pi*{self.q}"


def _freeze_mult(m: Mapping | None) -> Mapping[ExactVector, int] | None:
    if m is None:
        return None
    return MappingProxyType({ExactVector(k): int(v) for k, v in sorted(m.items())})


@dataclass(frozen=True)
class SymmetricTriad:
    """Candidate triad (Sigma~, Sigma, W) of an abelian subspace a of Q^d.

    ``space`` is a basis of a; ``None`` means a = Q^d.  The multiplicity maps
    ``m`` (on Sigma) and ``n`` (on W) are optional.  ``components`` is set by
    :func:`direct_sum` and records each factor with its coordinate offset.
    """

    ambient_dim: int
    sigma_tilde: tuple[ExactVector, ...]
    sigma: tuple[ExactVector, ...]
    w: tuple[ExactVector, ...]
    m: Mapping[ExactVector, int] | None = None
    n: Mapping[ExactVector, int] | None = None
    space: tuple[ExactVector, ...] | None = None
    name: str = "custom"
    components: tuple[tuple[int, "SymmetricTriad"], ...] = field(default=(), compare=False)

    def __post_init__(self):
        for label in ("sigma_tilde", "sigma", "w"):
            vecs = sorted_vectors(getattr(self, label))
            for v in vecs:
                if v.ambient_dim != self.ambient_dim:
                    raise DomainError(f"{label} contains a vector of the wrong dimension: {v}")
            object.__setattr__(self, label, vecs)
        object.__setattr__(self, "m", _freeze_mult(self.m))
        object.__setattr__(self, "n", _freeze_mult(self.n))
        if self.space is not None:
            basis = row_basis(self.space)
            if any(b.ambient_dim != self.ambient_dim for b in basis):
                raise DomainError("space basis has the wrong dimension")
            object.__setattr__(self, "space", basis)

    @classmethod
    def from_sets(cls, sigma: Iterable[ExactVector], w: Iterable[ExactVector], **kw) -> "SymmetricTriad":
        sigma, w = sorted_vectors(sigma), sorted_vectors(w)
        dim = (sigma or w)[0].ambient_dim
        return cls(dim, sorted_vectors(set(sigma) | set(w)), sigma, w, **kw)

    @property
    def a_basis(self) -> tuple[ExactVector, ...]:
        if self.space is None:
            return tuple(ExactVector.unit(self.ambient_dim, i) for i in range(self.ambient_dim))
        return self.space

    @property
    def dim_a(self) -> int:
        return len(self.a_basis)

    @property
    def is_direct_sum(self) -> bool:
        return len(self.components) > 1

    def contains(self, q: ExactVector) -> bool:
        return self.space is None or in_span(q, self.space)

    def _check_point(self, H: PiPoint) -> None:
        if H.ambient_dim != self.ambient_dim:
            raise DomainError(
                f"point has {H.ambient_dim} coordinates, triad lives in {self.ambient_dim}"
            )
        # Only pairings with roots enter, so a component normal to a is harmless.

    @property
    def positive_tilde(self) -> tuple[ExactVector, ...]:
        return tuple(r for r in self.sigma_tilde if r.lex_positive())

    @property
    def sigma_plus(self) -> tuple[ExactVector, ...]:
        return tuple(r for r in self.sigma if r.lex_positive())

    @property
    def w_plus(self) -> tuple[ExactVector, ...]:
        return tuple(r for r in self.w if r.lex_positive())

    @property
    def simple_sigma(self) -> tuple[ExactVector, ...]:
        return indecomposable(self.sigma_plus)

    def sigma_is_irreducible(self) -> bool:
        return bool(self.sigma) and len(dynkin_components(self.simple_sigma)) == 1


# --------------------------------------------------------------------------
# axioms


@dataclass(frozen=True)
class AxiomResult:
    number: int
    statement: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class AxiomReport:
    results: tuple[AxiomResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.passed

    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [
                {"condition": r.number, "statement": r.statement, "passed": r.passed, "witness": r.witness}
                for r in self.results
            ],
        }


def _root_system_defect(roots: Sequence[ExactVector]) -> str:
    """Empty string when ``roots`` is a (possibly non-reduced) crystallographic root system."""
    rs = set(roots)
    for r in roots:
        if r.is_zero():
            return "0 is in the set"
    for a in roots:
        for b in roots:
            k = 2 * a.dot(b) / a.norm2()
            if not _is_int(k):
                return f"2<{a},{b}>/|{a}|^2 = {format_fraction(k)} is not an integer"
            if b - k * a not in rs:
                return f"s_{a}({b}) = {b - k * a} is missing"
    return ""


def _check_condition1(t: SymmetricTriad) -> AxiomResult:
    st = "Sigma~ is an irreducible root system spanning a"
    roots = t.sigma_tilde
    if not roots:
        return AxiomResult(1, st, False, "Sigma~ is empty")
    for r in roots:
        if not t.contains(r):
            return AxiomResult(1, st, False, f"{r} is not in a")
    defect = _root_system_defect(roots)
    if defect:
        return AxiomResult(1, st, False, defect)
    if rank(list(roots)) != t.dim_a:
        return AxiomResult(1, st, False, f"Sigma~ spans rank {rank(list(roots))} < dim a = {t.dim_a}")
    comps = dynkin_components(simple_roots_lex(roots))
    if len(comps) > 1:
        return AxiomResult(1, st, False, f"reducible: {comps[0][0]} is orthogonal to the component of {comps[1][0]}")
    return AxiomResult(1, st, True)


def _check_condition2(t: SymmetricTriad) -> AxiomResult:
    st = "Sigma is a root system of span(Sigma)"
    defect = _root_system_defect(t.sigma)
    return AxiomResult(2, st, not defect, defect)


def _check_condition3(t: SymmetricTriad) -> AxiomResult:
    st = "W is nonempty, W = -W, and Sigma~ = Sigma u W"
    if not t.w:
        return AxiomResult(3, st, False, "W is empty")
    ws = set(t.w)
    for a in t.w:
        if -a not in ws:
            return AxiomResult(3, st, False, f"{a} in W but {-a} is not")
    union = set(t.sigma) | ws
    tilde = set(t.sigma_tilde)
    for v in sorted(union - tilde):
        return AxiomResult(3, st, False, f"{v} is in Sigma u W but not in Sigma~")
    for v in sorted(tilde - union):
        return AxiomResult(3, st, False, f"{v} is in Sigma~ but not in Sigma u W")
    return AxiomResult(3, st, True)


def _check_condition4(t: SymmetricTriad) -> AxiomResult:
    st = "Sigma n W is nonempty and equals {a in Sigma~ : |a| <= l}"
    cap = set(t.sigma) & set(t.w)
    if not cap:
        return AxiomResult(4, st, False, "Sigma n W is empty")
    l2 = max(a.norm2() for a in cap)
    short = {a for a in t.sigma_tilde if a.norm2() <= l2}
    for v in sorted(short - cap):
        return AxiomResult(4, st, False, f"{v} has |v|^2 <= {format_fraction(l2)} but is not in Sigma n W")
    for v in sorted(cap - short):
        return AxiomResult(4, st, False, f"{v} is in Sigma n W but not in Sigma~")
    return AxiomResult(4, st, True)


def _check_parity(t: SymmetricTriad, number: int) -> AxiomResult:
    sigma, w = set(t.sigma), set(t.w)
    if number == 5:
        st = "a in W, l in Sigma\\W: 2<a,l>/|a|^2 odd iff s_a(l) in W\\Sigma"
        lambdas, target = sigma - w, w - sigma
    else:
        st = "a in W, l in W\\Sigma: 2<a,l>/|a|^2 odd iff s_a(l) in Sigma\\W"
        lambdas, target = w - sigma, sigma - w
    for a in t.w:
        for lam in sorted(lambdas):
            k = 2 * a.dot(lam) / a.norm2()
            if not _is_int(k):
                return AxiomResult(number, st, False, f"2<{a},{lam}>/|{a}|^2 = {format_fraction(k)} is not an integer")
            odd = k.numerator % 2 == 1
            image = lam - k * a
            if odd != (image in target):
                return AxiomResult(
                    number, st, False,
                    f"a={a}, l={lam}: integer {k.numerator} is {'odd' if odd else 'even'} "
                    f"but s_a(l)={image} is {'not ' if odd else ''}in the target set",
                )
    return AxiomResult(number, st, True)


def check_axioms(candidate: SymmetricTriad) -> AxiomReport:
    """Evaluate all six symmetric-triad conditions; defects are reported, never raised."""
    key = (candidate.ambient_dim, candidate.sigma_tilde, candidate.sigma, candidate.w, candidate.space)
    return _cached_axioms(key)


@lru_cache(maxsize=256)
def _cached_axioms(key) -> AxiomReport:
    # The conditions depend only on the three root sets and a, never on m, n or the name.
    dim, tilde, sigma, w, space = key
    candidate = SymmetricTriad(dim, tilde, sigma, w, space=space)
    return AxiomReport((
        _check_condition1(candidate),
        _check_condition2(candidate),
        _check_condition3(candidate),
        _check_condition4(candidate),
        _check_parity(candidate, 5),
        _check_parity(candidate, 6),
    ))


def require_triad(triad: SymmetricTriad) -> None:
    """Raise unless ``triad`` (or each of its direct-sum factors) passes every axiom."""
    parts = [c for _, c in triad.components] if triad.is_direct_sum else [triad]
    for part in parts:
        report = check_axioms(part)
        if not report:
            bad = report.failed()[0]
            raise DomainError(
                f"{part.name} is not a symmetric triad: condition ({bad.number}) fails: {bad.witness}"
            )


# --------------------------------------------------------------------------
# regular points


@dataclass(frozen=True)
class Violation:
    root: ExactVector
    kind: str  # "sigma": <l,H> in pi Z ; "w": <a,H> in pi/2 + pi Z
    value: Fraction

    def describe(self) -> str:
        if self.kind == "sigma":
            return f"lambda={self.root} in Sigma has <lambda,H> = {format_fraction(self.value)}*pi in pi*Z"
        return f"alpha={self.root} in W has <alpha,H> = {format_fraction(self.value)}*pi in pi/2 + pi*Z"


@dataclass(frozen=True)
class RegularityResult:
    regular: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.regular


def is_regular(triad: SymmetricTriad, H: PiPoint) -> RegularityResult:
    triad._check_point(H)
    out = []
    for lam in triad.sigma:
        v = H.pairing(lam)
        if _is_int(v):
            out.append(Violation(lam, "sigma", v))
    for a in triad.w:
        v = H.pairing(a)
        if _is_half_odd(v):
            out.append(Violation(a, "w", v))
    out.sort(key=lambda v: not v.root.lex_positive())
    return RegularityResult(not out, tuple(out))


def predicted_intersection_dimension(triad: SymmetricTriad, H: PiPoint) -> int:
    """dim a + sum of m(l) over singular l in Sigma+ + sum of n(a) over singular a in W+."""
    if triad.m is None or triad.n is None:
        raise DomainError("triad carries no multiplicities")
    triad._check_point(H)
    dim = triad.dim_a
    dim += sum(triad.m[lam] for lam in triad.sigma_plus if _is_int(H.pairing(lam)))
    dim += sum(triad.n[a] for a in triad.w_plus if _is_half_odd(H.pairing(a)))
    return dim


# --------------------------------------------------------------------------
# cells and the lattice


@dataclass(frozen=True)
class CellData:
    alpha_tilde: ExactVector
    m_coeffs: tuple[int, ...]
    h_basis: tuple[PiPoint, ...]
    simple_sigma: tuple[ExactVector, ...]

    @property
    def total(self) -> int:
        return sum(self.m_coeffs)

    def point(self, t: Sequence) -> PiPoint:
        """sum t_i H_i."""
        out = PiPoint(ExactVector.zero(self.alpha_tilde.ambient_dim))
        for ti, h in zip(t, self.h_basis):
            out = out + h * ti
        return out

    def interior_point(self) -> PiPoint:
        r = len(self.h_basis)
        return self.point([Fraction(1, 2 * r)] * r)

    def to_dict(self) -> dict:
        return {
            "alpha_tilde": self.alpha_tilde.to_strings(),
            "simple_sigma": [s.to_strings() for s in self.simple_sigma],
            "m": list(self.m_coeffs),
            "H": [h.q.to_strings() for h in self.h_basis],
        }


def _cell_is_regular(triad: SymmetricTriad, vertices: Sequence[ExactVector]) -> bool:
    """True when no singular hyperplane meets the open simplex spanned by ``vertices``."""
    for roots, bad in ((triad.sigma, _is_int), (triad.w, _is_half_odd)):
        for lam in roots:
            vals = [lam.dot(v) for v in vertices]
            lo, hi = min(vals), max(vals)
            if lo == hi:
                if bad(lo):
                    return False
                continue
            # any forbidden value strictly between lo and hi?
            offset = HALF if bad is _is_half_odd else Fraction(0)
            k = (lo - offset).__floor__() + 1
            if k + offset < hi:
                return False
    return True


def fundamental_cell(triad: SymmetricTriad) -> CellData:
    """Find alpha~ in W+ whose simplex P_0 is a cell, and the vertices H_i."""
    if not triad.sigma:
        raise DomainError("Sigma is empty")
    if not triad.sigma_is_irreducible():
        raise DomainError(
            "Sigma is reducible; decompose the triad first (the H_i construction needs irreducible Sigma)"
        )
    simple = triad.simple_sigma
    r = len(simple)
    if rank(list(simple)) != triad.dim_a:
        raise DomainError("Sigma does not span a")
    gram = [[a.dot(b) for b in simple] for a in simple]
    found = []
    for at in triad.w_plus:
        coeffs = solve(gram, [a.dot(at) for a in simple])
        # Simple roots form a basis of a, so these coefficients are the expansion of alpha~.
        if not all(_is_int(c) and c > 0 for c in coeffs):
            continue
        ms = tuple(int(c) for c in coeffs)
        hs = []
        for i in range(r):
            rhs = [Fraction(1, 2 * ms[i]) if j == i else Fraction(0) for j in range(r)]
            c = solve(gram, rhs)
            h = ExactVector.zero(triad.ambient_dim)
            for cj, aj in zip(c, simple):
                h = h + cj * aj
            hs.append(h)
        if _cell_is_regular(triad, [ExactVector.zero(triad.ambient_dim)] + hs):
            found.append(CellData(at, ms, tuple(PiPoint(h) for h in hs), simple))
    if not found:
        raise DomainError("no alpha~ in W+ bounds a cell; the input is not a symmetric triad")
    if len(found) > 1:
        raise DomainError(f"alpha~ is not unique ({[str(c.alpha_tilde) for c in found]}); input is not a symmetric triad")
    cell = found[0]
    for i, h in enumerate(cell.h_basis):
        assert h.pairing(cell.alpha_tilde) == HALF
        for j, a in enumerate(simple):
            assert h.pairing(a) == (Fraction(1, 2 * cell.m_coeffs[i]) if i == j else 0)
    return cell


def gamma_contains(triad: SymmetricTriad, H: PiPoint) -> bool:
    """<lambda, H> in (pi/2) Z for every lambda in Sigma~."""
    triad._check_point(H)
    return all(_is_int(2 * H.pairing(lam)) for lam in triad.sigma_tilde)


def gamma_contains_reduced(triad: SymmetricTriad, H: PiPoint) -> bool:
    """The same lattice test using Sigma alone."""
    triad._check_point(H)
    return all(_is_int(2 * H.pairing(lam)) for lam in triad.sigma)


def st_point(triad: SymmetricTriad, n: int) -> PiPoint:
    """Regular H_0 = sum (m_i / n) H_i with n*H_0 in Gamma; needs n > sum m_i."""
    cell = fundamental_cell(triad)
    if n <= cell.total:
        raise DomainError(f"n = {n} must exceed sum m_i = {cell.total}")
    h0 = cell.point([Fraction(mi, n) for mi in cell.m_coeffs])
    assert is_regular(triad, h0).regular
    assert gamma_contains(triad, h0 * n)
    return h0


def st_point_direct_sum(triad: SymmetricTriad, ns: Sequence[int]) -> tuple[PiPoint, int]:
    """Block-wise H_0 for a direct sum, together with n = n_1 * ... * n_m."""
    if not triad.is_direct_sum:
        return st_point(triad, ns[0]), ns[0]
    if len(ns) != len(triad.components):
        raise DomainError(f"need one n per factor ({len(triad.components)})")
    coords: list[Fraction] = []
    total = 1
    for (offset, comp), nj in zip(triad.components, ns):
        coords.extend(st_point(comp, nj).q.coords)
        total *= nj
    h = PiPoint(ExactVector(coords))
    assert is_regular(triad, h).regular
    assert gamma_contains(triad, h * total)
    return h, total


# --------------------------------------------------------------------------
# affine Weyl group


def reflection_matrix(alpha: ExactVector) -> tuple[tuple[Fraction, ...], ...]:
    d = alpha.ambient_dim
    n2 = alpha.norm2()
    return tuple(
        tuple((1 if i == j else 0) - 2 * alpha[i] * alpha[j] / n2 for j in range(d)) for i in range(d)
    )


@dataclass(frozen=True)
class AffineIsometry:
    """H -> linear(H) + translation, with translation in units of pi."""

    linear: tuple[tuple[Fraction, ...], ...]
    translation: PiPoint
    label: str = field(default="", compare=False)

    def __call__(self, H: PiPoint) -> PiPoint:
        q = H.q
        lin = ExactVector(sum((row[j] * q[j] for j in range(len(q))), Fraction(0)) for row in self.linear)
        return PiPoint(lin) + self.translation

    def compose(self, other: "AffineIsometry") -> "AffineIsometry":
        """self after other."""
        d = len(self.linear)
        lin = tuple(
            tuple(sum((self.linear[i][k] * other.linear[k][j] for k in range(d)), Fraction(0)) for j in range(d))
            for i in range(d)
        )
        shift = self(other.translation)
        return AffineIsometry(lin, shift, f"{self.label}*{other.label}")

    def is_involution(self) -> bool:
        sq = self.compose(self)
        d = len(self.linear)
        ident = all(sq.linear[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))
        return ident and sq.translation.q.is_zero()


def affine_generators(triad: SymmetricTriad, n_range: int) -> list[AffineIsometry]:
    """(s_l, 2n pi l/|l|^2) for l in Sigma and (s_a, (2n+1) pi a/|a|^2) for a in W, |n| <= n_range."""
    if n_range < 0:
        raise DomainError("n_range must be non-negative")
    seen = set()
    out = []
    specs = [(lam, "sigma") for lam in triad.sigma] + [(a, "w") for a in triad.w]
    for root, kind in specs:
        lin = reflection_matrix(root)
        for k in range(-n_range, n_range + 1):
            mult = 2 * k if kind == "sigma" else 2 * k + 1
            g = AffineIsometry(lin, PiPoint(root * Fraction(mult, 1) / root.norm2()), f"{kind}:{root}:{k}")
            key = (g.linear, g.translation)
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


# --------------------------------------------------------------------------
# span property


def span_property(triad: SymmetricTriad) -> bool:
    """Every W(Sigma)-orbit of a root in Sigma u W spans a."""
    if not triad.sigma_is_irreducible():
        raise DomainError("Sigma is reducible; the span property is stated for irreducible Sigma")
    simple = triad.simple_sigma
    for lam in sorted(set(triad.sigma) | set(triad.w)):
        if rank(list(reflection_closure(simple, [lam]))) != triad.dim_a:
            return False
    return True


# --------------------------------------------------------------------------
# direct sums


def _pad(v: ExactVector, offset: int, total: int) -> ExactVector:
    return ExactVector([0] * offset + list(v.coords) + [0] * (total - offset - v.ambient_dim))


def direct_sum(components: Sequence[SymmetricTriad]) -> SymmetricTriad:
    """Orthogonal block embedding of several triads into one coordinate space."""
    components = list(components)
    if not components:
        raise DomainError("direct_sum needs at least one component")
    if len(components) == 1:
        return components[0]
    flat = []
    for c in components:
        flat.extend(c.components if c.is_direct_sum else [(0, c)])
    total = sum(c.ambient_dim for _, c in flat)
    offsets, off = [], 0
    for _, c in flat:
        offsets.append(off)
        off += c.ambient_dim
    tilde, sigma, w, space = [], [], [], []
    m: dict | None = {}
    n: dict | None = {}
    for o, (_, c) in zip(offsets, flat):
        tilde += [_pad(v, o, total) for v in c.sigma_tilde]
        sigma += [_pad(v, o, total) for v in c.sigma]
        w += [_pad(v, o, total) for v in c.w]
        space += [_pad(v, o, total) for v in c.a_basis]
        if m is not None and c.m is not None and n is not None and c.n is not None:
            m.update({_pad(k, o, total): v for k, v in c.m.items()})
            n.update({_pad(k, o, total): v for k, v in c.n.items()})
        else:
            m = n = None
    return SymmetricTriad(
        total, tuple(tilde), tuple(sigma), tuple(w), m, n, tuple(space),
        "+".join(c.name for _, c in flat), tuple(zip(offsets, (c for _, c in flat))),
    )


def block(triad: SymmetricTriad, H: PiPoint, index: int) -> PiPoint:
    """Restriction of a direct-sum point to one factor."""
    offset, comp = triad.components[index]
    return PiPoint(ExactVector(H.q.coords[offset:offset + comp.ambient_dim]))


# --------------------------------------------------------------------------
# exchange format


def _vec_list(vs) -> list[list[str]]:
    return [v.to_strings() for v in vs]


def triad_to_dict(triad: SymmetricTriad) -> dict:
    if triad.is_direct_sum:
        return {
            "name": triad.name,
            "components": [{"offset": o, "triad": triad_to_dict(c)} for o, c in triad.components],
        }
    out = {
        "name": triad.name,
        "ambient_dim": triad.ambient_dim,
        "sigma_tilde": _vec_list(triad.sigma_tilde),
        "sigma": _vec_list(triad.sigma),
        "w": _vec_list(triad.w),
    }
    if triad.space is not None:
        out["space"] = _vec_list(triad.space)
    if triad.m is not None:
        out["m"] = [{"root": k.to_strings(), "mult": v} for k, v in triad.m.items()]
    if triad.n is not None:
        out["n"] = [{"root": k.to_strings(), "mult": v} for k, v in triad.n.items()]
    return out


def triad_from_dict(data: Mapping) -> SymmetricTriad:
    try:
        if "components" in data:
            return direct_sum([triad_from_dict(c["triad"]) for c in data["components"]])
        vec = lambda xs: tuple(ExactVector(Fraction(str(c)) for c in x) for x in xs)  # noqa: E731
        mult = lambda xs: {ExactVector(Fraction(str(c)) for c in e["root"]): int(e["mult"]) for e in xs}  # noqa: E731
        return SymmetricTriad(
            int(data["ambient_dim"]),
            vec(data["sigma_tilde"]),
            vec(data["sigma"]),
            vec(data["w"]),
            mult(data["m"]) if "m" in data else None,
            mult(data["n"]) if "n" in data else None,
            vec(data["space"]) if "space" in data else None,
            str(data.get("name", "custom")),
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed triad document: {exc!r}") from None


def dumps_triad(triad: SymmetricTriad) -> str:
    return json.dumps(triad_to_dict(triad), indent=2)


def loads_triad(text: str) -> SymmetricTriad:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"triad file is not valid JSON: {exc}") from None
    return triad_from_dict(data)


def rational_grid(triad: SymmetricTriad, denominators: Iterable[int], span: int = 1) -> list[PiPoint]:
    """Points sum c_k b_k over the a-basis with c_k = p/d, |p/d| <= span."""
    basis = triad.a_basis
    values = sorted({Fraction(p, d) for d in denominators for p in range(-span * d, span * d + 1)})
    pts = []
    for cs in product(values, repeat=len(basis)):
        q = ExactVector.zero(triad.ambient_dim)
        for c, b in zip(cs, basis):
            if c:
                q = q + c * b
        pts.append(PiPoint(q))
    return pts
