"""Flag-manifold level results: antipodal sets, intersections, tightness counts.

Two catalogue pairs are built in: ``su2n-so-sp`` for (SU(2n), SO(2n), Sp(n))
and ``su-n-so-rank1`` for (SU(n), SO(n), S(U(1) x U(n-1))).  Each entry knows
its triad in chart coordinates on a, the ambient A-type root system of a maximal
torus containing a, and the linear chart embedding a -> t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from .errors import DomainError
from .exact import ExactVector, Projector, format_fraction, in_span, orthogonal_complement, row_basis
from .rootsys import RootSystem, build_root_system, pushforward, reflection_closure, weyl_orbit
from .triads import (
    PiPoint,
    SymmetricTriad,
    _is_int,
    check_axioms,
    is_regular,
    require_triad,
)

DISCRETE = "Discrete"
CONTINUUM = "Continuum"

# Denominators for the deterministic search of generic regular points.
_PRIMES = (101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179)


@dataclass(frozen=True)
class BasePoint:
    """x0 given by its raw coordinate list; the pattern groups equal values."""

    vector: ExactVector

    @classmethod
    def from_values(cls, values: Iterable) -> "BasePoint":
        return cls(ExactVector(values))

    @classmethod
    def parse(cls, text: str) -> "BasePoint":
        return cls(ExactVector.parse(text))

    @property
    def pattern(self) -> tuple[tuple[Fraction, int], ...]:
        """(value, multiplicity) in order of first appearance."""
        counts: dict[Fraction, int] = {}
        for c in self.vector:
            counts[c] = counts.get(c, 0) + 1
        return tuple(counts.items())

    def is_zero(self) -> bool:
        return self.vector.is_zero()

    def __str__(self) -> str:
        return str(self.vector)


def _as_vector(x0) -> ExactVector:
    if isinstance(x0, BasePoint):
        return x0.vector
    if isinstance(x0, ExactVector):
        return x0
    return ExactVector(x0)


@dataclass(frozen=True)
class Witness:
    """Why an intersection is not discrete.

    ``classification`` is ``"i"`` (a root of Sigma with <l,H> in pi Z), ``"ii"``
    (a root of W with <a,H> in pi/2 + pi Z) or ``"congruent"``.  ``X`` is an
    orbit point with <root, X> != 0, the start of the rotation circle.
    """

    root: ExactVector
    classification: str
    value: Fraction
    X: ExactVector | None

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "pairing": format_fraction(self.value),
            "root": self.root.to_strings(),
            "X": None if self.X is None else self.X.to_strings(),
        }


@dataclass(frozen=True)
class IntersectionResult:
    kind: str
    points: tuple[ExactVector, ...] = ()
    witness: Witness | None = None
    chain: tuple[ExactVector, ...] | None = field(default=None, compare=False)

    @property
    def cardinality(self) -> int:
        return len(self.points)

    @property
    def discrete(self) -> bool:
        return self.kind == DISCRETE

    def to_dict(self) -> dict:
        return {
            "cardinality": self.cardinality,
            "kind": self.kind,
            "points": [p.to_strings() for p in self.points],
            "witness": None if self.witness is None else self.witness.to_dict(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# --------------------------------------------------------------------------
# catalogue


@dataclass(frozen=True)
class PairCatalogueEntry:
    """A builtin pair at a fixed size.

    ``embedding[k]`` is the image in torus coordinates of the k-th chart unit
    vector of a; ``delta`` is the root system of the torus in those coordinates.
    """

    name: str
    size: int
    triad: SymmetricTriad
    expected_type: str
    delta: RootSystem
    embedding: tuple[ExactVector, ...]
    default_x0: BasePoint
    group: str

    @property
    def is_triad(self) -> bool:
        return bool(check_axioms(self.triad))

    def validate_x0(self, x0) -> BasePoint:
        bp = x0 if isinstance(x0, BasePoint) else BasePoint(_as_vector(x0))
        if bp.vector.ambient_dim != self.triad.ambient_dim:
            raise DomainError(
                f"{self.name} with n={self.size} takes x0 with {self.triad.ambient_dim} "
                f"coordinates, got {bp.vector.ambient_dim}"
            )
        if bp.is_zero():
            raise DomainError("base point x0 must be nonzero")
        if not self.triad.contains(bp.vector):
            raise DomainError(f"x0 = {bp} does not lie in a (coordinates must sum to 0)")
        return bp

    def to_torus(self, v: ExactVector) -> ExactVector:
        return pushforward(v, self.embedding)

    def sb_reference(self, x0) -> int | None:
        bp = self.validate_x0(x0)
        if self.name == "su2n-so-sp":
            return factorial(self.size) // prod(factorial(k) for _, k in bp.pattern)
        if self.name == "su-n-so-rank1":
            return 2
        return None


def _su2n_so_sp(n: int) -> PairCatalogueEntry:
    if n < 2:
        raise DomainError("su2n-so-sp needs n >= 2 (a is trivial for n = 1)")
    roots = [ExactVector.unit(n, i) - ExactVector.unit(n, j) for i in range(n) for j in range(n) if i != j]
    space = tuple(ExactVector.unit(n, i) - ExactVector.unit(n, i + 1) for i in range(n - 1))
    mult = {r: 2 for r in roots}
    triad = SymmetricTriad.from_sets(roots, roots, m=mult, n=mult, space=space, name=f"III-A{n - 1}")
    emb = tuple(ExactVector.unit(2 * n, k) + ExactVector.unit(2 * n, n + k) for k in range(n))
    x0 = BasePoint(ExactVector(list(range(n - 1, 0, -1)) + [-Fraction(n * (n - 1), 2)]))
    return PairCatalogueEntry(
        "su2n-so-sp", n, triad, f"III-A{n - 1}", build_root_system("A", 2 * n - 1), emb, x0,
        f"(SU({2 * n}), SO({2 * n}), Sp({n}))",
    )


def _su_n_so_rank1(n: int) -> PairCatalogueEntry:
    if n < 2:
        raise DomainError("su-n-so-rank1 needs n >= 2")
    a, a2 = ExactVector([1]), ExactVector([2])
    if n == 2:
        # Sigma is empty here; (SU(2), SO(2), S(U(1)xU(1))) reduces to a congruent pair.
        triad = SymmetricTriad.from_sets([], [a2, -a2], m={}, n={a2: 1, -a2: 1}, name="II-BC1")
    else:
        triad = SymmetricTriad.from_sets(
            [a, -a], [a, -a, a2, -a2],
            m={a: n - 2, -a: n - 2},
            n={a: n - 2, -a: n - 2, a2: 1, -a2: 1},
            name="II-BC1",
        )
    # i s (E12 + E21) is conjugate to i s diag(1, -1, 0, ..., 0).
    emb = (ExactVector.unit(n, 0) - ExactVector.unit(n, 1),)
    return PairCatalogueEntry(
        "su-n-so-rank1", n, triad, "II-BC1", build_root_system("A", n - 1), emb, BasePoint(a),
        f"(SU({n}), SO({n}), S(U(1)xU({n - 1})))",
    )


CATALOGUE = {"su2n-so-sp": _su2n_so_sp, "su-n-so-rank1": _su_n_so_rank1}


def catalogue_entry(name: str, n: int) -> PairCatalogueEntry:
    try:
        builder = CATALOGUE[name]
    except KeyError:
        raise DomainError(f"unknown pair {name!r}; available: {', '.join(sorted(CATALOGUE))}") from None
    return builder(int(n))


# --------------------------------------------------------------------------
# antipodal sets and intersections


def maximal_antipodal(delta: RootSystem, x0) -> tuple[ExactVector, ...]:
    """W(Delta) x0, the maximal antipodal set through x0 in torus coordinates."""
    v = _as_vector(x0)
    if v.is_zero():
        raise DomainError("base point x0 must be nonzero")
    return weyl_orbit(delta, v)


def _circle_start(roots: Sequence[ExactVector], x0: ExactVector, root: ExactVector) -> ExactVector | None:
    for X in reflection_closure(roots, [x0]):
        if root.dot(X) != 0:
            return X
    return None


def congruent_intersection(R: RootSystem, x0, H: PiPoint) -> IntersectionResult:
    """L n Ad(exp H) L for a symmetric pair with restricted root system R."""
    v = _as_vector(x0)
    if v.is_zero():
        raise DomainError("base point x0 must be nonzero")
    if v.ambient_dim != R.ambient_dim or H.ambient_dim != R.ambient_dim:
        raise DomainError("x0, H and R must share one ambient dimension")
    for lam in R.roots:
        val = H.pairing(lam)
        if _is_int(val):
            return IntersectionResult(
                CONTINUUM, witness=Witness(lam, "congruent", val, _circle_start(R.roots, v, lam))
            )
    return IntersectionResult(DISCRETE, weyl_orbit(R, v))


def orbit_equality_chain(entry: PairCatalogueEntry, x0) -> tuple[tuple[ExactVector, ...], tuple[ExactVector, ...]]:
    """(W(Sigma~) x0, W(Delta) x0 n a), both in chart coordinates of a."""
    bp = entry.validate_x0(x0)
    left = reflection_closure(entry.triad.sigma_tilde, [bp.vector])
    image = [entry.to_torus(b) for b in entry.triad.a_basis]
    # sparse normal vectors: the membership test runs over the whole torus orbit
    normals = [[(i, c) for i, c in enumerate(nv.coords) if c] for nv in orthogonal_complement(image, entry.delta.ambient_dim)]
    chart = Projector(row_basis(entry.embedding))
    back = Projector(list(entry.embedding))
    right = []
    for v in weyl_orbit(entry.delta, entry.to_torus(bp.vector)):
        if all(not sum(c * v.coords[i] for i, c in nv) for nv in normals):
            assert in_span(v, image)
            assert chart(v) == v
            right.append(ExactVector(back.coefficients(v)))
    return left, tuple(sorted(right))


def noncongruent_intersection(
    triad: SymmetricTriad, x0, H: PiPoint, entry: PairCatalogueEntry | None = None
) -> IntersectionResult:
    """L0 n Ad(exp H) L1 via the symmetric triad.

    With a catalogue ``entry`` the discrete answer is also computed as
    W(Delta) x0 n a and the two sets are required to coincide.
    """
    require_triad(triad)
    v = _as_vector(x0)
    if v.ambient_dim != triad.ambient_dim:
        raise DomainError(f"x0 has {v.ambient_dim} coordinates, triad lives in {triad.ambient_dim}")
    if v.is_zero():
        raise DomainError("base point x0 must be nonzero")
    if not triad.contains(v):
        raise DomainError(f"x0 = {v} is not in a")
    if triad.is_direct_sum:
        for offset, comp in triad.components:
            if ExactVector(v.coords[offset:offset + comp.ambient_dim]).is_zero():
                raise DomainError(f"x0 has zero component in the factor {comp.name}")
    reg = is_regular(triad, H)
    if not reg:
        bad = reg.violations[0]
        cls = "i" if bad.kind == "sigma" else "ii"
        X = _circle_start(triad.sigma, v, bad.root) if triad.sigma else v
        if X is None and bad.root.dot(v) != 0:
            X = v
        return IntersectionResult(CONTINUUM, witness=Witness(bad.root, cls, bad.value, X))
    points = reflection_closure(triad.sigma_tilde, [v])
    chain = None
    if entry is not None:
        left, chain = orbit_equality_chain(entry, v)
        if set(chain) != set(points):
            raise AssertionError(f"W(Sigma~)x0 and W(Delta)x0 n a differ: {len(points)} vs {len(chain)}")
    return IntersectionResult(DISCRETE, points, chain=chain)


def generic_regular_points(obj, count: int = 3) -> list[PiPoint]:
    """Deterministic regular points q = sum_k (j / p_k) b_k, j = 1, 2, ..."""
    if isinstance(obj, RootSystem):
        basis = row_basis(obj.roots)
        dim = obj.ambient_dim

        def ok(q: PiPoint) -> bool:
            return all(not _is_int(q.pairing(r)) for r in obj.roots)
    else:
        basis = obj.a_basis
        dim = obj.ambient_dim

        def ok(q: PiPoint) -> bool:
            return is_regular(obj, q).regular

    out = []
    j = 1
    while len(out) < count:
        q = ExactVector.zero(dim)
        for b, p in zip(basis, _PRIMES):
            q = q + Fraction(j * (1 + 7 * len(out)), p) * b
        pt = PiPoint(q)
        if ok(pt) and pt not in out:
            out.append(pt)
        j += 1
        if j > 10_000:
            raise DomainError("could not find regular points")
    return out


def tightness_count(obj, x0, entry: PairCatalogueEntry | None = None) -> tuple[int, int | None]:
    """Cardinality of the discrete intersection and the catalogue value of SB(L; Z2)."""
    results = []
    for H in generic_regular_points(obj, 3):
        if isinstance(obj, RootSystem):
            results.append(congruent_intersection(obj, x0, H))
        else:
            results.append(noncongruent_intersection(obj, x0, H, entry))
    sets = {r.points for r in results}
    if len(sets) != 1 or not results[0].discrete:
        raise AssertionError("discrete intersection depends on the regular point")
    ref = entry.sb_reference(x0) if entry is not None else None
    return results[0].cardinality, ref


# --------------------------------------------------------------------------
# doubled triads (cases 3 and 4)


def _double(v: ExactVector, copies: int) -> ExactVector:
    coords = []
    for k in range(copies):
        sign = 1 if k % 2 == 0 else -1
        coords.extend(sign * c for c in v.coords)
    return ExactVector(coords)


def matsuki_doubling(case: int, base: RootSystem) -> SymmetricTriad:
    """Sigma~ = Sigma = W = {(a,-a,a,-a)} (case 3) or {(a,-a)} (case 4) for a in base."""
    if case not in (3, 4):
        raise DomainError("matsuki_doubling handles cases 3 and 4 only")
    copies = 4 if case == 3 else 2
    roots = [_double(r, copies) for r in base.roots]
    space = [_double(b, copies) for b in row_basis(base.roots)]
    return SymmetricTriad.from_sets(roots, roots, space=space, name=f"case{case}({base.label})")


def doubled_point(case: int, h: ExactVector) -> PiPoint:
    """The point (h,-h,h,-h) or (h,-h) of the doubled a."""
    return PiPoint(_double(h, 4 if case == 3 else 2))


def base_regular_for_doubling(case: int, base: RootSystem, h: ExactVector) -> bool:
    """Regularity of the doubled point read off in base coordinates.

    <(a,-a,..), (h,-h,..)> = c <a, h> with c = 4 or 2, and Sigma = W, so the
    doubled point is regular iff 2c<a, h> is never an integer.
    """
    c = 4 if case == 3 else 2
    return all(not _is_int(2 * c * r.dot(h)) for r in base.roots)


__all__ = [
    "BasePoint",
    "CATALOGUE",
    "CONTINUUM",
    "DISCRETE",
    "IntersectionResult",
    "PairCatalogueEntry",
    "Witness",
    "base_regular_for_doubling",
    "catalogue_entry",
    "congruent_intersection",
    "doubled_point",
    "generic_regular_points",
    "matsuki_doubling",
    "maximal_antipodal",
    "noncongruent_intersection",
    "orbit_equality_chain",
    "tightness_count",
]
