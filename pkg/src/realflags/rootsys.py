"""Crystallographic root systems with exact rational coordinates.

Roots are stored as :class:`ExactVector` in an ambient ``Q^d`` with the
standard dot product.  Reflection groups act by breadth-first closure with
exact dedup, and every set-valued result is returned in lexicographic order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .exact import ExactVector, Projector, rank, sorted_vectors

VALID_RANKS = {
    "A": range(1, 64),
    "B": range(2, 64),
    "C": range(2, 64),
    "D": range(3, 64),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


def reflect(alpha: ExactVector, v: ExactVector) -> ExactVector:
    """s_alpha(v) = v - 2<alpha, v>/|alpha|^2 alpha."""
    if alpha.ambient_dim != v.ambient_dim:
        raise DomainError(f"dimension mismatch: {alpha.ambient_dim} vs {v.ambient_dim}")
    n2 = alpha.norm2()
    if n2 == 0:
        raise DomainError("cannot reflect in the zero vector")
    c = 2 * alpha.dot(v) / n2
    return v - c * alpha if c else v


def cartan_integer(alpha: ExactVector, beta: ExactVector) -> Fraction:
    """2<alpha, beta>/|beta|^2 (an integer for crystallographic pairs)."""
    return 2 * alpha.dot(beta) / beta.norm2()


def lex_positive_roots(roots: Iterable[ExactVector]) -> tuple[ExactVector, ...]:
    return tuple(r for r in sorted_vectors(roots) if r.lex_positive())


def indecomposable(positive: Sequence[ExactVector]) -> tuple[ExactVector, ...]:
    """Positive roots that are not a sum of two positive roots.

    Repeated summands are allowed so that 2a is excluded in non-reduced systems.
    """
    pos = set(positive)
    sums = {a + b for a in positive for b in positive}
    return tuple(r for r in sorted(pos) if r not in sums)


def simple_roots_lex(roots: Iterable[ExactVector]) -> tuple[ExactVector, ...]:
    """Simple roots for the positive system cut out by lexicographic order."""
    return indecomposable(lex_positive_roots(roots))


def dynkin_components(simple: Sequence[ExactVector]) -> list[list[ExactVector]]:
    """Connected components of the graph with an edge where <a_i, a_j> != 0."""
    simple = list(simple)
    seen: set[int] = set()
    comps = []
    for start in range(len(simple)):
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            comp.append(simple[i])
            for j in range(len(simple)):
                if j not in seen and simple[i].dot(simple[j]) != 0:
                    seen.add(j)
                    queue.append(j)
        comps.append(comp)
    return comps


def reflection_closure(
    generators: Sequence[ExactVector], seeds: Iterable[ExactVector]
) -> tuple[ExactVector, ...]:
    """Orbit of ``seeds`` under the group generated by reflections in ``generators``."""
    gens = [g for g in generators if not g.is_zero()]
    moves = [_signed_swap(g) for g in gens]
    if all(m is not None for m in moves):
        return _permutation_closure(moves, seeds)
    return _general_closure(gens, seeds)


def _signed_swap(g: ExactVector) -> tuple[int, int, int] | None:
    """(i, j, sign) when s_g swaps x_i and sign*x_j (i == j: x_i -> -x_i); None otherwise."""
    support = [i for i, c in enumerate(g.coords) if c]
    if len(support) == 1:
        return support[0], support[0], -1
    if len(support) == 2:
        i, j = support
        if g[i] == -g[j]:
            return i, j, 1
        if g[i] == g[j]:
            return i, j, -1
    return None


def _permutation_closure(moves, seeds) -> tuple[ExactVector, ...]:
    # Coordinate shuffles on integer codes of the values: no rational arithmetic or hashing.
    seeds = list(seeds)
    values = sorted({c for s in seeds for c in s.coords} | {-c for s in seeds for c in s.coords})
    code = {v: k for k, v in enumerate(values)}
    neg = [code[-v] for v in values]
    seen = {tuple(code[c] for c in s.coords) for s in seeds}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for i, j, sign in moves:
            w = list(v)
            if i == j:
                w[i] = neg[v[i]]
            elif sign > 0:
                w[i], w[j] = v[j], v[i]
            else:
                w[i], w[j] = neg[v[j]], neg[v[i]]
            w = tuple(w)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    # codes are assigned in increasing value order, so sorting codes sorts the vectors
    return tuple(ExactVector(values[k] for k in c) for c in sorted(seen))


def _general_closure(gens, seeds) -> tuple[ExactVector, ...]:
    gens = [(g, Fraction(2) / g.norm2()) for g in gens]
    seen = set(seeds)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for g, k in gens:
            c = k * g.dot(v)
            if not c:
                continue
            w = v - c * g
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class RootSystem:
    """A finite reflection-closed set of nonzero rational vectors.

    ``multiplicity`` defaults to 1 for every root. ``label`` is e.g. ``"A2"``,
    ``"restricted"`` or ``"custom"``.
    """

    roots: tuple[ExactVector, ...]
    simple: tuple[ExactVector, ...]
    label: str = "custom"
    multiplicity: Mapping[ExactVector, int] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.roots:
            raise DomainError("a root system needs at least one root")
        roots = sorted_vectors(self.roots)
        if any(r.is_zero() for r in roots):
            raise DomainError("0 is not a root")
        dim = roots[0].ambient_dim
        if any(r.ambient_dim != dim for r in roots):
            raise DomainError("roots live in different ambient dimensions")
        mult = {r: int(self.multiplicity.get(r, 1)) for r in roots}
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "simple", tuple(self.simple))
        object.__setattr__(self, "multiplicity", MappingProxyType(mult))

    @classmethod
    def from_roots(
        cls,
        roots: Iterable[ExactVector],
        label: str = "custom",
        multiplicity: Mapping[ExactVector, int] | None = None,
        simple: Sequence[ExactVector] | None = None,
    ) -> "RootSystem":
        roots = sorted_vectors(roots)
        if simple is None:
            simple = simple_roots_lex(roots)
        return cls(roots, tuple(simple), label, dict(multiplicity or {}))

    @property
    def ambient_dim(self) -> int:
        return self.roots[0].ambient_dim

    @property
    def rank(self) -> int:
        return rank(list(self.roots))

    def simple_coefficients(self, v: ExactVector) -> list[Fraction]:
        return Projector(self.simple).coefficients(v)

    @property
    def positive(self) -> tuple[ExactVector, ...]:
        proj = Projector(self.simple)
        return tuple(r for r in self.roots if all(c >= 0 for c in proj.coefficients(r)))

    def is_closed(self) -> bool:
        rs = set(self.roots)
        return all(reflect(a, b) in rs for a in self.roots for b in self.roots)

    def is_irreducible(self) -> bool:
        return len(dynkin_components(self.simple)) == 1

    def highest_root(self) -> ExactVector:
        """Positive root with the largest simple-root height (ties broken lexicographically)."""
        proj = Projector(self.simple)
        return max(self.positive, key=lambda r: (sum(proj.coefficients(r)), r))

    def rho2(self) -> ExactVector:
        """Sum of positive roots; a regular (strictly dominant) point."""
        out = ExactVector.zero(self.ambient_dim)
        for r in self.positive:
            out = out + r
        return out

    def weyl_order(self) -> int:
        return len(weyl_orbit(self, self.rho2()))

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, v) -> bool:
        return v in self.multiplicity


def weyl_orbit(system: RootSystem, x: ExactVector) -> tuple[ExactVector, ...]:
    """The W(system)-orbit of ``x`` in lexicographic order."""
    if x.ambient_dim != system.ambient_dim:
        raise DomainError(
            f"dimension mismatch: point has {x.ambient_dim} coordinates, "
            f"root system lives in {system.ambient_dim}"
        )
    return reflection_closure(system.simple, [x])


def _vec(*coords) -> ExactVector:
    return ExactVector(coords)


def _e(dim: int, *pairs) -> ExactVector:
    c = [Fraction(0)] * dim
    for i, v in pairs:
        c[i] = Fraction(v)
    return ExactVector(c)


def bourbaki_simple_roots(family: str, rank_: int) -> tuple[ExactVector, ...]:
    n = rank_
    h = Fraction(1, 2)
    if family == "A":
        return tuple(_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n))
    if family in "BCD":
        chain = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        last = {"B": _e(n, (n - 1, 1)), "C": _e(n, (n - 1, 2)), "D": _e(n, (n - 2, 1), (n - 1, 1))}
        return tuple(chain + [last[family]])
    if family == "E":
        # E6 and E7 sit inside the E8 lattice on the first 6/7 simple roots.
        a1 = ExactVector([h, -h, -h, -h, -h, -h, -h, h])
        a2 = _e(8, (0, 1), (1, 1))
        rest = [_e(8, (i - 1, -1), (i, 1)) for i in range(1, 7)]
        return tuple([a1, a2] + rest)[:n]
    if family == "F":
        return (_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)), ExactVector([h, -h, -h, -h]))
    if family == "G":
        return (_vec(1, -1, 0), _vec(-2, 1, 1))
    raise DomainError(f"unknown family {family!r}")


def build_root_system(family: str, rank_: int) -> RootSystem:
    """Standard rational realization of a crystallographic family, Bourbaki order."""
    family = str(family).upper()
    if family not in VALID_RANKS:
        raise DomainError(f"unknown root system family {family!r}; expected one of A-G")
    if rank_ not in VALID_RANKS[family]:
        r = VALID_RANKS[family]
        raise DomainError(
            f"invalid rank {rank_} for family {family}; allowed {r.start}..{r.stop - 1}"
        )
    simple = bourbaki_simple_roots(family, rank_)
    roots = reflection_closure(simple, list(simple) + [-s for s in simple])
    return RootSystem(roots, simple, f"{family}{rank_}")


def restricted_root_system(delta: RootSystem, subspace: Sequence[ExactVector]) -> RootSystem:
    """Nonzero orthogonal projections of ``delta`` onto span(subspace).

    Projections stay in ambient coordinates; the multiplicity of a projected
    root counts its preimages, weighted by their own multiplicities.
    """
    proj = Projector(subspace)
    counts: dict[ExactVector, int] = {}
    for r in delta.roots:
        p = proj(r)
        if not p.is_zero():
            counts[p] = counts.get(p, 0) + delta.multiplicity[r]
    if not counts:
        raise DomainError("every root projects to zero on this subspace")
    return RootSystem.from_roots(counts, "restricted", counts)


def pullback(v: ExactVector, embedding: Sequence[ExactVector]) -> ExactVector:
    """Coordinates of the functional <v, .> on a chart whose basis vectors map to ``embedding``."""
    return ExactVector(v.dot(e) for e in embedding)


def pushforward(c: ExactVector, embedding: Sequence[ExactVector]) -> ExactVector:
    """Image of chart coordinates ``c`` under the linear map sending e_k to embedding[k]."""
    if len(c) != len(embedding):
        raise DomainError("chart dimension mismatch")
    out = ExactVector.zero(embedding[0].ambient_dim)
    for ck, e in zip(c, embedding):
        if ck:
            out = out + ck * e
    return out


@dataclass(frozen=True)
class TRootData:
    complementary: tuple[ExactVector, ...]
    t_roots: Mapping[ExactVector, int]
    positive_t_roots: tuple[ExactVector, ...]
    delta_vector: ExactVector


def complementary_and_t_roots(delta: RootSystem, x0: ExactVector) -> TRootData:
    """Complementary roots, T-roots with multiplicities, and their weighted positive sum.

    T-roots are the projections of complementary roots onto the orthogonal
    complement of the roots vanishing on ``x0``; positivity means <lambda, x0> > 0.
    """
    if x0.ambient_dim != delta.ambient_dim:
        raise DomainError("dimension mismatch between x0 and the root system")
    if x0.is_zero():
        raise DomainError("base point x0 must be nonzero")
    comp = tuple(r for r in delta.roots if r.dot(x0) != 0)
    if not comp:
        raise DomainError("x0 is orthogonal to every root (no complementary roots)")
    stab = [r for r in delta.roots if r.dot(x0) == 0]
    stab_basis = _independent(stab)
    if stab_basis:
        p = Projector(stab_basis)
        project = lambda v: v - p(v)  # noqa: E731
    else:
        project = lambda v: v  # noqa: E731
    t_roots: dict[ExactVector, int] = {}
    for r in comp:
        lam = project(r)
        t_roots[lam] = t_roots.get(lam, 0) + delta.multiplicity[r]
    t_roots = dict(sorted(t_roots.items()))
    positive = tuple(lam for lam in t_roots if lam.dot(x0) > 0)
    dv = ExactVector.zero(delta.ambient_dim)
    for lam in positive:
        dv = dv + t_roots[lam] * lam
    return TRootData(comp, MappingProxyType(t_roots), positive, dv)


def _independent(vectors: Sequence[ExactVector]) -> list[ExactVector]:
    basis: list[ExactVector] = []
    for v in vectors:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
    return basis
