"""Exact rational vectors and the small amount of linear algebra built on them.

Everything here uses :class:`fractions.Fraction`; matrix work (rank, solving,
projection) is delegated to sympy's ``DomainMatrix`` over ``QQ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DomainError

Rational = Fraction


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions, gmpy/sympy rationals and "p/q" strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    # gmpy2.mpq, sympy Rational, PythonMPQ
    return Fraction(int(x.numerator), int(x.denominator))


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class ExactVector:
    """Vector with rational coordinates and the standard dot product.

    Fractions are always reduced with the sign on the numerator, so the tuple of
    coordinates is a canonical hash key and ordering is lexicographic.
    """

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(to_fraction(c) for c in coords))

    @classmethod
    def zero(cls, dim: int) -> "ExactVector":
        return cls((0,) * dim)

    @classmethod
    def unit(cls, dim: int, i: int) -> "ExactVector":
        return cls(1 if j == i else 0 for j in range(dim))

    @classmethod
    def parse(cls, text: str) -> "ExactVector":
        """Parse a comma separated list such as ``"1/7, 2/7, -3/7"``."""
        parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
        if not parts:
            raise DomainError(f"empty vector: {text!r}")
        try:
            return cls(Fraction(p.strip()) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational vector {text!r}: {exc}") from None

    @property
    def ambient_dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "ExactVector") -> None:
        if len(self.coords) != len(other.coords):
            raise DomainError(
                f"dimension mismatch: {len(self.coords)} vs {len(other.coords)}"
            )

    def __add__(self, other: "ExactVector") -> "ExactVector":
        self._check(other)
        return ExactVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "ExactVector") -> "ExactVector":
        self._check(other)
        return ExactVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "ExactVector":
        return ExactVector(-a for a in self.coords)

    def __mul__(self, scalar) -> "ExactVector":
        s = to_fraction(scalar)
        return ExactVector(s * a for a in self.coords)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "ExactVector":
        s = to_fraction(scalar)
        return ExactVector(a / s for a in self.coords)

    def dot(self, other: "ExactVector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def norm2(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def lex_positive(self) -> bool:
        """True when the first nonzero coordinate is positive."""
        for c in self.coords:
            if c:
                return c > 0
        return False

    def to_strings(self) -> list[str]:
        return [format_fraction(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"

    def __repr__(self) -> str:
        return f"ExactVector({self})"


def _dm(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[QQ(c.numerator, c.denominator) for c in r] for r in rows], (len(rows), ncols), QQ)


def _rows(vectors: Sequence[ExactVector]) -> DomainMatrix:
    if not vectors:
        raise DomainError("empty vector list")
    dim = vectors[0].ambient_dim
    for v in vectors:
        if v.ambient_dim != dim:
            raise DomainError("dimension mismatch in vector list")
    return _dm([v.coords for v in vectors], dim)


def rank(vectors: Sequence[ExactVector]) -> int:
    if not vectors:
        return 0
    return _rows(list(vectors)).rank()


def row_basis(vectors: Sequence[ExactVector]) -> tuple[ExactVector, ...]:
    """A basis (in reduced row echelon form) of the span of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return ()
    rref, pivots = _rows(vectors).rref()
    return tuple(ExactVector(to_fraction(c) for c in row) for row in rref.to_list()[: len(pivots)])


def orthogonal_complement(vectors: Sequence[ExactVector], dim: int) -> tuple[ExactVector, ...]:
    """Basis of the orthogonal complement of span(vectors) in Q^dim."""
    vectors = [v for v in vectors if not v.is_zero()]
    if not vectors:
        return tuple(ExactVector.unit(dim, i) for i in range(dim))
    null = _rows(vectors).nullspace()
    return tuple(ExactVector(to_fraction(c) for c in row) for row in null.to_list())


def solve(matrix_rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix_rows)
    a = _dm(matrix_rows, n)
    b = _dm([[to_fraction(x)] for x in rhs], 1)
    if a.rank() < n:
        raise DomainError("singular linear system")
    x = a.inv() * b
    return [to_fraction(r[0]) for r in x.to_list()]


def in_span(v: ExactVector, basis: Sequence[ExactVector]) -> bool:
    if not basis:
        return v.is_zero()
    return rank(list(basis) + [v]) == rank(list(basis))


class Projector:
    """Orthogonal projection onto the span of a linearly independent list.

    Results stay in ambient coordinates, so no square roots appear.
    """

    def __init__(self, basis: Sequence[ExactVector]):
        basis = list(basis)
        if not basis:
            raise DomainError("cannot project onto the zero subspace")
        if rank(basis) != len(basis):
            raise DomainError("subspace basis is linearly dependent")
        self.basis = tuple(basis)
        self.dim = basis[0].ambient_dim
        gram = _dm([[b.dot(c) for c in basis] for b in basis], len(basis))
        self._gram_inv = [[to_fraction(x) for x in r] for r in gram.inv().to_list()]

    def coefficients(self, v: ExactVector) -> list[Fraction]:
        rhs = [b.dot(v) for b in self.basis]
        k = len(self.basis)
        return [sum((self._gram_inv[i][j] * rhs[j] for j in range(k)), Fraction(0)) for i in range(k)]

    def __call__(self, v: ExactVector) -> ExactVector:
        out = ExactVector.zero(self.dim)
        for c, b in zip(self.coefficients(v), self.basis):
            if c:
                out = out + c * b
        return out


def sorted_vectors(vectors: Iterable[ExactVector]) -> tuple[ExactVector, ...]:
    return tuple(sorted(set(vectors)))
