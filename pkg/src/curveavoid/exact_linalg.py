"""Exact linear algebra over the rationals and the Gaussian rationals.

Every geometric predicate in this package reduces to a rank, kernel, or
complement computation on a small matrix.  All of it is exact: entries are
`fractions.Fraction` or `GaussianRational`, and elimination never rounds,
so "in general position" is decided by arithmetic, not by tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TypeVar, Union

RationalLike = Union[int, Fraction]


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: GQLike) -> "GaussianRational":
        o = gq(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: GQLike) -> "GaussianRational":
        o = gq(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: GQLike) -> "GaussianRational":
        return gq(other) - self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: GQLike) -> "GaussianRational":
        o = gq(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: GQLike) -> "GaussianRational":
        o = gq(other)
        n = o.norm2()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: GQLike) -> "GaussianRational":
        return gq(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            istr = "i"
        elif self.im == -1:
            istr = "-i"
        else:
            istr = f"{self.im}i"
        if not self.re:
            return istr
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        tail = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{tail}"


GQLike = Union[int, Fraction, GaussianRational]


def gq(x: GQLike, im: RationalLike = 0) -> GaussianRational:
    """Coerce to a Gaussian rational; `gq(a, b)` builds a + bi."""
    if isinstance(x, GaussianRational):
        if im:
            raise ValueError("imaginary part given twice")
        return x
    return GaussianRational(_frac(x), _frac(im))


GQ_ZERO = GaussianRational(Fraction(0), Fraction(0))
GQ_ONE = GaussianRational(Fraction(1), Fraction(0))
GQ_I = GaussianRational(Fraction(0), Fraction(1))

RationalVector = tuple[Fraction, ...]
ComplexVector = tuple[GaussianRational, ...]

T = TypeVar("T", Fraction, GaussianRational)


def _check_rect(rows: Sequence[Sequence[T]]) -> int:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return widths.pop() if widths else 0


def _rref(rows: Sequence[Sequence[T]]) -> tuple[list[list[T]], list[int]]:
    """Reduced row echelon form with unit pivots; returns (rows, pivot cols)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    width = len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(width):
        pivot = next((i for i in range(row, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = m[row][col]
        m[row] = [x / inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m[:row], pivots


def _kernel(rows: Sequence[Sequence[T]], width: int, one: T) -> list[tuple[T, ...]]:
    reduced, pivots = _rref(rows)
    zero = one - one
    free = [c for c in range(width) if c not in pivots]
    basis: list[tuple[T, ...]] = []
    for fc in free:
        v = [zero] * width
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(_scale_first_nonzero(tuple(v)))
    return basis


def _scale_first_nonzero(v: tuple[T, ...]) -> tuple[T, ...]:
    lead = next((x for x in v if x), None)
    if lead is None:
        return v
    return tuple(x / lead for x in v)


def _real_rows(rows: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    return [[_frac(x) for x in r] for r in rows]


def _complex_rows(rows: Sequence[Sequence[GQLike]]) -> list[list[GaussianRational]]:
    return [[gq(x) for x in r] for r in rows]


def rank_real(rows: Sequence[Sequence[RationalLike]]) -> int:
    """Rank of a matrix with 6 rational columns."""
    m = _real_rows(rows)
    if m and _check_rect(m) != 6:
        raise ValueError("real matrices here have exactly 6 columns")
    return len(_rref(m)[1])


def rank_complex(rows: Sequence[Sequence[GQLike]]) -> int:
    m = _complex_rows(rows)
    _check_rect(m)
    return len(_rref(m)[1])


def kernel_real(rows: Sequence[Sequence[RationalLike]], width: int) -> list[RationalVector]:
    """Basis of the right kernel, each vector scaled so its first nonzero entry is 1."""
    m = _real_rows(rows)
    if m and _check_rect(m) != width:
        raise ValueError(f"expected {width} columns")
    return _kernel(m, width, Fraction(1))


def kernel_complex(rows: Sequence[Sequence[GQLike]], width: int | None = None) -> list[ComplexVector]:
    """Basis of the right kernel over Q(i), canonically scaled."""
    m = _complex_rows(rows)
    w = _check_rect(m) if m else width
    if w is None:
        raise ValueError("width required for an empty matrix")
    if m and width is not None and w != width:
        raise ValueError(f"expected {width} columns")
    return _kernel(m, w, GQ_ONE)


def orthogonal_complement(rows: Sequence[Sequence[RationalLike]]) -> list[RationalVector]:
    """Basis of the Euclidean orthogonal complement in R^6 of the row span.

    Applying this twice returns a basis of the original span, and the two
    dimensions always add up to 6.
    """
    m = _real_rows(rows)
    if m and _check_rect(m) != 6:
        raise ValueError("complements are taken inside R^6")
    return _kernel(m, 6, Fraction(1))


def solve_complex(
    rows: Sequence[Sequence[GQLike]], rhs: Sequence[GQLike]
) -> ComplexVector | None:
    """One exact solution of m x = rhs, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = _complex_rows(rows)
    b = [gq(x) for x in rhs]
    if len(m) != len(b):
        raise ValueError("right-hand side length mismatch")
    width = _check_rect(m)
    augmented = [row + [val] for row, val in zip(m, b)]
    reduced, pivots = _rref(augmented)
    if width in pivots:
        return None
    x = [GQ_ZERO] * width
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][width]
    return tuple(x)


def inverse_complex(rows: Sequence[Sequence[GQLike]]) -> list[ComplexVector]:
    """Exact inverse of a square matrix over Q(i)."""
    m = _complex_rows(rows)
    n = len(m)
    if n == 0 or _check_rect(m) != n:
        raise ValueError("inverse of a non-square matrix")
    augmented = [row + [GQ_ONE if i == j else GQ_ZERO for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = _rref(augmented)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [tuple(reduced[i][n:]) for i in range(n)]
