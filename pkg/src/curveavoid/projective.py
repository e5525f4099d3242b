"""Points, lines, and hyperplanes in small complex projective spaces.

Homogeneous data is stored in a canonical scaling (first nonzero
coordinate equal to 1), so structural equality is projective equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .exact_linalg import (
    ComplexVector,
    GQLike,
    gq,
    kernel_complex,
    rank_complex,
    _scale_first_nonzero,
)


def _canonical(coords: Sequence[GQLike], what: str) -> ComplexVector:
    v = tuple(gq(x) for x in coords)
    if len(v) < 2:
        raise ValueError(f"{what} needs at least 2 homogeneous coordinates")
    if not any(v):
        raise ValueError(f"zero vector does not determine a {what}")
    return _scale_first_nonzero(v)


@dataclass(frozen=True, slots=True)
class ProjPoint:
    """A point of CP^n, canonically scaled."""

    coords: ComplexVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _canonical(self.coords, "point"))


@dataclass(frozen=True, slots=True)
class ProjLine:
    """A line in CP^2 (or a hyperplane of CP^n), by its coefficient vector."""

    coefficients: ComplexVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _canonical(self.coefficients, "line"))


@dataclass(frozen=True, slots=True)
class ComplexHyperplane:
    """The zero set of a nonzero linear form on C^(n+1).

    Coefficients are kept as given; equality compares projective classes.
    """

    coefficients: ComplexVector

    def __post_init__(self) -> None:
        v = tuple(gq(x) for x in self.coefficients)
        if len(v) < 2:
            raise ValueError("a hyperplane needs at least 2 coefficients")
        if not any(v):
            raise ValueError("zero form does not define a hyperplane")
        object.__setattr__(self, "coefficients", v)

    def canonical(self) -> ComplexVector:
        return _scale_first_nonzero(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComplexHyperplane):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())


def project_point(v: Sequence[GQLike]) -> ProjPoint:
    """Class of a nonzero vector; rejects the zero vector."""
    return ProjPoint(tuple(gq(x) for x in v))


def project_hyperplane(h: ComplexHyperplane) -> ProjLine:
    """The projective line (hyperplane) cut out by h."""
    return ProjLine(h.coefficients)


def incident(p: ProjPoint, line: ProjLine) -> bool:
    if len(p.coords) != len(line.coefficients):
        raise ValueError("dimension mismatch")
    return not sum((c * x for c, x in zip(line.coefficients, p.coords)), gq(0))


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The unique line of CP^2 through two distinct points."""
    if len(p.coords) != 3 or len(q.coords) != 3:
        raise ValueError("line_through works in CP^2")
    if p == q:
        raise ValueError("two distinct points are needed to span a line")
    basis = kernel_complex([p.coords, q.coords])
    assert len(basis) == 1
    return ProjLine(basis[0])


def intersect_lines(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """The intersection point of two distinct lines of CP^2."""
    if len(l1.coefficients) != 3 or len(l2.coefficients) != 3:
        raise ValueError("intersect_lines works in CP^2")
    if l1 == l2:
        raise ValueError("identical lines meet in a line, not a point")
    basis = kernel_complex([l1.coefficients, l2.coefficients])
    assert len(basis) == 1
    return ProjPoint(basis[0])


def lines_in_general_position(lines: Sequence[ProjLine]) -> bool:
    """True when every 3 of the coefficient vectors are independent.

    Fewer than 3 lines is rejected: the predicate is about triples.
    """
    if len(lines) < 3:
        raise ValueError("general position needs at least 3 lines")
    if any(len(l.coefficients) != 3 for l in lines):
        raise ValueError("general position of lines is a CP^2 predicate")
    return all(
        rank_complex([a.coefficients, b.coefficients, c.coefficients]) == 3
        for a, b, c in combinations(lines, 3)
    )
