"""Real subspaces of R^6 = C^3, general position, and the classification rule.

A complex hyperplane realifies to a codimension-2 real subspace.  A triple
of codimension-2 subspaces is "in general position" when the orthogonal
complements together span R^6; since each subspace is the kernel of its
defining forms, the complement is the row span of those forms and the
predicate is a single exact rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, Sequence

from .exact_linalg import (
    ComplexVector,
    GaussianRational,
    GQLike,
    RationalLike,
    RationalVector,
    _frac,
    _rref,
    gq,
    rank_real,
)
from .projective import ComplexHyperplane

if TYPE_CHECKING:
    from .curves import ExpAffineCurve

ALL_CURVES_CONSTANT = "AllCurvesConstant"
WITNESS_EXISTS = "WitnessExists"


@dataclass(frozen=True, slots=True)
class RealSubspace:
    """A linear subspace of R^6 cut out by independent linear forms.

    Coordinates are ordered (x1, y1, x2, y2, x3, y3) with z_j = x_j + i y_j.
    The forms are stored in reduced row echelon form, so two values are
    equal exactly when they describe the same subspace.
    """

    forms: tuple[RationalVector, ...]

    def __post_init__(self) -> None:
        rows = [[_frac(x) for x in f] for f in self.forms]
        if not rows:
            raise ValueError("a real subspace needs at least one defining form")
        if any(len(r) != 6 for r in rows):
            raise ValueError("defining forms have 6 coefficients")
        reduced, _ = _rref(rows)
        if not reduced:
            raise ValueError("zero form does not cut out a proper subspace")
        object.__setattr__(self, "forms", tuple(tuple(r) for r in reduced))

    @property
    def dimension(self) -> int:
        return 6 - len(self.forms)

    def contains(self, other: "RealSubspace") -> bool:
        """Exact containment other <= self, by a rank test on the forms."""
        stacked = list(self.forms) + list(other.forms)
        return rank_real(stacked) == len(other.forms)


@dataclass(frozen=True, slots=True)
class TripleRank:
    """Span dimension of the stacked complements for one triple (H~, H_j, H_k)."""

    pair: tuple[int, int]
    rank: int


@dataclass(frozen=True, slots=True)
class Verdict:
    tag: str
    witness: "ExpAffineCurve | None"
    evidence: tuple[TripleRank, ...]


def realify(h: ComplexHyperplane) -> RealSubspace:
    """The codimension-2 real subspace {Re(a.z) = 0, Im(a.z) = 0}."""
    if len(h.coefficients) != 3:
        raise ValueError("realification lives in C^3 = R^6")
    re_form: list[Fraction] = []
    im_form: list[Fraction] = []
    for a in h.coefficients:
        re_form.extend((a.re, -a.im))
        im_form.extend((a.im, a.re))
    return RealSubspace((tuple(re_form), tuple(im_form)))


def holomorphic_coefficients(form: Sequence[RationalLike]) -> ComplexVector:
    """Complex coefficients c with form(x, y) = Re(sum c_j z_j).

    The form acts on (x1, y1, x2, y2, x3, y3); c_j = a_j - i b_j where a_j
    and b_j multiply x_j and y_j.
    """
    f = [_frac(x) for x in form]
    if len(f) != 6:
        raise ValueError("expected a form on R^6")
    return tuple(gq(f[2 * j], -f[2 * j + 1]) for j in range(3))


def triple_in_general_position(a: RealSubspace, b: RealSubspace, c: RealSubspace) -> bool:
    """Whether the orthogonal complements of three codim-2 subspaces span R^6."""
    for s in (a, b, c):
        if s.dimension != 4:
            raise ValueError("general position is defined for codimension-2 subspaces")
    stacked = list(a.forms) + list(b.forms) + list(c.forms)
    return rank_real(stacked) == 6


def family_in_general_position(family: Sequence[RealSubspace]) -> bool:
    """Every triple of the family passes triple_in_general_position."""
    if len(family) < 3:
        raise ValueError("a family needs at least 3 members")
    return all(triple_in_general_position(a, b, c) for a, b, c in combinations(family, 3))


def extract_complex_hyperplane(s: RealSubspace) -> ComplexHyperplane:
    """The unique complex hyperplane contained in a real hyperplane of R^6.

    For {sum a_j x_j + b_j y_j = 0} it is {sum (a_j - i b_j) z_j = 0}.
    """
    if s.dimension != 5:
        raise ValueError("only real hyperplanes contain a unique complex hyperplane")
    return ComplexHyperplane(holomorphic_coefficients(s.forms[0]))


@dataclass(frozen=True, slots=True)
class CollapsedRealForm:
    """Restriction of a form on R^6 to the plane w -> (w, c2 w, c3 w).

    The restriction is a*Re(w) + b*Im(w); both coefficients are exact.
    """

    a: Fraction
    b: Fraction

    def evaluate(self, re_w: RationalLike, im_w: RationalLike) -> Fraction:
        return self.a * _frac(re_w) + self.b * _frac(im_w)


def collapse_real_form(s: RealSubspace, c2: GQLike, c3: GQLike) -> CollapsedRealForm:
    """Collapse the defining form of a real hyperplane along (w, c2 w, c3 w).

    Expanding Re(c w) = Re(c)Re(w) - Im(c)Im(w) and
    Im(c w) = Re(c)Im(w) + Im(c)Re(w) termwise gives

        a = a1 + a2 Re(c2) + a3 Re(c3) + b2 Im(c2) + b3 Im(c3)
        b = b1 + b2 Re(c2) + b3 Re(c3) - a2 Im(c2) - a3 Im(c3)
    """
    if s.dimension != 5:
        raise ValueError("collapse is defined for real hyperplanes")
    g = s.forms[0]
    a1, b1, a2, b2, a3, b3 = g
    u2, u3 = gq(c2), gq(c3)
    a = a1 + a2 * u2.re + a3 * u3.re + b2 * u2.im + b3 * u3.im
    b = b1 + b2 * u2.re + b3 * u3.re - a2 * u2.im - a3 * u3.im
    return CollapsedRealForm(a, b)


def _validate_four(hyperplanes: Sequence[ComplexHyperplane]) -> None:
    if len(hyperplanes) != 4:
        raise ValueError("classification takes exactly 4 complex hyperplanes")
    if any(len(h.coefficients) != 3 for h in hyperplanes):
        raise ValueError("hyperplanes live in C^3")
    for a, b in combinations(hyperplanes, 2):
        if a == b:
            raise ValueError("hyperplanes must be pairwise distinct")


def triple_ranks(
    hyperplanes: Sequence[ComplexHyperplane], s: RealSubspace
) -> tuple[TripleRank, ...]:
    """Span dimension of (H~, H_j, H_k) complements for every pair j < k."""
    _validate_four(hyperplanes)
    if s.dimension != 5:
        raise ValueError("classification takes a real hyperplane")
    ht = realify(extract_complex_hyperplane(s))
    realified = [realify(h) for h in hyperplanes]
    out = []
    for j, k in combinations(range(4), 2):
        stacked = list(ht.forms) + list(realified[j].forms) + list(realified[k].forms)
        out.append(TripleRank((j + 1, k + 1), rank_real(stacked)))
    return tuple(out)


def classify(hyperplanes: Sequence[ComplexHyperplane], s: RealSubspace) -> Verdict:
    """Decide whether curves avoiding the arrangement can have nonconstant image.

    With H~ the complex hyperplane inside s: if every triple (H~, H_j, H_k)
    is in general position, every entire curve avoiding the four hyperplanes
    and s projects to a constant in CP^2.  Otherwise a nonconstant witness
    is constructed and attached to the verdict.
    """
    evidence = triple_ranks(hyperplanes, s)
    degenerate = [t.pair for t in evidence if t.rank < 6]
    if not degenerate:
        return Verdict(ALL_CURVES_CONSTANT, None, evidence)
    from .curves import witness_degenerate_pair

    witness = witness_degenerate_pair(hyperplanes, s, degenerate[0])
    return Verdict(WITNESS_EXISTS, witness, evidence)
