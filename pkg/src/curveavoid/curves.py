"""Entire curves assembled from exponentials of polynomials.

A term is c * e^(p(z)) with a Gaussian-rational coefficient and a
polynomial exponent.  Sums of such terms admit exact identity tests:
exponentials of distinct polynomials are linearly independent, and for
constant exponents independence over the algebraic numbers is the
Lindemann-Weierstrass theorem.  Everything symbolic here is exact; only
the sampling verifier ever touches floating point.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count
from typing import Iterable, Iterator, Sequence

from .arrangement import (
    RealSubspace,
    extract_complex_hyperplane,
    holomorphic_coefficients,
    realify,
)
from .exact_linalg import (
    ComplexVector,
    GaussianRational,
    GQLike,
    GQ_ONE,
    GQ_ZERO,
    gq,
    inverse_complex,
    rank_complex,
    rank_real,
    solve_complex,
)
from .projective import ComplexHyperplane


class ConstructionError(RuntimeError):
    """Raised when a witness search exhausts its candidates."""


# ---------------------------------------------------------------------------
# polynomials with Gaussian-rational coefficients, low degree first

Poly = tuple[GaussianRational, ...]

POLY_ZERO: Poly = ()
POLY_Z: Poly = (GQ_ZERO, GQ_ONE)


def poly(coeffs: Sequence[GQLike]) -> Poly:
    """Canonical polynomial: coerced coefficients, trailing zeros stripped."""
    p = [gq(c) for c in coeffs]
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_constant(c: GQLike) -> Poly:
    return poly((c,))


def poly_sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly(
        [(p[i] if i < len(p) else GQ_ZERO) - (q[i] if i < len(q) else GQ_ZERO) for i in range(n)]
    )


def poly_eval(p: Poly, z: complex) -> complex:
    acc = 0j
    for c in reversed(p):
        acc = acc * z + c.to_complex()
    return acc


def poly_eval_derivative(p: Poly, z: complex) -> complex:
    acc = 0j
    for k in range(len(p) - 1, 0, -1):
        acc = acc * z + k * p[k].to_complex()
    return acc


def _gq_key(c: GaussianRational) -> tuple[Fraction, Fraction]:
    return (c.re, c.im)


def _poly_key(p: Poly) -> tuple:
    return (len(p), tuple(_gq_key(c) for c in p))


# ---------------------------------------------------------------------------
# formal constants sum_k c_k e^(r_k) with Gaussian-rational c_k, r_k

@dataclass(frozen=True, slots=True)
class ExpConstant:
    """A constant written as a sum of c * e^r over distinct Gaussian rationals r.

    By Lindemann-Weierstrass the e^r are linearly independent over the
    algebraic numbers, so this canonical form is zero as a complex number
    exactly when it has no terms.
    """

    terms: tuple[tuple[GaussianRational, GaussianRational], ...]

    def __post_init__(self) -> None:
        merged: dict[GaussianRational, GaussianRational] = {}
        for r, c in self.terms:
            acc = merged.get(r, GQ_ZERO) + c
            if acc:
                merged[r] = acc
            elif r in merged:
                del merged[r]
        ordered = tuple(sorted(merged.items(), key=lambda rc: _gq_key(rc[0])))
        object.__setattr__(self, "terms", ordered)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "ExpConstant") -> "ExpConstant":
        return ExpConstant(self.terms + other.terms)

    def __sub__(self, other: "ExpConstant") -> "ExpConstant":
        negated = tuple((r, -c) for r, c in other.terms)
        return ExpConstant(self.terms + negated)

    def __mul__(self, other: "ExpConstant") -> "ExpConstant":
        prods = [(r1 + r2, c1 * c2) for r1, c1 in self.terms for r2, c2 in other.terms]
        return ExpConstant(tuple(prods))

    def conjugate(self) -> "ExpConstant":
        return ExpConstant(tuple((r.conjugate(), c.conjugate()) for r, c in self.terms))

    def real_part(self) -> "ExpConstant":
        half = gq(Fraction(1, 2))
        scaled = tuple((r, c * half) for r, c in (self.terms + self.conjugate().terms))
        return ExpConstant(scaled)

    def to_complex(self) -> complex:
        return sum((c.to_complex() * cmath.exp(r.to_complex()) for r, c in self.terms), 0j)


def exp_constant(c: GQLike, r: GQLike = 0) -> ExpConstant:
    return ExpConstant(((gq(r), gq(c)),))


# ---------------------------------------------------------------------------
# exponential sums

@dataclass(frozen=True, slots=True)
class ExpPoly:
    """One term c * e^(p(z))."""

    coeff: GaussianRational
    exponent: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", gq(self.coeff))
        object.__setattr__(self, "exponent", poly(self.exponent))


@dataclass(frozen=True, slots=True)
class ExpSum:
    """A finite sum of exponential terms in canonical grouped form."""

    terms: tuple[ExpPoly, ...]

    def __post_init__(self) -> None:
        grouped: dict[Poly, GaussianRational] = {}
        for t in self.terms:
            acc = grouped.get(t.exponent, GQ_ZERO) + t.coeff
            if acc:
                grouped[t.exponent] = acc
            elif t.exponent in grouped:
                del grouped[t.exponent]
        ordered = tuple(
            ExpPoly(c, p) for p, c in sorted(grouped.items(), key=lambda pc: _poly_key(pc[0]))
        )
        object.__setattr__(self, "terms", ordered)

    def __add__(self, other: "ExpSum") -> "ExpSum":
        return ExpSum(self.terms + other.terms)

    def __neg__(self) -> "ExpSum":
        return self.scale(gq(-1))

    def scale(self, c: GQLike) -> "ExpSum":
        k = gq(c)
        return ExpSum(tuple(ExpPoly(t.coeff * k, t.exponent) for t in self.terms))


def exp_term(coeff: GQLike, exponent: Sequence[GQLike] = POLY_ZERO) -> ExpSum:
    return ExpSum((ExpPoly(gq(coeff), poly(exponent)),))


def exp_sum(terms: Iterable[tuple[GQLike, Sequence[GQLike]]]) -> ExpSum:
    return ExpSum(tuple(ExpPoly(gq(c), poly(p)) for c, p in terms))


def is_identically_zero(s: ExpSum) -> bool:
    """Exact: distinct exponent polynomials are linearly independent."""
    return not s.terms


def is_nowhere_zero(s: ExpSum) -> str:
    """'yes' for a single nonzero term, 'no' for the zero sum, else 'unknown'.

    Genuine multi-term sums can vanish; deciding that is the sampler's job.
    """
    if not s.terms:
        return "no"
    if len(s.terms) == 1:
        return "yes"
    return "unknown"


def constant_value(s: ExpSum) -> ExpConstant | None:
    """The value of s as a formal constant, when every exponent is constant."""
    if any(len(t.exponent) > 1 for t in s.terms):
        return None
    return ExpConstant(
        tuple((t.exponent[0] if t.exponent else GQ_ZERO, t.coeff) for t in s.terms)
    )


def evaluate_sum(s: ExpSum, z: complex) -> complex:
    return sum(
        (t.coeff.to_complex() * cmath.exp(poly_eval(t.exponent, z)) for t in s.terms), 0j
    )


def evaluate_sum_derivative(s: ExpSum, z: complex) -> complex:
    return sum(
        (
            t.coeff.to_complex()
            * poly_eval_derivative(t.exponent, z)
            * cmath.exp(poly_eval(t.exponent, z))
            for t in s.terms
        ),
        0j,
    )


# ---------------------------------------------------------------------------
# curves

@dataclass(frozen=True, slots=True)
class ExpAffineCurve:
    """An entire curve C -> C^3 whose components are exponential sums."""

    components: tuple[ExpSum, ExpSum, ExpSum]

    def __post_init__(self) -> None:
        if len(self.components) != 3:
            raise ValueError("curves here have exactly 3 components")
        if all(is_identically_zero(c) for c in self.components):
            raise ValueError("the zero curve has no projective image")

    @classmethod
    def from_terms(cls, *terms: tuple[GQLike, Sequence[GQLike]]) -> "ExpAffineCurve":
        if len(terms) != 3:
            raise ValueError("three components expected")
        return cls(tuple(exp_term(c, p) for c, p in terms))

    def evaluate(self, z: complex) -> tuple[complex, complex, complex]:
        return tuple(evaluate_sum(c, z) for c in self.components)


def apply_form(h: ComplexHyperplane | Sequence[GQLike], f: ExpAffineCurve) -> ExpSum:
    """The exponential sum a1 f1 + a2 f2 + a3 f3."""
    coeffs = h.coefficients if isinstance(h, ComplexHyperplane) else tuple(gq(x) for x in h)
    if len(coeffs) != 3:
        raise ValueError("forms on C^3 have 3 coefficients")
    acc = ExpSum(())
    for a, comp in zip(coeffs, f.components):
        acc = acc + comp.scale(a)
    return acc


def _dropped_constant(p: Poly) -> Poly:
    if not p:
        return POLY_ZERO
    return poly((GQ_ZERO,) + p[1:])


def _direction_groups(s: ExpSum) -> dict[Poly, ExpConstant]:
    """Group terms by exponent modulo constants; constants become e^r factors."""
    groups: dict[Poly, ExpConstant] = {}
    for t in s.terms:
        direction = _dropped_constant(t.exponent)
        r = t.exponent[0] if t.exponent else GQ_ZERO
        extra = exp_constant(t.coeff, r)
        groups[direction] = groups.get(direction, ExpConstant(())) + extra
    return {d: c for d, c in groups.items() if c}


def _constant_ratio(f: ExpSum, g: ExpSum) -> bool:
    """Whether f / g is a constant function, decided exactly.

    f = lambda * g forces the exponent directions to match group by group;
    the scalar is then consistent exactly when all cross products of the
    group coefficients agree, which is a formal identity of ExpConstants.
    """
    gf, gg = _direction_groups(f), _direction_groups(g)
    if set(gf) != set(gg):
        return False
    directions = sorted(gf, key=_poly_key)
    ref = directions[0]
    return all(not (gf[d] * gg[ref] - gf[ref] * gg[d]) for d in directions[1:])


def is_projectively_constant(f: ExpAffineCurve) -> bool:
    """Whether the image of f in CP^2 is a single point.

    For single-term components this is the classical criterion that the
    exponent differences are constant polynomials.
    """
    nonzero = [c for c in f.components if not is_identically_zero(c)]
    return all(_constant_ratio(a, b) for a, b in combinations(nonzero, 2))


# ---------------------------------------------------------------------------
# deterministic coefficient search

def enumerate_gaussian_rationals() -> Iterator[GaussianRational]:
    """All Gaussian rationals, by height then a fixed tie-break.

    The sequence starts 0, 1, -1, i, -i, 1+i, ...; its order is part of the
    contract of the witness constructors, which take the first admissible
    value.
    """

    def order_key(q: GaussianRational) -> tuple:
        nonzero = int(bool(q.re)) + int(bool(q.im))
        imag_only = 1 if (nonzero == 1 and q.im) else 0
        return (nonzero, imag_only, abs(q.re), q.re < 0, abs(q.im), q.im < 0)

    for h in count(1):
        parts = {
            Fraction(a, b)
            for b in range(1, h + 1)
            for a in range(-h, h + 1)
        }
        ring = [
            GaussianRational(re, im)
            for re in parts
            for im in parts
            if max(
                abs(re.numerator), re.denominator, abs(im.numerator), im.denominator
            ) == h
        ]
        ring.sort(key=order_key)
        yield from ring


def enumerate_coefficient_pairs() -> Iterator[tuple[GaussianRational, GaussianRational]]:
    """Pairs of Gaussian rationals, diagonal by diagonal, deterministically."""
    cache: list[GaussianRational] = []
    gen = enumerate_gaussian_rationals()
    for n in count(0):
        cache.append(next(gen))
        for i in range(n):
            yield cache[i], cache[n]
        for j in range(n):
            yield cache[n], cache[j]
        yield cache[n], cache[n]


def _re_of_product_nonzero(b: GaussianRational, c: GaussianRational) -> bool:
    """Exact test Re(b * e^c) != 0 for Gaussian rationals b != 0 and c.

    Write c = u + vi.  For v = 0 the value is e^u Re(b).  For rational
    v != 0, vanishing would force e^(2iv) to equal the algebraic number
    -conj(b)/b, impossible by Lindemann.
    """
    if not b:
        return False
    return bool(c.im) or bool(b.re)


def first_constant_with_nonzero_re(b: GaussianRational) -> GaussianRational:
    for c in enumerate_gaussian_rationals():
        if _re_of_product_nonzero(b, c):
            return c
    raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# witness constructions

def witness_constant_projection(hyperplanes: Sequence[ComplexHyperplane]) -> ExpAffineCurve:
    """A curve (e^z, c2 e^z, c3 e^z) avoiding every listed hyperplane.

    Takes the first pair (c2, c3) in the fixed enumeration with
    a1 + a2 c2 + a3 c3 != 0 for every listed coefficient vector; each such
    condition removes one line from the search plane, so the scan ends.
    The projective image is the single point [1 : c2 : c3].
    """
    if len(hyperplanes) < 5:
        raise ValueError("this construction is for five or more hyperplanes")
    if any(len(h.coefficients) != 3 for h in hyperplanes):
        raise ValueError("hyperplanes live in C^3")
    conditions = {h.canonical() for h in hyperplanes}
    for c2, c3 in enumerate_coefficient_pairs():
        if all(a[0] + a[1] * c2 + a[2] * c3 for a in conditions):
            return ExpAffineCurve.from_terms((1, POLY_Z), (c2, POLY_Z), (c3, POLY_Z))
    raise AssertionError("unreachable")


def normalize_four(
    hyperplanes: Sequence[ComplexHyperplane],
) -> tuple[tuple[ComplexVector, ...], tuple[ComplexHyperplane, ...]]:
    """Exact change of coordinates w = M z standardising four hyperplanes.

    In the new coordinates the forms become w1, w2, w3, w1+w2+w3 (the
    first three exactly, the last up to the original scaling).  Requires
    every three of the coefficient vectors to be independent.
    """
    if len(hyperplanes) != 4:
        raise ValueError("exactly four hyperplanes are required")
    if any(len(h.coefficients) != 3 for h in hyperplanes):
        raise ValueError("hyperplanes live in C^3")
    rows = [h.coefficients for h in hyperplanes]
    for subset in combinations(range(4), 3):
        if rank_complex([rows[i] for i in subset]) != 3:
            labels = ", ".join(str(i + 1) for i in subset)
            raise ValueError(f"hyperplanes {labels} are not in general position")
    transpose = [[rows[i][j] for i in range(3)] for j in range(3)]
    lam = solve_complex(transpose, rows[3])
    assert lam is not None and all(lam)
    matrix = tuple(tuple(l * a for a in rows[i]) for i, l in enumerate(lam))
    standard = (
        ComplexHyperplane((GQ_ONE, GQ_ZERO, GQ_ZERO)),
        ComplexHyperplane((GQ_ZERO, GQ_ONE, GQ_ZERO)),
        ComplexHyperplane((GQ_ZERO, GQ_ZERO, GQ_ONE)),
        ComplexHyperplane((GQ_ONE, GQ_ONE, GQ_ONE)),
    )
    return matrix, standard


def _row_times_matrix(row: ComplexVector, matrix: Sequence[ComplexVector]) -> ComplexVector:
    return tuple(
        sum((row[i] * matrix[i][j] for i in range(len(matrix))), GQ_ZERO)
        for j in range(len(matrix[0]))
    )


def _matrix_times_curve(
    matrix: Sequence[ComplexVector], components: Sequence[ExpSum]
) -> tuple[ExpSum, ExpSum, ExpSum]:
    out = []
    for row in matrix:
        acc = ExpSum(())
        for a, comp in zip(row, components):
            acc = acc + comp.scale(a)
        out.append(acc)
    return tuple(out)


def _re_part_form(coeffs: ComplexVector) -> tuple[Fraction, ...]:
    out: list[Fraction] = []
    for a in coeffs:
        out.extend((a.re, -a.im))
    return tuple(out)


def witness_dim4_subspace(
    hyperplanes: Sequence[ComplexHyperplane],
) -> tuple[RealSubspace, ExpAffineCurve]:
    """A 4-dimensional real subspace and a curve with nonconstant projection.

    In standardised coordinates the pair is H = {x1 - x2 = 0, x1 - x3 = 0}
    and g = (e^z, -e^z, e^(2z)); where Re(e^z) vanishes, Re(e^(2z)) equals
    -Im(e^z)^2 < 0, so the two forms never vanish simultaneously on g.
    Both are pulled back to the original coordinates.
    """
    matrix, _ = normalize_four(hyperplanes)
    inv = inverse_complex(matrix)
    g = (
        exp_term(1, POLY_Z),
        exp_term(-1, POLY_Z),
        exp_term(1, (0, 2)),
    )
    curve = ExpAffineCurve(_matrix_times_curve(inv, g))
    d1 = _row_times_matrix((GQ_ONE, gq(-1), GQ_ZERO), matrix)
    d2 = _row_times_matrix((GQ_ONE, GQ_ZERO, gq(-1)), matrix)
    subspace = RealSubspace((_re_part_form(d1), _re_part_form(d2)))
    for h in hyperplanes:
        assert is_nowhere_zero(apply_form(h, curve)) == "yes"
    assert not is_projectively_constant(curve)
    return subspace, curve


_TIED_PAIRS = ((1, 2), (1, 3), (2, 3))


def _natural_tied_pair(pair: tuple[int, int]) -> tuple[int, int]:
    j, k = pair
    if k <= 3:
        return (j, k)
    (s, t) = tuple(i for i in (1, 2, 3) if i != j)
    return (s, t)


def witness_degenerate_pair(
    hyperplanes: Sequence[ComplexHyperplane],
    s: RealSubspace,
    pair: tuple[int, int],
) -> ExpAffineCurve:
    """A nonconstant-projection curve avoiding four hyperplanes and a real hyperplane.

    The curve lives on a diagonal: two components are e and -e of one
    exponent, the third is exponential of another, and the restriction of
    the defining form of s is a constant, certified nonzero exactly.  The
    search tries the diagonal matching the degenerate pair first and then
    the other two; if no diagonal admits a bounded form it raises, since
    on every diagonal the form then takes the value zero somewhere.
    """
    if s.dimension != 5:
        raise ValueError("a real hyperplane is required")
    j, k = pair
    if not (1 <= j < k <= 4):
        raise ValueError("pair indices must satisfy 1 <= j < k <= 4")
    if len(hyperplanes) != 4:
        raise ValueError("exactly four hyperplanes are required")
    evidence_rank = rank_real(
        list(realify(extract_complex_hyperplane(s)).forms)
        + list(realify(hyperplanes[j - 1]).forms)
        + list(realify(hyperplanes[k - 1]).forms)
    )
    if evidence_rank == 6:
        raise ValueError(f"triple for pair {pair} is in general position")
    matrix, _ = normalize_four(hyperplanes)
    inv = inverse_complex(matrix)
    alpha = holomorphic_coefficients(s.forms[0])
    alpha_w = _row_times_matrix(alpha, inv)
    natural = _natural_tied_pair(pair)
    order = [natural] + [p for p in _TIED_PAIRS if p != natural]
    for a, b in order:
        u = next(i for i in (1, 2, 3) if i not in (a, b))
        tied_coeff = alpha_w[a - 1] - alpha_w[b - 1]
        free_coeff = alpha_w[u - 1]
        if tied_coeff and not free_coeff:
            c = first_constant_with_nonzero_re(tied_coeff)
            tied_exp, free_exp = poly_constant(c), POLY_Z
        elif free_coeff and not tied_coeff:
            c = first_constant_with_nonzero_re(free_coeff)
            tied_exp, free_exp = POLY_Z, poly_constant(c)
        else:
            continue
        comps: list[ExpSum] = [ExpSum(())] * 3
        comps[a - 1] = exp_term(1, tied_exp)
        comps[b - 1] = exp_term(-1, tied_exp)
        comps[u - 1] = exp_term(1, free_exp)
        curve = ExpAffineCurve(_matrix_times_curve(inv, comps))
        for h in hyperplanes:
            assert is_nowhere_zero(apply_form(h, curve)) == "yes"
        value = constant_value(apply_form(alpha, curve))
        assert value is not None and value.real_part()
        assert not is_projectively_constant(curve)
        return curve
    raise ConstructionError(
        "construction failed: the form vanishes somewhere on every diagonal"
    )


_STANDARD_TRIPLE = {
    (GQ_ONE, GQ_ZERO, GQ_ZERO),
    (GQ_ZERO, GQ_ONE, GQ_ZERO),
    (GQ_ZERO, GQ_ZERO, GQ_ONE),
}


def witness_three_hyperplanes(
    hyperplanes: Sequence[ComplexHyperplane], s: RealSubspace
) -> ExpAffineCurve:
    """The curve (1, e^z, -e^z) for the coordinate hyperplanes and x1+x2+x3 = 0.

    The defining form of the subspace restricts to the constant 1 on the
    curve.  This constructor accepts exactly that configuration; three
    hyperplanes admit no diagonal, so there is nothing to search.
    """
    if len(hyperplanes) != 3 or {h.canonical() for h in hyperplanes} != _STANDARD_TRIPLE:
        raise ValueError("expected the three coordinate hyperplanes")
    expected = RealSubspace(((Fraction(1), Fraction(0)) * 3,))
    if s != expected:
        raise ValueError("expected the subspace x1 + x2 + x3 = 0")
    curve = ExpAffineCurve.from_terms((1, POLY_ZERO), (1, POLY_Z), (-1, POLY_Z))
    value = constant_value(apply_form(holomorphic_coefficients(s.forms[0]), curve))
    assert value is not None and value.real_part()
    return curve
