from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from hurwitz.oracles import sympy_coeff_to_fraction, sympy_ll
from hurwitz.polyalg import (
    GaussianRational,
    HomogeneousPolynomial,
    MoebiusTransform,
    NotCoprime,
    RationalMapClass,
    UPoly,
    discriminant,
    ll_hom,
    ll_invariance_check,
    moebius_act,
    projectively_equal,
    resultant,
    squarefree_decomposition,
)

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
gauss = st.builds(GaussianRational, small, small)
ints = st.integers(-5, 5)


def to_sym(c):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)


@st.composite
def moebius(draw):
    a, b, c, d = (draw(gauss) for _ in range(4))
    assume(a * d - b * c)
    return MoebiusTransform(a, b, c, d)


@st.composite
def rational_maps(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    P = [draw(gauss) for _ in range(n + 1)]
    Q = [draw(gauss) for _ in range(n + 1)]
    try:
        return RationalMapClass(HomogeneousPolynomial.of(P), HomogeneousPolynomial.of(Q))
    except (NotCoprime, ValueError):
        assume(False)


def test_gaussian_arithmetic():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)
    x = GaussianRational(Fraction(1, 2), 3)
    assert x / x == GaussianRational(1)
    assert x - x == GaussianRational(0)


def test_resultant_examples():
    a, b = GaussianRational(3), GaussianRational(Fraction(-1, 2), 2)
    assert resultant([-a, 1], [-b, 1]) == b - a
    assert resultant([1, 5, 7], [1]) == GaussianRational(1)
    assert resultant([0, 2], [3], 1, 0) == GaussianRational(3)
    with pytest.raises(ValueError):
        resultant([2], [3])


@given(st.lists(ints, min_size=2, max_size=5), st.lists(ints, min_size=2, max_size=5))
@settings(max_examples=50)
def test_resultant_matches_sympy(f, g):
    # ascending Sylvester columns: the standard resultant of the reciprocal polynomials
    assume(f[-1] and g[-1])
    x = sympy.Symbol("x")
    m, n = len(f) - 1, len(g) - 1
    fs = sum(c * x ** (m - i) for i, c in enumerate(f))
    gs = sum(c * x ** (n - i) for i, c in enumerate(g))
    assume(sympy.degree(fs, x) == m and sympy.degree(gs, x) == n)
    want = sympy.resultant(fs, gs, x)
    assert resultant(f, g) == GaussianRational(Fraction(int(want)))


def test_discriminant_examples():
    assert discriminant(HomogeneousPolynomial.of([0, 1, 0])) in (GaussianRational(1), GaussianRational(-1))
    assert discriminant(HomogeneousPolynomial.of([1, 0, 0])) == GaussianRational(0)
    assert discriminant(HomogeneousPolynomial.of([0, 1])) == GaussianRational(1)


@given(gauss, gauss, gauss)
def test_quadratic_discriminant(a, b, c):
    assert discriminant(HomogeneousPolynomial.of([a, b, c])) == b * b - 4 * a * c


@given(st.lists(ints, min_size=3, max_size=5))
@settings(max_examples=40)
def test_discriminant_detects_repeated_roots(coeffs):
    assume(coeffs[-1])
    x = sympy.Symbol("x")
    p = sympy.Poly(list(reversed(coeffs)), x)
    repeated = sympy.degree(sympy.gcd(p, p.diff(x))) > 0
    assert (discriminant(HomogeneousPolynomial.of(coeffs)) == GaussianRational(0)) == repeated


def test_squarefree_decomposition():
    x = UPoly.var()
    p = (x - 1) * (x - 1) * (x + 2) * (x - 3) * (x - 3) * (x - 3)
    parts = {m: f.monic() for f, m in squarefree_decomposition(p)}
    assert parts[1] == (x + 2).monic()
    assert parts[2] == (x - 1).monic()
    assert parts[3] == (x - 3).monic()


def test_ll_examples():
    z2 = RationalMapClass.from_affine([0, 0, 1])
    assert projectively_equal(ll_hom(z2).coeffs, [0, 1, 0])
    ident = RationalMapClass.from_affine([0, 1])
    h = ll_hom(ident)
    assert h.degree == 0 and any(h.coeffs)
    cubic = ll_hom(RationalMapClass.from_affine([0, -3, 0, 1]))
    assert cubic.degree == 4
    assert cubic(1, 2) == GaussianRational(0) and cubic(1, -2) == GaussianRational(0)
    assert cubic(0, 1) == GaussianRational(0)
    # double root at infinity: t0^2 divides the form
    assert cubic.coeffs[-1] == GaussianRational(0) and cubic.coeffs[-2] == GaussianRational(0)


def test_not_coprime():
    with pytest.raises(NotCoprime):
        RationalMapClass.from_affine([0, 1], [0, 2])


@given(rational_maps())
@settings(max_examples=30)
def test_ll_degree_and_sympy(m):
    h = ll_hom(m)
    assert h.degree == 2 * m.n - 2
    want = [GaussianRational(*sympy_coeff_to_fraction(c)) for c in sympy_ll(m)]
    want += [GaussianRational(0)] * (h.degree + 1 - len(want))
    assert projectively_equal(h.coeffs, want)


def test_moebius_examples():
    m = RationalMapClass.from_affine([0, 0, 1])
    assert moebius_act(m, MoebiusTransform.identity()) == m
    flip = RationalMapClass(HomogeneousPolynomial.of([0, 1]), HomogeneousPolynomial.of([1, 0]))
    swap = MoebiusTransform(0, 1, 1, 0)
    assert moebius_act(flip, swap) == RationalMapClass(HomogeneousPolynomial.of([1, 0]), HomogeneousPolynomial.of([0, 1]))


@given(rational_maps(), moebius(), moebius())
@settings(max_examples=30)
def test_moebius_composition(m, g, h):
    assert moebius_act(moebius_act(m, g), h) == moebius_act(m, h @ g)


def test_invariance_examples():
    m = RationalMapClass.from_affine([0, 0, 1])
    assert ll_invariance_check(m, MoebiusTransform.identity())
    assert ll_invariance_check(m, MoebiusTransform(1, 1, 0, 1))


@given(rational_maps(), moebius())
@settings(max_examples=30)
def test_invariance(m, g):
    assert ll_invariance_check(m, g)
