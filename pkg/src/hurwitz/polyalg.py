"""Exact binary forms over the Gaussian rationals.

Resultants are Sylvester determinants whose columns run over *increasing*
powers of the variable, rows of the first polynomial on top.  With this
convention ``resultant([-a, 1], [-b, 1]) == b - a`` and the discriminant of
``a x0^2 + b x0 x1 + c x1^2`` is ``b^2 - 4ac``.  Comparisons between
discriminants elsewhere are projective, so the sign only matters for the
fixtures.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction, "GaussianRational"]


class NotCoprime(ValueError):
    """The two forms of a rational map share a root on the projective line."""


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0) -> None:
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x: Scalar | complex) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        if isinstance(x, complex):
            return cls(Fraction(x.real).limit_denominator(10**12), Fraction(x.imag).limit_denominator(10**12))
        if isinstance(x, float):
            return cls(Fraction(x).limit_denominator(10**12))
        raise TypeError(f"cannot coerce {x!r} to a Gaussian rational")

    def __add__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other: Scalar) -> GaussianRational:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> GaussianRational:
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        acc, base = GaussianRational(1), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def exquo(self, other: GaussianRational) -> GaussianRational:
        return self / other

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)  # type: ignore[arg-type]
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce(x: object) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(Fraction(x))  # type: ignore[arg-type]
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(x: Scalar | complex) -> GaussianRational:
    return GaussianRational.coerce(x)


# -- univariate polynomials ---------------------------------------------------


class UPoly:
    """Univariate polynomial over Q(i), coefficients in increasing degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        c = [gr(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c: tuple[GaussianRational, ...] = tuple(c)

    @classmethod
    def var(cls) -> UPoly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, ``-1`` for the zero polynomial."""
        return len(self.c) - 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def lead(self) -> GaussianRational:
        return self.c[-1] if self.c else ZERO

    def __add__(self, other: UPoly | Scalar) -> UPoly:
        o = other if isinstance(other, UPoly) else UPoly([other])
        n = max(len(self.c), len(o.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = o.c + (ZERO,) * (n - len(o.c))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> UPoly:
        return UPoly(-x for x in self.c)

    def __sub__(self, other: UPoly | Scalar) -> UPoly:
        o = other if isinstance(other, UPoly) else UPoly([other])
        return self + (-o)

    def __rsub__(self, other: Scalar) -> UPoly:
        return UPoly([other]) - self

    def __mul__(self, other: UPoly | Scalar) -> UPoly:
        if not isinstance(other, UPoly):
            g = gr(other)
            return UPoly(x * g for x in self.c)
        if not self.c or not other.c:
            return UPoly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return UPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: UPoly) -> tuple[UPoly, UPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [ZERO] * max(len(rem) - len(other.c) + 1, 0)
        lead = other.lead()
        for k in range(len(rem) - len(other.c), -1, -1):
            coef = rem[k + len(other.c) - 1] / lead
            q[k] = coef
            if coef:
                for j, y in enumerate(other.c):
                    rem[k + j] = rem[k + j] - coef * y
        return UPoly(q), UPoly(rem[: len(other.c) - 1])

    def exquo(self, other: UPoly) -> UPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> UPoly:
        return UPoly(x * k for k, x in enumerate(self.c) if k)

    def monic(self) -> UPoly:
        return self * (ONE / self.lead()) if self.c else self

    def __call__(self, x: Scalar) -> GaussianRational:
        acc = ZERO
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for coef in reversed(self.c):
            acc = acc * z + complex(coef)
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UPoly):
            return self.c == other.c
        o = _coerce(other)
        return o is not None and self.c == UPoly([o]).c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UPoly([{', '.join(str(x) for x in self.c)}])"


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic()


def squarefree_decomposition(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic square-free factors with their multiplicities."""
    if p.degree < 1:
        return []
    out = []
    a0 = p.monic()
    b = poly_gcd(a0, a0.derivative())
    c = a0.exquo(b)
    d = a0.derivative().exquo(b) - c.derivative()
    k = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, k))
        c = c.exquo(a)
        d = d.exquo(a) - c.derivative()
        k += 1
    return out


# -- determinants and resultants ---------------------------------------------


def _det_bareiss(m: list[list], one) -> object:
    """Fraction-free determinant over an integral domain with ``exquo``."""
    n = len(m)
    if n == 0:
        return one
    m = [row[:] for row in m]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exquo(prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(f: Sequence, g: Sequence, zero) -> list[list]:
    """Sylvester matrix of ascending coefficient lists at formal degrees ``len-1``."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    rows = []
    for i in range(dg):
        row = [zero] * size
        for j, x in enumerate(f):
            row[i + j] = x
        rows.append(row)
    for i in range(df):
        row = [zero] * size
        for j, x in enumerate(g):
            row[i + j] = x
        rows.append(row)
    return rows


def _generic_resultant(f: Sequence, g: Sequence, zero, one):
    return _det_bareiss(sylvester_matrix(f, g, zero), one)


def resultant(f: Sequence[Scalar], g: Sequence[Scalar],
              deg_f: int | None = None, deg_g: int | None = None) -> GaussianRational:
    """Resultant of ``f`` and ``g`` given as ascending coefficient lists.

    The formal degrees default to ``len - 1``.  Supplying a larger formal
    degree pads with zero leading coefficients, which changes the answer
    when the other polynomial has a root at infinity.
    """
    fc = [gr(x) for x in f]
    gc = [gr(x) for x in g]
    deg_f = len(fc) - 1 if deg_f is None else deg_f
    deg_g = len(gc) - 1 if deg_g is None else deg_g
    if deg_f == 0 and deg_g == 0:
        raise ValueError("resultant undefined when both formal degrees are zero")
    fc = _pad(fc, deg_f)
    gc = _pad(gc, deg_g)
    return _generic_resultant(fc, gc, ZERO, ONE)


def _pad(c: list, deg: int, zero=ZERO) -> list:
    if deg < 0:
        raise ValueError("formal degree must be non-negative")
    if len(c) > deg + 1:
        if any(c[deg + 1:]):
            raise ValueError(f"polynomial has degree above its formal degree {deg}")
        return c[: deg + 1]
    return c + [zero] * (deg + 1 - len(c))


# -- binary forms --------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """Binary form ``sum coeffs[i] * x0^(d-i) * x1^i`` of formal degree ``d``.

    With ``z = x1/x0`` the coefficient list is the ascending coefficient list
    of the affine polynomial in ``z``.
    """

    degree: int
    coeffs: tuple[GaussianRational, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(gr(c) for c in self.coeffs)
        if self.degree < 0 or len(coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} needs {self.degree + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, coeffs: Sequence[Scalar]) -> HomogeneousPolynomial:
        return cls(len(coeffs) - 1, tuple(gr(c) for c in coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def d_x0(self) -> HomogeneousPolynomial:
        d = self.degree
        return HomogeneousPolynomial(d - 1, tuple(self.coeffs[i] * (d - i) for i in range(d)))

    def d_x1(self) -> HomogeneousPolynomial:
        d = self.degree
        return HomogeneousPolynomial(d - 1, tuple(self.coeffs[i] * i for i in range(1, d + 1)))

    def dehomogenize_x1(self) -> list[GaussianRational]:
        """Ascending coefficients of ``F(x0, 1)`` as a polynomial in ``x0``."""
        return list(reversed(self.coeffs))

    def __mul__(self, other: HomogeneousPolynomial) -> HomogeneousPolynomial:
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return HomogeneousPolynomial(self.degree + other.degree, tuple(out))

    def scale(self, c: Scalar) -> HomogeneousPolynomial:
        g = gr(c)
        return HomogeneousPolynomial(self.degree, tuple(x * g for x in self.coeffs))

    def __call__(self, x0: Scalar, x1: Scalar) -> GaussianRational:
        x0, x1 = gr(x0), gr(x1)
        acc = ZERO
        for i, c in enumerate(self.coeffs):
            acc = acc + c * x0 ** (self.degree - i) * x1 ** i
        return acc

    def affine(self) -> UPoly:
        """``F(1, z)`` as a polynomial in ``z``."""
        return UPoly(self.coeffs)

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "*".join(p for p in (_pw("x0", d - i), _pw("x1", i)) if p)
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms) if terms else "0"


def _pw(v: str, k: int) -> str:
    return "" if k == 0 else (v if k == 1 else f"{v}^{k}")


def _generic_discriminant(coeffs: Sequence, zero, one):
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("discriminant needs degree at least 1")
    if d == 1:
        return one
    fx0 = [coeffs[i] * (d - i) for i in range(d)]
    fx1 = [coeffs[i] * i for i in range(1, d + 1)]
    # dehomogenise at x1 = 1 as polynomials in x0, ascending powers
    return _generic_resultant(list(reversed(fx0)), list(reversed(fx1)), zero, one)


def discriminant(F: HomogeneousPolynomial) -> GaussianRational:
    """Resultant of ``dF/dx0(x0, 1)`` and ``dF/dx1(x0, 1)`` at formal degrees ``(d-1, d-1)``.

    Vanishes exactly when ``F`` has a repeated root on the projective line.
    For ``d == 1`` the Sylvester matrix is empty and the value is 1.
    """
    return _generic_discriminant(list(F.coeffs), ZERO, ONE)


def projectively_equal(u: Sequence, v: Sequence) -> bool:
    """Whether two nonzero coefficient vectors differ by a nonzero scalar."""
    if len(u) != len(v):
        return False
    if not any(u) or not any(v):
        return False
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))


# -- points, Moebius transforms, rational maps -------------------------------


@dataclass(frozen=True)
class SpherePoint:
    """A point ``(t0 : t1)`` of the projective line; affine value ``t1 / t0``.

    Normalised so that the coordinate of larger modulus is 1 (``t0`` on ties).
    """

    t0: GaussianRational
    t1: GaussianRational

    def __post_init__(self) -> None:
        t0, t1 = gr(self.t0), gr(self.t1)
        if not t0 and not t1:
            raise ValueError("(0 : 0) is not a point")
        pivot = t1 if t1.abs2() > t0.abs2() else t0
        object.__setattr__(self, "t0", t0 / pivot)
        object.__setattr__(self, "t1", t1 / pivot)

    @classmethod
    def affine_point(cls, t: Scalar) -> SpherePoint:
        return cls(ONE, gr(t))

    @classmethod
    def infinity(cls) -> SpherePoint:
        return cls(ZERO, ONE)

    @property
    def is_infinity(self) -> bool:
        return not self.t0

    def affine(self) -> GaussianRational | None:
        return None if self.is_infinity else self.t1 / self.t0

    def to_complex(self) -> complex:
        a = self.affine()
        return complex("inf") if a is None else complex(a)

    def __str__(self) -> str:
        a = self.affine()
        return "inf" if a is None else str(a)


@dataclass(frozen=True)
class MoebiusTransform:
    """An invertible 2x2 matrix ``((a, b), (c, d))`` acting on row vectors."""

    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    d: GaussianRational

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, gr(getattr(self, name)))
        if not self.det():
            raise ValueError("singular matrix")

    @classmethod
    def identity(cls) -> MoebiusTransform:
        return cls(ONE, ZERO, ZERO, ONE)

    def det(self) -> GaussianRational:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: MoebiusTransform) -> MoebiusTransform:
        return MoebiusTransform(
            self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d,
        )

    def apply_row(self, x0: Scalar, x1: Scalar) -> tuple[GaussianRational, GaussianRational]:
        """``(x0, x1) @ g``."""
        x0, x1 = gr(x0), gr(x1)
        return x0 * self.a + x1 * self.c, x0 * self.b + x1 * self.d

    def substitute(self, F: HomogeneousPolynomial) -> HomogeneousPolynomial:
        """The form ``x -> F(x g)`` for a row vector ``x = (x0, x1)``."""
        first = HomogeneousPolynomial(1, (self.a, self.c))
        second = HomogeneousPolynomial(1, (self.b, self.d))
        d = F.degree
        acc = HomogeneousPolynomial(d, (ZERO,) * (d + 1))
        for i, coef in enumerate(F.coeffs):
            if not coef:
                continue
            term = HomogeneousPolynomial(0, (coef,))
            for _ in range(d - i):
                term = term * first
            for _ in range(i):
                term = term * second
            acc = HomogeneousPolynomial(d, tuple(x + y for x, y in zip(acc.coeffs, term.coeffs)))
        return acc


@dataclass(frozen=True)
class RationalMapClass:
    """Representative ``[P : Q]`` of a degree-``n`` rational map ``f = P/Q``.

    The pair is rescaled so that the first nonzero coefficient of ``Q``
    (or of ``P`` when ``Q`` vanishes) equals 1.
    """

    P: HomogeneousPolynomial
    Q: HomogeneousPolynomial

    def __post_init__(self) -> None:
        if self.P.degree != self.Q.degree:
            raise ValueError(f"P has degree {self.P.degree} but Q has degree {self.Q.degree}")
        if self.P.degree < 1:
            raise ValueError("rational maps need degree at least 1")
        if not resultant(self.P.dehomogenize_x1(), self.Q.dehomogenize_x1()):
            raise NotCoprime("P and Q have a common root")
        ref = next((c for c in self.Q.coeffs + self.P.coeffs if c), None)
        if ref != ONE:
            object.__setattr__(self, "P", self.P.scale(ONE / ref))
            object.__setattr__(self, "Q", self.Q.scale(ONE / ref))

    @classmethod
    def from_affine(cls, numerator: Sequence[Scalar], denominator: Sequence[Scalar] = (1,)) -> RationalMapClass:
        """``f(z) = numerator(z) / denominator(z)`` with ascending coefficient lists."""
        num = UPoly(numerator)
        den = UPoly(denominator)
        n = max(num.degree, den.degree)
        pad = lambda p: list(p.c) + [ZERO] * (n + 1 - len(p.c))  # noqa: E731
        return cls(HomogeneousPolynomial.of(pad(num)), HomogeneousPolynomial.of(pad(den)))

    @property
    def n(self) -> int:
        return self.P.degree

    def __call__(self, z: complex) -> complex:
        return self.P.affine().eval_complex(z) / self.Q.affine().eval_complex(z)

    def __str__(self) -> str:
        return f"[{self.P} : {self.Q}]"


def ll_polynomial_affine(m: RationalMapClass) -> UPoly:
    """``ll_hom(m)`` at ``t0 = 1`` as a polynomial in ``s = t1``."""
    s = UPoly.var()
    coeffs = [s * q - p for p, q in zip(m.P.coeffs, m.Q.coeffs)]
    return _generic_discriminant(coeffs, UPoly(), UPoly([1]))


def ll_hom(m: RationalMapClass) -> HomogeneousPolynomial:
    """Discriminant in ``x`` of ``t1 Q(x) - t0 P(x)``: a binary form of degree ``2n - 2`` in ``(t0, t1)``.

    Its roots ``(t0 : t1)`` are the critical values ``t = t1/t0`` of ``P/Q``,
    each with its multiplicity.
    """
    D = ll_polynomial_affine(m)
    k = 2 * m.n - 2
    if not D:
        raise NotCoprime("discriminant vanishes identically")
    if D.degree > k:
        raise ArithmeticError("discriminant degree exceeds 2n - 2")
    return HomogeneousPolynomial(k, tuple(D.c) + (ZERO,) * (k - D.degree))


def moebius_act(m: RationalMapClass, g: MoebiusTransform) -> RationalMapClass:
    """``f^g(x) = P(x g) / Q(x g)`` for row vectors ``x``.

    Substitution composes contravariantly:
    ``moebius_act(moebius_act(m, g), h) == moebius_act(m, h @ g)``.
    """
    return RationalMapClass(g.substitute(m.P), g.substitute(m.Q))


def ll_invariance_check(m: RationalMapClass, g: MoebiusTransform) -> bool:
    """Whether ``ll_hom`` of ``m`` and of ``m^g`` agree up to a nonzero scalar."""
    return projectively_equal(ll_hom(moebius_act(m, g)).coeffs, ll_hom(m).coeffs)
