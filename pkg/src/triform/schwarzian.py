"""The Schwarzian derivative, the triangular coefficient family, and
Moebius changes of variable.

The third-order equation under study is

    S(y) + (y')^2 * R(y) = 0,      S(y) = (y''/y')' - (1/2)(y''/y')^2,

and is fully determined by the rational coefficient function R.  The
triangular family R_{alpha,beta,gamma} has double poles at 0 and 1 and is
parametrized by the inverse triangle angles; the recognizer inverts the
construction up to the intrinsic sign ambiguity of the parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from .polynomials import NEG_INF, Poly, RatFunc, render_poly
from .scalars import INF, ExtRational, Q, ZeroParameter, rational_sqrt


class ConstantInput(ValueError):
    """The Schwarzian derivative needs a non-constant argument."""


class NotTriangular(ValueError):
    """R is not of the triangular form (wrong poles, or rebuild mismatch)."""

    def __init__(self, message: str, inverse_squares: Optional[Tuple] = None):
        super().__init__(message)
        self.inverse_squares = inverse_squares


class SingularMoebius(ValueError):
    """Moebius map with ad - bc = 0."""


@dataclass(frozen=True)
class TriangleParams:
    """Ordered parameter triple; each slot is infinity or a nonzero rational."""

    alpha: ExtRational
    beta: ExtRational
    gamma: ExtRational

    def __post_init__(self):
        for slot in (self.alpha, self.beta, self.gamma):
            if not slot.is_infinite and slot.value == 0:
                raise ZeroParameter("triangle parameter 0 has no inverse")

    @staticmethod
    def of(a, b, c) -> "TriangleParams":
        return TriangleParams(ExtRational.of(a), ExtRational.of(b), ExtRational.of(c))

    @staticmethod
    def parse(text: str) -> "TriangleParams":
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated parameters, got {text!r}")
        a, b, c = (ExtRational.parse(p) for p in parts)
        return TriangleParams(a, b, c)

    def inverses(self) -> Tuple:
        return (self.alpha.inverse(), self.beta.inverse(), self.gamma.inverse())

    @property
    def is_integer_triple(self) -> bool:
        for slot in (self.alpha, self.beta, self.gamma):
            if slot.is_infinite:
                continue
            if slot.value.denominator != 1 or slot.value < 2:
                return False
        return True

    @property
    def is_hyperbolic(self) -> bool:
        return sum(self.inverses()) < 1

    def __str__(self) -> str:
        return f"({self.alpha},{self.beta},{self.gamma})"


def schwarzian_of(g: RatFunc) -> RatFunc:
    """S(g) = (g''/g')' - (1/2)(g''/g')^2.  Exact; zero iff g is Moebius."""
    gp = g.derivative()
    if gp.is_zero:
        raise ConstantInput("Schwarzian derivative of a constant")
    h = gp.derivative() / gp
    return h.derivative() - (h * h).scale(Q(1, 2))


@dataclass(frozen=True)
class SchwarzianEquation:
    """The equation S(y) + (y')^2 * R(y) = 0, determined by R."""

    R: RatFunc

    def render(self) -> str:
        return f"S(y) + (y')^2 * ({self.R.render('y')}) = 0"

    def __str__(self) -> str:
        return self.render()


_Y = Poly.variable()
_YM1 = Poly.linear(Q(1))
_B_Y2 = _Y * _Y
_B_YM1SQ = _YM1 * _YM1
_B_CROSS = _Y * _YM1
_TRI_DEN = _B_CROSS * _B_CROSS


def _build_from_inverse_squares(a2, b2, c2) -> RatFunc:
    # R = (1/2)[(1-b2)/y^2 + (1-c2)/(y-1)^2 + (b2+c2-a2-1)/(y(y-1))]
    num = (
        _B_YM1SQ.scale(1 - b2)
        + _B_Y2.scale(1 - c2)
        + _B_CROSS.scale(b2 + c2 - a2 - 1)
    ).scale(Q(1, 2))
    return RatFunc(num, _TRI_DEN)


def build_triangular_R(p: TriangleParams) -> RatFunc:
    """The triangular coefficient function for parameter triple p."""
    ia, ib, ic = p.inverses()
    return _build_from_inverse_squares(ia * ia, ib * ib, ic * ic)


SYMBOLIC_INVERSE_SQUARE = "SymbolicInverseSquare"


@dataclass(frozen=True)
class TriangularRecognition:
    """Outcome of recognize_triangular.

    inverse_squares holds the exact values (alpha^-2, beta^-2, gamma^-2).
    params holds the nonnegative square-root representative of each slot
    (parameters are only determined up to sign), or the marker string
    SYMBOLIC_INVERSE_SQUARE when an inverse square is not a rational square.
    """

    inverse_squares: Tuple
    params: Tuple[Union[ExtRational, str], ...]

    @property
    def has_exact_params(self) -> bool:
        return all(isinstance(s, ExtRational) for s in self.params)

    def triangle_params(self) -> TriangleParams:
        if not self.has_exact_params:
            raise NotTriangular(
                f"inverse squares {tuple(map(str, self.inverse_squares))} are not "
                "rational squares",
                self.inverse_squares,
            )
        return TriangleParams(*self.params)  # type: ignore[arg-type]


def recognize_triangular(R: RatFunc) -> TriangularRecognition:
    """Invert build_triangular_R, recovering parameters up to sign.

    Raises NotTriangular when the poles are not contained in {0, 1} with
    order <= 2, when rebuilding from the extracted local data does not
    reproduce R, or when an inverse square is negative.
    """
    y = Poly.variable()
    ym1 = Poly.linear(Q(1))
    den = R.den
    # the denominator must be y^a * (y-1)^b with a, b <= 2
    a = 0
    while a < 3 and den.coeff(0) == 0:
        den = den // y
        a += 1
    b = 0
    while b < 3 and den(Q(1)) == 0:
        den = den // ym1
        b += 1
    if den.degree != 0 or a > 2 or b > 2:
        raise NotTriangular(f"poles of {R} are not contained in {{0, 1}} with order <= 2")
    if not R.is_zero and R.degree_at_infinity > -2:
        raise NotTriangular(f"{R} does not vanish to order >= 2 at infinity")

    lim0 = (R * RatFunc(y * y)).evaluate(Q(0))
    lim1 = (R * RatFunc(ym1 * ym1)).evaluate(Q(1))
    if R.is_zero or R.degree_at_infinity < -2:
        lim_inf = Q(0)
    else:
        lim_inf = R.num.leading / R.den.leading
    b2 = 1 - 2 * lim0
    c2 = 1 - 2 * lim1
    a2 = 1 - 2 * lim_inf
    inverse_squares = (a2, b2, c2)

    if _build_from_inverse_squares(a2, b2, c2) != R:
        raise NotTriangular(
            f"rebuilding from local data {tuple(map(str, inverse_squares))} does not "
            f"reproduce {R}",
            inverse_squares,
        )

    params = []
    for inv2 in inverse_squares:
        if inv2 < 0:
            raise NotTriangular(
                f"negative inverse square among {tuple(map(str, inverse_squares))}",
                inverse_squares,
            )
        if inv2 == 0:
            params.append(INF)
            continue
        root = rational_sqrt(inv2)
        if root is None:
            params.append(SYMBOLIC_INVERSE_SQUARE)
        else:
            params.append(ExtRational(1 / root))
    return TriangularRecognition(inverse_squares, tuple(params))


@dataclass(frozen=True)
class Moebius:
    """z = (a*y + b)/(c*y + d) with rational entries and ad - bc != 0."""

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "c", Q(self.c))
        object.__setattr__(self, "d", Q(self.d))
        if self.a * self.d - self.b * self.c == 0:
            raise SingularMoebius(f"ad - bc = 0 in {self}")

    @staticmethod
    def identity() -> "Moebius":
        return Moebius(1, 0, 0, 1)

    @staticmethod
    def parse(text: str) -> "Moebius":
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated entries, got {text!r}")
        from fractions import Fraction

        return Moebius(*(Q(Fraction(p.strip())) for p in parts))

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Moebius") -> "Moebius":
        """self after other (matrix product self * other)."""
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def as_ratfunc(self) -> RatFunc:
        return RatFunc(Poly((self.b, self.a)), Poly((self.d, self.c)))

    def apply(self, g: RatFunc) -> RatFunc:
        """(a*g + b)/(c*g + d)."""
        num = g.scale(self.a) + RatFunc.const(self.b)
        den = g.scale(self.c) + RatFunc.const(self.d)
        return num / den

    def __str__(self) -> str:
        return f"({self.a}*y + {self.b})/({self.c}*y + {self.d})"


def is_moebius(g: RatFunc) -> bool:
    """Non-constant and of the form (ay+b)/(cy+d); such g have S(g) = 0."""
    return (
        not g.is_zero
        and g.num.degree <= 1
        and g.den.degree <= 1
        and not g.is_constant
    )


def moebius_pullback(R: RatFunc, m: Moebius) -> RatFunc:
    """Coefficient function after the change of variable z = m(y).

    Returns Rt with Rt(z) = R(m^{-1}(z)) * (dm^{-1}/dz)^2, so z = m(y)
    solves the Schwarzian equation with Rt whenever y solves it with R.
    """
    inv = m.inverse().as_ratfunc()
    dinv = inv.derivative()
    return R.compose(inv) * dinv * dinv


def check_solution(g: RatFunc, R: RatFunc) -> bool:
    """Does g(t) satisfy S(g) + (g')^2 * R(g) = 0 identically?"""
    gp = g.derivative()
    if gp.is_zero:
        raise ConstantInput("candidate solution is constant")
    residual = schwarzian_of(g) + gp * gp * R.compose(g)
    return residual.is_zero
