"""Rational-function scalars: quotients of sparse polynomials over Q.

Equality is cross-multiplication, so values are correct whether or not a
quotient happens to be in lowest terms.  Construction applies only cheap
normalizations (joint monomial-gcd strip, denominator content and sign,
constant-denominator folding, one step-capped exact-division attempt);
there is no full multivariate GCD.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly


class PoleError(ZeroDivisionError):
    """Evaluation point lies on the zero locus of a denominator."""


class ScalarDivisionError(ZeroDivisionError):
    """Division of scalars by the zero scalar."""


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.one(num.nvars)
    floor_n = num.exponent_floor()
    floor_d = den.exponent_floor()
    shift = tuple(min(a, b) for a, b in zip(floor_n, floor_d))
    if any(shift):
        num = num.shift_down(shift)
        den = den.shift_down(shift)
    content = den.content_signed()
    if content != 1:
        inv = 1 / content
        num = num.scale(inv)
        den = den.scale(inv)
    if den.is_constant():
        # content normalization forces a constant denominator to be 1
        return num, den
    if num == den:
        return Poly.one(num.nvars), Poly.one(num.nvars)
    quotient = num.exact_div(den, step_cap=2 * len(num.terms) + 16)
    if quotient is not None:
        return quotient, Poly.one(num.nvars)
    return num, den


class Scalar:
    """Immutable quotient num/den of polynomials with den != 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.nvars)
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator on different charts")
        if den.is_zero():
            raise ScalarDivisionError("zero denominator")
        num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Scalar is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Scalar":
        return cls(Poly.zero(nvars))

    @classmethod
    def one(cls, nvars: int) -> "Scalar":
        return cls(Poly.one(nvars))

    @classmethod
    def const(cls, nvars: int, value: Fraction | int) -> "Scalar":
        return cls(Poly.const(nvars, value))

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Scalar":
        return cls(Poly.variable(nvars, index))

    # -- queries ---------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # -- arithmetic --------------------------------------------------------------

    def _coerce(self, other: object) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.nvars != self.nvars:
                raise ValueError("scalars live on different charts")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(self.nvars, other)
        return None

    def __add__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.den == rhs.den:
            return Scalar(self.num + rhs.num, self.den)
        return Scalar(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den)

    def __sub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return Scalar(self.num * rhs.num, self.den * rhs.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero():
            raise ScalarDivisionError("division by the zero scalar")
        return Scalar(self.num * rhs.den, self.den * rhs.num)

    def __rtruediv__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs / self

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            if self.is_zero():
                raise ScalarDivisionError("negative power of zero")
            return Scalar(self.den, self.num) ** (-exponent)
        return Scalar(self.num**exponent, self.den**exponent)

    # -- calculus ---------------------------------------------------------------

    def partial(self, index: int) -> "Scalar":
        if self.den.is_constant():
            return Scalar(self.num.partial(index), self.den)
        num = self.num.partial(index) * self.den - self.num * self.den.partial(index)
        return Scalar(num, self.den * self.den)

    def eval_at(self, point: tuple[Fraction | int, ...]) -> Fraction:
        den = self.den.eval_at(point)
        if not den:
            raise PoleError(f"denominator vanishes at {point}")
        return self.num.eval_at(point) / den

    # -- comparison ----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self.num * rhs.den == rhs.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.den.is_constant():
            return f"Scalar({self.num!r})"
        return f"Scalar({self.num!r} / {self.den!r})"
