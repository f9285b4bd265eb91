"""Exact rationals, dense univariate polynomials and Faulhaber summation.

Polynomials may carry polynomial coefficients in another variable, giving
the nested ring Q[t][k][w][j]. The nesting order is fixed by ``VAR_ORDER``:
a polynomial's coefficients always live in variables that come *earlier*
in that order. Mixed arithmetic between two variables treats the inner one
as a constant of the outer ring, so ``k * t`` is a polynomial in ``k`` with
coefficient ``t``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Union

from .errors import InvalidArgument, UnsupportedDegree

Rational = Fraction

VAR_ORDER = {"t": 0, "k": 1, "w": 2, "j": 3, "x": 4}

Scalar = Union[int, Fraction]
RingElement = Union[int, Fraction, "Poly"]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "a/b" strings to a Fraction; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, _RationalABC, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    """Dense polynomial, coefficients in ascending degree."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[RingElement] = (), var: str = "x"):
        if var not in VAR_ORDER:
            raise InvalidArgument(f"unknown variable tag {var!r}")
        cs = []
        for c in coeffs:
            if _is_scalar(c):
                cs.append(Fraction(c))
            elif isinstance(c, Poly):
                if VAR_ORDER[c.var] >= VAR_ORDER[var]:
                    raise InvalidArgument(
                        f"coefficient in {c.var!r} cannot sit inside a polynomial in {var!r}")
                cs.append(c._simplify())
            else:
                raise TypeError(f"unsupported coefficient type {type(c).__name__}")
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    # construction helpers

    @classmethod
    def variable(cls, var: str) -> "Poly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, degree: int, var: str, coeff: RingElement = 1) -> "Poly":
        return cls([0] * degree + [coeff], var)

    def _simplify(self):
        """Collapse a constant polynomial with scalar coefficient to a Fraction."""
        if not self.coeffs:
            return Fraction(0)
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return self

    @property
    def degree(self) -> int:
        """Degree in the outer variable; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, degree: int) -> RingElement:
        if 0 <= degree < len(self.coeffs):
            return self.coeffs[degree]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    # coercion

    def _rank(self) -> int:
        return VAR_ORDER[self.var]

    def _classify(self, other):
        """Return 'same', 'scalar' (other lies in the coefficient ring),
        'outer' (self lies in other's coefficient ring) or None."""
        if _is_scalar(other):
            return "scalar"
        if isinstance(other, Poly):
            if other.var == self.var:
                return "same"
            if VAR_ORDER[other.var] < self._rank():
                return "scalar"
            return "outer"
        return None

    # arithmetic

    def __add__(self, other):
        kind = self._classify(other)
        if kind == "same":
            n = max(len(self.coeffs), len(other.coeffs))
            return Poly([self.coefficient(i) + other.coefficient(i) for i in range(n)], self.var)
        if kind == "scalar":
            cs = list(self.coeffs) or [Fraction(0)]
            cs[0] = cs[0] + other
            return Poly(cs, self.var)
        if kind == "outer":
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if self._classify(other) is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if self._classify(other) is None:
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        kind = self._classify(other)
        if kind == "same":
            if self.is_zero() or other.is_zero():
                return Poly([], self.var)
            out: list = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if _is_zero(a):
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out, self.var)
        if kind == "scalar":
            return Poly([c * other for c in self.coeffs], self.var)
        if kind == "outer":
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        inv = 1 / Fraction(other)
        return self * inv

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument("only non-negative integer powers are supported")
        result: RingElement = Poly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison

    def __eq__(self, other):
        if isinstance(other, Poly) and other.var == self.var:
            return self.coeffs == other.coeffs
        if self.degree <= 0:
            return self.coefficient(0) == other
        if isinstance(other, Poly) and other.degree <= 0:
            return other.coefficient(0) == self
        return False

    def __hash__(self):
        if self.degree <= 0:
            return hash(self.coefficient(0))
        return hash((self.var, self.coeffs))

    # evaluation

    def evaluate(self, value: RingElement) -> RingElement:
        """Substitute ``value`` for the outer variable (Horner's rule)."""
        result: RingElement = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    __call__ = evaluate

    def subs(self, var: str, value: RingElement) -> RingElement:
        """Substitute ``value`` for ``var`` at whatever nesting depth it occurs."""
        if var == self.var:
            return self.evaluate(value)
        if VAR_ORDER[var] > self._rank():
            return self
        result: RingElement = Fraction(0)
        x = Poly.variable(self.var)
        for i, c in enumerate(self.coeffs):
            ci = c.subs(var, value) if isinstance(c, Poly) else c
            result = result + ci * (x ** i)
        return result

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            cs = f"({c})" if isinstance(c, Poly) else str(c)
            if i == 0:
                terms.append(cs)
            elif i == 1:
                terms.append(f"{cs}*{self.var}")
            else:
                terms.append(f"{cs}*{self.var}^{i}")
        return " + ".join(terms)


def leading_coefficient(p: RingElement, degree: int) -> RingElement:
    """Coefficient of ``p`` at the given degree of its outer variable (0 if absent)."""
    if isinstance(p, Poly):
        return p.coefficient(degree)
    return as_rational(p) if degree == 0 else Fraction(0)


# Sum_{j=0}^{m-1} j^d as a polynomial in m, d = 0..4.
_M = Poly.variable("x")
FAULHABER: tuple[Poly, ...] = (
    _M,
    _M * (_M - 1) / 2,
    (_M - 1) * _M * (2 * _M - 1) / 6,
    (_M * (_M - 1) / 2) ** 2,
    (_M - 1) * _M * (2 * _M - 1) * (3 * _M * _M - 3 * _M - 1) / 30,
)
MAX_FAULHABER_DEGREE = len(FAULHABER) - 1


def poly_sum_range(p: RingElement, upper: RingElement) -> RingElement:
    """Exact closed form of ``sum_{j=0}^{upper-1} p(j)``.

    ``p`` is a polynomial in the summation variable (its coefficients may
    involve inner variables such as ``k`` or ``t``); ``upper`` must be a
    degree-1 polynomial, e.g. ``k/2``. The identity is valid whenever
    ``upper`` evaluates to a non-negative integer.
    """
    if not (isinstance(upper, Poly) and upper.degree == 1):
        raise InvalidArgument("upper limit must be a degree-1 polynomial")
    if not isinstance(p, Poly):
        p = Poly([p], "j" if upper.var != "j" else "x")
    if p.degree > MAX_FAULHABER_DEGREE:
        raise UnsupportedDegree(
            f"degree {p.degree} exceeds the Faulhaber table (max {MAX_FAULHABER_DEGREE})")
    total: RingElement = Fraction(0)
    for d, c in enumerate(p.coeffs):
        if _is_zero(c):
            continue
        total = total + c * FAULHABER[d].evaluate(upper)
    return total


def rational_to_json(x) -> dict:
    q = as_rational(x)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def fmt(x) -> str:
    """Render a rational as ``a/b`` (or ``a`` when integral)."""
    q = as_rational(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
