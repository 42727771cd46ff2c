from fractions import Fraction
from functools import reduce
from math import comb, gcd
from typing import Iterable, List, Tuple
import sympy

from ..arith.interval import Interval, as_rational, horner

T = sympy.Symbol("T")


class IntPoly:
    """Dense integer polynomial, coefficients stored constant term first."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int] = ()):
        coefficients = list(coefficients)
        for c in coefficients:
            if isinstance(c, bool) or not isinstance(c, int):
                raise ValueError("Polynomial coefficients must be integers, got {!r}".format(c))
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients: Tuple[int, ...] = tuple(coefficients)

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPoly":
        return cls([0] * degree + [coefficient])

    @classmethod
    def from_json(cls, data) -> "IntPoly":
        if not isinstance(data, (list, tuple)):
            raise ValueError("A polynomial must be a JSON integer array, got {!r}".format(data))
        return cls(data)

    def to_json(self) -> List[int]:
        return list(self.coefficients)

    @classmethod
    def from_sympy(cls, poly) -> "IntPoly":
        poly = sympy.Poly(poly, T) if not isinstance(poly, sympy.Poly) else poly
        return cls(int(c) for c in reversed(poly.all_coeffs()))

    def to_sympy(self) -> sympy.Poly:
        if self.is_zero:
            return sympy.Poly(0, T, domain="ZZ")
        return sympy.Poly(list(reversed(self.coefficients)), T, domain="ZZ")

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def constant(self) -> int:
        return self.coefficients[0] if self.coefficients else 0

    @property
    def height(self) -> int:
        return max((abs(c) for c in self.coefficients), default=0)

    @property
    def content(self) -> int:
        return reduce(gcd, (abs(c) for c in self.coefficients), 0)

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def primitive_part(self) -> "IntPoly":
        if self.is_zero:
            return self
        c = self.content
        sign = -1 if self.leading < 0 else 1
        return IntPoly(sign * (a // c) for a in self.coefficients)

    @property
    def is_primitive(self) -> bool:
        return not self.is_zero and self.content == 1

    def low_order(self) -> int:
        """Multiplicity of T as a factor."""
        for k, c in enumerate(self.coefficients):
            if c:
                return k
        return 0

    def shift(self, a: int) -> "IntPoly":
        """P(T + a) by the binomial Taylor shift."""
        n = len(self.coefficients)
        out = [0] * n
        for k, c in enumerate(self.coefficients):
            if not c:
                continue
            power = 1
            for j in range(k, -1, -1):
                out[j] += c * comb(k, j) * power
                power *= a
        return IntPoly(out)

    def reversed(self, n: int = None) -> "IntPoly":
        """T^n P(1/T); n defaults to the degree."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("Reversal degree {} below polynomial degree {}".format(n, self.degree))
        padded = list(self.coefficients) + [0] * (n + 1 - len(self.coefficients))
        return IntPoly(reversed(padded))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPoly(self.coefficient(k) + other.coefficient(k) for k in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coefficients)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(other * c for c in self.coefficients)
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def divmod_rational(self, divisor: "IntPoly") -> Tuple[List[Fraction], List[Fraction]]:
        """Quotient and remainder over the rationals, constant term first."""
        if divisor.is_zero:
            raise ZeroDivisionError("Division by the zero polynomial")
        remainder = [Fraction(c) for c in self.coefficients]
        d = divisor.degree
        lead = Fraction(divisor.leading)
        quotient = [Fraction(0)] * max(len(remainder) - d, 0)
        for k in range(len(remainder) - 1, d - 1, -1):
            factor = remainder[k] / lead
            if factor:
                quotient[k - d] = factor
                for j, c in enumerate(divisor.coefficients):
                    remainder[k - d + j] -= factor * c
        remainder = remainder[:d]
        while remainder and remainder[-1] == 0:
            remainder.pop()
        return quotient, remainder

    def exact_quotient(self, divisor: "IntPoly"):
        """self / divisor when the division is exact over the integers, else None."""
        quotient, remainder = self.divmod_rational(divisor)
        if remainder or any(q.denominator != 1 for q in quotient):
            return None
        return IntPoly(int(q) for q in quotient)

    def is_divisible_by(self, divisor: "IntPoly") -> bool:
        if self.is_zero:
            return True
        _, remainder = self.divmod_rational(divisor)
        return not remainder

    def __call__(self, x):
        """Exact evaluation at an int or Fraction."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_interval(self, x: Interval) -> Interval:
        return horner(self.coefficients, x)

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __repr__(self) -> str:
        return "IntPoly({})".format(list(self.coefficients))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("T" if k == 1 else "T^{}".format(k))
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += " {} {}".format(sign, body)
        return text


def product(P: IntPoly, Q: IntPoly) -> IntPoly:
    return P * Q


def gelfond_ratio(P: IntPoly, Q: IntPoly) -> Fraction:
    """H(PQ) / (H(P) H(Q))."""
    if P.is_zero or Q.is_zero:
        raise ValueError("Height ratio is undefined for the zero polynomial")
    return Fraction((P * Q).height, P.height * Q.height)
