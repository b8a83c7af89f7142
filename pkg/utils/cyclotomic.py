"""
Cyclotomic arithmetic for amscheme
Exact elements of Q(zeta_N) stored as rational coefficient vectors reduced modulo Phi_N
"""
import cmath
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Mapping, Sequence, Tuple, Union

from sympy import Dummy, Rational as SympyRational, cos, cyclotomic_poly, minimal_polynomial, pi

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

# relative to the coefficient mass, below this the floating point shadow does not decide a sign
SIGN_TOLERANCE = 1e-9


@lru_cache(maxsize=None)
def _cyclotomic_coefficients(level: int) -> Tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, constant term first."""
    poly = cyclotomic_poly(level, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(level: int) -> Tuple[Tuple[int, ...], ...]:
    """
    Reduced coefficient vectors of x^k mod Phi_N for 0 <= k < N

    Phi_N divides x^N - 1, so any exponent can be taken mod N first.
    """
    phi = _cyclotomic_coefficients(level)
    degree = len(phi) - 1
    current = [0] * degree
    current[0] = 1
    table = []
    for _ in range(level):
        table.append(tuple(current))
        carry = current[-1]
        shifted = [0] + current[:-1]
        if carry:
            # x^d = -(c_0 + c_1 x + ... + c_{d-1} x^{d-1})
            shifted = [value - carry * c for value, c in zip(shifted, phi[:-1])]
        current = shifted
    return tuple(table)


def field_degree(level: int) -> int:
    """Degree of Q(zeta_N) over Q (Euler's totient of N)."""
    return len(_cyclotomic_coefficients(level)) - 1


@lru_cache(maxsize=None)
def _unit_residues(level: int) -> Tuple[int, ...]:
    return tuple(j for j in range(1, level + 1) if math.gcd(j, level) == 1)


class CyclotomicNumber:
    """
    Exact element of the cyclotomic field Q(zeta_N)

    The basis is 1, zeta, ..., zeta^(d-1) with d = phi(N); since that basis is
    linearly independent over Q the coefficient vector at a fixed level is
    canonical. Values at different levels are compared after lifting both to the
    least common multiple of the levels.
    """

    __slots__ = ('level', 'coefficients')

    def __init__(self, level: int, coefficients: Sequence[Rational]):
        if level < 1:
            raise ValueError(f"Cyclotomic level must be positive, got {level}")
        degree = field_degree(level)
        if len(coefficients) != degree:
            raise ValueError(
                f"Level {level} needs {degree} coefficients, got {len(coefficients)}"
            )
        self.level = level
        self.coefficients = tuple(Fraction(c) for c in coefficients)

    # Constructors

    @classmethod
    def from_rational(cls, value: Rational, level: int = 1) -> 'CyclotomicNumber':
        coefficients = [Fraction(0)] * field_degree(level)
        coefficients[0] = Fraction(value)
        return cls(level, coefficients)

    @classmethod
    def zero(cls, level: int = 1) -> 'CyclotomicNumber':
        return cls.from_rational(0, level)

    @classmethod
    def one(cls, level: int = 1) -> 'CyclotomicNumber':
        return cls.from_rational(1, level)

    @classmethod
    def root_of_unity(cls, level: int, exponent: int = 1) -> 'CyclotomicNumber':
        """zeta_N ** exponent"""
        return cls(level, _power_table(level)[exponent % level])

    @classmethod
    def from_exponent_counts(cls, level: int, counts: Mapping[int, int]) -> 'CyclotomicNumber':
        """
        Sum of roots of unity given as a multiset of exponents

        Args:
            level: N
            counts: exponent -> multiplicity

        Returns:
            sum over exponents k of counts[k] * zeta_N^k
        """
        table = _power_table(level)
        total = [0] * field_degree(level)
        for exponent, multiplicity in counts.items():
            if not multiplicity:
                continue
            row = table[exponent % level]
            for i, value in enumerate(row):
                if value:
                    total[i] += multiplicity * value
        return cls(level, total)

    # Coercion helpers

    @staticmethod
    def _coerce(other: Any) -> 'CyclotomicNumber':
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other)
        return NotImplemented

    def lift(self, level: int) -> 'CyclotomicNumber':
        """Represent the same value at a level divisible by the current one."""
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"Cannot lift level {self.level} to level {level}")
        factor = level // self.level
        table = _power_table(level)
        total = [Fraction(0)] * field_degree(level)
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            row = table[(i * factor) % level]
            for j, value in enumerate(row):
                if value:
                    total[j] += c * value
        return CyclotomicNumber(level, total)

    def _aligned(self, other: 'CyclotomicNumber') -> Tuple['CyclotomicNumber', 'CyclotomicNumber']:
        if self.level == other.level:
            return self, other
        level = math.lcm(self.level, other.level)
        return self.lift(level), other.lift(level)

    # Queries

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def is_rational(self) -> bool:
        return not any(self.coefficients[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coefficients[0]

    def is_real(self) -> bool:
        return self == self.conjugate()

    def to_complex(self) -> complex:
        """Floating point shadow, for display and sign tests only."""
        total = complex(0.0)
        for i, c in enumerate(self.coefficients):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * i / self.level)
        return total

    def sign(self) -> int:
        """
        Sign of a real value

        Zero is decided exactly. A non-zero real value whose floating point
        shadow is larger than SIGN_TOLERANCE times the coefficient mass takes its
        sign from it; smaller values are settled by isolating the real roots of the minimal polynomial.
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coefficients[0] > 0 else -1
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        shadow = self.to_complex().real
        mass = max(1.0, float(sum(abs(c) for c in self.coefficients)))
        if abs(shadow) > SIGN_TOLERANCE * mass:
            return 1 if shadow > 0 else -1
        return self._exact_sign()

    def _real_expression(self):
        return sum(
            (SympyRational(c.numerator, c.denominator) * cos(2 * pi * i / self.level)
             for i, c in enumerate(self.coefficients) if c),
            SympyRational(0),
        )

    def _exact_sign(self) -> int:
        """
        Sign from an isolating interval of the minimal polynomial

        The value is non-zero, so 0 is not a root of its minimal polynomial and
        the rational interval holding the value can be refined until it excludes 0.
        """
        expression = self._real_expression()
        poly = minimal_polynomial(expression, Dummy("x"), polys=True)
        digits = 30
        while True:
            approximate = Fraction(str(expression.evalf(digits)))
            width = abs(approximate) / 4 if approximate else Fraction(1, 10 ** digits)
            holding = [
                (Fraction(str(low)), Fraction(str(high)))
                for (low, high), _ in poly.intervals(eps=SympyRational(width.numerator, width.denominator))
                if Fraction(str(low)) <= approximate <= Fraction(str(high))
            ]
            if len(holding) == 1:
                low, high = holding[0]
                if low > 0:
                    return 1
                if high < 0:
                    return -1
            digits *= 2
            logger.debug(f"Refining the sign of {self} at {digits} digits")

    # Field automorphisms

    def galois(self, power: int) -> 'CyclotomicNumber':
        """Image under zeta -> zeta^power (power coprime to the level)."""
        if math.gcd(power, self.level) != 1:
            raise ValueError(f"{power} is not a unit modulo {self.level}")
        table = _power_table(self.level)
        total = [Fraction(0)] * len(self.coefficients)
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            row = table[(i * power) % self.level]
            for j, value in enumerate(row):
                if value:
                    total[j] += c * value
        return CyclotomicNumber(self.level, total)

    def conjugate(self) -> 'CyclotomicNumber':
        if self.level <= 2:
            return self
        return self.galois(self.level - 1)

    def inverse(self) -> 'CyclotomicNumber':
        """Multiplicative inverse via the product of the other Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("Cyclotomic zero has no inverse")
        if self.is_rational():
            return CyclotomicNumber.from_rational(1 / self.coefficients[0], self.level)
        others = CyclotomicNumber.one(self.level)
        for power in _unit_residues(self.level):
            if power % self.level != 1:
                others = others * self.galois(power)
        norm = (self * others).to_fraction()
        return others / norm

    # Arithmetic

    def __add__(self, other: Any) -> 'CyclotomicNumber':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return CyclotomicNumber(a.level, [x + y for x, y in zip(a.coefficients, b.coefficients)])

    __radd__ = __add__

    def __neg__(self) -> 'CyclotomicNumber':
        return CyclotomicNumber(self.level, [-c for c in self.coefficients])

    def __sub__(self, other: Any) -> 'CyclotomicNumber':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> 'CyclotomicNumber':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def _scaled(self, factor: Fraction) -> 'CyclotomicNumber':
        return CyclotomicNumber(self.level, [c * factor for c in self.coefficients])

    def __mul__(self, other: Any) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            return self._scaled(Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            return self._scaled(other.coefficients[0])
        if self.is_rational():
            return other._scaled(self.coefficients[0])
        a, b = self._aligned(other)
        degree = len(a.coefficients)
        if degree == 1:
            return CyclotomicNumber(a.level, [a.coefficients[0] * b.coefficients[0]])
        product = [Fraction(0)] * (2 * degree - 1)
        for i, x in enumerate(a.coefficients):
            if not x:
                continue
            for j, y in enumerate(b.coefficients):
                if y:
                    product[i + j] += x * y
        table = _power_table(a.level)
        total = product[:degree]
        for k in range(degree, len(product)):
            c = product[k]
            if not c:
                continue
            row = table[k % a.level]
            for j, value in enumerate(row):
                if value:
                    total[j] += c * value
        return CyclotomicNumber(a.level, total)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._scaled(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            return self / other.coefficients[0]
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> 'CyclotomicNumber':
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> 'CyclotomicNumber':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.level)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a.coefficients == b.coefficients

    # Unhashable: equal values may sit at different levels.
    __hash__ = None

    def __bool__(self) -> bool:
        return not self.is_zero()

    # Rendering

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            if i == 0:
                monomial = ''
            elif i == 1:
                monomial = f"z{self.level}"
            else:
                monomial = f"z{self.level}^{i}"
            if not monomial:
                body = str(c)
            elif c == 1:
                body = monomial
            elif c == -1:
                body = f"-{monomial}"
            else:
                body = f"{c}*{monomial}"
            terms.append(body)
        if not terms:
            return "0"
        text = terms[0]
        for term in terms[1:]:
            text += f" - {term[1:]}" if term.startswith('-') else f" + {term}"
        return text

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.level}, {self})"

    def decimal(self, places: int = 6) -> str:
        """Decimal shadow, real part only when the value is real."""
        value = self.to_complex()
        if self.is_real():
            return f"{value.real:.{places}f}"
        sign = '+' if value.imag >= 0 else '-'
        return f"{value.real:.{places}f}{sign}{abs(value.imag):.{places}f}i"

    def to_dict(self) -> Dict[str, Any]:
        return {'level': self.level, 'coefficients': [str(c) for c in self.coefficients]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'CyclotomicNumber':
        return cls(int(data['level']), [Fraction(c) for c in data['coefficients']])


def exact_sum(values: Iterable[Any]) -> Any:
    """Sum that starts from the first element so rational inputs stay rational."""
    total: Any = 0
    for value in values:
        total = total + value
    return total
