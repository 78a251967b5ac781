"""Exact arithmetic in the finite fields GF(p^e).

Elements are little-endian coefficient vectors over GF(p), reduced modulo a fixed monic
irreducible polynomial. The canonical integer encoding of an element is
``sum(c_i * p**i)``; it gives every field a stable element order.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from typing_extensions import TypeAlias

from achromatic_planes.errors import FieldMismatch, FieldTooLarge, NotPrimePower, ZeroInverse

logger = logging.getLogger("GaloisField")

MAX_FIELD_ORDER = 2**16

Poly: TypeAlias = Tuple[int, ...]


def _strip(poly: Sequence[int]) -> List[int]:
    coeffs = list(poly)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_divmod(num: Sequence[int], den: Sequence[int], p: int) -> Tuple[Poly, Poly]:
    """Divide polynomials over GF(p).

    Args:
        num: Dividend coefficients, lowest degree first
        den: Divisor coefficients, lowest degree first; must be nonzero
        p: Prime modulus of the coefficients

    Returns:
        Tuple[Poly, Poly]: Quotient and remainder, both stripped of leading zeros

    Raises:
        ZeroDivisionError: If the divisor is the zero polynomial
    """
    divisor = _strip([c % p for c in den])
    if not divisor:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = _strip([c % p for c in num])
    lead_inv = pow(divisor[-1], p - 2, p)
    quotient = [0] * max(len(remainder) - len(divisor) + 1, 0)
    while len(remainder) >= len(divisor):
        shift = len(remainder) - len(divisor)
        factor = (remainder[-1] * lead_inv) % p
        quotient[shift] = factor
        for i, c in enumerate(divisor):
            remainder[shift + i] = (remainder[shift + i] - factor * c) % p
        remainder = _strip(remainder)
    return tuple(_strip(quotient)), tuple(remainder)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Test irreducibility over GF(p) by trial division.

    A polynomial of degree n is reducible iff it has a monic factor of degree
    between 1 and n // 2.
    """
    coeffs = _strip([c % p for c in poly])
    degree = len(coeffs) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, rem = poly_divmod(coeffs, low + (1,), p)
            if not rem:
                return False
    return True


def _smallest_prime_factor(n: int) -> int:
    f = 2
    while f * f <= n:
        if n % f == 0:
            return f
        f += 1
    return n


def factor_prime_power(order: int) -> Tuple[int, int]:
    """Split a prime power into (characteristic, degree).

    Raises:
        NotPrimePower: If ``order`` is not of the form p^e with e >= 1
    """
    if order < 2:
        raise NotPrimePower(order)
    p = _smallest_prime_factor(order)
    degree = 0
    rest = order
    while rest % p == 0:
        rest //= p
        degree += 1
    if rest != 1:
        raise NotPrimePower(order)
    return p, degree


def is_prime_power(n: int) -> bool:
    try:
        factor_prime_power(n)
    except NotPrimePower:
        return False
    return True


@dataclass(frozen=True)
class Field:
    """The field GF(characteristic^degree) with a fixed modulus."""

    characteristic: int
    degree: int
    modulus: Poly

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    def element(self, value: int) -> FieldElement:
        """Build the element with the given canonical integer encoding."""
        if not 0 <= value < self.order:
            raise ValueError(f"value {value} outside [0, {self.order})")
        coeffs = []
        for _ in range(self.degree):
            value, c = divmod(value, self.characteristic)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    def from_coefficients(self, coeffs: Sequence[int]) -> FieldElement:
        """Reduce an arbitrary coefficient vector into the field."""
        _, rem = poly_divmod(coeffs, self.modulus, self.characteristic)
        padded = list(rem) + [0] * (self.degree - len(rem))
        return FieldElement(self, tuple(padded))

    def elements(self) -> Iterator[FieldElement]:
        """Iterate all elements in ascending canonical order."""
        for value in range(self.order):
            yield self.element(value)

    def __repr__(self) -> str:
        return f"Field(char={self.characteristic}, degree={self.degree}, modulus={self.modulus})"


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`Field`."""

    field: Field = dataclass_field(repr=False)
    coefficients: Poly

    @property
    def value(self) -> int:
        p = self.field.characteristic
        return sum(c * p**i for i, c in enumerate(self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def _check(self, other: FieldElement) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        p = self.field.characteristic
        return FieldElement(
            self.field, tuple((a + b) % p for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> FieldElement:
        p = self.field.characteristic
        return FieldElement(self.field, tuple((-c) % p for c in self.coefficients))

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self + (-other)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        p = self.field.characteristic
        product = [0] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    product[i + j] = (product[i + j] + a * b) % p
        return self.field.from_coefficients(product)

    def inverse(self) -> FieldElement:
        """Return the multiplicative inverse.

        Raises:
            ZeroInverse: If the element is zero
        """
        if self.is_zero():
            raise ZeroInverse(f"zero has no inverse in {self.field!r}")
        # a^(order-2) = a^-1 in the multiplicative group
        return self ** (self.field.order - 2)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        result = self.field.one
        base = self
        while exponent > 0:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"GF({self.field.order})[{self.value}]"


@lru_cache(maxsize=None)
def field_create(order: int) -> Field:
    """Create GF(order) with the lexicographically smallest monic irreducible modulus.

    Candidates are compared coefficient by coefficient starting from the constant term.

    Args:
        order: Field order, a prime power >= 2

    Returns:
        Field: The field; identical calls return the same instance

    Raises:
        NotPrimePower: If ``order`` is not a prime power
        FieldTooLarge: If ``order`` exceeds 2^16
    """
    if order > MAX_FIELD_ORDER:
        raise FieldTooLarge(f"field order {order} exceeds {MAX_FIELD_ORDER}")
    p, degree = factor_prime_power(order)
    for low in itertools.product(range(p), repeat=degree):
        candidate = low + (1,)
        if is_irreducible(candidate, p):
            logger.debug("GF(%d): modulus %s", order, candidate)
            return Field(p, degree, candidate)
    raise AssertionError(f"no irreducible polynomial of degree {degree} over GF({p})")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
