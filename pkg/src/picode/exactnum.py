"""Exact scalars: rationals and finite sums of rational multiples of square roots.

Rationals are :class:`fractions.Fraction`, which already keeps the canonical
``p/q`` form with ``q > 0``.  :class:`RadicalSum` represents
``sum_r c_r * sqrt(r)`` over distinct squarefree ``r``.  Square roots of
distinct squarefree integers are linearly independent over the rationals, so
two sums are equal exactly when their term maps are identical; equality and
zero tests are therefore structural.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterable, Mapping
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from picode.errors import NegativeRadicand, RadicandTooLarge

Rational = Fraction
RationalLike = Union[int, Fraction, str]

#: Largest integer the trial-division factorizer will accept.
DEFAULT_RADICAND_CEILING = 2**64

#: Verify squarefreeness of every radicand on construction (slow; for tests).
CHECK_SQUAREFREE = os.environ.get("PICODE_CHECK_SQUAREFREE", "") not in ("", "0")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def squarefree_decompose(n: int, ceiling: int = DEFAULT_RADICAND_CEILING) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * r`` with ``r`` squarefree, by trial division."""
    if n <= 0:
        raise ValueError("squarefree_decompose needs a positive integer")
    if n > ceiling:
        raise RadicandTooLarge(f"{n} exceeds the trial-division ceiling {ceiling}")
    square, free = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            square *= p ** (e // 2)
            if e % 2:
                free *= p
        p += 1 if p == 2 else 2
    return square, free * n


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 1 if p == 2 else 2
    return True


def _isqrt_bounds(r: int, bits: int) -> tuple[int, int]:
    # floor and ceil of sqrt(r) * 2**bits
    lo = math.isqrt(r << (2 * bits))
    hi = lo if lo * lo == r << (2 * bits) else lo + 1
    return lo, hi


class RadicalSum:
    """An exact real number ``sum_r c_r * sqrt(r)``.

    Instances are immutable.  ``terms`` is a tuple of ``(radicand, coeff)``
    pairs sorted by radicand, with every radicand squarefree and every
    coefficient nonzero.  The constructor trusts that radicands are
    squarefree; use :func:`sqrt_of_rational` to build sums from arbitrary
    rationals.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for r, c in items:
            r = int(r)
            if r <= 0:
                raise NegativeRadicand(f"radicand must be positive, got {r}")
            acc[r] = acc.get(r, Fraction(0)) + Fraction(c)
        self._terms = tuple(sorted((r, c) for r, c in acc.items() if c != 0))
        if CHECK_SQUAREFREE:
            for r, _ in self._terms:
                if not is_squarefree(r):
                    raise AssertionError(f"radicand {r} is not squarefree")

    @classmethod
    def from_rational(cls, value: RationalLike) -> RadicalSum:
        return cls({1: parse_rational(value)})

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(r == 1 for r, _ in self._terms)

    def rational_value(self) -> Fraction:
        """Return the value as a Fraction; raises if an irrational term is present."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms[0][1] if self._terms else Fraction(0)

    # arithmetic

    @staticmethod
    def _coerce(other) -> RadicalSum | None:
        if isinstance(other, RadicalSum):
            return other
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return RadicalSum.from_rational(Fraction(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RadicalSum(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self) -> RadicalSum:
        return RadicalSum([(r, -c) for r, c in self._terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for r, c in self._terms:
            for s, e in other._terms:
                g = math.gcd(r, s)
                rad = (r // g) * (s // g)
                out[rad] = out.get(rad, Fraction(0)) + c * e * g
        return RadicalSum(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, _RationalABC)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    # comparison

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sign(self) -> int:
        """Exact sign (-1, 0 or 1), by refining integer interval bounds until decided."""
        if not self._terms:
            return 0
        bits = 32
        while True:
            lo = hi = Fraction(0)
            for r, c in self._terms:
                a, b = _isqrt_bounds(r, bits)
                if c > 0:
                    lo += c * a
                    hi += c * b
                else:
                    lo += c * b
                    hi += c * a
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    # conversion

    def __float__(self) -> float:
        return math.fsum(float(c) * math.sqrt(r) for r, c in self._terms)

    def to_json(self) -> list[dict]:
        return [{"coeff": format_rational(c), "radicand": r} for r, c in self._terms]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> RadicalSum:
        terms = []
        for item in data:
            r = int(item["radicand"])
            if not is_squarefree(r):
                raise ValueError(f"radicand {r} is not squarefree")
            terms.append((r, parse_rational(item["coeff"])))
        return cls(terms)

    def __repr__(self) -> str:
        return f"RadicalSum({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for r, c in self._terms:
            parts.append(str(c) if r == 1 else f"{c}*sqrt({r})")
        return " + ".join(parts)


ZERO = RadicalSum()
ONE = RadicalSum.from_rational(1)


def sqrt_of_rational(x: RationalLike, ceiling: int = DEFAULT_RADICAND_CEILING) -> RadicalSum:
    """Return the canonical RadicalSum equal to ``sqrt(x)``.

    Numerator and denominator are factored separately, so the ceiling applies
    to each of them rather than to their product.
    """
    x = parse_rational(x)
    if x < 0:
        raise NegativeRadicand(f"cannot take the square root of {x}")
    if x == 0:
        return ZERO
    sa, ra = squarefree_decompose(x.numerator, ceiling)
    sb, rb = squarefree_decompose(x.denominator, ceiling)
    # sqrt(a/b) = sa*sqrt(ra) / (sb*sqrt(rb)) = sa*sqrt(ra*rb) / (sb*rb)
    g = math.gcd(ra, rb)
    return RadicalSum({(ra // g) * (rb // g): Fraction(sa * g, sb * rb)})


def sqrt_of_prime_powers(exponents: Mapping[int, int]) -> RadicalSum:
    """Square root of ``prod p**e`` given its prime factorization (``e`` may be negative)."""
    coeff = Fraction(1)
    radicand = 1
    for p, e in exponents.items():
        if e == 0:
            continue
        half, odd = divmod(e, 2)
        coeff *= Fraction(p) ** half
        if odd:
            radicand *= p
    return RadicalSum({radicand: coeff})


def radical_add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return a + b


def radical_mul(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    return a * b


def radical_neg(a: RadicalSum) -> RadicalSum:
    return -a


def radical_is_zero(a: RadicalSum) -> bool:
    return a.is_zero()


def radical_eq(a: RadicalSum, b: RadicalSum) -> bool:
    return a == b


def radical_to_float(a: RadicalSum) -> float:
    return float(a)
