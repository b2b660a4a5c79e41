"""Exact univariate polynomials over the rationals and the coefficient identities they satisfy.

Two families matter for code construction:

* ``f = (x - 1)**m * g``: the weighted power sums ``sum_z f_z z**c`` vanish
  for ``c < m``.
* ``f = (1 + x + ... + x**(d-1))**m * g``: ``sum_z f_z z**c w**(k z)``
  vanishes for every nontrivial ``d``-th root of unity ``w`` and ``c < m``.

Both are checked here from the coefficient list alone, with exact
arithmetic.  The root-of-unity identity is decided through residue-class
sums, which avoids complex numbers entirely.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from picode.combinatorics import WeightVector
from picode.errors import NegativeCoefficient, NegativePart, NotAnInteger, SumMismatch
from picode.exactnum import RationalLike, format_rational, parse_rational


class RationalPolynomial:
    """Dense polynomial ``sum_z coeffs[z] * x**z`` with Fraction coefficients.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()) -> None:
        c = [parse_rational(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._coeffs = tuple(c)

    @classmethod
    def x(cls) -> RationalPolynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, value: RationalLike) -> RationalPolynomial:
        return cls([value])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, z: int) -> Fraction:
        return self._coeffs[z] if 0 <= z < len(self._coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial([{', '.join(str(c) for c in self._coeffs)}])"

    @staticmethod
    def _lift(other) -> RationalPolynomial:
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial.constant(other)

    def __add__(self, other) -> RationalPolynomial:
        other = self._lift(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return RationalPolynomial(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial(-c for c in self._coeffs)

    def __sub__(self, other) -> RationalPolynomial:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> RationalPolynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> RationalPolynomial:
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RationalPolynomial:
        if k < 0:
            raise ValueError("polynomial exponent must be non-negative")
        result, base = RationalPolynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: RationalLike) -> Fraction:
        x = parse_rational(x)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, divisor: RationalPolynomial) -> tuple[RationalPolynomial, RationalPolynomial]:
        """Long division: ``self = quotient * divisor + remainder``."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dd = divisor.degree
        lead = divisor._coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            factor = rem[k + dd] / lead
            quot[k] = factor
            if factor:
                for j, c in enumerate(divisor._coeffs):
                    rem[k + j] -= factor * c
        return RationalPolynomial(quot), RationalPolynomial(rem[:dd] if dd > 0 else [])

    def exact_quotient(self, divisor: RationalPolynomial) -> RationalPolynomial | None:
        """``self / divisor`` if the division is exact, else None."""
        quot, rem = self.divmod(divisor)
        return quot if rem.is_zero() else None

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, data: Iterable[RationalLike]) -> RationalPolynomial:
        return cls(data)


def poly_add(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    return f + g


def poly_mul(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    return f * g


def poly_pow(f: RationalPolynomial, k: int) -> RationalPolynomial:
    return f**k


def poly_eval(f: RationalPolynomial, x: RationalLike) -> Fraction:
    return f(x)


def repunit(d: int) -> RationalPolynomial:
    """``1 + x + ... + x**(d-1)``."""
    if d < 1:
        raise ValueError("d must be positive")
    return RationalPolynomial([1] * d)


def make_type_a_f(g: RationalPolynomial, m: int) -> RationalPolynomial:
    """``(x - 1)**m * g``."""
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if m < 1:
        raise ValueError("m must be positive")
    return RationalPolynomial([-1, 1]) ** m * g


def make_type_b_f(g: RationalPolynomial, m: int, d: int, strict: bool = False) -> RationalPolynomial:
    """``(1 + ... + x**(d-1))**m * g``.

    With ``strict=True`` a negative coefficient raises NegativeCoefficient;
    otherwise check ``f.is_nonnegative()`` yourself.
    """
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if m < 1 or d < 2:
        raise ValueError("need m >= 1 and d >= 2")
    f = repunit(d) ** m * g
    if strict and not f.is_nonnegative():
        z = next(i for i, c in enumerate(f.coeffs) if c < 0)
        raise NegativeCoefficient(f"f_{z} = {f.coeffs[z]} is negative", z=z, value=format_rational(f.coeffs[z]))
    return f


@dataclass(frozen=True)
class MomentReport:
    m: int
    sums: tuple[Fraction, ...]  # sums[c] = sum_z f_z z**c

    @property
    def passed(self) -> bool:
        return all(s == 0 for s in self.sums)

    def to_json(self) -> dict:
        return {"m": self.m, "moment_sums": [format_rational(s) for s in self.sums], "pass": self.passed}


def check_moment_identities(f: RationalPolynomial, m: int) -> MomentReport:
    """Compute ``sum_z f_z z**c`` for ``c = 0..m-1`` (with ``0**0 = 1``)."""
    sums = tuple(sum((fz * z**c for z, fz in enumerate(f.coeffs)), Fraction(0)) for c in range(m))
    return MomentReport(m, sums)


def residue_class_sums(values: Sequence[Fraction], d: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * d
    for z, v in enumerate(values):
        out[z % d] += v
    return tuple(out)


@dataclass(frozen=True)
class RootReport:
    d: int
    m: int
    class_sums: tuple[tuple[Fraction, ...], ...]  # class_sums[c][r]

    @property
    def per_c(self) -> tuple[bool, ...]:
        return tuple(len(set(row)) == 1 for row in self.class_sums)

    @property
    def passed(self) -> bool:
        return all(self.per_c)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "class_sums": [[format_rational(s) for s in row] for row in self.class_sums],
            "per_c": list(self.per_c),
            "pass": self.passed,
        }


def check_root_identities(f: RationalPolynomial, d: int, m: int) -> RootReport:
    """Decide ``sum_z f_z z**c w**(k z) = 0`` for all ``k = 1..d-1``, ``c = 0..m-1``.

    Grouping ``z`` by residue mod ``d`` turns the left side into a discrete
    Fourier transform of the ``d`` class sums; it vanishes at every nonzero
    frequency exactly when all class sums are equal.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    rows = []
    for c in range(m):
        g = [fz * z**c for z, fz in enumerate(f.coeffs)]
        rows.append(residue_class_sums(g, d))
    return RootReport(d, m, tuple(rows))


@dataclass(frozen=True)
class PartitionPolynomialTuple:
    """Polynomials ``p_1(z), ..., p_q(z)`` meant to give a composition of ``N`` for ``z = 0..n``."""

    polys: tuple[RationalPolynomial, ...]
    N: int
    n: int

    @property
    def q(self) -> int:
        return len(self.polys)

    @property
    def theta(self) -> int:
        return max(max(p.degree, 0) for p in self.polys)

    def __call__(self, z: int) -> tuple[Fraction, ...]:
        return tuple(p(z) for p in self.polys)

    def to_json(self) -> list[list[str]]:
        return [p.to_json() for p in self.polys]


@dataclass(frozen=True)
class ValidatedTuple:
    p: PartitionPolynomialTuple
    weights: tuple[WeightVector, ...]  # weights[z] = p(z)
    theta: int


def validate_partition_tuple(p: PartitionPolynomialTuple) -> ValidatedTuple:
    """Evaluate ``p`` at ``z = 0..n`` and confirm each value is a composition of ``N``."""
    weights = []
    for z in range(p.n + 1):
        parts = []
        for i, poly in enumerate(p.polys):
            v = poly(z)
            if v.denominator != 1:
                raise NotAnInteger(f"p_{i + 1}({z}) = {v} is not an integer", i=i, z=z, value=format_rational(v))
            if v < 0:
                raise NegativePart(f"p_{i + 1}({z}) = {v} is negative", i=i, z=z, value=format_rational(v))
            parts.append(int(v))
        if sum(parts) != p.N:
            raise SumMismatch(f"p({z}) = {tuple(parts)} sums to {sum(parts)}, not {p.N}", z=z, total=sum(parts), N=p.N)
        weights.append(tuple(parts))
    return ValidatedTuple(p, tuple(weights), p.theta)
